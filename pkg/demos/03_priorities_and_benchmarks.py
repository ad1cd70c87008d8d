"""
Priorities under overload, and measuring the engine
===================================================

When demand exceeds capacity something must stay unscheduled.  Priority
tuning turns that choice over to the dispatcher: raise the weight of a
task and the engine trades lower-priority work away for it, with a
proof that no heavier plan exists.  The second half runs the built-in
benchmark harness on generated instances.
"""

from teamalloc import (
    GenConfig,
    generate_instance,
    rows_to_text,
    run_explain_benchmark,
    run_opt_benchmark,
    start_session,
)
from teamalloc.model import Activity, Instance, Team

# Three jobs, two teams, all at the same time: one job must wait.
instance = Instance(
    activities=[
        Activity("paying-job", 0, 120),
        Activity("internal-a", 0, 120),
        Activity("internal-b", 0, 120),
    ],
    teams=[Team("crew-1"), Team("crew-2")],
    compat=[[True, True]] * 3,
)

session = start_session(instance)
print(f"mode: {session.mode}")

# With equal weights the engine keeps any two of the three.
plan = session.tune_priorities({})
print(f"default plan keeps: {sorted(plan.allocation)} (weight {plan.satisfied_weight})")

# Raising the weight of the task that was left out makes dropping it
# more expensive than dropping both others, so it wins a slot back.
dropped = plan.unallocated[0]
plan = session.tune_priorities({dropped: 5})
print(f"after boosting {dropped}:")
print(f"boosted plan keeps: {sorted(plan.allocation)} (weight {plan.satisfied_weight})")
print(f"left out: {plan.unallocated}, proven optimal: {plan.proven_optimal}")

# ---------------------------------------------------------------------
# Benchmarks on generated instances.  The generator caps concurrency at
# the team count so plain instances stay feasible; the overload variant
# plants one more simultaneous task than there are teams.
print()
cfg = GenConfig(horizon_hours=8, n_activities=70, n_teams=20, seed=7)
sample = generate_instance(cfg)
print(f"sample instance: {len(sample.activities)} activities, {len(sample.teams)} teams")

# Small runs so the demo stays quick; drop the overrides for the full
# three-length sweep used in the test suite.
opt_rows = run_opt_benchmark(lengths=(6, 8), repetitions=2)
print()
print(rows_to_text(opt_rows))

explain_rows = run_explain_benchmark(lengths=(6, 8), repetitions=2)
print()
print(rows_to_text(explain_rows))
