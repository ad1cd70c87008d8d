"""
When no plan exists: explaining and repairing infeasibility
===========================================================

Overbooked schedules do not fail with a bare "unsatisfiable".  This
walk-through triggers a conflict on purpose, asks for a minimal
unsatisfiable subset (the smallest set of task requirements that clash),
then repairs the schedule two ways: locally, one conflict at a time, and
globally, from a minimal correction set.
"""

from teamalloc import Activity, Instance, Team, describe_conflict, start_session

# Two shifts, two teams.  Each shift has three simultaneous jobs, so one
# job per shift has to give way: two independent conflicts.
activities = [
    Activity("early-a", 6 * 60, 8 * 60),
    Activity("early-b", 6 * 60, 8 * 60),
    Activity("early-c", 6 * 60, 8 * 60),
    Activity("late-a", 14 * 60, 16 * 60),
    Activity("late-b", 14 * 60, 16 * 60),
    Activity("late-c", 14 * 60, 16 * 60),
]
teams = [Team("north"), Team("south")]
instance = Instance(
    activities=activities,
    teams=teams,
    compat=[[True, True] for _ in activities],
)

session = start_session(instance)
print(f"session mode: {session.mode}")

# Local resolution serves one minimal conflict at a time.  Each step the
# user picks one requirement to relax; the session re-checks and either
# serves the next conflict or finishes.
mus, explanation = session.begin_local_resolution()
step = 0
while mus is not None:
    step += 1
    involved = ", ".join(explanation.involved_activities)
    print(f"step {step}: conflicting tasks: {involved}")
    # relax the first offered requirement; a UI would let the user pick
    mus, explanation = session.resolve_local(mus.labels[0])
print(f"resolved locally in {step} steps; mode: {session.mode}")
print(f"dropped tasks: {[l.subject[0] for l in session.relaxed]}")

# Global resolution proposes one minimal correction set covering every
# conflict at once.  Accepting a subset triggers a recomputation for
# whatever remains.
session2 = start_session(instance)
mcs, _ = session2.begin_global_resolution()
print()
print(f"proposed correction set: {[l.subject[0] for l in mcs.labels]}")
remaining, _ = session2.accept_corrections([mcs.labels[0]])
print(f"accepted one; recomputed remainder: {[l.subject[0] for l in remaining.labels]}")
done, _ = session2.accept_corrections(list(remaining.labels))
assert done is None
print(f"mode after accepting the rest: {session2.mode}")

# The same explanations are available outside a session, rendered with
# per-constraint text for display.
conflict = describe_conflict(mcs.labels, session2.formula, kind="MCS")
print()
for label_id, text in conflict.text.items():
    print(f"  {label_id}: {text}")
