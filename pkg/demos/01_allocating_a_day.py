"""
Allocating a day of field work to the fewest teams
===================================================

A small dispatch problem end to end: describe the pre-scheduled
activities and the teams that may perform them, ask for an allocation
that uses as few teams as possible, and draw the result as a Gantt
chart grouped by team.
"""

from teamalloc import (
    Activity,
    Instance,
    Team,
    encode,
    minimize_used_teams,
    start_session,
)

# Six maintenance jobs across one morning, minutes from midnight.
# inspect-2 and repair-1 must go to the same team: the repair follows
# directly from the inspection's findings.
activities = [
    Activity("inspect-1", 8 * 60, 9 * 60),
    Activity("inspect-2", 8 * 60 + 30, 10 * 60),
    Activity("repair-1", 10 * 60 + 30, 12 * 60),
    Activity("repair-2", 9 * 60, 11 * 60),
    Activity("survey-1", 9 * 60 + 30, 10 * 60 + 30),
    Activity("survey-2", 11 * 60, 12 * 60 + 30),
]

# Three teams; only alpha and bravo are certified for repairs.
teams = [Team("alpha"), Team("bravo"), Team("charlie")]
certified_for = {
    "inspect-1": ["alpha", "bravo", "charlie"],
    "inspect-2": ["alpha", "bravo", "charlie"],
    "repair-1": ["alpha", "bravo"],
    "repair-2": ["alpha", "bravo"],
    "survey-1": ["alpha", "bravo", "charlie"],
    "survey-2": ["alpha", "bravo", "charlie"],
}
compat = [[t.id in certified_for[a.id] for t in teams] for a in activities]

instance = Instance(
    activities=activities,
    teams=teams,
    compat=compat,
    same_pairs=[("inspect-2", "repair-1")],
    horizon_hours=24,
)

# The low-level path: encode to clauses, then minimize the team count.
result = minimize_used_teams(encode(instance))
print(f"optimal team count: {result.objective}")
print(f"proven optimal:     {result.proven_optimal}")
for aid, tid in sorted(result.allocation.items()):
    print(f"  {aid:<10} -> {tid}")

# The session wraps the same machinery and keeps a Gantt view around.
session = start_session(instance)
gantt = session.gantt_view()
print()
for row_id, entries in gantt.rows:
    bars = ", ".join(f"{aid} [{s // 60:02d}:{s % 60:02d}-{e // 60:02d}:{e % 60:02d}]" for aid, s, e in entries)
    print(f"{row_id:<8} {bars}")

# Overrides re-solve immediately: pin a job and watch the plan adapt.
session.apply_override("survey-1", "charlie", "force")
print()
print("after forcing survey-1 onto charlie:")
for aid, tid in sorted(session.last_solution.allocation.items()):
    print(f"  {aid:<10} -> {tid}")
