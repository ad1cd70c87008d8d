"""Explainable workforce allocation: SAT-based optimization, conflict
explanation, and interactive feasibility restoration."""

from .bench import (
    GenConfig,
    brute_force_optimal,
    generate_instance,
    rows_to_csv,
    rows_to_dicts,
    rows_to_text,
    run_explain_benchmark,
    run_opt_benchmark,
)
from .encode import (
    COMPATIBILITY,
    OVERLAP,
    OVERRIDE,
    RELAXABLE_KINDS,
    SAME_PAIR,
    TASK_ALLOCATED,
    ConstraintLabel,
    EncodeConfig,
    LabeledFormula,
    encode,
)
from .explain import (
    ConflictExplanation,
    HardCoreConflictError,
    InputSatisfiableError,
    Mcs,
    Mus,
    describe_conflict,
    find_mcs,
    find_mus,
)
from .model import (
    Activity,
    Instance,
    InvalidInstanceError,
    Team,
    validate_instance,
)
from .optimize import (
    FormulaSolver,
    Infeasible,
    OptimalSolution,
    PriorityWeights,
    RelaxedSolution,
    Timeout,
    max_allocated_tasks,
    maximize_weighted_allocation,
    minimize_used_teams,
)
from .session import GanttData, Session, WrongModeError, start_session
from .verify import UNSET, check_allocation, check_gantt, check_model

__all__ = [
    "Activity",
    "COMPATIBILITY",
    "ConflictExplanation",
    "ConstraintLabel",
    "EncodeConfig",
    "FormulaSolver",
    "GanttData",
    "GenConfig",
    "HardCoreConflictError",
    "Infeasible",
    "InputSatisfiableError",
    "Instance",
    "InvalidInstanceError",
    "LabeledFormula",
    "Mcs",
    "Mus",
    "OVERLAP",
    "OVERRIDE",
    "OptimalSolution",
    "PriorityWeights",
    "RELAXABLE_KINDS",
    "RelaxedSolution",
    "SAME_PAIR",
    "Session",
    "TASK_ALLOCATED",
    "Team",
    "Timeout",
    "UNSET",
    "WrongModeError",
    "brute_force_optimal",
    "check_allocation",
    "check_gantt",
    "check_model",
    "describe_conflict",
    "encode",
    "find_mcs",
    "find_mus",
    "generate_instance",
    "rows_to_csv",
    "rows_to_dicts",
    "rows_to_text",
    "run_explain_benchmark",
    "run_opt_benchmark",
    "max_allocated_tasks",
    "maximize_weighted_allocation",
    "minimize_used_teams",
    "start_session",
    "validate_instance",
]

__version__ = "0.1.0"
