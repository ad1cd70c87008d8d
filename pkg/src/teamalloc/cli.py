"""Command-line front end: solve, explain, serve.

Exit codes: 0 proven optimal, 2 feasible but unproven within the budget,
3 infeasible, 4 invalid input, 5 explanation requested on a satisfiable
problem.  Defaults can come from a JSON config file mirroring the
parameter tab (seed, clique, symmetry, soft kinds, timeout) and from the
TEAMALLOC_TIMEOUT environment variable.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import formats
from .encode import EncodeConfig, RELAXABLE_KINDS, TASK_ALLOCATED, encode
from .explain import InputSatisfiableError, describe_conflict, find_mcs, find_mus
from .model import InvalidInstanceError
from .optimize import (
    FormulaSolver,
    Infeasible,
    OptimalSolution,
    Timeout,
    max_allocated_tasks,
    minimize_used_teams,
)

EXIT_OPTIMAL = 0
EXIT_UNPROVEN = 2
EXIT_INFEASIBLE = 3
EXIT_INVALID = 4
EXIT_SATISFIABLE = 5


def _load_defaults(config_path: str | None) -> dict:
    if config_path is None:
        return {}
    try:
        with open(config_path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read config file: {exc}")
    known = {"seed", "clique", "symmetry", "soft_kinds", "timeout"}
    unknown = set(doc) - known
    if unknown:
        raise click.ClickException(f"unknown config keys: {sorted(unknown)}")
    return doc


def _emit(doc: dict, out: str | None) -> None:
    if out:
        formats.dump_json(doc, out)
    else:
        click.echo(json.dumps(doc, indent=2, sort_keys=True))


def _read_instance(path: str):
    try:
        return formats.load_instance(path)
    except (formats.FormatError, InvalidInstanceError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _encode_config(defaults: dict, clique, symmetry, soft) -> EncodeConfig:
    kinds = list(soft) or defaults.get("soft_kinds") or [TASK_ALLOCATED]
    bad = set(kinds) - RELAXABLE_KINDS
    if bad:
        click.echo(f"error: kinds cannot be soft: {sorted(bad)}", err=True)
        sys.exit(EXIT_INVALID)
    return EncodeConfig(
        clique=defaults.get("clique", True) if clique is None else clique,
        symmetry=defaults.get("symmetry", True) if symmetry is None else symmetry,
        soft_kinds=frozenset(kinds),
    )


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON file with default parameters.")
@click.pass_context
def main(ctx: click.Context, config_path: str | None) -> None:
    """Explainable workforce allocation toolbox."""
    ctx.obj = _load_defaults(config_path)


def _timeout_default(defaults: dict, timeout: float | None) -> float:
    if timeout is not None:
        return timeout
    if "timeout" in defaults:
        return float(defaults["timeout"])
    env = os.environ.get("TEAMALLOC_TIMEOUT")
    return float(env) if env else 30.0


@main.command()
@click.argument("path", type=click.Path())
@click.option("--clique/--no-clique", default=None)
@click.option("--symmetry/--no-symmetry", default=None)
@click.option("--timeout", type=float, default=None, help="Solve budget in seconds.")
@click.option("--seed", type=int, default=None,
              help="Accepted for reproducibility bookkeeping; the solver is "
                   "deterministic, so the seed does not change results.")
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def solve(ctx, path, clique, symmetry, timeout, seed, out):
    """Minimize the number of used teams for an instance file."""
    defaults = ctx.obj or {}
    instance = _read_instance(path)
    cfg = _encode_config(defaults, clique, symmetry, ())
    budget = _timeout_default(defaults, timeout)
    engine = FormulaSolver(encode(instance, cfg))
    result = minimize_used_teams(engine, budget=budget)

    if isinstance(result, Infeasible):
        _emit(formats.solution_to_dict(None, {}, [a.id for a in instance.activities],
                                       False, []), out)
        click.echo("infeasible", err=True)
        sys.exit(EXIT_INFEASIBLE)
    if isinstance(result, Timeout) and result.best is None:
        click.echo("budget exhausted before any solution", err=True)
        sys.exit(EXIT_UNPROVEN)
    solution = result.best if isinstance(result, Timeout) else result
    assert isinstance(solution, OptimalSolution)
    stats = {
        "solver_calls": len(solution.stats),
        "conflicts": sum(s.conflicts for s in solution.stats),
        "decisions": sum(s.decisions for s in solution.stats),
        "wall_time": sum(s.wall_time for s in solution.stats),
    }
    _emit(
        formats.solution_to_dict(
            solution.objective, solution.allocation, [], solution.proven_optimal,
            [], stats,
        ),
        out,
    )
    sys.exit(EXIT_OPTIMAL if solution.proven_optimal else EXIT_UNPROVEN)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--mode", type=click.Choice(["mus", "mcs", "relax"]), default="mus")
@click.option("--soft", multiple=True, help="Constraint kinds treated as soft.")
@click.option("--timeout", type=float, default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def explain(ctx, path, mode, soft, timeout, out):
    """Explain infeasibility (mus/mcs) or propose a relaxed allocation."""
    defaults = ctx.obj or {}
    instance = _read_instance(path)
    cfg = _encode_config(defaults, None, None, soft)
    budget = _timeout_default(defaults, timeout)
    formula = encode(instance, cfg)
    engine = FormulaSolver(formula)

    if mode == "relax":
        solution = max_allocated_tasks(engine, budget=budget)
        _emit(
            formats.solution_to_dict(
                None, solution.allocation, solution.unallocated,
                solution.proven_optimal, [],
            )
            | {"mode": "relax", "allocated_count": len(solution.allocation)},
            out,
        )
        sys.exit(EXIT_OPTIMAL)

    if mode == "mus":
        try:
            conflict = find_mus(engine, budget=budget)
        except InputSatisfiableError:
            click.echo("the problem is satisfiable; nothing to explain", err=True)
            sys.exit(EXIT_SATISFIABLE)
        kind = "MUS"
    else:
        res = engine.solve(formula.assumptions_all(), budget)
        if res.status == "SAT":
            click.echo("the problem is satisfiable; nothing to correct", err=True)
            sys.exit(EXIT_SATISFIABLE)
        conflict = find_mcs(engine, budget=budget)
        kind = "MCS"

    explanation = describe_conflict(conflict.labels, formula, kind)
    _emit(
        {
            "mode": mode,
            "kind": kind,
            "labels": [l.id for l in conflict.labels],
            "text": explanation.text,
            "involved_activities": explanation.involved_activities,
            "involved_teams": explanation.involved_teams,
            "minimal": conflict.minimal,
            "stats": {"solver_calls": conflict.solver_calls,
                      "wall_time": conflict.wall_time},
        },
        out,
    )
    sys.exit(EXIT_OPTIMAL)


@main.command()
@click.option("--suite", type=click.Choice(["opt", "explain"]), default="opt")
@click.option("--lengths", default="6,8,24", help="Horizon lengths in hours.")
@click.option("--repetitions", type=int, default=5)
@click.option("--teams", "n_teams", type=int, default=20)
@click.option("--timeout", type=float, default=None)
@click.option("--seed", type=int, default=0)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--csv", "as_csv", is_flag=True, help="CSV output.")
@click.pass_context
def bench(ctx, suite, lengths, repetitions, n_teams, timeout, seed, as_json, as_csv):
    """Run a benchmark sweep on generated instances."""
    from .bench import (
        rows_to_csv,
        rows_to_dicts,
        rows_to_text,
        run_explain_benchmark,
        run_opt_benchmark,
    )

    defaults = ctx.obj or {}
    budget = _timeout_default(defaults, timeout)
    try:
        hours = tuple(int(h) for h in lengths.split(","))
    except ValueError:
        click.echo(f"error: bad --lengths value {lengths!r}", err=True)
        sys.exit(EXIT_INVALID)
    try:
        if suite == "opt":
            rows = run_opt_benchmark(
                lengths=hours, timeout=budget, repetitions=repetitions,
                n_teams=n_teams, seed=seed,
            )
        else:
            rows = run_explain_benchmark(
                lengths=hours, repetitions=repetitions, n_teams=n_teams,
                budget=budget, seed=seed,
            )
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    if as_json:
        click.echo(json.dumps(rows_to_dicts(rows), indent=2))
    elif as_csv:
        click.echo(rows_to_csv(rows))
    else:
        click.echo(rows_to_text(rows))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--data-dir", type=click.Path(), default=None,
              help="Directory for uploaded instance snapshots.")
def serve(host, port, data_dir):
    """Run the HTTP session service."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(data_dir), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
