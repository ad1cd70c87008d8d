"""Clausal cardinality encodings.

Three building blocks:

- ``at_most_k``: Sinz-style sequential counter for "at most k of these
  literals", used where a one-shot bound is enough.
- ``build_totalizer``: a totalizer whose unary outputs can be assumed, so
  one hard counter supports a whole descending bound search without
  re-encoding.
- ``weighted_at_most``: a weighted sequential counter guarded by an
  activation literal, used for the weighted allocation objective.
"""

from __future__ import annotations


def at_most_k(lits: list[int], k: int, next_var: int) -> tuple[list[list[int]], int]:
    """Clauses forcing at most k of lits true; returns (clauses, next_var').

    Auxiliary variables are numbered from next_var upward.  Projected onto
    the input literals, the satisfying assignments are exactly those with
    at most k inputs true.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = len(lits)
    clauses: list[list[int]] = []
    if k == 0:
        return [[-l] for l in lits], next_var
    if k >= n:
        return [], next_var
    # s[i][j] (1-based) = "at least j of the first i literals are true"
    s = [[0] * (k + 1)]
    for i in range(1, n + 1):
        row = [0]
        for _ in range(k):
            row.append(next_var)
            next_var += 1
        s.append(row)
    for i in range(1, n + 1):
        x = lits[i - 1]
        clauses.append([-x, s[i][1]])
        if i > 1:
            for j in range(1, k + 1):
                clauses.append([-s[i - 1][j], s[i][j]])
            for j in range(2, k + 1):
                clauses.append([-x, -s[i - 1][j - 1], s[i][j]])
            clauses.append([-x, -s[i - 1][k]])
    return clauses, next_var


def build_totalizer(lits: list[int], new_var, add_clause) -> list[int]:
    """Totalizer over lits; returns outputs o where o[j-1] <-> (>= j true).

    Both implication directions are encoded, so outputs can be assumed
    positively (at-least bounds) or negatively (at-most bounds) without
    constraining anything when left free.
    """
    if not lits:
        return []
    if len(lits) == 1:
        return [lits[0]]
    mid = len(lits) // 2
    left = build_totalizer(lits[:mid], new_var, add_clause)
    right = build_totalizer(lits[mid:], new_var, add_clause)
    a, b = len(left), len(right)
    out = [new_var() for _ in range(a + b)]
    for i in range(a + 1):
        for j in range(b + 1):
            if i + j >= 1:
                clause = []
                if i > 0:
                    clause.append(-left[i - 1])
                if j > 0:
                    clause.append(-right[j - 1])
                clause.append(out[i + j - 1])
                add_clause(clause)
            if i + j + 1 <= a + b:
                clause = []
                if i < a:
                    clause.append(left[i])
                if j < b:
                    clause.append(right[j])
                clause.append(-out[i + j])
                add_clause(clause)
    for j in range(1, a + b):
        add_clause([-out[j], out[j - 1]])
    return out


def weighted_at_most(
    items: list[tuple[int, int]],
    bound: int,
    guard: int,
    new_var,
    add_clause,
) -> None:
    """Under assumption ``guard``, force sum(w for (lit, w) if lit true) <= bound.

    Register-propagation clauses are unguarded (they only define auxiliary
    partial-sum variables); the overflow clauses carry ``-guard`` so the
    constraint is inert unless the guard is assumed.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    prev: list[int] = []  # prev[j-1] = "sum of processed items >= j", capped at bound
    for lit, w in items:
        if w <= 0:
            raise ValueError("weights must be positive")
        cur = [new_var() for _ in range(bound)] if bound else []
        for j in range(1, bound + 1):
            if j - 1 < len(prev):
                add_clause([-prev[j - 1], cur[j - 1]])
            if j <= w:
                add_clause([-lit, cur[j - 1]])
            elif j - w - 1 < len(prev):
                add_clause([-lit, -prev[j - w - 1], cur[j - 1]])
        # forbid exceeding the bound when the guard is active; registers are
        # forced up to the true partial sum, so one threshold clause suffices
        if w > bound:
            add_clause([-guard, -lit])
        else:
            threshold = bound - w + 1
            if threshold <= len(prev):
                add_clause([-guard, -lit, -prev[threshold - 1]])
        prev = cur
