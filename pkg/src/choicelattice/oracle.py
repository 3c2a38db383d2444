"""Brute-force reference implementations.

These live in the shipped library (not in the test tree) so the CLI can run
oracle cross-checks next to the fast paths.  Everything is exhaustive or
exact; budgets keep the combinatorics at desk scale.
"""

from __future__ import annotations

import itertools
import random as _stdrandom
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ChoiceDomain, ChoiceError, GuardError, PrimitiveOrderings

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class EnumerationBudget:
    max_functions: int = 1_000_000
    max_variables: int = 10_000

    def __post_init__(self) -> None:
        if self.max_functions <= 0 or self.max_variables <= 0:
            raise ChoiceError("budgets must be positive")


DEFAULT_BUDGET = EnumerationBudget()


def all_choice_functions(domain: ChoiceDomain,
                         budget: EnumerationBudget = DEFAULT_BUDGET):
    """Every choice function of the domain (cartesian product of picks)."""
    from .models import ChoiceModel

    total = 1
    for s in domain.sets:
        total *= len(s)
    if total > budget.max_functions:
        raise GuardError(f"{total} choice functions exceed the budget")
    return ChoiceModel.from_picks(domain, itertools.product(*domain.sets))


ORDERING_GUARD_N = 8


def all_orderings(symbols: Sequence[str]) -> tuple[tuple[str, ...], ...]:
    """All strict total orders, lexicographic in the given symbol sequence."""
    if len(symbols) > ORDERING_GUARD_N:
        raise GuardError(f"ordering enumeration is guarded at n <= {ORDERING_GUARD_N}")
    return tuple(itertools.permutations(tuple(str(s) for s in symbols)))


def _coerce_system(matrix, rhs, relations, nonneg):
    rows = [[Fraction(v) for v in row] for row in matrix]
    b = [Fraction(v) for v in rhs]
    if len(rows) != len(b) or len(rows) != len(relations):
        raise ChoiceError("matrix, rhs, and relation tags must align")
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ChoiceError("ragged constraint matrix")
    if len(nonneg) != ncols:
        raise ChoiceError("one nonnegativity flag per variable is required")
    for rel in relations:
        if rel not in ("eq", "le"):
            raise ChoiceError(f"unknown relation tag {rel!r}")
    return rows, b, ncols


def exact_feasible(matrix, rhs, relations: Sequence[str],
                   nonneg: Sequence[bool]) -> list[Fraction] | None:
    """Exact rational solution of A x (=|<=) b, or None when infeasible.

    Phase-one simplex with Bland's rule: deterministic, cycle-free, no
    floating point anywhere.  Free variables are split into differences of
    nonnegative ones.
    """
    rows, b, ncols = _coerce_system(matrix, rhs, relations, nonneg)
    if ncols > DEFAULT_BUDGET.max_variables:
        raise GuardError("variable count exceeds the budget")

    # Column layout: splits for each original variable, then slacks.
    col_of: list[tuple[int, int | None]] = []  # (plus column, minus column)
    cols = 0
    for j in range(ncols):
        if nonneg[j]:
            col_of.append((cols, None))
            cols += 1
        else:
            col_of.append((cols, cols + 1))
            cols += 2
    nslack = sum(1 for rel in relations if rel == "le")
    width = cols + nslack

    tableau: list[list[Fraction]] = []
    slack_seen = 0
    for i, row in enumerate(rows):
        line = [ZERO] * (width + 1)
        for j, v in enumerate(row):
            plus, minus = col_of[j]
            line[plus] += v
            if minus is not None:
                line[minus] -= v
        if relations[i] == "le":
            line[cols + slack_seen] = ONE
            slack_seen += 1
        line[width] = b[i]
        if line[width] < 0:
            line = [-v for v in line]
        tableau.append(line)

    m = len(tableau)
    total = width + m  # artificials appended
    for i, line in enumerate(tableau):
        line[width:width] = [ONE if k == i else ZERO for k in range(m)]
    basis = [width + i for i in range(m)]

    # Phase-one objective: drive the artificial mass to zero.
    obj = [ZERO] * (total + 1)
    for line in tableau:
        for k in range(total + 1):
            obj[k] += line[k]

    while True:
        entering = next((k for k in range(width) if obj[k] > 0), None)
        if entering is None:
            break
        pivot_row, best = None, None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][total] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[pivot_row])):
                    best, pivot_row = ratio, i
        if pivot_row is None:
            raise AssertionError("phase-one objective is bounded by zero")
        piv = tableau[pivot_row][entering]
        tableau[pivot_row] = [v / piv for v in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [v - f * w for v, w in zip(tableau[i], tableau[pivot_row])]
        f = obj[entering]
        obj = [v - f * w for v, w in zip(obj, tableau[pivot_row])]
        basis[pivot_row] = entering

    if obj[total] != 0:
        return None

    values = [ZERO] * width
    for i, var in enumerate(basis):
        if var < width:
            values[var] = tableau[i][total]
    solution = []
    for j in range(ncols):
        plus, minus = col_of[j]
        solution.append(values[plus] - (values[minus] if minus is not None else ZERO))
    return solution


ELIMINATION_ROW_GUARD = 200_000


def feasible_by_elimination(matrix, rhs, relations: Sequence[str],
                            nonneg: Sequence[bool]) -> bool:
    """Variable-by-variable projection (Fourier-Motzkin) feasibility check.

    Second, independent route for small systems; pairs with exact_feasible.
    """
    rows, b, ncols = _coerce_system(matrix, rhs, relations, nonneg)
    ineqs: list[tuple[list[Fraction], Fraction]] = []
    for row, bb, rel in zip(rows, b, relations):
        ineqs.append((list(row), bb))
        if rel == "eq":
            ineqs.append(([-v for v in row], -bb))
    for j, flag in enumerate(nonneg):
        if flag:
            row = [ZERO] * ncols
            row[j] = -ONE
            ineqs.append((row, ZERO))

    for j in range(ncols):
        pos = [(r, c) for r, c in ineqs if r[j] > 0]
        neg = [(r, c) for r, c in ineqs if r[j] < 0]
        rest = [(r, c) for r, c in ineqs if r[j] == 0]
        for rp, cp in pos:
            for rn, cn in neg:
                scale_p, scale_n = -rn[j], rp[j]
                row = [scale_p * a + scale_n * bb for a, bb in zip(rp, rn)]
                rest.append((row, scale_p * cp + scale_n * cn))
        if len(rest) > ELIMINATION_ROW_GUARD:
            raise GuardError("projection blow-up exceeds the guard")
        ineqs = rest
    return all(c >= 0 for _, c in ineqs)


def naive_self_progressive(model, ordering: PrimitiveOrderings,
                           samples: int = 200, seed: int = 0) -> bool:
    """One-sided check that decompositions never escape the model.

    Runs the deterministic pair test (the even mixture of any two members
    must decompose inside the model) plus seeded random rational mixtures.
    A single escape refutes self-progressiveness; all-pass is evidence, not
    proof, except that the pair test alone already decides the lattice
    property.
    """
    from .random_choice import compose, decompose_progressive

    members = model.picks_set()
    half = Fraction(1, 2)
    fns = model.functions
    for c1, c2 in itertools.combinations(fns, 2):
        rep = decompose_progressive(compose({c1: half, c2: half}), ordering)
        if any(c.picks not in members for c in rep.functions()):
            return False
    rng = _stdrandom.Random(seed)
    for _ in range(samples):
        k = rng.randint(1, min(4, len(fns)))
        chosen = rng.sample(fns, k)
        raw = [rng.randint(1, 9) for _ in range(k)]
        total = sum(raw)
        dist = {c: Fraction(w, total) for c, w in zip(chosen, raw)}
        rep = decompose_progressive(compose(dist), ordering)
        if any(c.picks not in members for c in rep.functions()):
            return False
    return True
