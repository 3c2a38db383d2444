"""Random choice functions and their progressive decomposition.

Everything here is exact: probabilities are rationals throughout, so the
decomposition round trip and linear feasibility questions are decided with
no tolerance at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import (
    ChoiceDomain,
    ChoiceError,
    ChoiceFunction,
    Comparison,
    DomainMismatchError,
    GuardError,
    PrimitiveOrderings,
    compare_picks,
)
from .models import ChoiceModel, _global_rank, satisfies_theta
from .oracle import exact_feasible

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ChoiceError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class RandomChoiceFunction:
    """Per-set probability measures with exact rational weights.

    ``probs[si]`` is aligned with the ascending members of ``domain.sets[si]``.
    """

    domain: ChoiceDomain = field(hash=False)
    probs: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self) -> None:
        if len(self.probs) != len(self.domain.sets):
            raise ChoiceError("one probability row per choice set is required")
        for s, row in zip(self.domain.sets, self.probs):
            if len(row) != len(s):
                raise ChoiceError("one probability per set member is required")
            if any(p < 0 for p in row):
                raise ChoiceError("probabilities must be nonnegative")
            if sum(row) != ONE:
                raise ChoiceError(
                    f"probabilities over {s!r} sum to {sum(row)}, not 1")

    @classmethod
    def from_table(cls, domain: ChoiceDomain,
                   table: Mapping) -> "RandomChoiceFunction":
        """Build from {(set symbols tuple/frozenset, symbol): weight}."""
        idx = domain.index
        rows = [[ZERO] * len(s) for s in domain.sets]
        for (members, symbol), p in table.items():
            key = tuple(sorted(idx[str(m)] for m in members))
            pos = domain.set_position.get(key)
            if pos is None:
                raise DomainMismatchError(f"{tuple(members)!r} is not a domain set")
            x = idx[str(symbol)]
            if x not in domain.sets[pos]:
                raise ChoiceError(f"{symbol!r} is not a member of {tuple(members)!r}")
            rows[pos][domain.sets[pos].index(x)] = as_fraction(p)
        return cls(domain, tuple(tuple(r) for r in rows))

    def probability(self, members: Iterable[str], symbol: str) -> Fraction:
        idx = self.domain.index
        key = tuple(sorted(idx[str(m)] for m in members))
        pos = self.domain.set_position.get(key)
        if pos is None:
            raise DomainMismatchError(f"{tuple(members)!r} is not a domain set")
        x = idx[str(symbol)]
        if x not in self.domain.sets[pos]:
            raise ChoiceError(f"{symbol!r} is not a member of {tuple(members)!r}")
        return self.probs[pos][self.domain.sets[pos].index(x)]

    def prob_by_index(self, set_position: int, x: int) -> Fraction:
        return self.probs[set_position][self.domain.sets[set_position].index(x)]


@dataclass(frozen=True)
class CumulativeRCF:
    """Per (alternative, set): total probability of a strictly better choice."""

    domain: ChoiceDomain = field(hash=False)
    values: tuple[tuple[Fraction, ...], ...] = ()  # aligned like probs

    def value(self, set_position: int, x: int) -> Fraction:
        return self.values[set_position][self.domain.sets[set_position].index(x)]


@dataclass(frozen=True)
class ProgressiveRepresentation:
    """Positive weights on a strictly decreasing chain of choice functions."""

    components: tuple[tuple[Fraction, ChoiceFunction], ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ChoiceError("a representation needs at least one component")
        if any(w <= 0 for w, _ in self.components):
            raise ChoiceError("component weights must be positive")
        if sum(w for w, _ in self.components) != ONE:
            raise ChoiceError("component weights must sum to one")

    def functions(self) -> tuple[ChoiceFunction, ...]:
        return tuple(c for _, c in self.components)

    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.components)

    def compose(self) -> "RandomChoiceFunction":
        return compose(dict(zip(self.functions(), self.weights())))


def compose(dist: Mapping[ChoiceFunction, Fraction | int | str]
            ) -> RandomChoiceFunction:
    """The random choice function induced by a probability distribution."""
    if not dist:
        raise ChoiceError("a distribution needs at least one choice function")
    functions = list(dist)
    dom = functions[0].domain
    weights = []
    for c in functions:
        if c.domain != dom:
            raise DomainMismatchError("distribution members live on different domains")
        w = as_fraction(dist[c])
        if w < 0:
            raise ChoiceError("weights must be nonnegative")
        weights.append(w)
    if sum(weights) != ONE:
        raise ChoiceError(f"weights sum to {sum(weights)}, not 1")
    rows = [[ZERO] * len(s) for s in dom.sets]
    for c, w in zip(functions, weights):
        if w == 0:
            continue
        for si, x in enumerate(c.picks):
            rows[si][dom.sets[si].index(x)] += w
    return RandomChoiceFunction(dom, tuple(tuple(r) for r in rows))


def deterministic(c: ChoiceFunction) -> RandomChoiceFunction:
    return compose({c: ONE})


def cumulative(rcf: RandomChoiceFunction,
               global_order: Sequence[str]) -> CumulativeRCF:
    """Cumulative form: value at (y, S) sums the weight strictly above y."""
    dom = rcf.domain
    grank = _global_rank(dom, global_order)
    values = []
    for s, row in zip(dom.sets, rcf.probs):
        by_rank = sorted(range(len(s)), key=lambda i: grank[s[i]])
        out = [ZERO] * len(s)
        acc = ZERO
        for i in by_rank:
            out[i] = acc
            acc += row[i]
        values.append(tuple(out))
    return CumulativeRCF(dom, tuple(values))


def decompose_progressive(rcf: RandomChoiceFunction,
                          ordering: PrimitiveOrderings) -> ProgressiveRepresentation:
    """The unique progressive representation of an RCF.

    Per choice set, the positive-probability alternatives tile (0, 1] with
    half-open intervals laid best-first.  The merged interval endpoints cut
    (0, 1] into segments; each segment selects one alternative per set and
    its length is the component weight.  This deterministic sweep replaces
    the uniform draw of the randomized description: the component weights
    are exactly the segment lengths.
    """
    dom = rcf.domain
    if ordering.domain != dom:
        raise DomainMismatchError("orderings live on a different domain")
    # Interval layout per set: upper endpoint of each positive-weight member.
    layouts = []
    cuts = {ONE}
    for si, ranking in enumerate(ordering.per_set):
        acc = ZERO
        bounds = []  # (upper endpoint, member) in ranking order
        for x in ranking:
            p = rcf.prob_by_index(si, x)
            if p > 0:
                acc += p
                bounds.append((acc, x))
                cuts.add(acc)
        layouts.append(bounds)
    breakpoints = sorted(cuts)
    components: list[tuple[Fraction, tuple[int, ...]]] = []
    prev = ZERO
    for r in breakpoints:
        picks = []
        for bounds in layouts:
            for upper, x in bounds:
                if r <= upper:
                    picks.append(x)
                    break
        weight = r - prev
        picks_t = tuple(picks)
        if components and components[-1][1] == picks_t:
            components[-1] = (components[-1][0] + weight, picks_t)
        else:
            components.append((weight, picks_t))
        prev = r
    rep = ProgressiveRepresentation(tuple(
        (w, ChoiceFunction(dom, p)) for w, p in components))
    _assert_decreasing_chain(rep, ordering)
    return rep


def _assert_decreasing_chain(rep: ProgressiveRepresentation,
                             ordering: PrimitiveOrderings) -> None:
    fns = rep.functions()
    for c1, c2 in zip(fns, fns[1:]):
        if compare_picks(c1.picks, c2.picks, ordering.rank) is not Comparison.DOMINATES:
            raise AssertionError(
                "decomposition produced a non-decreasing chain; "
                "this is an implementation bug")


DELTA_GUARD = 10_000


def in_delta(rcf: RandomChoiceFunction, model: ChoiceModel
             ) -> tuple[bool, dict[ChoiceFunction, Fraction] | None]:
    """Exact feasibility of representing the RCF as a mixture over the model.

    Solves the linear system (one equation per (set, alternative) plus the
    unit-mass equation) over nonnegative weights indexed by the model.
    """
    dom = rcf.domain
    if model.domain != dom:
        raise DomainMismatchError("model lives on a different domain")
    if len(model) > DELTA_GUARD:
        raise GuardError(f"in_delta is guarded at {DELTA_GUARD} model functions")
    functions = model.functions
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for si, s in enumerate(dom.sets):
        for pos, x in enumerate(s):
            rows.append([ONE if c.picks[si] == x else ZERO for c in functions])
            rhs.append(rcf.probs[si][pos])
    rows.append([ONE] * len(functions))
    rhs.append(ONE)
    solution = exact_feasible(rows, rhs, ["eq"] * len(rows),
                              [True] * len(functions))
    if solution is None:
        return False, None
    return True, {c: w for c, w in zip(functions, solution) if w != 0}


@dataclass(frozen=True)
class RThetaViolation:
    """A failed cumulative-monotonicity comparison."""

    set_symbols: tuple[str, ...]
    removed: str
    fixed: str
    axiom: str  # "rtheta1" or "rtheta2"


def _two_cumulatives(rcf: RandomChoiceFunction, grank: Sequence[int]):
    """Per (set, member): mass strictly above, and weakly at-or-above."""
    strict, weak = [], []
    for s, row in zip(rcf.domain.sets, rcf.probs):
        by_rank = sorted(range(len(s)), key=lambda i: grank[s[i]])
        up = [ZERO] * len(s)
        at = [ZERO] * len(s)
        acc = ZERO
        for i in by_rank:
            up[i] = acc
            acc += row[i]
            at[i] = acc
        strict.append(up)
        weak.append(at)
    return strict, weak


def satisfies_rtheta(rcf: RandomChoiceFunction, global_order: Sequence[str]
                     ) -> tuple[bool, RThetaViolation | None]:
    """Random counterparts of the choice-overload axioms.

    First axiom: removing an alternative worse than y may not lower the
    probability of choosing y or better.  Second axiom: removing one
    better than y may not raise the probability of choosing strictly
    better than y.  The at-or-above form in the first axiom and the
    strictly-above form in the second are each exactly what the
    deterministic axioms become under point masses; together they
    characterize mixtures over the minimal rational extension.
    """
    dom = rcf.domain
    dom.require_full("the random theta axioms")
    grank = _global_rank(dom, global_order)
    strict, weak = _two_cumulatives(rcf, grank)
    alts = dom.alternatives
    for si, s in enumerate(dom.sets):
        if len(s) < 3:
            continue
        for x, sub in dom.removal_position[si].items():
            s_sub = dom.sets[sub]
            for y in s:
                if y == x:
                    continue
                pos_here = s.index(y)
                pos_there = s_sub.index(y)
                if grank[y] < grank[x]:  # y better than removed x
                    if weak[sub][pos_there] < weak[si][pos_here]:
                        return False, RThetaViolation(
                            dom.set_symbols(si), alts[x], alts[y], "rtheta1")
                elif strict[si][pos_here] < strict[sub][pos_there]:
                    return False, RThetaViolation(
                        dom.set_symbols(si), alts[x], alts[y], "rtheta2")
    return True, None


def decompose_theta(rcf: RandomChoiceFunction,
                    global_order: Sequence[str]) -> ProgressiveRepresentation:
    """Progressive decomposition guaranteed to land in the minimal extension.

    Requires the cumulative axioms to hold.  Every component is re-verified
    against the deterministic axioms; a failure there signals an
    implementation bug, not bad input.
    """
    ok, witness = satisfies_rtheta(rcf, global_order)
    if not ok:
        raise ChoiceError(
            f"the RCF violates the cumulative axioms ({witness.axiom} at "
            f"S={''.join(witness.set_symbols)}, removing {witness.removed}, "
            f"fixed {witness.fixed})")
    ordering = PrimitiveOrderings.from_global(rcf.domain, global_order)
    rep = decompose_progressive(rcf, ordering)
    for c in rep.functions():
        passed, _ = satisfies_theta(c, global_order)
        if not passed:
            raise AssertionError(
                "a decomposition component escaped the minimal extension; "
                "this is an implementation bug")
    return rep
