"""Operations on choice models.

A choice model is a finite set of choice functions over one shared domain.
This module verifies and builds the lattice structure behind orderly
(progressive) representability, materializes the rational model and its
minimal extension, and checks mixture closure and single crossing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
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
    join_picks,
    meet_picks,
)

ENUMERATION_GUARD_N = 6


@dataclass(frozen=True)
class ChoiceModel:
    """A nonempty, duplicate-free set of choice functions, canonically sorted."""

    domain: ChoiceDomain = field(hash=False)
    functions: tuple[ChoiceFunction, ...] = ()

    def __post_init__(self) -> None:
        if not self.functions:
            raise ChoiceError("a choice model must be nonempty")
        picks = []
        for c in self.functions:
            if c.domain != self.domain:
                raise DomainMismatchError("model members live on different domains")
            picks.append(c.picks)
        if len(set(picks)) != len(picks):
            raise ChoiceError("duplicate choice functions in model")
        ordered = tuple(sorted(self.functions, key=lambda c: c.picks))
        object.__setattr__(self, "functions", ordered)

    @classmethod
    def from_functions(cls, functions: Iterable[ChoiceFunction]) -> "ChoiceModel":
        fns = list(functions)
        if not fns:
            raise ChoiceError("a choice model must be nonempty")
        dedup = {c.picks: c for c in fns}
        return cls(fns[0].domain, tuple(dedup.values()))

    @classmethod
    def from_strings(cls, domain: ChoiceDomain,
                     texts: Iterable[str]) -> "ChoiceModel":
        return cls.from_functions(
            ChoiceFunction.from_string(domain, t) for t in texts)

    @classmethod
    def from_picks(cls, domain: ChoiceDomain,
                   picks: Iterable[tuple[int, ...]]) -> "ChoiceModel":
        return cls(domain, tuple(ChoiceFunction(domain, p) for p in set(picks)))

    def picks_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(c.picks for c in self.functions)

    def strings(self) -> tuple[str, ...]:
        return tuple(c.to_string() for c in self.functions)

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __contains__(self, c: ChoiceFunction) -> bool:
        return c.domain == self.domain and c.picks in self.picks_set()


@dataclass(frozen=True)
class LatticeWitness:
    """A pair whose join or meet escapes the model."""

    left: ChoiceFunction
    right: ChoiceFunction
    kind: str  # "join" or "meet"
    escapee: ChoiceFunction


@dataclass(frozen=True)
class ThetaViolation:
    """The literal failed comparison behind a theta-axiom violation."""

    set_symbols: tuple[str, ...]
    removed: str
    chosen: str
    chosen_after: str
    axiom: str  # "theta1" or "theta2"


@dataclass(frozen=True)
class MixtureWitness:
    left: ChoiceFunction
    right: ChoiceFunction
    escapee: ChoiceFunction


@dataclass(frozen=True)
class SetContingentUtility:
    """Rational-valued utility of choosing x from S, for every (x, S) pair."""

    domain: ChoiceDomain = field(hash=False)
    values: tuple[tuple[Fraction, ...], ...] = ()  # aligned with domain.sets

    def __post_init__(self) -> None:
        if len(self.values) != len(self.domain.sets):
            raise ChoiceError("one utility row per choice set is required")
        for s, row in zip(self.domain.sets, self.values):
            if len(row) != len(s):
                raise ChoiceError("one utility value per set member is required")

    def value(self, set_position: int, x: int) -> Fraction:
        return self.values[set_position][self.domain.sets[set_position].index(x)]


def _check_shared(model: ChoiceModel, ordering: PrimitiveOrderings) -> None:
    if model.domain != ordering.domain:
        raise DomainMismatchError("model and orderings live on different domains")


def is_lattice(model: ChoiceModel, ordering: PrimitiveOrderings
               ) -> tuple[bool, LatticeWitness | None]:
    """True iff the join and meet of every pair stay inside the model."""
    _check_shared(model, ordering)
    rank = ordering.rank
    members = model.picks_set()
    for c1, c2 in itertools.combinations(model.functions, 2):
        j = join_picks(c1.picks, c2.picks, rank)
        if j not in members:
            return False, LatticeWitness(c1, c2, "join",
                                         ChoiceFunction(model.domain, j))
        m = meet_picks(c1.picks, c2.picks, rank)
        if m not in members:
            return False, LatticeWitness(c1, c2, "meet",
                                         ChoiceFunction(model.domain, m))
    return True, None


def lattice_closure(model: ChoiceModel,
                    ordering: PrimitiveOrderings) -> ChoiceModel:
    """Smallest superset closed under pairwise join and meet.

    Fixpoint iteration: new elements are paired against everything already
    present, in a deterministic order.
    """
    _check_shared(model, ordering)
    prefer = ordering.prefer
    items = sorted(model.picks_set())
    seen = set(items)
    i = 0
    while i < len(items):
        p = items[i]
        for j in range(i + 1):
            q = items[j]
            jn = tuple(prefer[s][x][y] for s, (x, y) in enumerate(zip(p, q)))
            if jn not in seen:
                seen.add(jn)
                items.append(jn)
            # the meet picks whichever member the join left behind
            mt = tuple(x if jx == y else y
                       for jx, x, y in zip(jn, p, q))
            if mt not in seen:
                seen.add(mt)
                items.append(mt)
        i += 1
    return ChoiceModel.from_picks(model.domain, seen)


def is_chain(model: ChoiceModel, ordering: PrimitiveOrderings) -> bool:
    """True iff the comparison relation is total on the model."""
    _check_shared(model, ordering)
    rank = ordering.rank
    for c1, c2 in itertools.combinations(model.functions, 2):
        if compare_picks(c1.picks, c2.picks, rank) is Comparison.INCOMPARABLE:
            return False
    return True


def rationalize(c: ChoiceFunction) -> tuple[str, ...] | None:
    """A strict preference whose maximization reproduces c, if one exists.

    Decided by acyclicity of the revealed-preference digraph (x beats y
    whenever c picks x from a set containing y).  Returns the
    lexicographically least topological order, best to worst.
    """
    n = c.domain.n
    beats: list[set[int]] = [set() for _ in range(n)]
    for s, x in zip(c.domain.sets, c.picks):
        for y in s:
            if y != x:
                beats[x].add(y)
    indeg = [0] * n
    for x in range(n):
        for y in beats[x]:
            indeg[y] += 1
    # Kahn's algorithm, always expanding the least available index.
    available = sorted(x for x in range(n) if indeg[x] == 0)
    order: list[int] = []
    while available:
        x = available.pop(0)
        order.append(x)
        changed = False
        for y in sorted(beats[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                available.append(y)
                changed = True
        if changed:
            available.sort()
    if len(order) < n:
        return None  # a cycle: no rationalizing preference
    return tuple(c.domain.alternatives[x] for x in order)


def enumerate_rational(domain: ChoiceDomain) -> ChoiceModel:
    """All maximizer functions of all strict orders, deduplicated."""
    if domain.n > ENUMERATION_GUARD_N:
        raise GuardError(f"rational enumeration is guarded at n <= {ENUMERATION_GUARD_N}")
    seen = set()
    for order in itertools.permutations(range(domain.n)):
        rank = [0] * domain.n
        for pos, x in enumerate(order):
            rank[x] = pos
        seen.add(tuple(min(s, key=rank.__getitem__) for s in domain.sets))
    return ChoiceModel.from_picks(domain, seen)


def _global_rank(domain: ChoiceDomain, global_order: Sequence[str]) -> list[int]:
    idx = domain.index
    try:
        order = [idx[str(a)] for a in global_order]
    except KeyError as exc:
        raise DomainMismatchError(f"unknown alternative {exc.args[0]!r}") from None
    if sorted(order) != list(range(domain.n)):
        raise ChoiceError("global order must rank every alternative exactly once")
    rank = [0] * domain.n
    for pos, x in enumerate(order):
        rank[x] = pos
    return rank


def _theta_ok(picks: Sequence[int], domain: ChoiceDomain,
              grank: Sequence[int]) -> bool:
    removal = domain.removal_position
    sets = domain.sets
    for si, s in enumerate(sets):
        if len(s) < 3:
            continue
        y = picks[si]
        ry = grank[y]
        for x, sub in removal[si].items():
            if x == y:
                continue
            r2 = grank[picks[sub]]
            if ry < grank[x]:
                if r2 > ry:
                    return False
            elif r2 < ry:
                return False
    return True


def satisfies_theta(c: ChoiceFunction, global_order: Sequence[str]
                    ) -> tuple[bool, ThetaViolation | None]:
    """Check both choice-overload axioms at every (set, removed alternative).

    Removing an alternative worse than the chosen one may only improve the
    choice; removing one better than the chosen one may only worsen it.
    Quantifies over removals that stay inside the domain.
    """
    dom = c.domain
    dom.require_full("the theta axioms")
    grank = _global_rank(dom, global_order)
    alts = dom.alternatives
    for si, s in enumerate(dom.sets):
        if len(s) < 3:
            continue
        y = c.picks[si]
        for x, sub in dom.removal_position[si].items():
            if x == y:
                continue
            y2 = c.picks[sub]
            if grank[y] < grank[x]:  # chosen y is better than removed x
                if grank[y2] > grank[y]:
                    return False, ThetaViolation(dom.set_symbols(si), alts[x],
                                                 alts[y], alts[y2], "theta1")
            elif grank[y2] < grank[y]:  # removed x is better than chosen y
                return False, ThetaViolation(dom.set_symbols(si), alts[x],
                                             alts[y], alts[y2], "theta2")
    return True, None


@lru_cache(maxsize=128)
def _theta_picks(domain: ChoiceDomain,
                 order: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    grank = [0] * domain.n
    for pos, x in enumerate(order):
        grank[x] = pos
    passing = frozenset(
        picks for picks in itertools.product(*domain.sets)
        if _theta_ok(picks, domain, grank))
    # Mandatory cross-check: the axiom filter must coincide with the lattice
    # closure of the rational model (the artifact's central equivalence).
    ordering = PrimitiveOrderings.from_global(
        domain, tuple(domain.alternatives[i] for i in order))
    closed = lattice_closure(enumerate_rational(domain), ordering)
    if closed.picks_set() != passing:
        raise AssertionError(
            "axiom filter and rational-closure paths disagree; "
            "this is an implementation bug")
    return passing


THETA_GUARD_N = 4


def theta_model(domain: ChoiceDomain,
                global_order: Sequence[str]) -> ChoiceModel:
    """The minimal extension of rational choice closed under join and meet.

    Computed twice on every call (axiom filter over all choice functions,
    and lattice closure of the rational model) and asserted equal.  The
    exhaustive filter bounds this to small alternative sets.
    """
    domain.require_full("the minimal rational extension")
    if domain.n > THETA_GUARD_N:
        raise GuardError(
            f"theta_model's dual-path check enumerates every choice function "
            f"and is guarded at n <= {THETA_GUARD_N}")
    grank = _global_rank(domain, global_order)
    order = tuple(sorted(range(domain.n), key=grank.__getitem__))
    return ChoiceModel.from_picks(domain, _theta_picks(domain, order))


def _pointwise_mixtures(p1: tuple[int, ...], p2: tuple[int, ...]):
    options = [(x,) if x == y else (x, y) for x, y in zip(p1, p2)]
    return itertools.product(*options)


def is_mixture_closed(model: ChoiceModel) -> tuple[bool, MixtureWitness | None]:
    """True iff every pointwise recombination of any two members stays inside."""
    members = model.picks_set()
    for c1, c2 in itertools.combinations(model.functions, 2):
        for mix in _pointwise_mixtures(c1.picks, c2.picks):
            if mix not in members:
                return False, MixtureWitness(c1, c2,
                                             ChoiceFunction(model.domain, mix))
    return True, None


def set_contingent_representation(model: ChoiceModel
                                  ) -> tuple[SetContingentUtility, bool]:
    """The 0/1 chosen-somewhere utility, and whether its argmax set is the model.

    The verification bool is equivalent to mixture closure (and so to the
    model being self-progressive under every family of primitive orderings).
    """
    dom = model.domain
    chosen: list[set[int]] = [set() for _ in dom.sets]
    for c in model.functions:
        for si, x in enumerate(c.picks):
            chosen[si].add(x)
    values = tuple(
        tuple(Fraction(1 if x in chosen[si] else 0) for x in s)
        for si, s in enumerate(dom.sets))
    utility = SetContingentUtility(dom, values)
    total = 1
    for si in range(len(dom.sets)):
        total *= len(chosen[si])
    # The argmax set is the product of per-set chosen alternatives; it equals
    # the model iff sizes match (the model is always contained in it).
    verified = total == len(model)
    return utility, verified


def argmax_model(utility: SetContingentUtility) -> ChoiceModel:
    """All choice functions maximizing the summed set-contingent utility."""
    dom = utility.domain
    options = []
    for si, s in enumerate(dom.sets):
        best = max(utility.values[si])
        options.append(tuple(x for x, v in zip(s, utility.values[si]) if v == best))
    total = 1
    for opt in options:
        total *= len(opt)
    if total > 1_000_000:
        raise GuardError("argmax enumeration exceeds the guard")
    return ChoiceModel.from_picks(dom, itertools.product(*options))


def is_single_crossing(prefs: Sequence[Sequence[str]],
                       global_order: Sequence[str]) -> bool:
    """Agreement with the reference order grows along the sequence.

    For every pair ranked x above y by the reference order, once some
    preference in the sequence ranks x above y, every later one must too.
    """
    order = [str(a) for a in global_order]
    ranks = []
    for pref in prefs:
        if sorted(pref) != sorted(order):
            raise DomainMismatchError(
                "every preference must rank the same alternatives")
        ranks.append({a: i for i, a in enumerate(pref)})
    for x, y in itertools.combinations(order, 2):  # x ranked above y
        agreed = False
        for r in ranks:
            if r[x] < r[y]:
                agreed = True
            elif agreed:
                return False
    return True
