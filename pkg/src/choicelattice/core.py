"""Domain types for finite choice spaces.

Alternatives are interned symbols; every algorithm works on canonical
integer indices, and symbols only appear at the I/O boundary.  Choice sets
are stored in a canonical order (larger sets first, lexicographic within a
size class) so that the compact per-set "function string" notation is
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence


class ChoiceError(Exception):
    """Base error for invalid choice-space data."""


class DomainMismatchError(ChoiceError):
    """Raised when objects built over different domains are combined."""


class GuardError(ChoiceError):
    """Raised when an enumeration guard or budget is exceeded."""


def _as_tuple_of_symbols(symbols: Iterable[str]) -> tuple[str, ...]:
    out = tuple(str(s) for s in symbols)
    if len(set(out)) != len(out):
        raise ChoiceError(f"duplicate symbols in {out!r}")
    return out


@dataclass(frozen=True)
class ChoiceDomain:
    """An alternative set plus a collection of choice sets (each of size >= 2).

    ``sets`` holds tuples of canonical indices, members ascending, and the
    sequence itself is sorted by (descending size, lexicographic members).
    """

    alternatives: tuple[str, ...]
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        alts = _as_tuple_of_symbols(self.alternatives)
        object.__setattr__(self, "alternatives", alts)
        n = len(alts)
        if n == 0:
            raise ChoiceError("domain needs at least one alternative")
        canon = []
        for s in self.sets:
            members = tuple(sorted(set(int(x) for x in s)))
            if len(members) != len(tuple(s)):
                raise ChoiceError(f"choice set {s!r} has repeated members")
            if len(members) < 2:
                raise ChoiceError(f"choice set {s!r} has fewer than two members")
            if members[0] < 0 or members[-1] >= n:
                raise ChoiceError(f"choice set {s!r} mentions an unknown alternative")
            canon.append(members)
        canon.sort(key=lambda m: (-len(m), m))
        if len(set(canon)) != len(canon):
            raise ChoiceError("duplicate choice sets")
        if not canon:
            raise ChoiceError("domain needs at least one choice set")
        object.__setattr__(self, "sets", tuple(canon))

    @classmethod
    def from_symbols(cls, alternatives: Iterable[str],
                     sets: Iterable[Iterable[str]]) -> "ChoiceDomain":
        alts = _as_tuple_of_symbols(alternatives)
        index = {a: i for i, a in enumerate(alts)}
        try:
            idx_sets = [tuple(index[str(x)] for x in s) for s in sets]
        except KeyError as exc:
            raise DomainMismatchError(f"unknown alternative {exc.args[0]!r}") from None
        return cls(alts, tuple(idx_sets))

    @classmethod
    def full(cls, alternatives: Iterable[str]) -> "ChoiceDomain":
        """The domain containing every subset of size >= 2."""
        alts = _as_tuple_of_symbols(alternatives)
        n = len(alts)
        idx_sets = [s for k in range(2, n + 1)
                    for s in itertools.combinations(range(n), k)]
        return cls(alts, tuple(idx_sets))

    @property
    def n(self) -> int:
        return len(self.alternatives)

    @cached_property
    def index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alternatives)}

    @cached_property
    def set_position(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.sets)}

    @cached_property
    def removal_position(self) -> tuple[dict[int, int], ...]:
        """Per set, maps a member x to the position of S \\ {x}, where present."""
        table = []
        for s in self.sets:
            row = {}
            if len(s) > 2:
                for x in s:
                    sub = tuple(e for e in s if e != x)
                    pos = self.set_position.get(sub)
                    if pos is not None:
                        row[x] = pos
            table.append(row)
        return tuple(table)

    @cached_property
    def is_full(self) -> bool:
        return len(self.sets) == 2 ** self.n - self.n - 1

    def set_symbols(self, position: int) -> tuple[str, ...]:
        return tuple(self.alternatives[i] for i in self.sets[position])

    def require_full(self, what: str) -> None:
        if not self.is_full:
            raise ChoiceError(f"{what} requires a full domain "
                              f"(every choice set of size >= 2)")


def restrict_ordering(global_order: Sequence[str],
                      subset: Iterable[str]) -> tuple[str, ...]:
    """Filter a strict total order down to a choice set, preserving rank."""
    members = set(subset)
    missing = members.difference(global_order)
    if missing:
        raise DomainMismatchError(
            f"alternatives {sorted(missing)} missing from the ordering")
    return tuple(x for x in global_order if x in members)


@dataclass(frozen=True)
class PrimitiveOrderings:
    """A strict total order on each choice set, best to worst.

    Per-set orders are first class: they need not come from a single global
    ordering.  When ``global_order`` is present each per-set ranking must be
    its restriction.
    """

    domain: ChoiceDomain = field(hash=False)
    per_set: tuple[tuple[int, ...], ...] = ()
    global_order: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        dom = self.domain
        if len(self.per_set) != len(dom.sets):
            raise ChoiceError("one ranking per choice set is required")
        for s, ranking in zip(dom.sets, self.per_set):
            if tuple(sorted(ranking)) != s:
                raise ChoiceError(
                    f"ranking {ranking!r} is not a permutation of set {s!r}")
        if self.global_order is not None:
            if tuple(sorted(self.global_order)) != tuple(range(dom.n)):
                raise ChoiceError("global order must rank every alternative once")
            for s, ranking in zip(dom.sets, self.per_set):
                expect = tuple(x for x in self.global_order if x in set(s))
                if ranking != expect:
                    raise ChoiceError(
                        f"per-set ranking {ranking!r} is not the restriction "
                        f"of the global order to {s!r}")

    @classmethod
    def from_global(cls, domain: ChoiceDomain,
                    order: Sequence[str]) -> "PrimitiveOrderings":
        idx = domain.index
        try:
            g = tuple(idx[str(a)] for a in order)
        except KeyError as exc:
            raise DomainMismatchError(f"unknown alternative {exc.args[0]!r}") from None
        if tuple(sorted(g)) != tuple(range(domain.n)):
            raise ChoiceError("global order must rank every alternative exactly once")
        per_set = tuple(tuple(x for x in g if x in set(s)) for s in domain.sets)
        return cls(domain, per_set, g)

    @classmethod
    def from_per_set(cls, domain: ChoiceDomain,
                     rankings: Iterable[Sequence[str]]) -> "PrimitiveOrderings":
        idx = domain.index
        per_set = []
        for ranking in rankings:
            try:
                per_set.append(tuple(idx[str(a)] for a in ranking))
            except KeyError as exc:
                raise DomainMismatchError(
                    f"unknown alternative {exc.args[0]!r}") from None
        return cls(domain, tuple(per_set), None)

    @cached_property
    def rank(self) -> tuple[tuple[int, ...], ...]:
        """rank[s][x] = position of x in set s's ranking (0 is best).

        Indexed by alternative for speed; slots for non-members hold n.
        """
        n = self.domain.n
        table = []
        for ranking in self.per_set:
            row = [n] * n
            for pos, x in enumerate(ranking):
                row[x] = pos
            table.append(tuple(row))
        return tuple(table)

    @cached_property
    def prefer(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """prefer[s][x][y] = the better of members x, y under set s's ranking."""
        n = self.domain.n
        table = []
        for rank_row in self.rank:
            row = tuple(tuple(x if rank_row[x] < rank_row[y] else y
                              for y in range(n)) for x in range(n))
            table.append(row)
        return tuple(table)

    @cached_property
    def global_rank(self) -> tuple[int, ...]:
        if self.global_order is None:
            raise ChoiceError("this operation needs a single global ordering")
        row = [0] * self.domain.n
        for pos, x in enumerate(self.global_order):
            row[x] = pos
        return tuple(row)

    def global_symbols(self) -> tuple[str, ...]:
        if self.global_order is None:
            raise ChoiceError("this operation needs a single global ordering")
        return tuple(self.domain.alternatives[i] for i in self.global_order)


@dataclass(frozen=True)
class ChoiceFunction:
    """A selection of one member from every choice set of the domain."""

    domain: ChoiceDomain = field(hash=False)
    picks: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        sets = self.domain.sets
        if len(self.picks) != len(sets):
            raise ChoiceError("a choice function must pick from every set")
        for s, x in zip(sets, self.picks):
            if x not in s:
                raise ChoiceError(
                    f"pick {x!r} is not a member of choice set {s!r}")

    @classmethod
    def from_symbols(cls, domain: ChoiceDomain,
                     picks: Sequence[str]) -> "ChoiceFunction":
        idx = domain.index
        try:
            return cls(domain, tuple(idx[str(p)] for p in picks))
        except KeyError as exc:
            raise DomainMismatchError(f"unknown alternative {exc.args[0]!r}") from None

    @classmethod
    def from_string(cls, domain: ChoiceDomain, text: str) -> "ChoiceFunction":
        """Parse the compact one-character-per-set form, e.g. ``aaab``."""
        if any(len(a) != 1 for a in domain.alternatives):
            raise ChoiceError("string form needs single-character symbols")
        return cls.from_symbols(domain, tuple(text))

    def to_string(self) -> str:
        if any(len(a) != 1 for a in self.domain.alternatives):
            raise ChoiceError("string form needs single-character symbols")
        return "".join(self.domain.alternatives[x] for x in self.picks)

    def symbols(self) -> tuple[str, ...]:
        return tuple(self.domain.alternatives[x] for x in self.picks)

    def pick(self, members: Iterable[str]) -> str:
        """The chosen symbol at the given choice set."""
        idx = self.domain.index
        key = tuple(sorted(idx[str(m)] for m in members))
        pos = self.domain.set_position.get(key)
        if pos is None:
            raise DomainMismatchError(f"{tuple(members)!r} is not a domain set")
        return self.domain.alternatives[self.picks[pos]]


class Comparison(Enum):
    """Outcome of comparing two choice functions under primitive orderings."""

    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _same_domain(*objs) -> ChoiceDomain:
    dom = objs[0].domain
    for o in objs[1:]:
        if o.domain != dom:
            raise DomainMismatchError("objects live on different domains")
    return dom


def compare_picks(p1: tuple[int, ...], p2: tuple[int, ...],
                  rank: Sequence[Sequence[int]]) -> Comparison:
    """Index-level comparison; ``rank`` is PrimitiveOrderings.rank."""
    ge = le = True
    for s, (x, y) in enumerate(zip(p1, p2)):
        if x == y:
            continue
        if rank[s][x] < rank[s][y]:
            le = False
        else:
            ge = False
        if not (ge or le):
            return Comparison.INCOMPARABLE
    if ge and le:
        return Comparison.EQUAL
    return Comparison.DOMINATES if ge else Comparison.DOMINATED_BY


def compare(c1: ChoiceFunction, c2: ChoiceFunction,
            ordering: PrimitiveOrderings) -> Comparison:
    """Dominates iff c1 picks a weakly better alternative everywhere,
    strictly somewhere."""
    _same_domain(c1, c2, ordering)
    return compare_picks(c1.picks, c2.picks, ordering.rank)


def join_picks(p1, p2, rank) -> tuple[int, ...]:
    return tuple(x if rank[s][x] < rank[s][y] else y
                 for s, (x, y) in enumerate(zip(p1, p2)))


def meet_picks(p1, p2, rank) -> tuple[int, ...]:
    return tuple(x if rank[s][x] > rank[s][y] else y
                 for s, (x, y) in enumerate(zip(p1, p2)))


def join(c1: ChoiceFunction, c2: ChoiceFunction,
         ordering: PrimitiveOrderings) -> ChoiceFunction:
    """Pointwise best of the two picks."""
    dom = _same_domain(c1, c2, ordering)
    return ChoiceFunction(dom, join_picks(c1.picks, c2.picks, ordering.rank))


def meet(c1: ChoiceFunction, c2: ChoiceFunction,
         ordering: PrimitiveOrderings) -> ChoiceFunction:
    """Pointwise worst of the two picks."""
    dom = _same_domain(c1, c2, ordering)
    return ChoiceFunction(dom, meet_picks(c1.picks, c2.picks, ordering.rank))
