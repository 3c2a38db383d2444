import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from choicelattice import (
    ChoiceDomain,
    ChoiceError,
    ChoiceFunction,
    Comparison,
    DomainMismatchError,
    PrimitiveOrderings,
    compare,
    join,
    meet,
    restrict_ordering,
)
from choicelattice.core import compare_picks, join_picks, meet_picks

from conftest import ABC, fn


def test_domain_canonical_set_order(dom3):
    assert [dom3.set_symbols(i) for i in range(4)] == [
        ("a", "b", "c"), ("a", "b"), ("a", "c"), ("b", "c")]
    assert dom3.is_full


def test_domain_validation():
    with pytest.raises(ChoiceError):
        ChoiceDomain.from_symbols(["a", "b"], [["a"]])  # singleton set
    with pytest.raises(ChoiceError):
        ChoiceDomain.from_symbols(["a", "a"], [["a", "a"]])  # dup symbol
    with pytest.raises(DomainMismatchError):
        ChoiceDomain.from_symbols(["a", "b"], [["a", "z"]])
    with pytest.raises(ChoiceError):
        ChoiceDomain.from_symbols(["a", "b", "c"],
                                  [["a", "b"], ["b", "a"]])  # dup set


def test_restrict_ordering():
    assert restrict_ordering(("a", "b", "c"), {"a", "c"}) == ("a", "c")
    assert restrict_ordering(("a", "b", "c"), {"b", "c"}) == ("b", "c")
    assert restrict_ordering(("a", "b", "c"), {"a", "b", "c"}) == ("a", "b", "c")
    with pytest.raises(DomainMismatchError):
        restrict_ordering(("a", "b"), {"a", "z"})


def test_per_set_orders_are_restrictions(dom3, ord3):
    assert ord3.per_set == ((0, 1, 2), (0, 1), (0, 2), (1, 2))
    # a ranking that is not the restriction of the declared global order
    with pytest.raises(ChoiceError):
        PrimitiveOrderings(dom3, ((0, 1, 2), (1, 0), (0, 2), (1, 2)),
                           (0, 1, 2))


def test_set_dependent_orderings_supported(dom3):
    ords = PrimitiveOrderings.from_per_set(
        dom3, [("a", "b", "c"), ("b", "a"), ("c", "a"), ("b", "c")])
    assert ords.global_order is None
    left, right = fn(dom3, "abab"), fn(dom3, "aaac")
    # incomparable under the global a>b>c, comparable under these per-set orders
    assert join(left, right, ords) == left
    assert meet(left, right, ords) == right
    assert compare(left, right, ords) is Comparison.DOMINATES
    with pytest.raises(ChoiceError):
        ords.global_symbols()


def test_choice_function_validation(dom3):
    with pytest.raises(ChoiceError):
        ChoiceFunction(dom3, (0, 0, 0))  # one pick missing
    with pytest.raises(ChoiceError):
        ChoiceFunction(dom3, (0, 2, 0, 1))  # c is not in {a,b}
    c = fn(dom3, "aaab")
    assert c.symbols() == ("a", "a", "a", "b")
    assert c.pick(["b", "c"]) == "b"


def test_compare_examples(dom3, ord3):
    assert compare(fn(dom3, "aaab"), fn(dom3, "abab"), ord3) is Comparison.DOMINATES
    assert compare(fn(dom3, "abab"), fn(dom3, "aaac"), ord3) is Comparison.INCOMPARABLE
    assert compare(fn(dom3, "aaab"), fn(dom3, "aaab"), ord3) is Comparison.EQUAL


def test_compare_antisymmetric(dom3, ord3):
    functions = [ChoiceFunction(dom3, p)
                 for p in itertools.product(*dom3.sets)]
    flipped = {Comparison.DOMINATES: Comparison.DOMINATED_BY,
               Comparison.DOMINATED_BY: Comparison.DOMINATES,
               Comparison.EQUAL: Comparison.EQUAL,
               Comparison.INCOMPARABLE: Comparison.INCOMPARABLE}
    for c1, c2 in itertools.combinations(functions, 2):
        assert compare(c2, c1, ord3) is flipped[compare(c1, c2, ord3)]


def test_join_meet_examples(dom3, ord3):
    assert join(fn(dom3, "bbab"), fn(dom3, "cacc"), ord3).to_string() == "baab"
    assert meet(fn(dom3, "bbab"), fn(dom3, "cacc"), ord3).to_string() == "cbcc"
    c = fn(dom3, "abac")
    assert join(c, c, ord3) == c


def test_join_meet_bound_inputs(dom3, ord3):
    functions = [ChoiceFunction(dom3, p)
                 for p in itertools.product(*dom3.sets)]
    for c1, c2 in itertools.combinations(functions, 2):
        up = join(c1, c2, ord3)
        dn = meet(c1, c2, ord3)
        for c in (c1, c2):
            assert compare(up, c, ord3) in (Comparison.DOMINATES, Comparison.EQUAL)
            assert compare(dn, c, ord3) in (Comparison.DOMINATED_BY, Comparison.EQUAL)


def test_lattice_laws_exhaustive_n3(dom3, ord3):
    rank = ord3.rank
    picks = list(itertools.product(*dom3.sets))
    for p, q in itertools.combinations(picks, 2):
        assert join_picks(p, q, rank) == join_picks(q, p, rank)
        assert meet_picks(p, q, rank) == meet_picks(q, p, rank)
        # absorption
        assert join_picks(p, meet_picks(p, q, rank), rank) == p
        assert meet_picks(p, join_picks(p, q, rank), rank) == p
    rng = random.Random(3)
    for _ in range(4000):
        p, q, r = (rng.choice(picks) for _ in range(3))
        assert (join_picks(join_picks(p, q, rank), r, rank)
                == join_picks(p, join_picks(q, r, rank), rank))
        assert (meet_picks(meet_picks(p, q, rank), r, rank)
                == meet_picks(p, meet_picks(q, r, rank), rank))


@st.composite
def _domain_and_functions(draw):
    n = draw(st.integers(min_value=4, max_value=5))
    symbols = [chr(ord("a") + i) for i in range(n)]
    domain = ChoiceDomain.full(symbols)
    order = draw(st.permutations(symbols))
    ordering = PrimitiveOrderings.from_global(domain, order)
    picks = st.tuples(*[st.sampled_from(s) for s in domain.sets])
    return ordering, draw(picks), draw(picks), draw(picks)


@settings(max_examples=120, deadline=None)
@given(_domain_and_functions())
def test_lattice_laws_randomized_n4_n5(data):
    ordering, p, q, r = data
    rank = ordering.rank
    assert join_picks(p, q, rank) == join_picks(q, p, rank)
    assert join_picks(p, p, rank) == p
    assert meet_picks(p, meet_picks(p, q, rank), rank) == meet_picks(p, q, rank)
    assert join_picks(p, meet_picks(p, q, rank), rank) == p
    assert (join_picks(join_picks(p, q, rank), r, rank)
            == join_picks(p, join_picks(q, r, rank), rank))
    assert (meet_picks(meet_picks(p, q, rank), r, rank)
            == meet_picks(p, meet_picks(q, r, rank), rank))


def test_strict_comparison_transitive_n3(dom3, ord3):
    rank = ord3.rank
    picks = list(itertools.product(*dom3.sets))
    better = {p: {q for q in picks
                  if compare_picks(p, q, rank) is Comparison.DOMINATES}
              for p in picks}
    for p in picks:
        for q in better[p]:
            assert better[q] <= better[p]


def test_domain_mismatch_raises(dom3, dom4, ord3):
    with pytest.raises(DomainMismatchError):
        compare(fn(dom3, "aaab"),
                ChoiceFunction(dom4, tuple(s[0] for s in dom4.sets)), ord3)
