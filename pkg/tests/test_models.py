import itertools
import random

import pytest

from choicelattice import (
    ChoiceDomain,
    ChoiceError,
    ChoiceFunction,
    ChoiceModel,
    GuardError,
    PrimitiveOrderings,
    all_choice_functions,
    all_orderings,
    argmax_model,
    enumerate_rational,
    is_chain,
    is_lattice,
    is_mixture_closed,
    is_single_crossing,
    join,
    lattice_closure,
    meet,
    rationalize,
    satisfies_theta,
    set_contingent_representation,
    theta_model,
)

from conftest import ABC, RATIONAL3, THETA3, fn, model


def _maximizer(domain, order):
    rank = {a: i for i, a in enumerate(order)}
    return ChoiceFunction.from_symbols(
        domain, [min(domain.set_symbols(i), key=rank.__getitem__)
                 for i in range(len(domain.sets))])


class TestIsLattice:
    def test_example1_is_lattice(self, example1_model, ord3):
        ok, witness = is_lattice(example1_model, ord3)
        assert ok and witness is None

    def test_rational_model_is_not(self, dom3, ord3):
        rational = enumerate_rational(dom3)
        ok, witness = is_lattice(rational, ord3)
        assert not ok
        combined = (join if witness.kind == "join" else meet)(
            witness.left, witness.right, ord3)
        assert combined == witness.escapee
        assert witness.escapee not in rational
        # the documented escape: the join of bbab and cacc is baab
        assert join(fn(dom3, "bbab"), fn(dom3, "cacc"), ord3) == fn(dom3, "baab")
        assert fn(dom3, "baab") not in rational

    def test_singleton(self, dom3, ord3):
        assert is_lattice(model(dom3, "abac"), ord3)[0]


class TestClosure:
    def test_pair_closure(self, dom3, ord3):
        closed = lattice_closure(model(dom3, "bbab", "cacc"), ord3)
        assert set(closed.strings()) == {"bbab", "cacc", "baab", "cbcc"}

    def test_rational_closure_is_theta_set(self, dom3, ord3):
        closed = lattice_closure(enumerate_rational(dom3), ord3)
        assert set(closed.strings()) == THETA3

    def test_identity_on_lattice(self, example1_model, ord3):
        assert lattice_closure(example1_model, ord3) == example1_model

    def test_monotone_and_idempotent(self, dom3, ord3):
        rng = random.Random(11)
        universe = list(all_choice_functions(dom3).functions)
        for _ in range(25):
            small = rng.sample(universe, rng.randint(1, 4))
            big = small + rng.sample(universe, rng.randint(1, 3))
            close_small = lattice_closure(ChoiceModel.from_functions(small), ord3)
            close_big = lattice_closure(ChoiceModel.from_functions(big), ord3)
            assert close_small.picks_set() <= close_big.picks_set()
            assert lattice_closure(close_small, ord3) == close_small
            assert is_lattice(close_small, ord3)[0]


class TestChain:
    def test_examples(self, dom3, ord3):
        assert is_chain(model(dom3, "aaab", "abab", "abac"), ord3)
        assert not is_chain(model(dom3, "abab", "aaac"), ord3)
        assert is_chain(model(dom3, "bacb"), ord3)


class TestRationalize:
    def test_with_brute_force_oracle(self, dom3):
        c = fn(dom3, "aaab")
        witnesses = [order for order in all_orderings(ABC)
                     if _maximizer(dom3, order) == c]
        assert witnesses == [("a", "b", "c")]
        assert rationalize(c) == ("a", "b", "c")

    def test_cycle_is_refused(self, dom3):
        c = fn(dom3, "abab")  # picks a over b from X but b from {a,b}
        assert rationalize(c) is None
        assert all(_maximizer(dom3, order) != c for order in all_orderings(ABC))

    def test_disjoint_binary_domains_always_rational(self):
        domain = ChoiceDomain.from_symbols("abcd", [["a", "b"], ["c", "d"]])
        for picks in itertools.product(*domain.sets):
            order = rationalize(ChoiceFunction(domain, picks))
            assert order is not None
            rank = {a: i for i, a in enumerate(order)}
            for i, s in enumerate(domain.sets):
                chosen = domain.alternatives[picks[i]]
                assert all(rank[chosen] <= rank[domain.alternatives[x]] for x in s)


class TestEnumerateRational:
    def test_full_n3(self, dom3):
        assert set(enumerate_rational(dom3).strings()) == RATIONAL3

    def test_n2(self):
        domain = ChoiceDomain.full("ab")
        assert len(enumerate_rational(domain)) == 2

    def test_partial_domain(self):
        domain = ChoiceDomain.from_symbols("abc", [["a", "b"], ["b", "c"]])
        expected = {tuple(_maximizer(domain, order).picks)
                    for order in all_orderings(ABC)}
        assert len(expected) == 4
        assert enumerate_rational(domain).picks_set() == expected

    def test_guard(self):
        with pytest.raises(GuardError):
            enumerate_rational(ChoiceDomain.full("abcdefg"))


class TestTheta:
    def test_orange_node_passes(self, dom3):
        ok, violation = satisfies_theta(fn(dom3, "baac"), ABC)
        assert ok and violation is None

    def test_abcb_fails_with_witness(self, dom3):
        ok, violation = satisfies_theta(fn(dom3, "abcb"), ABC)
        assert not ok
        assert violation.axiom == "theta1"
        assert violation.set_symbols == ("a", "b", "c")
        assert violation.removed == "b"
        assert violation.chosen == "a"
        assert violation.chosen_after == "c"

    def test_every_rational_function_passes(self, dom3, dom4):
        for domain, symbols in ((dom3, ABC), (dom4, tuple("abcd"))):
            for order in all_orderings(symbols):
                c = _maximizer(domain, order)
                assert satisfies_theta(c, symbols)[0]

    def test_needs_full_domain(self):
        domain = ChoiceDomain.from_symbols("abc", [["a", "b"], ["b", "c"]])
        c = ChoiceFunction.from_symbols(domain, ["a", "b"])
        with pytest.raises(ChoiceError):
            satisfies_theta(c, ABC)

    def test_theta_model_n3(self, dom3):
        assert set(theta_model(dom3, ABC).strings()) == THETA3
        assert RATIONAL3 <= set(theta_model(dom3, ABC).strings())

    def test_theta_model_n2_vacuous(self):
        domain = ChoiceDomain.full("ab")
        assert len(theta_model(domain, "ab")) == 2

    def test_theta_model_guard(self):
        with pytest.raises(GuardError):
            theta_model(ChoiceDomain.full("abcde"), "abcde")


class TestMixtureClosure:
    def _mixtures(self, c1, c2):
        options = [(x,) if x == y else (x, y)
                   for x, y in zip(c1.picks, c2.picks)]
        return set(itertools.product(*options))

    def test_example1_closed_by_exhaustion(self, example1_model):
        members = example1_model.picks_set()
        for c1, c2 in itertools.combinations(example1_model.functions, 2):
            assert self._mixtures(c1, c2) <= members
        assert is_mixture_closed(example1_model)[0]

    def test_everything_is_closed(self, dom3):
        assert is_mixture_closed(all_choice_functions(dom3))[0]

    def test_rational_escapes(self, dom3):
        rational = enumerate_rational(dom3)
        ok, witness = is_mixture_closed(rational)
        assert not ok
        assert witness.escapee.picks in self._mixtures(witness.left, witness.right)
        assert witness.escapee not in rational
        # baab escapes the bbab/cacc pair specifically
        assert fn(dom3, "baab").picks in self._mixtures(
            fn(dom3, "bbab"), fn(dom3, "cacc"))


class TestSetContingent:
    def test_example1_verifies(self, example1_model):
        utility, ok = set_contingent_representation(example1_model)
        assert ok
        assert argmax_model(utility) == example1_model

    def test_rational_does_not(self, dom3):
        rational = enumerate_rational(dom3)
        utility, ok = set_contingent_representation(rational)
        assert not ok
        assert len(argmax_model(utility)) > len(rational)

    def test_matches_mixture_closure_on_samples(self, dom3):
        rng = random.Random(5)
        universe = list(all_choice_functions(dom3).functions)
        for _ in range(40):
            m = ChoiceModel.from_functions(
                rng.sample(universe, rng.randint(1, 5)))
            assert set_contingent_representation(m)[1] == is_mixture_closed(m)[0]


class TestProp3Triangle:
    def test_triangle_with_ordering_sampling(self, dom3):
        rng = random.Random(23)
        universe = list(all_choice_functions(dom3).functions)
        for _ in range(12):
            m = ChoiceModel.from_functions(
                rng.sample(universe, rng.randint(1, 4)))
            closed, witness = is_mixture_closed(m)
            assert set_contingent_representation(m)[1] == closed
            if closed:
                for _ in range(100):
                    rankings = [rng.sample(list(s), len(s)) for s in dom3.sets]
                    ords = PrimitiveOrderings(
                        dom3, tuple(tuple(r) for r in rankings))
                    assert is_lattice(m, ords)[0]
            else:
                # rank the escaping mixture's pick first in every set: the
                # mixture becomes the pair's join, so the pair refutes the
                # lattice property under that ordering
                rankings = []
                for si, s in enumerate(dom3.sets):
                    top = witness.escapee.picks[si]
                    rankings.append((top,) + tuple(x for x in s if x != top))
                ords = PrimitiveOrderings(dom3, tuple(rankings))
                assert not is_lattice(m, ords)[0]


class TestSingleCrossing:
    def test_examples(self):
        assert is_single_crossing(
            [("c", "b", "a"), ("b", "a", "c"), ("a", "b", "c")], ABC)
        assert is_single_crossing([("b", "a", "c")], ABC)
        assert not is_single_crossing(
            [("a", "b", "c"), ("b", "a", "c"), ("a", "b", "c")], ABC)

    def test_chain_correspondence(self, dom3, dom4):
        rng = random.Random(9)
        for domain, symbols in ((dom3, ABC), (dom4, tuple("abcd"))):
            ordering = PrimitiveOrderings.from_global(domain, symbols)
            orders = list(all_orderings(symbols))
            for _ in range(30):
                prefs = rng.sample(orders, rng.randint(2, 4))
                fns = {tuple(_maximizer(domain, p).picks): p for p in prefs}
                m = ChoiceModel.from_picks(domain, fns)
                chain = is_chain(m, ordering)
                # dominance-ascending sort: later functions pick better
                rank = ordering.rank
                def score(c):
                    return tuple(-rank[s][x] for s, x in enumerate(c.picks))
                seq = [fns[c.picks] for c in
                       sorted(m.functions, key=score)]
                if chain:
                    assert is_single_crossing(seq, symbols)
                else:
                    assert not any(
                        is_single_crossing(perm, symbols)
                        for perm in itertools.permutations(seq))
