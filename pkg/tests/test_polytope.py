import itertools
from fractions import Fraction

import pytest

from choicelattice import (
    ChoiceDomain,
    ConstraintSystem,
    GuardError,
    all_choice_functions,
    all_orderings,
    build_constraints,
    cumulative,
    deterministic,
    enumerate_vertices,
    function_vertex,
    heller_check,
    theta_model,
    vertex_function,
)
from choicelattice.polytope import _int_det, sample_subdeterminants

from conftest import ABC

F = Fraction


def _strict_rtheta_ok(c, domain, symbols):
    """Literal reading of the cumulative axioms: both over the
    strictly-above cumulative.  This is exactly what rows (1)/(2) encode."""
    grank = {a: i for i, a in enumerate(symbols)}
    cum = cumulative(deterministic(c), symbols)
    for si, s in enumerate(domain.sets):
        for x, sub in domain.removal_position[si].items():
            for y in s:
                if y == x:
                    continue
                if grank[domain.alternatives[y]] < grank[domain.alternatives[x]]:
                    if cum.value(sub, y) < cum.value(si, y):
                        return False
                elif cum.value(si, y) < cum.value(sub, y):
                    return False
    return True


class TestBuildConstraints:
    def test_n2_literal_instantiation(self):
        domain = ChoiceDomain.full("ab")
        system = build_constraints(domain, "ab")
        assert len(system.columns) == 2
        assert len(system.rows) == 2
        assert [t.split()[0] for t in system.tags] == ["3", "4"]
        # q(a) <= q(b) and q(b) <= 1, columns ranked best first
        assert system.columns == ((0, 0), (0, 1))
        assert system.rows == ((1, -1), (0, 1))
        assert system.rhs == (0, 1)

    def test_n3_column_count(self, dom3):
        system = build_constraints(dom3, ABC)
        assert len(system.columns) == 9
        by_tag = {}
        for t in system.tags:
            by_tag[t.split()[0]] = by_tag.get(t.split()[0], 0) + 1
        assert by_tag == {"1": 3, "2": 3, "3": 5, "4": 4}

    def test_row_shapes(self, dom3, dom4):
        for domain, symbols in ((dom3, ABC), (dom4, tuple("abcd"))):
            system = build_constraints(domain, symbols)
            for row, tag in zip(system.rows, system.tags):
                nonzero = [v for v in row if v != 0]
                if tag.startswith("4"):
                    assert nonzero == [1]
                else:
                    assert sorted(nonzero) == [-1, 1]

    def test_requires_full_domain(self):
        domain = ChoiceDomain.from_symbols("abc", [["a", "b"], ["b", "c"]])
        with pytest.raises(Exception):
            build_constraints(domain, ABC)

    def test_csv_export(self, dom3):
        system = build_constraints(dom3, ABC)
        matrix_lines = system.matrix_csv().strip().split("\n")
        assert len(matrix_lines) == 1 + len(system.rows)
        assert matrix_lines[0].startswith("a|abc,b|abc,c|abc")
        tag_lines = system.tags_csv().strip().split("\n")
        assert tag_lines[0] == "tag,rhs"
        assert len(tag_lines) == 1 + len(system.rows)


class TestHeller:
    def test_choice_systems_pass(self, dom3, dom4):
        for domain, symbols in ((dom3, ABC), (dom4, tuple("abcd"))):
            for order in all_orderings(symbols):
                assert heller_check(build_constraints(domain, order))

    def test_same_sign_column_fails(self, dom3):
        system = build_constraints(dom3, ABC)
        row = [0] * len(system.columns)
        row[0] = row[1] = 1
        bad = ConstraintSystem(dom3, system.global_order, system.columns,
                               system.rows + (tuple(row),),
                               system.rhs + (1,), system.tags + ("x",))
        assert not heller_check(bad)

    def test_sampled_subdeterminants_unimodular(self, dom3):
        system = build_constraints(dom3, ABC)
        assert heller_check(system)
        dets = sample_subdeterminants(system, samples=500, max_order=8, seed=4)
        assert set(dets) <= {-1, 0, 1}

    def test_int_det(self):
        assert _int_det([[2, 0], [0, 3]]) == 6
        assert _int_det([[0, 1], [1, 0]]) == -1
        assert _int_det([[1, 2], [2, 4]]) == 0


class TestVertices:
    def test_n2_vertices(self):
        domain = ChoiceDomain.full("ab")
        system = build_constraints(domain, "ab")
        points = enumerate_vertices(system)
        assert points == ((F(0), F(0)), (F(0), F(1)), (F(1), F(1)))

    def test_n3_all_zero_one(self, dom3):
        system = build_constraints(dom3, ABC)
        points = enumerate_vertices(system)
        assert all(v in (F(0), F(1)) for p in points for v in p)

    def test_n3_vertices_equal_feasible_binary_points(self, dom3):
        # independent route: scan every 0/1 point for feasibility; since any
        # feasible 0/1 point of the box is automatically a vertex, equality
        # here is exactly the integrality statement
        system = build_constraints(dom3, ABC)
        points = set(enumerate_vertices(system))
        width = len(system.columns)
        feasible = set()
        for bits in itertools.product((F(0), F(1)), repeat=width):
            if all(sum(c * v for c, v in zip(row, bits)) <= b
                   for row, b in zip(system.rows, system.rhs)):
                feasible.add(bits)
        assert points == feasible

    def test_theta_crcfs_are_vertices(self, dom3):
        system = build_constraints(dom3, ABC)
        points = set(enumerate_vertices(system))
        for c in theta_model(dom3, ABC).functions:
            vec = function_vertex(system, c)
            assert vec in points
            assert vertex_function(system, vec) == c

    def test_guard(self, dom4):
        with pytest.raises(GuardError):
            enumerate_vertices(build_constraints(dom4, tuple("abcd")))

    def test_feasibility_matches_literal_axioms(self, dom3):
        # row semantics: a deterministic cumulative is feasible exactly when
        # the literal (strictly-above) reading of both axioms holds
        system = build_constraints(dom3, ABC)
        for c in all_choice_functions(dom3).functions:
            vec = function_vertex(system, c)
            feasible = all(sum(cf * v for cf, v in zip(row, vec)) <= b
                           for row, b in zip(system.rows, system.rhs))
            assert feasible == _strict_rtheta_ok(c, dom3, ABC)
