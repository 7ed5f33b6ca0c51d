import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fatpoints import scheme
from fatpoints.errors import BudgetExceededError, InvalidInputError
from fatpoints.exactlin import FieldSpec
from fatpoints.macaulay import classify_sequence
from fatpoints.scheme import (FatPointScheme, ORDINARY_IN_SYMBOLIC, SYMBOLIC_IN_ORDINARY,
                              alpha, containment_test, hilbert, hilbert_function,
                              minimal_generators, random_generic_points, star_configuration,
                              waldschmidt_bracket)

QQ = FieldSpec.rational()
BIG = FieldSpec.prime(scheme.DEFAULT_PRIME)
COORD = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def derivative_oracle_dim(points, mults, t):
    """dim I(Z)_t in characteristic 0 from partial derivatives of order < m."""
    xs = sympy.symbols("x0 x1 x2")
    monos = [sympy.Mul(*[v**k for v, k in zip(xs, e)])
             for e in itertools.product(range(t + 1), repeat=3) if sum(e) == t]
    rows = []
    for p, m in zip(points, mults):
        for order in range(m):
            for e in itertools.product(range(order + 1), repeat=3):
                if sum(e) != order:
                    continue
                row = []
                for mono in monos:
                    d = mono
                    for v, k in zip(xs, e):
                        d = sympy.diff(d, v, k)
                    row.append(d.subs(dict(zip(xs, p))))
                rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(monos) - rank


def test_single_fat_point():
    Z = FatPointScheme.build(QQ, [(1, 0, 0)], [3])
    hf = hilbert_function(Z)
    assert hf.quotient_values(4) == [1, 3, 6, 6, 6]
    assert hf.eventual_value == Z.degree == 6


def test_coordinate_points():
    Z = FatPointScheme.build(QQ, COORD)
    assert hilbert_function(Z).quotient_values(3) == [1, 3, 3, 3]
    gens = minimal_generators(Z)
    assert sorted(str(g) for g in gens) == ["x0*x1", "x0*x2", "x1*x2"]


def test_scheme_validation():
    with pytest.raises(InvalidInputError):
        FatPointScheme.build(QQ, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(InvalidInputError):
        FatPointScheme.build(QQ, [(1, 0, 0)], [0])
    Z = FatPointScheme.build(QQ, [("1/2", 1, 0)], [2])
    assert FatPointScheme.from_json(Z.to_json()) == Z


@pytest.mark.parametrize("points,mults,t", [
    (COORD, [2, 1, 1], 2),
    (COORD + [(1, 1, 1)], [2, 2, 2, 2], 4),
    ([(1, 2, 3), (1, -1, 5), (0, 1, 1)], [3, 2, 1], 4),
    ([(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)], [1, 1, 2, 1], 3),
])
def test_conditions_match_derivative_oracle(points, mults, t):
    Z = FatPointScheme.build(QQ, points, mults)
    assert hilbert(Z, t) == derivative_oracle_dim(points, mults, t)


def test_rational_and_prime_agree():
    pts = [(1, 2, 3), (1, -1, 5), (1, 4, -2), (1, 0, 7)]
    for t in range(6):
        a = hilbert(FatPointScheme.build(QQ, pts, 2), t)
        b = hilbert(FatPointScheme.build(BIG, pts, 2), t)
        assert a == b


def test_generic_points_are_deterministic():
    assert random_generic_points(5, 2, BIG, seed=3) == random_generic_points(5, 2, BIG, seed=3)
    assert random_generic_points(5, 2, BIG, seed=3) != random_generic_points(5, 2, BIG, seed=4)


def test_star_configuration():
    lines, pts = star_configuration(5, BIG, seed=1)
    assert len(pts) == 10
    F = BIG
    for (i, j), p in zip(itertools.combinations(range(5), 2), pts):
        for k, L in enumerate(lines):
            on = sum(F.mul(a, b) for a, b in zip(L, p.coords)) % F.p == 0
            assert on == (k in (i, j))


@settings(max_examples=25)
@given(st.integers(1, 7), st.lists(st.integers(1, 3), min_size=7, max_size=7), st.integers(0, 99))
def test_hilbert_function_shape(r, mults, seed):
    Z = FatPointScheme.build(BIG, random_generic_points(r, 2, BIG, seed=seed), mults[:r])
    hf = hilbert_function(Z)
    h = hf.quotient_values(hf.t_stab + 2)
    assert hf.eventual_value == Z.degree
    assert all(a < b for a, b in zip(h[: hf.t_stab + 1], h[1: hf.t_stab + 1]))
    assert classify_sequence(h).kind == "differentiable-O"


def test_alpha_values():
    assert alpha(FatPointScheme.build(QQ, COORD)) == 2
    assert alpha(FatPointScheme.build(QQ, COORD, 2)) == 3
    with pytest.warns(UserWarning):
        assert alpha(FatPointScheme.empty(QQ)) == 0
    Z = FatPointScheme.build(BIG, random_generic_points(5, 2, BIG), 9)
    with pytest.raises(BudgetExceededError):
        alpha(Z, cap=3)


def test_waldschmidt_bracket_orders_bounds():
    pts = random_generic_points(5, 2, BIG, seed=2)
    br = waldschmidt_bracket(pts, 3)
    assert br.lower <= br.upper
    assert br.alphas == (2, 4, 6)  # a conic through 5 points, doubled
    assert br.upper == 2


def test_minimal_generators_generate():
    pts = random_generic_points(6, 2, BIG, seed=5)
    Z = FatPointScheme.build(BIG, pts)
    gens = minimal_generators(Z)
    # six general points: no conic, four cubics
    assert [g.degree for g in gens] == [3, 3, 3, 3]
    for g in gens:
        assert all(g.evaluate(p.coords) == 0 for p in pts)


def test_containment_both_directions():
    pts = [scheme.ProjectivePoint.of(QQ, p) for p in COORD]
    res = containment_test(pts, 2, 2, direction=SYMBOLIC_IN_ORDINARY)
    assert not res.holds and res.degree == 3 and str(res.witness) == "x0*x1*x2"
    res = containment_test(pts, 3, 2, direction=ORDINARY_IN_SYMBOLIC)
    assert not res.holds and res.degree == 4
    assert containment_test(pts, 2, 2).holds
    with pytest.raises(InvalidInputError):
        containment_test(pts, 2, 2, direction="sideways")
