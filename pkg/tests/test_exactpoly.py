from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.exactpoly import (
    GradedSubspace,
    IndependentBasis,
    KeyedSpan,
    PolyRing,
    R4,
    SparsePoly,
    TruncSeries2,
    echelon,
    nullspace_rational,
    rational_series,
    solve_combination,
    span_dim,
    two_var_series,
)

A, B, Ap, Bp = R4.gens()
SYMS = sympy.symbols("A B Ap Bp")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exponents = st.tuples(*[st.integers(0, 3)] * 4)
polys = st.dictionaries(exponents, small_rationals, max_size=6).map(lambda d: R4.from_terms(d))


def to_sympy(p: SparsePoly):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(
        s ** k for s, k in zip(SYMS, e)) for e, c in p.terms()))


# ---------------------------------------------------------------------------
# arithmetic against sympy


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_product_matches_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(polys, polys, polys)
@settings(max_examples=40, deadline=None)
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == R4.zero()


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_exact_divide_recovers_factor(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_divide(q) == p


def test_exact_divide_rejects_non_multiple():
    assert (A * B + 1).exact_divide(A) is None


def test_subs_requires_every_present_variable():
    with pytest.raises(KeyError):
        (A * B).subs({"A": Ap})


def test_subs_and_specialize():
    p = A ** 2 * B + Bp
    assert p.subs({"A": A + Ap, "B": B, "Bp": Bp}) == (A + Ap) ** 2 * B + Bp
    assert p.specialize({"Bp": 0}) == A ** 2 * B
    assert p.specialize({"A": 2}) == 4 * B + Bp


@given(polys)
@settings(max_examples=30, deadline=None)
def test_json_round_trip(p):
    assert SparsePoly.from_json(p.to_json(), R4) == p


def test_gradings_of_r4():
    p = A ** 2 * B + Ap * Bp ** 3
    assert p.weights() == {3, 4}
    assert p.depths() == {1, 3}
    assert p.weight_part(3) == A ** 2 * B
    assert p.depth_part(3) == Ap * Bp ** 3


def test_monomial_enumeration_counts():
    # C(w+3, 3) monomials of degree w in four variables
    assert [len(R4.monomials(w)) for w in range(6)] == [1, 4, 10, 20, 35, 56]
    assert len(R4.monomials(4, 2)) == 3 * 3


def test_weighted_ring():
    X = PolyRing(("x2", "x3"), weights=(2, 3))
    assert sorted(X.monomials(6)) == [(0, 2), (3, 0)]


# ---------------------------------------------------------------------------
# series


@pytest.mark.parametrize("num, den, expected", [
    ({0: 1}, [(1, 1)], [1, 1, 1, 1, 1]),
    ({0: 1, 5: 1}, [(2, 1), (3, 1), (4, 1), (6, 1)], [1, 0, 1, 1, 2, 2, 4]),
    ({8: 1}, [(2, 1), (6, 1)], [0] * 8 + [1, 0, 1, 0, 1, 0, 2]),
    ({12: 1}, [(4, 1), (6, 1)], [0] * 12 + [1, 0, 0, 0, 1, 0, 1]),
])
def test_rational_series_frozen(num, den, expected):
    assert rational_series(num, den, len(expected) - 1) == expected


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
@settings(max_examples=30, deadline=None)
def test_rational_series_matches_sympy(degs):
    t = sympy.symbols("t")
    expr = 1 / sympy.prod(1 - t ** k for k in degs)
    ser = sympy.Poly(sympy.series(expr, t, 0, 13).removeO(), t)
    expected = [ser.coeff_monomial(t ** i) for i in range(13)]
    assert rational_series({0: 1}, [(k, 1) for k in degs], 12) == expected


def test_two_var_series_frozen():
    # 1/((1 - t^2)(1 - u t^3)): coefficient of t^i u^j is 1 iff i - 3j is even and >= 0
    got = two_var_series({(0, 0): 1}, [(2, 0), (3, 1)], 8, 2)
    expected = {(i, j): 1 for i in range(9) for j in range(3) if i >= 3 * j and (i - 3 * j) % 2 == 0}
    assert got == expected


def test_series_inverse():
    X = PolyRing(("x",))
    x = X.gen("x")
    s = TruncSeries2(X, 6, {(0, 0): 1, (1, 0): -x})
    inv = s.invert()
    for i in range(7):
        assert inv.coefficient(i) == x ** i
    assert (s * inv) == TruncSeries2(X, 6, {(0, 0): 1})


def test_series_truncates_by_total_degree():
    X = PolyRing(("x",))
    s = TruncSeries2(X, 3, {(2, 2): 1, (1, 1): 5})
    assert s.coefficient(2, 2).is_zero()
    assert s.coefficient(1, 1) == X.const(5)


# ---------------------------------------------------------------------------
# linear algebra


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_echelon_rank_matches_sympy(rows):
    assert echelon(rows, 4).rank == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel(rows):
    ns = nullspace_rational(rows, 5)
    assert len(ns) == 5 - sympy.Matrix(rows).rank()
    for v in ns:
        assert all(sum(Fraction(r[j]) * v[j] for j in range(5)) == 0 for r in rows)


def test_solve_combination():
    vecs = [[1, 0, 1], [0, 1, 1]]
    assert solve_combination(vecs, [2, 3, 5]) == [2, 3]
    assert solve_combination(vecs, [1, 1, 0]) is None


def test_independent_basis_coordinates():
    basis = IndependentBasis([{"a": 1, "b": 1}, {"b": 1, "c": Fraction(1, 2)}])
    assert basis.coordinates({"a": 2, "b": 5, "c": Fraction(3, 2)}) == [2, 3]
    assert basis.coordinates({"a": 1}) is None
    assert basis.coordinates({"z": 1}) is None
    with pytest.raises(ArithmeticError):
        IndependentBasis([{"a": 1}, {"a": 2}])


def test_keyed_span():
    span = KeyedSpan([{"x": 1, "y": 2}, {"x": 2, "y": 4}, {"z": 1}])
    assert span.dim == 2
    assert span.contains({"x": 3, "y": 6, "z": -1})
    assert not span.contains({"x": 1})


def test_span_dim_and_graded_subspace():
    polys = [A * B, A * B + Ap ** 2, Ap ** 2, A ** 3]
    assert span_dim(polys) == 3
    X = GradedSubspace.span(R4, polys)
    assert X.weight_dim(2) == 2 and X.weight_dim(3) == 1
    assert X.contains(2 * A * B - Ap ** 2)
    assert not X.contains(Bp ** 2)
    Y = GradedSubspace.span(R4, [Ap ** 2, Bp ** 2])
    assert X.intersect(Y).weight_dim(2) == 1
    assert X.sum(Y).weight_dim(2) == 3


@given(st.lists(polys, min_size=1, max_size=4), polys)
@settings(max_examples=40, deadline=None)
def test_reduce_is_canonical_mod_span(gens, p):
    from artifact.exactpoly import _Piece
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    piece = _Piece(gens)
    shifted = p + sum((g * (k + 1) for k, g in enumerate(gens)), R4.zero())
    assert piece.reduce(p) == piece.reduce(shifted)
    assert piece.reduce(gens[0]).is_zero()
