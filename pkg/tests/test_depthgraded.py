from math import comb, gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.depthgraded import (
    ABApBp,
    CHECKS,
    S2_CORE,
    S2_POLY,
    XiGen,
    complex_homology,
    complex_spaces,
    depth2_to_poly,
    intersection_expected,
    lie_w,
    lie_w_expected,
    model2_basis,
    mu_map,
    poly_to_depth2,
    xi_basis,
    xi_coordinates,
)
from artifact import depthgraded as dg
from artifact.exactpoly import R4, span_dim
from artifact.freelie import ihara_bracket, lie_bracket, xi

A, B, Ap, Bp = R4.gens()
t = sympy.symbols("t")


def series_oracle(expr, n):
    poly = sympy.Poly(sympy.series(expr, t, 0, n + 1).removeO(), t)
    return [int(poly.coeff_monomial(t ** i)) for i in range(n + 1)]


def witt(weight: int, depth: int) -> int:
    def mu(n):
        return int(sympy.mobius(n))
    g = gcd(weight, depth)
    return sum(mu(d) * comb(weight // d, depth // d) for d in range(1, g + 1) if g % d == 0) // weight


@pytest.mark.parametrize("k, expr", [
    (1, t ** 3 / (1 - t ** 2)),
    (2, t ** 8 / ((1 - t ** 2) * (1 - t ** 6))),
    (3, t ** 11 * (1 + t ** 2 - t ** 4) / ((1 - t ** 2) * (1 - t ** 4) * (1 - t ** 6))),
])
def test_expected_series_match_sympy(k, expr):
    assert lie_w_expected(k, 21) == series_oracle(expr, 21)


def test_other_series_match_sympy():
    assert dg.test_map_expected(21) == series_oracle(t ** 8 * (t ** 3 + t ** 5) / ((1 - t ** 2) * (1 - t ** 6)), 21)
    assert intersection_expected(23) == series_oracle(t ** 17 / ((1 - t ** 2) * (1 - t ** 4) * (1 - t ** 6)), 23)


def test_xi_generators():
    g = XiGen(4)
    assert g.weight == 5 and g.depth == 1 and g.in_w
    assert not XiGen(3).in_w and not XiGen(0).in_w
    assert g.element == xi(4)


@pytest.mark.parametrize("k, w, dim", [(1, 3, 1), (1, 4, 0), (2, 8, 1), (2, 9, 0), (2, 12, 1), (2, 14, 2), (3, 11, 1), (3, 12, 0)])
def test_lie_w_dims(k, w, dim):
    assert lie_w(k, 14).dim(w) == dim


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lie_w_matches_series_to_15(k):
    assert lie_w(k, 15).dims() == lie_w_expected(k, 15)


def test_depth_four_is_flagged():
    assert lie_w(4, 12).identified is False
    assert lie_w(3, 12).identified is True


@pytest.mark.parametrize("w", range(3, 12))
@pytest.mark.parametrize("depth", [2, 3])
def test_xi_basis_has_witt_size(w, depth):
    assert len(xi_basis(w, depth)) == witt(w, depth)


def test_depth3_basis_split():
    labels = [lab[0] for lab, _ in xi_basis(9, 3)]
    total = 9 - 3
    assert labels.count("S1") == 1
    assert labels.count("S2") == (total - 1)
    assert labels.count("S3") == witt(9, 3) - 1 - (total - 1)


# ---------------------------------------------------------------------------
# depth 2 model


def test_xi2_xi4_lands_in_model():
    br = ihara_bracket(xi(2), xi(4))
    p = depth2_to_poly(br, 8)
    assert span_dim([p] + model2_basis(8)) == 1
    assert not p.is_zero()


def test_model_weight_8_and_9():
    assert model2_basis(8) == [ABApBp * S2_CORE]
    assert model2_basis(9) == []


def test_model_factorizations_agree():
    assert (A + 2 * Ap) * (2 * A + Ap) == 2 * A ** 2 + 5 * A * Ap + 2 * Ap ** 2


def test_dictionary_on_a_generator():
    f = lie_bracket(xi(1), xi(3))
    assert depth2_to_poly(f, 6) == ABApBp * (Ap ** 2 - A ** 2)


antisym = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-3, 3), max_size=4).map(
    lambda d: sum(((A ** k * Ap ** l - A ** l * Ap ** k) * c for (k, l), c in d.items()), R4.zero()))


@given(antisym)
@settings(max_examples=30, deadline=None)
def test_dictionary_round_trip(g):
    p = ABApBp * g
    if p.is_zero():
        return
    for w in p.weights():
        part = p.weight_part(w)
        assert depth2_to_poly(poly_to_depth2(part), w) == part


# ---------------------------------------------------------------------------
# μ and the test map


def test_mu_trivial_inputs():
    g = A - Ap
    assert mu_map(R4.zero(), g).is_zero()
    assert mu_map(A, g) == -A * (A * B * Ap * Bp ** 2 * g)


@pytest.mark.parametrize("i", [3, 5])
def test_test_map_matches_displayed_rows(i):
    g = S2_CORE * S2_POLY
    expected = i * A * B * Ap * Bp ** 2 * (Ap ** (i - 1) - (A + Ap) ** (i - 1)) * g
    assert dg.test_map(i, g) == expected
    assert dg.test_map(i, R4.zero()).is_zero()


@given(antisym, antisym)
@settings(max_examples=20, deadline=None)
def test_mu_is_linear_in_g(g, h):
    f = 3 * A ** 2
    assert mu_map(f, g + h) == mu_map(f, g) + mu_map(f, h)


def test_test_map_image_dims():
    rep = CHECKS["test-map-injectivity"](N=15)
    rows = {r["w"]: r["computed"] for r in rep.weights if r["expected"] is not None and r["d"] == 3}
    assert rows[11] == 1 and rows[13] == 2
    assert rep.ok


# ---------------------------------------------------------------------------
# depth 3 and the complex


def test_depth3_has_no_s1_component():
    for w in (11, 13, 15):
        cs = xi_coordinates(w, 3)
        for e in lie_w(3, 15).bases.get(w, []):
            assert all(lab[0] != "S1" for lab in cs.coordinates(e))


def test_complex_small_weights():
    table, rep = complex_homology(17)
    by_w = {r["w"]: r for r in table}
    assert rep.ok
    assert by_w[15]["lambda3"] == 1 and by_w[15]["homology"] == 0
    assert by_w[17]["homology"] == 1
    for w in range(1, 15):
        r = by_w[w]
        assert r["middle"] - r["lambda3"] - r["m1"] == 0


def test_complex_spaces_at_15():
    triples, middle, last = complex_spaces(15)
    assert triples == [(3, 5, 7)]
    assert len(middle) == 3 and len(last) == 2


def test_complex_rejects_small_bound():
    with pytest.raises(ValueError):
        complex_homology(12)


@pytest.mark.parametrize("check_id, kwargs", [
    ("liew-dims", {"N": 15, "K": 3}),
    ("depth2-explicit", {"N": 16}),
    ("depth3-sequence", {"N": 15}),
    ("complex-homology", {"N": 19}),
    ("test-map-injectivity", {"N": 17}),
])
def test_checks_pass(check_id, kwargs):
    rep = CHECKS[check_id](**kwargs)
    assert rep.ok, rep.witness


def test_depth3_sequence_rows_at_11():
    rep = CHECKS["depth3-sequence"](N=12)
    rows = [r for r in rep.weights if r["w"] == 11 and r["expected"] is not None and r["d"] == 3]
    assert [r["computed"] for r in rows] == [1, 1, 0]
    rows12 = [r["computed"] for r in rep.weights if r["w"] == 12 and r["d"] == 3]
    assert rows12 == [0, 0, 0]
