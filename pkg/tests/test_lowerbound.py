from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.exactpoly import R4, rational_series
from artifact.invariants import sigma_tilde
from artifact.lowerbound import (
    CHECKS,
    X2R,
    XR,
    action_coefficient,
    bracket_closed_form,
    cocycle_c,
    delta,
    evaluation_BBp0,
    in_M,
    is_as,
    is_asxas,
    lambda0,
    lambda_k,
    lambda_map,
    lambda_ratio,
    lambda_restricted,
    m0_dim,
    m0_min_expected,
    mmin_build,
    mmin_expected,
    odd_pairs,
    p_bold,
    period_dims,
    phi_lift,
    psi_closed_form,
    psi_lemma,
    relation_series,
    section_bracket,
    sigma_vec,
    swap1,
    swap2,
    tau,
    tau_bar,
    v_monomial,
    xi_series,
)

A, B, Ap, Bp = R4.gens()
x2, x6 = X2R.gen("x2"), X2R.gen("x6")

# ---------------------------------------------------------------------------
# independent oracles (sympy, from the generating functions)

t, u, sg, pi, X2, X6 = sympy.symbols("t u sigma pi x2 x6")
_SUBS = {sg: X2 / 4, pi: X6 / 6 - X2 ** 3 / 96}


def _sympy_xy_over_d(order: int):
    D = (1 - 2 * sg * t ** 2 + sg ** 2 * t ** 4 - pi * t ** 6) ** 2
    X = 2 * t ** 3 - 3 * sg * t ** 5 + sympy.Rational(4, 3) * sg ** 2 * t ** 7 \
        + (2 * pi - sympy.Rational(1, 3) * sg ** 3) * t ** 9 - sympy.Rational(1, 3) * pi * sg * t ** 11
    Y = sympy.Rational(5, 3) * t ** 5 - 2 * sg * t ** 7 + sympy.Rational(1, 3) * sg ** 2 * t ** 9 \
        + sympy.Rational(1, 3) * pi * t ** 11
    xs = sympy.series(X / D, t, 0, order + 1).removeO()
    ys = sympy.series(Y / D, t, 0, order + 1).removeO()
    return sympy.Poly(xs, t), sympy.Poly(ys, t)


_XD, _YD = _sympy_xy_over_d(17)


def p_oracle(i: int, j: int):
    c = lambda poly, k: poly.coeff_monomial(t ** k)
    val = sympy.Rational(3, 10) * (c(_XD, i) * c(_YD, j) - c(_YD, i) * c(_XD, j))
    return sympy.expand(val.subs(_SUBS))


def x2r_to_sympy(p):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * X2 ** e[0] * X6 ** e[1]
                            for e, c in p.terms()))


def _sympy_xi(order: int, sign: int = 1):
    d = (1 - X2 * t ** 2 / 4) ** 2 + (-X6 / 6 + X2 ** 3 / 96) * t ** 6
    out = []
    for k in (3, 5):
        f = sympy.series(sign * t ** k / k / d, t, 0, order + 1).removeO()
        out.append(sympy.Poly(sympy.expand(t * sympy.diff(f, t)), t))
    return out


# ---------------------------------------------------------------------------
# δ, λ, c, τ


def test_delta_of_ab():
    assert delta(v_monomial(1, 1)) == A * Bp + Ap * B


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_delta_and_lambda_of_sigma(k):
    s = sigma_vec(k)
    assert delta(s) == -sigma_tilde(k)
    assert lambda_k(k) == 2 * lambda_map(s)


def test_lambda3_restricted():
    assert lambda_restricted(3) == 3 * Ap * B * (Ap + 2 * A + B)


def test_lambda0_of_ab_vanishes():
    assert lambda0(v_monomial(1, 1)).is_zero()


@pytest.mark.parametrize("i", range(5, 22, 2))
def test_lambda_ratio_is_polynomial(i):
    q = lambda_ratio(i)
    assert q * lambda_restricted(3) == lambda_restricted(i)


def test_tau35_lies_in_m_and_is_asxas():
    t35 = tau(3, 5)
    assert in_M(t35) and is_asxas(t35)


def test_evaluation_of_tau35():
    expected = 30 * A * Ap * B * Bp * (A ** 2 - Ap ** 2) * (2 * A ** 2 + 5 * A * Ap + 2 * Ap ** 2)
    assert evaluation_BBp0(tau(3, 5)) == expected


@pytest.mark.parametrize("i, j", [(3, 5), (3, 7), (5, 7), (3, 9), (5, 9)])
def test_cocycle_on_sigmas_is_minus_half_tau(i, j):
    assert cocycle_c(sigma_vec(i), sigma_vec(j)) == tau(i, j) * Fraction(-1, 2)


def test_section_bracket_agrees_with_cocycle_on_sigmas():
    assert section_bracket(sigma_vec(3), sigma_vec(5)) == tau(3, 5) * Fraction(-1, 2)


v_monos = st.tuples(st.integers(1, 3), st.integers(1, 3)).map(lambda ab: v_monomial(*ab))


@given(v_monos, v_monos)
@settings(max_examples=25, deadline=None)
def test_cocycle_is_antisymmetric_and_lands_in_m(u, v):
    c = cocycle_c(u, v)
    assert c == -cocycle_c(v, u)
    assert in_M(c)
    for var in ("A", "B", "Ap", "Bp"):
        assert c.specialize({var: 0}).is_zero()


@given(v_monos, v_monos, v_monos)
@settings(max_examples=20, deadline=None)
def test_cocycle_identity(u, v, w):
    total = delta(u) * cocycle_c(v, w) + delta(v) * cocycle_c(w, u) + delta(w) * cocycle_c(u, v)
    assert total.is_zero()


@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 4), st.integers(-3, 3), max_size=5).map(R4.from_terms))
@settings(max_examples=30, deadline=None)
def test_symmetry_projectors(p):
    a = p - swap1(p)
    assert is_as(a)
    b = a - swap2(a)
    assert is_asxas(b)
    assert swap1(swap1(p)) == p and swap2(swap2(p)) == p


@pytest.mark.parametrize("l", range(1, 7))
def test_psi_closed_form(l):
    assert psi_lemma(v_monomial(1, l)) == psi_closed_form(l)


# ---------------------------------------------------------------------------
# the polynomials P_ij


def test_p35_is_one():
    assert p_bold(3, 5) == X2R.one()


def test_p37_and_p57_frozen():
    assert p_bold(3, 7) == x2 * Fraction(7, 10)
    assert p_bold(5, 7) == x2 ** 2 * Fraction(7, 48)


@pytest.mark.parametrize("i, j", odd_pairs(20))
def test_p_bold_matches_generating_function(i, j):
    assert x2r_to_sympy(p_bold(i, j)) == p_oracle(i, j)


@pytest.mark.parametrize("i, j", odd_pairs(16))
def test_p_bold_is_antisymmetric_and_homogeneous(i, j):
    P = p_bold(i, j)
    assert P == -p_bold(j, i)
    assert P.is_zero() or P.weights() == {i + j - 8}


# ---------------------------------------------------------------------------
# the ξ closed forms


@pytest.mark.parametrize("sign", [1, -1])
def test_xi_series_matches_sympy(sign):
    xi3, xi5 = xi_series(11, sign)
    o3, o5 = _sympy_xi(11, sign)
    for k in range(12):
        for ours, oracle in ((xi3, o3), (xi5, o5)):
            got = sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * X2 ** e[0] * X6 ** e[1]
                                   for e, c in ours.coefficient(k).terms()))
            assert got == sympy.expand(oracle.coeff_monomial(t ** k))


@pytest.mark.parametrize("i, j", [(3, 5), (3, 7), (5, 7), (3, 9), (5, 9), (3, 11)])
def test_bracket_closed_form_is_minus_two_p(i, j):
    closed = bracket_closed_form(i, j, 14)
    assert closed.subs({"x2": x2, "x6": x6}, X2R) == p_bold(i, j) * -2


def test_action_coefficient_k3():
    # ξ3 = t^3 + ..., ξ5 = t^5 + ...: σ3 acts by multiplication by x3
    assert action_coefficient(3, 9) == XR.gen("x3")


def test_phi_of_one_is_tau35():
    assert phi_lift(XR.one()) == tau(3, 5)


# ---------------------------------------------------------------------------
# dimensions against series


def test_m0_dims_against_series():
    expected = m0_min_expected(16)
    assert [m0_dim(w) for w in range(17)] == expected
    assert expected[8:15] == [1, 0, 1, 0, 1, 0, 2]


@pytest.mark.parametrize("n", range(4, 21, 2))
def test_period_dims(n):
    dim_w, dim_sigma, dim_r = period_dims(n)
    assert dim_sigma == dim_r == relation_series(n)[n]
    assert dim_w == dim_r + 1


def test_relation_series_is_cusp_form_count():
    assert relation_series(24) == [int(c) for c in rational_series({12: 1}, [(4, 1), (6, 1)], 24)]
    assert relation_series(24)[12] == 1 and relation_series(24)[24] == 2


def test_tau_bar_is_evaluation_of_tau():
    for i, j in odd_pairs(14):
        assert evaluation_BBp0(tau(i, j)) == tau_bar(i, j)


def test_mmin_bigraded_dims():
    built = mmin_build(16, 2)
    assert built == mmin_expected(16, 2)
    assert built[(8, 0)] == 1 and built[(11, 1)] == 1 and built[(13, 1)] == 2


@pytest.mark.parametrize("check_id, kwargs", [
    ("section-cocycle", {"N": 8}),
    ("cocycle-in-m", {"N": 10}),
    ("bracket-star", {"N": 8}),
    ("lambda-divisibility", {"N": 15}),
    ("genfun-xy", {"N": 13}),
    ("aux-ij", {"N": 14}),
    ("cond-ij", {"N": 14}),
    ("sigma4-annihilates", {"N": 12}),
    ("m0-cyclic", {"N": 14}),
    ("m0-hilbert", {"N": 14}),
    ("period-dims", {"N": 16}),
    ("mmin-hilbert", {"N": 14, "K": 2}),
    ("phi-iso", {"N": 14, "K": 2}),
    ("action-formula", {"N": 14, "K": 2}),
    ("purity", {"N": 14, "K": 2}),
])
def test_checks_pass_at_small_weight(check_id, kwargs):
    rep = CHECKS[check_id](**kwargs)
    assert rep.ok, rep.witness
    assert rep.witness is None


def test_action_formula_names_plus_convention():
    rep = CHECKS["action-formula"](N=13, K=1)
    assert rep.params["convention"] == "plus"
    assert any("-τ_ij/2" in n for n in rep.notes)


def test_cond_ij_single_pair():
    rep = CHECKS["cond-ij"](i=3, j=9, N=12)
    assert rep.ok
