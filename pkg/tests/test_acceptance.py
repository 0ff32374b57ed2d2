"""End-to-end acceptance runs at the full truncation bounds.

Each test is tagged with a ``criterion`` marker; conftest prints one PASS/FAIL
line per criterion in the terminal summary.
"""
import time

import pytest

from artifact import depthgraded, invariants, lowerbound
from artifact.invariants import decompose_in_I35, sigma_tilde


class Budget:
    def __init__(self, record, seconds: float):
        self.record = record
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        self.record("detail", f"({self.elapsed:.1f}s, budget {self.seconds:g}s)")
        return False

    def check(self):
        assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s"


def assert_ok(rep):
    assert rep.ok, (rep.check_id, rep.witness)


@pytest.mark.criterion("01 presentation relation of A at weight 10")
def test_c01_presentation_relation(record_property):
    with Budget(record_property, 1) as b:
        rel = invariants.presentation_relation()
    assert rel.is_zero()
    b.check()


@pytest.mark.criterion("02 Molien series by group sum and Reynolds ranks, weight <= 20")
def test_c02_molien(record_property):
    with Budget(record_property, 30) as b:
        rep = invariants.verify_molien(20)
    assert_ok(rep)
    assert {r["w"] for r in rep.weights} == set(range(21))
    assert len(rep.weights) == 2 * 21
    b.check()


@pytest.mark.criterion("03 sigma_i in (sigma_3, sigma_5) for odd 7 <= i <= 17; specialization series to t^17")
def test_c03_ideal_i35(record_property):
    with Budget(record_property, 60) as b:
        for i in range(7, 18, 2):
            P3, P5 = decompose_in_I35(i)
            assert P3 * sigma_tilde(3) + P5 * sigma_tilde(5) == sigma_tilde(i), i
        rep = lowerbound.verify_genfun_xy(17)
    assert_ok(rep)
    b.check()


@pytest.mark.criterion("04 lambda_3 divides lambda_i at B'=0 with even quotient, odd i <= 21")
def test_c04_lambda_divisibility(record_property):
    with Budget(record_property, 5) as b:
        rep = lowerbound.verify_lambda_divisibility(21)
    assert_ok(rep)
    b.check()


@pytest.mark.criterion("05 Cond_ij for odd pairs with i + j <= 16")
def test_c05_cond(record_property):
    with Budget(record_property, 120) as b:
        rep = lowerbound.verify_cond(N=16)
    assert_ok(rep)
    assert rep.weights
    b.check()


@pytest.mark.criterion("06 (sigma_4 - sigma_2^2/4) tau_35 in I.M at weight 12")
def test_c06_sigma4(record_property):
    with Budget(record_property, 5) as b:
        rep = lowerbound.verify_sigma4_annihilates(12)
    assert_ok(rep)
    b.check()


@pytest.mark.criterion("07 M0min dims to weight 20; R_n and Sigma_n dims for even n <= 24")
def test_c07_m0_and_periods(record_property):
    with Budget(record_property, 60) as b:
        m0 = lowerbound.verify_m0_hilbert(20)
        periods = lowerbound.verify_period_dims(24)
    assert_ok(m0)
    assert_ok(periods)
    assert {r["w"] for r in periods.weights} >= set(range(4, 25, 2))
    b.check()


@pytest.mark.criterion("08 Mmin bigraded dims and phi intertwining, weight <= 18, Sigma-degree <= 3")
def test_c08_mmin_and_phi(record_property):
    with Budget(record_property, 300) as b:
        dims = lowerbound.verify_mmin_hilbert(18, 3)
        phi = lowerbound.verify_phi(18, 3)
    assert_ok(dims)
    assert_ok(phi)
    b.check()


@pytest.mark.criterion("09 sigma_k action and brackets match the xi closed forms under one sign convention")
def test_c09_action_formula(record_property):
    with Budget(record_property, 120) as b:
        rep = lowerbound.verify_action_formula(N=18, K=3, max_k=9, bracket_weight=14)
    assert_ok(rep)
    assert rep.params["convention"] in ("plus", "minus")
    assert sum("consistent sign conventions:" in n for n in rep.notes) == 1
    assert any(n == f"consistent sign conventions: {rep.params['convention']}" for n in rep.notes)
    b.check()


@pytest.mark.criterion("10 Mmin_k pure of depth k + 2 for k <= 3, weight <= 18")
def test_c10_purity(record_property):
    with Budget(record_property, 60) as b:
        rep = lowerbound.verify_purity(18, 3)
    assert_ok(rep)
    b.check()


@pytest.mark.criterion("11 Lie(W)[k] dims for k = 1, 2, 3 at weight <= 21, 20, 19")
def test_c11_lie_w(record_property):
    with Budget(record_property, 300) as b:
        for k, bound in ((1, 21), (2, 20), (3, 19)):
            space = depthgraded.lie_w(k, bound)
            assert space.dims() == depthgraded.lie_w_expected(k, bound), k
            for w, basis in space.bases.items():
                assert all(e.bigrades() == {(w, k)} for e in basis), (k, w)
    b.check()


@pytest.mark.criterion("12 Lie(W)[2] equals the polynomial model and M0min, weight <= 20")
def test_c12_depth2(record_property):
    with Budget(record_property, 60) as b:
        rep = depthgraded.verify_depth2_explicit(20)
    assert_ok(rep)
    b.check()


@pytest.mark.criterion("13 complex exactness and homology to weight 23; depth-3 sequence to weight 19")
def test_c13_complex_and_depth3(record_property):
    with Budget(record_property, 300) as b:
        cx = depthgraded.verify_complex_homology(23)
        d3 = depthgraded.depth3_sequence(19)
    assert_ok(cx)
    assert_ok(d3)
    b.check()


@pytest.mark.criterion("14 bracket vs star-bracket on l.c.s. classes and section cocycle, weight <= 12")
def test_c14_cross_module(record_property):
    with Budget(record_property, 120) as b:
        star = lowerbound.verify_bracket_star(12)
        cocycle = lowerbound.verify_section_cocycle(12)
    assert_ok(star)
    assert_ok(cocycle)
    b.check()
