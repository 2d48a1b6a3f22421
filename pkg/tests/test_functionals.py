import math

import numpy as np
import pytest

from heronheinz.errors import NotPSDError, RangeError, SpectrumBoundsError
from heronheinz.linalg import sym_eig
from heronheinz.means import MeanTriple, heinz_scalar, heron_scalar
from heronheinz.norms import TEST_NORMS, NormKind, ui_norm
from heronheinz.functionals import (
    CheckResult,
    Evaluator,
    F_of,
    G_of,
    JensenParams,
    K_of,
    check_conde,
    check_convexity_extension,
    check_corollary_sum,
    check_cs_refinement,
    check_gen_diff,
    check_heinz_diff_classical,
    check_hermite_hadamard_gap,
    check_hiai_zhan,
    check_integral_refinement,
    check_jensen_bounds,
    check_kantorovich_s2,
    check_power_diff,
    check_reverse_heinz,
    check_schur_norm_bound,
    check_t1,
    check_t1_integral,
    check_t2,
    check_t2_integral,
    check_t3,
    check_t4,
    check_t20,
    convex_function,
    functional_handle,
    phi_of,
    r0,
    r2,
    t0,
    zou_counterexample,
)

S2 = NormKind.schatten(2)
OP = NormKind.operator()
TR = NormKind.trace()


def scalar(a, x, b):
    return MeanTriple(np.array([[a]]), np.array([[b]]), np.array([[x]]))


def identity_triple(n=2):
    return MeanTriple(np.eye(n), np.eye(n), np.eye(n))


@pytest.fixture(scope="module")
def t3():
    return MeanTriple.random(3, 11)


@pytest.fixture(scope="module")
def t2():
    return MeanTriple.random(2, 12)


# --- weights, results -------------------------------------------------------------------


@pytest.mark.parametrize("nu", np.linspace(0.25, 0.75, 11))
def test_weight_ranges(nu):
    assert 0.25 - 1e-15 <= r0(nu) <= 0.5
    assert r2(nu) >= -1e-15


def test_t0():
    assert t0(0.2) == pytest.approx(0.2) and t0(0.9) == pytest.approx(0.1)


def test_check_result_tolerance():
    ok = CheckResult.from_values("c", ("a", "b"), [1.0, 1.0 - 5e-9])
    bad = CheckResult.from_values("c", ("a", "b"), [1.0, 1.0 - 2e-8])
    big = CheckResult.from_values("c", ("a", "b"), [1e6, 1e6 - 5e-3])
    assert ok.passed and not bad.passed and big.passed
    assert big.tau == pytest.approx(1e-2)
    assert ok.margins == pytest.approx((-5e-9,))
    d = bad.to_dict()
    assert d["passed"] is False and [c["label"] for c in d["chain"]] == ["a", "b"]


# --- the functionals themselves ---------------------------------------------------------


@pytest.mark.parametrize("nu", [0.0, 0.3, 0.5, 1.2])
def test_F_identity(nu):
    assert F_of(identity_triple(), S2, nu) == pytest.approx(math.sqrt(2), rel=1e-14)


def test_G_identity_trace():
    assert G_of(identity_triple(), TR, 0.0) == pytest.approx(2.0, rel=1e-14)


def test_phi_identity():
    assert phi_of(identity_triple(), NormKind.schatten(1), 0.3, 1.0) == pytest.approx(4.0, rel=1e-14)


@pytest.mark.parametrize("nu", [0.1, 0.4, 0.8, 1.5])
def test_scalar_reductions(nu):
    a, x, b = 1.7, -0.6, 5.2
    t = scalar(a, x, b)
    assert F_of(t, OP, nu) == pytest.approx(abs(x) * heinz_scalar(a, b, nu), rel=1e-12)
    assert G_of(t, OP, nu) == pytest.approx(abs(x) * abs(heron_scalar(a, b, nu)), rel=1e-12)


@pytest.mark.parametrize("k", TEST_NORMS, ids=str)
def test_symmetries(t3, k):
    for nu in (0.0, 0.2, 0.35, 1.6, -0.7):
        assert F_of(t3, k, nu) == pytest.approx(F_of(t3, k, 1 - nu), rel=1e-10)
        assert K_of(t3, k, nu) == pytest.approx(K_of(t3, k, 1 - nu), rel=1e-10, abs=1e-12)
    for s in (0.0, 0.2, 0.4):
        assert phi_of(t3, k, s, 1.5) == pytest.approx(phi_of(t3, k, 1 - s, 1.5), rel=1e-9)


def test_K_examples(t3):
    assert K_of(t3, OP, 0.5) == pytest.approx(0.0, abs=1e-12)
    assert K_of(t3, OP, 1.0) == pytest.approx(ui_norm(t3.A @ t3.X - t3.X @ t3.B, OP), rel=1e-12)


def test_phi_midpoint(t3):
    geo = t3.power_A(0.5) @ t3.X @ t3.power_B(0.5)
    s = np.linalg.svd(geo, compute_uv=False)
    assert phi_of(t3, TR, 0.5, 2.0) == pytest.approx(np.sum(s**2) ** 2, rel=1e-10)


def test_G_nondecreasing_on_half_line():
    for seed in range(5):
        t = MeanTriple.random(3, 200 + seed)
        for k in TEST_NORMS:
            g = [G_of(t, k, a) for a in np.linspace(0.5, 4, 15)]
            assert np.all(np.diff(g) >= -1e-10 * max(g))


def test_evaluator_matches_public_functions(t3):
    ev = Evaluator(t3, TEST_NORMS)
    for j, k in enumerate(TEST_NORMS):
        assert ev.F(0.3)[0, j] == pytest.approx(F_of(t3, k, 0.3), rel=1e-12)
        assert ev.G(1.5)[0, j] == pytest.approx(G_of(t3, k, 1.5), rel=1e-12)
        assert ev.K(-0.4)[0, j] == pytest.approx(K_of(t3, k, -0.4), rel=1e-12)
        assert ev.phi(0.2, 0.7)[0, j] == pytest.approx(phi_of(t3, k, 0.2, 0.7), rel=1e-12)


def test_evaluator_batch_matches_rows():
    stack = MeanTriple.random_stack(3, range(4))
    ev = Evaluator(stack, (OP, S2))
    for i in range(4):
        single = Evaluator(MeanTriple.random(3, i), (OP, S2))
        np.testing.assert_allclose(ev.K(0.3)[i], single.K(0.3)[0], rtol=1e-12)
        np.testing.assert_allclose(ev.int_F()[i], single.int_F()[0], rtol=1e-12)


def test_public_functions_reject_stacks():
    with pytest.raises(Exception):
        F_of(MeanTriple.random_stack(2, [1, 2]), OP, 0.3)


# --- Heron chains -------------------------------------------------------------------------


def test_t1_midpoint(t3):
    r = check_t1(t3, S2, 0.5, 2.0)
    assert r.passed and r.margins[0] == 0.0


def test_t1_scalar_oracle():
    r = check_t1(scalar(1, 1, 4), OP, 3 / 8, 1.0)
    f_nu = (2**1.25 + 2**0.75) / 2
    np.testing.assert_allclose(r.values, [f_nu, 2.25, 2.5], rtol=1e-12)
    assert r.passed
    assert r.params["nu"] == 3 / 8 and r.params["norm"] == "operator" and r.params["dim"] == 1


def test_t1_random(t3):
    assert check_t1(t3, S2, 0.3, 0.75).passed


@pytest.mark.parametrize("nu, alpha", [(0.2, 1.0), (0.8, 1.0), (0.5, 0.4)])
def test_t1_domain(t3, nu, alpha):
    with pytest.raises(RangeError) as exc:
        check_t1(t3, S2, nu, alpha)
    assert exc.value.param in ("nu", "alpha")


def test_t1_integral_identity():
    r = check_t1_integral(identity_triple(3), S2, 2.0)
    assert r.values == pytest.approx((math.sqrt(3), math.sqrt(3)), rel=1e-9)
    assert r.passed


def test_t1_integral_scalar_oracle():
    integral = (4**0.75 - 4**0.25) / math.log(4)  # closed form of int H_nu(1, 4) over [1/4, 3/4]
    r = check_t1_integral(scalar(1, 1, 4), OP, 1.0)
    assert r.values[0] == pytest.approx(2 + 2 * (2 * integral - 2), abs=1e-8)
    assert r.values[1] == pytest.approx(2.5)
    assert r.passed


def test_t1_integral_random(t2):
    assert check_t1_integral(t2, TR, 1.0).passed


@pytest.mark.parametrize("nu", [0.25, 0.3, 0.375, 0.625, 0.7, 0.75])
def test_t20_equal_on_outer_bands(t3, nu):
    r = check_t20(t3, OP, nu, 1.5)
    assert abs(r.margins[0]) <= 1e-12 * max(1, max(r.values))


def test_t20_midpoint_and_random(t3):
    r = check_t20(t3, OP, 0.5, 1.5)
    # r2(1/2) = 0 makes the right side G(alpha), so the margin is G(alpha) - F(1/2) >= 0
    assert r.passed and r.values[1] == pytest.approx(G_of(t3, OP, 1.5), rel=1e-12)
    assert check_t20(t3, S2, 0.45, 1.0).passed


def test_kantorovich_scalar_multiple_of_identity():
    c = 2.5
    t = MeanTriple(c * np.eye(3), c * np.eye(3), np.eye(3))
    r = check_kantorovich_s2(t, 0.3, c, c)
    assert r.values[0] == pytest.approx(r.values[1], rel=1e-12)


def test_kantorovich_nu_one(t3):
    r = check_kantorovich_s2(t3, 1.0, 0.1, 10.0)
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12 * r.values[1])


def test_kantorovich_random_actual_bounds(t3):
    lo = min(sym_eig(t3.A).eigenvalues[0], sym_eig(t3.B).eigenvalues[0])
    hi = max(sym_eig(t3.A).eigenvalues[-1], sym_eig(t3.B).eigenvalues[-1])
    for nu in np.linspace(0, 1, 6):
        r = check_kantorovich_s2(t3, nu, lo, hi)
        assert r.passed and r.params["norm"] == "schatten:2"


def test_kantorovich_bad_bounds(t3):
    with pytest.raises(SpectrumBoundsError):
        check_kantorovich_s2(t3, 0.3, 5.0, 6.0)


def test_conde_reduces_at_half(t3):
    a = check_conde(t3, TR, 0.5, 1.0)
    b = check_t1(t3, TR, 0.5, 1.0)
    assert a.values[0] == a.values[1]
    assert a.values[2:] == pytest.approx(b.values[1:], rel=1e-14)


def test_conde_active_refinement(t3):
    r = check_conde(t3, S2, 3 / 8, 1.0)
    assert r.passed and r.margins[0] >= 0


def test_conde_identity_gap_zero():
    r = check_conde(identity_triple(), OP, 0.4, 1.0)
    assert r.values[0] == pytest.approx(r.values[1], abs=1e-14)


def test_integral_refinement_dominates(t2):
    for k in (NormKind.schatten(3), OP):
        a = check_integral_refinement(t2, k, 1.0)
        b = check_t1_integral(t2, k, 1.0)
        assert a.passed
        assert a.values[0] >= b.values[0] - a.tau


# --- difference chains -------------------------------------------------------------------


def test_t2_examples(t3):
    assert check_t2(t3, OP, 0.5).values[0] == pytest.approx(0.0, abs=1e-12)
    r = check_t2(t3, OP, 0.25)
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12)
    assert check_t2(t3, OP, 0.4).passed
    assert check_t2_integral(t3, OP).passed
    assert len(check_t2_integral(t3, OP).chain) == 3


@pytest.mark.parametrize("nu", [0.0, 1.0])
def test_classical_endpoints(t3, nu):
    r = check_heinz_diff_classical(t3, TR, nu)
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12 * r.values[1])


def test_classical_examples(t3):
    assert check_heinz_diff_classical(t3, TR, 0.5).values[0] == 0.0
    assert check_heinz_diff_classical(t3, TR, 0.3).passed
    with pytest.raises(RangeError):
        check_heinz_diff_classical(t3, TR, 1.2)


@pytest.mark.parametrize("nu", [0.0, 0.3, 0.7, 1.0])
def test_gen_diff_reduces_at_alpha_one(t3, nu):
    a = check_gen_diff(t3, S2, 1.0, nu)
    b = check_heinz_diff_classical(t3, S2, nu)
    np.testing.assert_allclose(a.values, b.values, rtol=1e-12, atol=1e-12)


def test_gen_diff_examples(t3):
    assert check_gen_diff(t3, TR, 2.0, 0.5).values[0] == pytest.approx(0.0, abs=1e-12)
    assert check_gen_diff(t3, TR, 2.0, 1.2).passed
    with pytest.raises(RangeError):
        check_gen_diff(t3, TR, 2.0, 1.6)
    with pytest.raises(RangeError):
        check_gen_diff(t3, TR, 0.9, 0.5)


def test_power_diff_examples(t3):
    r = check_power_diff(t3, OP, 1.0)
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12 * r.values[1])
    assert check_power_diff(t3, OP, 0.5).passed
    t = MeanTriple(np.eye(3), np.eye(3), t3.X)
    assert check_power_diff(t, OP, 0.3).values == pytest.approx((0.0, 0.0), abs=1e-13)
    with pytest.raises(RangeError):
        check_power_diff(t3, OP, 1.5)


def test_reverse_examples(t3):
    D = np.diag([1.0, 2.0, 3.0])
    r = check_reverse_heinz(MeanTriple(D, D, np.eye(3)), OP, 2.0)
    assert r.values == pytest.approx((0.0, 0.0), abs=1e-12)
    assert check_reverse_heinz(t3, OP, 1.01).passed
    assert check_reverse_heinz(t3, OP, -0.01).passed
    with pytest.raises(RangeError):
        check_reverse_heinz(t3, OP, 0.5)


def test_reverse_scalar_oracle():
    a, b = 2.0, 0.5
    r = check_reverse_heinz(scalar(a, 1.0, b), OP, -1.0)
    assert r.values == pytest.approx((3 * abs(a - b), abs(b * b / a - a * a / b)), rel=1e-12)
    assert r.passed


def test_convexity_examples(t3):
    A = np.diag([1.0, 4.0, 2.0])
    flat = check_convexity_extension(MeanTriple(A, A, np.eye(3)), OP, np.linspace(-2, 3, 21))
    assert flat.values == pytest.approx((0.0, 0.0), abs=1e-12)
    assert check_convexity_extension(t3, OP, np.linspace(0, 1, 17)).passed
    r = check_convexity_extension(t3, TR, np.arange(-2, 3.0001, 0.25))
    assert r.passed and {"a", "b"} <= set(r.params)
    with pytest.raises(RangeError):
        check_convexity_extension(t3, TR, [0.0, 0.0, 1.0])


def test_corollary_examples(t3):
    comm = ui_norm(t3.A @ t3.X - t3.X @ t3.B, S2)
    for nu in (0.5, 2.0):
        r = check_corollary_sum(t3, S2, nu, 1, "nonneg")
        assert r.values[0] == pytest.approx((1 + 2 * nu) * comm, rel=1e-10)
    r = check_corollary_sum(t3, S2, 0.0, 2, "nonneg")
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12)
    assert check_corollary_sum(t3, S2, 0.5, 3, "nonneg").passed
    assert check_corollary_sum(t3, S2, -2.0, 3, "le_minus_one").passed


@pytest.mark.parametrize("nu, N, branch", [(-0.5, 1, "nonneg"), (-0.5, 1, "le_minus_one"), (1.0, 0, "nonneg"), (1.0, 1, "x")])
def test_corollary_domain(t3, nu, N, branch):
    with pytest.raises(RangeError):
        check_corollary_sum(t3, S2, nu, N, branch)


@pytest.mark.parametrize("nu", [0.25, 0.75])
def test_t3_reduces_to_t2(t3, nu):
    a, b = check_t3(t3, OP, nu), check_t2(t3, OP, nu)
    assert a.values[0] == a.values[1]
    assert (a.values[0], a.values[2]) == pytest.approx(b.values, rel=1e-14)


def test_t3_t4_examples(t3):
    A = np.diag([2.0, 3.0, 5.0])
    r = check_t3(MeanTriple(A, A, np.eye(3)), OP, 0.4)
    assert r.values == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
    assert check_t3(t3, OP, 0.33).passed
    r4, r2 = check_t4(t3, OP), check_t2_integral(t3, OP)
    assert r4.passed
    # the refined bound sits below the plain one
    assert r4.values[1] <= r2.values[1] + r4.tau
    assert r4.values[0] == pytest.approx(r2.values[0], rel=1e-12)


# --- Cauchy-Schwarz chains -----------------------------------------------------------------


def test_hiai_zhan_examples(t3):
    r = check_hiai_zhan(t3, S2, 0.5, 1.0)
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12 * r.values[1])
    for s in (0.0, 1.0):
        r = check_hiai_zhan(t3, S2, s, 1.5)
        assert r.margins[1] == pytest.approx(0.0, abs=1e-12 * r.values[2])
    assert check_hiai_zhan(t3, S2, 0.3, 2.0).passed
    with pytest.raises(RangeError):
        check_hiai_zhan(t3, S2, 0.3, 0.0)


def test_cs_refinement_examples(t3):
    r = check_cs_refinement(t3, TR, 0.0, 1.0)
    assert r.values[0] == r.values[1] == pytest.approx(r.values[2], rel=1e-14)
    r = check_cs_refinement(t3, TR, 0.5, 1.0)
    assert r.passed and r.values[2] == pytest.approx(phi_of(t3, TR, 0.5, 1.0), rel=1e-14)
    assert check_cs_refinement(t3, TR, 0.35, 1.0).passed
    with pytest.raises(RangeError):
        check_cs_refinement(t3, TR, 1.2, 1.0)


# --- Schur ------------------------------------------------------------------------------------


def test_schur_examples():
    rng = np.random.default_rng(3)
    Z = rng.standard_normal((4, 4))
    r = check_schur_norm_bound(np.eye(4), Z, TR)
    assert r.values[0] == pytest.approx(np.abs(np.diag(Z)).sum(), rel=1e-12) and r.passed
    r = check_schur_norm_bound(np.ones((4, 4)), Z, TR)
    assert r.margins[0] == pytest.approx(0.0, abs=1e-12)
    G = rng.standard_normal((4, 6))
    assert check_schur_norm_bound(G @ G.T, Z, OP).passed


def test_schur_rejects_non_psd():
    with pytest.raises(NotPSDError):
        check_schur_norm_bound(np.diag([1.0, -1.0]), np.eye(2), TR)


# --- Jensen ---------------------------------------------------------------------------------------


def test_jensen_square():
    r = check_jensen_bounds(convex_function("square"), JensenParams(0.25, 0.0, 1.0))
    np.testing.assert_allclose(r.values, [0.125, 0.1875, 0.375], atol=1e-12)


@pytest.mark.parametrize("name", ["square", "abs", "exp"])
def test_jensen_half_collapses(name):
    r = check_jensen_bounds(convex_function(name), JensenParams(0.5, -0.7, 1.3))
    assert r.margins == pytest.approx((0.0, 0.0), abs=1e-15)


def test_jensen_functional_handle(t3):
    assert check_jensen_bounds(functional_handle("K", t3, OP), JensenParams(0.3, 0.25, 0.5)).passed


def test_jensen_params():
    p = JensenParams(0.3, 0.0, 1.0)
    assert p.lam_min + p.lam_max == 1 and p.lam_min <= 0.5 <= p.lam_max
    with pytest.raises(RangeError):
        JensenParams(1.2, 0.0, 1.0)
    with pytest.raises(RangeError):
        convex_function("cube")


def test_hermite_hadamard_examples(t3):
    lin = check_hermite_hadamard_gap(convex_function("abs"), 0.5, 2.0)
    assert lin.values == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
    sq = check_hermite_hadamard_gap(convex_function("square"), 0.0, 1.0)
    np.testing.assert_allclose(sq.values, [1 / 8, 1 / 6, 3 / 8], atol=1e-12)
    assert check_hermite_hadamard_gap(functional_handle("F", t3, S2), 0.25, 0.75).passed
    with pytest.raises(RangeError):
        check_hermite_hadamard_gap(convex_function("exp"), 1.0, 0.0)


# --- Zou -------------------------------------------------------------------------------------------


def test_zou():
    Z, det, psd = zou_counterexample()
    off = (Z[0, 1], Z[0, 2], Z[1, 2])
    assert tuple(round(v, 4) for v in off) == (0.8023, 0.9454, 0.9560)
    assert abs(det - (-0.0012)) <= 5e-4
    assert psd is False
    np.testing.assert_allclose(np.diag(Z), 1.0)
