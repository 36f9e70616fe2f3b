"""Acceptance suite: one test per certification criterion, fixed tolerances.

Each test prints a PASS line on success; the conftest plugin prints the
one-line-per-criterion summary at the end of the run.  All randomness is
seeded, so every figure below is reproducible bit for bit.
"""

import math

import numpy as np

from orliczseq.approx import (
    jackson_kernel,
    kernel_moment,
    psi_bernstein_ratio,
    psi_direct_ratio,
)
from orliczseq.fracdiff import frac_difference, frac_difference_series, modulus
from orliczseq.kfunc import difference_derivative_bracket, k_functional
from orliczseq.orlicz import (
    exp_minus_one,
    luxemburg_norm,
    orlicz_norm,
    power,
    power_log,
)
from orliczseq.spectrum import CoeffSeq, PsiWeights, max_abs_diff, psi_derivative
from orliczseq.verify import (
    MajorantOmega,
    classify,
    direct_report,
    equivalence_report,
    inverse_report,
    list_families,
    rates_report,
)

P2 = power(2)


def _random_seq(rng, band, max_terms, *, nonzero_band=False, allow_constant=False):
    pool = np.arange(-band, band + 1)
    if nonzero_band:
        pool = pool[pool != 0]
    while True:
        m = int(rng.integers(1, max_terms + 1))
        ks = rng.choice(pool, size=min(m, pool.size), replace=False)
        if allow_constant or np.any(ks != 0):
            break
    c = rng.standard_normal(len(ks)) + 1j * rng.standard_normal(len(ks))
    return CoeffSeq(zip(ks.tolist(), c.tolist()))


def test_c01_lp_reduction():
    """Bisection norm equals the closed-form lp norm within 1e-10, p in {1, 1.5, 2, 3}."""
    rng = np.random.default_rng(101)
    for p in (1.0, 1.5, 2.0, 3.0):
        phi = power(p)
        for _ in range(200):
            f = _random_seq(rng, band=64, max_terms=64, allow_constant=True)
            _, cs = f.as_arrays()
            oracle = float(np.sum(np.abs(cs) ** p) ** (1.0 / p))
            got = luxemburg_norm(phi, f, rtol=1e-13)
            assert abs(got - oracle) <= 1e-10, (p, got, oracle)
    print("C01 lp reduction: PASS")


def test_c02_norm_sandwich():
    """Dual/primal norm ratio in [1 - 1e-8, 2 + 1e-8]; quadratic single harmonic attains 2."""
    rng = np.random.default_rng(102)
    gauges = [lambda: power(float(rng.uniform(1.0, 3.0))), exp_minus_one,
              lambda: power_log(float(rng.uniform(1.0, 3.0)))]
    for i in range(200):
        phi = gauges[i % 3]()
        f = _random_seq(rng, band=32, max_terms=12, allow_constant=True)
        ratio = orlicz_norm(phi, f) / luxemburg_norm(phi, f)
        assert 1.0 - 1e-8 <= ratio <= 2.0 + 1e-8, (phi, ratio)
    single = CoeffSeq({3: 1.7})
    ratio = orlicz_norm(P2, single) / luxemburg_norm(P2, single)
    assert abs(ratio - 2.0) <= 1e-8
    print("C02 norm sandwich: PASS")


def test_c03_multiplier_vs_series():
    """Multiplier and binomial-series differences agree: exactly for integer
    order, within 1e-3 at cutoff 1e4 for orders 0.5 and 1.5.

    The comparison family avoids k = 0: the difference kills constants
    exactly, while the truncated series converges there only like J**-alpha
    (5.6e-3 at J = 1e4, alpha = 1/2), which is checked separately below.
    """
    rng = np.random.default_rng(103)
    for _ in range(100):
        alpha = float(rng.integers(1, 4))
        f = _random_seq(rng, band=32, max_terms=8)
        h = float(rng.uniform(-math.pi, math.pi))
        d = max_abs_diff(frac_difference(f, alpha, h),
                         frac_difference_series(f, alpha, h, int(alpha)))
        assert d <= 1e-10, (alpha, h, d)
    rng = np.random.default_rng(0)
    for alpha in (0.5, 1.5):
        for _ in range(100):
            f = _random_seq(rng, band=32, max_terms=8, nonzero_band=True)
            h = float(rng.uniform(0.2, 3.0))
            d = max_abs_diff(frac_difference(f, alpha, h),
                             frac_difference_series(f, alpha, h, 10**4))
            assert d <= 1e-3, (alpha, h, d)
    # documented slow DC mode of the truncated series
    dc = frac_difference_series(CoeffSeq({0: 1.0}), 0.5, 1.0, 10**4)
    assert abs(dc[0]) <= 2.0 * (10**4) ** -0.5
    print("C03 multiplier vs series: PASS")


def test_c04_difference_norm_bound():
    """Difference norm at most 2**ceil(alpha) times the norm, 500 random draws."""
    rng = np.random.default_rng(104)
    for _ in range(500):
        f = _random_seq(rng, band=48, max_terms=12, allow_constant=True)
        alpha = float(rng.uniform(0.1, 3.5))
        h = float(rng.uniform(-math.pi, math.pi))
        lhs = luxemburg_norm(P2, frac_difference(f, alpha, h))
        assert lhs <= 2.0 ** math.ceil(alpha) * luxemburg_norm(P2, f) + 1e-9
    print("C04 difference norm bound: PASS")


def test_c05_modulus_inequality_suite():
    """The seven standard modulus inequalities at slack 1e-7, 100 draws each,
    plus the closed form for the first-order modulus of a single harmonic."""
    for delta in (0.1, 0.5, 1.0, 3.0):
        got = modulus(CoeffSeq({1: 1.0}), P2, 1.0, delta)
        assert abs(got - 2.0 * math.sin(delta / 2.0)) <= 1e-8

    slack = 1e-7
    n_draws = 100

    rng = np.random.default_rng(205)
    for _ in range(n_draws):  # order comparison
        f = _random_seq(rng, band=24, max_terms=8)
        beta = float(rng.uniform(0.3, 2.0))
        alpha = beta + float(rng.uniform(0.0, 1.5))
        delta = float(rng.uniform(0.1, 1.5))
        lhs = modulus(f, P2, alpha, delta)
        rhs = 2.0 ** math.ceil(alpha - beta) * modulus(f, P2, beta, delta)
        assert lhs <= rhs + slack

    rng = np.random.default_rng(206)
    for _ in range(n_draws):  # subadditivity in the sequence argument
        f = _random_seq(rng, band=24, max_terms=6)
        g = _random_seq(rng, band=24, max_terms=6)
        alpha = float(rng.uniform(0.3, 2.5))
        delta = float(rng.uniform(0.1, 1.5))
        assert modulus(f + g, P2, alpha, delta) <= (
            modulus(f, P2, alpha, delta) + modulus(g, P2, alpha, delta) + slack
        )

    rng = np.random.default_rng(207)
    for _ in range(n_draws):  # first-order subadditivity in the scale
        f = _random_seq(rng, band=24, max_terms=8)
        d1 = float(rng.uniform(0.05, 1.2))
        d2 = float(rng.uniform(0.05, 1.2))
        assert modulus(f, P2, 1.0, d1 + d2) <= (
            modulus(f, P2, 1.0, d1) + modulus(f, P2, 1.0, d2) + slack
        )

    rng = np.random.default_rng(208)
    for _ in range(n_draws):  # plain norm bound
        f = _random_seq(rng, band=24, max_terms=8)
        alpha = float(rng.uniform(0.3, 3.0))
        delta = float(rng.uniform(0.1, 2.0))
        assert modulus(f, P2, alpha, delta) <= 2.0 ** math.ceil(alpha) * luxemburg_norm(P2, f) + slack

    rng = np.random.default_rng(209)
    for _ in range(n_draws):  # derivative transfer
        f = _random_seq(rng, band=24, max_terms=8)
        alpha = float(rng.uniform(0.5, 2.5))
        beta = float(rng.uniform(0.2, alpha))
        delta = float(rng.uniform(0.1, 1.5))
        fb = psi_derivative(f, PsiWeights.fractional(beta))
        lhs = modulus(f, P2, alpha, delta)
        rhs = delta ** beta * modulus(fb, P2, alpha - beta, delta)
        assert lhs <= rhs + slack

    rng = np.random.default_rng(210)
    for _ in range(n_draws):  # integer dilation of the scale
        f = _random_seq(rng, band=24, max_terms=8)
        alpha = int(rng.integers(1, 4))
        p = int(rng.integers(2, 4))
        delta = float(rng.uniform(0.05, 1.0))
        assert modulus(f, P2, float(alpha), p * delta) <= (
            p ** alpha * modulus(f, P2, float(alpha), delta) + slack
        )

    rng = np.random.default_rng(211)
    for _ in range(n_draws):  # scale comparison at integer order
        f = _random_seq(rng, band=24, max_terms=8)
        alpha = int(rng.integers(1, 4))
        delta = float(rng.uniform(0.1, 1.5))
        eta = float(rng.uniform(0.1, 2.0))
        lhs = modulus(f, P2, float(alpha), eta)
        rhs = delta ** (-alpha) * (delta + eta) ** alpha * modulus(f, P2, float(alpha), delta)
        assert lhs <= rhs + slack
    print("C05 modulus inequality suite: PASS")


def test_c06_difference_derivative_bracket():
    """Shift-difference norm sits between the two derivative-norm envelopes."""
    rng = np.random.default_rng(106)
    for _ in range(200):
        n = int(rng.integers(1, 16))
        tau = _random_seq(rng, band=n, max_terms=6)
        alpha = float(rng.uniform(0.3, 3.0))
        h = float(rng.uniform(0.0, 2.0 * math.pi / n))
        low, mid, high = difference_derivative_bracket(tau, P2, alpha, n, h)
        assert low <= mid + 1e-9 and mid <= high + 1e-9
    for n in (2, 5, 11):
        for alpha in (0.5, 1.0, 2.0):
            low, mid, _ = difference_derivative_bracket(
                CoeffSeq({n: 1.0}), P2, alpha, n, math.pi / n, rtol=1e-14
            )
            assert abs(low - 2.0 ** alpha) <= 1e-10
            assert abs(mid - 2.0 ** alpha) <= 1e-10
    print("C06 difference derivative bracket: PASS")


def test_c07_bernstein_and_direct_ratios():
    """Derivative-vs-polynomial and tail-vs-derivative-tail bounds, 200 draws each."""
    rng = np.random.default_rng(107)
    for _ in range(200):
        n = int(rng.integers(1, 32))
        tau = _random_seq(rng, band=n, max_terms=8, allow_constant=True)
        r = float(rng.uniform(0.3, 2.0))
        lhs, bound = psi_bernstein_ratio(tau, P2, PsiWeights.fractional(r), n)
        assert lhs <= bound + 1e-9
    for _ in range(200):
        f = _random_seq(rng, band=48, max_terms=10, allow_constant=True)
        n = int(rng.integers(1, 24))
        r = float(rng.uniform(0.3, 2.0))
        lhs, bound = psi_direct_ratio(f, P2, PsiWeights.fractional(r), n)
        assert lhs <= bound + 1e-9
    # single-harmonic equality cases
    for n, r in ((4, 0.7), (9, 1.5)):
        tau = CoeffSeq({n: 1.3})
        lhs, bound = psi_bernstein_ratio(tau, P2, PsiWeights.fractional(r), n, rtol=1e-14)
        assert abs(lhs - bound) <= 1e-10
        lhs, bound = psi_direct_ratio(tau, P2, PsiWeights.fractional(r), n, rtol=1e-14)
        assert abs(lhs - bound) <= 1e-10
    print("C07 bernstein and direct ratios: PASS")


def test_c08_jackson_kernel_certification():
    """Unit mass to 1e-12 for every order, and stable fitted moment constants."""
    for n in range(2, 129):
        for r in range(5):
            _, kern = jackson_kernel(n, r)
            assert abs(2.0 * math.pi * kern[0].real - 1.0) <= 1e-12
    for r in range(5):
        consts = []
        for n in range(8, 129):
            spec, _ = jackson_kernel(n, r)
            consts.append(kernel_moment(spec, r) * (n + 1) ** r)
        assert max(consts) <= 2.0 * float(np.median(consts)), r
    print("C08 jackson kernel certification: PASS")


def test_c09_direct_constant_stabilizes():
    """sup E_n / omega_alpha(f, 1/n) finite with stabilized running sup."""
    constants = {}
    for family in list_families():
        for alpha in (0.5, 1.0, 2.0, 3.0):
            rep = direct_report(family, alpha, P2, n_max=128, num_funcs=24, seed=0)
            assert rep.passed, (family, alpha, rep.empirical_constant)
            assert math.isfinite(rep.empirical_constant)
            constants[(family, alpha)] = rep.empirical_constant
    print("C09 direct constant stabilizes: PASS "
          f"(max constant {max(constants.values()):.4f})")


def test_c10_inverse_constant_stabilizes():
    """Modulus against the weighted best-approximation sums, same protocol."""
    constants = {}
    for family in list_families():
        for alpha in (0.5, 1.0, 2.0, 3.0):
            rep = inverse_report(family, alpha, P2, n_max=128, num_funcs=24, seed=0)
            assert rep.passed, (family, alpha, rep.empirical_constant)
            assert math.isfinite(rep.empirical_constant)
            constants[(family, alpha)] = rep.empirical_constant
    print("C10 inverse constant stabilizes: PASS "
          f"(max constant {max(constants.values()):.4f})")


def test_c11a_k_functional_equivalence():
    """K/modulus ratios two-sided: positive lower envelope, stable upper."""
    for family in list_families():
        for alpha in (0.5, 1.0, 2.0):
            rep = equivalence_report(family, alpha, P2, num_funcs=10, seed=0)
            assert rep.passed, (family, alpha)
            assert rep.params["c1"] > 0.0
            assert math.isfinite(rep.params["c2"])
    print("C11a k-functional equivalence: PASS")


def test_c11b_single_harmonic_ratio_interval():
    """Certification gate: the closed-form single-harmonic ratio K_1/omega_1
    must stay inside [1/2, 1] for all delta in (0, pi].

    The computed values match their closed forms min(1, delta) and
    2 sin(delta/2) to 1e-6 (asserted first).  The containment itself cannot
    hold: min(1, delta) / (2 sin(delta/2)) exceeds 1 for every delta in (0, 1)
    since sin x < x, peaking at 1/(2 sin(1/2)) = 1.0429 at delta = 1.  The
    gate is kept as stated and this test documents the measured excess.
    """
    f = CoeffSeq({1: 1.0})
    deltas = [0.05, 0.1, 0.5, 1.0, 2.0, 3.0, math.pi]
    ratios = []
    for delta in deltas:
        k = k_functional(f, P2, 1.0, delta).value
        w = modulus(f, P2, 1.0, delta)
        assert abs(k - min(1.0, delta)) <= 1e-6
        assert abs(w - 2.0 * math.sin(delta / 2.0)) <= 1e-6
        ratios.append(k / w)
    assert all(r >= 0.5 - 1e-6 for r in ratios)
    assert all(r <= 1.0 + 1e-6 for r in ratios), (
        f"ratio exceeds the certified upper bound: max {max(ratios):.6f} "
        f"(at delta near 1; the mathematical supremum is 1/(2 sin 1/2) = "
        f"{1.0 / (2.0 * math.sin(0.5)):.6f})"
    )
    print("C11b single harmonic ratio interval: PASS")


def test_c12_decay_rate_transfer():
    """Fitted modulus slopes equal min(beta, alpha) within 0.15; at beta =
    alpha the log-corrected profile has spread at most 3 over t = 2^-3..2^-12."""
    for beta, alpha, expected in ((0.5, 1.0, 0.5), (2.0, 1.0, 1.0), (1.0, 2.0, 1.0)):
        rep = rates_report(beta, alpha, P2, band=4096, j_min=3, j_max=12, grid=128)
        assert rep.passed, (beta, alpha)
        assert abs(rep.empirical_constant - expected) <= 0.15
    rep = rates_report(1.0, 1.0, P2, band=4096, j_min=3, j_max=12, grid=128)
    assert rep.passed
    assert rep.empirical_constant <= 3.0
    print("C12 decay rate transfer: PASS")


def test_c13_smoothness_classifier():
    """Membership verdict is exactly 'majorant exponent <= decay exponent'."""
    for beta in (0.5, 1.0, 1.5):
        ks = np.arange(1, 1025)
        mags = ks.astype(float) ** (-beta - 0.5)
        f = CoeffSeq(zip(np.concatenate([ks, -ks]).tolist(),
                         np.concatenate([mags, mags]).tolist()))
        for r in (0.5, 1.0, 1.5):
            rep = classify(f, P2, MajorantOmega.power(r), 2.0, n_max=256, grid=96)
            assert rep.passed == (r <= beta), (beta, r, rep.passed)
            # the two characterizations must agree in both directions
            assert rep.params["en_direction_ok"] == rep.params["omega_direction_ok"], (beta, r)
    print("C13 smoothness classifier: PASS")


def test_c14_cli_determinism_and_round_trip(tmp_path, capsys):
    """Identical invocations produce identical bytes; files round-trip."""
    from orliczseq.cli import run
    from orliczseq.spectrum import read_coeffs, write_coeffs

    rng = np.random.default_rng(114)
    f = _random_seq(rng, band=32, max_terms=12, allow_constant=True)
    path = tmp_path / "f.jsonl"
    write_coeffs(f, path)
    assert read_coeffs(path) == f

    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    argv = ["verify", "direct", "--alpha", "1", "--family", "random-band",
            "--seed", "7", "--n-max", "16"]
    assert run(argv + ["--output", str(out1)]) == 0
    assert run(argv + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()

    for argv in (["norm", "--input", str(path)],
                 ["omega", "--alpha", "1.5", "--delta", "0.7", "--input", str(path)]):
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv) == 0
        assert capsys.readouterr().out == first
    print("C14 cli determinism and round trip: PASS")
