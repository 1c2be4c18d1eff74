import math

import numpy as np
import pytest
from scipy.integrate import quad

from stochgeo import (
    BoundKind,
    ChannelParams,
    MhcParams,
    ParameterError,
    QuadConfig,
    Window,
    coverage_bound,
    interference_exponent,
    interference_kernel,
    mhc_density,
    pgfl_bound_check,
)
from stochgeo.bounds import _ExponentGrids
from stochgeo.pointprocess import _rng_for, mhc_realization

CH4 = ChannelParams(alpha=4.0, sigma2=0.1)

# r=1, upsilon=2, angle=pi/2, alpha=4, beta=1: R^2 = 5, x = 1/25
KERNEL_LOG_REF = 0.0392207131533      # log(1 + 1/25)
KERNEL_RATIO_REF = 0.0384615384615    # (1/25) / (1 + 1/25) = 1/26


def test_quadconfig_validation_and_scaling():
    with pytest.raises(ParameterError):
        QuadConfig(n_r=8)
    with pytest.raises(ParameterError):
        QuadConfig(r_max=0.0)
    with pytest.raises(ParameterError):
        QuadConfig(upsilon_tail_tol=1.5)
    q = QuadConfig(n_r=32, n_theta=64, n_upsilon=64)
    q2 = q.scaled(2)
    assert (q2.n_r, q2.n_theta, q2.n_upsilon) == (64, 128, 128)
    assert q2.r_max == q.r_max and q2.upsilon_tail_tol == q.upsilon_tail_tol


def test_kernel_reference_values():
    log_val = interference_kernel(BoundKind.THEOREM1, 1.0, 2.0, math.pi / 2, 1.0, 4.0)
    ratio_val = interference_kernel(BoundKind.PROPOSITION1, 1.0, 2.0, math.pi / 2, 1.0, 4.0)
    assert log_val == pytest.approx(KERNEL_LOG_REF, abs=1e-12)
    assert ratio_val == pytest.approx(KERNEL_RATIO_REF, abs=1e-12)
    assert ratio_val <= log_val


def test_kernel_zero_threshold():
    for kind in BoundKind:
        assert interference_kernel(kind, 1.0, 2.0, 0.3, 0.0, 4.0) == 0.0


def test_kernel_vanishes_at_infinity():
    for kind in BoundKind:
        assert interference_kernel(kind, 1.0, 1e6, 0.3, 10.0, 4.0) < 1e-20


def test_kernel_ratio_below_log_everywhere():
    rng = np.random.default_rng(4)
    ups = rng.uniform(0.05, 5.0, 300)
    ang = rng.uniform(0, 2 * math.pi, 300)
    log_vals = interference_kernel(BoundKind.THEOREM1, 0.7, ups, ang, 3.0, 4.0)
    ratio_vals = interference_kernel(BoundKind.PROPOSITION1, 0.7, ups, ang, 3.0, 4.0)
    assert np.all(ratio_vals <= log_vals + 1e-15)
    assert np.all(log_vals >= 0) and np.all(ratio_vals >= 0)


def test_kernel_degenerate_geometry_is_finite():
    # upsilon = r, angle = 0 puts the interferer on the user: clamped, finite
    v = interference_kernel(BoundKind.THEOREM1, 0.5, 0.5, 0.0, 1.0, 4.0)
    assert math.isfinite(v)


def test_exponent_zero_threshold():
    res = interference_exponent(BoundKind.THEOREM1, 0.4, 0.0, 0.0, CH4,
                                MhcParams(3.0, 0.5))
    assert res.near == 0.0 and res.far == 0.0


def test_exponent_requires_positive_r():
    with pytest.raises(ParameterError):
        interference_exponent(BoundKind.THEOREM1, 0.0, 0.0, 1.0, CH4,
                              MhcParams(3.0, 0.5))


def test_exponent_ppp_limit_matches_radial_quadrature():
    # d -> 0: the shell term vanishes and the far term reduces to the plain
    # density integral over {R >= r}, evaluated independently in user-centred
    # polar coordinates where the kernel depends on R alone.
    params = MhcParams(1.0, 1e-4)
    lam = mhc_density(params)
    r, beta = 0.5, 10.0
    for kind, kernel in ((BoundKind.THEOREM1, lambda R: np.log1p(beta * (r / R) ** 4)),
                         (BoundKind.PROPOSITION1,
                          lambda R: 1.0 / (1.0 + (R / r) ** 4 / beta))):
        res = interference_exponent(kind, r, 0.0, beta, CH4, params)
        assert res.near < 1e-4
        ref = 2 * math.pi * lam * quad(lambda R: kernel(R) * R, r, np.inf, limit=400)[0]
        assert res.near + res.far == pytest.approx(ref, rel=2e-3)


def test_exponent_matches_hardcore_palm_oracle():
    # reduced Campbell sum estimated directly on realizations: average over
    # every retained point of sum of kernel over other points farther than r
    # from the user, normalized by lambda_m * area.
    params = MhcParams(3.0, 0.5)
    lam_m = mhc_density(params)
    r = math.sqrt(math.log(2.0) / (math.pi * lam_m))  # median serving distance
    beta = 10.0
    res = interference_exponent(BoundKind.THEOREM1, r, 0.0, beta, CH4, params)
    mu_quad = res.near + res.far

    L = 24.0
    win = Window(L, L)
    n_real = 250
    vals = np.empty(n_real)
    for i in range(n_real):
        rng = _rng_for(12345, stream=i)
        parents, _, keep = mhc_realization(rng, params, win)
        pts = parents[keep]
        angles = rng.uniform(0, 2 * math.pi, len(pts))
        total = 0.0
        for j in range(len(pts)):
            user = np.remainder(pts[j] + r * np.array([math.cos(angles[j]),
                                                       math.sin(angles[j])]), (L, L))
            dist = win.distances(user, pts)
            dist[j] = np.inf
            dist = dist[dist >= r]
            total += np.log1p(beta * (r / dist) ** 4).sum()
        vals[i] = total / (lam_m * L * L)
    mc = vals.mean()
    assert abs(mu_quad - mc) / mc < 0.02


def test_exponent_phi_invariance():
    params = MhcParams(3.0, 0.5)
    for r in (0.2, 0.44, 0.9):
        a = interference_exponent(BoundKind.PROPOSITION1, r, 0.0, 10.0, CH4, params)
        b = interference_exponent(BoundKind.PROPOSITION1, r, math.pi / 3, 10.0,
                                  CH4, params)
        assert (a.near + a.far) == pytest.approx(b.near + b.far, rel=1e-4)


def test_exponent_tail_control():
    params = MhcParams(3.0, 0.5)
    quad_cfg = QuadConfig()
    for r in (0.2, 0.44):
        for beta in (1.0, 10.0, 100.0):
            res = interference_exponent(BoundKind.PROPOSITION1, r, 0.0, beta,
                                        CH4, params, quad_cfg)
            assert res.tail_estimate <= quad_cfg.upsilon_tail_tol * res.far
            assert res.n_clamped == 0  # nondegenerate geometry reports none


def test_exponent_empty_shell_when_cutoff_covers_it():
    # large r: the geometric cutoff exceeds 2d at every angle with cos > 0,
    # but angles with cos <= 0 keep the shell active; compare against a plain
    # shell-free variant only in the near field sense: shell contribution is
    # finite and the far term dominates
    params = MhcParams(3.0, 0.5)
    res = interference_exponent(BoundKind.PROPOSITION1, 3.0, 0.0, 10.0, CH4, params)
    assert res.near > 0.0  # back half-plane keeps the shell
    assert res.far > res.near


def test_exponent_alpha_at_most_2_rejected():
    with pytest.raises(ParameterError):
        ChannelParams(alpha=2.0, sigma2=0.1)
    grids_ok = _ExponentGrids(0.5, 0.0, CH4, MhcParams(1.0, 0.1), QuadConfig())
    assert grids_ok.lam_m > 0


def test_bound_tends_to_one_without_noise():
    ch = ChannelParams(alpha=4.0, sigma2=0.0)
    curve = coverage_bound(BoundKind.PROPOSITION1, ch, MhcParams(1.0, 0.3), [-60.0])
    assert curve.p_c[0] == pytest.approx(1.0, abs=1e-3)
    assert curve.std_err is None


def test_bound_kind_ordering():
    beta_db = np.arange(-10.0, 31.0, 5.0)
    params = MhcParams(2.0, 0.4)
    th1 = coverage_bound(BoundKind.THEOREM1, CH4, params, beta_db)
    prop1 = coverage_bound(BoundKind.PROPOSITION1, CH4, params, beta_db)
    assert np.all(th1.p_c <= prop1.p_c + 1e-12)
    assert th1.label == "theorem1" and prop1.label == "proposition1"


def test_bound_monotone_in_threshold():
    curve = coverage_bound(BoundKind.PROPOSITION1, CH4, MhcParams(3.0, 0.5),
                           np.arange(-10.0, 31.0, 5.0))
    assert np.all(np.diff(curve.p_c) < 0)


def test_bound_ppp_limit_closed_form():
    # d -> 0, sigma2 = 0, alpha = 4: the ratio-kernel bound reproduces the
    # exact Poisson coverage 1 / (1 + sqrt(beta) * arctan(sqrt(beta)))
    ch = ChannelParams(alpha=4.0, sigma2=0.0)
    beta_db = np.array([-10.0, -5.0, 0.0, 5.0, 10.0, 20.0])
    curve = coverage_bound(BoundKind.PROPOSITION1, ch, MhcParams(1.0, 1e-3), beta_db)
    beta = 10 ** (beta_db / 10)
    exact = 1.0 / (1.0 + np.sqrt(beta) * np.arctan(np.sqrt(beta)))
    assert np.allclose(curve.p_c, exact, atol=5e-4)


def test_pgfl_exact_at_zero_threshold():
    res = pgfl_bound_check(MhcParams(1.0, 0.3), CH4, 0.0, 0.3, 100, 1)
    assert res.lhs == 1.0 and res.rhs == 1.0


def test_pgfl_equality_in_ppp_limit():
    ch = ChannelParams(alpha=4.0, sigma2=0.0)
    res = pgfl_bound_check(MhcParams(1.0, 1e-3), ch, 1.0, 0.3, 800, seed=11)
    comb = math.hypot(res.lhs_se, res.rhs_se)
    assert abs(res.lhs - res.rhs) <= 3 * comb


def test_pgfl_requires_enough_realizations():
    with pytest.raises(ParameterError):
        pgfl_bound_check(MhcParams(1.0, 0.3), CH4, 1.0, 0.3, 50, 1)
