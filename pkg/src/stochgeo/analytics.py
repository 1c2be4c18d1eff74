"""Closed-form Matern hardcore quantities and their empirical validators.

Retention probability, retained density, the two-disc union area, the
second-order product density, and the exponential approximation of the
empty-space (nearest-station distance) distribution. All lengths in km,
densities in km^-2; no unit conversions happen here.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .pointprocess import (
    MhcParams,
    Window,
    _check_seed,
    _rng_for,
    default_torus_side,
    mhc_realization,
)


def retention_probability(params: MhcParams) -> float:
    """Chance that a parent point survives min-mark thinning:
    (1 - exp(-lambda_p*pi*d^2)) / (lambda_p*pi*d^2), continuous limit 1 at d=0."""
    t = params.lambda_p * math.pi * params.d ** 2
    if t == 0.0:
        return 1.0
    return -math.expm1(-t) / t


def mhc_density(params: MhcParams) -> float:
    """Retained density lambda_m = p * lambda_p; saturates below 1/(pi d^2)."""
    return retention_probability(params) * params.lambda_p


def disc_union_area(upsilon, d: float):
    """Area of the union of two radius-d discs with centers `upsilon` apart.

    2*pi*d^2 - 2*d^2*arccos(u/(2d)) + u*sqrt(d^2 - u^2/4) for u <= 2d,
    constant 2*pi*d^2 beyond. Vectorized over `upsilon`.
    """
    if d < 0:
        raise ParameterError("d must be >= 0")
    u = np.asarray(upsilon, dtype=float)
    if np.any(u < 0):
        raise ParameterError("upsilon must be >= 0")
    if d == 0:
        return np.zeros_like(u) if u.ndim else 0.0
    full = 2 * math.pi * d * d
    uc = np.minimum(u, 2 * d)
    out = full - 2 * d * d * np.arccos(uc / (2 * d)) + uc * np.sqrt(d * d - uc * uc / 4)
    out = np.where(u >= 2 * d, full, out)
    return out if u.ndim else float(out)


@dataclass(frozen=True)
class SecondOrderDensity:
    """Second-order product density of the Matern hardcore process.

    Callable on separations `upsilon`: 0 below d, lambda_m^2 at and beyond 2d,
    and the pair-retention expression in between. Continuous at 2d.
    """

    params: MhcParams

    @property
    def lambda_m(self) -> float:
        return mhc_density(self.params)

    def __call__(self, upsilon):
        u = np.asarray(upsilon, dtype=float)
        scalar = u.ndim == 0
        u = np.atleast_1d(u)
        d = self.params.d
        lam_m = self.lambda_m
        out = np.full(u.shape, lam_m * lam_m)
        if d > 0:
            out[u < d] = 0.0
            mid = (u >= d) & (u < 2 * d)
            if mid.any():
                t = self.params.lambda_p * math.pi * d * d
                V = disc_union_area(u[mid], d)
                pidd = math.pi * d * d
                num = 2 * V * (-math.expm1(-t)) - 2 * pidd * (-np.expm1(-self.params.lambda_p * V))
                out[mid] = num / (pidd * V * (V - pidd))
        return float(out[0]) if scalar else out


def second_order_density(upsilon, params: MhcParams):
    """Pair density rho2(upsilon) for ordered point pairs at that separation."""
    return SecondOrderDensity(params)(upsilon)


def empty_space_pdf(r, lambda_m: float):
    """Approximate density of the distance from a uniform location to the
    nearest retained station: 2*pi*lambda_m*r*exp(-pi*lambda_m*r^2)."""
    if not lambda_m > 0:
        raise ParameterError("lambda_m must be > 0")
    r = np.asarray(r, dtype=float)
    out = 2 * math.pi * lambda_m * r * np.exp(-math.pi * lambda_m * r * r)
    return float(out) if out.ndim == 0 else out


def empty_space_cdf(r, lambda_m: float):
    """Companion CDF: 1 - exp(-pi*lambda_m*r^2)."""
    if not lambda_m > 0:
        raise ParameterError("lambda_m must be > 0")
    r = np.asarray(r, dtype=float)
    out = -np.expm1(-math.pi * lambda_m * r * r)
    return float(out) if out.ndim == 0 else out


class VoidEstimate(NamedTuple):
    probability: float
    std_error: float


def default_torus(params: MhcParams, extent: float = 0.0) -> Window:
    """Square toroidal window sized for stable hardcore statistics: at least
    20 mean spacings wide and comfortably larger than any probe radius."""
    side = default_torus_side(mhc_density(params), params.d, extent)
    return Window(side, side)


def void_probability_empirical(params: MhcParams, r: float, n_realizations: int,
                               seed: int, window: Window | None = None) -> VoidEstimate:
    """Monte Carlo estimate of P[no retained point within distance r of a
    uniform test location], one test location per realization."""
    if not r > 0:
        raise ParameterError("r must be > 0")
    if n_realizations < 1:
        raise ParameterError("n_realizations must be >= 1")
    if n_realizations < 30:
        warnings.warn(f"void probability from only {n_realizations} realizations; "
                      "standard error is unreliable", stacklevel=2)
    seed = _check_seed(seed)
    if window is None:
        window = default_torus(params, extent=r)
    hits = 0
    for i in range(n_realizations):
        rng = _rng_for(seed, stream=i)
        parents, _, keep = mhc_realization(rng, params, window)
        pts = parents[keep]
        loc = rng.uniform(0.0, 1.0, 2) * (window.width, window.height)
        if len(pts) == 0 or window.distances(loc, pts).min() > r:
            hits += 1
    p = hits / n_realizations
    se = math.sqrt(p * (1.0 - p) / n_realizations)
    return VoidEstimate(p, se)


def nearest_distance_samples(params: MhcParams, n_realizations: int, seed: int,
                             window: Window | None = None) -> np.ndarray:
    """Distance from one uniform test location to the nearest retained point,
    sampled across independent realizations."""
    if n_realizations < 1:
        raise ParameterError("n_realizations must be >= 1")
    seed = _check_seed(seed)
    if window is None:
        window = default_torus(params)
    out = np.empty(n_realizations)
    for i in range(n_realizations):
        rng = _rng_for(seed, stream=i)
        parents, _, keep = mhc_realization(rng, params, window)
        pts = parents[keep]
        loc = rng.uniform(0.0, 1.0, 2) * (window.width, window.height)
        out[i] = window.distances(loc, pts).min() if len(pts) else math.inf
    return out


class KsResult(NamedTuple):
    statistic: float
    n_samples: int


def empty_space_ks(params: MhcParams, n_realizations: int, seed: int,
                   window: Window | None = None) -> KsResult:
    """Kolmogorov-Smirnov distance between sampled nearest-point distances
    and the exponential-form CDF 1 - exp(-pi*lambda_m*r^2). The CDF is an
    approximation whose quality degrades as d grows, so this reports rather
    than judges."""
    samples = np.sort(nearest_distance_samples(params, n_realizations, seed, window))
    lam_m = mhc_density(params)
    cdf = empty_space_cdf(samples, lam_m)
    n = len(samples)
    hi = np.arange(1, n + 1) / n - cdf
    lo = cdf - np.arange(0, n) / n
    return KsResult(float(max(hi.max(), lo.max())), n)


class PairDensityEstimate(NamedTuple):
    upsilon: np.ndarray
    density: np.ndarray
    std_err: np.ndarray


def pair_density_empirical(params: MhcParams, upsilons, n_realizations: int,
                           seed: int, window: Window | None = None,
                           halfwidth: float | None = None) -> PairDensityEstimate:
    """Empirical second-order product density at the given separations.

    Counts ordered point pairs falling in [u-h, u+h] per realization on a
    torus and normalizes by area * 2*pi*u * 2h; the standard error comes from
    the spread across realizations.
    """
    from scipy.spatial import cKDTree

    if n_realizations < 2:
        raise ParameterError("n_realizations must be >= 2")
    seed = _check_seed(seed)
    ups = np.sort(np.asarray(upsilons, dtype=float))
    if np.any(ups <= 0):
        raise ParameterError("upsilons must be > 0")
    if window is None:
        window = default_torus(params, extent=float(ups.max()))
    if halfwidth is None:
        halfwidth = 0.02 * params.d if params.d > 0 else 0.02 * float(ups.min())
    edges = np.concatenate([ups - halfwidth, ups + halfwidth])
    order = np.argsort(edges)
    inverse = np.argsort(order)
    norm = window.area * 2.0 * math.pi * ups * 2.0 * halfwidth
    per_real = np.empty((n_realizations, len(ups)))
    for i in range(n_realizations):
        rng = _rng_for(seed, stream=i)
        parents, _, keep = mhc_realization(rng, params, window)
        pts = parents[keep]
        tree = cKDTree(pts, boxsize=(window.width, window.height))
        cum = tree.count_neighbors(tree, edges[order])[inverse]
        counts = cum[len(ups):] - cum[:len(ups)]  # ordered pairs per bin
        per_real[i] = counts / norm
    density = per_real.mean(axis=0)
    se = per_real.std(axis=0, ddof=1) / math.sqrt(n_realizations)
    return PairDensityEstimate(ups, density, se)
