"""Monte Carlo estimation of downlink SINR coverage probability.

Each trial realizes the deployment (fresh for random sources, reused for
fixed ones), drops one uniform user, attaches it to the nearest station under
the window metric, draws Rayleigh fades for the serving and interfering
links, and scores the resulting SINR against every threshold. Coverage is
the fraction of trials at or above each threshold.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DataError, ParameterError
from .pointprocess import (
    MhcParams,
    MhcSource,
    PointSet,
    R_MIN_KM,
    Window,
    _check_seed,
    default_torus_side,
)

# Minimum window width, in multiples of the mean station spacing, below which
# wrapped-interference truncation bias is no longer negligible.
MIN_WINDOW_SPACINGS = 20.0


@dataclass(frozen=True)
class ChannelParams:
    """Propagation and radio parameters.

    alpha: path-loss exponent (> 2, else interference diverges).
    sigma2: noise power, in the same unit as the transmit power.
    p_t: transmit power; fading powers are exponential with mean p_t, i.e.
         rate gamma = 1/p_t.
    """

    alpha: float
    sigma2: float
    p_t: float = 1.0

    def __post_init__(self):
        if not self.alpha > 2:
            raise ParameterError("alpha must be > 2")
        if self.sigma2 < 0:
            raise ParameterError("sigma2 must be >= 0")
        if not self.p_t > 0:
            raise ParameterError("p_t must be > 0")

    @property
    def gamma(self) -> float:
        return 1.0 / self.p_t


@dataclass(frozen=True)
class CoverageCurve:
    """SINR thresholds (dB) with coverage probabilities and, for Monte Carlo
    curves, binomial standard errors (None for quadrature curves)."""

    beta_db: np.ndarray
    p_c: np.ndarray
    std_err: np.ndarray | None
    label: str

    def __post_init__(self):
        beta = np.asarray(self.beta_db, dtype=float)
        p = np.asarray(self.p_c, dtype=float)
        if beta.ndim != 1 or beta.shape != p.shape or len(beta) == 0:
            raise ParameterError("beta_db and p_c must be equal-length 1-D arrays")
        if not np.all(np.diff(beta) > 0):
            raise ParameterError("beta_db must be strictly increasing")
        if np.any(p < 0) or np.any(p > 1):
            raise ParameterError("coverage probabilities must lie in [0, 1]")
        se = self.std_err
        if se is not None:
            se = np.asarray(se, dtype=float)
            if se.shape != beta.shape:
                raise ParameterError("std_err must match beta_db in length")
            se.setflags(write=False)
        for arr in (beta, p):
            arr.setflags(write=False)
        object.__setattr__(self, "beta_db", beta)
        object.__setattr__(self, "p_c", p)
        object.__setattr__(self, "std_err", se)

    def __len__(self) -> int:
        return len(self.beta_db)


def beta_db_to_linear(beta_db) -> np.ndarray:
    return 10.0 ** (np.asarray(beta_db, dtype=float) / 10.0)


def sinr_linear(serving_fade: float, interferer_fades: np.ndarray, r: float,
                interferer_distances: np.ndarray, ch: ChannelParams) -> float:
    """SINR from normalized (unit-mean) fade draws.

    Works in units of the transmit power: the numerator fade has mean 1 and
    the noise enters as sigma2 / p_t, so scaling {p_t, sigma2} by a common
    factor leaves the result unchanged.
    """
    r = max(r, R_MIN_KM)
    interference = float(np.dot(interferer_fades,
                                np.maximum(interferer_distances, R_MIN_KM) ** -ch.alpha))
    denom = ch.sigma2 / ch.p_t + interference
    num = serving_fade * r ** -ch.alpha
    if denom == 0.0:
        return math.inf
    return num / denom


def _eval_trial_sinr(points: np.ndarray, window: Window, user: np.ndarray,
                     ch: ChannelParams, rng: np.random.Generator) -> tuple[float, bool]:
    """One SINR draw for a given deployment and user location.

    Returns (sinr, clamped) where clamped marks a serving distance below the
    R_MIN_KM floor. Fade draw order: serving first, then one per station.
    """
    if len(points) == 0:
        raise DataError("deployment has no stations")
    dist = window.distances(user, points)
    k = int(np.argmin(dist))
    r = float(dist[k])
    clamped = r < R_MIN_KM
    serving_fade = rng.standard_exponential()
    fades = rng.standard_exponential(len(points))
    others = np.delete(dist, k)
    sinr = sinr_linear(serving_fade, np.delete(fades, k), r, others, ch)
    return sinr, clamped


def sinr_sample(user, bs: PointSet, ch: ChannelParams, rng: np.random.Generator) -> float:
    """Single SINR sample for a user at a fixed location: nearest-station
    association, Rayleigh fades with mean power p_t on every link."""
    sinr, _ = _eval_trial_sinr(bs.points, bs.window, np.asarray(user, dtype=float),
                               ch, rng)
    return sinr


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))


def _count_chunk(source, ch: ChannelParams, beta_lin: np.ndarray, seed: int,
                 lo: int, hi: int) -> tuple[np.ndarray, int]:
    """Score trials [lo, hi): per-threshold success counts plus clamp count.

    Each trial draws from its own generator stream keyed by (seed, index), so
    the reduction is independent of chunking and execution order.
    """
    window = source.window
    xmin, xmax, ymin, ymax = window.interior_bounds()
    counts = np.zeros(len(beta_lin), dtype=np.int64)
    clamped = 0
    for trial in range(lo, hi):
        rng = _trial_rng(seed, trial)
        pts = source.points_for_trial(rng)
        user = np.array([rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)])
        sinr, was_clamped = _eval_trial_sinr(pts, window, user, ch, rng)
        clamped += was_clamped
        counts += sinr >= beta_lin
    return counts, clamped


def simulate_coverage(source, ch: ChannelParams, beta_db: Sequence[float],
                      n_trials: int, seed: int, threads: int = 0,
                      label: str | None = None) -> CoverageCurve:
    """Monte Carlo coverage curve P[SINR >= beta] for a deployment source.

    `source` is one of the pointprocess sources (PppSource, MhcSource,
    FixedSource) or a PointSet (treated as fixed). `threads` caps worker
    processes (0 = auto, 1 = in-process). Results are reproducible for a
    given seed regardless of threads.
    """
    if isinstance(source, PointSet):
        from .pointprocess import FixedSource
        source = FixedSource(source)
    if n_trials < 1:
        raise ParameterError("n_trials must be >= 1")
    seed = _check_seed(seed)
    beta_db = np.asarray(list(beta_db), dtype=float)
    if beta_db.size == 0:
        raise ParameterError("beta_db grid must be nonempty")
    if not np.all(np.diff(beta_db) > 0):
        raise ParameterError("beta_db must be strictly increasing")
    beta_lin = beta_db_to_linear(beta_db)

    density = source.mean_density
    min_side = MIN_WINDOW_SPACINGS / math.sqrt(density) if density > 0 else 0.0
    if min(source.window.width, source.window.height) < min_side:
        warnings.warn(f"window {source.window.width:g}x{source.window.height:g} is "
                      f"narrower than {min_side:.1f} km (20 mean spacings); "
                      "interference truncation bias may exceed Monte Carlo noise",
                      stacklevel=2)

    workers = threads if threads > 0 else (os.cpu_count() or 1)
    if workers > 1 and n_trials >= 2000:
        n_chunks = min(workers * 4, max(1, n_trials // 500))
        edges = np.linspace(0, n_trials, n_chunks + 1, dtype=int)
        counts = np.zeros(len(beta_lin), dtype=np.int64)
        clamped = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_chunk, source, ch, beta_lin, seed, lo, hi)
                       for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
            for fut in futures:
                c, cl = fut.result()
                counts += c
                clamped += cl
    else:
        counts, clamped = _count_chunk(source, ch, beta_lin, seed, 0, n_trials)

    if clamped:
        warnings.warn(f"{clamped} of {n_trials} trials hit the {R_MIN_KM:g} km "
                      "serving-distance clamp", stacklevel=2)
    p = counts / n_trials
    se = np.sqrt(p * (1.0 - p) / n_trials)
    return CoverageCurve(beta_db, p, se, label or source.label)


class FitResult(NamedTuple):
    params: MhcParams
    error: float
    table: list[tuple[MhcParams, float]]


def fit_mhc(target: CoverageCurve, search: Sequence[MhcParams], ch: ChannelParams,
            n_trials: int, seed: int, window: Window | None = None,
            threads: int = 0) -> FitResult:
    """Exhaustive hardcore-parameter fit to a measured coverage curve.

    Simulates every candidate on the target's threshold grid with common
    random numbers and minimizes the mean squared vertical gap; ties break
    toward smaller hardcore distance. Candidates run on `window` or, by
    default, on a torus sized to each candidate's retained density.
    """
    candidates = list(search)
    if not candidates:
        raise ParameterError("search grid must be nonempty")
    table = []
    for cand in candidates:
        win = window if window is not None else _auto_window(cand)
        curve = simulate_coverage(MhcSource(cand, win), ch, target.beta_db,
                                  n_trials, seed, threads=threads)
        err = float(np.mean((curve.p_c - target.p_c) ** 2))
        table.append((cand, err))
    best, err = min(table, key=lambda item: (item[1], item[0].d, item[0].lambda_p))
    return FitResult(best, err, table)


def _auto_window(params: MhcParams) -> Window:
    from .analytics import mhc_density
    side = default_torus_side(mhc_density(params), params.d)
    return Window(side, side)
