from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from .bipartition import BipartitionMask, enumerate_balanced
from .config import settings
from .errors import CapExceededError, InvalidArgumentError
from .models import (
    AnalyticComparison,
    AnalyticParams,
    EmpiricalStats,
    HistogramBin,
    MuMode,
    ScalingRow,
    StateType,
    SweepRecord,
    SweepResult,
    Topology,
)
from .purity import BOUND_TOL, purity
from .states import PureState, derive_seeds, make_state

logger = logging.getLogger(__name__)

RANGE_CLAMP_TOL = 1e-9


@dataclass
class SweepTally:
    evaluated: int = 0
    chunks: int = 0
    elapsed_s: float = 0.0


class BipartitionSweeper:
    """Evaluates purity over a list of masks, optionally on a thread pool."""

    def __init__(self, state: PureState, threads: Optional[int] = None) -> None:
        self.state = state
        self.threads = settings.worker_count(threads)

    def sweep_one(self, b: BipartitionMask) -> SweepRecord:
        rec = purity(self.state, b)
        return SweepRecord(mask=b.mask, purity=rec.purity, participation=rec.participation)

    def sweep_chunk(self, masks: Sequence[BipartitionMask]) -> list[SweepRecord]:
        return [self.sweep_one(b) for b in masks]

    def sweep_many(self, masks: Sequence[BipartitionMask]) -> tuple[list[SweepRecord], SweepTally]:
        tally = SweepTally()
        started = time.perf_counter()

        workers = max(1, min(self.threads, len(masks)))
        if workers == 1:
            records = self.sweep_chunk(masks)
            tally.chunks = 1
        else:
            # contiguous chunks, reassembled by offset: order never depends on scheduling
            size = -(-len(masks) // (workers * 4))
            slots: list[Optional[list[SweepRecord]]] = [None] * (-(-len(masks) // size))
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {
                    pool.submit(self.sweep_chunk, masks[start:start + size]): start // size
                    for start in range(0, len(masks), size)
                }
                for fut in as_completed(futures):
                    slots[futures[fut]] = fut.result()
            records = [rec for chunk in slots if chunk is not None for rec in chunk]
            tally.chunks = len(slots)

        tally.evaluated = len(records)
        tally.elapsed_s = time.perf_counter() - started
        return records, tally


def sweep(state: PureState, threads: Optional[int] = None, cap: Optional[int] = None) -> SweepResult:
    limit = settings.SWEEP_MAX_N if cap is None else cap
    if state.n < 2:
        raise InvalidArgumentError(f"sweep requires n >= 2, got n={state.n}")
    if state.n > limit:
        raise CapExceededError("sweep", state.n, limit)

    masks = enumerate_balanced(state.n)
    sweeper = BipartitionSweeper(state, threads)
    records, tally = sweeper.sweep_many(masks)
    logger.info(
        "[SWEEP] n=%d masks=%d threads=%d chunks=%d elapsed=%.3fs",
        state.n, tally.evaluated, sweeper.threads, tally.chunks, tally.elapsed_s,
    )
    return SweepResult(n=state.n, n_A=state.n // 2, records=records)


def empirical_stats(s: SweepResult) -> EmpiricalStats:
    if s.n_p < 1:
        raise InvalidArgumentError("empirical_stats needs at least one record")
    values = s.participations()
    stats = EmpiricalStats(
        n_p=s.n_p,
        mean_participation=float(values.mean()),
        std_participation=float(values.std(ddof=0)),
        mean_purity=float(s.purities().mean()),
        min_participation=float(values.min()),
        max_participation=float(values.max()),
        mean_entangled_qubits=float(np.log2(values).mean()),
    )
    if stats.min_participation < 1.0 - BOUND_TOL or stats.max_participation > (1 << s.n_A) + BOUND_TOL:
        raise InvalidArgumentError(
            f"participation range [{stats.min_participation}, {stats.max_participation}] outside [1, {1 << s.n_A}]"
        )
    return stats


def analytic_params(n: int) -> AnalyticParams:
    if n < 2:
        raise InvalidArgumentError(f"analytic_params requires n >= 2, got n={n}")
    n_a = n // 2
    big_n = 1 << n
    big_na, big_nb = 1 << n_a, 1 << (n - n_a)
    alpha = 4.0 if n % 2 == 0 else 4.5
    return AnalyticParams(
        n=n,
        N=big_n,
        N_A=big_na,
        N_B=big_nb,
        alpha=alpha,
        mu_exact=(big_na + big_nb - 1) / big_n,
        mu_asymptotic=float(np.sqrt(alpha / big_n)),
        sigma_pi2=2.0 / big_n**2,
        sigma_N=float(np.sqrt(2.0)) / alpha,
    )


def analytic_width(p: AnalyticParams, mode: MuMode = "exact") -> float:
    """sigma_AB / mu_AB^2, the width of N_AB implied by the purity Gaussian."""
    mu = p.mu(mode)
    return float(np.sqrt(p.sigma_pi2)) / (mu * mu)


def _density_unchecked(x: np.ndarray, mu: float, var: float) -> np.ndarray:
    with np.errstate(over="ignore", divide="ignore"):
        inv = 1.0 / x
        log_p = -2.0 * np.log(x) - 0.5 * np.log(2.0 * np.pi * var) - (inv - mu) ** 2 / (2.0 * var)
        return np.exp(log_p)


def density(x: float | np.ndarray, p: AnalyticParams, mode: MuMode = "exact") -> float | np.ndarray:
    """Probability density of N_AB: a Gaussian in 1/N_AB carried over to N_AB."""
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(arr > 0.0):
        raise InvalidArgumentError("density is defined for x > 0 only")
    out = _density_unchecked(arr, p.mu(mode), p.sigma_pi2)
    return float(out) if out.ndim == 0 else out


def density_mass(
    p: AnalyticParams,
    mode: MuMode = "exact",
    lower: float = 0.0,
    upper: float = np.inf,
) -> float:
    """Integral of the density over (lower, upper) by adaptive quadrature."""
    if lower < 0.0 or upper <= lower:
        raise InvalidArgumentError(f"invalid integration interval ({lower}, {upper})")
    mu, var = p.mu(mode), p.sigma_pi2
    center = 1.0 / mu
    width = analytic_width(p, mode)

    # split around the peak so the adaptive rule cannot step over it
    cuts = [lower]
    for c in (max(center - 12.0 * width, center / 2.0), center, center + 12.0 * width):
        if lower < c < upper:
            cuts.append(c)
    cuts.append(upper)

    def f(t: float) -> float:
        return float(_density_unchecked(np.float64(t), mu, var))

    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        value, _err = integrate.quad(f, a, b, limit=200)
        total += value
    return total


def density_table(p: AnalyticParams, points: int, mode: MuMode = "exact") -> list[tuple[float, float]]:
    """`points` equally spaced x over (1, N_A], paired with the density."""
    if points < 1:
        raise InvalidArgumentError(f"points must be >= 1, got {points}")
    xs = 1.0 + (p.N_A - 1.0) * np.arange(1, points + 1) / points
    ys = np.atleast_1d(density(xs, p, mode))
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


def histogram(
    s: SweepResult,
    bin_count: Optional[int] = None,
    value_range: Optional[tuple[float, float]] = None,
) -> list[HistogramBin]:
    bins = settings.DEFAULT_BINS if bin_count is None else bin_count
    if bins < 1:
        raise InvalidArgumentError(f"bin_count must be >= 1, got {bins}")
    lo, hi = value_range if value_range is not None else (1.0, float(1 << s.n_A))
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise InvalidArgumentError(f"degenerate histogram range ({lo}, {hi})")

    values = s.participations()
    near = (values >= lo - RANGE_CLAMP_TOL) & (values <= hi + RANGE_CLAMP_TOL)
    dropped = int((~near).sum())
    if dropped:
        logger.warning("[HIST] %d of %d values outside (%g, %g) dropped", dropped, values.size, lo, hi)
    values = np.clip(values[near], lo, hi)

    # numpy bins are half-open [a, b) except the last, which is closed
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    return [
        HistogramBin(bin_lower=float(a), bin_upper=float(b), count=int(c))
        for a, b, c in zip(edges[:-1], edges[1:], counts)
    ]


def compare_to_analytic(
    s: SweepResult,
    p: AnalyticParams,
    mode: MuMode = "exact",
    bin_count: Optional[int] = None,
) -> AnalyticComparison:
    if s.n_p < 2:
        raise InvalidArgumentError("compare_to_analytic needs at least two records")
    stats = empirical_stats(s)
    target = 1.0 / p.mu(mode)

    bins = histogram(s, bin_count)
    width = bins[0].bin_upper - bins[0].bin_lower
    centers = np.array([(b.bin_lower + b.bin_upper) / 2.0 for b in bins])
    normalized = np.array([b.count for b in bins], dtype=np.float64) / (s.n_p * width)
    expected = np.atleast_1d(density(centers, p, mode))

    return AnalyticComparison(
        mu_mode=mode,
        mean_gap=abs(stats.mean_participation - target) / target,
        std_gap=abs(stats.std_participation - p.sigma_N) / p.sigma_N,
        sup_gap=float(np.max(np.abs(normalized - expected)) * width),
    )


def scaling(
    family: StateType,
    ns: Sequence[int],
    samples: int = 1,
    seed: int = 0,
    topology: Topology = "chain",
    threads: Optional[int] = None,
    cap: Optional[int] = None,
) -> list[ScalingRow]:
    """Mean, spread and spread/mean of N_AB per n, averaged over samples for random states."""
    rows: list[ScalingRow] = []
    seeds = derive_seeds(seed, samples if family == "random" else 1)
    for n in ns:
        means, stds, ratios = [], [], []
        for s in seeds:
            state = make_state(family, n, seed=s, topology=topology)
            stats = empirical_stats(sweep(state, threads=threads, cap=cap))
            means.append(stats.mean_participation)
            stds.append(stats.std_participation)
            ratios.append(stats.std_participation / stats.mean_participation)
        rows.append(
            ScalingRow(
                n=n,
                family=family,
                mean=float(np.mean(means)),
                std=float(np.mean(stds)),
                ratio=float(np.mean(ratios)),
                sigma_N=analytic_params(n).sigma_N,
            )
        )
        logger.info("[SCALING] family=%s n=%d mean=%.6g std=%.6g", family, n, rows[-1].mean, rows[-1].std)
    return rows
