from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Optional

from .config import Settings
from .distribution import (
    analytic_params,
    compare_to_analytic,
    density_mass,
    density_table,
    empirical_stats,
    histogram,
    scaling,
    sweep,
)
from .errors import CapExceededError, InvalidArgumentError
from .export import (
    make_density_csv_bytes,
    make_histogram_csv_bytes,
    make_json_bytes,
    make_scaling_csv_bytes,
    make_sweep_csv_bytes,
    make_table_csv_bytes,
    stats_payload,
)
from .formatting import render_table_diff, short_float
from .models import CommandConfig, RunResult, SweepResult
from .reference import PRINTED, SOURCE, crossover_n, reproduce_table
from .repository import detect_kind, parse_state, parse_sweep_csv, repo, save_state
from .states import make_state

logger = logging.getLogger(__name__)

Handler = Callable[[CommandConfig, Settings], RunResult]


def _require(value: Optional[object], flag: str, command: str) -> None:
    if value is None:
        raise InvalidArgumentError(f"{command}: {flag} is required")


def _emit(data: bytes, output: Optional[Path], result: RunResult, summary_line: str) -> RunResult:
    """Write to `output`, or hand the payload back for stdout when no path was given."""
    if output is None:
        result.message = data.decode("utf-8").rstrip("\n")
        result.notice = summary_line
        return result
    repo.write_bytes(output, data)
    result.outputs.append(str(output))
    result.message = summary_line
    return result


def _sweep_input(config: CommandConfig, settings: Settings) -> SweepResult:
    """Sweep of a state file, or a previously written sweep CSV taken as is."""
    _require(config.input, "input path", config.command)
    data = repo.read_bytes(config.input)
    if detect_kind(data) == "sweep":
        result = parse_sweep_csv(data, str(config.input))
    else:
        state = parse_state(data, str(config.input))
        result = sweep(state, threads=settings.worker_count(config.threads), cap=settings.SWEEP_MAX_N)
    if config.n is not None and config.n != result.n:
        raise InvalidArgumentError(f"--n {config.n} does not match the input's n={result.n}")
    return result


def cmd_gen(config: CommandConfig, settings: Settings) -> RunResult:
    _require(config.state_type, "--type", "gen")
    _require(config.n, "--n", "gen")
    _require(config.output, "-o/--output", "gen")
    if config.topology == "auto":
        raise InvalidArgumentError("gen: --topology must be chain or ring")

    state = make_state(
        config.state_type,
        config.n,
        seed=config.seed,
        topology=config.topology,
        index=config.index,
        cap=settings.GEN_MAX_N,
    )
    save_state(state, config.output)
    return RunResult(
        message=f"n={state.n} type={config.state_type} norm={state.norm():.15f} path={config.output}",
        outputs=[str(config.output)],
        summary={"n": state.n, "type": config.state_type, "norm": state.norm()},
    )


def cmd_sweep(config: CommandConfig, settings: Settings) -> RunResult:
    _require(config.input, "input path", "sweep")
    state = parse_state(repo.read_bytes(config.input), str(config.input))
    if config.n is not None and config.n != state.n:
        raise InvalidArgumentError(f"--n {config.n} does not match the state's n={state.n}")
    result = sweep(state, threads=settings.worker_count(config.threads), cap=settings.SWEEP_MAX_N)
    stats = empirical_stats(result)
    summary = {"n_p": stats.n_p, "mean": stats.mean_participation, "std": stats.std_participation}
    line = f"n_p={stats.n_p} mean={stats.mean_participation:.12g} std={stats.std_participation:.12g}"
    return _emit(make_sweep_csv_bytes(result), config.output, RunResult(message="", summary=summary), line)


def cmd_stats(config: CommandConfig, settings: Settings) -> RunResult:
    result = _sweep_input(config, settings)
    stats = empirical_stats(result)
    params = analytic_params(result.n)
    payload = stats_payload(result.n, stats, params)
    if result.n_p >= 2:
        gaps = compare_to_analytic(result, params, config.mu, settings.DEFAULT_BINS)
        logger.info("[STATS] mean_gap=%.4g std_gap=%.4g sup_gap=%.4g", gaps.mean_gap, gaps.std_gap, gaps.sup_gap)
    line = f"n={result.n} mean={stats.mean_participation:.12g} std={stats.std_participation:.12g}"
    return _emit(make_json_bytes(payload), config.output, RunResult(message="", summary=payload), line)


def cmd_density(config: CommandConfig, settings: Settings) -> RunResult:
    _require(config.n, "--n", "density")
    if config.n < 2:
        raise InvalidArgumentError(f"density: requires n >= 2, got n={config.n}")
    if config.n > settings.GEN_MAX_N:
        raise CapExceededError("density", config.n, settings.GEN_MAX_N)
    params = analytic_params(config.n)
    table = density_table(params, config.points, config.mu)
    summary: dict[str, float] = {"points": len(table)}
    line = f"n={config.n} points={len(table)} mu={config.mu}"
    if config.mass:
        summary["mass"] = density_mass(params, config.mu)
        line += f" mass={summary['mass']:.9f}"
    return _emit(make_density_csv_bytes(table), config.output, RunResult(message="", summary=summary), line)


def cmd_hist(config: CommandConfig, settings: Settings) -> RunResult:
    result = _sweep_input(config, settings)
    value_range = None
    if config.range_lower is not None or config.range_upper is not None:
        _require(config.range_lower, "--range LOWER", "hist")
        _require(config.range_upper, "--range UPPER", "hist")
        value_range = (config.range_lower, config.range_upper)
    bins = histogram(result, config.bins or settings.DEFAULT_BINS, value_range)
    total = sum(b.count for b in bins)
    line = f"bins={len(bins)} total={total} n_p={result.n_p}"
    return _emit(make_histogram_csv_bytes(bins), config.output, RunResult(message="", summary={"total": total}), line)


def cmd_table(config: CommandConfig, settings: Settings) -> RunResult:
    report = reproduce_table(
        config.nmin,
        config.nmax,
        topology=config.topology,
        samples=config.samples or settings.DEFAULT_SAMPLES,
        seed=config.seed,
        threads=settings.worker_count(config.threads),
        cap=settings.SWEEP_MAX_N,
    )
    text = render_table_diff(report, PRINTED)
    crossing = crossover_n(report.rows)
    text += f"random column exceeds cluster column from n={crossing}\n" if crossing else ""
    text += f"reference: {SOURCE}"

    outputs: list[str] = []
    if config.output is not None:
        repo.write_bytes(config.output, make_table_csv_bytes(report))
        outputs.append(str(config.output))
    return RunResult(
        message=text,
        outputs=outputs,
        summary={"topology": report.topology, "crossover_n": crossing, "rows": len(report.rows)},
    )


def cmd_scaling(config: CommandConfig, settings: Settings) -> RunResult:
    family = config.state_type or "random"
    if config.topology == "auto":
        raise InvalidArgumentError("scaling: --topology must be chain or ring")
    if config.nmax < config.nmin:
        raise InvalidArgumentError(f"scaling: need nmin <= nmax, got {config.nmin} > {config.nmax}")
    rows = scaling(
        family,
        list(range(config.nmin, config.nmax + 1)),
        samples=config.samples or settings.DEFAULT_SAMPLES,
        seed=config.seed,
        topology=config.topology,
        threads=settings.worker_count(config.threads),
        cap=settings.SWEEP_MAX_N,
    )
    line = " ".join(f"n={r.n}:ratio={short_float(r.ratio, 4)}" for r in rows)
    return _emit(make_scaling_csv_bytes(rows), config.output, RunResult(message="", summary={"rows": len(rows)}), line)


HANDLERS: dict[str, Handler] = {
    "gen": cmd_gen,
    "sweep": cmd_sweep,
    "stats": cmd_stats,
    "density": cmd_density,
    "hist": cmd_hist,
    "table": cmd_table,
    "scaling": cmd_scaling,
}
