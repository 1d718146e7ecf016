from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence

from .formatting import fmt17, mask_hex
from .models import AnalyticParams, EmpiricalStats, HistogramBin, ScalingRow, SweepResult, TableReport
from .repository import SWEEP_HEADER


def _csv_bytes(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def make_sweep_csv_bytes(s: SweepResult) -> bytes:
    return _csv_bytes(
        SWEEP_HEADER,
        ([mask_hex(r.mask, s.n), s.n_A, fmt17(r.purity), fmt17(r.participation)] for r in s.records),
    )


def stats_payload(n: int, stats: EmpiricalStats, params: AnalyticParams) -> dict[str, Any]:
    return {
        "n": n,
        "n_p": stats.n_p,
        "mean_participation": stats.mean_participation,
        "std_participation": stats.std_participation,
        "mean_purity": stats.mean_purity,
        "min": stats.min_participation,
        "max": stats.max_participation,
        "alpha": params.alpha,
        "mu_exact": params.mu_exact,
        "mu_asymptotic": params.mu_asymptotic,
        "sigma_pi2": params.sigma_pi2,
        "sigma_N": params.sigma_N,
        "mean_entangled_qubits": stats.mean_entangled_qubits,
    }


def make_json_bytes(payload: dict[str, Any]) -> bytes:
    return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def make_histogram_csv_bytes(bins: Sequence[HistogramBin]) -> bytes:
    return _csv_bytes(
        ["bin_lower", "bin_upper", "count"],
        ([fmt17(b.bin_lower), fmt17(b.bin_upper), b.count] for b in bins),
    )


def make_density_csv_bytes(table: Sequence[tuple[float, float]]) -> bytes:
    return _csv_bytes(["x", "density"], ([fmt17(x), fmt17(y)] for x, y in table))


def make_table_csv_bytes(report: TableReport) -> bytes:
    return _csv_bytes(
        ["n", "ghz", "w", "cluster", "random"],
        ([r.n, fmt17(r.ghz), fmt17(r.w), fmt17(r.cluster), fmt17(r.random)] for r in report.rows),
    )


def make_scaling_csv_bytes(rows: Sequence[ScalingRow]) -> bytes:
    return _csv_bytes(
        ["n", "family", "mean", "std", "ratio", "sigma_N"],
        ([r.n, r.family, fmt17(r.mean), fmt17(r.std), fmt17(r.ratio), fmt17(r.sigma_N)] for r in rows),
    )
