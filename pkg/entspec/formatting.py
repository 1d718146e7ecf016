from __future__ import annotations

from typing import Optional

from .models import TableReport


def mask_hex(mask: int, n: int) -> str:
    digits = -(-n // 4)
    return f"0x{mask:0{digits}X}"


def fmt17(value: float) -> str:
    return f"{value:.17g}"


def short_float(value: float, digits: int = 6) -> str:
    return f"{value:.{digits}g}"


def relative_gap(measured: float, printed: Optional[float]) -> Optional[float]:
    if printed is None or printed == 0:
        return None
    return (measured - printed) / printed


def render_table_diff(report: TableReport, printed: dict[int, dict[str, float]]) -> str:
    """Side-by-side measured / printed columns with relative deviation in percent."""
    columns = ("ghz", "w", "cluster", "random")
    head = f"{'n':>3} | " + " | ".join(f"{c:^28}" for c in columns)
    sub = f"{'':>3} | " + " | ".join(f"{'ours':>9} {'printed':>9} {'dev%':>7}" for _ in columns)
    lines = [
        f"mean N_AB over balanced bipartitions (cluster topology: {report.topology}, "
        f"random: {report.samples} samples, seed {report.seed})",
        head,
        sub,
        "-" * len(sub),
    ]
    for row in report.rows:
        ref = printed.get(row.n, {})
        cells = []
        for c in columns:
            ours = getattr(row, c)
            theirs = ref.get(c)
            gap = relative_gap(ours, theirs)
            theirs_s = f"{theirs:>9.4g}" if theirs is not None else f"{'-':>9}"
            gap_s = f"{100 * gap:>+7.2f}" if gap is not None else f"{'-':>7}"
            cells.append(f"{ours:>9.4f} {theirs_s} {gap_s}")
        lines.append(f"{row.n:>3} | " + " | ".join(cells))
    return "\n".join(lines) + "\n"
