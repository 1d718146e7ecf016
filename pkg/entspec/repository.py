from __future__ import annotations

import csv
import io
import logging
import os
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Literal, Optional

import numpy as np
import portalocker

from .config import HARD_MAX_N, settings
from .errors import OutputError, StateFormatError
from .models import SweepRecord, SweepResult
from .states import PureState

logger = logging.getLogger(__name__)

MAGIC = b"QSV1"
HEADER = np.dtype([("magic", "S4"), ("n", "<u4"), ("count", "<u8")])
AMPLITUDE = np.dtype("<c16")
LOAD_NORM_TOL = 1e-9
SWEEP_HEADER = ["mask_hex", "n_A", "purity", "participation"]

FileKind = Literal["qsv1", "text", "sweep"]


@dataclass
class FileRepository:
    """Locked reads and atomic (tmp + replace) writes under one timeout."""

    lock_timeout_s: float = settings.FILE_LOCK_TIMEOUT_S

    def read_bytes(self, path: Path) -> bytes:
        try:
            with portalocker.Lock(path, mode="rb", timeout=self.lock_timeout_s, flags=portalocker.LOCK_SH | portalocker.LOCK_NB) as f:
                return f.read()
        except (OSError, portalocker.LockException) as e:
            raise OutputError(f"cannot read {path}: {e}") from e

    def write_bytes(self, path: Path, data: bytes) -> None:
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with portalocker.Lock(tmp, mode="wb", timeout=self.lock_timeout_s) as f:
                f.write(data)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, path)
        except (OSError, portalocker.LockException) as e:
            tmp.unlink(missing_ok=True)
            raise OutputError(f"cannot write {path}: {e}") from e
        logger.debug("[WRITE] %s (%d bytes)", path, len(data))


repo = FileRepository()


def encode_state(state: PureState) -> bytes:
    header = np.array([(MAGIC, state.n, state.dim)], dtype=HEADER)
    return header.tobytes() + state.amplitudes.astype(AMPLITUDE).tobytes()


def _checked_norm(amps: np.ndarray, path: Optional[str]) -> None:
    if not np.all(np.isfinite(amps)):
        raise StateFormatError("amplitudes must be finite (no NaN or inf)", "normalization", path)
    norm = float(np.sqrt(np.vdot(amps, amps).real))
    if not abs(norm - 1.0) <= LOAD_NORM_TOL:
        raise StateFormatError(f"norm {norm:.12g} deviates from 1 by more than {LOAD_NORM_TOL:g}", "normalization", path)


def decode_state(data: bytes, path: Optional[str] = None) -> PureState:
    if len(data) < HEADER.itemsize:
        raise StateFormatError(f"file shorter than the {HEADER.itemsize}-byte header", "header", path)
    header = np.frombuffer(data, dtype=HEADER, count=1)[0]
    if bytes(header["magic"]) != MAGIC:
        raise StateFormatError("missing QSV1 magic bytes", "header", path)
    n, count = int(header["n"]), int(header["count"])
    if not 1 <= n <= HARD_MAX_N:
        raise StateFormatError(f"qubit count {n} outside [1, {HARD_MAX_N}]", "header", path)
    if count != 1 << n:
        raise StateFormatError(f"amplitude count {count} != 2^{n}", "length", path)
    body = len(data) - HEADER.itemsize
    if body != count * AMPLITUDE.itemsize:
        raise StateFormatError(
            f"payload holds {body / AMPLITUDE.itemsize:g} amplitudes, header claims {count}", "length", path
        )
    amps = np.frombuffer(data, dtype=AMPLITUDE, offset=HEADER.itemsize).astype(np.complex128)
    _checked_norm(amps, path)
    return PureState.from_amplitudes(amps, norm_tol=LOAD_NORM_TOL)


def decode_text_state(text: str, path: Optional[str] = None) -> PureState:
    """`n=<n>` followed by `index,re,im` lines for the nonzero amplitudes."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise StateFormatError("first line must be n=<qubits>", "header", path)
    try:
        n = int(lines[0][2:])
    except ValueError as e:
        raise StateFormatError(f"bad header {lines[0]!r}", "header", path) from e
    if not 1 <= n <= HARD_MAX_N:
        raise StateFormatError(f"qubit count {n} outside [1, {HARD_MAX_N}]", "header", path)

    amps = np.zeros(1 << n, dtype=np.complex128)
    seen: set[int] = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = [p.strip() for p in ln.split(",")]
        try:
            if len(parts) != 3:
                raise ValueError(f"expected 3 fields, got {len(parts)}")
            k, re_part, im_part = int(parts[0]), float(parts[1]), float(parts[2])
        except ValueError as e:
            raise StateFormatError(f"line {lineno}: {e}", "syntax", path) from e
        if not 0 <= k < (1 << n):
            raise StateFormatError(f"line {lineno}: index {k} outside [0, 2^{n})", "length", path)
        if k in seen:
            raise StateFormatError(f"line {lineno}: duplicate index {k}", "syntax", path)
        seen.add(k)
        amps[k] = complex(re_part, im_part)

    _checked_norm(amps, path)
    return PureState.from_amplitudes(amps, norm_tol=LOAD_NORM_TOL)


def detect_kind(data: bytes) -> FileKind:
    if data.startswith(MAGIC):
        return "qsv1"
    head = data[:64].lstrip()
    if head.startswith(b"mask_hex"):
        return "sweep"
    return "text"


def save_state(state: PureState, destination: Path) -> None:
    repo.write_bytes(Path(destination), encode_state(state))


def load_state(source: Path) -> PureState:
    data = repo.read_bytes(Path(source))
    return parse_state(data, str(source))


def parse_state(data: bytes, path: Optional[str] = None) -> PureState:
    kind = detect_kind(data)
    if kind == "qsv1":
        return decode_state(data, path)
    if kind == "sweep":
        raise StateFormatError("this is a sweep CSV, not a state file", "header", path)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise StateFormatError("neither QSV1 binary nor UTF-8 text", "header", path) from e
    return decode_text_state(text, path)


def _infer_n(n_a: int, rows: int, path: Optional[str]) -> int:
    for n in (2 * n_a, 2 * n_a + 1):
        if n >= 2 and comb(n, n_a) == rows:
            return n
    raise StateFormatError(f"{rows} rows is not a full balanced sweep with n_A={n_a}", "length", path)


def parse_sweep_csv(data: bytes, path: Optional[str] = None) -> SweepResult:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise StateFormatError(f"sweep CSV is not UTF-8 text: {e}", "syntax", path) from e
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != SWEEP_HEADER:
        raise StateFormatError(f"expected header {','.join(SWEEP_HEADER)}", "header", path)

    records: list[SweepRecord] = []
    n_a: Optional[int] = None
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            mask, row_na = int(row[0], 16), int(row[1])
            records.append(SweepRecord(mask=mask, purity=float(row[2]), participation=float(row[3])))
        except (ValueError, IndexError) as e:
            raise StateFormatError(f"line {lineno}: {e}", "syntax", path) from e
        if n_a is None:
            n_a = row_na
        elif row_na != n_a:
            raise StateFormatError(f"line {lineno}: n_A={row_na} differs from {n_a}", "syntax", path)
    if n_a is None:
        raise StateFormatError("sweep has no rows", "length", path)

    n = _infer_n(n_a, len(records), path)
    return SweepResult(n=n, n_A=n_a, records=records)


def load_sweep_csv(source: Path) -> SweepResult:
    return parse_sweep_csv(repo.read_bytes(Path(source)), str(source))
