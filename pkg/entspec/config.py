from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
import os
from dotenv import load_dotenv

# .env next to the package root (the repository checkout)
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

# 2^24 complex128 amplitudes = 256 MiB
HARD_MAX_N = 24


def _env(key: str, default: str = "") -> str:
    return os.getenv(key, default)


def _override_cap() -> str:
    return _env("ENTSPEC_MAX_N", "")


@dataclass(frozen=True)
class Settings:
    MAX_N_OVERRIDE: str = field(default_factory=_override_cap)

    SWEEP_MAX_N: int = field(default_factory=lambda: int(_env("ENTSPEC_SWEEP_MAX_N", "16")))
    GEN_MAX_N: int = field(default_factory=lambda: int(_env("ENTSPEC_GEN_MAX_N", str(HARD_MAX_N))))
    ORACLE_MAX_N: int = field(default_factory=lambda: int(_env("ENTSPEC_ORACLE_MAX_N", "12")))

    DEFAULT_BINS: int = field(default_factory=lambda: int(_env("ENTSPEC_DEFAULT_BINS", "40")))
    DEFAULT_SAMPLES: int = field(default_factory=lambda: int(_env("ENTSPEC_DEFAULT_SAMPLES", "20")))

    # 0 means one worker per available CPU
    THREADS: int = field(default_factory=lambda: int(_env("ENTSPEC_THREADS", "0")))

    FILE_LOCK_TIMEOUT_S: float = field(default_factory=lambda: float(_env("ENTSPEC_FILE_LOCK_TIMEOUT_S", "10")))
    LOG_LEVEL: str = field(default_factory=lambda: _env("ENTSPEC_LOG_LEVEL", "WARNING"))

    def __post_init__(self) -> None:
        if self.MAX_N_OVERRIDE.strip():
            cap = int(self.MAX_N_OVERRIDE)
            object.__setattr__(self, "SWEEP_MAX_N", cap)
            object.__setattr__(self, "GEN_MAX_N", cap)
        object.__setattr__(self, "GEN_MAX_N", min(self.GEN_MAX_N, HARD_MAX_N))

    def worker_count(self, requested: int | None = None) -> int:
        threads = self.THREADS if requested is None else requested
        if threads <= 0:
            return os.cpu_count() or 1
        return threads


settings = Settings()
