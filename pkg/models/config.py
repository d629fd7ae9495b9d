# =============================================================================
# models/config.py
# =============================================================================
# 🎯 Purpose:
# Run configuration for the CLI: environment defaults loaded through
# python-dotenv and the validated RunConfig model built from flags.
#
# ✅ Includes:
# - Module constants read from the environment (or a local .env file)
# - RunConfig: seed, trials, tolerance overrides, scalar mode, output, suites
# - parse_tolerance_overrides: "check=value" strings → mapping
#
# ❌ Does not include:
# - Command-line parsing (see app/cmd/cmd.py)
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

import os                                    # Environment variables
from pathlib import Path                     # Output locations
from typing import Iterable

from dotenv import load_dotenv               # Reads .env into the environment
from pydantic import BaseModel, Field        # Validated configuration

from exterior.scalar import ScalarMode

# -----------------------------------------------------------------------------
# 🌱 Environment
# -----------------------------------------------------------------------------

load_dotenv()

THREADS = int(os.getenv("G2LAB_THREADS", "1"))                       # Worker pool cap
LOG_LEVEL = os.getenv("G2LAB_LOG_LEVEL", "INFO")                     # Root log level for the CLI
DEFAULT_SEED = int(os.getenv("G2LAB_DEFAULT_SEED", "0"))             # Seed when --seed is absent
FLOAT_TOLERANCE = float(os.getenv("G2LAB_FLOAT_TOLERANCE", "1e-10")) # Algebraic residues in float mode


# -----------------------------------------------------------------------------
# ⚙️ RunConfig
# -----------------------------------------------------------------------------

class RunConfig(BaseModel):
    seed: int = DEFAULT_SEED                                  # Determines every randomized input
    trials: int | None = Field(default=None, ge=1)            # None → each check's own default
    tolerances: dict[str, float] = Field(default_factory=dict)  # Per-check overrides
    mode: ScalarMode = ScalarMode.EXACT
    out: Path | None = None                                   # Report path; stdout when absent
    suites: list[str] = Field(default_factory=list)           # Check ids or groups; empty → defaults
    threads: int = Field(default=max(1, THREADS), ge=1)
    timings: bool = False                                     # Include elapsed_ms in reports

    def tolerance_for(self, check_id: str, float_default: float | None = None, numeric: bool = False) -> float:
        """Tolerance a check's residual is compared against.

        Overrides win. Exact-mode algebraic checks compare against 0; numeric
        checks and float mode use the check's default or FLOAT_TOLERANCE.
        """
        if check_id in self.tolerances:
            return self.tolerances[check_id]
        if self.mode == ScalarMode.EXACT and not numeric:
            return 0.0
        return float_default if float_default is not None else FLOAT_TOLERANCE


def parse_tolerance_overrides(items: Iterable[str]) -> dict[str, float]:
    """Parse ``["hl-identity=1e-30", ...]``.

    Raises:
        ValueError: on a malformed item or a negative value.
    """
    out: dict[str, float] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ValueError(f"expected <check>=<value>, got '{item}'")
        try:
            tol = float(value)
        except ValueError:
            raise ValueError(f"tolerance for '{name}' is not a number: '{value}'") from None
        if tol < 0:
            raise ValueError(f"tolerance for '{name}' must be non-negative")
        out[name.strip()] = tol
    return out
