# =============================================================================
# models/report.py
# =============================================================================
# 🎯 Purpose:
# Machine-readable results: one CheckReport per executed check and the
# RunReport envelope the CLI writes as JSON.
#
# ✅ Includes:
# - CheckStatus: pass / fail / skip
# - CheckReport: residual, tolerance, trials and the identity the check verifies
# - RunReport: versioned envelope (schema 1), deterministic JSON rendering
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

import json
from enum import Enum                            # Fixed status values
from typing import Any, Literal

from pydantic import BaseModel, Field            # Structured reports

from models.errors import ErrorDetail

SCHEMA_VERSION = 1


# -----------------------------------------------------------------------------
# ✅ Check results
# -----------------------------------------------------------------------------

class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class CheckReport(BaseModel):
    check_id: str                                # e.g. "hl-identity"
    paper_anchor: str                            # The identity being checked, see the README check index
    status: CheckStatus
    max_residual: float                          # Largest residual over all trials
    tolerance: float                             # Threshold the residual was compared against
    trials: int
    mode: Literal["exact", "float"]
    elapsed_ms: float | None = None              # Only with --timings
    details: dict[str, Any] | None = None        # Check-specific measurements
    error: ErrorDetail | None = None             # Set when the check aborted


# -----------------------------------------------------------------------------
# 📦 Run envelope
# -----------------------------------------------------------------------------

class RunReport(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    command: str                                 # verify / liealg / search / variations
    seed: int
    mode: Literal["exact", "float"]
    passed: bool
    checks: list[CheckReport] = Field(default_factory=list)
    summary: dict[str, Any] | None = None        # Command-specific payload
    error: ErrorDetail | None = None

    def to_json(self) -> str:
        """Stable rendering: no timestamps, fixed key order, checks sorted by id."""
        ordered = self.model_copy(update={"checks": sorted(self.checks, key=lambda c: c.check_id)})
        return json.dumps(ordered.model_dump(mode="json", by_alias=True, exclude_none=True), indent=2) + "\n"
