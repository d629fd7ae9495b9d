# =============================================================================
# models/errors.py
# =============================================================================
# 🎯 Purpose:
# Every exception the library raises, plus the pydantic error envelope that
# the CLI embeds in a report when a command aborts.
#
# ✅ Includes:
# - G2LabError, the root of the hierarchy
# - Contract, geometry and input-format errors raised by the library layers
# - ErrorDetail / InternalError, structured error objects for JSON reports
#
# ❌ Does not include:
# - Exit-code handling (that lives in app/cmd/cmd.py)
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from typing import Any                     # Free-form payload attached to an error
from pydantic import BaseModel             # Structured error envelope


# -----------------------------------------------------------------------------
# 🧱 Exception hierarchy
# -----------------------------------------------------------------------------

class G2LabError(Exception):
    """Root of every error raised by g2lab."""
    pass


class ContractViolation(G2LabError, ValueError):
    """Raised when an operation receives inputs of the wrong dimension, degree or mode."""
    pass


class DegeneratePlaneError(G2LabError):
    """Raised when a plane's spanning vectors are linearly dependent."""
    pass


class NotAG2FormError(G2LabError):
    """Raised when a 3-form does not induce a definite metric."""
    pass


class NotSymmetricError(ContractViolation):
    """Raised when a 2-tensor expected to be symmetric is not."""
    pass


class NotInLambda214Error(ContractViolation):
    """Raised when a torsion form has a nonzero component in the 7-dimensional summand."""
    pass


class NotNormalError(ContractViolation):
    """Raised when a vector expected to be normal to a plane has a tangential component."""
    pass


class NotIdealError(G2LabError):
    """Raised when the vertical subspace of a submersion split is not a Lie ideal."""
    pass


class NotCoassociativeError(G2LabError):
    """Raised when a 4-dimensional subspace is not coassociative."""
    pass


class InternalInconsistencyError(G2LabError):
    """Raised when a quantity that is guaranteed to vanish does not: this signals a bug."""
    pass


class StructureConstantsParseError(G2LabError):
    """Raised when a structure-constants file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class JacobiError(G2LabError):
    """Raised when structure constants violate the Jacobi identity."""

    def __init__(self, triple: tuple[int, int, int], residual: Any):
        self.triple = triple
        self.residual = residual
        i, j, k = (n + 1 for n in triple)
        super().__init__(f"Jacobi identity fails on (e{i}, e{j}, e{k}): residual {residual}")


class ClosedG2Rejection(G2LabError):
    """Raised when the model 3-form is not closed for a given Lie algebra."""

    def __init__(self, dphi: Any):
        self.dphi = dphi
        super().__init__(f"d(phi) != 0: {dphi}")


class PreconditionRefused(G2LabError):
    """Raised when a numeric check refuses to run because its hypotheses fail."""

    def __init__(self, message: str, measured: float | None = None):
        self.measured = measured
        suffix = f" (measured {measured:.3e})" if measured is not None else ""
        super().__init__(f"{message}{suffix}")


class UnknownFamilyError(G2LabError):
    """Raised when an immersion family name is not in the registry."""

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = known
        super().__init__(f"unknown family '{name}'; registry: {', '.join(known)}")


class UnknownSuiteError(G2LabError):
    """Raised when a --suite name is neither a check id nor a group."""

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = known
        super().__init__(f"unknown suite '{name}'; registry: {', '.join(known)}")


# -----------------------------------------------------------------------------
# 📦 Error envelope for reports
# -----------------------------------------------------------------------------

class ErrorDetail(BaseModel):
    code: int                    # 1 check failure, 2 usage/config, 3 input rejected, -32603 internal
    message: str                 # Human-readable description
    data: Any | None = None      # Optional context (offending line, triple, measured value)


class InternalError(ErrorDetail):
    code: int = -32603
    message: str = "Internal error"
    data: Any | None = None


def error_detail_from(exc: Exception) -> ErrorDetail:
    """Map a library exception to the envelope stored in a report."""
    if isinstance(exc, StructureConstantsParseError):
        return ErrorDetail(code=3, message=str(exc), data={"line": exc.line})
    if isinstance(exc, JacobiError):
        return ErrorDetail(code=3, message=str(exc), data={"triple": [n + 1 for n in exc.triple]})
    if isinstance(exc, PreconditionRefused):
        return ErrorDetail(code=3, message=str(exc), data={"measured": exc.measured})
    if isinstance(exc, InternalInconsistencyError):
        return InternalError(data=str(exc))
    if isinstance(exc, G2LabError):
        return ErrorDetail(code=3, message=str(exc))
    return InternalError(data=repr(exc))
