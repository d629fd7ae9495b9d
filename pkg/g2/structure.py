# =============================================================================
# g2/structure.py
# =============================================================================
# 🎯 Purpose:
# The flat model G2-structure on R^7 in an adapted frame, and the symmetric
# 2-tensors (metrics, Ricci tensors, deformations h) that the G2 maps act on.
#
# ✅ Includes:
# - G2Structure: φ, ψ = ⋆φ, vol, the ε table and the identity metric
# - SymTensor2: exact-symmetric matrices with trace / trace-free split
#
# ❌ Does not include:
# - Torsion or curvature (see liegeom/)
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass, field     # Frozen value types
from functools import lru_cache              # One model structure per scalar mode
from typing import Sequence

import numpy as np

from exterior.forms import KForm, Vector, hodge
from exterior.plane import OrientedPlane
from exterior.scalar import ScalarMode, Scalar, combine, is_zero, to_scalar, zero
from models.errors import ContractViolation, InternalInconsistencyError, NotSymmetricError

logger = logging.getLogger(__name__)

# φ = 123 + 1(45+67) + 2(46−57) − 3(47+56)
MODEL_PHI_TERMS = {
    "123": 1,
    "145": 1, "167": 1,
    "246": 1, "257": -1,
    "347": -1, "356": -1,
}

# ψ = 4567 + 23(45+67) − 13(46−57) − 12(47+56)
MODEL_PSI_TERMS = {
    "4567": 1,
    "2345": 1, "2367": 1,
    "1346": -1, "1357": 1,
    "1247": -1, "1256": -1,
}


# -----------------------------------------------------------------------------
# 🧮 SymTensor2
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SymTensor2:
    """A symmetric bilinear form h = Σ h_ij e^i ⊗ e^j on R^dim."""

    entries: tuple[tuple[Scalar, ...], ...]
    mode: ScalarMode = ScalarMode.EXACT
    tolerance: float | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(x, self.mode) for x in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ContractViolation("symmetric tensor needs a square, non-empty matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if not is_zero(rows[i][j] - rows[j][i], self.tolerance):
                    raise NotSymmetricError(f"h[{i + 1}][{j + 1}] = {rows[i][j]} but h[{j + 1}][{i + 1}] = {rows[j][i]}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence], mode: ScalarMode = ScalarMode.EXACT) -> SymTensor2:
        return cls(tuple(tuple(row) for row in rows), mode)

    @classmethod
    def zero(cls, dim: int = 7, mode: ScalarMode = ScalarMode.EXACT) -> SymTensor2:
        return cls(tuple((0,) * dim for _ in range(dim)), mode)

    @classmethod
    def identity(cls, dim: int = 7, mode: ScalarMode = ScalarMode.EXACT) -> SymTensor2:
        return cls.diagonal([1] * dim, mode)

    @classmethod
    def diagonal(cls, values: Sequence, mode: ScalarMode = ScalarMode.EXACT) -> SymTensor2:
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)), mode)

    @classmethod
    def elementary(cls, i: int, j: int, dim: int = 7, mode: ScalarMode = ScalarMode.EXACT) -> SymTensor2:
        """e^i ⊗ e^j + e^j ⊗ e^i (or e^i ⊗ e^i when i == j), 1-based."""
        rows = [[0] * dim for _ in range(dim)]
        rows[i - 1][j - 1] = 1
        rows[j - 1][i - 1] = 1
        return cls.of(rows, mode)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def __call__(self, u: Vector, v: Vector) -> Scalar:
        mode = combine(self.mode, u.mode, v.mode)
        acc = zero(mode)
        for i in range(self.dim):
            if u[i] == 0:
                continue
            for j in range(self.dim):
                acc += u[i] * self.entries[i][j] * v[j]
        return acc

    def __add__(self, other: SymTensor2) -> SymTensor2:
        _check_same(self, other)
        mode = combine(self.mode, other.mode)
        return SymTensor2(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), mode
        )

    def __sub__(self, other: SymTensor2) -> SymTensor2:
        return self + other * -1

    def __mul__(self, scalar) -> SymTensor2:
        mode = combine(self.mode, ScalarMode.FLOAT if isinstance(scalar, float) else ScalarMode.EXACT)
        return SymTensor2(tuple(tuple(a * scalar for a in row) for row in self.entries), mode)

    __rmul__ = __mul__

    def trace(self) -> Scalar:
        return sum((self.entries[i][i] for i in range(self.dim)), zero(self.mode))

    def trace_free(self) -> SymTensor2:
        """h₀ = h − (tr h / n) g."""
        return self - SymTensor2.identity(self.dim, self.mode) * (self.trace() * to_scalar(f"1/{self.dim}", self.mode))

    def trace_on(self, plane: OrientedPlane) -> Scalar:
        """tr(h restricted to the plane), summed over its orthonormal basis."""
        return sum((self(u, u) for u in plane.onb), zero(combine(self.mode, plane.mode)))

    def is_zero(self, tolerance: float | None = None) -> bool:
        return all(is_zero(x, tolerance) for row in self.entries for x in row)

    def max_abs(self) -> float:
        return max(abs(float(x)) for row in self.entries for x in row)

    def as_mode(self, mode: ScalarMode) -> SymTensor2:
        return SymTensor2(self.entries, mode)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)


def _check_same(a: SymTensor2, b: SymTensor2):
    if a.dim != b.dim:
        raise ContractViolation(f"symmetric tensors of size {a.dim} and {b.dim}")


# -----------------------------------------------------------------------------
# 🔷 G2Structure
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class G2Structure:
    """The model G2-structure on R^7 in an adapted orthonormal frame."""

    phi: KForm
    psi: KForm
    volume: KForm
    metric: SymTensor2
    eps: tuple                      # eps[i][j][k] = φ(e_i, e_j, e_k), 0-based

    @property
    def mode(self) -> ScalarMode:
        return self.phi.mode

    @classmethod
    def model(cls, mode: ScalarMode = ScalarMode.EXACT) -> G2Structure:
        return _model(ScalarMode(mode))


@lru_cache(maxsize=None)
def _model(mode: ScalarMode) -> G2Structure:
    phi = KForm.from_terms(7, MODEL_PHI_TERMS, mode)
    psi = KForm.from_terms(7, MODEL_PSI_TERMS, mode)
    if hodge(phi) != psi:
        raise InternalInconsistencyError("⋆φ does not reproduce the model ψ")
    eps = tuple(
        tuple(tuple(phi.coefficient((i, j, k)) for k in range(7)) for j in range(7))
        for i in range(7)
    )
    logger.debug(f"built model G2 structure in {mode.value} mode")
    return G2Structure(
        phi=phi,
        psi=psi,
        volume=KForm.volume(7, mode),
        metric=SymTensor2.identity(7, mode),
        eps=eps,
    )


def model_for(*modes: ScalarMode) -> G2Structure:
    """The model structure in the combined mode of the operands."""
    return G2Structure.model(combine(*modes))
