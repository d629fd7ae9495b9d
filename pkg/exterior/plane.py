# =============================================================================
# exterior/plane.py
# =============================================================================
# 🎯 Purpose:
# Oriented k-planes in R^n and the pullback of forms along their inclusion.
#
# ✅ Includes:
# - OrientedPlane: spanning vectors plus an oriented orthonormal basis cache
# - Orthogonal complements with the complementary orientation
# - restrict(): pullback of a form to a KForm on R^k
#
# ❌ Does not include:
# - Curved submanifolds (see variations/geometry.py for sampled immersions)
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass, field     # Immutable plane with a derived cache
from typing import Sequence

from exterior.forms import KForm, Vector, evaluate, gram_determinant, multi_indices
from exterior.linalg import determinant, nullspace
from exterior.scalar import ScalarMode, combine, is_zero, sqrt
from models.errors import ContractViolation, DegeneratePlaneError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 📐 OrientedPlane
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class OrientedPlane:
    """The oriented span of ``basis`` inside R^``ambient_dim``.

    ``onb`` is the Gram–Schmidt orthonormalization of ``basis``; it spans the
    same subspace with the same orientation. In exact mode the norms met along
    the way must be rational squares, otherwise a ContractViolation asks for
    float mode.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]
    tolerance: float | None = None
    onb: tuple[Vector, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise ContractViolation("a plane needs at least one spanning vector")
        if len(basis) > self.ambient_dim:
            raise DegeneratePlaneError(f"{len(basis)} vectors cannot be independent in R^{self.ambient_dim}")
        for v in basis:
            if v.dim != self.ambient_dim:
                raise ContractViolation(f"spanning vector in R^{v.dim}, plane lives in R^{self.ambient_dim}")
        if is_zero(gram_determinant(list(basis)), self.tolerance):
            raise DegeneratePlaneError("spanning vectors are linearly dependent (Gram determinant 0)")
        object.__setattr__(self, "onb", _orthonormalize(basis, self.mode))

    # -------------------------------------------------------------------------
    # 🏗️ Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def of(cls, vectors: Sequence[Vector], tolerance: float | None = None) -> OrientedPlane:
        vectors = tuple(vectors)
        if not vectors:
            raise ContractViolation("a plane needs at least one spanning vector")
        return cls(vectors[0].dim, vectors, tolerance)

    @classmethod
    def coordinate(cls, dim: int, label: str, mode: ScalarMode = ScalarMode.EXACT) -> OrientedPlane:
        """Coordinate plane, e.g. ``coordinate(7, "4567")`` is span(e_4, ..., e_7)."""
        return cls(dim, tuple(Vector.e(int(ch), dim, mode) for ch in label))

    # -------------------------------------------------------------------------
    # 🔍 Queries
    # -------------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def mode(self) -> ScalarMode:
        return combine(*(v.mode for v in self.basis))

    def tangent_part(self, v: Vector) -> Vector:
        """Orthogonal projection of ``v`` onto the plane."""
        acc = Vector.zero(self.ambient_dim, combine(self.mode, v.mode))
        for u in self.onb:
            acc = acc + u * v.dot(u)
        return acc

    def normal_part(self, v: Vector) -> Vector:
        return v - self.tangent_part(v)

    def is_normal(self, v: Vector, tolerance: float | None = None) -> bool:
        return all(is_zero(v.dot(u), tolerance) for u in self.basis)

    def coordinates(self, v: Vector) -> list:
        """Components of ``v`` along ``onb`` (its tangential part only)."""
        return [v.dot(u) for u in self.onb]

    def complement(self) -> OrientedPlane:
        """Orthogonal complement, oriented so that (onb, complement.onb) is positive."""
        if self.dim == self.ambient_dim:
            raise ContractViolation("a full-dimensional plane has no complement")
        rows = [list(v.components) for v in self.basis]
        null = nullspace(rows, self.mode)
        vectors = [Vector(self.ambient_dim, tuple(n), self.mode) for n in null]
        comp = OrientedPlane(self.ambient_dim, tuple(vectors), self.tolerance)
        frame = [list(u.components) for u in self.onb + comp.onb]
        if determinant(frame, self.mode) < 0:
            flipped = (-vectors[0],) + tuple(vectors[1:])
            comp = OrientedPlane(self.ambient_dim, flipped, self.tolerance)
        return comp


def _orthonormalize(basis: Sequence[Vector], mode: ScalarMode) -> tuple[Vector, ...]:
    out: list[Vector] = []
    for v in basis:
        w = v.as_mode(mode)
        for u in out:
            w = w - u * w.dot(u)
        norm = sqrt(w.norm2(), mode)
        out.append(w * (1 / norm))
    return tuple(out)


# -----------------------------------------------------------------------------
# 🔧 Pullback
# -----------------------------------------------------------------------------

def restrict(a: KForm, p: OrientedPlane) -> KForm:
    """Pull ``a`` back along the inclusion of ``p``.

    The result is a form on R^k written in the coframe dual to ``p.onb``:
    its coefficient on e^J is a(onb_J).

    Raises:
        ContractViolation: if deg(a) > dim(p) or the ambient dimensions differ.
    """
    if a.dim != p.ambient_dim:
        raise ContractViolation(f"form on R^{a.dim} restricted to a plane in R^{p.ambient_dim}")
    if a.degree > p.dim:
        raise ContractViolation(f"cannot restrict a {a.degree}-form to a {p.dim}-plane")
    mode = combine(a.mode, p.mode)
    if a.degree == 0:
        return KForm.constant(p.dim, a.scalar(), mode)
    if a.is_zero():
        return KForm.zero(p.dim, a.degree, mode)
    coeffs = [evaluate(a, [p.onb[j] for j in idx]) for idx in multi_indices(p.dim, a.degree)]
    return KForm(p.dim, a.degree, tuple(coeffs), mode)
