# =============================================================================
# g2/frames.py
# =============================================================================
# 🎯 Purpose:
# Coassociative 4-planes with their associative normal 3-planes, and the map
# Z ↦ (Z ⌟ φ)|π from normal vectors to self-dual 2-forms on the plane.
# =============================================================================

from __future__ import annotations

from dataclasses import dataclass

from exterior.forms import KForm, Vector, interior
from exterior.plane import OrientedPlane, restrict
from exterior.scalar import ScalarMode, is_zero
from g2.structure import G2Structure, model_for
from models.errors import NotCoassociativeError, NotNormalError


@dataclass(frozen=True)
class CoassocFrame:
    """A coassociative 4-plane π and its associative complement π⊥.

    Construction checks φ|π = 0, ψ|π = vol_π and φ|π⊥ = vol_π⊥.
    """

    plane: OrientedPlane
    normal: OrientedPlane

    def __post_init__(self):
        g2 = model_for(self.plane.mode)
        tol = self.plane.tolerance
        if (self.plane.ambient_dim, self.plane.dim, self.normal.dim) != (7, 4, 3):
            raise NotCoassociativeError("a coassociative frame is a 4-plane and a 3-plane in R^7")
        if not restrict(g2.phi, self.plane).is_zero(tol):
            raise NotCoassociativeError("φ does not vanish on the plane")
        psi_value = restrict(g2.psi, self.plane).scalar()
        if not is_zero(psi_value - 1, tol):
            raise NotCoassociativeError(f"ψ restricts to {psi_value}·vol, expected vol")
        if not all(self.plane.is_normal(n, tol) for n in self.normal.basis):
            raise NotCoassociativeError("normal space is not orthogonal to the plane")
        phi_value = restrict(g2.phi, self.normal).scalar()
        if not is_zero(phi_value - 1, tol):
            raise NotCoassociativeError(f"φ restricts to {phi_value}·vol on the normal space, expected vol")

    @classmethod
    def from_plane(cls, plane: OrientedPlane) -> CoassocFrame:
        return cls(plane, plane.complement())

    @classmethod
    def model(cls, mode: ScalarMode = ScalarMode.EXACT) -> CoassocFrame:
        """π = span(e4, e5, e6, e7), π⊥ = span(e1, e2, e3)."""
        return cls.from_plane(OrientedPlane.coordinate(7, "4567", mode))


def normal_to_selfdual(z: Vector, frame: CoassocFrame, g2: G2Structure | None = None) -> KForm:
    """(Z ⌟ φ)|π, a self-dual 2-form on π with |image|² = 2|Z|².

    Raises:
        NotNormalError: if Z has a component along the plane.
    """
    if not frame.plane.is_normal(z, frame.plane.tolerance):
        raise NotNormalError(f"vector {tuple(z)} is not normal to the coassociative plane")
    g2 = g2 or model_for(z.mode, frame.plane.mode)
    return restrict(interior(z, g2.phi), frame.plane)
