# =============================================================================
# g2/products.py
# =============================================================================
# 🎯 Purpose:
# Vector-valued products built from φ and ψ: the cross product, the triple
# product χ, the coassociator and the calibration defect of a 4-plane.
#
# ✅ Includes:
# - cross(u, v)            ⟨u × v, w⟩ = φ(u, v, w)
# - triple_chi(a, b, c)    ⟨χ(a, b, c), w⟩ = ψ(a, b, c, w)
# - coassociator(v1..v4)   C(ξ) = χ(⋆ξ), extended linearly
# - calibration_defect(p)  (ψ on p, 1 − ψ²)
# =============================================================================

from __future__ import annotations

from typing import Sequence

from exterior.forms import KForm, Vector, evaluate, hodge, interior, simple_kvector
from exterior.plane import OrientedPlane
from exterior.scalar import Scalar, one
from g2.structure import G2Structure, model_for
from models.errors import ContractViolation


def _check_seven(*vs: Vector):
    for v in vs:
        if v.dim != 7:
            raise ContractViolation(f"G2 products need vectors in R^7, got R^{v.dim}")


def cross(u: Vector, v: Vector, g2: G2Structure | None = None) -> Vector:
    _check_seven(u, v)
    g2 = g2 or model_for(u.mode, v.mode)
    return interior(v, interior(u, g2.phi)).to_vector()


def triple_chi(a: Vector, b: Vector, c: Vector, g2: G2Structure | None = None) -> Vector:
    """χ(a, b, c), with the output slot last: ⟨χ(a, b, c), w⟩ = ψ(a, b, c, w)."""
    _check_seven(a, b, c)
    g2 = g2 or model_for(a.mode, b.mode, c.mode)
    return interior(c, interior(b, interior(a, g2.psi))).to_vector()


def chi_of_trivector(xi: KForm, g2: G2Structure | None = None) -> Vector:
    """χ extended linearly to 3-vectors (written as 3-forms through the metric)."""
    if (xi.dim, xi.degree) != (7, 3):
        raise ContractViolation("χ acts on 3-vectors of R^7")
    g2 = g2 or model_for(xi.mode)
    acc = KForm.zero(7, 1, xi.mode)
    for (i, j, k), c in xi.terms():
        contracted = g2.psi
        for idx in (i, j, k):
            contracted = interior(Vector.e(idx + 1), contracted)
        acc = acc + contracted * c
    return acc.to_vector()


def coassociator(vs: Sequence[Vector], g2: G2Structure | None = None) -> Vector:
    """C(v1, v2, v3, v4) = χ(⋆(v1 ∧ v2 ∧ v3 ∧ v4)).

    Vanishes exactly on coassociative 4-tuples and satisfies
    ψ(v)² + |C(v)|² = |v1 ∧ v2 ∧ v3 ∧ v4|².
    """
    if len(vs) != 4:
        raise ContractViolation(f"coassociator takes 4 vectors, got {len(vs)}")
    _check_seven(*vs)
    return chi_of_trivector(hodge(simple_kvector(list(vs))), g2)


def calibration_defect(p: OrientedPlane, g2: G2Structure | None = None) -> tuple[Scalar, Scalar]:
    """Return (ψ on the oriented orthonormal basis of p, 1 − ψ²).

    Raises:
        ContractViolation: if p is not a 4-plane in R^7.
    """
    if (p.ambient_dim, p.dim) != (7, 4):
        raise ContractViolation(f"calibration defect needs a 4-plane in R^7, got a {p.dim}-plane in R^{p.ambient_dim}")
    g2 = g2 or model_for(p.mode)
    value = evaluate(g2.psi, list(p.onb))
    return value, one(p.mode) - value * value
