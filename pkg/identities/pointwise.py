# =============================================================================
# identities/pointwise.py
# =============================================================================
# 🎯 Purpose:
# Pointwise verifiers for the algebra behind the second variation of a
# coassociative submanifold: the 2-form γ_Z, the B tensors, the dτ₂ identity,
# the dτ₂ lemma and the assembled second-variation integrand.
#
# ✅ Includes:
# - ShapeData / VariationPointData, the per-point inputs
# - gamma_Z, check_b_w, check_b_h, dtau2_from_identity
# - lemma_dtau2_check, quadratic_torsion_term, secvar_integrand, eq2_assembly
# - first_variation_density (with the mean curvature it determines)
# - hl_identity_residual and the smaller algebraic identities used by suites
#
# ❌ Does not include:
# - Thresholds: every verifier returns a residual or a form; pass/fail is
#   decided by the runner
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from exterior.forms import (
    KForm, Vector, antiselfdual_part, evaluate, form_inner, form_norm2, gram_determinant,
    hodge, interior, selfdual_part, wedge,
)
from exterior.plane import restrict
from exterior.scalar import Scalar, ScalarMode, combine, to_scalar, zero
from g2.decomposition import i_map, i_map_inverse, project_lambda2, project_lambda3
from g2.frames import CoassocFrame, normal_to_selfdual
from g2.products import coassociator
from g2.structure import SymTensor2, model_for
from models.errors import ContractViolation, NotInLambda214Error, NotNormalError

logger = logging.getLogger(__name__)

Matrix4 = tuple[tuple[Scalar, ...], ...]


# -----------------------------------------------------------------------------
# 📦 Per-point data
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ShapeData:
    """Tangential shape data at a point of a coassociative Σ.

    ``dz_tangent[c][a]`` is the e_c component of (∇_{e_a} Z)^T, both indices
    running over ``sigma_frame.plane.onb``.
    """

    sigma_frame: CoassocFrame
    dz_tangent: Matrix4
    minimal_totally_geodesic: bool = False

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.dz_tangent)
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            raise ContractViolation("dz_tangent must be a 4x4 matrix")
        object.__setattr__(self, "dz_tangent", rows)
        if self.minimal_totally_geodesic and any(x != 0 for row in rows for x in row):
            raise ContractViolation("totally geodesic shape data must have dz_tangent = 0")

    @classmethod
    def totally_geodesic(cls, frame: CoassocFrame | None = None) -> ShapeData:
        frame = frame or CoassocFrame.model()
        return cls(frame, tuple((0,) * 4 for _ in range(4)), True)

    def symmetrized(self) -> Matrix4:
        m = self.dz_tangent
        half = to_scalar("1/2", _matrix_mode(m))
        return tuple(tuple((m[i][j] + m[j][i]) * half for j in range(4)) for i in range(4))


@dataclass(frozen=True)
class VariationPointData:
    """τ₂, Ric and the normal variation field Z at one point of Σ."""

    tau2: KForm
    ric: SymTensor2
    z: Vector
    shape: ShapeData
    tolerance: float | None = field(default=None, compare=False)

    def __post_init__(self):
        a7, _ = project_lambda2(self.tau2)
        if not a7.is_zero(self.tolerance):
            raise NotInLambda214Error(f"τ₂ has a Λ²₇ component of size {a7.max_abs():.3e}")
        if not self.frame.plane.is_normal(self.z, self.tolerance):
            raise NotNormalError(f"Z = {tuple(self.z)} is not normal to Σ")

    @property
    def frame(self) -> CoassocFrame:
        return self.shape.sigma_frame

    @property
    def mode(self) -> ScalarMode:
        return combine(self.tau2.mode, self.ric.mode, self.z.mode, self.frame.plane.mode)


def _matrix_mode(m) -> ScalarMode:
    return ScalarMode.FLOAT if any(isinstance(x, float) for row in m for x in row) else ScalarMode.EXACT


def _volume4(value: Scalar, mode: ScalarMode) -> KForm:
    return KForm.volume(4, mode) * value


def _check_normal(frame: CoassocFrame, *zs: Vector):
    for z in zs:
        if not frame.plane.is_normal(z, frame.plane.tolerance):
            raise NotNormalError(f"Z = {tuple(z)} is not normal to the coassociative plane")


# -----------------------------------------------------------------------------
# 🔷 γ_Z
# -----------------------------------------------------------------------------

def alpha_f(alpha: KForm, f: Sequence[Sequence[Scalar]]) -> KForm:
    """α_f(X, Y) = α(fX, Y) + α(X, fY) for a 2-form α on R^4; as matrices, fᵀA + Af."""
    if (alpha.dim, alpha.degree) != (4, 2):
        raise ContractViolation("alpha_f takes a 2-form on R^4")
    a = [[alpha.coefficient((i, j)) for j in range(4)] for i in range(4)]
    mode = combine(alpha.mode, _matrix_mode(f))
    terms = {}
    for i in range(4):
        for j in range(i + 1, 4):
            value = zero(mode)
            for c in range(4):
                value += f[c][i] * a[c][j] + a[i][c] * f[c][j]
            terms[(i, j)] = value
    return KForm.from_terms(4, terms, mode)


def gamma_Z(d: VariationPointData) -> KForm:
    """γ_Z(X1, X2) = ι_Zφ((∇_{X1}Z)^T, X2) + ι_Zφ(X1, (∇_{X2}Z)^T), symmetrized shape.

    Anti-self-dual when the symmetrized shape is trace-free; a trace part
    t·id contributes the self-dual piece 2t·α.
    """
    alpha = normal_to_selfdual(d.z, d.frame)
    return alpha_f(alpha, d.shape.symmetrized())


# -----------------------------------------------------------------------------
# 🧩 B tensors
# -----------------------------------------------------------------------------

def check_b_w(w: Vector, z1: Vector, z2: Vector, frame: CoassocFrame) -> KForm:
    """B_{W⊥}(Z1, Z2) = −ι_{W⊥}(ι_{Z1}ψ ∧ ι_{Z2}φ)|π."""
    _check_normal(frame, z1, z2)
    g2 = model_for(w.mode, z1.mode, z2.mode, frame.plane.mode)
    w_perp = frame.plane.normal_part(w)
    if w_perp.is_zero(frame.plane.tolerance):
        return KForm.zero(4, 4, combine(w.mode, z1.mode, z2.mode, frame.plane.mode))
    five = wedge(interior(z1, g2.psi), interior(z2, g2.phi))
    return -restrict(interior(w_perp, five), frame.plane)


def check_b_h(h: SymTensor2, z1: Vector, z2: Vector, frame: CoassocFrame) -> KForm:
    """B_h(Z1, Z2) = ι_{Z1} i(h) ∧ ι_{Z2}φ |π."""
    _check_normal(frame, z1, z2)
    g2 = model_for(h.mode, z1.mode, z2.mode, frame.plane.mode)
    return restrict(wedge(interior(z1, i_map(h, g2)), interior(z2, g2.phi)), frame.plane)


def b_h_closed_form(h: SymTensor2, z1: Vector, z2: Vector, frame: CoassocFrame) -> KForm:
    """(4 h(Z1, Z2) + 2 tr(h|π) g(Z1, Z2)) vol_π."""
    value = 4 * h(z1, z2) + 2 * h.trace_on(frame.plane) * z1.dot(z2)
    return _volume4(value, combine(h.mode, z1.mode, z2.mode, frame.plane.mode))


# -----------------------------------------------------------------------------
# 🌀 dτ₂ and the lemma
# -----------------------------------------------------------------------------

def dtau2_from_identity(tau2: KForm, ric: SymTensor2, tolerance: float | None = None) -> KForm:
    """½ ⋆(τ₂ ∧ τ₂) − ½ i(Ric).

    Raises:
        NotInLambda214Error: if τ₂ has a Λ²₇ component.
    """
    a7, _ = project_lambda2(tau2)
    if not a7.is_zero(tolerance):
        raise NotInLambda214Error(f"τ₂ has a Λ²₇ component of size {a7.max_abs():.3e}")
    mode = combine(tau2.mode, ric.mode)
    half = to_scalar("1/2", mode)
    return (hodge(wedge(tau2, tau2)) - i_map(ric)) * half


def ricci_term(d: VariationPointData) -> KForm:
    """−(2 Ric(Z, Z) + |Z|² tr(Ric|Σ)) vol_Σ."""
    value = 2 * d.ric(d.z, d.z) + d.z.norm2() * d.ric.trace_on(d.frame.plane)
    return _volume4(-value, d.mode)


def lemma_lhs(d: VariationPointData) -> KForm:
    """(ι_Z dτ₂) ∧ ι_Zφ |Σ with dτ₂ taken from the Bryant identity."""
    g2 = model_for(d.mode)
    dtau2 = dtau2_from_identity(d.tau2, d.ric, d.tolerance)
    return restrict(wedge(interior(d.z, dtau2), interior(d.z, g2.phi)), d.frame.plane)


def lemma_dtau2_check(d: VariationPointData) -> Scalar:
    """Coefficient of vol_Σ in (ι_Z dτ₂) ∧ ι_Zφ|Σ + (2 Ric(Z, Z) + |Z|² tr(Ric|Σ)) vol_Σ.

    Zero whenever τ₂ = 0. For τ₂ ≠ 0 it equals quadratic_torsion_term(d):
    ⋆(τ₂ ∧ τ₂) lies in Λ³₁ ⊕ Λ³₂₇ and enters through B_h rather than B_{W⊥}.
    """
    return (lemma_lhs(d) - ricci_term(d)).scalar()


def quadratic_torsion_term(d: VariationPointData) -> KForm:
    """½ ι_Z ⋆(τ₂ ∧ τ₂) ∧ ι_Zφ |Σ, computed as ½ B_h(Z, Z) with i(h) = ⋆(τ₂ ∧ τ₂)."""
    h = i_map_inverse(hodge(wedge(d.tau2, d.tau2)), d.tolerance)
    return b_h_closed_form(h, d.z, d.z, d.frame) * to_scalar("1/2", d.mode)


def tau_square_lambda3_7(tau2: KForm) -> KForm:
    """The Λ³₇ component of ⋆(τ₂ ∧ τ₂); zero for every τ₂ ∈ Λ²₁₄."""
    _, a7, _ = project_lambda3(hodge(wedge(tau2, tau2)))
    return a7


# -----------------------------------------------------------------------------
# 📈 Second variation
# -----------------------------------------------------------------------------

def secvar_integrand(d: VariationPointData) -> KForm:
    """τ₂|Σ ∧ γ_Z − (2 Ric(Z, Z) + |Z|² tr(Ric|Σ)) vol_Σ."""
    return wedge(restrict(d.tau2, d.frame.plane), gamma_Z(d)) + ricci_term(d)


def eq2_assembly(d: VariationPointData) -> KForm:
    """(ι_Z dτ₂) ∧ ι_Zφ|Σ + τ₂|Σ ∧ γ_Z, the pre-lemma form of the integrand.

    secvar_integrand(d) − eq2_assembly(d) = −quadratic_torsion_term(d).
    """
    return lemma_lhs(d) + wedge(restrict(d.tau2, d.frame.plane), gamma_Z(d))


# -----------------------------------------------------------------------------
# 📉 First variation
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FirstVariationDensity:
    density: KForm               # τ₂|Σ⁺ ∧ (Z ⌟ φ)|Σ
    mean_curvature: Vector       # H with −(H ⌟ φ)|Σ = τ₂|Σ⁺


def first_variation_density(tau2: KForm, z: Vector, frame: CoassocFrame) -> FirstVariationDensity:
    a7, _ = project_lambda2(tau2)
    if not a7.is_zero(frame.plane.tolerance):
        raise NotInLambda214Error(f"τ₂ has a Λ²₇ component of size {a7.max_abs():.3e}")
    tau_plus = selfdual_part(restrict(tau2, frame.plane))
    density = wedge(tau_plus, normal_to_selfdual(z, frame))
    # Z ↦ (Z ⌟ φ)|Σ is √2 times an isometry onto Λ²₊
    mode = combine(tau2.mode, frame.plane.mode)
    half = to_scalar("1/2", mode)
    h = Vector.zero(7, mode)
    for nu in frame.normal.onb:
        h = h - nu * (form_inner(tau_plus, normal_to_selfdual(nu, frame)) * half)
    return FirstVariationDensity(density=density, mean_curvature=h)


# -----------------------------------------------------------------------------
# 🧪 Smaller algebraic identities
# -----------------------------------------------------------------------------

def hl_identity_residual(vs: Sequence[Vector]) -> Scalar:
    """ψ(v)² + |C(v)|² − |v1 ∧ v2 ∧ v3 ∧ v4|²."""
    g2 = model_for(*(v.mode for v in vs))
    psi_value = evaluate(g2.psi, list(vs))
    c = coassociator(vs, g2)
    return psi_value * psi_value + c.norm2() - gram_determinant(list(vs))


def contraction_identity_residual(w: Vector) -> KForm:
    """W ⌟ ψ + ⋆(W♭ ∧ φ)."""
    g2 = model_for(w.mode)
    return interior(w, g2.psi) + hodge(wedge(KForm.from_vector(w), g2.phi))


def ricci_split_residual(ric: SymTensor2) -> KForm:
    """i(Ric) − i(Ric₀) − (6/7) tr(Ric) φ."""
    g2 = model_for(ric.mode)
    six_sevenths = to_scalar("6/7", ric.mode)
    return i_map(ric) - i_map(ric.trace_free()) - g2.phi * (six_sevenths * ric.trace())


def selfdual_residual(frame: CoassocFrame, z: Vector) -> tuple[KForm, Scalar]:
    """(anti-self-dual part of (Z⌟φ)|π, |image|² − 2|Z|²)."""
    image = normal_to_selfdual(z, frame)
    return antiselfdual_part(image), form_norm2(image) - 2 * z.norm2()
