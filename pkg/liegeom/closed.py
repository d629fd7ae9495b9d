# =============================================================================
# liegeom/closed.py
# =============================================================================
# 🎯 Purpose:
# Certify that the model φ is closed on a 7-dimensional Lie algebra, extract
# its torsion, and check Bryant's identities for closed G2-structures.
#
# ✅ Includes:
# - ClosedG2Algebra: the algebra plus connection, curvature, T and τ₂
# - validate_closed_g2: dφ = 0, ∇_Zφ = T(Z) ⌟ ψ, τ₂ ∈ Λ²₁₄, dψ = τ₂ ∧ φ
# - bryant_identities_check: tr Ric = −½|τ₂|² and
#   dτ₂ = ½⋆(τ₂∧τ₂) − ½ i(Ric) (= (3/14)|τ₂|²φ + ½⋆(τ₂∧τ₂) − ½ i(Ric₀))
#
# Torsion normalization: τ₂ is defined by dψ = τ₂ ∧ φ; the endomorphism is
# then T(Z) = −½ τ₂(Z, ·)♯ and ∇_Zφ = ½⋆(ι_Zτ₂ ∧ φ).
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from exterior.forms import KForm, Vector, form_norm2, hodge, interior, wedge
from exterior.linalg import least_squares
from exterior.scalar import ScalarMode
from g2.decomposition import i_map, project_lambda2
from g2.structure import G2Structure
from liegeom.algebra import LieAlgebraData
from liegeom.ce import ce_differential
from liegeom.riemann import Curvature, covariant_derivative, curvature_ricci
from models.errors import ClosedG2Rejection, ContractViolation, InternalInconsistencyError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 📦 Result types
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedG2Algebra:
    alg: LieAlgebraData
    curvature: Curvature
    nabla_phi: tuple[KForm, ...]         # ∇_{e_i} φ, i = 1..7
    t_endo: tuple[Vector, ...]           # T(e_i)
    tau2: KForm
    dpsi: KForm

    @property
    def ricci(self):
        return self.curvature.ricci

    @property
    def tau2_norm2(self) -> Fraction:
        return form_norm2(self.tau2)


@dataclass(frozen=True)
class BryantReport:
    scalar_residual: Fraction            # tr Ric + ½|τ₂|²
    dtau2_residual: KForm                # dτ₂ − ½⋆(τ₂∧τ₂) + ½ i(Ric)
    full_form_residual: KForm            # dτ₂ − (3/14)|τ₂|²φ − ½⋆(τ₂∧τ₂) + ½ i(Ric₀)
    torsion_residual: Fraction           # max_Z |∇_Zφ − ½⋆(ι_Zτ₂ ∧ φ)|
    dtau2: KForm
    tau_wedge_tau_nonzero: bool

    @property
    def max_residual(self) -> float:
        return max(
            abs(float(self.scalar_residual)),
            self.dtau2_residual.max_abs(),
            self.full_form_residual.max_abs(),
            float(self.torsion_residual),
        )

    @property
    def passed(self) -> bool:
        return self.max_residual == 0


# -----------------------------------------------------------------------------
# ✅ Validation
# -----------------------------------------------------------------------------

def validate_closed_g2(alg: LieAlgebraData) -> ClosedG2Algebra:
    """Certify dφ = 0 for ``alg`` and derive T, τ₂ and dψ.

    Raises:
        ClosedG2Rejection: if dφ ≠ 0 (carries the 4-form).
        InternalInconsistencyError: if a quantity guaranteed by dφ = 0 fails.
    """
    if alg.dim != 7:
        raise ContractViolation(f"closed G2 validation needs a 7-dimensional algebra, got {alg.dim}")
    g2 = G2Structure.model(ScalarMode.EXACT)
    dphi = ce_differential(alg, g2.phi)
    if not dphi.is_zero():
        logger.info(f"rejected: dφ = {dphi}")
        raise ClosedG2Rejection(dphi)

    columns = [list(interior(Vector.e(m, 7), g2.psi).coeffs) for m in range(1, 8)]
    nabla_phi, t_endo = [], []
    for i in range(7):
        target = covariant_derivative(alg, i, g2.phi)
        x, residual = least_squares(columns, list(target.coeffs), ScalarMode.EXACT)
        if any(r != 0 for r in residual):
            raise InternalInconsistencyError(f"∇_e{i + 1}φ is not of the form T(Z) ⌟ ψ")
        nabla_phi.append(target)
        t_endo.append(Vector(7, tuple(x)))

    # τ₂(e_i, e_m) = −2 ⟨T(e_i), e_m⟩
    terms = {}
    for i in range(7):
        for m in range(7):
            if t_endo[i][m] != -t_endo[m][i]:
                raise InternalInconsistencyError(f"T is not skew: T(e{i + 1})_{m + 1} != −T(e{m + 1})_{i + 1}")
            if i < m and t_endo[i][m] != 0:
                terms[(i, m)] = -2 * t_endo[i][m]
    tau2 = KForm.from_terms(7, terms) if terms else KForm.zero(7, 2)

    tau7, _ = project_lambda2(tau2)
    if not tau7.is_zero():
        raise InternalInconsistencyError(f"τ₂ has a Λ²₇ component {tau7}")
    dpsi = ce_differential(alg, g2.psi)
    if dpsi != wedge(tau2, g2.phi):
        raise InternalInconsistencyError(f"dψ = {dpsi} differs from τ₂ ∧ φ")

    logger.debug(f"validated closed G2 algebra, |τ₂|² = {form_norm2(tau2)}")
    return ClosedG2Algebra(
        alg=alg,
        curvature=curvature_ricci(alg),
        nabla_phi=tuple(nabla_phi),
        t_endo=tuple(t_endo),
        tau2=tau2,
        dpsi=dpsi,
    )


def bryant_identities_check(g2alg: ClosedG2Algebra) -> BryantReport:
    """Residuals of the scalar-curvature identity and the dτ₂ identity.

    dτ₂ comes from the exterior derivative of the algebra and Ric from its
    curvature; ``g2alg.tau2`` is used as given, so a corrupted τ₂ shows up as
    nonzero residuals.
    """
    g2 = G2Structure.model(ScalarMode.EXACT)
    tau2, ric = g2alg.tau2, g2alg.ricci
    half = Fraction(1, 2)
    norm2 = form_norm2(tau2)
    dtau2 = ce_differential(g2alg.alg, tau2)
    tau_sq = hodge(wedge(tau2, tau2))

    scalar_residual = ric.trace() + half * norm2
    dtau2_residual = dtau2 - tau_sq * half + i_map(ric) * half
    full_form_residual = dtau2 - g2.phi * (Fraction(3, 14) * norm2) - tau_sq * half + i_map(ric.trace_free()) * half

    torsion_residual = Fraction(0)
    for i in range(7):
        z = Vector.e(i + 1)
        expected = hodge(wedge(interior(z, tau2), g2.phi)) * half
        diff = g2alg.nabla_phi[i] - expected
        torsion_residual = max(torsion_residual, max((abs(x) for x in diff.coeffs), default=Fraction(0)))

    return BryantReport(
        scalar_residual=scalar_residual,
        dtau2_residual=dtau2_residual,
        full_form_residual=full_form_residual,
        torsion_residual=torsion_residual,
        dtau2=dtau2,
        tau_wedge_tau_nonzero=not tau_sq.is_zero(),
    )
