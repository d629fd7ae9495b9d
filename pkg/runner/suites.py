# =============================================================================
# runner/suites.py
# =============================================================================
# 🎯 Purpose:
# The registry of verification checks run by `g2lab verify`. Each check draws
# random inputs from its own seeded stream, evaluates one identity and returns
# the size of the residual; the suite manager compares it to the tolerance.
#
# ✅ Includes:
# - CheckSpec: id, group, the identity it verifies, trial count, tolerance
# - REGISTRY: every algebraic, Lie-algebraic and numeric check, in a fixed order
# - resolve_suites: --suite names (check ids or groups) → CheckSpecs
# - family_checks: the per-family checks behind `g2lab variations`
# - algebra_checks: the per-algebra checks behind `g2lab liealg` and `g2lab search`
#
# ❌ Does not include:
# - Running checks or building reports (see runner/suite_manager.py)
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from exterior.forms import (
    KForm, Vector, antiselfdual_part, form_norm2, gram_determinant, hodge, interior,
    selfdual_part, simple_kvector, wedge,
)
from exterior.plane import restrict
from exterior.scalar import ScalarMode, magnitude
from g2.algebra import act_on_form, act_on_sym, g2_lie_algebra, so_generators
from g2.decomposition import (
    E1_I_MAP_TERMS, e1_i_map_expansion, i_map, phi_wedge_star, project_lambda2, project_lambda3,
)
from g2.frames import CoassocFrame, normal_to_selfdual
from g2.metric import metric_from_phi
from g2.products import calibration_defect, coassociator
from g2.structure import SymTensor2, model_for
from identities.pointwise import (
    ShapeData, VariationPointData, b_h_closed_form, check_b_h, check_b_w,
    contraction_identity_residual, eq2_assembly, first_variation_density, gamma_Z,
    hl_identity_residual, lemma_dtau2_check, quadratic_torsion_term, ricci_split_residual,
    secvar_integrand, selfdual_residual, tau_square_lambda3_7,
)
from identities.sampling import (
    random_form, random_g2_element, random_lambda2_14, random_normal,
    random_orthonormal_plane, random_scalar, random_sym, random_symmetric_matrix,
    random_two_step_algebra, random_variation_point, random_vector,
)
from liegeom.algebra import LieAlgebraData
from liegeom.ce import ce_differential
from liegeom.closed import ClosedG2Algebra, bryant_identities_check, validate_closed_g2
from liegeom.riemann import connection_residuals, curvature_ricci, curvature_symmetry_residual
from liegeom.search import search_closed_g2
from liegeom.submersion import SubmersionSplit, cor_g2sub_check, oneill_analysis
from models.errors import (
    InternalInconsistencyError, NotCoassociativeError, PreconditionRefused, UnknownSuiteError,
)
from variations.checks import (
    density_second_derivative_check, first_variation_check, moduli_fibration_demo,
    second_variation_check,
)
from variations.families import GraphFamily, HypersphereFamily, ImmersionFamily
from variations.geometry import QuadratureSpec

logger = logging.getLogger(__name__)

Outcome = float | tuple[float, dict]
Body = Callable[[np.random.Generator, ScalarMode], Outcome]

DEFAULT_GROUPS = ("exterior", "g2", "identities", "liegeom")


# -----------------------------------------------------------------------------
# 📦 CheckSpec
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    group: str
    paper_anchor: str                    # the identity, as listed in the README check index
    body: Body
    trials: int = 100
    randomized: bool = True              # False → fixed inputs, --trials does not apply
    float_tolerance: float | None = None
    numeric: bool = False                # tolerance applies in exact mode too; reported as float
    exact_only: bool = False             # Lie-algebra checks run on rationals whatever the mode


def size(*items) -> float:
    """Largest absolute coefficient over forms, vectors, tensors and scalars."""
    worst = 0.0
    for item in items:
        if isinstance(item, (KForm, SymTensor2)):
            value = item.max_abs()
        elif isinstance(item, Vector):
            value = max((magnitude(c) for c in item), default=0.0)
        else:
            value = magnitude(item)
        worst = max(worst, value)
    return worst


# -----------------------------------------------------------------------------
# 🧮 exterior
# -----------------------------------------------------------------------------

def _degrees(rng: np.random.Generator, total: int = 7) -> tuple[int, int]:
    p = int(rng.integers(1, 4))
    q = int(rng.integers(1, total - p + 1))
    return p, q


def wedge_anticommutativity(rng, mode) -> Outcome:
    p, q = _degrees(rng)
    a, b = random_form(rng, 7, p, mode), random_form(rng, 7, q, mode)
    sign = -1 if (p * q) % 2 else 1
    return size(wedge(a, b) - wedge(b, a) * sign), {"degrees": [p, q]}


def interior_antiderivation(rng, mode) -> Outcome:
    p, q = _degrees(rng)
    a, b = random_form(rng, 7, p, mode), random_form(rng, 7, q, mode)
    v = random_vector(rng, mode)
    sign = -1 if p % 2 else 1
    rule = interior(v, wedge(a, b)) - (wedge(interior(v, a), b) + wedge(a, interior(v, b)) * sign)
    return size(rule, interior(v, interior(v, a)) if p >= 2 else 0)


def hodge_isometry(rng, mode) -> Outcome:
    k = int(rng.integers(0, 8))
    a = random_form(rng, 7, k, mode)
    # ⋆⋆ = (−1)^{k(7−k)} = +1 in dimension 7
    return size(hodge(hodge(a)) - a, form_norm2(hodge(a)) - form_norm2(a))


def simple_kvector_gram(rng, mode) -> Outcome:
    vs = [random_vector(rng, mode) for _ in range(4)]
    return size(form_norm2(simple_kvector(vs)) - gram_determinant(vs))


# -----------------------------------------------------------------------------
# 🔷 g2
# -----------------------------------------------------------------------------

def model_forms(rng, mode) -> Outcome:
    g2 = model_for(mode)
    vol = KForm.volume(7, mode)
    e1 = Vector.e(1, 7, mode)
    return size(
        hodge(g2.phi) - g2.psi,
        wedge(g2.phi, g2.psi) - vol * 7,
        form_norm2(g2.phi) - 7,
        i_map(SymTensor2.identity(7, mode)) - g2.phi * 6,
        interior(e1, g2.phi) - KForm.from_terms(7, {"23": 1, "45": 1, "67": 1}, mode),
        hodge(KForm.from_terms(7, {"4567": 1}, mode)) - KForm.from_terms(7, {"123": 1}, mode),
    )


def hl_identity(rng, mode) -> Outcome:
    return size(hl_identity_residual([random_vector(rng, mode) for _ in range(4)]))


def calibration_bound(rng, mode) -> Outcome:
    """|ψ| ≤ 1 on oriented orthonormal 4-planes, with ψ² + |C|² = 1."""
    plane = random_orthonormal_plane(rng)
    value, defect = calibration_defect(plane)
    c = coassociator(list(plane.onb))
    return max(0.0, abs(value) - 1.0, abs(float(defect) - float(c.norm2()))), {"psi": float(value)}


def lambda2_projectors(rng, mode) -> Outcome:
    a = random_form(rng, 7, 2, mode)
    a7, a14 = project_lambda2(a)
    return size(phi_wedge_star(a7) - a7 * 2, phi_wedge_star(a14) + a14, a7 + a14 - a)


def lambda3_decomposition(rng, mode) -> Outcome:
    g2 = model_for(mode)
    a = random_form(rng, 7, 3, mode)
    a1, a7, a27 = project_lambda3(a)
    return size(
        a1 + a7 + a27 - a,
        wedge(a1, g2.phi),
        wedge(a7, g2.psi),
        wedge(a27, g2.phi),
        wedge(a27, g2.psi),
    )


def i_map_display(rng, mode) -> Outcome:
    h = random_sym(rng, mode)
    contracted = interior(Vector.e(1, 7, mode), i_map(h))
    return size(contracted - e1_i_map_expansion(h)), {"terms": len(E1_I_MAP_TERMS)}


def i_map_equivariance(rng, mode) -> Outcome:
    a = random_g2_element(rng, mode)
    h = random_sym(rng, mode)
    return size(act_on_form(a, i_map(h)) - i_map(act_on_sym(a, h)))


def g2_algebra(rng, mode) -> Outcome:
    basis = g2_lie_algebra(mode)
    psi = model_for(mode).psi
    annihilates = max((size(act_on_form(a, psi)) for a in basis), default=0.0)
    # E12 − E21 rotates φ and is not in g2
    excluded = 0.0 if not act_on_form(so_generators(7, mode)[0], model_for(mode).phi).is_zero() else 1.0
    return max(abs(len(basis) - 14), annihilates, excluded), {"dimension": len(basis)}


def metric_from_phi_check(rng, mode) -> Outcome:
    """Diagonal pull-backs of φ induce the pulled-back metric diag(d²)."""
    g2 = model_for(mode)
    d = [abs(random_scalar(rng, mode)) or 1 for _ in range(7)]
    pulled = KForm.from_terms(7, {(i, j, k): c * d[i] * d[j] * d[k] for (i, j, k), c in g2.phi.terms()}, mode)
    g = metric_from_phi(pulled)
    expected = SymTensor2.diagonal([x * x for x in d], g.mode)
    flipped = metric_from_phi(g2.phi * -1) - SymTensor2.identity(7, mode)
    scaled = metric_from_phi(g2.phi * 8) - SymTensor2.identity(7, mode) * 4
    return size(g - expected, flipped, scaled)


def selfdual_normal(rng, mode) -> Outcome:
    frame = CoassocFrame.model(mode)
    asd, norm_gap = selfdual_residual(frame, random_normal(rng, frame, mode))
    return size(asd, norm_gap)


def contraction_identity(rng, mode) -> Outcome:
    return size(contraction_identity_residual(random_vector(rng, mode)))


def ricci_split(rng, mode) -> Outcome:
    return size(ricci_split_residual(random_sym(rng, mode)))


# -----------------------------------------------------------------------------
# 🌀 identities
# -----------------------------------------------------------------------------

def gamma_antiselfdual(rng, mode) -> Outcome:
    """P₊ γ_Z = 2t·(Z⌟φ)|Σ for tangential derivative f₀ + t·id with f₀ trace-free."""
    d = random_variation_point(rng, mode)
    t = random_scalar(rng, mode)
    f0 = random_symmetric_matrix(rng, mode, 4, trace_free=True)
    rows = tuple(tuple(f0[i][j] + (t if i == j else 0) for j in range(4)) for i in range(4))
    d = dataclasses.replace(d, shape=ShapeData(d.frame, rows))
    alpha = normal_to_selfdual(d.z, d.frame)
    return size(selfdual_part(gamma_Z(d)) - alpha * (2 * t)), {"trace_part": str(t)}


def b_antisymmetric(rng, mode) -> Outcome:
    frame = CoassocFrame.model(mode)
    w = random_vector(rng, mode)
    z1, z2 = random_normal(rng, frame, mode), random_normal(rng, frame, mode)
    e = [Vector.e(k, 7, mode) for k in (1, 2, 3)]
    example = check_b_w(e[0], e[1], e[2], frame) - KForm.volume(4, mode) * 2
    return size(check_b_w(w, z1, z2, frame) + check_b_w(w, z2, z1, frame), check_b_w(w, z1, z1, frame), example)


def b_h_formula(rng, mode) -> Outcome:
    frame = CoassocFrame.model(mode)
    h = random_sym(rng, mode)
    z1, z2 = random_normal(rng, frame, mode), random_normal(rng, frame, mode)
    return size(check_b_h(h, z1, z2, frame) - b_h_closed_form(h, z1, z2, frame))


def lemma_dtau2(rng, mode) -> Outcome:
    return size(lemma_dtau2_check(random_variation_point(rng, mode, zero_torsion=True)))


def _torsion_example(mode: ScalarMode) -> VariationPointData:
    """τ₂ = e23 − e45, Z = e1 on the model coassociative plane."""
    frame = CoassocFrame.model(mode)
    return VariationPointData(
        tau2=KForm.from_terms(7, {"23": 1, "45": -1}, mode),
        ric=SymTensor2.zero(7, mode),
        z=Vector.e(1, 7, mode),
        shape=ShapeData.totally_geodesic(frame),
        tolerance=1e-9 if mode == ScalarMode.FLOAT else None,
    )


def lemma_dtau2_torsion_term(rng, mode) -> Outcome:
    d = random_variation_point(rng, mode)
    example = lemma_dtau2_check(_torsion_example(mode))
    return size(lemma_dtau2_check(d) - quadratic_torsion_term(d).scalar(), example + 1)


def tau_square_lambda3_7_check(rng, mode) -> Outcome:
    return size(tau_square_lambda3_7(random_lambda2_14(rng, mode)))


def secvar_assembly(rng, mode) -> Outcome:
    d = random_variation_point(rng, mode)
    return size(secvar_integrand(d) - eq2_assembly(d) + quadratic_torsion_term(d))


def first_variation_density_check(rng, mode) -> Outcome:
    frame = CoassocFrame.model(mode)
    tau2 = random_lambda2_14(rng, mode)
    z = random_normal(rng, frame, mode)
    fv = first_variation_density(tau2, z, frame)
    g2 = model_for(mode)
    tau_plus = selfdual_part(restrict(tau2, frame.plane))
    gradient = restrict(interior(fv.mean_curvature, g2.phi), frame.plane) * -1 - tau_plus
    density = fv.density.scalar() + 2 * fv.mean_curvature.dot(z)
    return size(gradient, density, antiselfdual_part(restrict(interior(fv.mean_curvature, g2.phi), frame.plane)))


# -----------------------------------------------------------------------------
# 🧬 liegeom
# -----------------------------------------------------------------------------

def heisenberg_algebra() -> LieAlgebraData:
    return LieAlgebraData.from_constants({(3, 1, 2): 1}, 3)


@lru_cache(maxsize=1)
def search_hits() -> tuple:
    """Closed-φ algebras over coefficients {0, ±1}; computed once per process."""
    return tuple(search_closed_g2())


def coassociative_ideal(alg: LieAlgebraData) -> str | None:
    """1-based labels of a coordinate coassociative 4-plane containing [g, g].

    Any subspace containing the derived algebra is an ideal. A coordinate
    4-plane is coassociative exactly when its complement is a φ triple.
    """
    derived = {k - 1 for k, _, _, _ in alg.nonzero_constants()}
    for triple, _ in model_for(ScalarMode.EXACT).phi.terms():
        if derived.isdisjoint(triple):
            return "".join(str(v + 1) for v in range(7) if v not in triple)
    return None


@lru_cache(maxsize=1)
def worked_example() -> tuple[LieAlgebraData, str]:
    """The first search hit with τ₂ ≠ 0 that fibres over a coassociative ideal."""
    for hit in search_hits():
        split = coassociative_ideal(hit.alg)
        if hit.tau2_norm2 != 0 and split is not None:
            return hit.alg, split
    raise InternalInconsistencyError("search produced no non-abelian algebra with a coassociative ideal")


def ce_d_squared(rng, mode) -> Outcome:
    alg = random_two_step_algebra(rng)
    degree = int(rng.integers(1, 6))
    a = random_form(rng, 7, degree, ScalarMode.EXACT)
    return size(ce_differential(alg, ce_differential(alg, a))), {"derived_dim": alg.derived_dimension()}


def levi_civita_compatibility(rng, mode) -> Outcome:
    alg = random_two_step_algebra(rng)
    metric, torsion = connection_residuals(alg)
    symmetry = curvature_symmetry_residual(curvature_ricci(alg))
    return size(metric, torsion, symmetry)


def heisenberg_oneill(rng, mode) -> Outcome:
    alg = heisenberg_algebra()
    report = oneill_analysis(SubmersionSplit.from_labels(alg, "3"))
    k, k_base, a_sq = report.sectional[(1, 2)]
    ric33 = curvature_ricci(alg).ricci[2, 2]
    details = {"sectional": str(k), "base_sectional": str(k_base), "a_norm2": str(a_sq), "ric33": str(ric33)}
    return size(report.max_residual, k + Fraction(3, 4), a_sq - Fraction(1, 4), ric33 - Fraction(1, 2)), details


def closed_g2_certification(rng, mode) -> Outcome:
    worst = 0.0
    norms = []
    for hit in search_hits():
        certified = validate_closed_g2(hit.alg)
        worst = max(worst, bryant_identities_check(certified).max_residual, size(certified.tau2_norm2 - hit.tau2_norm2))
        norms.append(certified.tau2_norm2)
    # the first hit is the flat torus; every later one is non-abelian with τ₂ ≠ 0
    worst = max(worst, size(norms[0]), float(sum(1 for n in norms[1:] if n == 0)), float(len(norms) < 2))
    return worst, {"algebras": len(norms), "tau2_norm2": [str(n) for n in norms]}


def corollary_abelian(rng, mode) -> Outcome:
    """Flat coassociative fibrations satisfy the corollary; the others fail its premises."""
    failures = 0
    abelian = LieAlgebraData.abelian()
    report = cor_g2sub_check(validate_closed_g2(abelian), SubmersionSplit.from_labels(abelian, "4567"))
    if not (report.premises_hold and report.consistent):
        failures += 1
    checked = 1
    for hit in search_hits()[1:]:
        labels = coassociative_ideal(hit.alg)
        if labels is None:
            continue
        checked += 1
        report = cor_g2sub_check(validate_closed_g2(hit.alg), SubmersionSplit.from_labels(hit.alg, labels))
        if report.premises_hold or not report.consistent:
            failures += 1
    return float(failures), {"splits": checked}


# -----------------------------------------------------------------------------
# 📈 variations (numeric, selected explicitly)
# -----------------------------------------------------------------------------

def sphere_first_variation(rng, mode) -> Outcome:
    report = first_variation_check(HypersphereFamily(), QuadratureSpec(grid=32))
    return report.max_residual, {"dvol_fd": report.dvol_fd, "dvol_formula": report.dvol_formula}


def fibration_constant_volume(rng, mode) -> Outcome:
    report = moduli_fibration_demo()
    return report.max_residual, {"volume_drift": report.volume_drift, "span_rank": report.span_rank}


def graph_second_variation(rng, mode) -> Outcome:
    report = second_variation_check(GraphFamily())
    return report.max_residual, {"d2vol_fd": report.d2vol_fd, "d2vol_formula": report.d2vol_formula,
                                 "theorem_rhs": report.theorem_rhs, "theorem_note": report.theorem_note}


def graph_density(rng, mode) -> Outcome:
    report = density_second_derivative_check(GraphFamily())
    return report.max_residual, {"direct": report.direct, "classical": report.classical}


# -----------------------------------------------------------------------------
# 📋 Registry
# -----------------------------------------------------------------------------

REGISTRY: tuple[CheckSpec, ...] = (
    CheckSpec("wedge-anticommutativity", "exterior", "a ∧ b = (−1)^{pq} b ∧ a", wedge_anticommutativity),
    CheckSpec("interior-antiderivation", "exterior", "ι_v(a ∧ b) = ι_v a ∧ b + (−1)^p a ∧ ι_v b; ι_v ι_v = 0", interior_antiderivation),
    CheckSpec("hodge-isometry", "exterior", "⋆⋆ = 1 and |⋆a| = |a| on R^7", hodge_isometry),
    CheckSpec("simple-kvector-gram", "exterior", "|v1 ∧ v2 ∧ v3 ∧ v4|² = det Gram(v)", simple_kvector_gram),
    CheckSpec("model-forms", "g2", "⋆φ = ψ, φ ∧ ψ = 7 vol, |φ|² = 7, i(g) = 6φ", model_forms, trials=1, randomized=False),
    CheckSpec("hl-identity", "g2", "ψ(v)² + |C(v)|² = |v1 ∧ v2 ∧ v3 ∧ v4|²", hl_identity),
    CheckSpec("calibration-bound", "g2", "|ψ(π)| ≤ 1 with ψ² + |C|² = 1 on orthonormal 4-planes", calibration_bound,
              float_tolerance=1e-9, numeric=True),
    CheckSpec("lambda2-projectors", "g2", "⋆(φ ∧ ·) = 2 on Λ²₇, −1 on Λ²₁₄", lambda2_projectors),
    CheckSpec("lambda3-decomposition", "g2", "Λ³ = Λ³₁ ⊕ Λ³₇ ⊕ Λ³₂₇ with Λ³₂₇ ∧ φ = Λ³₂₇ ∧ ψ = 0", lambda3_decomposition, trials=25),
    CheckSpec("i-map-display", "g2", "e₁ ⌟ i(h) equals its twelve-term expansion", i_map_display),
    CheckSpec("i-map-equivariance", "g2", "A · i(h) = i(A · h) for A ∈ g2", i_map_equivariance, trials=25),
    CheckSpec("g2-algebra", "g2", "dim stab(φ) = 14 and stab(φ) annihilates ψ", g2_algebra, trials=1, randomized=False),
    CheckSpec("metric-from-phi", "g2", "g_{P*φ} = Pᵀ P; g_{λ³φ} = λ² g", metric_from_phi_check, trials=25),
    CheckSpec("selfdual-normal", "g2", "(Z ⌟ φ)|π ∈ Λ²₊ with |(Z ⌟ φ)|π|² = 2|Z|²", selfdual_normal),
    CheckSpec("contraction-identity", "g2", "W ⌟ ψ = −⋆(W♭ ∧ φ)", contraction_identity),
    CheckSpec("ricci-split", "g2", "i(Ric) = i(Ric₀) + (6/7) tr(Ric) φ", ricci_split),
    CheckSpec("gamma-antiselfdual", "identities", "P₊ γ_Z = 2t α for shape f₀ + t id", gamma_antiselfdual),
    CheckSpec("b-antisymmetric", "identities", "B_{W⊥}(Z1, Z2) = −B_{W⊥}(Z2, Z1); B(e1, e2, e3) = 2 vol₄", b_antisymmetric),
    CheckSpec("b-h-closed-form", "identities", "B_h(Z1, Z2) = (4h(Z1, Z2) + 2 tr(h|π) g(Z1, Z2)) vol_π", b_h_formula),
    CheckSpec("lemma-dtau2", "identities", "(ι_Z dτ₂) ∧ ι_Zφ|Σ = −(2Ric(Z, Z) + |Z|² tr Ric|Σ) vol_Σ for τ₂ = 0", lemma_dtau2),
    CheckSpec("lemma-dtau2-torsion-term", "identities", "dτ₂ lemma residual = ½ ι_Z⋆(τ₂ ∧ τ₂) ∧ ι_Zφ|Σ", lemma_dtau2_torsion_term),
    CheckSpec("tau-square-lambda3-7", "identities", "⋆(τ₂ ∧ τ₂) has no Λ³₇ part for τ₂ ∈ Λ²₁₄", tau_square_lambda3_7_check, trials=25),
    CheckSpec("secvar-assembly", "identities", "τ₂|Σ ∧ γ_Z + ricci term = (ι_Z dτ₂) ∧ ι_Zφ|Σ + τ₂|Σ ∧ γ_Z − torsion term", secvar_assembly),
    CheckSpec("first-variation-density", "identities", "−(H ⌟ φ)|Σ = τ₂|Σ⁺", first_variation_density_check),
    CheckSpec("ce-d-squared", "liegeom", "d² = 0 on left-invariant forms", ce_d_squared, trials=25, exact_only=True),
    CheckSpec("levi-civita-compatibility", "liegeom", "∇g = 0, torsion-free ∇, curvature symmetries", levi_civita_compatibility,
              trials=10, exact_only=True),
    CheckSpec("heisenberg-oneill", "liegeom", "K = K^B − 3|A_XY|² on Heisenberg → R², K = −3/4", heisenberg_oneill,
              trials=1, randomized=False, exact_only=True),
    CheckSpec("closed-g2-certification", "liegeom", "dψ = τ₂ ∧ φ, tr Ric = −½|τ₂|², dτ₂ = ½⋆(τ₂ ∧ τ₂) − ½ i(Ric)",
              closed_g2_certification, trials=1, randomized=False, exact_only=True),
    CheckSpec("corollary-abelian", "liegeom", "T ≡ 0, A ≡ 0 on a coassociative ideal ⇒ Ric = 0, τ₂ = 0", corollary_abelian,
              trials=1, randomized=False, exact_only=True),
    CheckSpec("sphere-first-variation", "variations", "dVol/dr = −∫ ⟨H, Z⟩ on the round S⁴", sphere_first_variation,
              trials=1, randomized=False, float_tolerance=1e-5, numeric=True),
    CheckSpec("fibration-constant-volume", "variations", "Vol constant along T⁷ → T³ fibres", fibration_constant_volume,
              trials=1, randomized=False, float_tolerance=1e-10, numeric=True),
    CheckSpec("graph-second-variation", "variations", "d²Vol = ∫ |(∇Z)⊥|² − |(∇Z)ᵀ|²", graph_second_variation,
              trials=1, randomized=False, float_tolerance=1e-4, numeric=True),
    CheckSpec("graph-density", "variations", "f''(0) = direct = classical density formula", graph_density,
              trials=1, randomized=False, float_tolerance=1e-4, numeric=True),
)

_INDEX = {spec.check_id: position for position, spec in enumerate(REGISTRY)}


def check_index(check_id: str) -> int | None:
    """Position of a check in the registry; part of its random stream."""
    return _INDEX.get(check_id)


def groups() -> list[str]:
    return sorted({spec.group for spec in REGISTRY})


def resolve_suites(names: Iterable[str]) -> list[CheckSpec]:
    """Check ids and group names → specs in registry order; empty → the default groups.

    Raises:
        UnknownSuiteError: if a name is neither a check id nor a group.
    """
    names = list(names) or list(DEFAULT_GROUPS)
    known = groups() + [spec.check_id for spec in REGISTRY]
    selected: set[str] = set()
    for name in names:
        if name in _INDEX:
            selected.add(name)
        elif name in groups():
            selected.update(spec.check_id for spec in REGISTRY if spec.group == name)
        else:
            raise UnknownSuiteError(name, known)
    logger.debug(f"resolved suites {names} to {len(selected)} checks")
    return [spec for spec in REGISTRY if spec.check_id in selected]


# -----------------------------------------------------------------------------
# 🌊 Per-family checks
# -----------------------------------------------------------------------------

def family_checks(fam: ImmersionFamily, q: QuadratureSpec) -> list[CheckSpec]:
    """First and second variation and the density check for one immersion family."""

    def first(rng, mode) -> Outcome:
        r = first_variation_check(fam, q)
        return r.max_residual, {"volume": r.volume, "dvol_fd": r.dvol_fd, "dvol_formula": r.dvol_formula,
                                "volume_drift": r.volume_drift}

    def second(rng, mode) -> Outcome:
        r = second_variation_check(fam, q)
        return r.max_residual, {"d2vol_fd": r.d2vol_fd, "d2vol_formula": r.d2vol_formula,
                                "theorem_rhs": r.theorem_rhs, "theorem_note": r.theorem_note}

    def density(rng, mode) -> Outcome:
        r = density_second_derivative_check(fam, q)
        return r.max_residual, {"direct": r.direct, "classical": r.classical, "coassociative": r.coassociative}

    common = dict(trials=1, randomized=False, numeric=True)
    return [
        CheckSpec(f"{fam.name}-first-variation", "variations", "dVol/dt = −∫ ⟨H, Z⟩", first,
                  float_tolerance=1e-5, **common),
        CheckSpec(f"{fam.name}-second-variation", "variations", "d²Vol = ∫ |(∇Z)⊥|² − |(∇Z)ᵀ|²", second,
                  float_tolerance=1e-4, **common),
        CheckSpec(f"{fam.name}-density", "variations", "f''(0) = direct = classical = ψ̈ + |C_Z|²", density,
                  float_tolerance=1e-4, **common),
    ]


# -----------------------------------------------------------------------------
# 🧬 Per-algebra checks
# -----------------------------------------------------------------------------

def algebra_checks(g2alg: ClosedG2Algebra, split: str | None = None, prefix: str = "") -> list[CheckSpec]:
    """Checks for one certified closed-φ algebra; ``split`` adds the submersion checks.

    ``prefix`` distinguishes several algebras in one report (e.g. "hit-03-").
    """
    fixed = dict(trials=1, randomized=False, exact_only=True)

    def bryant(rng, mode) -> Outcome:
        r = bryant_identities_check(g2alg)
        return r.max_residual, {
            "scalar_residual": str(r.scalar_residual),
            "torsion_residual": str(r.torsion_residual),
            "dtau2": str(r.dtau2),
            "tau_wedge_tau_nonzero": r.tau_wedge_tau_nonzero,
        }

    def connection(rng, mode) -> Outcome:
        metric, torsion = connection_residuals(g2alg.alg)
        return size(metric, torsion, curvature_symmetry_residual(g2alg.curvature))

    specs = [
        CheckSpec(f"{prefix}bryant-identities", "liealg",
                  "tr Ric = −½|τ₂|², dτ₂ = ½⋆(τ₂ ∧ τ₂) − ½ i(Ric), ∇_Zφ = ½⋆(ι_Zτ₂ ∧ φ)", bryant, **fixed),
        CheckSpec(f"{prefix}levi-civita", "liealg", "∇g = 0, torsion-free ∇, curvature symmetries", connection, **fixed),
    ]
    if not split:
        return specs

    def oneill(rng, mode) -> Outcome:
        r = oneill_analysis(SubmersionSplit.from_labels(g2alg.alg, split))
        return size(r.max_residual), {
            "a_is_zero": r.a_is_zero,
            "t_is_zero": r.t_is_zero,
            "base_ricci_zero": r.base_ricci_zero,
            "sectional": {f"{x}{y}": [str(v) for v in values] for (x, y), values in r.sectional.items()},
        }

    def corollary(rng, mode) -> Outcome:
        try:
            r = cor_g2sub_check(g2alg, SubmersionSplit.from_labels(g2alg.alg, split))
        except NotCoassociativeError as exc:
            raise PreconditionRefused(f"split {split}: {exc}") from exc
        details = {"premises_hold": r.premises_hold, "nonzero_tensors": list(r.nonzero_tensors),
                   "conclusions": r.conclusions}
        return (0.0 if r.consistent else 1.0), details

    specs += [
        CheckSpec(f"{prefix}oneill-identities", "liealg",
                  "A_XY = ½[X, Y]^ver, K = K^B − 3|A_XY|², Ricci split", oneill, **fixed),
        CheckSpec(f"{prefix}coassociative-fibration", "liealg",
                  "T ≡ 0, A ≡ 0 on a coassociative ideal ⇒ Ric = 0, τ₂ = 0", corollary, **fixed),
    ]
    return specs
