# =============================================================================
# g2/decomposition.py
# =============================================================================
# 🎯 Purpose:
# G2-irreducible splittings of 2-forms and 3-forms, and the equivariant
# map i : S²(R^7) → Λ³ that identifies symmetric tensors with Λ³₁ ⊕ Λ³₂₇.
#
# ✅ Includes:
# - project_lambda2: Λ² = Λ²₇ ⊕ Λ²₁₄ via the eigenvalues (2, −1) of ⋆(φ ∧ ·)
# - project_lambda3: Λ³ = Λ³₁ ⊕ Λ³₇ ⊕ Λ³₂₇ against explicit spanning sets
# - i_map / i_map_inverse, vector_to_lambda3_7
# - e1_i_map_expansion: e₁ ⌟ i(h) from its explicit twelve-term expansion
#
# ❌ Does not include:
# - Λ⁴ / Λ⁵ splittings (obtained through ⋆ when needed)
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
from functools import lru_cache              # Λ³ basis inverse is built once per mode

from exterior.forms import KForm, Vector, hodge, interior, wedge
from exterior.linalg import inverse, mat_vec
from exterior.scalar import ScalarMode, combine, is_zero, to_scalar
from g2.structure import G2Structure, SymTensor2, model_for
from models.errors import ContractViolation, InternalInconsistencyError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 🔹 Λ²
# -----------------------------------------------------------------------------

def phi_wedge_star(a: KForm, g2: G2Structure | None = None) -> KForm:
    """α ↦ ⋆(φ ∧ α): +2 on Λ²₇, −1 on Λ²₁₄."""
    g2 = g2 or model_for(a.mode)
    return hodge(wedge(g2.phi, a))


def project_lambda2(a: KForm, g2: G2Structure | None = None) -> tuple[KForm, KForm]:
    """Split a 2-form into (a7, a14) with a7 = (a + ⋆(φ∧a))/3."""
    if (a.dim, a.degree) != (7, 2):
        raise ContractViolation(f"project_lambda2 needs a 2-form on R^7, got degree {a.degree} on R^{a.dim}")
    third = to_scalar("1/3", a.mode)
    a7 = (a + phi_wedge_star(a, g2)) * third
    return a7, a - a7


# -----------------------------------------------------------------------------
# 🔸 The i map
# -----------------------------------------------------------------------------

def i_map(h: SymTensor2, g2: G2Structure | None = None) -> KForm:
    """i(h) = Σ ε_ikl h_ij e^j ∧ e^k ∧ e^l = 2 Σ_ij h_ij e^j ∧ (e_i ⌟ φ).

    i(g) = 6φ. Non-symmetric input is rejected when the SymTensor2 is built.
    """
    if not isinstance(h, SymTensor2):
        raise ContractViolation(f"i_map takes a SymTensor2, got {type(h).__name__}")
    if h.dim != 7:
        raise ContractViolation(f"i_map needs a 7x7 tensor, got {h.dim}x{h.dim}")
    g2 = g2 or model_for(h.mode)
    mode = combine(h.mode, g2.mode)
    acc = KForm.zero(7, 3, mode)
    for i in range(7):
        row = h.entries[i]
        if all(x == 0 for x in row):
            continue
        one_form = KForm(7, 1, row, h.mode)
        acc = acc + wedge(one_form, interior(Vector.e(i + 1), g2.phi))
    return acc * 2


def vector_to_lambda3_7(w: Vector, g2: G2Structure | None = None) -> KForm:
    """W ↦ W ⌟ ψ, the isomorphism R^7 ≅ Λ³₇."""
    g2 = g2 or model_for(w.mode)
    return interior(w, g2.psi)


# e₁ ⌟ i(h) written out term by term: (label, ((weight, h index), (weight, h index))).
# Paired terms such as e^45 and e^54 are listed separately and add up.
E1_I_MAP_TERMS = (
    ("45", ((1, "11"), (2, "44"))), ("54", ((-1, "11"), (-2, "55"))),
    ("67", ((1, "11"), (2, "66"))), ("76", ((-1, "11"), (-2, "77"))),
    ("46", ((1, "12"), (-2, "47"))), ("64", ((-1, "12"), (-2, "56"))),
    ("57", ((-1, "12"), (2, "56"))), ("75", ((1, "12"), (2, "47"))),
    ("47", ((-1, "13"), (2, "46"))), ("74", ((1, "13"), (-2, "57"))),
    ("56", ((-1, "13"), (-2, "57"))), ("65", ((1, "13"), (2, "46"))),
)


def e1_i_map_expansion(h: SymTensor2) -> KForm:
    """e₁ ⌟ i(h) assembled from the explicit twelve-term expansion."""
    terms = {}
    for label, parts in E1_I_MAP_TERMS:
        terms[label] = sum((w * h[int(ij[0]) - 1, int(ij[1]) - 1] for w, ij in parts), to_scalar(0, h.mode))
    return KForm.from_terms(7, terms, h.mode)


def traceless_basis(mode: ScalarMode = ScalarMode.EXACT) -> list[SymTensor2]:
    """A basis of S²₀(R^7): E_ii − E_77 (i < 7) followed by E_ij + E_ji (i < j)."""
    out = []
    for i in range(6):
        values = [0] * 7
        values[i], values[6] = 1, -1
        out.append(SymTensor2.diagonal(values, mode))
    for i in range(1, 8):
        for j in range(i + 1, 8):
            out.append(SymTensor2.elementary(i, j, 7, mode))
    return out


@lru_cache(maxsize=None)
def _lambda3_frame(mode: ScalarMode):
    """Spanning set [φ, e_i⌟ψ, i(S²₀ basis)] of Λ³ and its inverse coordinate matrix."""
    g2 = G2Structure.model(mode)
    members = [g2.phi]
    members += [vector_to_lambda3_7(Vector.e(i, 7, mode), g2) for i in range(1, 8)]
    members += [i_map(h, g2) for h in traceless_basis(mode)]
    if len(members) != 35:
        raise InternalInconsistencyError(f"Λ³ frame has {len(members)} members")
    # columns are the members; rows index the 35 monomials
    columns = [list(m.coeffs) for m in members]
    square = [[columns[c][r] for c in range(35)] for r in range(35)]
    logger.debug(f"inverting the Λ³ frame in {mode.value} mode")
    return tuple(members), inverse(square, mode)


def lambda3_coordinates(a: KForm) -> list:
    """Coordinates of a 3-form in the frame [φ, e_1⌟ψ .. e_7⌟ψ, i(S²₀ basis)]."""
    if (a.dim, a.degree) != (7, 3):
        raise ContractViolation(f"expected a 3-form on R^7, got degree {a.degree} on R^{a.dim}")
    _, inv = _lambda3_frame(a.mode)
    return mat_vec(inv, list(a.coeffs))


def project_lambda3(a: KForm) -> tuple[KForm, KForm, KForm]:
    """Split a 3-form into (a1, a7, a27).

    The frame spans Λ³ with 35 members, so the coordinate solve is a square
    inverse; the reconstruction residual is checked against zero.
    """
    members, _ = _lambda3_frame(a.mode)
    x = lambda3_coordinates(a)
    a1 = members[0] * x[0]
    a7 = KForm.zero(7, 3, a.mode)
    for k in range(1, 8):
        a7 = a7 + members[k] * x[k]
    a27 = KForm.zero(7, 3, a.mode)
    for k in range(8, 35):
        a27 = a27 + members[k] * x[k]
    residual = a - a1 - a7 - a27
    if not residual.is_zero(1e-9 if a.mode == ScalarMode.FLOAT else None):
        raise InternalInconsistencyError(f"Λ³ reconstruction residual {residual.max_abs():.3e}")
    return a1, a7, a27


def i_map_inverse(a: KForm, tolerance: float | None = None) -> SymTensor2:
    """Recover h from a = i(h) ∈ Λ³₁ ⊕ Λ³₂₇.

    Raises:
        ContractViolation: if a has a Λ³₇ component.
    """
    x = lambda3_coordinates(a)
    if not all(is_zero(c, tolerance) for c in x[1:8]):
        raise ContractViolation("3-form has a Λ³₇ component and is not in the image of i")
    h = SymTensor2.identity(7, a.mode) * (x[0] * to_scalar("1/6", a.mode))
    for coeff, basis in zip(x[8:], traceless_basis(a.mode)):
        if coeff != 0:
            h = h + basis * coeff
    return h
