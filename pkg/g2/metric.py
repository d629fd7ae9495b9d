# =============================================================================
# g2/metric.py
# =============================================================================
# 🎯 Purpose:
# Recover the metric a 3-form induces, or reject the form as not of G2 type.
#
# β_ij vol = (e_i ⌟ φ) ∧ (e_j ⌟ φ) ∧ φ,   B = β / 6,   g = det(B)^(-1/9) B
# =============================================================================

from __future__ import annotations

import logging

import numpy as np

from exterior.forms import KForm, Vector, interior, wedge
from exterior.linalg import determinant
from exterior.scalar import ScalarMode, rational_root, to_scalar
from g2.structure import SymTensor2
from models.errors import ContractViolation, NotAG2FormError

logger = logging.getLogger(__name__)


def beta_matrix(phi: KForm) -> list[list]:
    contractions = [interior(Vector.e(i, 7), phi) for i in range(1, 8)]
    rows = [[None] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            value = wedge(wedge(contractions[i], contractions[j]), phi).scalar()
            rows[i][j] = rows[j][i] = value
    return rows


def _definiteness(rows: list[list], mode: ScalarMode) -> int:
    """+1 positive definite, −1 negative definite, 0 otherwise."""
    if mode == ScalarMode.FLOAT:
        eig = np.linalg.eigvalsh(np.array(rows, dtype=float))
        scale = max(1.0, float(np.abs(eig).max()))
        if (eig > 1e-12 * scale).all():
            return 1
        if (eig < -1e-12 * scale).all():
            return -1
        return 0
    minors = [determinant([row[:k] for row in rows[:k]], mode) for k in range(1, 8)]
    if all(m > 0 for m in minors):
        return 1
    if all((m < 0) if k % 2 else (m > 0) for k, m in enumerate(minors, start=1)):
        return -1
    return 0


def metric_from_phi(phi_cand: KForm) -> SymTensor2:
    """The metric g induced by a 3-form on R^7.

    A negative-definite β is accepted by flipping the orientation. The ninth
    root is taken exactly when det(B) is a rational ninth power, otherwise the
    result is returned in float mode.

    Raises:
        NotAG2FormError: if β is degenerate or indefinite.
    """
    if (phi_cand.dim, phi_cand.degree) != (7, 3):
        raise ContractViolation(f"metric_from_phi needs a 3-form on R^7, got degree {phi_cand.degree} on R^{phi_cand.dim}")
    mode = phi_cand.mode
    beta = beta_matrix(phi_cand)
    sign = _definiteness(beta, mode)
    if sign == 0:
        raise NotAG2FormError("β is degenerate or indefinite: not a G2 3-form")
    sixth = to_scalar("1/6", mode)
    b = [[sign * x * sixth for x in row] for row in beta]
    det_b = determinant(b, mode)
    if mode == ScalarMode.EXACT:
        root = rational_root(det_b, 9)
        if root is not None:
            return SymTensor2.of([[x / root for x in row] for row in b], mode)
        logger.debug(f"det(B) = {det_b} has no rational ninth root; falling back to float")
    factor = float(det_b) ** (-1.0 / 9.0)
    return SymTensor2.of([[float(x) * factor for x in row] for row in b], ScalarMode.FLOAT)
