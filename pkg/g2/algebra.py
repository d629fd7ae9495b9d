# =============================================================================
# g2/algebra.py
# =============================================================================
# 🎯 Purpose:
# The Lie algebra g2 ⊂ so(7) as the stabilizer of φ, and the infinitesimal
# action of 7x7 matrices on forms and symmetric tensors.
#
# ✅ Includes:
# - act_on_form(A, a): A acting as a derivation, (A·α)(v) = −α(Av) on 1-forms
# - act_on_sym(A, h): the same action on S², A·h = −(Aᵀh + hA)
# - g2_lie_algebra(): a basis of {A ∈ so(7) : A·φ = 0}, 14 elements
#
# ❌ Does not include:
# - The group G2 itself or any orbit classification
# =============================================================================

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from exterior.forms import KForm, derivation
from exterior.linalg import nullspace
from exterior.scalar import ScalarMode, combine, mode_of, to_scalar, zero
from g2.structure import G2Structure, SymTensor2
from models.errors import ContractViolation

logger = logging.getLogger(__name__)

Matrix = tuple[tuple, ...]


def _matrix_mode(a: Sequence[Sequence]) -> ScalarMode:
    return combine(*(mode_of(x) for row in a for x in row))


def _check_square(a: Sequence[Sequence], n: int):
    if len(a) != n or any(len(row) != n for row in a):
        raise ContractViolation(f"expected a {n}x{n} matrix")


def act_on_form(a: Sequence[Sequence], form: KForm) -> KForm:
    """The derivation action of the matrix ``a`` on ``form``."""
    _check_square(a, form.dim)
    mode = combine(form.mode, _matrix_mode(a))
    images = [
        KForm(form.dim, 1, tuple(-to_scalar(a[i][j], mode) for j in range(form.dim)), mode)
        for i in range(form.dim)
    ]
    return derivation(images, form)


def act_on_sym(a: Sequence[Sequence], h: SymTensor2) -> SymTensor2:
    _check_square(a, h.dim)
    n = h.dim
    mode = combine(h.mode, _matrix_mode(a))
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            acc = zero(mode)
            for i in range(n):
                acc -= a[i][j] * h[i, k] + h[j, i] * a[i][k]
            row.append(acc)
        rows.append(row)
    return SymTensor2.of(rows, mode)


def so_generators(n: int = 7, mode: ScalarMode = ScalarMode.EXACT) -> list[Matrix]:
    """E_ab − E_ba for a < b, in lexicographic order."""
    out = []
    for a, b in combinations(range(n), 2):
        rows = [[to_scalar(0, mode)] * n for _ in range(n)]
        rows[a][b] = to_scalar(1, mode)
        rows[b][a] = to_scalar(-1, mode)
        out.append(tuple(tuple(r) for r in rows))
    return out


def g2_lie_algebra(mode: ScalarMode = ScalarMode.EXACT) -> list[Matrix]:
    """Basis of the stabilizer of φ in so(7)."""
    return list(_g2_basis(ScalarMode(mode)))


@lru_cache(maxsize=None)
def _g2_basis(mode: ScalarMode) -> tuple[Matrix, ...]:
    phi = G2Structure.model(mode).phi
    gens = so_generators(7, mode)
    images = [act_on_form(e, phi).coeffs for e in gens]
    # 35 x 21 system: row r is the e^I coefficient of every generator's image
    rows = [[images[c][r] for c in range(len(gens))] for r in range(len(phi.coeffs))]
    kernel = nullspace(rows, mode)
    basis = []
    for x in kernel:
        m = [[zero(mode)] * 7 for _ in range(7)]
        for coeff, e in zip(x, gens):
            if coeff == 0:
                continue
            for i in range(7):
                for j in range(7):
                    m[i][j] += coeff * e[i][j]
        basis.append(tuple(tuple(r) for r in m))
    logger.debug(f"g2 stabilizer has dimension {len(basis)}")
    return tuple(basis)
