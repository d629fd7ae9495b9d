# =============================================================================
# liegeom/ce.py
# =============================================================================
# 🎯 Purpose:
# Exterior derivative of left-invariant forms (Chevalley–Eilenberg complex).
#
# de^k = −Σ_{i<j} c^k_ij e^{ij}, so (de^k)(e_i, e_j) = −c^k_ij, extended to all
# degrees as an antiderivation.
# =============================================================================

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from exterior.forms import KForm, derivation
from liegeom.algebra import LieAlgebraData
from models.errors import ContractViolation


@lru_cache(maxsize=256)
def ce_images(alg: LieAlgebraData) -> tuple[KForm, ...]:
    """(de^1, ..., de^n)."""
    out = []
    for k in range(alg.dim):
        terms = {(i, j): -alg.c[k][i][j] for i, j in combinations(range(alg.dim), 2) if alg.c[k][i][j] != 0}
        out.append(KForm.from_terms(alg.dim, terms) if terms else KForm.zero(alg.dim, 2))
    return tuple(out)


def ce_differential(alg: LieAlgebraData, a: KForm) -> KForm:
    if a.dim != alg.dim:
        raise ContractViolation(f"form on R^{a.dim} for a {alg.dim}-dimensional Lie algebra")
    if a.degree == a.dim:
        return a * 0
    if a.degree == 0:
        return KForm.zero(a.dim, 1, a.mode)
    return derivation(ce_images(alg), a)
