# =============================================================================
# liegeom/riemann.py
# =============================================================================
# 🎯 Purpose:
# Levi-Civita connection, curvature and Ricci tensor of a left-invariant
# metric, all exact, in the orthonormal basis of the structure constants.
#
# ✅ Includes:
# - levi_civita: Γ^k_ij with ∇_{e_i} e_j = Σ_k Γ^k_ij e_k (Koszul formula)
# - curvature_ricci: R^l_ijk = ⟨R(e_i, e_j) e_k, e_l⟩,
#   R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z, Ric(Y, Z) = Σ_i ⟨R(e_i, Y)Z, e_i⟩
# - covariant_derivative of invariant forms
# - residual helpers for metricity, torsion-freeness and the curvature symmetries
# =============================================================================

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from exterior.forms import KForm, Vector, derivation
from g2.structure import SymTensor2
from liegeom.algebra import LieAlgebraData
from models.errors import ContractViolation

logger = logging.getLogger(__name__)

Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]
Tensor4 = tuple[tuple[tuple[tuple[Fraction, ...], ...], ...], ...]


@dataclass(frozen=True)
class Curvature:
    riemann: Tensor4          # riemann[i][j][k][l] = ⟨R(e_i, e_j) e_k, e_l⟩
    ricci: SymTensor2
    scalar: Fraction

    def sectional(self, i: int, j: int) -> Fraction:
        """K(e_i, e_j) = ⟨R(e_i, e_j) e_j, e_i⟩, 0-based, i != j."""
        return self.riemann[i][j][j][i]


# -----------------------------------------------------------------------------
# 🔧 Connection
# -----------------------------------------------------------------------------

@lru_cache(maxsize=256)
def levi_civita(alg: LieAlgebraData) -> Tensor3:
    """gamma[i][j][k] = Γ^k_ij = ½(c^k_ij − c^i_jk + c^j_ki)."""
    n, c = alg.dim, alg.c
    half = Fraction(1, 2)
    return tuple(
        tuple(
            tuple(half * (c[k][i][j] - c[i][j][k] + c[j][k][i]) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def nabla(alg: LieAlgebraData, i: int, v: Vector) -> Vector:
    """∇_{e_i} v for a left-invariant field v."""
    gamma = levi_civita(alg)
    out = [Fraction(0)] * alg.dim
    for j in range(alg.dim):
        if v[j] == 0:
            continue
        for k in range(alg.dim):
            out[k] += v[j] * gamma[i][j][k]
    return Vector(alg.dim, tuple(out), v.mode)


def connection_residuals(alg: LieAlgebraData) -> tuple[Fraction, Fraction]:
    """(max |Γ^k_ij + Γ^j_ik|, max |Γ^k_ij − Γ^k_ji − c^k_ij|)."""
    gamma, c, n = levi_civita(alg), alg.c, alg.dim
    metric = max(abs(gamma[i][j][k] + gamma[i][k][j]) for i in range(n) for j in range(n) for k in range(n))
    torsion = max(
        abs(gamma[i][j][k] - gamma[j][i][k] - c[k][i][j]) for i in range(n) for j in range(n) for k in range(n)
    )
    return metric, torsion


def covariant_derivative(alg: LieAlgebraData, i: int, a: KForm) -> KForm:
    """∇_{e_i} a for an invariant form: ∇_{e_i} e^k = −Σ_m Γ^k_im e^m, extended as a derivation."""
    if a.dim != alg.dim:
        raise ContractViolation(f"form on R^{a.dim} for a {alg.dim}-dimensional Lie algebra")
    if a.degree == 0:
        return a * 0
    gamma = levi_civita(alg)
    images = [KForm(alg.dim, 1, tuple(-gamma[i][m][k] for m in range(alg.dim))) for k in range(alg.dim)]
    return derivation(images, a)


# -----------------------------------------------------------------------------
# 🌐 Curvature
# -----------------------------------------------------------------------------

@lru_cache(maxsize=256)
def curvature_ricci(alg: LieAlgebraData) -> Curvature:
    n, c = alg.dim, alg.c
    g = levi_civita(alg)
    zero = Fraction(0)
    riemann = [[[[zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(n):
                    value = zero
                    for m in range(n):
                        value += g[j][k][m] * g[i][m][l] - g[i][k][m] * g[j][m][l] - c[m][i][j] * g[m][k][l]
                    riemann[i][j][k][l] = value
                    riemann[j][i][k][l] = -value
    ricci_rows = [[sum((riemann[i][j][k][i] for i in range(n)), zero) for k in range(n)] for j in range(n)]
    ricci = SymTensor2.of(ricci_rows)
    frozen = tuple(tuple(tuple(tuple(r) for r in rk) for rk in rj) for rj in riemann)
    logger.debug(f"curvature computed, scal = {ricci.trace()}")
    return Curvature(riemann=frozen, ricci=ricci, scalar=ricci.trace())


def curvature_symmetry_residual(curv: Curvature) -> Fraction:
    """Largest violation of the skew, pair and first Bianchi symmetries."""
    r = curv.riemann
    n = len(r)
    worst = Fraction(0)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    worst = max(
                        worst,
                        abs(r[i][j][k][l] + r[j][i][k][l]),
                        abs(r[i][j][k][l] + r[i][j][l][k]),
                        abs(r[i][j][k][l] - r[k][l][i][j]),
                        abs(r[i][j][k][l] + r[j][k][i][l] + r[k][i][j][l]),
                    )
    return worst
