# =============================================================================
# liegeom/submersion.py
# =============================================================================
# 🎯 Purpose:
# Riemannian submersions G → G/V for a coordinate ideal V of a Lie algebra
# with orthonormal basis, and O'Neill's tensors for them.
#
# ✅ Includes:
# - SubmersionSplit: vertical ideal V = span(e_v : v ∈ vertical), horizontal complement
# - oneill_analysis: A_XY = (∇_XY)^ver, T_VW = (∇_VW)^hor, the curvature identity
#   ⟨R(X,Y)Y,X⟩ = ⟨R^B(X,Y)Y,X⟩ − 3|A_XY|², the A-control identity
#   |(∇_XV)^hor|² = Σ_j (A_{f_j}X · V)² and the Ricci decomposition for horizontal Z
# - cor_g2sub_check: T ≡ 0 and A ≡ 0 on a coassociative ideal force Ric = 0 and τ₂ = 0
#
# ❌ Does not include:
# - Non-coordinate splits (rotate the basis first)
# =============================================================================

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from exterior.forms import Vector
from exterior.plane import OrientedPlane, restrict
from g2.structure import G2Structure
from liegeom.algebra import LieAlgebraData, _freeze
from liegeom.closed import ClosedG2Algebra
from liegeom.riemann import curvature_ricci, nabla
from models.errors import NotCoassociativeError, NotIdealError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 📦 Split
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SubmersionSplit:
    """``vertical`` holds 0-based basis indices spanning an ideal."""

    alg: LieAlgebraData
    vertical: tuple[int, ...]
    horizontal: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        vertical = tuple(sorted(set(self.vertical)))
        object.__setattr__(self, "vertical", vertical)
        object.__setattr__(self, "horizontal", tuple(i for i in range(self.alg.dim) if i not in vertical))
        for v in vertical:
            for i in range(self.alg.dim):
                for k in self.horizontal:
                    if self.alg.c[k][i][v] != 0:
                        raise NotIdealError(
                            f"[e{i + 1}, e{v + 1}] has horizontal component along e{k + 1}: not an ideal"
                        )

    @classmethod
    def from_labels(cls, alg: LieAlgebraData, vertical: str) -> SubmersionSplit:
        """``from_labels(alg, "4567")`` uses span(e4, ..., e7) as the fibre."""
        return cls(alg, tuple(int(ch) - 1 for ch in vertical))

    def quotient(self) -> LieAlgebraData:
        """The base algebra: brackets of horizontal vectors projected to the horizontal space."""
        h = self.horizontal
        table = [[[self.alg.c[k][i][j] for j in h] for i in h] for k in h]
        return LieAlgebraData(len(h), _freeze(table))

    def ver(self, v: Vector) -> Vector:
        return Vector(v.dim, tuple(x if i in self.vertical else 0 for i, x in enumerate(v)), v.mode)

    def hor(self, v: Vector) -> Vector:
        return v - self.ver(v)


# -----------------------------------------------------------------------------
# 📐 O'Neill tensors
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class OneillReport:
    a_tensor: dict                       # (x, y) horizontal, 1-based → A_{e_x} e_y
    t_tensor: dict                       # (v, w) vertical, 1-based → T_{e_v} e_w
    a_half_bracket_residual: Fraction    # max |A_XY − ½[X, Y]^ver| over horizontal X, Y
    curvature_residual: Fraction         # max |⟨R(X,Y)Y,X⟩ − ⟨R^B(X,Y)Y,X⟩ + 3|A_XY|²|
    a_control_residual: Fraction         # max ||(∇_XV)^hor|² − Σ_j (A_{f_j}X · V)²|
    ricci_split_residual: Fraction       # max |Ric(Z,Z) − Σ_ver K − Ric^B(Z,Z) + 3Σ_j|A_{f_j}Z|²|
    sectional: dict                      # (x, y) → (K, K^B, |A_XY|²)
    base_ricci_zero: bool
    a_is_zero: bool
    t_is_zero: bool

    @property
    def max_residual(self) -> Fraction:
        return max(
            self.a_half_bracket_residual,
            self.curvature_residual,
            self.a_control_residual,
            self.ricci_split_residual,
        )


def oneill_analysis(s: SubmersionSplit) -> OneillReport:
    alg = s.alg
    n = alg.dim
    e = [Vector.e(i + 1, n) for i in range(n)]
    curv = curvature_ricci(alg)
    base = s.quotient()
    base_curv = curvature_ricci(base)
    pos = {k: p for p, k in enumerate(s.horizontal)}
    zero = Fraction(0)

    a_tensor, t_tensor = {}, {}
    a_half = zero
    for x in s.horizontal:
        for y in s.horizontal:
            a_xy = s.ver(nabla(alg, x, e[y]))
            a_tensor[(x + 1, y + 1)] = a_xy
            half_bracket = s.ver(alg.bracket_basis(x, y)) * Fraction(1, 2)
            a_half = max(a_half, max(abs(c) for c in (a_xy - half_bracket)))
    for v in s.vertical:
        for w in s.vertical:
            t_tensor[(v + 1, w + 1)] = s.hor(nabla(alg, v, e[w]))

    curvature_res = zero
    sectional = {}
    for x in s.horizontal:
        for y in s.horizontal:
            if x == y:
                continue
            k_total = curv.sectional(x, y)
            k_base = base_curv.sectional(pos[x], pos[y])
            a_sq = a_tensor[(x + 1, y + 1)].norm2()
            sectional[(x + 1, y + 1)] = (k_total, k_base, a_sq)
            curvature_res = max(curvature_res, abs(k_total - k_base + 3 * a_sq))

    a_control = zero
    for x in s.horizontal:
        for v in s.vertical:
            lhs = s.hor(nabla(alg, x, e[v])).norm2()
            rhs = sum((a_tensor[(f + 1, x + 1)].dot(e[v]) ** 2 for f in s.horizontal), zero)
            a_control = max(a_control, abs(lhs - rhs))

    ricci_res = zero
    for z in s.horizontal:
        vertical_part = sum((curv.riemann[i][z][z][i] for i in s.vertical), zero)
        a_part = sum((a_tensor[(f + 1, z + 1)].norm2() for f in s.horizontal), zero)
        expected = vertical_part + base_curv.ricci[pos[z], pos[z]] - 3 * a_part
        ricci_res = max(ricci_res, abs(curv.ricci[z, z] - expected))

    report = OneillReport(
        a_tensor=a_tensor,
        t_tensor=t_tensor,
        a_half_bracket_residual=a_half,
        curvature_residual=curvature_res,
        a_control_residual=a_control,
        ricci_split_residual=ricci_res,
        sectional=sectional,
        base_ricci_zero=base_curv.ricci.is_zero(),
        a_is_zero=all(v.is_zero() for v in a_tensor.values()),
        t_is_zero=all(v.is_zero() for v in t_tensor.values()),
    )
    logger.debug(f"O'Neill analysis: A zero {report.a_is_zero}, T zero {report.t_is_zero}")
    return report


# -----------------------------------------------------------------------------
# 🔷 Coassociative fibrations
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class CorollaryReport:
    premises_hold: bool                  # T ≡ 0 and A ≡ 0
    nonzero_tensors: tuple[str, ...]     # which of "A", "T" fail the premise
    conclusions: dict                    # name → holds, only filled when the premises hold
    consistent: bool                     # False when the premises hold but a conclusion fails


def cor_g2sub_check(g2alg: ClosedG2Algebra, s: SubmersionSplit, oneill: OneillReport | None = None) -> CorollaryReport:
    """If T ≡ 0 and A ≡ 0 then Ric^B = 0, Ric = 0, τ₂ = 0 and dψ = 0.

    ``oneill`` may be supplied to evaluate the implication on given tensor
    data instead of the computed ones.

    Raises:
        NotCoassociativeError: if the vertical space is not a coassociative 4-plane.
    """
    if len(s.vertical) != 4:
        raise NotCoassociativeError(f"fibres must be 4-dimensional, got {len(s.vertical)}")
    g2 = G2Structure.model()
    plane = OrientedPlane(7, tuple(Vector.e(v + 1) for v in s.vertical))
    if not restrict(g2.phi, plane).is_zero():
        raise NotCoassociativeError(f"φ does not vanish on span{tuple(v + 1 for v in s.vertical)}")

    report = oneill or oneill_analysis(s)
    nonzero = tuple(name for name, zero in (("A", report.a_is_zero), ("T", report.t_is_zero)) if not zero)
    if nonzero:
        logger.info(f"corollary premises fail: nonzero {', '.join(nonzero)}")
        return CorollaryReport(premises_hold=False, nonzero_tensors=nonzero, conclusions={}, consistent=True)

    conclusions = {
        "base_ricci_zero": report.base_ricci_zero,
        "ricci_zero": g2alg.ricci.is_zero(),
        "tau2_zero": g2alg.tau2.is_zero(),
        "dpsi_zero": g2alg.dpsi.is_zero(),
    }
    consistent = all(conclusions.values())
    if not consistent:
        logger.warning(f"corollary inconsistency: premises hold but {conclusions}")
    return CorollaryReport(premises_hold=True, nonzero_tensors=(), conclusions=conclusions, consistent=consistent)
