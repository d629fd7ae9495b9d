# =============================================================================
# variations/checks.py
# =============================================================================
# 🎯 Purpose:
# Finite-difference verification of the first and second variation of volume
# and of the pointwise second derivative of the volume density, on flat
# ambient spaces where every quantity has an independent oracle.
#
# ✅ Includes:
# - first_variation_check: dVol/dt against −∫ H·Z⊥
# - second_variation_check: d²Vol/dt² against ∫ (|(∇Z)⊥|² − |(∇Z)ᵀ|²)
# - density_second_derivative_check: f''(0) by finite differences, by the
#   classical density formula and by ψ̈ + |C_Z|² on coassociative Σ₀
# - moduli_fibration_demo: the flat fibration T⁷ → T³ and its self-dual forms
# - volume_curve / write_curve_csv: (t, Vol, dVol, d²Vol) rows
#
# Derivatives in t are central differences with step h_t, optionally
# Richardson-extrapolated from h_t and h_t/2.
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, TextIO

import numpy as np

from exterior.forms import KForm, Vector, evaluate_many, form_inner
from exterior.linalg import rank
from exterior.plane import OrientedPlane
from exterior.scalar import ScalarMode
from g2.frames import CoassocFrame, normal_to_selfdual
from g2.products import coassociator
from g2.structure import G2Structure, SymTensor2
from identities.pointwise import (
    ShapeData, VariationPointData, first_variation_density, secvar_integrand, selfdual_residual,
)
from models.errors import PreconditionRefused
from variations.families import PARAM_DIM, AffineFiberFamily, ImmersionFamily
from variations.geometry import (
    QuadratureSpec, _batch, _mean_curvature, _slabs, calibration_defect_max, integrate, volume,
)

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 🧮 Finite differences in t
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class TDerivatives:
    value: float
    first: float
    second: float
    samples: dict = field(default_factory=dict)     # t → f(t)


def t_derivatives(fn: Callable[[float], float], t: float, h: float, richardson: bool = False) -> TDerivatives:
    """Central first and second differences of ``fn`` at ``t``."""
    samples = {t: fn(t), t + h: fn(t + h), t - h: fn(t - h)}

    def diffs(step: float) -> tuple[float, float]:
        plus, minus, mid = samples[t + step], samples[t - step], samples[t]
        return (plus - minus) / (2 * step), (plus - 2 * mid + minus) / step ** 2

    first, second = diffs(h)
    if richardson:
        half = h / 2
        samples[t + half] = fn(t + half)
        samples[t - half] = fn(t - half)
        first_half, second_half = diffs(half)
        first = (4 * first_half - first) / 3
        second = (4 * second_half - second) / 3
    return TDerivatives(samples[t], first, second, samples)


def _scaled_error(measured: float, predicted: float) -> float:
    """|measured − predicted| relative to max(1, |predicted|)."""
    return abs(measured - predicted) / max(1.0, abs(predicted))


# -----------------------------------------------------------------------------
# 📍 Pointwise helpers
# -----------------------------------------------------------------------------

def _point(u) -> np.ndarray:
    return np.asarray(u, dtype=float).reshape(1, PARAM_DIM)


def _float_vector(values) -> Vector:
    return Vector.of((float(x) for x in values), ScalarMode.FLOAT)


def _tangent_part_max(fam: ImmersionFamily, q: QuadratureSpec) -> float:
    """max over the grid of |Zᵀ| at t = 0."""
    worst = 0.0
    for pts, _ in _slabs(fam, q):
        b = _batch(fam, 0.0, pts, q)
        z = fam.velocity_fn(0.0, pts).T
        zt = z - np.einsum("mab,mb->ma", b.normal, z)
        worst = max(worst, float(np.max(np.linalg.norm(zt, axis=1))))
    return worst


def _mean_curvature_max(fam: ImmersionFamily, q: QuadratureSpec) -> float:
    worst = 0.0
    for pts, _ in _slabs(fam, q):
        b = _batch(fam, 0.0, pts, q, with_hessian=True)
        worst = max(worst, float(np.max(np.linalg.norm(_mean_curvature(b), axis=1))))
    return worst


def _coassoc_frame_at(fam: ImmersionFamily, u, q: QuadratureSpec) -> CoassocFrame:
    b = _batch(fam, 0.0, _point(u), q)
    columns = [_float_vector(b.jac[:, k, 0]) for k in range(PARAM_DIM)]
    return CoassocFrame.from_plane(OrientedPlane(7, tuple(columns), q.tolerance))


# -----------------------------------------------------------------------------
# 📉 First variation
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FirstVariationReport:
    family: str
    volume: float
    dvol_fd: float                        # central-difference dVol/dt at t = 0
    dvol_formula: float                   # −∫ H·Z⊥
    scaled_error: float
    volume_drift: float                   # max |Vol(±h) − Vol(0)|
    g2_density_max: float | None = None   # |τ₂|Σ⁺ ∧ (Z⊥ ⌟ φ)|Σ| at a sample point (τ₂ = 0 on flat T⁷)
    calibration_defect: float | None = None

    @property
    def max_residual(self) -> float:
        extra = [x for x in (self.g2_density_max, self.calibration_defect) if x is not None]
        return max([self.scaled_error, *extra])


def first_variation_check(fam: ImmersionFamily, q: QuadratureSpec | None = None) -> FirstVariationReport:
    q = q or QuadratureSpec()
    d = t_derivatives(lambda t: volume(fam, t, q), 0.0, q.h_t, q.richardson)

    def flux(pts):
        b = _batch(fam, 0.0, pts, q, with_hessian=True)
        h = _mean_curvature(b)
        z = fam.velocity_fn(0.0, pts).T
        z_perp = np.einsum("mab,mb->ma", b.normal, z)
        return -np.einsum("ma,ma->m", h, z_perp) * b.density

    formula = integrate(fam, q, flux)
    drift = max(abs(v - d.value) for v in d.samples.values())

    g2_density = calibration = None
    if fam.coassociative:
        frame = _coassoc_frame_at(fam, fam.sample_point(), q)
        z = fam.velocity_fn(0.0, _point(fam.sample_point()))[:, 0]
        z_perp = frame.plane.normal_part(_float_vector(z))
        density = first_variation_density(KForm.zero(7, 2, ScalarMode.FLOAT), z_perp, frame)
        g2_density = density.density.max_abs()
        calibration = calibration_defect_max(fam, 0.0, q)

    report = FirstVariationReport(
        family=fam.name,
        volume=d.value,
        dvol_fd=d.first,
        dvol_formula=formula,
        scaled_error=_scaled_error(d.first, formula),
        volume_drift=drift,
        g2_density_max=g2_density,
        calibration_defect=calibration,
    )
    logger.info(f"first variation of {fam.name}: FD {d.first:.12g}, formula {formula:.12g}")
    return report


# -----------------------------------------------------------------------------
# 📈 Second variation
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SecondVariationReport:
    family: str
    d2vol_fd: float
    d2vol_formula: float                  # ∫ Σ (∇_{e_i}Z·f_j)² − (∇_{e_i}Z·e_j)²
    scaled_error: float
    theorem_rhs: float | None = None      # torsion and Ricci integrand at the sample point
    theorem_note: str | None = None

    @property
    def max_residual(self) -> float:
        return max(self.scaled_error, abs(self.theorem_rhs or 0.0))


def _shape_terms(b, dz: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(Σ|(∇_{e_i}Z)ᵀ|² , Σ|(∇_{e_i}Z)⊥|²) over an orthonormal tangent frame."""
    frames = np.moveaxis(b.jac, -1, 0)                 # (m, 7, 4)
    dzm = np.moveaxis(dz, -1, 0)                       # (m, 7, 4)
    n = np.einsum("mak,mal->mkl", dzm, frames)         # ⟨∂_k Z, ∂_l ι⟩
    gi = b.inverse
    tangential = np.einsum("mij,mjk,mkl,mil->m", gi, n, gi, n)
    normal_dz = np.einsum("mab,mbk->mak", b.normal, dzm)
    normal = np.einsum("mkl,mak,mal->m", gi, normal_dz, normal_dz)
    return tangential, normal


def _theorem_rhs(fam: ImmersionFamily, q: QuadratureSpec) -> float:
    u = fam.sample_point()
    frame = _coassoc_frame_at(fam, u, q)
    pts = _point(u)
    b = _batch(fam, 0.0, pts, q)
    z = _float_vector(fam.velocity_fn(0.0, pts)[:, 0])
    # (∇_{e_a}Z)ᵀ in the orthonormal tangent frame
    onb = np.array([v.to_numpy() for v in frame.plane.onb])                 # (4, 7)
    coords = np.linalg.lstsq(b.jac[:, :, 0], onb.T, rcond=None)[0]           # ∂-coordinates of each e_a
    dz = fam.velocity_jacobian_fn(0.0, pts)[:, :, 0] @ coords               # (7, 4): ∇_{e_a} Z
    shape = tuple(tuple(float(onb[c] @ dz[:, a]) for a in range(4)) for c in range(4))
    point = VariationPointData(
        tau2=KForm.zero(7, 2, ScalarMode.FLOAT),
        ric=SymTensor2.zero(7, ScalarMode.FLOAT),
        z=frame.plane.normal_part(z),
        shape=ShapeData(frame, shape),
        tolerance=q.tolerance,
    )
    return float(secvar_integrand(point).scalar())


def second_variation_check(fam: ImmersionFamily, q: QuadratureSpec | None = None) -> SecondVariationReport:
    """Raises:
        PreconditionRefused: if Σ₀ is not minimal or Z is not normal.
    """
    q = q or QuadratureSpec()
    h_max = _mean_curvature_max(fam, q)
    if h_max > q.tolerance:
        raise PreconditionRefused(f"{fam.name}: Σ₀ is not minimal", h_max)
    zt_max = _tangent_part_max(fam, q)
    if zt_max > q.tolerance:
        raise PreconditionRefused(f"{fam.name}: variation field is not normal", zt_max)

    d = t_derivatives(lambda t: volume(fam, t, q), 0.0, q.h_t, q.richardson)

    def integrand(pts):
        b = _batch(fam, 0.0, pts, q)
        tangential, normal = _shape_terms(b, fam.velocity_jacobian_fn(0.0, pts))
        return (normal - tangential) * b.density

    formula = integrate(fam, q, integrand)
    rhs = note = None
    if fam.coassociative:
        rhs = _theorem_rhs(fam, q)
        note = (f"{fam.ambient} is flat: τ₂ = 0 and Ric = 0, so the torsion and Ricci integrand "
                "vanishes identically and d²Vol reduces to the shape terms")
    logger.info(f"second variation of {fam.name}: FD {d.second:.12g}, formula {formula:.12g}")
    return SecondVariationReport(
        family=fam.name,
        d2vol_fd=d.second,
        d2vol_formula=formula,
        scaled_error=_scaled_error(d.second, formula),
        theorem_rhs=rhs,
        theorem_note=note,
    )


# -----------------------------------------------------------------------------
# 🔬 Density second derivative
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    family: str
    u: tuple[float, ...]
    direct: float                         # f''(0) by finite differences of the density ratio
    classical: float                      # classical density formula
    coassociative: float | None           # ψ̈ + |C_Z|²
    c_z_norm2: float | None               # |C_Z|²
    deviations: dict                      # pairwise |difference|

    @property
    def max_residual(self) -> float:
        return max(self.deviations.values(), default=0.0)


def _divergence_tangential(fam: ImmersionFamily, u: np.ndarray, q: QuadratureSpec) -> float:
    """div_Σ((∇_Z Z)ᵀ) at t = 0 by central differences in u."""
    h = q.h_u

    def flux(point: np.ndarray) -> np.ndarray:
        pts = _point(point)
        b = _batch(fam, 0.0, pts, q)
        x = fam.acceleration_fn(0.0, pts)[:, 0]
        coeffs = b.inverse[0] @ (b.jac[:, :, 0].T @ x)
        return b.density[0] * coeffs

    center = _batch(fam, 0.0, _point(u), q).density[0]
    total = 0.0
    for k in range(PARAM_DIM):
        step = np.zeros(PARAM_DIM)
        step[k] = h
        total += (flux(u + step)[k] - flux(u - step)[k]) / (2 * h)
    return total / center


def density_second_derivative_check(
    fam: ImmersionFamily, q: QuadratureSpec | None = None, u=None,
) -> DensityReport:
    """f''(0) at the parameter point ``u`` three ways.

    The ψ̈ + |C_Z|² version is only computed when Σ₀ is coassociative.

    Raises:
        PreconditionRefused: if Z is not normal at u.
    """
    q = q or QuadratureSpec()
    u = np.asarray(fam.sample_point() if u is None else u, dtype=float)
    pts = _point(u)
    b = _batch(fam, 0.0, pts, q, with_hessian=True)
    z = fam.velocity_fn(0.0, pts)[:, 0]
    zt = z - b.normal[0] @ z
    if np.linalg.norm(zt) > q.tolerance:
        raise PreconditionRefused(f"{fam.name}: variation field is not normal at u={tuple(u)}", float(np.linalg.norm(zt)))

    # (a) direct
    s0 = b.density[0]
    direct = t_derivatives(lambda t: _batch(fam, t, pts, q).density[0] / s0, 0.0, q.h_t, q.richardson).second

    # (b) classical formula in a flat ambient
    h_vec = _mean_curvature(b)[0]
    gi = b.inverse[0]
    m = np.einsum("a,akl->kl", z, b.hessian[:, :, :, 0])
    second_form = -np.trace(gi @ m @ gi @ m)
    acceleration = fam.acceleration_fn(0.0, pts)[:, 0]
    tangential, normal = _shape_terms(b, fam.velocity_jacobian_fn(0.0, pts))
    classical = (
        second_form
        + _divergence_tangential(fam, u, q)
        - h_vec @ (b.normal[0] @ acceleration)
        + normal[0]
        + (h_vec @ z) ** 2
    )

    # (c) ψ̈ + |C_Z|² on coassociative Σ₀
    coassoc = c_z_norm2 = None
    if fam.coassociative:
        psi = G2Structure.model(ScalarMode.FLOAT).psi

        def tangents(t: float) -> np.ndarray:
            return _batch(fam, t, pts, q).jac[:, :, 0].T                    # (4, 7)

        def psi_ratio(t: float) -> float:
            return float(evaluate_many(psi, tangents(t)[None])[0]) / s0

        def c_ratio(t: float) -> np.ndarray:
            return coassociator([_float_vector(v) for v in tangents(t)]).to_numpy() / s0

        psi_dd = t_derivatives(psi_ratio, 0.0, q.h_t, q.richardson).second
        c_z = (c_ratio(q.h_t) - c_ratio(-q.h_t)) / (2 * q.h_t)
        if q.richardson:
            half = q.h_t / 2
            c_z = (4 * (c_ratio(half) - c_ratio(-half)) / (2 * half) - c_z) / 3
        c_z_norm2 = float(c_z @ c_z)
        coassoc = psi_dd + c_z_norm2

    values = {"direct": direct, "classical": float(classical)}
    if coassoc is not None:
        values["coassociative"] = coassoc
    names = list(values)
    deviations = {
        f"{a}-{b_}": abs(values[a] - values[b_]) for i, a in enumerate(names) for b_ in names[i + 1:]
    }
    return DensityReport(
        family=fam.name,
        u=tuple(float(x) for x in u),
        direct=direct,
        classical=float(classical),
        coassociative=coassoc,
        c_z_norm2=c_z_norm2,
        deviations=deviations,
    )


# -----------------------------------------------------------------------------
# 🧭 Flat coassociative fibration
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FibrationReport:
    selfdual_forms: tuple[str, ...]       # (e_i ⌟ φ)|fibre for the base directions e1, e2, e3
    gram: tuple[tuple[Fraction, ...], ...]
    span_rank: int
    antiselfdual_max: Fraction
    constancy_deviation: float            # max over sample points of the change in each form
    volumes: tuple[float, ...]
    volume_drift: float
    calibration_defect: float

    @property
    def max_residual(self) -> float:
        gram_error = max(
            abs(float(self.gram[i][j]) - (2.0 if i == j else 0.0)) for i in range(3) for j in range(3)
        )
        rank_error = float(3 - self.span_rank)
        return max(gram_error, rank_error, float(self.antiselfdual_max), self.constancy_deviation,
                   self.volume_drift, self.calibration_defect)


def moduli_fibration_demo(q: QuadratureSpec | None = None, steps: int = 10) -> FibrationReport:
    """Fibres b × T⁴ of T⁷ → T³ along a path in the base."""
    q = q or QuadratureSpec()
    frame = CoassocFrame.model()
    zs = [Vector.e(i) for i in (1, 2, 3)]
    forms = [normal_to_selfdual(z, frame) for z in zs]
    gram = tuple(tuple(form_inner(a, b) for b in forms) for a in forms)
    span = rank([list(f.coeffs) for f in forms], ScalarMode.EXACT)
    asd = max(max((abs(x) for x in selfdual_residual(frame, z)[0].coeffs), default=Fraction(0)) for z in zs)

    fam = AffineFiberFamily(direction=(1.0, 0.5, 0.25))
    reference = [f.to_numpy() for f in forms]
    deviation = 0.0
    for u in ([0.1, 0.2, 0.3, 0.4], [0.7, 0.05, 0.9, 0.55], list(fam.sample_point())):
        local = _coassoc_frame_at(fam, u, q)
        for z, ref in zip(zs, reference):
            image = normal_to_selfdual(z.as_mode(ScalarMode.FLOAT), local).to_numpy()
            deviation = max(deviation, float(np.max(np.abs(image - ref))))

    ts = [s / steps for s in range(steps + 1)]
    vols = tuple(volume(fam, t, q) for t in ts)
    calibration = max(calibration_defect_max(fam, t, q) for t in ts)
    report = FibrationReport(
        selfdual_forms=tuple(str(f) for f in forms),
        gram=gram,
        span_rank=span,
        antiselfdual_max=asd,
        constancy_deviation=deviation,
        volumes=vols,
        volume_drift=max(abs(v - vols[0]) for v in vols),
        calibration_defect=calibration,
    )
    logger.info(f"fibration demo: volume drift {report.volume_drift:.3e}, Gram {gram}")
    return report


# -----------------------------------------------------------------------------
# 📄 Volume curves
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveRow:
    t: float
    vol: float
    dvol: float
    d2vol: float


def volume_curve(fam: ImmersionFamily, ts: Iterable[float], q: QuadratureSpec | None = None) -> list[CurveRow]:
    q = q or QuadratureSpec()
    rows = []
    for t in ts:
        d = t_derivatives(lambda s: volume(fam, s, q), float(t), q.h_t, q.richardson)
        rows.append(CurveRow(float(t), d.value, d.first, d.second))
    return rows


def write_curve_csv(rows: Iterable[CurveRow], stream: TextIO):
    """``repr`` keeps full precision and a '.' decimal separator regardless of locale."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["t", "vol", "dvol", "d2vol"])
    for row in rows:
        writer.writerow([repr(row.t), repr(row.vol), repr(row.dvol), repr(row.d2vol)])
