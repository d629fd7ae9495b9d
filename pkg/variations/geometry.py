# =============================================================================
# variations/geometry.py
# =============================================================================
# 🎯 Purpose:
# Pointwise and integrated extrinsic geometry of an immersion family in a flat
# ambient space: first fundamental form, volume density, mean curvature
# vector and normal projector, and quadrature of the volume.
#
# ✅ Includes:
# - QuadratureSpec: grid resolution, finite-difference steps, derivative source
# - GeometrySample / sample_geometry: geometry at a single parameter point
# - volume: tensor-product quadrature of √det g (periodic trapezoid on tori,
#   Gauss-Legendre × trapezoid on the sphere chart)
# - mean_curvature: H = g^{ij} (∂²ι/∂u_i∂u_j)^⊥
# - calibration_defect_max: max over the grid of |ι*ψ / vol − 1|
#
# ❌ Does not include:
# - Curved ambient metrics
# =============================================================================

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from exterior.forms import evaluate_many
from exterior.scalar import ScalarMode
from g2.structure import G2Structure
from models.errors import DegeneratePlaneError
from variations.families import AMBIENT_DIM, PARAM_DIM, ImmersionFamily

logger = logging.getLogger(__name__)

DEGENERATE_DET = 1e-300


# -----------------------------------------------------------------------------
# ⚙️ Quadrature settings
# -----------------------------------------------------------------------------

class QuadratureSpec(BaseModel):
    grid: int = Field(default=16, ge=8)                          # nodes per parameter axis
    h_t: float = Field(default=1e-3, gt=0)                       # finite-difference step in t
    h_u: float = Field(default=1e-4, gt=0)                       # finite-difference step in u
    tolerance: float = Field(default=1e-10, gt=0)                # zero threshold for pointwise quantities
    derivatives: Literal["exact", "central"] = "exact"          # symbolic derivatives or central differences in u
    richardson: bool = False                                     # extrapolate t-derivatives from h_t and h_t/2
    threads: int = Field(default=1, ge=1)                        # workers over grid slabs


# -----------------------------------------------------------------------------
# 📦 Samples
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometrySample:
    u: tuple[float, ...]
    metric: np.ndarray            # g_ij, 4 × 4
    density: float                # √det g
    mean_curvature: np.ndarray    # H, 7
    normal_projector: np.ndarray  # P⊥, 7 × 7


@dataclass(frozen=True)
class _Batch:
    """Geometry on an array of parameter points; ambient/parameter axes first."""

    jac: np.ndarray        # (7, 4, m)
    metric: np.ndarray     # (m, 4, 4)
    inverse: np.ndarray    # (m, 4, 4)
    density: np.ndarray    # (m,)
    normal: np.ndarray     # (m, 7, 7)
    hessian: np.ndarray | None = None   # (7, 4, 4, m)


# -----------------------------------------------------------------------------
# 🔧 Derivatives
# -----------------------------------------------------------------------------

def jacobian(fam: ImmersionFamily, t: float, u: np.ndarray, q: QuadratureSpec) -> np.ndarray:
    if q.derivatives == "exact":
        return fam.jacobian_fn(t, u)
    h = q.h_u
    cols = []
    for k in range(PARAM_DIM):
        step = np.zeros(PARAM_DIM)
        step[k] = h
        cols.append((fam.point_fn(t, u + step) - fam.point_fn(t, u - step)) / (2 * h))
    return np.stack(cols, axis=1)


def hessian(fam: ImmersionFamily, t: float, u: np.ndarray, q: QuadratureSpec) -> np.ndarray:
    if q.derivatives == "exact":
        return fam.hessian_fn(t, u)
    h = q.h_u
    shape = (AMBIENT_DIM, PARAM_DIM, PARAM_DIM) + np.shape(u)[:-1]
    out = np.empty(shape)
    center = fam.point_fn(t, u)
    eye = np.eye(PARAM_DIM) * h
    for k in range(PARAM_DIM):
        plus, minus = fam.point_fn(t, u + eye[k]), fam.point_fn(t, u - eye[k])
        out[:, k, k] = (plus - 2 * center + minus) / h ** 2
        for l in range(k + 1, PARAM_DIM):
            mixed = (
                fam.point_fn(t, u + eye[k] + eye[l]) - fam.point_fn(t, u + eye[k] - eye[l])
                - fam.point_fn(t, u - eye[k] + eye[l]) + fam.point_fn(t, u - eye[k] - eye[l])
            ) / (4 * h ** 2)
            out[:, k, l] = mixed
            out[:, l, k] = mixed
    return out


def _batch(fam: ImmersionFamily, t: float, u: np.ndarray, q: QuadratureSpec, with_hessian: bool = False) -> _Batch:
    """``u`` has shape (m, 4)."""
    jac = jacobian(fam, t, u, q)
    frames = np.moveaxis(jac, -1, 0)                      # (m, 7, 4)
    metric = np.einsum("mak,mal->mkl", frames, frames)
    det = np.linalg.det(metric)
    bad = np.flatnonzero(det <= DEGENERATE_DET)
    if bad.size:
        where = tuple(float(x) for x in u[bad[0]])
        raise DegeneratePlaneError(f"degenerate first fundamental form of {fam.name} at t={t}, u={where}")
    inverse = np.linalg.inv(metric)
    tangent = np.einsum("mak,mkl,mbl->mab", frames, inverse, frames)
    normal = np.eye(AMBIENT_DIM)[None, :, :] - tangent
    return _Batch(
        jac=jac,
        metric=metric,
        inverse=inverse,
        density=np.sqrt(det),
        normal=normal,
        hessian=hessian(fam, t, u, q) if with_hessian else None,
    )


def _mean_curvature(b: _Batch) -> np.ndarray:
    """(m, 7)."""
    traced = np.einsum("mkl,aklm->ma", b.inverse, b.hessian)
    return np.einsum("mab,mb->ma", b.normal, traced)


# -----------------------------------------------------------------------------
# 📍 Pointwise geometry
# -----------------------------------------------------------------------------

def sample_geometry(fam: ImmersionFamily, t: float, u, q: QuadratureSpec | None = None) -> GeometrySample:
    q = q or QuadratureSpec()
    point = np.asarray(u, dtype=float).reshape(1, PARAM_DIM)
    b = _batch(fam, t, point, q, with_hessian=True)
    return GeometrySample(
        u=tuple(float(x) for x in point[0]),
        metric=b.metric[0],
        density=float(b.density[0]),
        mean_curvature=_mean_curvature(b)[0],
        normal_projector=b.normal[0],
    )


def mean_curvature(fam: ImmersionFamily, t: float, u, q: QuadratureSpec | None = None) -> np.ndarray:
    """Mean curvature vector H at ι_t(u).

    Raises:
        DegeneratePlaneError: if the first fundamental form is degenerate at u.
    """
    return sample_geometry(fam, t, u, q).mean_curvature


# -----------------------------------------------------------------------------
# ∫ Quadrature
# -----------------------------------------------------------------------------

def _slabs(fam: ImmersionFamily, q: QuadratureSpec):
    """Grid split along the first axis: one (points (m, 4), weights (m,)) pair per node."""
    (x0, w0), *rest = fam.axes(q.grid)
    inner = np.meshgrid(*(x for x, _ in rest), indexing="ij")
    inner_pts = np.stack([g.ravel() for g in inner], axis=-1)
    inner_w = np.ones(1)
    for _, w in rest:
        inner_w = np.multiply.outer(inner_w, w)
    inner_w = inner_w.ravel()
    for x, w in zip(x0, w0):
        pts = np.column_stack([np.full(len(inner_pts), x), inner_pts])
        yield pts, w * inner_w


def integrate(fam: ImmersionFamily, q: QuadratureSpec, integrand) -> float:
    """Σ weights · integrand(points) over the grid.

    ``integrand`` maps a (m, 4) point array to m values. Slabs may run in a
    worker pool; the reduction is always in slab order.
    """
    slabs = list(_slabs(fam, q))

    def one(slab):
        pts, w = slab
        return float(np.dot(w, integrand(pts)))

    if q.threads > 1:
        with ThreadPoolExecutor(max_workers=q.threads) as pool:
            partial = list(pool.map(one, slabs))
    else:
        partial = [one(s) for s in slabs]
    return float(sum(partial))


def volume(fam: ImmersionFamily, t: float, q: QuadratureSpec | None = None) -> float:
    """∫_Σ ι_t* vol = Σ w √det g."""
    q = q or QuadratureSpec()
    value = integrate(fam, q, lambda pts: _batch(fam, t, pts, q).density)
    logger.debug(f"Vol({fam.name}, t={t}) = {value!r}")
    return value


def calibration_defect_max(fam: ImmersionFamily, t: float, q: QuadratureSpec | None = None) -> float:
    """max over the grid of |ψ(∂₁ι, …, ∂₄ι) / √det g − 1|."""
    q = q or QuadratureSpec()
    psi = G2Structure.model(ScalarMode.FLOAT).psi
    worst = 0.0
    for pts, _ in _slabs(fam, q):
        b = _batch(fam, t, pts, q)
        frames = np.moveaxis(b.jac, (0, 1), (2, 1))                # (m, 4, 7)
        ratio = evaluate_many(psi, frames) / b.density
        worst = max(worst, float(np.max(np.abs(ratio - 1.0))))
    return worst
