# =============================================================================
# identities/sampling.py
# =============================================================================
# 🎯 Purpose:
# Seeded random inputs for the property suites. Every generator takes a
# numpy Generator, so a (seed, check, trial) triple fixes the input.
#
# ✅ Includes:
# - Small random rationals and exact / float vectors, forms and tensors
# - Random members of Λ²₁₄, Λ²₊(R^4), S²₀, g2 and random coassociative data
# =============================================================================

from __future__ import annotations

from fractions import Fraction

import numpy as np

from exterior.forms import KForm, Vector
from exterior.plane import OrientedPlane
from exterior.scalar import ScalarMode, to_scalar
from g2.algebra import g2_lie_algebra
from g2.decomposition import project_lambda2
from g2.frames import CoassocFrame
from g2.structure import SymTensor2
from identities.pointwise import ShapeData, VariationPointData
from liegeom.algebra import LieAlgebraData

NUMERATOR_BOUND = 4
DENOMINATORS = (1, 2, 3, 4)


def trial_rng(seed: int, check_index: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, check, trial)."""
    return np.random.default_rng((seed, check_index, trial))


def random_scalar(rng: np.random.Generator, mode: ScalarMode):
    if mode == ScalarMode.FLOAT:
        return float(rng.normal())
    num = int(rng.integers(-NUMERATOR_BOUND, NUMERATOR_BOUND + 1))
    den = int(rng.choice(DENOMINATORS))
    return Fraction(num, den)


def random_values(rng: np.random.Generator, n: int, mode: ScalarMode) -> list:
    return [random_scalar(rng, mode) for _ in range(n)]


def random_vector(rng: np.random.Generator, mode: ScalarMode, dim: int = 7) -> Vector:
    return Vector(dim, tuple(random_values(rng, dim, mode)), mode)


def random_form(rng: np.random.Generator, dim: int, degree: int, mode: ScalarMode) -> KForm:
    zero = KForm.zero(dim, degree, mode)
    return KForm(dim, degree, tuple(random_values(rng, len(zero.coeffs), mode)), mode)


def random_sym(rng: np.random.Generator, mode: ScalarMode, dim: int = 7) -> SymTensor2:
    rows = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            rows[i][j] = rows[j][i] = random_scalar(rng, mode)
    return SymTensor2.of(rows, mode)


def random_traceless(rng: np.random.Generator, mode: ScalarMode, dim: int = 7) -> SymTensor2:
    return random_sym(rng, mode, dim).trace_free()


def random_lambda2_14(rng: np.random.Generator, mode: ScalarMode) -> KForm:
    _, a14 = project_lambda2(random_form(rng, 7, 2, mode))
    return a14


def random_selfdual(rng: np.random.Generator, mode: ScalarMode) -> KForm:
    """a(e12 + e34) + b(e13 − e24) + c(e14 + e23) on R^4."""
    a, b, c = random_values(rng, 3, mode)
    return KForm.from_terms(4, {"12": a, "34": a, "13": b, "24": -b, "14": c, "23": c}, mode)


def random_symmetric_matrix(rng: np.random.Generator, mode: ScalarMode, n: int = 4, trace_free: bool = False) -> tuple:
    rows = random_sym(rng, mode, n)
    if trace_free:
        rows = rows.trace_free()
    return rows.entries


def random_matrix(rng: np.random.Generator, mode: ScalarMode, n: int = 4) -> tuple:
    return tuple(tuple(random_values(rng, n, mode)) for _ in range(n))


def random_g2_element(rng: np.random.Generator, mode: ScalarMode = ScalarMode.EXACT) -> tuple:
    basis = g2_lie_algebra(mode)
    coeffs = random_values(rng, len(basis), mode)
    return tuple(
        tuple(sum((c * b[i][j] for c, b in zip(coeffs, basis)), to_scalar(0, mode)) for j in range(7))
        for i in range(7)
    )


def random_normal(rng: np.random.Generator, frame: CoassocFrame, mode: ScalarMode) -> Vector:
    z = Vector.zero(7, mode)
    for nu in frame.normal.onb:
        z = z + nu * random_scalar(rng, mode)
    return z


def random_orthonormal_plane(rng: np.random.Generator, k: int = 4, dim: int = 7) -> OrientedPlane:
    """A Haar-random oriented k-plane (float mode)."""
    q, _ = np.linalg.qr(rng.normal(size=(dim, k)))
    return OrientedPlane(dim, tuple(Vector.of(map(float, q[:, j]), ScalarMode.FLOAT) for j in range(k)))


def random_variation_point(
    rng: np.random.Generator,
    mode: ScalarMode = ScalarMode.EXACT,
    *,
    zero_torsion: bool = False,
    zero_ricci: bool = False,
    trace_free_shape: bool = False,
    frame: CoassocFrame | None = None,
) -> VariationPointData:
    frame = frame or CoassocFrame.model(mode)
    tau2 = KForm.zero(7, 2, mode) if zero_torsion else random_lambda2_14(rng, mode)
    ric = SymTensor2.zero(7, mode) if zero_ricci else random_sym(rng, mode)
    shape_rows = random_symmetric_matrix(rng, mode, 4, trace_free=True) if trace_free_shape else random_matrix(rng, mode)
    return VariationPointData(
        tau2=tau2,
        ric=ric,
        z=random_normal(rng, frame, mode),
        shape=ShapeData(frame, shape_rows),
        tolerance=1e-9 if mode == ScalarMode.FLOAT else None,
    )


def random_two_step_algebra(rng: np.random.Generator, dim: int = 7, max_central: int = 3):
    """Random 2-step nilpotent algebra: brackets of non-central basis vectors land in a central set.

    Jacobi holds automatically because [g, g] is central.
    """
    size = int(rng.integers(1, max_central + 1))
    central = sorted(int(c) for c in rng.choice(dim, size=size, replace=False))
    free = [i for i in range(dim) if i not in central]
    constants = {}
    for a, i in enumerate(free):
        for j in free[a + 1:]:
            for k in central:
                value = random_scalar(rng, ScalarMode.EXACT)
                if value != 0:
                    constants[(k + 1, i + 1, j + 1)] = value
    return LieAlgebraData.from_constants(constants, dim) if constants else LieAlgebraData.abelian(dim)
