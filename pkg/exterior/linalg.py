# =============================================================================
# exterior/linalg.py
# =============================================================================
# 🎯 Purpose:
# Small linear-algebra layer shared by the G2 and Lie-algebra packages, with
# one entry point per operation and two back ends: sympy rational matrices in
# exact mode, numpy in float mode.
#
# ✅ Includes:
# - Conversions Fraction <-> sympy.Rational
# - Least-squares solve with residual, nullspace, rank, determinant, inverse
# =============================================================================

from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from exterior.scalar import ScalarMode, Scalar, to_scalar

Rows = Sequence[Sequence[Scalar]]


def to_rational(x) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def to_fraction(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def exact_matrix(rows: Rows) -> sympy.Matrix:
    return sympy.Matrix([[to_rational(x) for x in row] for row in rows])


def float_matrix(rows: Rows) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in rows], dtype=float)


def determinant(rows: Rows, mode: ScalarMode) -> Scalar:
    if mode == ScalarMode.EXACT:
        return to_fraction(exact_matrix(rows).det())
    return float(np.linalg.det(float_matrix(rows)))


def rank(rows: Rows, mode: ScalarMode, tolerance: float = 1e-9) -> int:
    if not rows:
        return 0
    if mode == ScalarMode.EXACT:
        return exact_matrix(rows).rank()
    return int(np.linalg.matrix_rank(float_matrix(rows), tol=tolerance))


def nullspace(rows: Rows, mode: ScalarMode, tolerance: float = 1e-9) -> list[list[Scalar]]:
    """Basis of {x : A x = 0}.

    Exact mode returns the reduced-row-echelon basis: each vector has one free
    coordinate equal to 1 and the other free coordinates equal to 0.
    """
    if mode == ScalarMode.EXACT:
        return [[to_fraction(x) for x in vec] for vec in exact_matrix(rows).nullspace()]
    a = float_matrix(rows)
    _, s, vh = np.linalg.svd(a)
    null_rank = int((s > tolerance).sum())
    return [list(map(float, v)) for v in vh[null_rank:]]


def least_squares(columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar], mode: ScalarMode):
    """Solve min |A x − b| where A has the given columns.

    Returns:
        (x, residual) with residual = b − A x, both in ``mode``.
    """
    if mode == ScalarMode.EXACT:
        a = exact_matrix(columns).T
        b = sympy.Matrix([to_rational(v) for v in target])
        x = (a.T * a).LUsolve(a.T * b)
        r = b - a * x
        return [to_fraction(v) for v in x], [to_fraction(v) for v in r]
    a = float_matrix(columns).T
    b = np.array([float(v) for v in target])
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    r = b - a @ x
    return [float(v) for v in x], [float(v) for v in r]


def as_mode_rows(rows: Rows, mode: ScalarMode) -> list[list[Scalar]]:
    return [[to_scalar(x, mode) for x in row] for row in rows]


def inverse(rows: Rows, mode: ScalarMode) -> list[list[Scalar]]:
    if mode == ScalarMode.EXACT:
        inv = exact_matrix(rows).inv(method="LU")
        return [[to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]
    return [list(map(float, row)) for row in np.linalg.inv(float_matrix(rows))]


def mat_vec(rows: Rows, vec: Sequence[Scalar]) -> list[Scalar]:
    return [sum((a * b for a, b in zip(row, vec)), 0 * vec[0]) for row in rows]
