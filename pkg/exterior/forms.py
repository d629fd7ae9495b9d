# =============================================================================
# exterior/forms.py
# =============================================================================
# 🎯 Purpose:
# Dense alternating forms and vectors on R^n (n <= 8) and the pointwise
# exterior calculus on them: wedge, interior product, Hodge star, the
# unit-monomial inner product and simple k-vectors.
#
# ✅ Includes:
# - KForm / Vector value types (immutable, exact or float coefficients)
# - Multi-index bookkeeping: strictly increasing indices in lexicographic order
# - Sign bookkeeping from permutation parity (one source for every sign)
#
# ❌ Does not include:
# - Restriction to subspaces (see exterior/plane.py)
# - Anything metric beyond the Euclidean one with orientation e^1 ∧ ... ∧ e^n
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Standard Python Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

from dataclasses import dataclass            # Immutable value types
from functools import lru_cache, reduce      # Cached index tables / folding wedges
from itertools import combinations           # Strictly increasing multi-indices
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

# -----------------------------------------------------------------------------
# 📦 Third-party Imports
# -----------------------------------------------------------------------------

import numpy as np                                           # Batched evaluation on frames
from sympy.combinatorics.permutations import Permutation     # Parity of a reordering

# -----------------------------------------------------------------------------
# 📦 Project Imports
# -----------------------------------------------------------------------------

from exterior.scalar import (
    ScalarMode, Scalar, combine, to_scalar, zero, one, is_zero, magnitude,
)
from exterior.linalg import determinant
from models.errors import ContractViolation

MAX_DIM = 8

MultiIndex = tuple[int, ...]


# -----------------------------------------------------------------------------
# 🔢 Multi-index tables
# -----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def multi_indices(dim: int, degree: int) -> tuple[MultiIndex, ...]:
    """All strictly increasing multi-indices of length ``degree`` in lexicographic order."""
    return tuple(combinations(range(dim), degree))


@lru_cache(maxsize=None)
def index_table(dim: int, degree: int) -> dict[MultiIndex, int]:
    return {idx: pos for pos, idx in enumerate(multi_indices(dim, degree))}


@lru_cache(maxsize=None)
def sort_sign(indices: MultiIndex) -> tuple[int, MultiIndex]:
    """Sort ``indices`` and return (sign of the sorting permutation, sorted indices).

    Repeated indices give sign 0: the corresponding monomial vanishes.
    """
    if len(set(indices)) != len(indices):
        return 0, ()
    if len(indices) < 2:
        return 1, tuple(indices)
    order = sorted(range(len(indices)), key=lambda p: indices[p])
    parity = Permutation(order).parity()
    return (-1 if parity else 1), tuple(sorted(indices))


@lru_cache(maxsize=None)
def complement(dim: int, indices: MultiIndex) -> MultiIndex:
    return tuple(i for i in range(dim) if i not in indices)


def parse_label(label: str | Sequence[int]) -> MultiIndex:
    """Turn the shorthand "457" (1-based digits) into the 0-based tuple (3, 4, 6)."""
    if isinstance(label, str):
        return tuple(int(ch) - 1 for ch in label)
    return tuple(label)


# -----------------------------------------------------------------------------
# 📐 Vector
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Vector:
    dim: int
    components: tuple
    mode: ScalarMode = ScalarMode.EXACT

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ContractViolation(f"vector dimension {self.dim} outside 1..{MAX_DIM}")
        if len(self.components) != self.dim:
            raise ContractViolation(
                f"vector has {len(self.components)} components, expected {self.dim}"
            )
        object.__setattr__(
            self, "components", tuple(to_scalar(c, self.mode) for c in self.components)
        )

    @classmethod
    def of(cls, values: Iterable, mode: ScalarMode = ScalarMode.EXACT) -> Vector:
        values = tuple(values)
        return cls(len(values), values, mode)

    @classmethod
    def zero(cls, dim: int, mode: ScalarMode = ScalarMode.EXACT) -> Vector:
        return cls(dim, (0,) * dim, mode)

    @classmethod
    def e(cls, k: int, dim: int = 7, mode: ScalarMode = ScalarMode.EXACT) -> Vector:
        """The basis vector e_k (1-based, matching the e_1..e_7 notation)."""
        comps = [0] * dim
        comps[k - 1] = 1
        return cls(dim, tuple(comps), mode)

    def __getitem__(self, i: int) -> Scalar:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: Vector) -> Vector:
        _check_same_dim(self, other)
        mode = combine(self.mode, other.mode)
        return Vector(self.dim, tuple(a + b for a, b in zip(self, other)), mode)

    def __sub__(self, other: Vector) -> Vector:
        return self + (-other)

    def __neg__(self) -> Vector:
        return Vector(self.dim, tuple(-a for a in self), self.mode)

    def __mul__(self, scalar) -> Vector:
        mode = combine(self.mode, ScalarMode.FLOAT if isinstance(scalar, float) else ScalarMode.EXACT)
        return Vector(self.dim, tuple(a * scalar for a in self), mode)

    __rmul__ = __mul__

    def dot(self, other: Vector) -> Scalar:
        _check_same_dim(self, other)
        return sum((a * b for a, b in zip(self, other)), zero(combine(self.mode, other.mode)))

    def norm2(self) -> Scalar:
        return self.dot(self)

    def as_mode(self, mode: ScalarMode) -> Vector:
        return Vector(self.dim, self.components, mode)

    def is_zero(self, tolerance: float | None = None) -> bool:
        return all(is_zero(c, tolerance) for c in self)

    def to_numpy(self) -> np.ndarray:
        return np.array([float(c) for c in self], dtype=float)


# -----------------------------------------------------------------------------
# 🧮 KForm
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class KForm:
    """A degree-``degree`` alternating form on R^``dim``.

    ``coeffs[p]`` is the coefficient of e^I for I = multi_indices(dim, degree)[p].
    """

    dim: int
    degree: int
    coeffs: tuple
    mode: ScalarMode = ScalarMode.EXACT

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ContractViolation(f"form dimension {self.dim} outside 1..{MAX_DIM}")
        if not 0 <= self.degree <= self.dim:
            raise ContractViolation(f"degree {self.degree} outside 0..{self.dim}")
        expected = comb(self.dim, self.degree)
        if len(self.coeffs) != expected:
            raise ContractViolation(
                f"{len(self.coeffs)} coefficients for a {self.degree}-form on R^{self.dim}, expected {expected}"
            )
        object.__setattr__(self, "coeffs", tuple(to_scalar(c, self.mode) for c in self.coeffs))

    # -------------------------------------------------------------------------
    # 🏗️ Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, degree: int, mode: ScalarMode = ScalarMode.EXACT) -> KForm:
        return cls(dim, degree, (0,) * comb(dim, degree), mode)

    @classmethod
    def constant(cls, dim: int, value, mode: ScalarMode = ScalarMode.EXACT) -> KForm:
        return cls(dim, 0, (value,), mode)

    @classmethod
    def volume(cls, dim: int, mode: ScalarMode = ScalarMode.EXACT) -> KForm:
        return cls(dim, dim, (1,), mode)

    @classmethod
    def from_terms(
        cls,
        dim: int,
        terms: Mapping[str | MultiIndex, object],
        mode: ScalarMode = ScalarMode.EXACT,
    ) -> KForm:
        """Build a form from shorthand terms, e.g. ``{"123": 1, "457": -1}``.

        String keys are 1-based digit labels; tuple keys are 0-based indices.
        Unsorted labels are reordered with the matching sign.
        """
        if not terms:
            raise ContractViolation("from_terms needs at least one term to fix the degree")
        degrees = {len(parse_label(k)) for k in terms}
        if len(degrees) != 1:
            raise ContractViolation(f"mixed degrees in terms: {sorted(degrees)}")
        degree = degrees.pop()
        acc = [zero(mode)] * comb(dim, degree)
        table = index_table(dim, degree)
        for label, value in terms.items():
            idx = parse_label(label)
            if any(not 0 <= i < dim for i in idx):
                raise ContractViolation(f"index out of range in {label!r} for dim {dim}")
            sign, key = sort_sign(idx)
            if sign == 0:
                continue
            acc[table[key]] += sign * to_scalar(value, mode)
        return cls(dim, degree, tuple(acc), mode)

    @classmethod
    def from_vector(cls, v: Vector) -> KForm:
        """Metric flattening v -> v♭ for the Euclidean metric."""
        return cls(v.dim, 1, v.components, v.mode)

    # -------------------------------------------------------------------------
    # 🔍 Access
    # -------------------------------------------------------------------------

    def terms(self) -> Iterator[tuple[MultiIndex, Scalar]]:
        """Nonzero (multi-index, coefficient) pairs."""
        for idx, c in zip(multi_indices(self.dim, self.degree), self.coeffs):
            if c != 0:
                yield idx, c

    def coefficient(self, label: str | MultiIndex) -> Scalar:
        sign, key = sort_sign(parse_label(label))
        if sign == 0:
            return zero(self.mode)
        return sign * self.coeffs[index_table(self.dim, self.degree)[key]]

    def scalar(self) -> Scalar:
        """The single coefficient of a degree-0 or top-degree form."""
        if len(self.coeffs) != 1:
            raise ContractViolation(f"scalar() needs a degree-0 or degree-{self.dim} form")
        return self.coeffs[0]

    def to_vector(self) -> Vector:
        """Metric sharpening of a 1-form."""
        if self.degree != 1:
            raise ContractViolation("only 1-forms can be sharpened into vectors")
        return Vector(self.dim, self.coeffs, self.mode)

    def as_mode(self, mode: ScalarMode) -> KForm:
        return KForm(self.dim, self.degree, self.coeffs, mode)

    def is_zero(self, tolerance: float | None = None) -> bool:
        return all(is_zero(c, tolerance) for c in self.coeffs)

    def max_abs(self) -> float:
        return max((magnitude(c) for c in self.coeffs), default=0.0)

    def to_numpy(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def __str__(self) -> str:
        parts = []
        for idx, c in self.terms():
            label = "".join(str(i + 1) for i in idx) or "1"
            parts.append(f"{'-' if c < 0 else '+'}{abs(c)}·e{label}")
        return " ".join(parts) if parts else "0"

    # -------------------------------------------------------------------------
    # ➕ Linear structure
    # -------------------------------------------------------------------------

    def _check_compatible(self, other: KForm):
        if not isinstance(other, KForm):
            raise ContractViolation(f"expected a KForm, got {type(other).__name__}")
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ContractViolation(
                f"cannot combine a {self.degree}-form on R^{self.dim} with a {other.degree}-form on R^{other.dim}"
            )

    def __add__(self, other: KForm) -> KForm:
        self._check_compatible(other)
        mode = combine(self.mode, other.mode)
        return KForm(self.dim, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), mode)

    def __sub__(self, other: KForm) -> KForm:
        return self + (-other)

    def __neg__(self) -> KForm:
        return KForm(self.dim, self.degree, tuple(-a for a in self.coeffs), self.mode)

    def __mul__(self, scalar) -> KForm:
        if isinstance(scalar, (KForm, Vector)):
            raise ContractViolation("use wedge() to multiply forms")
        mode = combine(self.mode, ScalarMode.FLOAT if isinstance(scalar, float) else ScalarMode.EXACT)
        return KForm(self.dim, self.degree, tuple(a * scalar for a in self.coeffs), mode)

    __rmul__ = __mul__


def _check_same_dim(a: Vector, b: Vector):
    if a.dim != b.dim:
        raise ContractViolation(f"dimension mismatch: {a.dim} vs {b.dim}")


def basis_form(dim: int, label: str | MultiIndex, mode: ScalarMode = ScalarMode.EXACT) -> KForm:
    """The monomial e^I; ``basis_form(7, "45")`` is e^4 ∧ e^5."""
    return KForm.from_terms(dim, {label: 1}, mode)


# -----------------------------------------------------------------------------
# 🔧 Exterior algebra operations
# -----------------------------------------------------------------------------

def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product a ∧ b.

    Args:
        a: form of degree p on R^n
        b: form of degree q on R^n, with p + q <= n

    Returns:
        The (p+q)-form a ∧ b, exact when both inputs are exact.

    Raises:
        ContractViolation: on dimension mismatch or p + q > n.
    """
    if a.dim != b.dim:
        raise ContractViolation(f"wedge of forms on R^{a.dim} and R^{b.dim}")
    degree = a.degree + b.degree
    if degree > a.dim:
        raise ContractViolation(f"wedge degree {degree} exceeds dimension {a.dim}")
    mode = combine(a.mode, b.mode)
    acc = [zero(mode)] * comb(a.dim, degree)
    table = index_table(a.dim, degree)
    right = list(b.terms())
    for idx_a, x in a.terms():
        for idx_b, y in right:
            sign, key = sort_sign(idx_a + idx_b)
            if sign:
                acc[table[key]] += sign * x * y
    return KForm(a.dim, degree, tuple(acc), mode)


def wedge_all(forms: Sequence[KForm]) -> KForm:
    return reduce(wedge, forms)


def interior(v: Vector, a: KForm) -> KForm:
    """Contraction v ⌟ a, inserting ``v`` into the first slot.

    Raises:
        ContractViolation: for degree-0 input or a dimension mismatch.
    """
    if a.degree == 0:
        raise ContractViolation("interior product of a degree-0 form")
    if v.dim != a.dim:
        raise ContractViolation(f"vector in R^{v.dim} contracted with a form on R^{a.dim}")
    mode = combine(v.mode, a.mode)
    acc = [zero(mode)] * comb(a.dim, a.degree - 1)
    table = index_table(a.dim, a.degree - 1)
    for idx, x in a.terms():
        for pos, i in enumerate(idx):
            vi = v[i]
            if vi == 0:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            sign = -1 if pos % 2 else 1
            acc[table[rest]] += sign * vi * x
    return KForm(a.dim, a.degree - 1, tuple(acc), mode)


def hodge(a: KForm) -> KForm:
    """Hodge star for the Euclidean metric and orientation e^1 ∧ ... ∧ e^n.

    Fixed by α ∧ ⋆β = ⟨α, β⟩ vol.
    """
    n = a.dim
    degree = n - a.degree
    acc = [zero(a.mode)] * comb(n, degree)
    table = index_table(n, degree)
    for idx, x in a.terms():
        rest = complement(n, idx)
        sign, _ = sort_sign(idx + rest)
        acc[table[rest]] += sign * x
    return KForm(n, degree, tuple(acc), a.mode)


def form_inner(a: KForm, b: KForm) -> Scalar:
    """Inner product making every monomial e^I a unit vector."""
    if (a.dim, a.degree) != (b.dim, b.degree):
        raise ContractViolation(
            f"inner product of a {a.degree}-form on R^{a.dim} with a {b.degree}-form on R^{b.dim}"
        )
    mode = combine(a.mode, b.mode)
    return sum((x * y for x, y in zip(a.coeffs, b.coeffs)), zero(mode))


def form_norm2(a: KForm) -> Scalar:
    return form_inner(a, a)


def simple_kvector(vs: Sequence[Vector]) -> KForm:
    """v_1 ∧ ... ∧ v_k with vectors flattened to 1-forms (zero for dependent vectors)."""
    if not vs:
        raise ContractViolation("simple_kvector needs at least one vector")
    dim = vs[0].dim
    if len(vs) > dim:
        raise ContractViolation(f"{len(vs)} vectors in R^{dim}")
    return wedge_all([KForm.from_vector(v) for v in vs])


def evaluate(a: KForm, vectors: Sequence[Vector]) -> Scalar:
    """a(v_1, ..., v_k) computed as iterated contraction."""
    if len(vectors) != a.degree:
        raise ContractViolation(f"{a.degree}-form evaluated on {len(vectors)} vectors")
    result = a
    for v in vectors:
        result = interior(v, result)
    return result.coeffs[0]


def evaluate_many(a: KForm, frames: np.ndarray) -> np.ndarray:
    """Float evaluation of ``a`` on a batch of frames.

    Args:
        a: k-form on R^n
        frames: array of shape (..., k, n), one k-tuple of vectors per leading index

    Returns:
        Array of shape (...,) with a(v_1, ..., v_k) for each frame.
    """
    frames = np.asarray(frames, dtype=float)
    if frames.shape[-2:] != (a.degree, a.dim):
        raise ContractViolation(f"frames of shape {frames.shape} for a {a.degree}-form on R^{a.dim}")
    out = np.zeros(frames.shape[:-2])
    for idx, c in a.terms():
        out = out + float(c) * np.linalg.det(frames[..., list(idx)])
    return out


def gram_matrix(vs: Sequence[Vector]) -> list[list[Scalar]]:
    return [[u.dot(v) for v in vs] for u in vs]


def gram_determinant(vs: Sequence[Vector]) -> Scalar:
    """det(⟨v_i, v_j⟩): exact through sympy, float through numpy."""
    if not vs:
        return one(ScalarMode.EXACT)
    mode = combine(*(v.mode for v in vs))
    return determinant(gram_matrix(vs), mode)


# -----------------------------------------------------------------------------
# 🌗 Self-duality on R^4
# -----------------------------------------------------------------------------

def selfdual_part(a: KForm) -> KForm:
    """(a + ⋆a)/2 for a 2-form on R^4."""
    _check_four_two(a)
    return (a + hodge(a)) * _half(a.mode)


def antiselfdual_part(a: KForm) -> KForm:
    """(a − ⋆a)/2 for a 2-form on R^4."""
    _check_four_two(a)
    return (a - hodge(a)) * _half(a.mode)


def _half(mode: ScalarMode):
    return to_scalar("1/2", mode)


def _check_four_two(a: KForm):
    if (a.dim, a.degree) != (4, 2):
        raise ContractViolation("self-duality is defined here for 2-forms on R^4")


# -----------------------------------------------------------------------------
# 🔁 Derivations
# -----------------------------------------------------------------------------

def derivation(images: Sequence[KForm], a: KForm) -> KForm:
    """Extend e^k ↦ images[k] to the exterior algebra by D(a) = Σ_k images[k] ∧ (e_k ⌟ a).

    For 1-form images this is the derivation extension (covariant derivatives,
    the g2 action); for 2-form images it is the antiderivation extension (the
    exterior derivative of invariant forms).

    ``images[k]`` must all share one degree p; the result has degree deg(a) + p - 1.
    """
    if len(images) != a.dim:
        raise ContractViolation(f"{len(images)} images for a form on R^{a.dim}")
    shift = images[0].degree - 1
    mode = combine(a.mode, *(im.mode for im in images))
    if a.degree == 0 or a.degree + shift > a.dim or a.degree + shift < 0:
        return KForm.zero(a.dim, max(0, min(a.dim, a.degree + shift)), mode)
    acc = KForm.zero(a.dim, a.degree + shift, mode)
    for k, image in enumerate(images):
        if image.is_zero():
            continue
        contracted = interior(Vector.e(k + 1, a.dim), a)
        if contracted.is_zero():
            continue
        acc = acc + wedge(image, contracted)
    return acc
