# =============================================================================
# liegeom/algebra.py
# =============================================================================
# 🎯 Purpose:
# Real Lie algebras given by rational structure constants in an orthonormal
# basis, and the plain-text file format they are exchanged in.
#
# ✅ Includes:
# - LieAlgebraData: c^k_ij with [e_i, e_j] = Σ_k c^k_ij e_k, Jacobi-checked
# - parse_structure_constants / format_structure_constants / load_structure_constants
#
# File format (one entry per line, indices 1-based):
#
#     # comment
#     dim 7                 optional, defaults to 7
#     c 5 1 2 = -1          c^5_12 = -1, i.e. [e1, e2] = -e5
#     c 7 2 3 = 1/1
#
# c k j i is implied by antisymmetry; giving both orders with inconsistent
# values, a nonzero c k i i or a repeated entry with a different value is a
# parse error.
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Mapping

from exterior.forms import MAX_DIM, Vector
from exterior.linalg import rank
from exterior.scalar import ScalarMode
from models.errors import ContractViolation, JacobiError, StructureConstantsParseError

logger = logging.getLogger(__name__)

DEFAULT_DIM = 7

_LINE = re.compile(r"^c\s+(\d+)\s+(\d+)\s+(\d+)\s*=\s*([-+]?\d+(?:/\d+)?)$")
_DIM = re.compile(r"^dim\s+(\d+)$")

Constants = tuple[tuple[tuple[Fraction, ...], ...], ...]


# -----------------------------------------------------------------------------
# 🧱 LieAlgebraData
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants ``c[k][i][j]`` (0-based) of a Lie algebra.

    The basis e_1..e_n is orthonormal for the left-invariant metric, so the
    metric is always the identity in these coordinates.
    """

    dim: int
    c: Constants

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ContractViolation(f"Lie algebra dimension {self.dim} outside 1..{MAX_DIM}")
        n = self.dim
        if len(self.c) != n or any(len(ck) != n or any(len(row) != n for row in ck) for ck in self.c):
            raise ContractViolation(f"structure constants must be an {n}x{n}x{n} table")
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    if self.c[k][i][j] != -self.c[k][j][i]:
                        raise ContractViolation(f"c^{k + 1}_{i + 1}{j + 1} is not antisymmetric")
        self._check_jacobi()

    # -------------------------------------------------------------------------
    # 🏗️ Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def from_constants(cls, constants: Mapping[tuple[int, int, int], object], dim: int = DEFAULT_DIM) -> LieAlgebraData:
        """Build from ``{(k, i, j): value}`` with 1-based indices and i != j."""
        table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (k, i, j), value in constants.items():
            value = Fraction(value)
            table[k - 1][i - 1][j - 1] = value
            table[k - 1][j - 1][i - 1] = -value
        return cls(dim, _freeze(table))

    @classmethod
    def abelian(cls, dim: int = DEFAULT_DIM) -> LieAlgebraData:
        return cls.from_constants({}, dim)

    # -------------------------------------------------------------------------
    # 🔍 Queries
    # -------------------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[e_i, e_j] for 0-based i, j."""
        return Vector(self.dim, tuple(self.c[k][i][j] for k in range(self.dim)))

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out = Vector.zero(self.dim, ScalarMode.EXACT)
        for i in range(self.dim):
            if u[i] == 0:
                continue
            for j in range(self.dim):
                if v[j] != 0:
                    out = out + self.bracket_basis(i, j) * (u[i] * v[j])
        return out

    def is_abelian(self) -> bool:
        return all(x == 0 for ck in self.c for row in ck for x in row)

    def derived_dimension(self) -> int:
        rows = [list(self.bracket_basis(i, j)) for i, j in combinations(range(self.dim), 2)]
        return rank(rows, ScalarMode.EXACT)

    def nonzero_constants(self) -> list[tuple[int, int, int, Fraction]]:
        """(k, i, j, c^k_ij) with i < j, 1-based, in lexicographic order."""
        out = []
        for k in range(self.dim):
            for i, j in combinations(range(self.dim), 2):
                if self.c[k][i][j] != 0:
                    out.append((k + 1, i + 1, j + 1, self.c[k][i][j]))
        return out

    def _check_jacobi(self):
        n = self.dim
        c = self.c
        for i, j, k in combinations(range(n), 3):
            for l in range(n):
                total = sum(
                    c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i] + c[m][k][i] * c[l][m][j]
                    for m in range(n)
                )
                if total != 0:
                    raise JacobiError((i, j, k), total)


def _freeze(table) -> Constants:
    return tuple(tuple(tuple(row) for row in ck) for ck in table)


# -----------------------------------------------------------------------------
# 📄 Text format
# -----------------------------------------------------------------------------

def parse_structure_constants(text: str) -> LieAlgebraData:
    """Parse the documented ``c k i j = p/q`` format.

    Raises:
        StructureConstantsParseError: with the 1-based line number of the fault.
        JacobiError: if the parsed constants violate the Jacobi identity.
    """
    dim = DEFAULT_DIM
    entries: dict[tuple[int, int, int], tuple[Fraction, int]] = {}
    seen_entry = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        dim_match = _DIM.match(line)
        if dim_match:
            if seen_entry:
                raise StructureConstantsParseError("'dim' must precede every constant", lineno)
            dim = int(dim_match.group(1))
            if not 1 <= dim <= MAX_DIM:
                raise StructureConstantsParseError(f"dimension {dim} outside 1..{MAX_DIM}", lineno)
            continue
        match = _LINE.match(line)
        if not match:
            raise StructureConstantsParseError(f"expected 'c k i j = p/q', got {raw.strip()!r}", lineno)
        seen_entry = True
        k, i, j = (int(match.group(n)) for n in (1, 2, 3))
        try:
            value = Fraction(match.group(4))
        except ZeroDivisionError:
            raise StructureConstantsParseError("zero denominator", lineno)
        if not all(1 <= idx <= dim for idx in (k, i, j)):
            raise StructureConstantsParseError(f"index out of range 1..{dim}", lineno)
        if i == j:
            if value != 0:
                raise StructureConstantsParseError(f"c {k} {i} {i} must be 0 by antisymmetry", lineno)
            continue
        key, signed = ((k, i, j), value) if i < j else ((k, j, i), -value)
        if key in entries and entries[key][0] != signed:
            raise StructureConstantsParseError(
                f"c {k} {i} {j} = {value} contradicts line {entries[key][1]} (constants must be antisymmetric)",
                lineno,
            )
        entries[key] = (signed, lineno)
    alg = LieAlgebraData.from_constants({key: v for key, (v, _) in entries.items()}, dim)
    logger.debug(f"parsed Lie algebra of dimension {dim} with {len(entries)} nonzero constants")
    return alg


def format_structure_constants(alg: LieAlgebraData, header: str | None = None) -> str:
    """Inverse of parse_structure_constants: one line per c^k_ij with i < j."""
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.append(f"dim {alg.dim}")
    for k, i, j, value in alg.nonzero_constants():
        lines.append(f"c {k} {i} {j} = {value}")
    return "\n".join(lines) + "\n"


def load_structure_constants(path: str | Path) -> LieAlgebraData:
    return parse_structure_constants(Path(path).read_text(encoding="utf-8"))
