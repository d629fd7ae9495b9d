# =============================================================================
# liegeom/search.py
# =============================================================================
# 🎯 Purpose:
# Enumerate small 2-step nilpotent Lie algebras on which the model φ is
# closed.
#
# For a set D of "central" indices, the unknowns are c^k_ij with k ∈ D and
# i < j outside D. Every such bracket is 2-step nilpotent with central derived
# algebra, so Jacobi holds automatically. dφ and dψ are linear in c, so the
# closed ones form the nullspace of a rational 35 × n system; small
# combinations of its reduced-row-echelon basis are kept when their entries
# stay in the coefficient set, deduplicated by (derived dimension, |τ₂|²) and
# certified by validate_closed_g2.
# =============================================================================

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from exterior.linalg import nullspace, rank
from exterior.scalar import ScalarMode
from g2.structure import G2Structure
from liegeom.algebra import LieAlgebraData
from liegeom.ce import ce_differential
from liegeom.closed import validate_closed_g2
from models.errors import ClosedG2Rejection, ContractViolation

logger = logging.getLogger(__name__)

DIM = 7


@dataclass(frozen=True)
class SearchHit:
    alg: LieAlgebraData
    derived_dim: int
    tau2_norm2: Fraction
    central: tuple[int, ...]            # 1-based indices of D


@dataclass(frozen=True)
class _Candidate:
    central: tuple[int, ...]
    constants: tuple[tuple[tuple[int, int, int], Fraction], ...]
    derived_dim: int
    tau2_norm2: Fraction


def _unknowns(central: tuple[int, ...]) -> list[tuple[int, int, int]]:
    free = [i for i in range(DIM) if i not in central]
    return [(k, i, j) for k in central for i, j in combinations(free, 2)]


@lru_cache(maxsize=None)
def _unit_columns(k: int, i: int, j: int) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """(dφ, dψ) for the single bracket c^k_ij = 1, as sparse coefficient dicts."""
    g2 = G2Structure.model(ScalarMode.EXACT)
    alg = LieAlgebraData.from_constants({(k + 1, i + 1, j + 1): 1})
    return tuple(
        {p: c for p, c in enumerate(ce_differential(alg, form).coeffs) if c != 0}
        for form in (g2.phi, g2.psi)
    )


def _combine(columns, x) -> dict[int, Fraction]:
    acc: dict[int, Fraction] = {}
    for coeff, col in zip(x, columns):
        if coeff == 0:
            continue
        for p, c in col.items():
            acc[p] = acc.get(p, Fraction(0)) + coeff * c
    return acc


def _scan_central_set(central: tuple[int, ...], coefficient_set: frozenset) -> list[_Candidate]:
    unknowns = _unknowns(central)
    if not unknowns:
        return []
    phi_cols = [_unit_columns(*u)[0] for u in unknowns]
    rows = [[col.get(p, Fraction(0)) for col in phi_cols] for p in range(35)]
    basis = nullspace(rows, ScalarMode.EXACT)
    if not basis:
        return []
    psi_cols = [_unit_columns(*u)[1] for u in unknowns]

    lambdas = sorted(v for v in coefficient_set if v != 0)
    candidates: list[list[Fraction]] = [list(v) for v in basis]
    for a, b in combinations(range(len(basis)), 2):
        for lam in lambdas:
            candidates.append([x + lam * y for x, y in zip(basis[a], basis[b])])

    out = []
    for x in candidates:
        if any(v not in coefficient_set for v in x) or all(v == 0 for v in x):
            continue
        # |τ₂|² = |dψ|² since τ₂ = −⋆dψ
        dpsi = _combine(psi_cols, x)
        norm2 = sum((c * c for c in dpsi.values()), Fraction(0))
        brackets = [[Fraction(0)] * DIM for _ in range(DIM * DIM)]
        for coeff, (k, i, j) in zip(x, unknowns):
            brackets[i * DIM + j][k] = coeff
        derived = rank(brackets, ScalarMode.FLOAT)
        constants = tuple(((k + 1, i + 1, j + 1), v) for v, (k, i, j) in zip(x, unknowns) if v != 0)
        out.append(_Candidate(tuple(c + 1 for c in central), constants, derived, norm2))
    logger.debug(f"central set {tuple(c + 1 for c in central)}: {len(basis)} nullspace vectors, {len(out)} candidates")
    return out


def search_closed_g2(
    step_bound: int = 2,
    coefficient_set: Iterable = (0, 1, -1),
    max_central: int = 3,
    threads: int = 1,
) -> list[SearchHit]:
    """Closed-φ Lie algebras up to the given nilpotency step, deduplicated.

    The abelian algebra is always the first hit. The result is deterministic:
    central sets are scanned in lexicographic order and the first candidate
    with a new (derived dimension, |τ₂|²) key is kept.
    """
    if step_bound not in (1, 2):
        raise ContractViolation(f"only 1- and 2-step searches are supported, got step bound {step_bound}")
    coeffs = frozenset(Fraction(v) for v in coefficient_set) | {Fraction(0)}

    abelian = LieAlgebraData.abelian(DIM)
    hits = [SearchHit(abelian, 0, Fraction(0), ())]
    if step_bound == 1 or coeffs == {Fraction(0)}:
        return hits

    central_sets = [c for size in range(1, max_central + 1) for c in combinations(range(DIM), size)]
    logger.info(f"scanning {len(central_sets)} central index sets with {max(1, threads)} worker(s)")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        scanned = list(pool.map(lambda c: _scan_central_set(c, coeffs), central_sets))

    seen = {(0, Fraction(0))}
    for candidates in scanned:
        for cand in candidates:
            key = (cand.derived_dim, cand.tau2_norm2)
            if key in seen:
                continue
            seen.add(key)
            alg = LieAlgebraData.from_constants(dict(cand.constants))
            try:
                certified = validate_closed_g2(alg)
            except ClosedG2Rejection:
                logger.warning(f"candidate on central set {cand.central} failed certification; skipped")
                continue
            hits.append(SearchHit(alg, alg.derived_dimension(), certified.tau2_norm2, cand.central))
    logger.info(f"search found {len(hits)} closed G2 algebra(s)")
    return hits
