import dataclasses
from fractions import Fraction

import pytest

from exterior.forms import KForm, Vector, basis_form, interior
from exterior.scalar import ScalarMode
from g2.structure import SymTensor2
from identities.sampling import random_form, random_two_step_algebra
from liegeom.algebra import (
    LieAlgebraData, format_structure_constants, load_structure_constants, parse_structure_constants,
)
from liegeom.ce import ce_differential
from liegeom.closed import bryant_identities_check, validate_closed_g2
from liegeom.riemann import connection_residuals, curvature_ricci, curvature_symmetry_residual
from liegeom.search import search_closed_g2
from liegeom.submersion import SubmersionSplit, cor_g2sub_check, oneill_analysis
from models.errors import (
    ClosedG2Rejection, ContractViolation, JacobiError, NotCoassociativeError, NotIdealError,
    StructureConstantsParseError,
)
from runner.suites import heisenberg_algebra


EXAMPLE_TEXT = """\
# [e1, e2] = -e5, [e2, e3] = e7
dim 7
c 5 1 2 = -1
c 7 2 3 = 1
"""


# -----------------------------------------------------------------------------
# Structure-constant files
# -----------------------------------------------------------------------------

def test_parse_example_file():
    alg = parse_structure_constants(EXAMPLE_TEXT)
    assert alg == LieAlgebraData.from_constants({(5, 1, 2): -1, (7, 2, 3): 1})
    assert alg.nonzero_constants() == [(5, 1, 2, Fraction(-1)), (7, 2, 3, Fraction(1))]


def test_parse_accepts_reversed_pairs_and_fractions():
    alg = parse_structure_constants("dim 3\nc 3 2 1 = -1/2\n")
    assert alg == LieAlgebraData.from_constants({(3, 1, 2): Fraction(1, 2)}, 3)


def test_format_then_parse_gives_back_the_algebra(worked):
    alg, _ = worked
    text = format_structure_constants(alg, header="example")
    assert text.startswith("# example\ndim 7\n")
    assert parse_structure_constants(text) == alg


def test_load_from_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_text(EXAMPLE_TEXT, encoding="utf-8")
    assert load_structure_constants(path) == parse_structure_constants(EXAMPLE_TEXT)


@pytest.mark.parametrize(
    "text, line",
    [
        ("c 1 2 3 = x\n", 1),
        ("dim 3\n\nc 3 1 2 = 1\nc 3 2 1 = 1\n", 4),
        ("c 3 1 2 = 1\ndim 3\n", 2),
        ("dim 3\nc 4 1 2 = 1\n", 2),
        ("c 3 1 1 = 2\n", 1),
        ("c 3 1 2 = 1/0\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(StructureConstantsParseError) as info:
        parse_structure_constants(text)
    assert info.value.line == line


def test_jacobi_violation_is_rejected():
    with pytest.raises(JacobiError) as info:
        parse_structure_constants("dim 3\nc 3 1 2 = 1\nc 2 2 3 = 1\n")
    assert info.value.triple == (0, 1, 2)


def test_derived_dimension():
    assert LieAlgebraData.abelian().derived_dimension() == 0
    assert parse_structure_constants(EXAMPLE_TEXT).derived_dimension() == 2


# -----------------------------------------------------------------------------
# Chevalley–Eilenberg differential
# -----------------------------------------------------------------------------

def test_ce_differential_on_heisenberg():
    alg = heisenberg_algebra()
    assert ce_differential(alg, basis_form(3, "3")) == basis_form(3, "12") * -1
    assert ce_differential(alg, basis_form(3, "1")).is_zero()


def test_ce_differential_squares_to_zero(rng):
    alg = random_two_step_algebra(rng)
    for degree in (1, 2, 3):
        a = random_form(rng, 7, degree, ScalarMode.EXACT)
        assert ce_differential(alg, ce_differential(alg, a)).is_zero()


def test_ce_differential_checks_dimension():
    with pytest.raises(ContractViolation):
        ce_differential(heisenberg_algebra(), basis_form(7, "1"))


# -----------------------------------------------------------------------------
# Levi-Civita connection and curvature
# -----------------------------------------------------------------------------

def test_heisenberg_curvature():
    curv = curvature_ricci(heisenberg_algebra())
    assert curv.sectional(0, 1) == Fraction(-3, 4)
    assert curv.ricci == SymTensor2.diagonal([Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2)])
    assert curv.scalar == Fraction(-1, 2)


def test_connection_is_metric_and_torsion_free(rng):
    alg = random_two_step_algebra(rng)
    assert connection_residuals(alg) == (0, 0)
    assert curvature_symmetry_residual(curvature_ricci(alg)) == 0


def test_abelian_algebra_is_flat():
    curv = curvature_ricci(LieAlgebraData.abelian())
    assert curv.ricci.is_zero()
    assert curv.scalar == 0


# -----------------------------------------------------------------------------
# Closed G2-structures
# -----------------------------------------------------------------------------

def test_worked_example_is_closed(worked, search_hits):
    alg, _ = worked
    certified = validate_closed_g2(alg)
    (hit,) = [h for h in search_hits if h.alg == alg]
    assert certified.tau2_norm2 == hit.tau2_norm2
    assert certified.tau2_norm2 > 0
    assert certified.ricci.trace() == -certified.tau2_norm2 / 2
    assert alg.derived_dimension() == hit.derived_dim


def test_bryant_identities_on_worked_example(worked):
    alg, _ = worked
    certified = validate_closed_g2(alg)
    report = bryant_identities_check(certified)
    assert report.passed
    assert report.dtau2 == ce_differential(alg, certified.tau2)


def test_torsion_endomorphism_is_minus_half_tau2(worked, g2):
    certified = validate_closed_g2(worked[0])
    for i, t in enumerate(certified.t_endo):
        e_i = Vector.e(i + 1)
        assert interior(e_i, certified.tau2) == KForm.from_vector(t) * -2
        assert certified.nabla_phi[i] == interior(t, g2.psi)


def test_abelian_algebra_is_torsion_free():
    certified = validate_closed_g2(LieAlgebraData.abelian())
    assert certified.tau2.is_zero()
    assert bryant_identities_check(certified).passed


def test_non_closed_algebra_is_rejected():
    alg = LieAlgebraData.from_constants({(3, 1, 2): 1})
    with pytest.raises(ClosedG2Rejection) as info:
        validate_closed_g2(alg)
    assert not info.value.dphi.is_zero()


def test_validation_needs_seven_dimensions():
    with pytest.raises(ContractViolation):
        validate_closed_g2(heisenberg_algebra())


# -----------------------------------------------------------------------------
# Riemannian submersions
# -----------------------------------------------------------------------------

def test_heisenberg_oneill_identities():
    report = oneill_analysis(SubmersionSplit.from_labels(heisenberg_algebra(), "3"))
    assert report.max_residual == 0
    assert report.sectional[(1, 2)] == (Fraction(-3, 4), 0, Fraction(1, 4))
    assert report.t_is_zero
    assert not report.a_is_zero


def test_split_must_be_an_ideal():
    with pytest.raises(NotIdealError):
        SubmersionSplit.from_labels(heisenberg_algebra(), "1")


def test_abelian_fibration_satisfies_corollary():
    abelian = LieAlgebraData.abelian()
    report = cor_g2sub_check(validate_closed_g2(abelian), SubmersionSplit.from_labels(abelian, "4567"))
    assert report.premises_hold
    assert report.consistent
    assert all(report.conclusions.values())


def test_coassociative_ideal_contains_derived_algebra(worked, g2):
    alg, labels = worked
    fibre = {int(ch) - 1 for ch in labels}
    assert len(fibre) == 4
    assert {k - 1 for k, _, _, _ in alg.nonzero_constants()} <= fibre
    horizontal = tuple(v for v in range(7) if v not in fibre)
    assert g2.phi.coefficient(horizontal) in (1, -1)


def test_worked_fibration_fails_premises(worked):
    alg, labels = worked
    report = cor_g2sub_check(validate_closed_g2(alg), SubmersionSplit.from_labels(alg, labels))
    assert not report.premises_hold
    assert report.nonzero_tensors
    assert report.consistent


def test_doctored_tensors_expose_inconsistency(worked):
    alg, labels = worked
    split = SubmersionSplit.from_labels(alg, labels)
    doctored = dataclasses.replace(oneill_analysis(split), a_is_zero=True, t_is_zero=True)
    report = cor_g2sub_check(validate_closed_g2(alg), split, doctored)
    assert report.premises_hold
    assert not report.consistent
    assert report.conclusions["tau2_zero"] is False


def test_corollary_needs_coassociative_fibres():
    abelian = LieAlgebraData.abelian()
    with pytest.raises(NotCoassociativeError):
        cor_g2sub_check(validate_closed_g2(abelian), SubmersionSplit.from_labels(abelian, "1234"))


# -----------------------------------------------------------------------------
# Search
# -----------------------------------------------------------------------------

def test_search_starts_with_abelian(search_hits):
    assert search_hits[0].alg.is_abelian()
    assert search_hits[0].tau2_norm2 == 0


def test_search_hits_are_certified(search_hits):
    keys = set()
    for hit in search_hits:
        certified = validate_closed_g2(hit.alg)
        assert certified.tau2_norm2 == hit.tau2_norm2
        assert bryant_identities_check(certified).passed
        keys.add((hit.derived_dim, hit.tau2_norm2))
    assert len(keys) == len(search_hits)


def test_zero_coefficients_give_only_abelian():
    hits = search_closed_g2(coefficient_set=(0,))
    assert len(hits) == 1
    assert hits[0].alg.is_abelian()


def test_step_bound_above_two_is_unsupported():
    with pytest.raises(ContractViolation):
        search_closed_g2(step_bound=3)
