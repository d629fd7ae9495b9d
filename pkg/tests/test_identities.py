import dataclasses
from fractions import Fraction

import numpy as np
import pytest

from exterior.forms import KForm, Vector, interior, selfdual_part
from exterior.scalar import ScalarMode
from g2.frames import CoassocFrame, normal_to_selfdual
from g2.structure import SymTensor2
from identities.pointwise import (
    ShapeData, VariationPointData, b_h_closed_form, check_b_h, check_b_w, dtau2_from_identity,
    eq2_assembly, first_variation_density, gamma_Z, lemma_dtau2_check, quadratic_torsion_term,
    ricci_term, secvar_integrand, tau_square_lambda3_7,
)
from identities.sampling import (
    random_lambda2_14, random_normal, random_sym, random_two_step_algebra, random_variation_point,
    random_vector, trial_rng,
)
from models.errors import ContractViolation, NotInLambda214Error, NotNormalError


@pytest.fixture
def frame():
    return CoassocFrame.model()


def e(k: int) -> Vector:
    return Vector.e(k)


def torsion_point(frame, ric=None) -> VariationPointData:
    return VariationPointData(
        tau2=KForm.from_terms(7, {"23": 1, "45": -1}),
        ric=ric or SymTensor2.zero(),
        z=e(1),
        shape=ShapeData.totally_geodesic(frame),
    )


# -----------------------------------------------------------------------------
# Input validation
# -----------------------------------------------------------------------------

def test_point_data_rejects_tangential_field(frame):
    with pytest.raises(NotNormalError):
        VariationPointData(KForm.zero(7, 2), SymTensor2.zero(), e(5), ShapeData.totally_geodesic(frame))


def test_point_data_rejects_lambda2_7_torsion(frame, g2):
    with pytest.raises(NotInLambda214Error):
        VariationPointData(interior(e(1), g2.phi), SymTensor2.zero(), e(1), ShapeData.totally_geodesic(frame))


def test_dtau2_identity_rejects_lambda2_7_torsion(g2):
    with pytest.raises(NotInLambda214Error):
        dtau2_from_identity(interior(e(2), g2.phi), SymTensor2.zero())


def test_shape_data_must_be_four_by_four(frame):
    with pytest.raises(ContractViolation):
        ShapeData(frame, ((0, 0, 0),) * 3)


# -----------------------------------------------------------------------------
# γ_Z
# -----------------------------------------------------------------------------

def test_gamma_is_antiselfdual_for_trace_free_shape(rng):
    for _ in range(5):
        d = random_variation_point(rng, trace_free_shape=True)
        assert selfdual_part(gamma_Z(d)).is_zero()


def test_gamma_of_pure_trace_shape(frame):
    t = Fraction(3, 2)
    shape = tuple(tuple(t if i == j else 0 for j in range(4)) for i in range(4))
    d = VariationPointData(KForm.zero(7, 2), SymTensor2.zero(), e(2), ShapeData(frame, shape))
    assert gamma_Z(d) == normal_to_selfdual(e(2), frame) * (2 * t)


def test_gamma_only_sees_symmetrized_shape(rng, frame):
    d = random_variation_point(rng)
    m = d.shape.dz_tangent
    transposed = tuple(tuple(m[j][i] for j in range(4)) for i in range(4))
    flipped = dataclasses.replace(d, shape=ShapeData(frame, transposed))
    assert gamma_Z(flipped) == gamma_Z(d)


def test_gamma_of_split_diagonal_shape(frame):
    shape = ShapeData(frame, tuple(tuple(v if i == j else 0 for j in range(4)) for i, v in enumerate((1, 1, -1, -1))))
    d = VariationPointData(KForm.zero(7, 2), SymTensor2.zero(), e(1), shape)
    # plane coordinates 1..4 are e4..e7, so this is 2(e45 − e67)
    assert gamma_Z(d) == KForm.from_terms(4, {"12": 2, "34": -2})


# -----------------------------------------------------------------------------
# B tensors
# -----------------------------------------------------------------------------

def test_b_on_the_normal_frame(frame):
    assert check_b_w(e(1), e(2), e(3), frame) == KForm.volume(4) * 2
    assert check_b_w(e(1), e(3), e(2), frame) == KForm.volume(4) * -2


def test_b_is_antisymmetric(rng, frame):
    w = random_vector(rng, ScalarMode.EXACT)
    z1 = random_normal(rng, frame, ScalarMode.EXACT)
    z2 = random_normal(rng, frame, ScalarMode.EXACT)
    assert check_b_w(w, z1, z2, frame) == check_b_w(w, z2, z1, frame) * -1
    assert check_b_w(w, z1, z1, frame).is_zero()


def test_b_ignores_tangential_part_of_w(frame):
    assert check_b_w(e(6), e(1), e(2), frame).is_zero()
    assert check_b_w(e(1) + e(6), e(2), e(3), frame) == check_b_w(e(1), e(2), e(3), frame)


def test_b_h_matches_closed_form(rng, frame):
    for _ in range(3):
        h = random_sym(rng, ScalarMode.EXACT)
        z1 = random_normal(rng, frame, ScalarMode.EXACT)
        z2 = random_normal(rng, frame, ScalarMode.EXACT)
        assert check_b_h(h, z1, z2, frame) == b_h_closed_form(h, z1, z2, frame)


def test_b_h_for_the_metric(frame):
    # h = g: 4|Z|² + 2·4·|Z|²
    assert check_b_h(SymTensor2.identity(), e(1), e(1), frame) == KForm.volume(4) * 12


def test_b_needs_normal_arguments(frame):
    with pytest.raises(NotNormalError):
        check_b_w(e(1), e(4), e(2), frame)


# -----------------------------------------------------------------------------
# dτ₂ lemma
# -----------------------------------------------------------------------------

def test_lemma_holds_without_torsion(rng):
    for _ in range(5):
        d = random_variation_point(rng, zero_torsion=True)
        assert lemma_dtau2_check(d) == 0


def test_ricci_term_for_negative_identity(frame):
    d = VariationPointData(KForm.zero(7, 2), SymTensor2.identity() * -1, e(1), ShapeData.totally_geodesic(frame))
    assert ricci_term(d).scalar() == 6


def test_lemma_residual_for_torsion_example(frame):
    d = torsion_point(frame)
    assert lemma_dtau2_check(d) == -1
    assert quadratic_torsion_term(d).scalar() == -1


def test_lemma_residual_is_the_quadratic_torsion_term(rng):
    for _ in range(3):
        d = random_variation_point(rng)
        assert lemma_dtau2_check(d) == quadratic_torsion_term(d).scalar()


def test_tau_square_has_no_lambda3_7_part(rng):
    assert tau_square_lambda3_7(random_lambda2_14(rng, ScalarMode.EXACT)).is_zero()


def test_dtau2_for_einstein_metric_without_torsion(g2):
    assert dtau2_from_identity(KForm.zero(7, 2), SymTensor2.identity()) == g2.phi * -3


def test_dtau2_for_ricci_flat_torsion():
    tau2 = KForm.from_terms(7, {"45": 1, "67": -1})
    assert dtau2_from_identity(tau2, SymTensor2.zero()) == KForm.from_terms(7, {"123": -1})


def test_second_variation_integrand_assembly(rng):
    d = random_variation_point(rng)
    assert secvar_integrand(d) - eq2_assembly(d) == quadratic_torsion_term(d) * -1


def test_second_variation_integrand_on_totally_geodesic_torsion_free_point(frame):
    d = VariationPointData(KForm.zero(7, 2), SymTensor2.identity() * -1, e(1), ShapeData.totally_geodesic(frame))
    assert secvar_integrand(d).scalar() == 6


def test_float_mode_point_agrees_with_exact(rng):
    d = random_variation_point(rng, ScalarMode.FLOAT)
    residual = secvar_integrand(d) - eq2_assembly(d) + quadratic_torsion_term(d)
    assert residual.is_zero(1e-9)


# -----------------------------------------------------------------------------
# First variation density
# -----------------------------------------------------------------------------

def test_first_variation_density_for_torsion_example(frame):
    fv = first_variation_density(KForm.from_terms(7, {"23": 1, "45": -1}), e(1), frame)
    assert fv.mean_curvature == e(1) * Fraction(1, 2)
    assert fv.density.scalar() == -1


def test_first_variation_density_is_minus_twice_mean_curvature(rng, frame):
    tau2 = random_lambda2_14(rng, ScalarMode.EXACT)
    z = random_normal(rng, frame, ScalarMode.EXACT)
    fv = first_variation_density(tau2, z, frame)
    assert fv.density.scalar() == -2 * fv.mean_curvature.dot(z)


def test_first_variation_density_for_selfdual_restriction(frame):
    # τ₂|Σ = e45 + e67 equals (e1 ⌟ φ)|Σ
    tau2 = KForm.from_terms(7, {"23": -2, "45": 1, "67": 1})
    fv = first_variation_density(tau2, e(1), frame)
    assert fv.mean_curvature == e(1) * -1
    assert fv.density.scalar() == 2


# -----------------------------------------------------------------------------
# Sampling
# -----------------------------------------------------------------------------

def test_trial_streams_are_reproducible():
    a = trial_rng(7, 3, 1).integers(0, 1_000_000, size=4)
    b = trial_rng(7, 3, 1).integers(0, 1_000_000, size=4)
    c = trial_rng(7, 3, 2).integers(0, 1_000_000, size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_random_two_step_algebra_is_nilpotent(rng):
    alg = random_two_step_algebra(rng)
    assert alg.dim == 7
    assert alg.derived_dimension() <= 3
