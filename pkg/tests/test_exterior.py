from fractions import Fraction

import numpy as np
import pytest

from exterior.forms import (
    KForm, Vector, antiselfdual_part, basis_form, evaluate, evaluate_many, form_inner, form_norm2,
    gram_determinant, hodge, interior, selfdual_part, simple_kvector, wedge,
)
from exterior.plane import OrientedPlane, restrict
from exterior.scalar import ScalarMode, exact_sqrt
from identities.sampling import random_form, random_vector
from models.errors import ContractViolation, DegeneratePlaneError


def e(k: int, mode: ScalarMode = ScalarMode.EXACT) -> Vector:
    return Vector.e(k, 7, mode)


# -----------------------------------------------------------------------------
# wedge / interior
# -----------------------------------------------------------------------------

def test_wedge_of_basis_one_forms():
    product = wedge(basis_form(7, "1"), basis_form(7, "2"))
    assert product == basis_form(7, "12")
    assert wedge(basis_form(7, "2"), basis_form(7, "1")) == basis_form(7, "12") * -1


def test_from_terms_reorders_with_sign():
    assert KForm.from_terms(7, {"21": 1}) == basis_form(7, "12") * -1
    assert KForm.from_terms(7, {"11": 5}).is_zero()


def test_phi_wedge_psi_is_seven_volume(g2):
    assert wedge(g2.phi, g2.psi) == KForm.volume(7) * 7


def test_wedge_degree_overflow_raises():
    with pytest.raises(ContractViolation):
        wedge(basis_form(7, "1234"), basis_form(7, "4567"))


def test_wedge_rejects_dimension_mismatch():
    with pytest.raises(ContractViolation):
        wedge(basis_form(7, "1"), basis_form(4, "1"))


def test_interior_on_basis_forms():
    assert interior(e(4), basis_form(7, "45")) == basis_form(7, "5")
    assert interior(e(5), basis_form(7, "45")) == basis_form(7, "4") * -1
    assert interior(e(1), basis_form(7, "45")).is_zero()


def test_interior_of_e1_into_phi(g2):
    assert interior(e(1), g2.phi) == KForm.from_terms(7, {"23": 1, "45": 1, "67": 1})


def test_interior_on_degree_zero_raises():
    with pytest.raises(ContractViolation):
        interior(e(1), KForm.constant(7, 3))


def test_interior_is_nilpotent(rng):
    v = random_vector(rng, ScalarMode.EXACT)
    a = random_form(rng, 7, 3, ScalarMode.EXACT)
    assert interior(v, interior(v, a)).is_zero()


# -----------------------------------------------------------------------------
# Hodge star and inner products
# -----------------------------------------------------------------------------

def test_hodge_of_constant_is_volume():
    assert hodge(KForm.constant(7, 1)) == KForm.volume(7)


def test_hodge_of_model_forms(g2):
    assert hodge(g2.phi) == g2.psi
    assert hodge(basis_form(7, "4567")) == basis_form(7, "123")


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_hodge_squares_to_identity_in_odd_dimension(rng, degree):
    a = random_form(rng, 7, degree, ScalarMode.EXACT)
    assert hodge(hodge(a)) == a
    assert form_norm2(hodge(a)) == form_norm2(a)


def test_hodge_pairing_gives_inner_product(rng):
    a = random_form(rng, 7, 3, ScalarMode.EXACT)
    b = random_form(rng, 7, 3, ScalarMode.EXACT)
    assert wedge(a, hodge(b)) == KForm.volume(7) * form_inner(a, b)


def test_model_forms_have_norm_seven(g2):
    assert form_norm2(g2.phi) == 7
    assert form_norm2(g2.psi) == 7


def test_inner_product_needs_equal_degrees(g2):
    with pytest.raises(ContractViolation):
        form_inner(g2.phi, g2.psi)


# -----------------------------------------------------------------------------
# Restriction, evaluation, Gram determinants
# -----------------------------------------------------------------------------

def test_restricted_contraction_on_coassociative_plane(g2):
    # ι_{e3}((e1 ⌟ ψ) ∧ (e2 ⌟ φ)) restricted to span(e4, ..., e7)
    five = wedge(interior(e(1), g2.psi), interior(e(2), g2.phi))
    restricted = restrict(interior(e(3), five), OrientedPlane.coordinate(7, "4567"))
    assert restricted.scalar() == -2


def test_restriction_to_model_planes(g2):
    assert restrict(g2.phi, OrientedPlane.coordinate(7, "123")).scalar() == 1
    assert restrict(g2.psi, OrientedPlane.coordinate(7, "4567")).scalar() == 1
    assert restrict(g2.phi, OrientedPlane.coordinate(7, "4567")).is_zero()


def test_evaluate_matches_coefficients(g2):
    assert evaluate(g2.phi, [e(1), e(2), e(3)]) == 1
    assert evaluate(g2.phi, [e(2), e(1), e(3)]) == -1
    assert evaluate(g2.phi, [e(2), e(5), e(7)]) == -1


def test_evaluate_many_agrees_with_evaluate(g2_float):
    frames = np.random.default_rng(3).normal(size=(5, 3, 7))
    batch = evaluate_many(g2_float.phi, frames)
    for frame, value in zip(frames, batch):
        single = evaluate(g2_float.phi, [Vector.of(row, ScalarMode.FLOAT) for row in frame])
        assert value == pytest.approx(single, abs=1e-12)


def test_simple_kvector_norm_is_gram_determinant(rng):
    vs = [random_vector(rng, ScalarMode.EXACT) for _ in range(4)]
    assert form_norm2(simple_kvector(vs)) == gram_determinant(vs)


def test_gram_determinant_of_orthonormal_vectors():
    assert gram_determinant([e(1), e(4), e(6)]) == 1
    assert gram_determinant([e(1), e(1) * 2]) == 0


# -----------------------------------------------------------------------------
# Self-dual splitting on R^4
# -----------------------------------------------------------------------------

def test_selfdual_parts_of_e12():
    a = basis_form(4, "12")
    half = Fraction(1, 2)
    assert selfdual_part(a) == KForm.from_terms(4, {"12": half, "34": half})
    assert antiselfdual_part(a) == KForm.from_terms(4, {"12": half, "34": -half})
    assert selfdual_part(a) + antiselfdual_part(a) == a


def test_selfdual_part_requires_two_forms_on_r4(g2):
    with pytest.raises(ContractViolation):
        selfdual_part(g2.phi)


# -----------------------------------------------------------------------------
# Oriented planes
# -----------------------------------------------------------------------------

def test_dependent_vectors_do_not_span_a_plane():
    with pytest.raises(DegeneratePlaneError):
        OrientedPlane(7, (e(1), e(2), e(1) + e(2)))


def test_normal_part_and_complement():
    plane = OrientedPlane.coordinate(7, "4567")
    v = Vector.of([1, 2, 3, 4, 5, 6, 7])
    assert plane.normal_part(v) == Vector.of([1, 2, 3, 0, 0, 0, 0])
    assert plane.is_normal(e(2))
    assert not plane.is_normal(e(5))
    assert plane.complement().dim == 3


def test_exact_sqrt_of_rational_square():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
