from fractions import Fraction

import pytest

from exterior.forms import KForm, Vector, antiselfdual_part, basis_form, form_norm2, interior
from exterior.plane import OrientedPlane
from exterior.scalar import ScalarMode
from g2.algebra import act_on_form, act_on_sym, g2_lie_algebra, so_generators
from g2.decomposition import (
    e1_i_map_expansion, i_map, i_map_inverse, phi_wedge_star, project_lambda2, project_lambda3, traceless_basis,
)
from g2.frames import CoassocFrame, normal_to_selfdual
from g2.metric import metric_from_phi
from g2.products import calibration_defect, coassociator, cross, triple_chi
from g2.structure import SymTensor2
from identities.pointwise import contraction_identity_residual, hl_identity_residual, ricci_split_residual
from identities.sampling import random_g2_element, random_sym, random_traceless, random_vector
from models.errors import (
    ContractViolation, NotAG2FormError, NotCoassociativeError, NotNormalError, NotSymmetricError,
)


def e(k: int) -> Vector:
    return Vector.e(k)


# -----------------------------------------------------------------------------
# Model forms
# -----------------------------------------------------------------------------

def test_model_psi_terms(g2):
    assert g2.psi.coefficient("4567") == 1
    assert g2.psi.coefficient("2345") == 1
    assert g2.psi.coefficient("1346") == -1
    assert g2.psi.coefficient("1247") == -1
    assert g2.phi.coefficient("257") == -1


def test_i_map_of_identity_is_six_phi(g2):
    assert i_map(SymTensor2.identity()) == g2.phi * 6
    assert i_map(SymTensor2.zero()).is_zero()


def test_symmetric_tensor_rejects_asymmetric_rows():
    rows = [[0] * 7 for _ in range(7)]
    rows[0][1] = 1
    with pytest.raises(NotSymmetricError):
        SymTensor2.of(rows)


# -----------------------------------------------------------------------------
# Products
# -----------------------------------------------------------------------------

def test_cross_product_of_basis_vectors():
    assert cross(e(1), e(2)) == e(3)
    assert cross(e(2), e(1)) == e(3) * -1
    assert cross(e(1), e(1)).is_zero()


def test_triple_chi_puts_output_last():
    assert triple_chi(e(5), e(6), e(7)) == e(4) * -1


def test_coassociator_on_mixed_quadruple():
    assert coassociator([e(1), e(2), e(4), e(5)]) == e(2) * -1


def test_coassociator_vanishes_on_coassociative_plane():
    assert coassociator([e(4), e(5), e(6), e(7)]).is_zero()


def test_coassociator_needs_four_vectors():
    with pytest.raises(ContractViolation):
        coassociator([e(1), e(2), e(3)])


def test_calibration_defect_of_model_plane():
    value, defect = calibration_defect(OrientedPlane.coordinate(7, "4567"))
    assert value == 1
    assert defect == 0


def test_harvey_lawson_identity_on_random_quadruples(rng):
    for _ in range(10):
        vs = [random_vector(rng, ScalarMode.EXACT) for _ in range(4)]
        assert hl_identity_residual(vs) == 0


def test_contraction_identity(rng):
    assert contraction_identity_residual(random_vector(rng, ScalarMode.EXACT)).is_zero()


# -----------------------------------------------------------------------------
# Decompositions
# -----------------------------------------------------------------------------

def test_lambda2_projection_of_seven_dimensional_form(g2):
    a = interior(e(1), g2.phi)
    a7, a14 = project_lambda2(a)
    assert a7 == a
    assert a14.is_zero()
    assert phi_wedge_star(a) == a * 2


def test_lambda2_projection_of_fourteen_dimensional_form():
    a = KForm.from_terms(7, {"23": 1, "45": -1})
    a7, a14 = project_lambda2(a)
    assert a7.is_zero()
    assert a14 == a
    assert phi_wedge_star(a) == a * -1


def test_lambda3_projection_pieces(g2):
    a1, a7, a27 = project_lambda3(g2.phi)
    assert a1 == g2.phi and a7.is_zero() and a27.is_zero()

    w = interior(e(1), g2.psi)
    a1, a7, a27 = project_lambda3(w)
    assert a1.is_zero() and a7 == w and a27.is_zero()


def test_traceless_image_lies_in_lambda3_27(rng):
    h = random_traceless(rng, ScalarMode.EXACT)
    a1, a7, a27 = project_lambda3(i_map(h))
    assert a1.is_zero() and a7.is_zero()
    assert a27 == i_map(h)


def test_traceless_basis_has_27_members():
    basis = traceless_basis()
    assert len(basis) == 27
    assert all(h.trace() == 0 for h in basis)


def test_i_map_inverse_recovers_tensor(rng):
    h = random_sym(rng, ScalarMode.EXACT)
    assert i_map_inverse(i_map(h)) == h


def test_i_map_inverse_rejects_lambda3_7(g2):
    with pytest.raises(ContractViolation):
        i_map_inverse(interior(e(3), g2.psi))


def test_e1_contraction_matches_twelve_term_expansion(rng):
    h = random_sym(rng, ScalarMode.EXACT)
    contracted = interior(e(1), i_map(h))
    assert contracted == e1_i_map_expansion(h)
    # the e^45 and e^54 entries combine into one coefficient
    assert contracted.coefficient("45") == 2 * (h[0, 0] + h[3, 3] + h[4, 4])
    assert contracted.coefficient("46") == 2 * (h[0, 1] - h[3, 6] + h[4, 5])


def test_ricci_split(rng):
    assert ricci_split_residual(random_sym(rng, ScalarMode.EXACT)).is_zero()


# -----------------------------------------------------------------------------
# The Lie algebra g2
# -----------------------------------------------------------------------------

def test_g2_algebra_is_fourteen_dimensional_stabilizer(g2):
    basis = g2_lie_algebra()
    assert len(basis) == 14
    for a in basis:
        assert act_on_form(a, g2.phi).is_zero()
        assert act_on_form(a, g2.psi).is_zero()


def test_generic_rotation_moves_phi(g2):
    assert not act_on_form(so_generators()[0], g2.phi).is_zero()


def test_i_map_is_equivariant(rng):
    a = random_g2_element(rng)
    h = random_sym(rng, ScalarMode.EXACT)
    assert act_on_form(a, i_map(h)) == i_map(act_on_sym(a, h))


# -----------------------------------------------------------------------------
# Metric from φ
# -----------------------------------------------------------------------------

def test_metric_of_model_form(g2):
    assert metric_from_phi(g2.phi) == SymTensor2.identity()


def test_metric_scales_with_phi(g2):
    assert metric_from_phi(g2.phi * 8) == SymTensor2.identity() * 4


def test_metric_accepts_reversed_orientation(g2):
    assert metric_from_phi(g2.phi * -1) == SymTensor2.identity()


def test_degenerate_three_form_is_rejected():
    with pytest.raises(NotAG2FormError):
        metric_from_phi(basis_form(7, "123"))


# -----------------------------------------------------------------------------
# Coassociative frames
# -----------------------------------------------------------------------------

def test_model_frame_planes():
    frame = CoassocFrame.model()
    assert frame.plane.dim == 4
    assert frame.normal.dim == 3
    assert all(frame.plane.is_normal(v) for v in frame.normal.onb)


def test_associative_plane_is_not_coassociative():
    with pytest.raises(NotCoassociativeError):
        CoassocFrame.from_plane(OrientedPlane.coordinate(7, "1234"))


def test_normal_to_selfdual_on_model_frame():
    frame = CoassocFrame.model()
    image = normal_to_selfdual(e(1), frame)
    # e4 .. e7 are the first four coordinates on the plane
    assert image == KForm.from_terms(4, {"12": 1, "34": 1})
    assert antiselfdual_part(image).is_zero()
    assert form_norm2(image) == 2


def test_normal_to_selfdual_needs_a_normal_vector():
    with pytest.raises(NotNormalError):
        normal_to_selfdual(e(5), CoassocFrame.model())


def test_normal_to_selfdual_norm_on_combination():
    frame = CoassocFrame.model()
    z = e(1) * Fraction(1, 2) - e(3) * 2
    assert form_norm2(normal_to_selfdual(z, frame)) == 2 * z.norm2()
