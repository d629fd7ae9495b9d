import io

import numpy as np
import pytest
from pydantic import ValidationError

from models.errors import PreconditionRefused, UnknownFamilyError
from variations.checks import (
    density_second_derivative_check, first_variation_check, moduli_fibration_demo,
    second_variation_check, t_derivatives, volume_curve, write_curve_csv,
)
from variations.families import (
    AffineFiberFamily, GraphFamily, HypersphereFamily, TangentialFamily, family_registry, get_family,
)
from variations.geometry import QuadratureSpec, calibration_defect_max, mean_curvature, volume

COARSE = QuadratureSpec(grid=8)


# -----------------------------------------------------------------------------
# Registry and settings
# -----------------------------------------------------------------------------

def test_family_registry():
    assert family_registry() == ["affine-fiber", "graph", "sphere", "tangential"]
    assert isinstance(get_family("graph", amplitude=0.2), GraphFamily)


def test_unknown_family_lists_the_registry():
    with pytest.raises(UnknownFamilyError) as info:
        get_family("torus")
    assert "affine-fiber" in str(info.value)


def test_quadrature_grid_has_a_floor():
    with pytest.raises(ValidationError):
        QuadratureSpec(grid=4)


# -----------------------------------------------------------------------------
# Finite differences
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("richardson", [False, True])
def test_t_derivatives_of_a_quadratic(richardson):
    d = t_derivatives(lambda t: 3 * t ** 2 + 2 * t + 1, 0.5, 1e-3, richardson)
    assert d.value == pytest.approx(2.75)
    assert d.first == pytest.approx(5.0, rel=1e-8)
    assert d.second == pytest.approx(6.0, rel=1e-5)


# -----------------------------------------------------------------------------
# Volumes
# -----------------------------------------------------------------------------

def test_affine_fibre_volume_is_constant():
    fam = AffineFiberFamily(direction=(1.0, 0.5, 0.25))
    assert volume(fam, 0.0, COARSE) == pytest.approx(1.0, abs=1e-12)
    assert volume(fam, 0.7, COARSE) == pytest.approx(1.0, abs=1e-12)
    assert calibration_defect_max(fam, 0.3, COARSE) < 1e-12


def test_sphere_area():
    fam = HypersphereFamily()
    assert volume(fam, 0.0) == pytest.approx(fam.area(), rel=1e-10)
    assert volume(fam, 0.5) == pytest.approx(fam.area(0.5), rel=1e-10)


def test_sphere_quadrature_converges_at_least_quadratically():
    fam = HypersphereFamily()
    coarse = abs(volume(fam, 0.0, QuadratureSpec(grid=8)) - fam.area())
    fine = abs(volume(fam, 0.0, QuadratureSpec(grid=16)) - fam.area())
    assert fine <= coarse / 4


def test_sphere_mean_curvature_points_inward():
    fam = HypersphereFamily(radius=2.0)
    u = fam.sample_point()
    h = mean_curvature(fam, 0.0, u)
    position = fam.point_fn(0.0, np.asarray(u).reshape(1, 4))[:, 0]
    assert np.linalg.norm(h) == pytest.approx(2.0, rel=1e-9)
    assert h @ position < 0


def test_volume_curve_and_csv():
    rows = volume_curve(AffineFiberFamily(), [-0.1, 0.0, 0.1], COARSE)
    assert [r.t for r in rows] == [-0.1, 0.0, 0.1]
    assert all(r.vol == pytest.approx(1.0, abs=1e-12) for r in rows)
    stream = io.StringIO()
    write_curve_csv(rows, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "t,vol,dvol,d2vol"
    assert len(lines) == 4


# -----------------------------------------------------------------------------
# First and second variation
# -----------------------------------------------------------------------------

def test_sphere_first_variation():
    report = first_variation_check(HypersphereFamily())
    assert report.dvol_formula == pytest.approx(HypersphereFamily().area_rate(), rel=1e-9)
    assert report.scaled_error < 1e-5


def test_affine_fibre_first_variation_vanishes():
    report = first_variation_check(AffineFiberFamily(), COARSE)
    assert report.dvol_formula == pytest.approx(0.0, abs=1e-12)
    assert report.max_residual < 1e-8


def test_graph_second_variation_is_dirichlet_energy():
    fam = GraphFamily()
    report = second_variation_check(fam, COARSE)
    assert report.d2vol_formula == pytest.approx(fam.dirichlet_energy(), rel=1e-10)
    assert report.d2vol_fd == pytest.approx(fam.dirichlet_energy(), rel=1e-5)
    assert report.scaled_error < 1e-4
    assert report.theorem_rhs == 0.0
    assert report.theorem_note.startswith("T7 is flat")


def test_second_variation_is_quadratic_in_the_field():
    single = second_variation_check(GraphFamily(amplitude=0.1), COARSE)
    doubled = second_variation_check(GraphFamily(amplitude=0.2), COARSE)
    assert doubled.d2vol_formula == pytest.approx(4 * single.d2vol_formula, rel=1e-9)
    assert doubled.d2vol_fd == pytest.approx(4 * single.d2vol_fd, rel=1e-4)


def test_halving_the_step_quarters_the_second_variation_mismatch():
    fam = GraphFamily()
    mismatch = []
    for h_t in (4e-3, 2e-3):
        report = second_variation_check(fam, QuadratureSpec(grid=8, h_t=h_t))
        mismatch.append(abs(report.d2vol_fd - report.d2vol_formula))
    assert 4 / 1.5 <= mismatch[0] / mismatch[1] <= 4 * 1.5


def test_second_variation_refuses_non_minimal_sphere():
    with pytest.raises(PreconditionRefused):
        second_variation_check(HypersphereFamily(), COARSE)


def test_second_variation_refuses_tangential_field():
    with pytest.raises(PreconditionRefused):
        second_variation_check(TangentialFamily(), COARSE)


def test_density_refuses_tangential_field():
    with pytest.raises(PreconditionRefused):
        density_second_derivative_check(TangentialFamily(), COARSE)


def test_graph_density_three_ways():
    report = density_second_derivative_check(GraphFamily(), COARSE)
    assert report.coassociative is not None
    assert report.max_residual < 1e-4
    assert report.direct == pytest.approx(report.classical, abs=1e-4)


def test_sphere_density_skips_coassociative_version():
    report = density_second_derivative_check(HypersphereFamily(), COARSE)
    assert report.coassociative is None
    assert list(report.deviations) == ["direct-classical"]


# -----------------------------------------------------------------------------
# Flat coassociative fibration
# -----------------------------------------------------------------------------

def test_fibration_demo():
    report = moduli_fibration_demo(COARSE, steps=3)
    assert report.span_rank == 3
    assert report.gram == ((2, 0, 0), (0, 2, 0), (0, 0, 2))
    assert report.antiselfdual_max == 0
    assert report.volume_drift < 1e-12
    assert report.max_residual < 1e-10
