from variations.families import (
    ImmersionFamily,
    AffineFiberFamily,
    GraphFamily,
    HypersphereFamily,
    TangentialFamily,
    family_registry,
    get_family,
)
from variations.geometry import QuadratureSpec, GeometrySample, sample_geometry, volume, mean_curvature
from variations.checks import (
    first_variation_check,
    second_variation_check,
    density_second_derivative_check,
    moduli_fibration_demo,
    volume_curve,
    write_curve_csv,
)
