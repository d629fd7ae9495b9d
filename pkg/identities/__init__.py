from identities.pointwise import (
    ShapeData,
    VariationPointData,
    gamma_Z,
    check_b_w,
    check_b_h,
    dtau2_from_identity,
    lemma_dtau2_check,
    quadratic_torsion_term,
    secvar_integrand,
    eq2_assembly,
    first_variation_density,
)
