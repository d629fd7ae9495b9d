from exterior.scalar import ScalarMode, Scalar, DEFAULT_TOLERANCE
from exterior.forms import (
    KForm,
    Vector,
    basis_form,
    wedge,
    wedge_all,
    interior,
    hodge,
    form_inner,
    form_norm2,
    simple_kvector,
    evaluate,
    evaluate_many,
    gram_determinant,
    selfdual_part,
    antiselfdual_part,
)
from exterior.plane import OrientedPlane, restrict
