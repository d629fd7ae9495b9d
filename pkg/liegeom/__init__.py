from liegeom.algebra import (
    LieAlgebraData,
    parse_structure_constants,
    format_structure_constants,
    load_structure_constants,
)
from liegeom.ce import ce_differential
from liegeom.riemann import Curvature, levi_civita, curvature_ricci, covariant_derivative
from liegeom.closed import ClosedG2Algebra, validate_closed_g2, bryant_identities_check
from liegeom.search import SearchHit, search_closed_g2
from liegeom.submersion import SubmersionSplit, oneill_analysis, cor_g2sub_check
