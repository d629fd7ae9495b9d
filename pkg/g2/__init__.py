from g2.structure import G2Structure, SymTensor2
from g2.products import cross, triple_chi, coassociator, calibration_defect
from g2.decomposition import project_lambda2, project_lambda3, i_map, i_map_inverse, vector_to_lambda3_7
from g2.metric import metric_from_phi
from g2.algebra import g2_lie_algebra, act_on_form, act_on_sym
from g2.frames import CoassocFrame, normal_to_selfdual
