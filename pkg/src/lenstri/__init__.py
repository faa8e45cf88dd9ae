"""Layered triangulations of lens spaces, Z2 dual surfaces, layered solid tori and small censuses."""

from .arith import (
    Family,
    LensSpec,
    classify_family,
    continued_fraction,
    euclid_steps,
    family_collisions,
    family_memberships,
    lens_equal,
)
from .catalog import build_catalog, load_catalog, model_triangulation
from .census import (
    CensusConfig,
    CensusResult,
    census,
    enumerate_census,
    filter_by_h1,
    naive_census,
    verify_unique_minimal,
)
from .homology import AbelianGroup, homology_h1
from .layered import (
    LayeredBuild,
    fold,
    fold_on_slope,
    l_k,
    layer_on,
    layer_on_slope,
    layered_lens,
    minimal_layered_extension,
    minimal_layered_lens,
    pair_solid_tori,
    s1,
    s_k,
    special_lens,
    theorem_applies,
    worked_example,
)
from .lst import (
    EdgeModel,
    IntersectionReport,
    LSTSubcomplex,
    classify_face,
    edge_model,
    find_lsts,
    lst_intersection,
    lst_type,
    maximal_lsts,
    s_maximal_lsts,
)
from .moves import edge_flip_4_4, flip_degree_report, pachner_2_3, pachner_3_2
from .signature import canonical_signature, from_signature, is_isomorphic, isomorphism
from .skeleton import Skeleton, ValidationReport, degree_census, is_orientable, skeleton, validate
from .triangulation import Triangulation
from .z2 import (
    DualSurface,
    SurfaceStats,
    Z2Coloring,
    classify_tets,
    condition3_check,
    dual_surface,
    inequality_report,
    stats,
    surface_orientability,
    z2_colorings,
)

__version__ = "0.1.0"
