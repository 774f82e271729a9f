"""Exact dominance and covering computations for k-sparse split sets on the unit cube."""

from splitdom.splits import (
    Region,
    SplitSet,
    NormalizationMap,
    SplitFamily,
    evaluate,
    is_cube_empty,
    normalize,
    apply_map,
    invert_map,
    transform_point,
    enumerate_family,
    member_of_family,
)
from splitdom.geometry import (
    LinSystem,
    LPOutcome,
    lp_maximize,
    feasible_mixed,
    contained_in_halfspace,
)
from splitdom.dominance import (
    DominanceReport,
    CoverResult,
    NoneWithin,
    dominates,
    union_dominates,
    min_cover,
    covering_number_empirical,
)
from splitdom.constructive import (
    CubeEmptySplit,
    dominate_with_F2,
    cover_with_F3,
    cover_with_F4,
)
from splitdom.families import (
    ExperimentReport,
    gen_S_gamma,
    gen_S_theta,
    experiment_prop2,
    experiment_prop_upper,
    experiment_thm3,
    experiment_lower_bound,
    experiment_witness_soundness,
)

__version__ = "0.1.0"
