"""Finite ultrametric spaces: canonical representing trees, isometry and
weak similarity, structural classification, and exhaustive theorem audits.

All arithmetic is exact (fractions.Fraction); no runtime dependencies.
"""

from .canonical import (
    MODES,
    are_isometric,
    are_weakly_similar,
    canonical_code,
    count_self_isometries,
    node_codes,
)
from .classify import (
    CLASS_IDS,
    ClassReport,
    ClassVerdict,
    Discrepancy,
    audit_equivalences,
    classify,
    membership,
)
from .core import (
    PointSpectrum,
    Space,
    Verdict,
    diameter,
    point_spectrum,
    restrict,
    spectrum,
    to_plain,
    validate_space,
)
from .gen import enumerate_shapes, enumerate_spaces, random_space, random_unrooted
from .graphs import (
    SimpleGraph,
    complete_multipartite_parts,
    connected_components,
    decompose_level_graph,
    level_graph,
    strip_isolated,
)
from .hereditary import (
    hereditary_counterexample_search,
    hereditary_verify,
    is_hereditary_instance,
    one_point_deletions,
)
from .tree import (
    NodeInfo,
    RootedTree,
    ballean,
    build_representing_tree,
    height,
    max_out_degree,
    multipartite_parts,
    node_info,
    tree_to_space,
)
from .unrooted import (
    UnrootedTree,
    generates_ultrametric,
    has_leaf_child_everywhere,
    path_max_distance,
    space_from_unrooted,
    unrooted_from_representing,
)

__version__ = "0.1.0"

__all__ = [
    "MODES",
    "CLASS_IDS",
    "ClassReport",
    "ClassVerdict",
    "Discrepancy",
    "NodeInfo",
    "PointSpectrum",
    "RootedTree",
    "SimpleGraph",
    "Space",
    "UnrootedTree",
    "Verdict",
    "are_isometric",
    "are_weakly_similar",
    "audit_equivalences",
    "ballean",
    "build_representing_tree",
    "canonical_code",
    "classify",
    "complete_multipartite_parts",
    "connected_components",
    "count_self_isometries",
    "decompose_level_graph",
    "diameter",
    "enumerate_shapes",
    "enumerate_spaces",
    "generates_ultrametric",
    "has_leaf_child_everywhere",
    "height",
    "hereditary_counterexample_search",
    "hereditary_verify",
    "is_hereditary_instance",
    "level_graph",
    "max_out_degree",
    "membership",
    "multipartite_parts",
    "node_codes",
    "node_info",
    "one_point_deletions",
    "path_max_distance",
    "point_spectrum",
    "random_space",
    "random_unrooted",
    "restrict",
    "spectrum",
    "strip_isolated",
    "to_plain",
    "tree_to_space",
    "unrooted_from_representing",
    "validate_space",
]
