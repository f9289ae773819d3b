"""Noncrossing matchings, basketballs and necklaces of complex polynomials.

Three layers: exact combinatorics (matchings, bimatchings, basketballs, their
enumeration and symmetries, and necklaces of matchings), numerical extraction
of those invariants from a monic polynomial by tracing the level curves
Im(e^{-i theta} f(z)) = 0, and the constructive inverse direction realizing
any basketball as the invariant of some polynomial.
"""

from .combinatorics import (
    Basketball,
    Bimatching,
    Matching,
    Nc4Partition,
    SymmetryOp,
    apply_symmetry,
    count_basketballs,
    crosses,
    crossing_histogram,
    ears,
    enumerate_basketballs,
    from_partition,
    hat,
    interleave,
    is_noncrossing,
    max_enumeration_order,
    nc4_partitions,
    noncrossing_matchings,
    rotation_class_count,
    split,
    to_partition,
    total_crossings,
    validate_basketball,
)
from .curves import (
    AnalysisCertificate,
    BoundaryPoint,
    ComponentTrace,
    SingularAngleSet,
    TraceConfig,
    angle_distance_mod_pi,
    basketball_of,
    boundary_points,
    matching_of,
    necklace_of,
    reduce_angle,
    safe_radius,
    singular_angles,
    trace_component,
)
from .necklace import (
    Multiear,
    Necklace,
    enumerate_necklaces,
    is_transition,
    multiears,
    pairwise_basketball_check,
    transition_successors,
    validate_necklace,
)
from .polynomials import MonicPolynomial, polynomial_roots, set_default_seed
from .realize import (
    RealizationResult,
    insert_root,
    realize,
    rotate_frame,
    unhat,
)
from . import errors

__version__ = "0.1.0"
