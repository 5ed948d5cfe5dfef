"""Exact sandpile groups of multigraphs, with the closed form for thick cycles."""

from .linalg import (
    DimensionError,
    InconsistentSystemError,
    IntegerMatrix,
    SnfResult,
    det,
    minors_gcd,
    smith_normal_form,
    solve_integer,
    solve_rational,
)
from .multigraph import (
    EnumerationGuardError,
    GraphError,
    Multigraph,
    build_banana,
    build_basic,
    build_book_graph,
    build_thick_cycle,
    cartesian_product,
    laplacian,
    reduced_laplacian,
    spanning_tree_count,
    spanning_tree_enumerate,
)
from .sandpile import (
    AbelianGroup,
    DisconnectedGraphError,
    DivisorError,
    canonicalize_group,
    class_representatives,
    divisor_class_equal,
    groups_isomorphic,
    monodromy_pairing,
    sandpile_group,
)
from .thick_cycle import (
    IndexSelection,
    MinorSelectionError,
    gcd_products,
    gcd_sequence,
    order_thick_cycle,
    permuted_laplacian,
    select_minor_indices,
    thick_cycle_group,
    verify_selected_minor,
)

__version__ = "0.1.0"
