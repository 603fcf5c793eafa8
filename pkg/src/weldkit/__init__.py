"""Lattice stabilizer codes joined by welding, with energy-barrier tools.

The pieces: pauli and css hold the operator and code plumbing, welding
implements the joining primitive with its preconditions and oracle,
builders assembles surfaces and solids directly and by welding, energy
measures exact barriers against parity lower bounds, and ising is a
small independent spin-flip searcher used for cross-checks.
"""

from .builders import (
    FlatRegionGraph,
    QubitPatch,
    SolidSpec,
    SurfaceSpec,
    WeldGraph,
    build_repetition,
    build_solid,
    build_solid_by_welding,
    build_surface,
    build_surface_by_welding,
    build_two_qubit,
    build_welded_solid,
    build_welded_surface,
    cubic,
    flat_region_graph,
    grid2d,
    parse_weld_graph,
    path,
    region_graph_from_weld_graph,
    star,
    surface_welding_chain,
)
from .css import (
    CssCode,
    GeneratingSet,
    LogicalClass,
    Syndrome,
    distance,
    dumps,
    encoded_qubits,
    fold_logical,
    from_json_dict,
    from_text,
    groups_equal,
    loads,
    permute_qubits,
    promote_to_logical,
    syndrome,
    to_json_dict,
    to_text,
    validate,
    validate_or_raise,
)
from .energy import (
    DEFAULT_STATE_CAP,
    BarrierResult,
    BoundReport,
    PauliWalk,
    ScalingPlan,
    WeldInvarianceReport,
    barrier_exponents,
    barrier_unchanged_by_rough_welds,
    exact_barrier,
    operator_barrier,
    parity_lower_bound,
    tune_scaling,
    verify_bound,
    walk_barrier,
)
from .errors import (
    FeasibilityError,
    MetadataError,
    ValidationError,
    WeldError,
    WeldkitError,
)
from .ising import spin_flip_barrier
from .pauli import (
    PauliOperator,
    commutes,
    format_operator,
    multiply,
    parse_operator,
    permute_operator,
    restrict,
    symplectic,
    weight,
)
from .verify import VerificationReport, run_verification
from .welding import (
    QubitIdentification,
    WeldLayout,
    WeldTrace,
    anticommuting_entries,
    check_weld_independence,
    check_well_matched,
    contract,
    parse_identification,
    trace_successor,
    weld,
    weld_oracle,
    welded_operator_trace,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "WeldkitError",
    "ValidationError",
    "WeldError",
    "FeasibilityError",
    "MetadataError",
    # pauli
    "PauliOperator",
    "multiply",
    "commutes",
    "symplectic",
    "weight",
    "restrict",
    "format_operator",
    "parse_operator",
    "permute_operator",
    # css
    "GeneratingSet",
    "LogicalClass",
    "Syndrome",
    "CssCode",
    "validate",
    "validate_or_raise",
    "encoded_qubits",
    "groups_equal",
    "syndrome",
    "promote_to_logical",
    "fold_logical",
    "permute_qubits",
    "distance",
    "to_text",
    "from_text",
    "to_json_dict",
    "from_json_dict",
    "dumps",
    "loads",
    # welding
    "QubitIdentification",
    "parse_identification",
    "WeldLayout",
    "WeldTrace",
    "contract",
    "check_well_matched",
    "check_weld_independence",
    "weld",
    "weld_oracle",
    "welded_operator_trace",
    "trace_successor",
    "anticommuting_entries",
    # builders
    "SurfaceSpec",
    "SolidSpec",
    "WeldGraph",
    "QubitPatch",
    "FlatRegionGraph",
    "path",
    "star",
    "grid2d",
    "cubic",
    "parse_weld_graph",
    "flat_region_graph",
    "region_graph_from_weld_graph",
    "build_two_qubit",
    "build_repetition",
    "build_surface",
    "build_surface_by_welding",
    "surface_welding_chain",
    "build_solid",
    "build_solid_by_welding",
    "build_welded_surface",
    "build_welded_solid",
    # energy
    "DEFAULT_STATE_CAP",
    "PauliWalk",
    "BarrierResult",
    "BoundReport",
    "WeldInvarianceReport",
    "ScalingPlan",
    "walk_barrier",
    "exact_barrier",
    "operator_barrier",
    "parity_lower_bound",
    "verify_bound",
    "barrier_unchanged_by_rough_welds",
    "barrier_exponents",
    "tune_scaling",
    # ising
    "spin_flip_barrier",
    # verify
    "VerificationReport",
    "run_verification",
]
