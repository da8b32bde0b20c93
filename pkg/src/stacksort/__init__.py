"""Two-stack sorting machines with pattern-avoiding stacks.

The package answers three kinds of questions about the (sigma, tau)
machine: which permutations it sorts (machine, is_sortable, the
enumeration harness), how the sortable sets biject onto classical
pattern classes (signatures, west_map, the staircase encoding of
123-avoiders as Dyck paths), and how many there are (the counting
sequences and their generating function).  Everything is exact integer
work; the verification suites in ``harness`` recheck the structural
claims by brute force at small lengths.
"""

from .perms import (
    BivincularPattern,
    PatternSet,
    Permutation,
    STAR_123,
    STAR_132,
    avoiders,
    contains_bivincular,
    contains_classical,
    format_permutation,
    parse_permutation,
)
from .machine import (
    StackStep,
    StackTrace,
    is_sortable,
    machine,
    pattern_stack_pass,
    validate_trace,
    west_pass,
)
from .signatures import active_sites, format_signature, has_plateau, signature, west_map
from .dyck import (
    BSequence,
    DyckPath,
    GridDecomposition,
    cell_capacity_ok,
    contains_factor,
    count_dyck_avoiding,
    dyck_paths,
    grid_cells,
    rotem_b_sequence,
    rotem_map,
)
from .sequences import (
    SequenceTable,
    catalan,
    f_sequence,
    g_sequence,
    gf_coefficients,
    schroder_large,
    sort_123_321_closed,
)
from .harness import (
    EnumerationResult,
    SuiteReport,
    VerificationReport,
    conjecture_tables,
    enumerate_cached,
    enumerate_single_machine,
    enumerate_sortable,
    run_suites,
)

__version__ = "0.1.0"

__all__ = [
    "BivincularPattern",
    "BSequence",
    "DyckPath",
    "EnumerationResult",
    "GridDecomposition",
    "PatternSet",
    "Permutation",
    "STAR_123",
    "STAR_132",
    "SequenceTable",
    "StackStep",
    "StackTrace",
    "SuiteReport",
    "VerificationReport",
    "active_sites",
    "avoiders",
    "catalan",
    "cell_capacity_ok",
    "conjecture_tables",
    "contains_bivincular",
    "contains_classical",
    "contains_factor",
    "count_dyck_avoiding",
    "dyck_paths",
    "enumerate_cached",
    "enumerate_single_machine",
    "enumerate_sortable",
    "f_sequence",
    "format_permutation",
    "format_signature",
    "g_sequence",
    "gf_coefficients",
    "grid_cells",
    "has_plateau",
    "is_sortable",
    "machine",
    "parse_permutation",
    "pattern_stack_pass",
    "rotem_b_sequence",
    "rotem_map",
    "run_suites",
    "schroder_large",
    "signature",
    "sort_123_321_closed",
    "validate_trace",
    "west_map",
    "west_pass",
]
