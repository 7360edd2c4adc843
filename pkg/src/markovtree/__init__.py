"""Markov tree structures: triplets, edge sequences, Pell solutions,
last-digit cycles, special square terms and Farey indexing."""

from . import errors
from .cycles import (
    CYCLIC_LUCAS_DIGITS,
    CycleReport,
    EvenIndexReport,
    FibonacciStructure,
    LucasStructure,
    cycle_endpoint_table,
    cycle_length,
    edge_parity_pattern,
    even_index_cycles,
    internal_structure,
    last_digit_frequency,
    palindromic_cycle,
    parity_type,
    pattern_by_residue,
)
from .edges import (
    Side,
    edge_region,
    edge_rows,
    edge_series,
    edge_triplet,
    secondary_solution,
)
from .farey import (
    FareyTriplet,
    farey_children,
    farey_edge_sequence,
    farey_for_region,
    log10_big,
    plot_points,
)
from .lucas import lucas_u, lucas_v, seq_u, seq_v, u_pair_fast, u_pair_mod
from .pell import (
    PellSolution,
    UniquenessReport,
    discriminant,
    generate_solutions,
    pell_residual,
    solve_pell_brute,
    uniqueness_check,
)
from .squares import (
    EdgeSquareSeeds,
    OscillationReport,
    SquarePair,
    SquarePalindromeReport,
    decompose,
    edge_seeds,
    oscillation_report,
    product_identity_check,
    region_edge_seeds,
    region_sign,
    square_cycle_length,
    square_pair,
    square_palindrome_check,
    square_series,
    wraparound_check,
    wraparound_signs,
)
from .tree import (
    MarkovList,
    Triplet,
    children,
    enumerate_mod,
    is_markov,
    markov_list,
    parent,
    sibling_number,
    singular_successor,
    tree_rows,
)

__version__ = "0.1.0"
