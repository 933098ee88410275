"""Adiabatic quantum simulation pipeline for graceful graph labelling.

Decides whether a graph admits a graceful labelling and finds the
labellings, by encoding the search as a diagonal cost Hamiltonian over
bit strings, evolving the Schrodinger equation along a linear schedule,
and validating every result against exhaustive classical enumeration.
"""

from .dynamics import (
    EvolutionResult,
    SpectrumTrace,
    SweepResult,
    evolve,
    initial_state,
    manifold_gap,
    spectrum,
    sweep_times,
)
from .encoding import (
    CostBreakdown,
    DegeneracyReport,
    EncodingParams,
    cost_c1,
    cost_c2,
    cost_c3,
    decode_bitstring,
    encode_permutation,
    enumerate_degeneracy,
    total_cost,
)
from .errors import CapExceededError, IntegrationAccuracyError
from .experiments import FitResult, fit_quadratic, reproduce_table
from .graphs import (
    ExtendedAdjacency,
    Graph,
    GraphFormatError,
    MinorDiagonalProfile,
    NotEnoughLabelsError,
    Permutation,
    VertexLabelling,
    apply_permutation,
    extend,
    generate_graph,
    is_graceful_labelling,
    labelled_adjacency,
    load_graph,
    minor_diagonals,
    parse_edge_list_text,
)
from .hamiltonian import (
    DiagonalHamiltonian,
    PauliZExpansion,
    ScheduleParams,
    apply_h,
    apply_h0,
    build_problem_diagonal,
    pauli_z_expansion,
)
from .oracle import OracleReport, brute_force_graceful, labels_are_graceful, sheppard_count

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "CostBreakdown",
    "DegeneracyReport",
    "DiagonalHamiltonian",
    "EncodingParams",
    "EvolutionResult",
    "ExtendedAdjacency",
    "FitResult",
    "Graph",
    "GraphFormatError",
    "IntegrationAccuracyError",
    "MinorDiagonalProfile",
    "NotEnoughLabelsError",
    "OracleReport",
    "PauliZExpansion",
    "Permutation",
    "ScheduleParams",
    "SpectrumTrace",
    "SweepResult",
    "VertexLabelling",
    "apply_h",
    "apply_h0",
    "apply_permutation",
    "brute_force_graceful",
    "build_problem_diagonal",
    "cost_c1",
    "cost_c2",
    "cost_c3",
    "decode_bitstring",
    "encode_permutation",
    "enumerate_degeneracy",
    "evolve",
    "extend",
    "fit_quadratic",
    "generate_graph",
    "initial_state",
    "is_graceful_labelling",
    "labelled_adjacency",
    "labels_are_graceful",
    "load_graph",
    "manifold_gap",
    "minor_diagonals",
    "parse_edge_list_text",
    "pauli_z_expansion",
    "reproduce_table",
    "sheppard_count",
    "spectrum",
    "sweep_times",
    "total_cost",
]
