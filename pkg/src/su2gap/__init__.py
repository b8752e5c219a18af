"""Computational toolkit for pairs of SU(2) elements: trace coordinates,
word-map dynamics, Monte Carlo measure checks, and truncated spectral-gap
profiles."""

from .errors import ConvergenceError, DegenerateFiberWarning, DomainError
from .gap_dynamics import (
    EscapeRecord,
    Move,
    OrbitPoint,
    apply_move,
    fiber_image_interval,
    fiber_image_numeric,
    iterate_phi_endpoint,
    wordmap_orbit,
)
from .measure_lab import (
    Histogram2D,
    TransportHistogram,
    boundary_distance,
    boundary_mass,
    fiber_transport_demo,
    pushforward_histogram,
    sample_fiber,
)
from .spectral import (
    GapProfile,
    averaging_operator,
    gap_profile,
    irrep_matrix,
    level_gap,
    min_defect_level,
    word_defect_check,
)
from .su2_core import (
    IDENTITY,
    Pair,
    SU2Element,
    Word,
    commutator,
    conjugate,
    evaluate_word,
    haar_pair,
    haar_quaternions,
    haar_sample,
    inverse,
    multiply,
    pair_to_spec,
    trace,
)
from .trace_geometry import (
    FrickeCoord,
    TraceTriple,
    commutator_trace_of_square,
    construct_pair_from_fricke,
    construct_pair_from_traces,
    fricke_commutator_trace,
    in_domain_D,
    in_omega,
    pair_from_spec,
    phi,
    pi_map,
    trace_of_square,
    trace_triple,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegenerateFiberWarning",
    "DomainError",
    "EscapeRecord",
    "FrickeCoord",
    "GapProfile",
    "Histogram2D",
    "IDENTITY",
    "Move",
    "OrbitPoint",
    "Pair",
    "SU2Element",
    "TraceTriple",
    "TransportHistogram",
    "Word",
    "apply_move",
    "averaging_operator",
    "boundary_distance",
    "boundary_mass",
    "commutator",
    "commutator_trace_of_square",
    "conjugate",
    "construct_pair_from_fricke",
    "construct_pair_from_traces",
    "evaluate_word",
    "fiber_image_interval",
    "fiber_image_numeric",
    "fiber_transport_demo",
    "fricke_commutator_trace",
    "gap_profile",
    "haar_pair",
    "haar_quaternions",
    "haar_sample",
    "in_domain_D",
    "in_omega",
    "inverse",
    "irrep_matrix",
    "iterate_phi_endpoint",
    "level_gap",
    "min_defect_level",
    "multiply",
    "pair_from_spec",
    "pair_to_spec",
    "phi",
    "pi_map",
    "pushforward_histogram",
    "sample_fiber",
    "trace",
    "trace_of_square",
    "trace_triple",
    "word_defect_check",
    "wordmap_orbit",
]
