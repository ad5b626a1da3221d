"""Randomly colored random bipartite graphs: profiles, walks, oracles, sweeps."""

from .audit import (
    dense_cut_witness,
    empty_cut_witness,
    high_degree_witness,
    isolated_color_vertices,
    low_degree_witness,
)
from .errors import (
    BadProfileSumError,
    ColorOutOfRangeError,
    DomainError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    InstanceTooLargeError,
    InvalidCycleError,
    InvalidMatchingError,
    LabError,
    NoPerfectMatchingError,
    NoSourceEdgesError,
    OutOfUnitIntervalError,
    ParseError,
    UnmatchedVertexError,
    ValidationError,
)
from .expansion import (
    ExpansionConstants,
    ExpansionTrace,
    default_constants,
    expansion_trace,
)
from .experiment import (
    CheckFlags,
    ExperimentConfig,
    TrialRecord,
    emit,
    run_trial,
    summarize,
    sweep,
)
from .graphs import (
    UNMATCHED,
    ColoredBipartiteGraph,
    ColorProfile,
    ColorSpec,
    Matching,
    build_graph,
    color_cut_count,
    color_neighborhood,
    matched_image,
    parse_graph,
    profile_of,
    serialize_graph,
)
from .matching import (
    max_matching,
    monochromatic_perfect_matching,
    verify_matching,
)
from .oracle import enumerate_mcp, enumerate_mcp_naive, has_profile
from .recolor import (
    AlternatingCycle,
    WalkOutcome,
    WalkReport,
    achieve_profile,
    apply_cycle,
    find_recoloring_cycle,
    recolor_step,
    toggle_cycle,
    validate_cycle,
)
from .sampling import SampleParams, sample_graph, threshold_p

__all__ = [
    "UNMATCHED",
    "AlternatingCycle",
    "BadProfileSumError",
    "CheckFlags",
    "ColorOutOfRangeError",
    "ColorProfile",
    "ColorSpec",
    "ColoredBipartiteGraph",
    "DomainError",
    "DuplicateEdgeError",
    "ExpansionConstants",
    "ExpansionTrace",
    "ExperimentConfig",
    "IndexOutOfRangeError",
    "InstanceTooLargeError",
    "InvalidCycleError",
    "InvalidMatchingError",
    "LabError",
    "Matching",
    "NoPerfectMatchingError",
    "NoSourceEdgesError",
    "OutOfUnitIntervalError",
    "ParseError",
    "SampleParams",
    "TrialRecord",
    "UnmatchedVertexError",
    "ValidationError",
    "WalkOutcome",
    "WalkReport",
    "achieve_profile",
    "apply_cycle",
    "build_graph",
    "color_cut_count",
    "color_neighborhood",
    "default_constants",
    "dense_cut_witness",
    "emit",
    "empty_cut_witness",
    "enumerate_mcp",
    "enumerate_mcp_naive",
    "expansion_trace",
    "find_recoloring_cycle",
    "has_profile",
    "high_degree_witness",
    "isolated_color_vertices",
    "low_degree_witness",
    "matched_image",
    "max_matching",
    "monochromatic_perfect_matching",
    "parse_graph",
    "profile_of",
    "recolor_step",
    "run_trial",
    "sample_graph",
    "serialize_graph",
    "summarize",
    "sweep",
    "threshold_p",
    "toggle_cycle",
    "validate_cycle",
    "verify_matching",
]
