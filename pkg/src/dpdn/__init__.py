"""Synthesis and switch-level verification of constant-power
differential pull-down networks.

The package turns Boolean expressions into differential switch
networks, rewrites textbook networks into fully connected ones whose
internal nodes all discharge every cycle, inserts pass-gates for
input-independent evaluation depth, and verifies the resulting
constant-power properties by exhaustive switch-level analysis.
"""

from .boolexpr import (
    And,
    BoolExpr,
    Lit,
    Literal,
    Or,
    ParseError,
    complement,
    eval_truth,
    format_expression,
    input_set,
    literal_count,
    parse_expression,
)
from .switchnet import (
    Device,
    DuplicateDeviceWarning,
    MalformedNetworkError,
    ORIGIN_PASS_GATE,
    ORIGIN_SYNTHESIZED,
    PRECHARGE,
    SwitchNetwork,
    build_genuine,
    canonical_equal,
    closed_edges,
    conducting_components,
    renumber,
    validate_network,
)
from .fcsynth import TerminalMap, TransformError, fc_from_expr, fc_transform
from .enhancer import DischargePath, MissingDerivationError, enumerate_paths, insert_pass_gates
from .analyzer import (
    AnalysisReport,
    EnergyReport,
    EnumerationLimitError,
    Violation,
    check_early_propagation,
    check_fully_connected,
    check_function,
    depth_by_assignment,
    discharge_set,
    energy_report,
    evaluation_depth,
    full_report,
)
from .netlist import FORMAT_VERSION, NetlistFormatError, emit_json, emit_spice, parse_json

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # expressions
    "And",
    "BoolExpr",
    "Lit",
    "Literal",
    "Or",
    "ParseError",
    "complement",
    "eval_truth",
    "format_expression",
    "input_set",
    "literal_count",
    "parse_expression",
    # networks
    "Device",
    "DuplicateDeviceWarning",
    "MalformedNetworkError",
    "ORIGIN_PASS_GATE",
    "ORIGIN_SYNTHESIZED",
    "PRECHARGE",
    "SwitchNetwork",
    "build_genuine",
    "canonical_equal",
    "closed_edges",
    "conducting_components",
    "renumber",
    "validate_network",
    # synthesis
    "TerminalMap",
    "TransformError",
    "fc_from_expr",
    "fc_transform",
    # enhancement
    "DischargePath",
    "MissingDerivationError",
    "enumerate_paths",
    "insert_pass_gates",
    # analysis
    "AnalysisReport",
    "EnergyReport",
    "EnumerationLimitError",
    "Violation",
    "check_early_propagation",
    "check_fully_connected",
    "check_function",
    "depth_by_assignment",
    "discharge_set",
    "energy_report",
    "evaluation_depth",
    "full_report",
    # serialization
    "FORMAT_VERSION",
    "NetlistFormatError",
    "emit_json",
    "emit_spice",
    "parse_json",
]
