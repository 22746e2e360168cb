"""Entropy-driven BDD reordering for low-power mux networks.

Build BDDs with :class:`BddManager`, measure them with the probability and
information helpers, reorder them, and estimate the dynamic power of the
mux network each BDD maps to.
"""
from .bdd import (
    AND,
    NAND,
    NOR,
    OR,
    XNOR,
    XOR,
    AssignmentError,
    BddError,
    BddManager,
    ForeignNodeError,
    Node,
    OrderingViolation,
    SizeLimitError,
)
from .information import (
    EntropyReport,
    binary_entropy,
    conditional_entropy,
    conditional_entropy_joint,
    conditional_entropy_set,
    entropy,
    entropy_report,
    joint_entropy,
    total_conditional_entropy,
)
from .netlist import (
    Netlist,
    ParseError,
    elaborate,
    parse_blif,
    parse_pla,
    parse_truth_vectors,
    random_netlist,
    read_netlist,
    simulate_netlist,
)
from .power import (
    DerivedCircuit,
    PowerConfig,
    PowerReport,
    derive_mux_network,
    entropy_bound_check,
    estimate_power,
    simulate,
    switching_activity,
    total_power,
)
from .probability import (
    InputDistribution,
    conditional_probability,
    joint_probability,
    signal_probability,
)
from .reorder import (
    STRATEGIES,
    ReorderOutcome,
    exhaustive_best,
    info_r_order,
    reorder,
    sift,
    window_permute,
)
from .report import ComparisonTable, check_equivalence, compare, power_run

__version__ = "0.1.0"
