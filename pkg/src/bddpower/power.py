"""Mux networks derived from BDDs and their dynamic power.

Every distinct nonterminal node becomes one 2:1 multiplexer whose select
input is the node's variable, data-0 input the ``lo`` child's net and
data-1 input the ``hi`` child's net.  Switching activity follows the
zero-delay, temporally independent model ``Sw = 2·p·(1-p)`` with ``p`` the
exact signal probability of the net, and each gate output dissipates
``0.5 · C · Vdd² · f_clk · Sw``.
"""
from __future__ import annotations

import math

from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Sequence

from .bdd import Node
from .information import binary_entropy
from .probability import InputDistribution, UNIFORM, propagate

__all__ = [
    "Mux",
    "DerivedCircuit",
    "PowerConfig",
    "NetPower",
    "PowerReport",
    "derive_mux_network",
    "net_probabilities",
    "switching_activity",
    "estimate_power",
    "entropy_bound_check",
    "simulate",
    "total_power",
]

CONST0 = "const0"
CONST1 = "const1"


@dataclass(frozen=True)
class Mux:
    out: str
    select: str
    d0: str
    d1: str


@dataclass
class DerivedCircuit:
    """Mux network for a list of output functions sharing one manager.

    ``inputs`` are primary-input nets (variable names), ``outputs`` the net
    driving each output in order, ``gates`` the muxes in topological order
    (inputs before consumers).  ``fanout`` counts mux pins fed by each net;
    primary outputs are not counted.
    """

    gates: list[Mux]
    inputs: list[str]
    outputs: list[str]
    fanout: dict[str, int]
    nodes: dict[str, Node] = field(repr=False)

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    @property
    def nets(self) -> list[str]:
        return [CONST0, CONST1, *self.inputs, *(g.out for g in self.gates)]


def _net(node: Node) -> str:
    if node.var is None:
        return CONST1 if node.value else CONST0
    return f"n{node.uid}"


def derive_mux_network(fs: Sequence[Node]) -> DerivedCircuit:
    fs = list(fs)
    if not fs:
        return DerivedCircuit([], [], [], {}, {})
    manager = fs[0].manager
    nodes = manager.descendants(fs)
    inputs = [manager.var_name(v) for v in manager.order]
    fanout = {net: 0 for net in (CONST0, CONST1, *inputs)}
    gates = []
    by_net: dict[str, Node] = {CONST0: manager.false, CONST1: manager.true}
    # bottom levels first so every mux follows its data inputs
    for u in reversed(nodes):
        out = _net(u)
        sel = manager.var_name(u.var)
        d0, d1 = _net(u.lo), _net(u.hi)
        gates.append(Mux(out, sel, d0, d1))
        by_net[out] = u
        fanout.setdefault(out, 0)
        for pin in (sel, d0, d1):
            fanout[pin] += 1
    return DerivedCircuit(gates, inputs, [_net(f) for f in fs], fanout, by_net)


def simulate(circuit: DerivedCircuit, assignment: Mapping[str, int]) -> dict[str, int]:
    """Gate-level evaluation of every net under a name -> bit assignment."""
    values = {CONST0: 0, CONST1: 1}
    for name in circuit.inputs:
        values[name] = 1 if assignment[name] else 0
    for g in circuit.gates:
        values[g.out] = values[g.d1] if values[g.select] else values[g.d0]
    return values


def net_probabilities(circuit: DerivedCircuit, dist: InputDistribution | None = None) -> dict[str, float]:
    dist = UNIFORM if dist is None else dist
    probs = {CONST0: 0.0, CONST1: 1.0}
    muxes = [circuit.nodes[g.out] for g in circuit.gates]
    if not circuit.inputs:
        return probs
    manager = circuit.nodes[CONST0].manager
    p1 = dist.resolve(manager)
    for name in circuit.inputs:
        probs[name] = p1[manager.var_index(name)]
    memo = propagate(muxes, p1)
    for g, u in zip(circuit.gates, muxes):
        probs[g.out] = memo[u.uid]
    return probs


def switching_activity(
    circuit: DerivedCircuit, dist: InputDistribution | None = None
) -> dict[str, float]:
    """``2·p·(1-p)`` for every net; constants never switch."""
    return {net: 2.0 * p * (1.0 - p) for net, p in net_probabilities(circuit, dist).items()}


@dataclass(frozen=True)
class PowerConfig:
    """Electrical parameters of the power model.

    ``fanout_model`` is ``"linear"`` (``C = c0·(1 + fanout)``) or
    ``"uniform"`` (``C = c0``).
    """

    c0: float = 10e-15
    vdd: float = 5.0
    f_clk: float = 20e6
    fanout_model: str = "linear"
    include_inputs: bool = False

    def __post_init__(self):
        for name in ("c0", "vdd", "f_clk"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.fanout_model not in ("uniform", "linear"):
            raise ValueError(f"unknown fanout model {self.fanout_model!r}")

    def capacitance(self, fanout: int) -> float:
        if self.fanout_model == "linear":
            return self.c0 * (1 + fanout)
        return self.c0

    @classmethod
    def from_text(cls, text: str) -> "PowerConfig":
        """Read ``key = value`` lines (``#`` starts a comment)."""
        kwargs: dict = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                raise ValueError(f"line {lineno}: expected key = value")
            if key in ("c0", "vdd", "f_clk"):
                try:
                    kwargs[key] = float(value)
                except ValueError:
                    raise ValueError(f"line {lineno}: {key} needs a number, got {value!r}") from None
            elif key == "fanout_model":
                kwargs[key] = value
            elif key == "include_inputs":
                kwargs[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class NetPower:
    net: str
    p: float
    sw: float
    capacitance: float
    power: float


@dataclass
class PowerReport:
    nets: list[NetPower]
    total: float
    gate_count: int
    config: PowerConfig

    def to_dict(self) -> dict:
        return {
            "total_power_w": self.total,
            "gate_count": self.gate_count,
            "config": self.config.to_dict(),
            "nets": [asdict(n) for n in self.nets],
        }


def estimate_power(
    circuit: DerivedCircuit,
    dist: InputDistribution | None = None,
    cfg: PowerConfig | None = None,
) -> PowerReport:
    cfg = PowerConfig() if cfg is None else cfg
    probs = net_probabilities(circuit, dist)
    scale = 0.5 * cfg.vdd**2 * cfg.f_clk
    driven = [g.out for g in circuit.gates]
    if cfg.include_inputs:
        driven = list(circuit.inputs) + driven
    rows = []
    for net in driven:
        p = probs[net]
        sw = 2.0 * p * (1.0 - p)
        cap = cfg.capacitance(circuit.fanout[net])
        rows.append(NetPower(net, p, sw, cap, scale * cap * sw))
    # exactly rounded, so the total does not depend on net listing order
    return PowerReport(rows, math.fsum(r.power for r in rows), circuit.gate_count, cfg)


def entropy_bound_check(
    circuit: DerivedCircuit, dist: InputDistribution | None = None, tol: float = 1e-9
) -> dict[str, bool]:
    """Per net: does ``Sw <= H(p)/2`` hold?"""
    return {
        net: 2.0 * p * (1.0 - p) <= binary_entropy(p) / 2.0 + tol
        for net, p in net_probabilities(circuit, dist).items()
    }


def total_power(fs: Iterable[Node], dist=None, cfg=None) -> float:
    return estimate_power(derive_mux_network(list(fs)), dist, cfg).total
