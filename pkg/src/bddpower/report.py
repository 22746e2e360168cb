"""Analysis runs over a netlist and their text/CSV/JSON rendering."""
from __future__ import annotations

import csv
import io
import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .bdd import BddManager, Node
from .information import conditional_entropy, entropy
from .netlist import Netlist, elaborate, simulate_netlist
from .power import PowerConfig, PowerReport, derive_mux_network, estimate_power
from .probability import InputDistribution
from .reorder import ReorderOutcome, reorder

__all__ = [
    "InvariantViolation",
    "ComparisonRow",
    "ComparisonTable",
    "check_equivalence",
    "entropy_table",
    "power_run",
    "compare",
    "format_si",
    "render",
]

EXHAUSTIVE_CHECK_LIMIT = 12
RANDOM_CHECK_VECTORS = 10_000


class InvariantViolation(RuntimeError):
    """A run produced a result that contradicts its own source."""


def check_equivalence(netlist: Netlist, fs: Sequence[Node], seed: int = 0) -> bool:
    """Compare BDD outputs against direct netlist simulation.

    Exhaustive up to 12 inputs, otherwise 10^4 random vectors.
    """
    inputs = netlist.comb_inputs
    manager = fs[0].manager if fs else None
    if len(inputs) <= EXHAUSTIVE_CHECK_LIMIT:
        vectors = itertools.product((0, 1), repeat=len(inputs))
    else:
        rng = random.Random(seed)
        vectors = (
            [rng.getrandbits(1) for _ in inputs] for _ in range(RANDOM_CHECK_VECTORS)
        )
    for bits in vectors:
        assignment = dict(zip(inputs, bits))
        expected = simulate_netlist(netlist, assignment)
        got = [manager.eval(f, assignment) for f in fs]
        if got != expected:
            return False
    return True


def circuit_meta(netlist: Netlist) -> dict:
    return {
        "name": netlist.name,
        "inputs": len(netlist.comb_inputs),
        "outputs": len(netlist.comb_outputs),
        "gates": len(netlist.gates),
    }


def entropy_table(netlist: Netlist, dist: InputDistribution | None = None) -> dict:
    """``H(f_j)`` and ``H(f_j | x_i)`` for every output ``j`` and input ``i``."""
    fs = elaborate(netlist)
    rows = []
    for name, f in zip(netlist.comb_outputs, fs):
        rows.append(
            {
                "output": name,
                "entropy": entropy(f, dist),
                "conditional": {x: conditional_entropy(f, x, dist) for x in netlist.comb_inputs},
            }
        )
    return {"circuit": circuit_meta(netlist), "outputs": rows}


def _apply_order(netlist, order_spec, dist, cfg, metric):
    """Elaborate and reorder; ``order_spec`` is a method name or a list of names."""
    manager = BddManager(netlist.comb_inputs)
    fs = elaborate(netlist, manager)
    if isinstance(order_spec, str):
        outcome = reorder(fs, order_spec, dist, cfg, metric=metric)
    else:
        before = manager.node_count(fs)
        manager.reorder_to(list(order_spec))
        outcome = ReorderOutcome("explicit", manager.order_names, before, manager.node_count(fs))
    return manager, fs, outcome


def power_run(
    netlist: Netlist,
    order: str | Sequence[str] = "info",
    dist: InputDistribution | None = None,
    cfg: PowerConfig | None = None,
    metric: str = "power",
) -> tuple[ReorderOutcome, PowerReport]:
    cfg = PowerConfig() if cfg is None else cfg
    manager, fs, outcome = _apply_order(netlist, order, dist, cfg, metric)
    if not check_equivalence(netlist, fs):
        raise InvariantViolation("reordered BDDs disagree with the netlist")
    return outcome, estimate_power(derive_mux_network(fs), dist, cfg)


@dataclass
class ComparisonRow:
    method: str
    order: list[str]
    node_count: int
    total_power_w: float
    runtime_s: float | None
    equivalent: bool


@dataclass
class ComparisonTable:
    circuit: dict
    rows: list[ComparisonRow]
    config: PowerConfig
    distribution: dict = field(default_factory=dict)

    def row(self, method: str) -> ComparisonRow:
        return next(r for r in self.rows if r.method == method)

    def to_dict(self) -> dict:
        return {
            "circuit": dict(self.circuit),
            "config": self.config.to_dict(),
            "distribution": dict(self.distribution),
            "rows": [asdict(r) for r in self.rows],
        }


def compare(
    netlist: Netlist,
    methods: Sequence[str] = ("info", "sift", "window", "exhaustive"),
    dist: InputDistribution | None = None,
    cfg: PowerConfig | None = None,
    metric: str = "power",
) -> ComparisonTable:
    """One row per strategy, each starting from a fresh elaboration.

    ``metric`` only affects the exhaustive strategy.
    """
    cfg = PowerConfig() if cfg is None else cfg
    rows = []
    for method in methods:
        start = time.perf_counter()
        manager, fs, outcome = _apply_order(netlist, method, dist, cfg, metric)
        report = estimate_power(derive_mux_network(fs), dist, cfg)
        elapsed = time.perf_counter() - start
        ok = check_equivalence(netlist, fs)
        if not ok:
            raise InvariantViolation(f"{method}: reordered BDDs disagree with the netlist")
        rows.append(
            ComparisonRow(method, outcome.order, outcome.node_count_after, report.total, elapsed, ok)
        )
    dist_info = {} if dist is None else {"p1": dict(dist.p1), "default": dist.default}
    return ComparisonTable(circuit_meta(netlist), rows, cfg, dist_info)


# ----------------------------------------------------------------------
# rendering

_PREFIXES = [(1e-15, "f"), (1e-12, "p"), (1e-9, "n"), (1e-6, "µ"), (1e-3, "m"), (1.0, "")]


def format_si(value: float, unit: str = "W") -> str:
    if value == 0:
        return f"0 {unit}"
    scale, prefix = _PREFIXES[0]
    for s, p in _PREFIXES:
        if abs(value) >= s:
            scale, prefix = s, p
    return f"{value / scale:.4g} {prefix}{unit}"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _entropy_rows(data):
    inputs = list(data["outputs"][0]["conditional"]) if data["outputs"] else []
    header = ["output", "H(f)"] + [f"H(f|{x})" for x in inputs]
    body = [
        [r["output"], r["entropy"]] + [r["conditional"][x] for x in inputs]
        for r in data["outputs"]
    ]
    return header, body


def _render_entropy_text(data):
    header, body = _entropy_rows(data)
    widths = [max(len(header[0]), *(len(b[0]) for b in body))] if body else [len(header[0])]
    widths += [max(len(h), 6) for h in header[1:]]
    lines = [f"circuit {data['circuit']['name']}: entropies in bits"]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for b in body:
        cells = [b[0].ljust(widths[0])] + [f"{v:.4f}".ljust(w) for v, w in zip(b[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _render_reorder_text(data):
    lines = [
        f"method: {data['method']}",
        f"order: {' '.join(data['order'])}",
        f"nodes: {data['node_count_before']} -> {data['node_count_after']}",
    ]
    for k, c in enumerate(data["per_level_choice"], 1):
        scores = ", ".join(f"{x}={s:.4f}" for x, s in c["scores"].items())
        lines.append(f"level {k}: {c['chosen']} ({c['score']:.4f}) from {scores}")
    if data["score_table"]:
        unit = "W" if data["metric"] == "power" else ""
        lines.append(f"all orders ({data['metric']}):")
        for row in data["score_table"]:
            val = format_si(row["score"]) if unit else f"{row['score']:g}"
            lines.append(f"  {' '.join(row['order'])}: {val}")
    return "\n".join(lines) + "\n"


def _render_power_text(data):
    cfg = data["power"]["config"]
    lines = [
        f"order: {' '.join(data['reorder']['order'])} ({data['reorder']['method']})",
        f"config: c0={cfg['c0']:g} F, vdd={cfg['vdd']:g} V, f_clk={cfg['f_clk']:g} Hz, "
        f"fanout_model={cfg['fanout_model']}",
        f"{'net':<10}{'p':>10}{'Sw':>10}{'C':>12}{'P':>14}",
    ]
    for n in data["power"]["nets"]:
        lines.append(
            f"{n['net']:<10}{n['p']:>10.4f}{n['sw']:>10.4f}"
            f"{format_si(n['capacitance'], 'F'):>12}{format_si(n['power']):>14}"
        )
    lines.append(f"gates: {data['power']['gate_count']}")
    lines.append(f"total: {format_si(data['power']['total_power_w'])}")
    if data["reorder"]["score_table"]:
        lines.append(_render_reorder_text(data["reorder"]).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _render_compare_text(data):
    c = data["circuit"]
    lines = [f"{c['name']}: {c['inputs']} inputs, {c['outputs']} outputs, {c['gates']} gates"]
    lines.append(f"{'method':<12}{'nodes':>7}{'power':>14}  order")
    for r in data["rows"]:
        lines.append(
            f"{r['method']:<12}{r['node_count']:>7}{format_si(r['total_power_w']):>14}  "
            f"{' '.join(r['order'])}"
        )
    return "\n".join(lines) + "\n"


def render(kind: str, data: dict, fmt: str = "text") -> str:
    """Render a report dict (``entropy``, ``reorder``, ``power`` or ``compare``)."""
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        if kind == "entropy":
            header, body = _entropy_rows(data)
            return _csv([header] + body)
        if kind == "reorder":
            rows = [["level", "chosen", "score"]]
            rows += [[k, c["chosen"], c["score"]] for k, c in enumerate(data["per_level_choice"], 1)]
            if not data["per_level_choice"]:
                rows = [["position", "variable"]] + [[k, x] for k, x in enumerate(data["order"], 1)]
            return _csv(rows)
        if kind == "power":
            rows = [["net", "p", "sw", "capacitance_f", "power_w"]]
            rows += [[n["net"], n["p"], n["sw"], n["capacitance"], n["power"]] for n in data["power"]["nets"]]
            rows.append(["total", "", "", "", data["power"]["total_power_w"]])
            return _csv(rows)
        if kind == "compare":
            rows = [["method", "order", "node_count", "total_power_w", "runtime_s"]]
            rows += [
                [r["method"], " ".join(r["order"]), r["node_count"], r["total_power_w"], r.get("runtime_s", "")]
                for r in data["rows"]
            ]
            return _csv(rows)
    if fmt == "text":
        return {
            "entropy": _render_entropy_text,
            "reorder": _render_reorder_text,
            "power": _render_power_text,
            "compare": _render_compare_text,
        }[kind](data)
    raise ValueError(f"unknown format {fmt!r}")
