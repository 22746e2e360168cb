"""Combinational netlists from BLIF, PLA and truth-vector text.

Sequential BLIF models are reduced to their combinational core: each latch
output becomes a pseudo primary input and each latch input a pseudo primary
output.  :func:`elaborate` turns a netlist into one BDD per output.
"""
from __future__ import annotations

import graphlib
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .bdd import BddError, BddManager, Node, OR

__all__ = [
    "ParseError",
    "UnsupportedDirective",
    "UndefinedSignal",
    "CombinationalCycle",
    "MalformedCover",
    "Cube",
    "Gate",
    "Netlist",
    "parse_blif",
    "parse_pla",
    "parse_truth_vectors",
    "read_netlist",
    "elaborate",
    "simulate_netlist",
    "random_netlist",
]


class ParseError(ValueError):
    """Malformed netlist text; ``line`` is 1-based, or ``None`` when global."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class UnsupportedDirective(ParseError):
    pass


class UndefinedSignal(ParseError):
    pass


class CombinationalCycle(ParseError):
    pass


class MalformedCover(ParseError):
    pass


@dataclass(frozen=True)
class Cube:
    """One cover row: input literals over ``01-`` and the output bit."""

    literals: str
    out: int = 1

    def matches(self, values: Sequence[int]) -> bool:
        return all(c == "-" or int(c) == v for c, v in zip(self.literals, values))


@dataclass
class Gate:
    """Single-output cover.

    All cubes share one output value: 1-rows list the ON-set, 0-rows the
    OFF-set.  An empty cover is constant 0.
    """

    output: str
    inputs: list[str]
    cubes: list[Cube] = field(default_factory=list)
    line: int | None = None

    @property
    def onset(self) -> bool:
        return not self.cubes or self.cubes[0].out == 1

    def evaluate(self, values: Sequence[int]) -> int:
        if not self.cubes:
            return 0
        hit = any(c.matches(values) for c in self.cubes)
        return int(hit) if self.onset else int(not hit)


@dataclass
class Netlist:
    name: str
    inputs: list[str]
    outputs: list[str]
    gates: list[Gate] = field(default_factory=list)
    latches: list[tuple[str, str]] = field(default_factory=list)

    @property
    def comb_inputs(self) -> list[str]:
        """Primary inputs followed by latch outputs."""
        return self.inputs + [q for _, q in self.latches]

    @property
    def comb_outputs(self) -> list[str]:
        """Primary outputs followed by latch inputs."""
        return self.outputs + [d for d, _ in self.latches]

    def topological_gates(self) -> list[Gate]:
        by_out = {g.output: g for g in self.gates}
        sorter = graphlib.TopologicalSorter()
        for g in self.gates:
            sorter.add(g.output, *(s for s in g.inputs if s in by_out))
        try:
            order = list(sorter.static_order())
        except graphlib.CycleError as exc:
            cycle = exc.args[1]
            line = by_out[cycle[0]].line if cycle and cycle[0] in by_out else None
            raise CombinationalCycle(
                "combinational cycle through " + " -> ".join(cycle), line
            ) from None
        return [by_out[s] for s in order if s in by_out]


def _check_netlist(net: Netlist, line_of: dict[str, int], eof: int) -> Netlist:
    defined: dict[str, int | None] = {}
    for s in net.comb_inputs:
        if s in defined:
            raise ParseError(f"signal {s!r} declared twice", line_of.get(s, eof))
        defined[s] = line_of.get(s, eof)
    for g in net.gates:
        if g.output in defined:
            raise ParseError(f"signal {g.output!r} defined twice", g.line or eof)
        defined[g.output] = g.line
    for g in net.gates:
        for s in g.inputs:
            if s not in defined:
                raise UndefinedSignal(f"signal {s!r} is used but never defined", g.line or eof)
    for s in net.comb_outputs:
        if s not in defined:
            raise UndefinedSignal(f"output {s!r} is never defined", line_of.get(s, eof))
    net.topological_gates()
    return net


def _eof(text: str) -> int:
    return max(1, len(text.splitlines()))


def _logical_lines(text: str):
    """Yield ``(line number, content)`` with comments and continuations removed."""
    pending = ""
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if start is None:
            start = lineno
        if line.endswith("\\"):
            pending += line[:-1] + " "
            continue
        line = (pending + line).strip()
        pending = ""
        if line:
            yield start, line
        start = None
    if pending.strip():
        yield start, pending.strip()


def _cover_row(tokens, n_inputs, lineno) -> Cube:
    if n_inputs == 0:
        if len(tokens) != 1:
            raise MalformedCover("constant cover row must be a single bit", lineno)
        lits, out = "", tokens[0]
    else:
        if len(tokens) != 2:
            raise MalformedCover(f"expected '<{n_inputs} literals> <output>'", lineno)
        lits, out = tokens
    if len(lits) != n_inputs:
        raise MalformedCover(
            f"cube {lits!r} has {len(lits)} literals, gate has {n_inputs} inputs", lineno
        )
    if set(lits) - set("01-"):
        raise MalformedCover(f"invalid literal in {lits!r}", lineno)
    if out not in ("0", "1"):
        raise MalformedCover(f"invalid output value {out!r}", lineno)
    return Cube(lits, int(out))


def parse_blif(text: str) -> Netlist:
    """Parse one ``.model`` of BLIF (``.names`` and ``.latch`` only)."""
    name = None
    inputs: list[str] = []
    outputs: list[str] = []
    gates: list[Gate] = []
    latches: list[tuple[str, str]] = []
    line_of: dict[str, int] = {}
    current: Gate | None = None
    ended = False
    for lineno, line in _logical_lines(text):
        tokens = line.split()
        head = tokens[0]
        if ended:
            raise ParseError("text after .end", lineno)
        if not head.startswith("."):
            if current is None:
                raise MalformedCover("cover row outside a .names block", lineno)
            cube = _cover_row(tokens, len(current.inputs), lineno)
            if current.cubes and cube.out != current.cubes[0].out:
                raise MalformedCover("cover mixes ON-set and OFF-set rows", lineno)
            current.cubes.append(cube)
            continue
        current = None
        if head == ".model":
            if name is not None:
                raise UnsupportedDirective("only a single .model is supported", lineno)
            name = tokens[1] if len(tokens) > 1 else "unnamed"
        elif head in (".inputs", ".outputs"):
            target = inputs if head == ".inputs" else outputs
            for s in tokens[1:]:
                target.append(s)
                line_of.setdefault(s, lineno)
        elif head == ".names":
            if len(tokens) < 2:
                raise ParseError(".names needs an output signal", lineno)
            current = Gate(tokens[-1], tokens[1:-1], [], lineno)
            gates.append(current)
        elif head == ".latch":
            if len(tokens) < 3:
                raise ParseError(".latch needs input and output signals", lineno)
            latches.append((tokens[1], tokens[2]))
            line_of.setdefault(tokens[2], lineno)
            line_of.setdefault(tokens[1], lineno)
        elif head == ".end":
            ended = True
        else:
            raise UnsupportedDirective(f"unsupported directive {head}", lineno)
    net = Netlist(name or "unnamed", inputs, outputs, gates, latches)
    return _check_netlist(net, line_of, _eof(text))


def _pla_directives(line: str, lineno: int):
    """Split ``.i 3 .o 1`` style lines into ``(directive, args)`` pairs."""
    out = []
    for tok in line.split():
        if tok.startswith("."):
            out.append((tok, []))
        elif out:
            out[-1][1].append(tok)
        else:
            raise ParseError(f"unexpected token {tok!r}", lineno)
    return out


def parse_pla(text: str, name: str = "pla") -> Netlist:
    """Parse an espresso-style PLA into one gate per output.

    ``-`` or ``0`` in an output column means the cube does not belong to
    that output's ON-set; ``~`` is accepted as a synonym of ``0``.
    """
    n_in = n_out = None
    in_names = out_names = None
    rows: list[tuple[int, str, str]] = []
    done = False
    for lineno, line in _logical_lines(text):
        if done:
            break
        if line.startswith("."):
            for head, args in _pla_directives(line, lineno):
                if head in (".i", ".o"):
                    if len(args) != 1 or not args[0].isdigit():
                        raise ParseError(f"{head} needs one integer", lineno)
                    if head == ".i":
                        n_in = int(args[0])
                    else:
                        n_out = int(args[0])
                elif head == ".ilb":
                    in_names = args
                elif head == ".ob":
                    out_names = args
                elif head == ".p":
                    pass
                elif head == ".type":
                    if args not in (["f"], ["fd"]):
                        raise UnsupportedDirective(f"unsupported PLA type {' '.join(args)}", lineno)
                elif head in (".e", ".end"):
                    done = True
                    break
                else:
                    raise UnsupportedDirective(f"unsupported directive {head}", lineno)
            continue
        if n_in is None or n_out is None:
            raise ParseError("cube before .i/.o declarations", lineno)
        tokens = line.split()
        if len(tokens) == 2:
            lits, outs = tokens
        elif len(tokens) == 1 and len(tokens[0]) == n_in + n_out:
            lits, outs = tokens[0][:n_in], tokens[0][n_in:]
        else:
            raise MalformedCover("expected '<inputs> <outputs>'", lineno)
        if len(lits) != n_in or len(outs) != n_out:
            raise MalformedCover(
                f"row has {len(lits)}/{len(outs)} columns, expected {n_in}/{n_out}", lineno
            )
        if set(lits) - set("01-"):
            raise MalformedCover(f"invalid literal in {lits!r}", lineno)
        if set(outs) - set("01-~"):
            raise MalformedCover(f"invalid output value in {outs!r}", lineno)
        rows.append((lineno, lits, outs))
    if n_in is None or n_out is None:
        raise ParseError("missing .i or .o declaration", _eof(text))
    in_names = in_names or [f"x{i + 1}" for i in range(n_in)]
    out_names = out_names or [f"f{j + 1}" for j in range(n_out)]
    if len(in_names) != n_in or len(out_names) != n_out:
        raise ParseError(".ilb/.ob length disagrees with .i/.o", _eof(text))
    gates = [
        Gate(o, list(in_names), [Cube(lits) for _, lits, outs in rows if outs[j] == "1"])
        for j, o in enumerate(out_names)
    ]
    net = Netlist(name, list(in_names), list(out_names), gates)
    return _check_netlist(net, {}, _eof(text))


def parse_truth_vectors(text: str, name: str = "tv") -> Netlist:
    """One output per line of ``2**n`` bits over ``x1..xn`` (``x1`` is the MSB)."""
    vectors = [(ln, line) for ln, line in _logical_lines(text)]
    if not vectors:
        raise ParseError("no truth vector found", _eof(text))
    size = len(vectors[0][1])
    for ln, vec in vectors:
        if set(vec) - {"0", "1"}:
            raise MalformedCover("truth vector may only contain 0 and 1", ln)
        if len(vec) != size:
            raise MalformedCover("all truth vectors must have the same length", ln)
    if size & (size - 1):
        raise MalformedCover(f"length {size} is not a power of two", vectors[0][0])
    n = size.bit_length() - 1
    inputs = [f"x{i + 1}" for i in range(n)]
    outputs = [f"f{j + 1}" for j in range(len(vectors))]
    gates = []
    for out, (ln, vec) in zip(outputs, vectors):
        cubes = [Cube(format(row, f"0{n}b") if n else "") for row, b in enumerate(vec) if b == "1"]
        gates.append(Gate(out, list(inputs), cubes, ln))
    return Netlist(name, inputs, outputs, gates)


_READERS = {
    ".blif": parse_blif,
    ".pla": parse_pla,
    ".tv": parse_truth_vectors,
    ".txt": parse_truth_vectors,
}


def read_netlist(path, fmt: str | None = None) -> Netlist:
    """Read a netlist file; the format follows the extension unless given."""
    path = Path(path)
    key = "." + fmt.lstrip(".") if fmt else path.suffix.lower()
    if key == ".truth":
        key = ".tv"
    try:
        reader = _READERS[key]
    except KeyError:
        raise ParseError(f"cannot tell the format of {path.name}") from None
    net = reader(path.read_text())
    if reader is not parse_blif:
        net.name = path.stem
    return net


def _cover_bdd(manager: BddManager, gate: Gate, signals: dict[str, Node]) -> Node:
    terms = manager.false
    for cube in gate.cubes:
        term = manager.true
        for lit, s in zip(cube.literals, gate.inputs):
            if lit == "1":
                term = term & signals[s]
            elif lit == "0":
                term = term & ~signals[s]
        terms = manager.apply(OR, terms, term)
    return terms if gate.onset else ~terms


def elaborate(
    netlist: Netlist, manager: BddManager | None = None, order: Sequence[str] | None = None
) -> list[Node]:
    """Build one BDD per combinational output.

    A new manager is created when none is given; its variables are the
    combinational inputs in declaration order.  ``order`` (top first) must
    name every input.
    """
    inputs = netlist.comb_inputs
    if order is not None:
        missing = [s for s in inputs if s not in set(order)]
        if missing:
            raise BddError(f"order does not place inputs {missing}")
    if manager is None:
        manager = BddManager(inputs)
    else:
        for s in inputs:
            if s not in manager.var_names:
                manager.add_var(s)
    if order is not None:
        extra = [v for v in manager.order_names if v not in set(order)]
        manager.reorder_to(list(order) + extra)
    signals = {s: manager.var(s) for s in inputs}
    for gate in netlist.topological_gates():
        signals[gate.output] = _cover_bdd(manager, gate, signals)
    return [signals[s] for s in netlist.comb_outputs]


def simulate_netlist(netlist: Netlist, assignment: dict[str, int]) -> list[int]:
    """Direct cover-by-cover evaluation of every combinational output."""
    values = {s: int(bool(assignment[s])) for s in netlist.comb_inputs}
    for gate in netlist.topological_gates():
        values[gate.output] = gate.evaluate([values[s] for s in gate.inputs])
    return [values[s] for s in netlist.comb_outputs]


def random_netlist(
    n_inputs: int,
    n_outputs: int = 2,
    n_gates: int = 8,
    seed: int | random.Random | None = None,
    name: str = "random",
) -> Netlist:
    """A random acyclic 2-input gate network (AND/OR/XOR/NAND/NOR covers)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    covers = {
        "and": ([Cube("11")]),
        "or": ([Cube("1-"), Cube("-1")]),
        "xor": ([Cube("10"), Cube("01")]),
        "nand": ([Cube("11", 0)]),
        "nor": ([Cube("1-", 0), Cube("-1", 0)]),
    }
    inputs = [f"x{i + 1}" for i in range(n_inputs)]
    signals = list(inputs)
    gates = []
    for k in range(n_gates):
        a, b = rng.sample(signals, 2) if len(signals) > 1 else (signals[0], signals[0])
        kind = rng.choice(sorted(covers))
        out = f"g{k + 1}"
        gates.append(Gate(out, [a, b], list(covers[kind])))
        signals.append(out)
    outputs = [g.output for g in gates[-n_outputs:]]
    return Netlist(name, inputs, outputs, gates)
