"""Command-line front end: ``bddpower {entropy,reorder,power,compare} FILE``."""
from __future__ import annotations

import argparse
import datetime
import sys
from pathlib import Path

from .bdd import BddError, SizeLimitError
from .netlist import ParseError, elaborate, random_netlist, read_netlist
from .power import PowerConfig
from .probability import InputDistribution
from .reorder import MAX_EXHAUSTIVE_VARS, STRATEGIES, reorder
from .report import (
    InvariantViolation,
    check_equivalence,
    compare,
    entropy_table,
    power_run,
    render,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SIZE = 4
EXIT_INVARIANT = 5


def _load(args):
    if args.random is not None:
        return random_netlist(
            args.random, args.random_outputs, args.random_gates, seed=args.seed,
            name=f"random{args.random}_s{args.seed}",
        )
    if args.file is None:
        raise ParseError("no input file given (or use --random N)")
    return read_netlist(args.file, args.input_format)


def _dist(args):
    if not args.dist:
        return None
    try:
        return InputDistribution.from_text(Path(args.dist).read_text())
    except ValueError as exc:
        raise ParseError(f"{args.dist}: {exc}") from None


def _config(args):
    cfg = {}
    if args.config:
        try:
            base = PowerConfig.from_text(Path(args.config).read_text())
        except ValueError as exc:
            raise ParseError(f"{args.config}: {exc}") from None
        cfg = base.to_dict()
    for key in ("c0", "vdd", "f_clk", "fanout_model"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    if args.include_inputs:
        cfg["include_inputs"] = True
    return PowerConfig(**cfg)


def _check_size(netlist, method):
    n = len(netlist.comb_inputs)
    if method == "exhaustive" and n > MAX_EXHAUSTIVE_VARS:
        raise SizeLimitError(
            f"exhaustive search needs at most {MAX_EXHAUSTIVE_VARS} inputs, circuit has {n}"
        )


def _stamp(data, args):
    if not args.no_timestamp:
        data["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return data


def cmd_entropy(args) -> dict:
    netlist = _load(args)
    return _stamp(entropy_table(netlist, _dist(args)), args)


def cmd_reorder(args) -> dict:
    netlist = _load(args)
    _check_size(netlist, args.method)
    dist = _dist(args)
    fs = elaborate(netlist)
    outcome = reorder(fs, args.method, dist, _config(args), metric=args.metric,
                      window_size=args.window)
    if not check_equivalence(netlist, fs):
        raise InvariantViolation("reordered BDDs disagree with the netlist")
    data = outcome.to_dict()
    data["circuit"] = netlist.name
    return _stamp(data, args)


def cmd_power(args) -> dict:
    netlist = _load(args)
    order = args.order
    if order in STRATEGIES:
        _check_size(netlist, order)
    else:
        order = order.replace(",", " ").split()
    outcome, report = power_run(netlist, order, _dist(args), _config(args), metric=args.metric)
    data = {"circuit": netlist.name, "reorder": outcome.to_dict(), "power": report.to_dict()}
    return _stamp(data, args)


def cmd_compare(args) -> dict:
    netlist = _load(args)
    methods = [m for m in args.methods.replace(",", " ").split()]
    for m in methods:
        if m not in STRATEGIES:
            raise BddError(f"unknown method {m!r}; choose from {', '.join(STRATEGIES)}")
        _check_size(netlist, m)
    table = compare(netlist, methods, _dist(args), _config(args), metric=args.metric)
    data = table.to_dict()
    if args.no_timestamp:
        for row in data["rows"]:
            row.pop("runtime_s")
    return _stamp(data, args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="BLIF, PLA or truth-vector file")
    common.add_argument("--input-format", choices=["blif", "pla", "tv"],
                        help="override format detection by extension")
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--dist", help="file of 'name = p(1)' lines")
    common.add_argument("--config", help="file of 'key = value' power settings")
    common.add_argument("--c0", type=float, help="base capacitance in farads")
    common.add_argument("--vdd", type=float, help="supply voltage in volts")
    common.add_argument("--f-clk", dest="f_clk", type=float, help="clock frequency in hertz")
    common.add_argument("--fanout-model", choices=["uniform", "linear"])
    common.add_argument("--include-inputs", action="store_true",
                        help="count primary-input nets in the power total")
    common.add_argument("--metric", choices=["node-count", "power"],
                        help="score used by the exhaustive strategy")
    common.add_argument("--window", type=int, default=3, choices=[2, 3, 4])
    common.add_argument("--random", type=int, metavar="N",
                        help="analyse a random N-input circuit instead of a file")
    common.add_argument("--random-outputs", type=int, default=2)
    common.add_argument("--random-gates", type=int, default=8)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for --random circuit generation")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp and runtimes for byte-stable output")

    parser = argparse.ArgumentParser(
        prog="bddpower",
        description="Entropy-driven BDD reordering and mux-network power estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("entropy", parents=[common], help="H(f) and H(f|x) per output")
    p.set_defaults(func=cmd_entropy)
    p = sub.add_parser("reorder", parents=[common], help="compute a variable order")
    p.add_argument("--method", choices=STRATEGIES, default="info")
    p.set_defaults(func=cmd_reorder, default_metric="node-count")
    p = sub.add_parser("power", parents=[common], help="power of the derived mux network")
    p.add_argument("--order", default="info",
                   help="a method name or an explicit order such as 'x1,x2,x3'")
    p.set_defaults(func=cmd_power, default_metric="power")
    p = sub.add_parser("compare", parents=[common], help="compare reordering methods")
    p.add_argument("--methods", default=",".join(STRATEGIES))
    p.set_defaults(func=cmd_compare, default_metric="power")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.metric is None:
        args.metric = args.default_metric if hasattr(args, "default_metric") else "power"
    try:
        data = args.func(args)
    except ParseError as exc:
        print(f"bddpower: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"bddpower: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as exc:
        print(f"bddpower: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except InvariantViolation as exc:
        print(f"bddpower: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (BddError, ValueError) as exc:
        print(f"bddpower: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(args.command, data, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
