"""Command-line front end: ``khpotts <subcommand> ...``.

Exit codes: 0 success (``verify``: every criterion passed), 1 computation
error or failed verification, 2 usage error. JSON output carries
``schema_version``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from . import config, fixtures, kernels
from .bracket import BracketFlavor, bracket, jones
from .diagram import LinkDiagram, parse_pd
from .errors import KhPottsError
from .graphs import PlanarMultigraph, dichromatic_dc, dichromatic_subgraph_sum, dichromatic_via_bracket
from .homology import graded_euler_characteristic, homology
from .khovanov import build_complex, orientation_shift
from .numeric import DEFAULT_REL_TOL, complex_to_json
from .poly import render

SCHEMA_VERSION = 1
BUILTIN = "builtin:"


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    rel_tol: float = DEFAULT_REL_TOL
    seed: int = 0
    output_format: str = "text"
    threads: int = 1

    def __post_init__(self):
        if any(v <= 0 for v in self.caps.values()):
            raise ValueError("caps must be positive")


class UsageError(Exception):
    pass


def load_diagram(spec: str) -> LinkDiagram:
    """A PD/JSON file path, or ``builtin:<name>`` for a fixture diagram."""
    if spec.startswith(BUILTIN):
        name = spec[len(BUILTIN):]
        table = fixtures.diagrams()
        if name not in table:
            raise UsageError(f"unknown builtin diagram {name!r}; choose from {sorted(table)}")
        return table[name]
    with open(spec) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return LinkDiagram.from_json(text)
    return parse_pd(text)


def load_graph(spec: str) -> PlanarMultigraph:
    """A graph JSON file path, or ``builtin:<name>`` for a fixture graph."""
    if spec.startswith(BUILTIN):
        name = spec[len(BUILTIN):]
        table = fixtures.graphs()
        if name not in table:
            raise UsageError(f"unknown builtin graph {name!r}; choose from {sorted(table)}")
        return table[name]
    with open(spec) as fh:
        return PlanarMultigraph.from_json(fh.read())


def parse_complex(text: str) -> complex:
    """``re,im`` or ``re`` (also Python complex literals such as ``1j``)."""
    try:
        if "," in text:
            re_part, im_part = text.split(",")
            return complex(float(re_part), float(im_part))
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _poly_json(p) -> dict:
    return p.to_json()


def _homology_json(summary) -> dict:
    out = summary.to_json()
    out["euler_characteristic"] = render(graded_euler_characteristic(summary))
    return out


# -- subcommands -------------------------------------------------------

def cmd_bracket(args, cfg):
    d = load_diagram(args.pd)
    p = bracket(d, BracketFlavor(args.flavor), threads=cfg.threads)
    return {"flavor": args.flavor, "polynomial": _poly_json(p)}, render(p)


def cmd_jones(args, cfg):
    d = load_diagram(args.pd)
    p = jones(d, threads=cfg.threads)
    return {"writhe": sum(d.signs), "polynomial": _poly_json(p)}, render(p)


def cmd_khovanov(args, cfg):
    d = load_diagram(args.pd)
    summary = homology(build_complex(d, args.ring))
    shift = (0, 0)
    if args.shift:
        shift = orientation_shift(d)
        summary = summary.shifted(*shift)
    data = {"shift": list(shift), "homology": _homology_json(summary)}
    lines = [f"ring {summary.ring}, shift {shift}"]
    lines += [f"  H^({i},{j}) rank {b}" for (i, j), b in summary.nonzero_betti().items()]
    lines += [f"  torsion at ({i},{j}): {list(t)}" for (i, j), t in sorted(summary.torsion.items()) if t]
    lines.append(f"  chi = {data['homology']['euler_characteristic']}")
    return data, "\n".join(lines)


def cmd_dichromatic(args, cfg):
    g = load_graph(args.graph)
    fn = {"dc": dichromatic_dc, "sum": dichromatic_subgraph_sum, "bracket": dichromatic_via_bracket}[args.method]
    p = fn(g) if args.method == "dc" else fn(g, threads=cfg.threads)
    return {"method": args.method, "polynomial": _poly_json(p)}, render(p)


def cmd_potts(args, cfg):
    from .potts import PottsParameters, partition_spin_sum, partition_via_dichromatic, potts_via_khovanov

    g = load_graph(args.graph)
    p = PottsParameters(args.q, args.coupling)
    branch = None
    if args.method == "spin":
        value = partition_spin_sum(g, p, threads=cfg.threads)
    elif args.method == "dichromatic":
        value = partition_via_dichromatic(g, p)
    else:
        branch = {"sqrt_sign": args.sqrt_sign}
        value = potts_via_khovanov(g, args.q, p.boltzmann, args.sqrt_sign)
    data = {"method": args.method, "Q": args.q, "K": complex_to_json(p.K),
            "value": complex_to_json(value), "branch": branch}
    return data, f"{value.real:.12g} {value.imag:+.12g}i"


def cmd_stosic(args, cfg):
    from .stosic import build_stosic_complex, stosic_euler_identity

    g = load_graph(args.graph)
    cx = build_stosic_complex(g, args.n, args.ring)
    summary = homology(cx)
    ident = stosic_euler_identity(g, args.n, build_stosic_complex(g, args.n))
    data = {
        "n": args.n,
        "homology": _homology_json(summary),
        "euler_lhs": render(ident.lhs),
        "euler_rhs": render(ident.rhs),
        "equal": ident.equal,
        "specialization": "Q -> 1 + q + ... + q^n, v -> -q^n",
        "grading": "j = n e(h) + sum deg(label); n|h| + sum deg is not preserved by this differential",
    }
    lines = [f"  H^({i},{j}) rank {b}" for (i, j), b in summary.nonzero_betti().items()]
    lines += [f"chi(complex) = {data['euler_lhs']}", f"Z specialized = {data['euler_rhs']}", f"equal: {ident.equal}"]
    return data, "\n".join(lines)


def cmd_amplitude(args, cfg):
    from .quantum import bracket_amplitude, hadamard_test_sim, hilbert_dimension

    d = load_diagram(args.pd)
    amp = bracket_amplitude(d, args.theta)
    data = {"theta": args.theta, "amplitude": complex_to_json(amp), "basis_size": hilbert_dimension(d)}
    text = f"<K> = {amp.real:.12g} {amp.imag:+.12g}i (D = {data['basis_size']})"
    if args.shots:
        est = hadamard_test_sim(d, args.theta, args.shots, cfg.seed)
        data["hadamard"] = est.to_json()
        text += (f"\nHadamard estimate of <K>/D: {est.re_estimate:.6g} {est.im_estimate:+.6g}i"
                 f" (stderr {est.re_stderr:.3g}, {est.im_stderr:.3g})")
    return data, text


def cmd_potts_quantum(args, cfg):
    from .quantum import potts_quantum_check

    g = load_graph(args.graph)
    rows = potts_quantum_check(g, args.q, cfg.rel_tol)
    data = {"Q": args.q, "rows": [r.to_json() for r in rows]}
    text = "\n".join(
        f"{r.source:8s} sqrtQ sign {r.sqrt_sign:+d} t={r.t:+.6f} agree={r.agree}" for r in rows
    )
    return data, text


def cmd_verify(args, cfg):
    from .verify import Corpus, run_all

    corpus = Corpus.fixtures_only() if args.corpus == "fixtures" else Corpus.builtin(seed=cfg.seed)
    only = [int(k) for k in args.criteria.split(",")] if args.criteria else None
    results = run_all(corpus, only)
    data = {"corpus": args.corpus, "criteria": [r.to_json() for r in results],
            "passed": all(r.passed for r in results)}
    return data, "\n".join(r.line() for r in results)


COMMANDS = {
    "bracket": cmd_bracket,
    "jones": cmd_jones,
    "khovanov": cmd_khovanov,
    "dichromatic": cmd_dichromatic,
    "potts": cmd_potts,
    "stosic": cmd_stosic,
    "amplitude": cmd_amplitude,
    "potts-quantum": cmd_potts_quantum,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    common.add_argument("--cap", action="append", default=[], metavar="NAME=VALUE",
                        help=f"override a size cap; names: {', '.join(config.all_caps())}")

    parser = argparse.ArgumentParser(prog="khpotts", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    pd_help = "PD or JSON diagram file, or builtin:<name>"
    graph_help = "graph JSON file, or builtin:<name>"

    p = sub.add_parser("bracket", parents=[common])
    p.add_argument("--pd", required=True, help=pd_help)
    p.add_argument("--flavor", choices=[f.value for f in BracketFlavor], default="q")

    p = sub.add_parser("jones", parents=[common])
    p.add_argument("--pd", required=True, help=pd_help)

    p = sub.add_parser("khovanov", parents=[common])
    p.add_argument("--pd", required=True, help=pd_help)
    p.add_argument("--ring", choices=["z", "gf2"], default="z")
    p.add_argument("--shift", action="store_true", help="apply the orientation shift")

    p = sub.add_parser("dichromatic", parents=[common])
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--method", choices=["dc", "sum", "bracket"], default="dc")

    p = sub.add_parser("potts", parents=[common])
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--coupling", type=parse_complex, required=True, help="K as re,im")
    p.add_argument("--method", choices=["spin", "dichromatic", "khovanov"], default="spin")
    p.add_argument("--sqrt-sign", type=int, choices=[1, -1], default=1)

    p = sub.add_parser("stosic", parents=[common])
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ring", choices=["z", "gf2"], default="z")

    p = sub.add_parser("amplitude", parents=[common])
    p.add_argument("--pd", required=True, help=pd_help)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--shots", type=int, default=0)

    p = sub.add_parser("potts-quantum", parents=[common])
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--q", type=int, required=True, choices=[2, 3, 4])

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--corpus", choices=["builtin", "fixtures"], default="builtin")
    p.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    return parser


def _apply_caps(pairs) -> dict:
    caps = {}
    known = config.all_caps()
    for pair in pairs:
        name, _, value = pair.partition("=")
        if name not in known or not value.lstrip("-").isdigit():
            raise UsageError(f"bad --cap {pair!r}")
        if int(value) <= 0:
            raise UsageError(f"cap {name} must be positive")
        os.environ["KHPOTTS_" + name.upper()] = value
        caps[name] = int(value)
    return caps


def _emit(payload: dict, fmt: str, text: str | None, stream):
    if fmt == "json":
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    elif text is not None:
        stream.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = dict(os.environ)
    try:
        return _dispatch(parser, args)
    finally:
        # cap overrides last for this invocation only
        os.environ.clear()
        os.environ.update(saved)


def _dispatch(parser, args) -> int:
    try:
        _apply_caps(args.cap)
        threads = args.threads if args.threads is not None else kernels.default_threads()
        if threads < 1:
            raise UsageError("--threads must be positive")
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"khpotts: error: {exc}", file=sys.stderr)
        return 2
    cfg = RunConfig(args.command, {k: v for k, v in vars(args).items() if k in ("pd", "graph")},
                    config.all_caps(), args.rel_tol, args.seed, args.format, threads)
    try:
        data, text = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"khpotts: error: {exc}", file=sys.stderr)
        return 2
    except (KhPottsError, ValueError, ArithmeticError, OSError) as exc:
        error = {"schema_version": SCHEMA_VERSION, "command": args.command,
                 "error": {"type": type(exc).__name__, "message": str(exc)}}
        for attr in ("required", "cap", "position"):
            if getattr(exc, attr, None) is not None:
                error["error"][attr] = getattr(exc, attr)
        json.dump(error, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
        return 1
    payload = {"schema_version": SCHEMA_VERSION, "command": args.command, "config": asdict(cfg), **data}
    _emit(payload, args.format, text, sys.stdout)
    if args.command == "verify" and not data["passed"]:
        return 1
    return 0

if __name__ == "__main__":
    sys.exit(main())
