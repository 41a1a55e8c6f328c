"""Command-line driver.

stdout carries machine-readable ``key = value`` lines; human summaries go to
stderr.  Exit status: 0 success, 1 typed domain error, 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import acceptance
from .builder import BUILDERS, amplify, write_certificate
from .errors import HyperdiscError, ParseError
from .hypergraph import atomize, read_hypergraph, write_hypergraph
from .matrixlab import exact_det, m_membership, read_matrix
from .numtheory import snd
from .solver import DEFAULT_NODE_BUDGET, atom_min_discrepancy, atom_zero_feasible, write_report


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperdisc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("snd", help="smallest non-divisor of n")
    s.add_argument("n_pos", nargs="?", type=_positive, metavar="N")
    s.add_argument("--n", type=_positive)

    b = sub.add_parser("build", help="build an n-uniform hypergraph with positive discrepancy")
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--method", choices=sorted(BUILDERS), default="auto")
    b.add_argument("-o", "--output", type=Path, required=True)

    a = sub.add_parser("amplify", help="build the discrepancy amplifier")
    a.add_argument("--n", type=_positive, required=True)
    a.add_argument("--r", type=_positive, required=True)
    a.add_argument("-o", "--output", type=Path, required=True)

    v = sub.add_parser("verify", help="decide discrepancy of a hypergraph file")
    v.add_argument("input", type=Path)
    v.add_argument("--mode", choices=("zero", "min"), default="zero")
    v.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("-o", "--output", type=Path)

    m = sub.add_parser("matrix", help="determinant and unique-solution membership of a matrix file")
    m.add_argument("input", type=Path)
    m.add_argument("--op", choices=("det", "member", "all"), default="all")

    sub.add_parser("selftest", help="run the acceptance suite")
    return p


def _write_outputs(path: Path, h, cert):
    path.write_text(write_hypergraph(h), encoding="utf-8", newline="\n")
    cert_path = path.with_name(path.name + ".cert")
    cert_path.write_text(write_certificate(cert), encoding="utf-8", newline="\n")
    print(f"output = {path}")
    print(f"certificate = {cert_path}")
    print(f"num_vertices = {h.num_vertices}")
    print(f"num_edges = {h.num_edges}")
    sys.stderr.write(f"{cert.method}: {h.num_edges} edges of size {cert.n} on {h.num_vertices} vertices\n")


def _cmd_snd(args):
    n = args.n if args.n is not None else args.n_pos
    if n is None:
        raise HyperdiscError("snd needs n (positional or --n)")
    print(snd(n))


def _cmd_build(args):
    h, cert = BUILDERS[args.method](args.n)
    _write_outputs(args.output, h, cert)


def _cmd_amplify(args):
    h, cert = amplify(args.n, args.r)
    _write_outputs(args.output, h, cert)


def _cmd_verify(args):
    h = read_hypergraph(args.input.read_text(encoding="utf-8"))
    a = atomize(h)
    if args.mode == "zero":
        rep = atom_zero_feasible(a, budget=args.budget, jobs=args.jobs)
    else:
        rep = atom_min_discrepancy(a, budget=args.budget, jobs=args.jobs)
    text = write_report(rep)
    if args.output:
        args.output.write_text(text, encoding="utf-8", newline="\n")
    sys.stdout.write(text)
    verdict = "zero discrepancy feasible" if rep.zero_feasible else "no zero-discrepancy coloring"
    if rep.min_discrepancy is not None:
        verdict += f", minimum discrepancy {rep.min_discrepancy}"
    sys.stderr.write(f"{args.input}: {a.num_atoms} atoms, {verdict} ({rep.nodes_explored} nodes)\n")


def _cmd_matrix(args):
    M = read_matrix(args.input.read_text(encoding="utf-8"))
    if args.op in ("det", "all"):
        if M.rows == M.cols or args.op == "det":
            print(f"det = {exact_det(M)}")
    zero_one = all(v in (0, 1) for v in M.entries)
    if args.op == "member" or (args.op == "all" and zero_one):
        res = m_membership(M)
        print(f"member = {'true' if res.member else 'false'}")
        if res.member:
            print(f"x = {','.join(str(v) for v in res.x)}")
            print(f"z = {res.z}")
            print(f"y = {','.join(map(str, res.y))}")


def _cmd_selftest(args):
    outcomes = acceptance.run_all(echo=lambda line: sys.stdout.write(line + "\n"))
    failed = [o.number for o in outcomes if not o.passed]
    sys.stderr.write(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria passed\n")
    return 1 if failed else 0


COMMANDS = {
    "snd": _cmd_snd,
    "build": _cmd_build,
    "amplify": _cmd_amplify,
    "verify": _cmd_verify,
    "matrix": _cmd_matrix,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args) or 0
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return 2
    except HyperdiscError as exc:
        sys.stderr.write(f"error ({type(exc).__name__}): {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
