"""Command line interface.

Exit codes: 0 success, 1 negative verdict, 2 usage or parse error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import cone as cone_mod
from . import semigroup as sg_mod
from .fibonacci import fib_rank_suite, fib_semigroup
from .formats import decode_generators, decode_matrix, dumps, encode_matrix, encode_vector
from .intrank import EXHAUSTED, default_budget, intrank_exact
from .lifts import Lift, lift_from_factorization, make_lift, min_lift_size
from .semigroup import AffineSemigroup, dual_semigroup, normalize
from .slack import SlackMatrix, is_slack_matrix, slack_matrix

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _read_semigroup(path: str) -> AffineSemigroup:
    return AffineSemigroup(decode_generators(_read_json(path)))


def _read_matrix(path: str):
    data = _read_json(path)
    if isinstance(data, dict):
        if "matrix" not in data:
            raise UsageError('missing "matrix" key')
        data = data["matrix"]
    return decode_matrix(data)


def _fmt_matrix(M) -> str:
    rows = encode_matrix(M)
    return "\n".join(" ".join(str(x) for x in r) for r in rows)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(dumps(payload))
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------

def cmd_dual(args) -> int:
    D = dual_semigroup(_read_semigroup(args.input))
    _emit(args, {"generators": encode_matrix(D.generators)}, _fmt_matrix(D.generators))
    return EXIT_OK


def cmd_minimal_gens(args) -> int:
    gens = _read_semigroup(args.input).minimal_generators
    _emit(args, {"generators": encode_matrix(gens)}, _fmt_matrix(gens))
    return EXIT_OK


def cmd_normalize(args) -> int:
    G = _read_semigroup(args.input)
    N = normalize(G)
    _emit(args, {"generators": encode_matrix(N.generators), "normal": G.normal},
          f"normal: {str(G.normal).lower()}\n{_fmt_matrix(N.generators)}")
    return EXIT_OK


def cmd_slack(args) -> int:
    S = slack_matrix(_read_semigroup(args.input))
    _emit(args, S.to_json(), _fmt_matrix(S.matrix))
    return EXIT_OK


def cmd_recognize(args) -> int:
    M = _read_matrix(args.input)
    ok, cert = is_slack_matrix(M)
    payload = {"slack_matrix": ok}
    text = f"slack matrix: {str(ok).lower()}"
    if not ok:
        payload["failed"] = cert.failed.value
        w = cert.witness
        payload["witness"] = encode_vector(w) if isinstance(w, tuple) else w
        text += f"\nfailed: {cert.failed.value}\nwitness: {payload['witness']}"
    else:
        payload["generators"] = encode_matrix(cert.semigroup.generators)
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_NO


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


def cmd_intrank(args) -> int:
    A = _read_matrix(args.input)
    rep = intrank_exact(A, max_r=args.max_r, budget=_budget(args), bounds_only=args.bounds_only)
    if args.witness_out and rep.factorization is not None:
        with open(args.witness_out, "w") as fh:
            fh.write(dumps(rep.factorization.to_json()) + "\n")
    lines = [f"{k}: {v}" for k, v in rep.lower_bounds.items()]
    lines.append(f"status: {rep.status}")
    if rep.exact is not None:
        lines.append(f"rank: {rep.exact}")
        lines.append("B:\n" + _fmt_matrix(rep.factorization.B))
        lines.append("C:\n" + _fmt_matrix(rep.factorization.C))
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_BUDGET if rep.status == EXHAUSTED else EXIT_OK


def _lift_text(lift: Lift) -> str:
    return f"verified: {str(lift.verified).lower()}\nsize: {lift.size}\nhom:\n{_fmt_matrix(lift.hom)}"


def cmd_lift_build(args) -> int:
    data = _read_json(args.input)
    if not isinstance(data, dict) or not {"generators", "V", "W"} <= data.keys():
        raise UsageError('lift build needs "generators", "V" and "W"')
    G = AffineSemigroup(decode_generators(data))
    slack = None
    if "rows" in data or "cols" in data:
        slack = SlackMatrix.from_generators(decode_matrix(data["rows"]), decode_matrix(data["cols"]))
    lift = lift_from_factorization(G, decode_matrix(data["V"]), decode_matrix(data["W"]), slack=slack)
    _emit(args, lift.to_json(), _lift_text(lift))
    return EXIT_OK


def cmd_lift_verify(args) -> int:
    data = _read_json(args.input)
    if not isinstance(data, dict) or not {"base", "total", "hom"} <= data.keys():
        raise UsageError('lift verify needs "base", "total" and "hom"')
    base = AffineSemigroup(decode_generators(data["base"]))
    total = AffineSemigroup(decode_generators(data["total"]))
    lift = make_lift(base, total, decode_matrix(data["hom"]))
    payload = lift.to_json()
    if not lift.verified:
        payload["reason"] = lift.certificate.reason
    text = _lift_text(lift) if lift.verified else f"verified: false\nreason: {lift.certificate.reason}"
    _emit(args, payload, text)
    return EXIT_OK if lift.verified else EXIT_NO


def cmd_lift_minsize(args) -> int:
    G = _read_semigroup(args.input)
    rep, lift = min_lift_size(G, budget=_budget(args), max_r=args.max_r)
    payload = {"report": rep.to_json()}
    text = f"status: {rep.status}"
    if lift is not None:
        payload["lift"] = lift.to_json()
        text += f"\nminimal lift size: {rep.exact}\n{_lift_text(lift)}"
    _emit(args, payload, text)
    return EXIT_BUDGET if rep.status == EXHAUSTED else EXIT_OK


def cmd_fib(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.rank_suite:
        rows = fib_rank_suite(args.n, budget=_budget(args))
        if args.format == "json":
            print(dumps({"rows": [r.to_json() for r in rows]}))
        else:
            print("n\treal_rank\tsupport_cover\tl1_norm_recursive\texact\tstatus\tgrowth_certified")
            for r in rows:
                lb = r.lower_bounds
                print(f"{r.n}\t{lb['real_rank']}\t{lb['support_cover']}\t{lb['l1_norm_recursive']}\t"
                      f"{'' if r.exact is None else r.exact}\t{r.status}\t{str(r.growth_certified).lower()}")
        return EXIT_BUDGET if any(r.status == EXHAUSTED for r in rows) else EXIT_OK
    F = fib_semigroup(args.n)
    if args.emit == "slack":
        _emit(args, F.slack.to_json(), _fmt_matrix(F.slack.matrix))
    elif args.emit == "M":
        _emit(args, {"matrix": encode_matrix(F.M)}, _fmt_matrix(F.M))
    else:
        payload = {"generators": encode_matrix(F.slack.row_labels),
                   "dual_generators": encode_matrix(F.slack.col_labels)}
        _emit(args, payload, "A:\n" + _fmt_matrix(F.slack.row_labels) + "\nB:\n" + _fmt_matrix(F.slack.col_labels))
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--dim-cap", type=int, default=None, help="cap on cone dimension")
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--max-r", type=int, default=None)

    p = argparse.ArgumentParser(prog="semislack", description="Slack matrices, lifts and integer ranks of affine semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inp=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if inp:
            sp.add_argument("input", nargs="?", default="-", help="JSON file, '-' for stdin")
        sp.set_defaults(func=func)
        return sp

    add("dual", cmd_dual, "generators of the dual semigroup")
    add("minimal-gens", cmd_minimal_gens, "minimal generating set")
    add("normalize", cmd_normalize, "Hilbert basis of the normalization")
    add("slack", cmd_slack, "slack matrix")
    add("recognize", cmd_recognize, "decide whether a matrix is a slack matrix")
    ir = add("intrank", cmd_intrank, "nonnegative integer rank")
    ir.add_argument("--bounds-only", action="store_true")
    ir.add_argument("--witness-out", metavar="FILE")

    lift = sub.add_parser("lift", help="lifts from factorizations")
    lsub = lift.add_subparsers(dest="lift_command", required=True)
    for name, func, help_text in (("build", cmd_lift_build, "lift from S = V^T W"),
                                  ("verify", cmd_lift_verify, "verify a lift"),
                                  ("minsize", cmd_lift_minsize, "minimal lift size")):
        sp = lsub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("input", nargs="?", default="-")
        sp.set_defaults(func=func)

    fb = add("fib", cmd_fib, "Fibonacci family", inp=False)
    fb.add_argument("--n", type=int, required=True)
    fb.add_argument("--emit", choices=("slack", "M", "generators"), default="slack")
    fb.add_argument("--rank-suite", action="store_true")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    saved = cone_mod.DIM_CAP, sg_mod.HILBERT_DIM_CAP
    if args.dim_cap is not None:
        cone_mod.DIM_CAP = sg_mod.HILBERT_DIM_CAP = args.dim_cap
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"semislack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        cone_mod.DIM_CAP, sg_mod.HILBERT_DIM_CAP = saved


if __name__ == "__main__":
    sys.exit(main())
