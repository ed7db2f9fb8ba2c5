"""Command-line front end: ``superyang {ybe,idempotent,module,suite}``.

All results are JSON documents (sorted keys, LF line endings); the plain
rendering is a compact view of the same data.  Exit codes: 0 pass,
1 verification failure, 2 usage error, 3 resource bound, 4 domain verdict.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import checks
from . import drinfeld as dr
from . import yangian_gl as gl
from . import yangian_osp as osp
from .errors import (
    IrrationalRoots, NoSolution, NonCyclic, NotInHook, ResourceBound, VerificationFailure,
)
from .rep import rtt_residual, yang_R
from .super_space import SuperSpace
from .sym_group import Tableau, fusion_idempotent, murphy_idempotent, parse_partition

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE, EXIT_DOMAIN = 0, 1, 2, 3, 4

log = logging.getLogger("superyang")


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def emit(obj, args, text=None):
    if args.json or text is None:
        sys.stdout.write(dumps(obj) + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_ybe(args):
    if args.kind == "gl":
        if args.m is None or args.n is None or args.m < 0 or args.n < 0 or args.m + args.n == 0:
            raise UsageError("--kind gl needs --m and --n with m, n >= 0, m + n > 0")
        res = checks.check_ybe("gl", args.m, args.n)
    else:
        if args.n is None or args.n < 1:
            raise UsageError(f"--kind {args.kind} needs --n >= 1")
        res = checks.check_ybe(args.kind, n=args.n)
    emit(res, args, f"ybe {res['params']}: {'pass' if res['passed'] else 'FAIL'}")
    return EXIT_PASS if res["passed"] else EXIT_FAIL


def _parse_tableau(args):
    try:
        shape = parse_partition(args.shape)
    except ValueError as exc:
        raise UsageError(f"bad --shape: {exc}") from exc
    if args.tableau is None:
        from .sym_group import standard_tableaux
        return standard_tableaux(shape)[0]
    try:
        entries = [int(x) for x in args.tableau.replace(";", ",").split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --tableau: {exc}") from exc
    if sum(shape) != len(entries):
        raise UsageError(f"tableau has {len(entries)} entries, shape has {sum(shape)} boxes")
    rows, k = [], 0
    for r in shape:
        rows.append(tuple(entries[k:k + r]))
        k += r
    try:
        U = Tableau(rows)
        if not U.is_standard():
            raise ValueError(f"{U} is not a standard tableau")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return U


def cmd_idempotent(args):
    U = _parse_tableau(args)
    out = {"tableau": str(U), "shape": list(U.shape), "method": args.method}
    ok = True
    if args.method in ("murphy", "both"):
        out["murphy"] = murphy_idempotent(U).to_json()
    if args.method in ("fusion", "both"):
        out["fusion"] = fusion_idempotent(U, bound=args.fusion_bound).to_json()
    if args.method == "both":
        ok = out["murphy"] == out["fusion"]
        out["equal"] = ok
    text = "\n".join(f"{k}: {v}" for k, v in sorted(out.items()))
    emit(out, args, text)
    return EXIT_PASS if ok else EXIT_FAIL


def _module_gl(args):
    if args.m is None or args.n is None:
        raise UsageError("--kind gl needs --m and --n")
    if args.shape is None:
        raise UsageError("--kind gl needs --shape")
    sp = SuperSpace.gl(args.m, args.n)
    U = _parse_tableau(args)
    variant = {"r": "R", "rprime": "Rprime"}[args.variant]
    mod = gl.polynomial_module(sp, U, variant)
    rtt = rtt_residual(mod.rep, yang_R(sp))
    hw = gl.highest_weight(mod.rep)
    expected = (gl.pi_flat if variant == "R" else gl.pi_sharp)(U.shape, sp.m, sp.n)
    out = {"kind": "gl", "m": sp.m, "n": sp.n, "tableau": str(U), "variant": variant,
           "dim": mod.dim, "invariant": True, "rtt": rtt is None,
           "highest_weight": [w.to_json() for w in hw.weights],
           "expected": "pi_flat" if variant == "R" else "pi_sharp",
           "matches_expected": hw.weights == expected}
    ok = out["rtt"] and out["matches_expected"]
    text = (f"L[{U}] {variant} on gl({sp.m}|{sp.n}), dim {mod.dim}: weight "
            + ", ".join(str(w) for w in hw.weights) + f" ({'pass' if ok else 'FAIL'})")
    return out, ok, text


def _module_osp(args):
    if args.n is None or args.d is None:
        raise UsageError("--kind osp needs --n and --d")
    if not 1 <= args.d <= args.n:
        raise UsageError("need 1 <= d <= n")
    sp = SuperSpace.osp(args.n)
    X = osp.xi_module(args.d, args.n)
    # RTT for the tensor product follows from that of the factors
    sites = {site.name: site for site in osp.xi_sites(sp, args.d)}
    factors = {name: rtt_residual(site, osp.osp_R(sp)) is None for name, site in sites.items()}
    tup = dr.drinfeld_from_weight(X.weight)
    c = osp.central_on_vector(X.chain, X.xi, sp.kappa)
    out = {"kind": "osp", "n": args.n, "d": args.d, "checks": dict(X.checks),
           "rtt_factors": all(factors.values()),
           "highest_weight": X.weight.to_json(), "drinfeld": tup.to_json(),
           "drinfeld_str": str(tup), "central": c.to_json(),
           "central_identity": c == osp.central_from_weight(X.weight)}
    ok = out["rtt_factors"] and out["central_identity"]
    text = f"xi_{args.d} in OSP(2|{2 * args.n}): Drinfeld tuple {tup} ({'pass' if ok else 'FAIL'})"
    return out, ok, text


def cmd_module(args):
    out, ok, text = (_module_gl if args.kind == "gl" else _module_osp)(args)
    emit(out, args, text)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_suite(args):
    if args.fusion_bound is not None:
        os.environ["SUPERYANG_FUSION_BOUND"] = str(args.fusion_bound)
    start = time.perf_counter()

    def report(r):
        if args.json:
            sys.stdout.write(dumps(r) + "\n")
        else:
            sys.stdout.write(f"[{'pass' if r['passed'] else 'FAIL'}] criterion {r['criterion']} "
                             f"{r['check']} {dumps(r['params'])}\n")
        sys.stdout.flush()
        log.info("%s done at %.1fs", r["check"], time.perf_counter() - start)

    results = checks.run_suite(args.level, workers=args.workers, on_result=report)
    failed = sum(not r["passed"] for r in results)
    summary = {"summary": True, "level": args.level, "checks": len(results), "failed": failed}
    if args.json:
        sys.stdout.write(dumps(summary) + "\n")
    else:
        sys.stdout.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_PASS if failed == 0 else EXIT_FAIL


# -- argument parsing -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags(defaults=True):
    """The global flags; repeated on each subcommand (without defaults, so a
    flag given before the subcommand is not reset by it)."""
    g = _Parser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    g.add_argument("--json", action="store_true", help="emit JSON", **kw)
    g.add_argument("--verbose", action="store_true", help="progress log on stderr", **kw)
    g.add_argument("--fusion-bound", type=int, help="largest d for the fusion procedure "
                   "(overrides SUPERYANG_FUSION_BOUND)", **kw)
    return g


def build_parser():
    common = _global_flags(defaults=False)
    p = _Parser(prog="superyang", parents=[_global_flags()],
                description="Exact verification of Yangian representations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("ybe", parents=[common], help="Yang-Baxter equation check")
    s.add_argument("--kind", required=True, choices=["gl", "osp", "osp0"])
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)

    s = sub.add_parser("idempotent", parents=[common], help="primitive idempotent e_U")
    s.add_argument("--shape", required=True, help="partition, e.g. 2,1")
    s.add_argument("--tableau", help="entries row by row, e.g. 1,2,3")
    s.add_argument("--method", choices=["murphy", "fusion", "both"], default="murphy")

    s = sub.add_parser("module", parents=[common], help="build a module and its highest weight")
    s.add_argument("--kind", required=True, choices=["gl", "osp"])
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--shape")
    s.add_argument("--tableau")
    s.add_argument("--variant", choices=["r", "rprime"], default="r")

    s = sub.add_parser("suite", parents=[common], help="run the verification suite")
    s.add_argument("--level", choices=["quick", "full"], default="quick")
    s.add_argument("--workers", type=int, default=1)
    return p


COMMANDS = {"ybe": cmd_ybe, "idempotent": cmd_idempotent, "module": cmd_module,
            "suite": cmd_suite}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: ybe, idempotent, module or suite")
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceBound as exc:
        sys.stderr.write(f"resource bound: {exc}\n")
        return EXIT_RESOURCE
    except (NotInHook, NoSolution, IrrationalRoots, NonCyclic) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    except VerificationFailure as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
