"""Command-line front end.

Inputs come from catalog names or JSON files (one resolver, names win
when the argument lacks a path separator); every command emits a
deterministic JSON report with a machine-readable checks list.  Exit
status is 0 exactly when all checks passed; parse and validation
failures produce a JSON error object and a nonzero status.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from typing import Any, Optional

from . import jsonio, verify
from .constructions import verify_wrap_criterion, wrap_ses
from .homs import DEFAULT_SEARCH_BOUND, OracleInfeasibleError, is_summand_bruteforce
from .relative import (
    RelativeContext,
    is_relatively_projective,
    is_w_split,
    omega,
    omega_inv,
    stable_hom_dim,
)
from .reps import Module, direct_sum, dual, induce, restrict, tensor
from .triangles import complete_to_triangle, finite_hocolim, stably_isomorphic_bruteforce


def _report(command: str, inputs: dict, result: Any, checks: list[dict]) -> dict:
    return {"command": command, "inputs": inputs, "result": result, "checks": checks}


def _module_summary(m: Module) -> dict:
    return {"dim": m.dim, "p": m.p, "group_order": m.group.order}


def _need_w(args) -> RelativeContext:
    if args.w is None:
        raise jsonio.FormatError("this operation needs --w <module ref>")
    return RelativeContext(jsonio.resolve(args.w, expect="module"))


def _maybe_write(args, m: Module, result: dict) -> None:
    if args.out:
        jsonio.write_module(args.out, m)
        result["out"] = args.out


def _run_op(args) -> dict:
    verb = args.verb
    refs = args.args
    checks: list[dict] = []
    result: dict = {}

    def arg(i: int) -> str:
        if i >= len(refs):
            raise jsonio.FormatError(f"op {verb}: missing argument {i + 1}")
        return refs[i]

    if verb in {"tensor", "sum"}:
        a = jsonio.resolve(arg(0), expect="module")
        b = jsonio.resolve(arg(1), expect="module")
        out = tensor(a, b) if verb == "tensor" else direct_sum(a, b)
        result = {"module": _module_summary(out)}
        checks.append({"name": "module_valid", "passed": True, "detail": ""})
        _maybe_write(args, out, result)
    elif verb == "dual":
        a = jsonio.resolve(arg(0), expect="module")
        out = dual(a)
        result = {"module": _module_summary(out)}
        checks.append({"name": "module_valid", "passed": True, "detail": ""})
        _maybe_write(args, out, result)
    elif verb == "restrict":
        a = jsonio.resolve(arg(0), expect="module")
        h = jsonio.resolve(arg(1), expect="subgroup")
        out = restrict(a, h)
        result = {"module": _module_summary(out)}
        checks.append({"name": "module_valid", "passed": True, "detail": ""})
        _maybe_write(args, out, result)
    elif verb == "induce":
        h = jsonio.resolve(arg(0), expect="subgroup")
        a = jsonio.resolve(arg(1), expect="module")
        out = induce(h.parent, h, a)
        result = {"module": _module_summary(out)}
        checks.append({"name": "module_valid", "passed": True, "detail": ""})
        _maybe_write(args, out, result)
    elif verb in {"omega", "omega-inv"}:
        ctx = _need_w(args)
        a = jsonio.resolve(arg(0), expect="module")
        mod, _edge = omega(ctx, a) if verb == "omega" else omega_inv(ctx, a)
        expected = ctx.w.dim ** 2 * a.dim - a.dim
        result = {"module": _module_summary(mod)}
        checks.append(
            {
                "name": "shift_dimension",
                "passed": mod.dim == expected,
                "detail": f"dim {mod.dim}, expected {expected}",
            }
        )
        _maybe_write(args, mod, result)
    elif verb == "is-rel-proj":
        ctx = _need_w(args)
        a = jsonio.resolve(arg(0), expect="module")
        result = {"relatively_projective": is_relatively_projective(ctx, a)}
    elif verb == "is-w-split":
        ctx = _need_w(args)
        ses = jsonio.resolve(arg(0), expect="ses")
        result = {"w_split": is_w_split(ctx, ses)}
    elif verb == "stable-hom":
        ctx = _need_w(args)
        a = jsonio.resolve(arg(0), expect="module")
        b = jsonio.resolve(arg(1), expect="module")
        result = {"stable_hom_dim": stable_hom_dim(ctx, a, b)}
    elif verb == "cone":
        ctx = _need_w(args)
        alpha = jsonio.resolve(arg(0), expect="morphism")
        tri = complete_to_triangle(ctx, alpha)
        apex = tri.ses.inj.source
        composite_zero = (tri.ses.surj @ tri.ses.inj).is_zero()
        result = {
            "apex": _module_summary(apex),
            "middle": _module_summary(tri.ses.middle),
        }
        checks.append(
            {"name": "triangle_composite_zero", "passed": composite_zero, "detail": ""}
        )
        _maybe_write(args, apex, result)
    elif verb == "hocolim":
        ctx = _need_w(args)
        chain = jsonio.resolve(arg(0), expect="chain")
        hc = finite_hocolim(ctx, chain)
        result = {
            "cone": _module_summary(hc.cone),
            "comparison_rank": hc.comparison.rank(),
            "colimit_dim": chain.last.dim,
        }
        checks.append(
            {
                "name": "comparison_onto_colimit",
                "passed": hc.comparison.is_surjective(),
                "detail": "",
            }
        )
        _maybe_write(args, hc.cone, result)
    elif verb == "is-summand":
        a = jsonio.resolve(arg(0), expect="module")
        b = jsonio.resolve(arg(1), expect="module")
        result = {"summand": is_summand_bruteforce(a, b, args.bound)}
    elif verb == "stably-iso":
        ctx = _need_w(args)
        a = jsonio.resolve(arg(0), expect="module")
        b = jsonio.resolve(arg(1), expect="module")
        result = {"stably_isomorphic": stably_isomorphic_bruteforce(ctx, a, b, args.bound)}
    else:
        raise jsonio.FormatError(f"unknown op verb {verb!r}")

    return _report(f"op {verb}", {"args": refs, "w": args.w}, result, checks)


def _run_wrap(args) -> dict:
    ses = jsonio.resolve(args.ses, expect="ses")
    wrapped = wrap_ses(args.p, ses)
    result = {
        "module": _module_summary(wrapped.module),
        "big_group_order": wrapped.big_group.order,
        "shift_rank": wrapped.shift.rank(),
        "w_rel": _module_summary(wrapped.w_rel),
    }
    checks: list[dict] = []
    if args.verify:
        report = verify_wrap_criterion(args.p, ses)
        result["split"] = report.split
        result["rel_proj"] = report.rel_proj
        result["agree"] = report.agree
        checks.append(
            {
                "name": "split_iff_relatively_projective",
                "passed": report.agree,
                "detail": f"split={report.split}, rel_proj={report.rel_proj}",
            }
        )
    if args.out:
        jsonio.write_module(args.out, wrapped.module)
        result["out"] = args.out
    return _report(f"wrap {args.p}", {"ses": args.ses}, result, checks)


def _run_verify(args) -> dict:
    results = verify.run_all(pmax=args.pmax, bound=args.bound)
    checks = [asdict(c) for c in results]
    result = {"passed": sum(c.passed for c in results), "total": len(results)}
    return _report("verify", {"pmax": args.pmax}, result, checks)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relstable",
        description="Exact computation in relatively stable module categories over GF(p).",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    op = sub.add_parser("op", help="run one engine operation")
    op.add_argument(
        "verb",
        choices=[
            "tensor",
            "dual",
            "sum",
            "restrict",
            "induce",
            "omega",
            "omega-inv",
            "is-rel-proj",
            "is-w-split",
            "stable-hom",
            "cone",
            "hocolim",
            "is-summand",
            "stably-iso",
        ],
    )
    op.add_argument("args", nargs="*", help="catalog names or JSON file paths")
    op.add_argument("--w", help="module reference fixing the relative context")
    op.add_argument("--p", type=int, help="expected characteristic (consistency check)")
    op.add_argument("--out", help="write a module-valued result to this JSON file")
    op.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND, help="brute-force search bound")

    wrap = sub.add_parser("wrap", help="wrap a short exact sequence over G x C_p")
    wrap.add_argument("p", type=int)
    wrap.add_argument("ses", help="sequence reference")
    wrap.add_argument("--verify", action="store_true", help="test the splitting criterion")
    wrap.add_argument("--out", help="write the wrapped module to this JSON file")

    ver = sub.add_parser("verify", help="run the full verification suite")
    ver.add_argument("--pmax", type=int, default=7, help="prime bound for the sweeps")
    ver.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND)
    return parser


def _check_characteristic(args) -> None:
    if getattr(args, "p", None) and getattr(args, "w", None):
        w = jsonio.resolve(args.w, expect="module")
        if w.p != args.p:
            raise jsonio.FormatError(f"--p {args.p} does not match the context characteristic {w.p}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cmd == "op":
            _check_characteristic(args)
            report = _run_op(args)
        elif args.cmd == "wrap":
            report = _run_wrap(args)
        else:
            report = _run_verify(args)
    except (jsonio.FormatError, OracleInfeasibleError, ValueError) as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(error, sort_keys=True, indent=2))
        return 2
    print(json.dumps(report, sort_keys=True, indent=2))
    return 0 if all(c["passed"] for c in report["checks"]) else 1


if __name__ == "__main__":
    sys.exit(main())
