"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 the job
exceeds the matrix-size budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from . import __version__
from .cache import NullCache, ResultCache
from .groups import AbelianGroup, GradedGroup

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_BUDGET = 10**7

SUITES = ("h1", "h2", "top", "modpn", "z1", "granville", "kummer", "theta", "kunneth", "lambda", "hopf", "comparison")
DUMP_OBJECTS = ("differential", "generator", "snf", "ed-matrix")

# reference lists for Ext^*(T^2 ∘ a, S^d ∘ a)
T2_REFERENCE = {
    2: {0: "Z"},
    3: {1: "(Z/2)^2"},
    4: {1: "(Z/3)^2 + Z/2", 2: "(Z/2)^3"},
    5: {1: "(Z/2)^2", 2: "(Z/3)^2 + (Z/2)^2", 3: "(Z/2)^4"},
}


class UsageError(Exception):
    pass


class BudgetExceeded(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``2..36``, ``2,3,5`` or a mix such as ``1..3,8``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return sorted(set(out))


def _range_arg(text: str) -> list[int]:
    try:
        return parse_range(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# ------------------------------------------------------------------ budget


def estimated_nnz(d: int, k: int) -> int:
    if not 0 <= k <= d - 1:
        return 0
    return math.comb(d - 1, k) * (d - 1 - k)


def check_budget(ds: Iterable[int], degrees: Callable[[int], Iterable[int]], budget: int):
    for d in ds:
        for k in degrees(d):
            if estimated_nnz(d, k) > budget:
                raise BudgetExceeded(
                    f"d={d}: differential in degree {k} has about {estimated_nnz(d, k)} nonzeros, "
                    f"over the budget of {budget} (raise it with --budget)"
                )


# ------------------------------------------------------------------ workers (top level so they pickle)


def _homology_all_json(d: int) -> dict[str, str]:
    from .homology import homology_all

    return homology_all(d).to_json()


def _homology_at_json(args: tuple[int, int]) -> str:
    from .homology import homology_at

    d, k = args
    return str(homology_at(d, k))


def _modpn_json(args: tuple[int, int, int, int]) -> list[int]:
    from .homology import homology_mod_pn

    return homology_mod_pn(*args)


def _run_verify(args: tuple) -> dict:
    suite, params = args
    return SUITE_RUNNERS[suite](**params)


def _pmap(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so output is canonical
        return list(pool.map(fn, items))


def _cached_map(cache: ResultCache, op: str, keys: list[dict], fn, items: list, jobs: int) -> list:
    out: list = [cache.get(op, k) for k in keys]
    todo = [i for i, v in enumerate(out) if v is None]
    for i, v in zip(todo, _pmap(fn, [items[i] for i in todo], jobs)):
        out[i] = v
        cache.put(op, keys[i], v)
    return out


# ------------------------------------------------------------------ table


def table_data(d_max: int, cache: ResultCache, jobs: int = 1) -> dict[int, GradedGroup]:
    ds = list(range(1, d_max + 1))
    rows = _cached_map(cache, "homology_all", [{"d": d} for d in ds], _homology_all_json, ds, jobs)
    return {d: GradedGroup.from_strings(r) for d, r in zip(ds, rows)}


def render_table(data: dict[int, GradedGroup], i_max: int, fmt: str, torsion: str | None = None) -> str:
    style = torsion or ("primary" if fmt == "json" else "chain")

    def cell(g: AbelianGroup) -> str:
        return str(g) if style == "primary" else g.chain_str()

    if fmt == "json":
        out = {}
        for d, g in data.items():
            row = {str(i): cell(g[i]) for i in range(i_max + 1) if not g[i].is_zero()}
            if row:
                out[str(d)] = row
        return json.dumps(out, separators=(",", ":"))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d"] + [str(i) for i in range(i_max + 1)])
        for d, g in data.items():
            w.writerow([d] + [cell(g[i]) for i in range(i_max + 1)])
        return buf.getvalue().rstrip("\n")
    lines = ["| d \\ i | " + " | ".join(str(i) for i in range(i_max + 1)) + " |"]
    lines.append("|" + "---|" * (i_max + 2))
    for d, g in data.items():
        lines.append(f"| {d} | " + " | ".join(cell(g[i]) for i in range(i_max + 1)) + " |")
    return "\n".join(lines)


def cmd_table(args, cache) -> int:
    if args.d_max < 1 or args.i_max < 0:
        raise UsageError("need --d-max >= 1 and --i-max >= 0")
    check_budget(range(1, args.d_max + 1), lambda d: range(d), args.budget)
    data = table_data(args.d_max, cache, args.jobs)
    print(render_table(data, args.i_max, args.format, args.torsion))
    return EXIT_OK


# ------------------------------------------------------------------ homology


def cmd_homology(args, cache) -> int:
    ds = args.d
    if min(ds) < 1:
        raise UsageError("d must be positive")
    if args.p is not None or args.N is not None:
        if args.p is None or args.N is None or args.k is None:
            raise UsageError("mod p^N homology needs --p, --N and --k")
        items = [(p, N, d, k) for p in args.p for N in args.N for d in ds for k in args.k]
        check_budget(ds, lambda d: [k for k in range(min(args.k) - 1, max(args.k) + 1)], args.budget)
        keys = [dict(zip("pNdk", it)) for it in items]
        res = _cached_map(cache, "homology_mod_pn", keys, _modpn_json, items, args.jobs)
        for (p, N, d, k), orders in zip(items, res):
            print(json.dumps({"d": d, "k": k, "p": p, "N": N, "orders": orders}))
        return EXIT_OK
    if args.k is not None:
        items = [(d, k) for d in ds for k in args.k]
        check_budget(ds, lambda d: [k for k in range(min(args.k) - 1, max(args.k) + 1)], args.budget)
        keys = [{"d": d, "k": k} for d, k in items]
        res = _cached_map(cache, "homology_at", keys, _homology_at_json, items, args.jobs)
        for (d, k), g in zip(items, res):
            print(json.dumps({"d": d, "k": k, "group": g}))
        return EXIT_OK
    check_budget(ds, lambda d: range(d), args.budget)
    res = _cached_map(cache, "homology_all", [{"d": d} for d in ds], _homology_all_json, ds, args.jobs)
    for d, groups in zip(ds, res):
        print(json.dumps({"d": d, "groups": groups}))
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _v_h1(d):
    from .verify import verify_h1

    return verify_h1(d).to_json()


def _v_h2(d):
    from .verify import verify_h2

    return verify_h2(d).to_json()


def _v_top(d):
    from .verify import verify_top_degrees

    return verify_top_degrees(d).to_json()


def _v_modpn(p, N, d):
    from .verify import verify_h1_modpn

    return verify_h1_modpn(p, N, d).to_json()


def _v_z1(p, N, d):
    from .verify import verify_z1_modpn

    return verify_z1_modpn(p, N, d).to_json()


def _v_granville(p, N, n):
    from .verify import verify_granville

    return verify_granville(p, N, n).to_json()


def _v_kummer(p, n):
    from .verify import verify_kummer

    return verify_kummer(p, n).to_json()


def _v_theta(p, d):
    from .verify import verify_theta

    return verify_theta(p, d).to_json()


def _v_comparison(d):
    from .verify import verify_ext1_comparison

    return verify_ext1_comparison(d).to_json()


def _v_kunneth(c, d):
    from .kunneth import ext_tensorpower_sd

    computed = ext_tensorpower_sd(c, d)
    if c == 2 and d in T2_REFERENCE:
        expected = GradedGroup.from_strings(T2_REFERENCE[d])
        ok = expected == computed
        exp_json = expected.to_json()
    else:
        # every degree is torsion except degree 0 when c = d
        exp_json = "torsion, except Z in degree 0 when c = d"
        free = {k: g.rank for k, g in computed.parts.items() if g.rank}
        ok = free == ({0: 1} if c == d else {})
    return {"theorem": "kunneth", "params": {"c": c, "d": d}, "expected": exp_json,
            "computed": computed.to_json(), "witnesses": [], "verdict": "pass" if ok else "fail"}


def _v_lambda(c, d):
    from .kunneth import ext_tensorpower_lambda, ext_tensorpower_lambda_closed

    computed, expected = ext_tensorpower_lambda(c, d), ext_tensorpower_lambda_closed(c, d)
    return {"theorem": "lambda", "params": {"c": c, "d": d}, "expected": expected.to_json(),
            "computed": computed.to_json(), "witnesses": [], "verdict": "pass" if computed == expected else "fail"}


def _v_hopf(d, rank):
    from .hopf import check_all_relations, section_obstruction

    report = check_all_relations(d, rank).to_json()
    obstruction = section_obstruction(d)
    report["witnesses"] = [{"name": "section obstruction", "ok": obstruction["certified"], **obstruction}]
    if not obstruction["certified"]:
        report["verdict"] = "fail"
    return report


SUITE_RUNNERS = {
    "h1": _v_h1, "h2": _v_h2, "top": _v_top, "modpn": _v_modpn, "z1": _v_z1,
    "granville": _v_granville, "kummer": _v_kummer, "theta": _v_theta,
    "kunneth": _v_kunneth, "lambda": _v_lambda, "hopf": _v_hopf, "comparison": _v_comparison,
}


def verify_tasks(args) -> list[tuple[str, dict]]:
    s = args.suite

    def need(name, default=None):
        v = getattr(args, name)
        if v is None:
            if default is None:
                raise UsageError(f"suite {s!r} needs --{name}")
            return default
        return v

    if s in ("h1", "h2", "comparison"):
        ds = need("d")
        check_budget(ds, lambda d: range(3), args.budget)
        return [(s, {"d": d}) for d in ds]
    if s == "top":
        ds = need("d")
        if min(ds) < 2:
            raise UsageError("top-degree suite needs d >= 2")
        check_budget(ds, lambda d: range(d), args.budget)
        return [(s, {"d": d}) for d in ds]
    if s in ("modpn", "z1"):
        ds = need("d")
        if min(ds) < 2:
            raise UsageError(f"suite {s!r} needs d >= 2")
        check_budget(ds, lambda d: range(3), args.budget)
        return [(s, {"p": p, "N": N, "d": d}) for p in need("p") for N in need("N") for d in ds]
    if s == "granville":
        return [(s, {"p": p, "N": N, "n": max(need("n"))}) for p in need("p") for N in need("N")]
    if s == "kummer":
        return [(s, {"p": p, "n": max(need("n"))}) for p in need("p")]
    if s == "theta":
        return [(s, {"p": p, "d": max(need("d"))}) for p in need("p")]
    if s in ("kunneth", "lambda"):
        ds = need("d")
        cs = need("c", [2])
        check_budget(ds, lambda d: range(d), args.budget)
        return [(s, {"c": c, "d": d}) for c in cs for d in ds if s == "kunneth" or c <= d] or []
    if s == "hopf":
        from .arith import prime_power_decomposition

        ds = need("d")
        bad = [d for d in ds if prime_power_decomposition(d) is None]
        if bad:
            raise UsageError(f"hopf suite needs prime powers, got {bad}")
        return [(s, {"d": d, "rank": args.rank}) for d in ds]
    raise UsageError(f"unknown suite {s!r}")


def cmd_verify(args, cache) -> int:
    tasks = verify_tasks(args)
    keys = [{"suite": s, **p} for s, p in tasks]
    reports = _cached_map(cache, "verify", keys, _run_verify, tasks, args.jobs)
    failed = 0
    for r in reports:
        print(json.dumps(r, sort_keys=True))
        failed += r["verdict"] != "pass"
    return EXIT_FAIL if failed else EXIT_OK


# ------------------------------------------------------------------ dump


def dump_object(args) -> str:
    obj = args.object
    if obj == "differential":
        from .complex import differential_matrix, localized_differential_matrix

        d, k = _need_int(args, "d"), _need_int(args, "k")
        check_budget([d], lambda _: [k], args.budget)
        m = localized_differential_matrix(args.p, args.N, d, k) if args.p and args.N else differential_matrix(d, k)
        return json.dumps({"d": d, "k": k, "rows": m.rows, "cols": m.cols, "triplets": m.triplets()})
    if obj == "snf":
        from .complex import differential_matrix
        from .linalg import smith_normal_form

        d, k = _need_int(args, "d"), _need_int(args, "k")
        check_budget([d], lambda _: [k], args.budget)
        m = differential_matrix(d, k)
        form = smith_normal_form(m, keep_transforms=args.transforms)
        out = {"d": d, "k": k, "rows": m.rows, "cols": m.cols, "rank": form.rank, "diagonal": form.diagonal}
        if args.transforms:
            out["U"] = form.u_matrix().to_dense()
            out["V"] = form.v_matrix().to_dense()
        return json.dumps(out)
    if obj == "generator":
        return str(_generator(args))
    if obj == "ed-matrix":
        from .hopf import GeneratorSpec, HopfError, ed_legend, ed_matrix

        d = _need_int(args, "d")
        try:
            g = GeneratorSpec(args.gen or "", args.n or 0, args.m or 0)
            mat = ed_matrix(g, d)
        except HopfError as exc:
            raise UsageError(str(exc)) from exc
        return json.dumps({
            "generator": str(g), "d": d, "shape": list(mat.shape),
            "rows": ed_legend(g.target, d), "cols": ed_legend(g.source, d),
            "matrix": [[int(x) for x in row] for row in mat],
        })
    raise UsageError(f"unknown object {obj!r}")


def _need_int(args, name) -> int:
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required")
    return v


def _generator(args):
    from . import complex as cx
    from .arith import decompose_a

    kind, d = args.kind, _need_int(args, "d")
    try:
        if kind == "h1":
            return cx.h1_generator(d)
        if kind == "h2":
            if args.p is None:
                raise UsageError("--p is required for h2 generators")
            nm = decompose_a(args.p, d)
            if nm is None:
                raise UsageError(f"{d} is not of the form {args.p}^n({args.p}^m+1)")
            return cx.h2_generator(d, args.p, *nm)
        if kind == "h1-modpn":
            return cx.h1_modpn_generator(args.p, args.N, d)
        if kind == "u":
            return cx.u_cochain(d, _need_int(args, "m"))
        if kind == "top":
            return cx.complement_cochain(d, {(): 1})
    except cx.ComplexError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown generator kind {kind!r}")


def cmd_dump(args, cache) -> int:
    text = dump_object(args)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# ------------------------------------------------------------------ kunneth, lambda, cache


def cmd_kunneth(args, cache) -> int:
    from .kunneth import ext_tensorpower_sd

    check_budget(args.d, lambda d: range(d), args.budget)
    for c in args.c:
        for d in args.d:
            print(json.dumps({"c": c, "d": d, "groups": ext_tensorpower_sd(c, d).to_json()}))
    return EXIT_OK


def cmd_lambda(args, cache) -> int:
    from .kunneth import ext_tensorpower_lambda

    for c in args.c:
        for d in args.d:
            print(json.dumps({"c": c, "d": d, "groups": ext_tensorpower_lambda(c, d).to_json()}))
    return EXIT_OK


def cmd_cache(args, cache) -> int:
    if args.action == "path":
        print(cache.directory)
    elif args.action == "info":
        print(json.dumps({"directory": str(cache.directory), "entries": len(cache.entries()), "version": cache.version}))
    elif args.action == "clear":
        print(json.dumps({"removed": cache.clear()}))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extcalc", description="Exact Ext-group computations from the complex AC.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="cache directory (default: $EXTCALC_CACHE_DIR or ~/.cache/extcalc)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max nonzeros in any differential")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="grid of Ext^i(a, S^d a)")
    p.add_argument("--d-max", type=int, default=9)
    p.add_argument("--i-max", type=int, default=8)
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="markdown")
    p.add_argument("--torsion", choices=("primary", "chain"), help="torsion rendering (default: chain, primary for json)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("homology", parents=[common], help="cohomology of AC, integral or mod p^N")
    p.add_argument("--d", type=_range_arg, required=True)
    p.add_argument("--k", type=_range_arg)
    p.add_argument("--p", type=_range_arg)
    p.add_argument("--N", type=_range_arg)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite, one JSON report per line")
    p.add_argument("suite", choices=SUITES)
    for flag in ("d", "p", "N", "n", "c"):
        p.add_argument(f"--{flag}", type=_range_arg)
    p.add_argument("--rank", type=int, default=4, help="max ambient rank for the hopf suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", parents=[common], help="print a matrix, generator or Smith form")
    p.add_argument("object", choices=DUMP_OBJECTS)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--kind", choices=("h1", "h2", "h1-modpn", "u", "top"), default="h1")
    p.add_argument("--gen", help="hopf generator: tau, nabla, delta, epsilon, eta, antipode")
    p.add_argument("--transforms", action="store_true", help="include U and V with the Smith form")
    p.add_argument("--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("kunneth", parents=[common], help="Ext^*(T^c a, S^d a)")
    p.add_argument("--c", type=_range_arg, default=[2])
    p.add_argument("--d", type=_range_arg, required=True)
    p.set_defaults(func=cmd_kunneth)

    p = sub.add_parser("lambda", parents=[common], help="Ext^*(T^c a, Λ^d a)")
    p.add_argument("--c", type=_range_arg, default=[1])
    p.add_argument("--d", type=_range_arg, required=True)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the result cache")
    p.add_argument("action", choices=("info", "clear", "path"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cache = NullCache() if args.no_cache else ResultCache(args.cache_dir)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, cache)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
