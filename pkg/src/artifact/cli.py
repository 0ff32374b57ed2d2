"""Command-line front end: verify, hilbert, basis, dump-poly."""
from __future__ import annotations

import argparse
import inspect
import json
import sys
from typing import Any, Callable

from . import depthgraded, invariants, lowerbound
from .report import PASS, CheckReport

DEFAULT_MAX_WEIGHT = 12

INVARIANT_CHECKS: dict[str, Callable[..., CheckReport]] = {
    "a-presentation": invariants.verify_presentation_A,
    "molien": invariants.verify_molien,
    "ideal-i35": invariants.verify_ideal_i35,
    "gr0a-presentation": invariants.verify_gr0a_presentation,
    "gra-polynomial": invariants.verify_grA_polynomial,
}

CHECKS: dict[str, Callable[..., CheckReport]] = {**INVARIANT_CHECKS, **lowerbound.CHECKS, **depthgraded.CHECKS}

SPACES = ("A", "gr0A", "grA", "M0min", "Mmin", "lieW1", "lieW2", "lieW3", "H-complex")
TWO_VAR_SPACES = ("grA", "Mmin")
BASIS_SPACES = ("A", "M0min", "Mmin", "lieW1", "lieW2", "lieW3")
POLYS = ("sigma-tilde", "lambda", "tau", "tau-bar", "P", "relation")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# verify


def run_check(check_id: str, max_weight: int, sigma_degree: int | None = None,
              i: int | None = None, j: int | None = None) -> CheckReport:
    try:
        fn = CHECKS[check_id]
    except KeyError:
        raise UsageError(f"unknown check {check_id!r}; known: {', '.join(sorted(CHECKS))}") from None
    params = inspect.signature(fn).parameters
    kwargs: dict[str, Any] = {"N": max_weight}
    if sigma_degree is not None:
        if "K" not in params:
            raise UsageError(f"{check_id} does not take --sigma-degree")
        kwargs["K"] = sigma_degree
    if i is not None or j is not None:
        if "i" not in params:
            raise UsageError(f"{check_id} does not take --i/--j")
        if i is None or j is None:
            raise UsageError("--i and --j must be given together")
        kwargs.update(i=i, j=j)
    try:
        return fn(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _format_report(rep: CheckReport) -> str:
    lines = [f"{rep.check_id}: {rep.status.upper()}  ({rep.elapsed_ms} ms)"]
    if rep.params:
        lines.append("  params: " + ", ".join(f"{k}={v}" for k, v in sorted(rep.params.items())))
    table = [r for r in rep.weights if r["expected"] != 1 or r["computed"] != 1]
    if table:
        lines.append(f"  {'w':>4} {'d':>4} {'computed':>9} {'expected':>9}  ok")
        for r in table:
            d = "-" if r["d"] is None else r["d"]
            exp = "-" if r["expected"] is None else r["expected"]
            lines.append(f"  {r['w']:>4} {d:>4} {r['computed']:>9} {exp:>9}  {'yes' if r['ok'] else 'NO'}")
    assertions = len(rep.weights) - len(table)
    if assertions:
        lines.append(f"  {assertions} exact identities checked")
    lines.extend(f"  note: {n}" for n in rep.notes)
    if rep.status != PASS:
        lines.append(f"  witness: {json.dumps(rep.witness, default=str)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# hilbert


def _rows_1var(computed: list[int], expected: list[int]) -> list[dict]:
    return [{"w": w, "d": None, "computed": c, "expected": e, "ok": c == e}
            for w, (c, e) in enumerate(zip(computed, expected))]


def hilbert_table(space: str, N: int, two_var: bool = False, K: int | None = None) -> list[dict]:
    if space not in SPACES:
        raise UsageError(f"unknown space {space!r}; known: {', '.join(SPACES)}")
    if two_var and space not in TWO_VAR_SPACES:
        raise UsageError(f"{space} has no second grading; --two-var applies to {', '.join(TWO_VAR_SPACES)}")
    if space == "A":
        return _rows_1var(invariants.reynolds_span_dims(N), invariants.molien_expected(N))
    if space == "gr0A":
        g = invariants.gr_sigma_A(0, N)
        return _rows_1var([g[w] for w in range(N + 1)], invariants.gr0_expected(N))
    if space == "grA":
        K = N // 3 if K is None else K
        if not two_var:
            return _rows_1var(invariants.reynolds_span_dims(N), invariants.molien_expected(N))
        rows = []
        for k in range(K + 1):
            g, exp = invariants.gr_sigma_A(k, N), invariants.grA_expected(k, N)
            rows.extend({"w": w, "d": k, "computed": g[w], "expected": exp[w], "ok": g[w] == exp[w]}
                        for w in range(N + 1))
        return rows
    if space == "M0min":
        return _rows_1var([lowerbound.m0_dim(w) for w in range(N + 1)], lowerbound.m0_min_expected(N))
    if space == "Mmin":
        K = 3 if K is None else K
        built, exp = lowerbound.mmin_build(N, K), lowerbound.mmin_expected(N, K)
        if two_var:
            return [{"w": w, "d": k, "computed": built.get((w, k), 0), "expected": exp.get((w, k), 0),
                     "ok": built.get((w, k), 0) == exp.get((w, k), 0)}
                    for k in range(K + 1) for w in range(N + 1)]
        comp = [sum(built.get((w, k), 0) for k in range(K + 1)) for w in range(N + 1)]
        expd = [sum(exp.get((w, k), 0) for k in range(K + 1)) for w in range(N + 1)]
        return _rows_1var(comp, expd)
    if space.startswith("lieW"):
        k = int(space[-1])
        return [dict(r, d=k) for r in _rows_1var(depthgraded.lie_w(k, N).dims(), depthgraded.lie_w_expected(k, N))]
    if N < 15:
        raise UsageError("H-complex needs --max-weight >= 15")
    table, _ = depthgraded.complex_homology(N)
    expected = depthgraded.complex_expected(N)
    return [{"w": 0, "d": None, "computed": 0, "expected": expected[0], "ok": expected[0] == 0}] + [
        {"w": r["w"], "d": None, "computed": r["homology"], "expected": expected[r["w"]],
         "ok": r["homology"] == expected[r["w"]]} for r in table]


def _format_hilbert(space: str, rows: list[dict]) -> str:
    lines = [f"hilbert {space}", f"  {'w':>4} {'d':>4} {'computed':>9} {'expected':>9}  ok"]
    for r in rows:
        d = "-" if r["d"] is None else r["d"]
        lines.append(f"  {r['w']:>4} {d:>4} {r['computed']:>9} {r['expected']:>9}  {'yes' if r['ok'] else 'NO'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# basis and dump-poly


def _independent_mod(polys: list, k: int, w: int) -> list:
    """Greedy subset of ``polys`` whose classes mod I^k·M at weight w are independent."""
    chosen: list = []
    rank = 0
    for p in polys:
        r = lowerbound._quotient_rank(chosen + [p], k, w)
        if r > rank:
            chosen.append(p)
            rank = r
    return chosen


def basis(space: str, w: int, depth: int | None = None) -> list[dict]:
    if space not in BASIS_SPACES:
        raise UsageError(f"no basis extraction for {space!r}; known: {', '.join(BASIS_SPACES)}")
    if w < 0:
        raise UsageError("weight must be non-negative")
    if space == "A":
        return [p.to_json() for p in invariants.algebra_basis(w)]
    if space == "M0min":
        return [p.to_json() for p in _independent_mod(lowerbound.cyclic_lifts(w), 1, w)]
    if space == "Mmin":
        k = 0 if depth is None else depth
        return [p.to_json() for p in _independent_mod(list(lowerbound.mmin_lifts(k, w)), k + 1, w)]
    k = int(space[-1])
    if depth is not None and depth != k:
        raise UsageError(f"{space} lives in depth {k}")
    return [e.to_json() for e in depthgraded.lie_w(k, max(w, 1)).bases.get(w, [])]


def dump_poly(name: str, i: int | None, j: int | None) -> dict:
    def need(*vals):
        if any(v is None for v in vals):
            raise UsageError(f"{name} needs " + " and ".join(f"--{n}" for n in ("i", "j")[:len(vals)]))

    if name == "sigma-tilde":
        need(i)
        p = invariants.sigma_tilde(i)
    elif name == "lambda":
        need(i)
        p = lowerbound.lambda_k(i)
    elif name == "tau":
        need(i, j)
        p = lowerbound.tau(i, j)
    elif name == "tau-bar":
        need(i, j)
        p = lowerbound.tau_bar(i, j)
    elif name == "P":
        need(i, j)
        try:
            p = lowerbound.p_bold(i, j)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif name == "relation":
        p = invariants.presentation_relation()
    else:
        raise UsageError(f"unknown polynomial {name!r}; known: {', '.join(POLYS)}")
    return {"name": name, "i": i, "j": j, "poly": p.to_json()}


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    p.add_argument("--max-weight", type=int, default=argparse.SUPPRESS, metavar="N",
                   help=f"truncation weight (default {DEFAULT_MAX_WEIGHT})")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="FLINT worker threads")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="artifact", parents=[common],
                                     description="Exact verification of the Σ-structure lower bound.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a named check")
    v.add_argument("check_id", help="one of: " + ", ".join(sorted(CHECKS)))
    v.add_argument("--sigma-degree", type=int, metavar="K")
    v.add_argument("--i", type=int)
    v.add_argument("--j", type=int)

    h = sub.add_parser("hilbert", parents=[common], help="Hilbert series table")
    h.add_argument("space", choices=SPACES)
    h.add_argument("--two-var", action="store_true")
    h.add_argument("--sigma-degree", type=int, metavar="K")

    b = sub.add_parser("basis", parents=[common], help="dump a basis at one weight")
    b.add_argument("space", choices=BASIS_SPACES)
    b.add_argument("--weight", type=int, required=True)
    b.add_argument("--depth", type=int)

    d = sub.add_parser("dump-poly", parents=[common], help="print a named polynomial")
    d.add_argument("name", choices=POLYS)
    d.add_argument("--i", type=int)
    d.add_argument("--j", type=int)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    max_weight = getattr(args, "max_weight", DEFAULT_MAX_WEIGHT)
    out = getattr(args, "out", None)
    threads = getattr(args, "threads", None)
    if threads is not None:
        import flint
        flint.ctx.threads = max(1, threads)
    try:
        if args.command == "verify":
            rep = run_check(args.check_id, max_weight, args.sigma_degree, args.i, args.j)
            _emit(json.dumps(rep.to_json(), indent=2, default=str) if as_json else _format_report(rep), out)
            return 0 if rep.ok else 1
        if args.command == "hilbert":
            rows = hilbert_table(args.space, max_weight, args.two_var, args.sigma_degree)
            ok = all(r["ok"] for r in rows)
            payload = {"space": args.space, "params": {"max_weight": max_weight, "two_var": args.two_var},
                       "status": PASS if ok else "fail", "weights": rows}
            _emit(json.dumps(payload, indent=2) if as_json else _format_hilbert(args.space, rows), out)
            return 0 if ok else 1
        if args.command == "basis":
            elts = basis(args.space, args.weight, args.depth)
            payload = {"space": args.space, "weight": args.weight, "depth": args.depth, "basis": elts}
            text = json.dumps(payload, indent=2, default=str) if as_json else "\n".join(
                json.dumps(e, default=str) for e in elts) or "(empty)"
            _emit(text, out)
            return 0
        payload = dump_poly(args.name, args.i, args.j)
        _emit(json.dumps(payload, indent=2, default=str) if as_json else json.dumps(payload["poly"], default=str), out)
        return 0
    except UsageError as exc:
        print(f"artifact: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
