"""Command line interface.

Exit codes: 0 success, 1 validation failure, 2 math-contract failure, 3 I/O.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import arith, char_ring, workspace
from .errors import GVQKError
from .transforms import (
    TRANSFORMS,
    gv_from_gw,
    gv_from_qk,
    gw_from_gv,
    integrality_audit,
    qk_from_gv,
    degree_check,
    remark_leg_identity_check,
    transform,
)

EXIT_OK, EXIT_INVALID, EXIT_CONTRACT, EXIT_IO = 0, 1, 2, 3


class _Out:
    def __init__(self, args):
        self.quiet = args.quiet
        self.json = args.json

    def text(self, msg: str) -> None:
        if not self.quiet and not self.json:
            print(msg)

    def data(self, obj) -> None:
        if self.json:
            print(json.dumps(obj, indent=2))


def _load(path: str, out: _Out):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None, EXIT_IO
    try:
        return workspace.loads(text), EXIT_OK
    except workspace.WorkspaceError as exc:
        out.data({"ok": False, "errors": exc.errors})
        for e in exc.errors:
            print(f"error: {e['where']}: {e['message']}", file=sys.stderr)
        return None, EXIT_INVALID


def cmd_validate(args, out: _Out) -> int:
    ws, code = _load(args.file, out)
    if ws is None:
        return code
    out.data({"ok": True, "tables": len(ws.tables)})
    out.text(f"{args.file}: ok ({len(ws.tables)} tables)")
    return EXIT_OK


def cmd_transform(args, out: _Out) -> int:
    if (args.source, args.target) not in TRANSFORMS:
        print(f"error: unsupported transform {args.source} -> {args.target}", file=sys.stderr)
        return EXIT_INVALID
    ws, code = _load(args.file, out)
    if ws is None:
        return code
    selected = [
        (i, t) for i, t in enumerate(ws.tables)
        if t.kind == args.source
        and (args.table is None or args.table in (str(i), ws.labels[i]))
    ]
    if not selected:
        print(f"error: no {args.source} table selected in {args.file}", file=sys.stderr)
        return EXIT_INVALID
    results, reports, labels = [], [], []
    for i, table in selected:
        try:
            result, report = transform(table, args.target)
        except GVQKError as exc:
            out.data({"ok": False, "table": i, "error": type(exc).__name__, "message": str(exc)})
            print(f"error: tables[{i}]: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_INVALID
        results.append(result)
        reports.append(report)
        labels.append(ws.labels[i])
    new = workspace.Workspace(
        ws.geometry, ws.truncation, results, labels, ws.ring, ws.ring_block,
        ws.kmodel, ws.kclasses_block,
    )
    text = workspace.dumps(new)
    try:
        if args.out:
            Path(args.out).write_text(text)
        if args.report:
            path = Path(args.report)
            if path.suffix == ".txt":
                path.write_text("\n\n".join(r.to_text() for r in reports) + "\n")
            else:
                path.write_text(json.dumps([r.to_json() for r in reports], indent=2) + "\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if not args.out:
        sys.stdout.write(text)
    else:
        out.data({"ok": True, "out": args.out, "tables": len(results)})
        for r in reports:
            out.text(r.to_text())
    return EXIT_OK


def _roundtrips(ws) -> list[dict]:
    rows = []
    for i, t in enumerate(ws.tables):
        pairs = []
        if t.kind == "GV":
            pairs.append(("GV->GW->GV", lambda t: gv_from_gw(gw_from_gv(t))))
            if t.n >= 1 and all(
                degree_check(t.n, t.insertion_degrees, t.geom, b) for b in t.domain()
            ):
                pairs.append(("GV->QK->GV", lambda t: gv_from_qk(qk_from_gv(t))))
        elif t.kind == "GW":
            pairs.append(("GW->GV->GW", lambda t: gw_from_gv(gv_from_gw(t))))
        elif t.kind == "QK":
            pairs.append(("QK->GV->QK", lambda t: qk_from_gv(gv_from_qk(t))))
        for name, fn in pairs:
            back = fn(t)
            bad = [
                list(b.coords) for b in sorted(set(back.entries) | set(t.entries))
                if back.entries.get(b, Fraction(0)) != t.entries.get(b, Fraction(0))
            ]
            rows.append({"table": i, "roundtrip": name, "ok": not bad, "mismatches": bad})
    return rows


def arith_identities(limit: int = 10_000, root_limit: int = 200, tol: float = 1e-9) -> dict:
    bad_phi = [r for r in range(1, limit + 1) if sum(arith.euler_phi(k) for k in arith.divisors(r)) != r]
    bad_mu = [
        r for r in range(1, limit + 1)
        if sum(arith.mobius(k) for k in arith.divisors(r)) != (1 if r == 1 else 0)
    ]
    bad_roots = []
    for r in range(1, root_limit + 1):
        if (
            abs(arith.primitive_root_sum(r, 1) - arith.mobius(r)) >= tol
            or abs(arith.primitive_root_sum(r, -1) - arith.mobius(r)) >= tol
            or len(arith.primitive_exponents(r)) != arith.euler_phi(r)
        ):
            bad_roots.append(r)
        if r >= 2 and abs(arith.cyclotomic_norm_product(r) - r) / r >= tol:
            bad_roots.append(r)
    return {
        "limit": limit,
        "root_limit": root_limit,
        "divisor_sum_phi": bad_phi,
        "divisor_sum_mu": bad_mu,
        "roots_of_unity": sorted(set(bad_roots)),
        "ok": not (bad_phi or bad_mu or bad_roots),
    }


def cmd_check(args, out: _Out) -> int:
    if args.arith_identities:
        t0 = time.perf_counter()
        verdict = arith_identities(args.limit, args.root_limit)
        verdict["seconds"] = round(time.perf_counter() - t0, 3)
        _emit(verdict, out)
        return EXIT_OK if verdict["ok"] else EXIT_CONTRACT
    if not args.file:
        print("error: check needs a workspace file", file=sys.stderr)
        return EXIT_INVALID
    ws, code = _load(args.file, out)
    if ws is None:
        return code
    if args.integrality:
        audits = [integrality_audit(t).to_json() | {"table": i} for i, t in enumerate(ws.tables)]
        ok = all(a["integral"] for a in audits)
        _emit({"check": "integrality", "ok": ok, "tables": audits}, out)
        return EXIT_OK if ok else EXIT_INVALID
    if args.roundtrip:
        try:
            rows = _roundtrips(ws)
        except GVQKError as exc:
            _emit({"check": "roundtrip", "ok": False, "error": str(exc)}, out)
            return EXIT_INVALID
        ok = all(r["ok"] for r in rows)
        _emit({"check": "roundtrip", "ok": ok, "results": rows}, out)
        return EXIT_OK if ok else EXIT_CONTRACT
    # remark identity
    phi = [int(x) for x in args.divisor.split(",")] if args.divisor else [1] * ws.geometry.rank
    rows = []
    for i, t in enumerate(ws.tables):
        if t.kind != "GV":
            continue
        gv0 = replace(t, n=0, insertion_degrees=())
        v = remark_leg_identity_check(gv0, gw_from_gv(gv0), phi, args.dmax)
        rows.append({"table": i, "ok": v.ok, "detail": v.detail})
    ok = all(r["ok"] for r in rows)
    _emit({"check": "remark-identity", "ok": ok, "divisor": phi, "results": rows}, out)
    return EXIT_OK if ok else EXIT_CONTRACT


def _emit(obj, out: _Out) -> None:
    if not out.quiet:
        print(json.dumps(obj, indent=2))


def cmd_hrr(args, out: _Out) -> int:
    ws, code = _load(args.file, out)
    if ws is None:
        return code
    ring = ws.ring
    if ring is None:
        print("error: hrr needs a ring block", file=sys.stderr)
        return EXIT_INVALID
    if ring.label != f"P{ring.dim}":
        print(f"error: hrr cross-checks projective spaces only, got {ring!r}", file=sys.stderr)
        return EXIT_INVALID
    k = args.bundle
    chi = char_ring.k_pairing(char_ring.line_bundle_ch(ring, k), ring.one(), ring)
    expected = char_ring.binomial_chi(ring.dim, k)
    ok = chi == expected
    out.data({"ring": ring.label, "k": k, "chi": str(chi), "binomial": str(expected), "ok": ok})
    out.text(f"chi(P{ring.dim}, O({k})) = {chi}  (binomial {expected}: {'ok' if ok else 'MISMATCH'})")
    return EXIT_OK if ok else EXIT_CONTRACT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress human-readable output")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="gvqk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="validate a workspace file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    t = sub.add_parser("transform", parents=[common], help="transform invariant tables")
    t.add_argument("file")
    t.add_argument("--from", dest="source", required=True, choices=["GW", "GV", "QK"])
    t.add_argument("--to", dest="target", required=True, choices=["GW", "GV", "QK"])
    t.add_argument("--table", help="table index or label (default: every table of the source kind)")
    t.add_argument("--out", help="output workspace (default: stdout)")
    t.add_argument("--report", help="per-class contribution report; .txt for text, else JSON")
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("check", parents=[common], help="run invariant checks")
    c.add_argument("file", nargs="?")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--integrality", action="store_true")
    g.add_argument("--roundtrip", action="store_true")
    g.add_argument("--remark-identity", action="store_true")
    g.add_argument("--arith-identities", action="store_true")
    c.add_argument("--divisor", help="divisor covector for --remark-identity, e.g. 1,0")
    c.add_argument("--dmax", type=int, default=6)
    c.add_argument("--limit", type=int, default=10_000)
    c.add_argument("--root-limit", type=int, default=200)
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("hrr", parents=[common], help="Hirzebruch-Riemann-Roch cross-check on P^n")
    h.add_argument("file")
    h.add_argument("--bundle", type=int, required=True, help="twist k of O(k)")
    h.set_defaults(func=cmd_hrr)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, _Out(args))


if __name__ == "__main__":
    sys.exit(main())
