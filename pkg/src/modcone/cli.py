"""modcone command-line interface.

Every numeric value is printed as an exact rational "p/q"; decimal strings
are display-only.  Exit codes: 0 success / check passed, 1 check failed or
certificate infeasible, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
import time
from fractions import Fraction

from . import cones, jacobian, picard, pointed, slopes, syzygy
from .exact import decimal_str, format_fraction

FORMATS = ("text", "json", "tsv", "markdown")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.add_argument("--budget-seconds", type=float, default=None, metavar="S")
    return p


def _value_str(v: Fraction) -> str:
    dec = decimal_str(v)
    exact = format_fraction(v)
    return exact if dec == exact else f"{exact} (≈{dec})"


def _emit_table(headers, rows, fmt, out) -> None:
    if fmt == "json":
        out.write(json.dumps([dict(zip(headers, row)) for row in rows], indent=2) + "\n")
    elif fmt == "tsv":
        out.write("\t".join(headers) + "\n")
        for row in rows:
            out.write("\t".join(row) + "\n")
    else:  # markdown and text share the pipe table
        out.write("| " + " | ".join(headers) + " |\n")
        out.write("|" + "|".join("---" for _ in headers) + "|\n")
        for row in rows:
            out.write("| " + " | ".join(row) + " |\n")


def _load_class(path: str) -> picard.DivisorClass:
    with open(path, "r", encoding="utf-8") as fh:
        return picard.deserialize(fh.read())


def _load_any_class(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    doc = json.loads(text)
    if isinstance(doc, dict) and doc.get("symmetric"):
        return picard.deserialize_symmetric(text)
    return picard.deserialize(text)


# ---------------------------------------------------------------------- cone


def cmd_fcurve_list(args, out) -> int:
    if (args.g is None) == (args.zero_n is None):
        raise ValueError("give exactly one of --g or --zero-n")
    if args.g is not None:
        rows = [
            (f.family, ",".join(map(str, f.indices)), f.describe())
            for f in cones.enumerate_fcurve_functionals(args.g)
        ]
        _emit_table(["family", "indices", "functional"], rows, args.format, out)
    else:
        parts = cones.enumerate_fcurves_0n(args.zero_n)
        rows = [("|".join(",".join(map(str, b)) for b in blocks),) for blocks in parts]
        _emit_table(["partition"], rows, args.format, out)
        out.write(f"total: {len(parts)}\n" if args.format == "text" else "")
    return 0


def cmd_cone_check(args, out) -> int:
    cls = _load_class(args.class_file)
    check = cones.f_nef_check(cls) if args.mode == "fnef" else cones.f_ample_check(cls)
    if check.passed:
        out.write(f"PASS: every F-curve functional is {'>= 0' if args.mode == 'fnef' else '> 0'}\n")
        return 0
    rows = [(f.family, f.describe(), _value_str(v)) for f, v in check.violations]
    _emit_table(["family", "functional", "value"], rows, args.format if args.format != "text" else "markdown", out)
    out.write(f"FAIL: {len(rows)} violated functional(s)\n")
    return 1


def cmd_cone_member(args, out) -> int:
    target = _load_class(args.target)
    gens = [_load_class(p) for p in args.gens]
    cert = cones.cone_member(target, gens)
    if cert is None:
        out.write("NotInCone\n")
        return 1
    out.write("multipliers: " + cert.describe() + "\n")
    return 0


# --------------------------------------------------------------------- slope


def cmd_slope(args, out) -> int:
    s = slopes.slope(_load_class(args.class_file))
    out.write(("Infinite" if s is slopes.INFINITE else _value_str(s)) + "\n")
    return 0


def cmd_pair(args, out) -> int:
    cls = _load_class(args.class_file)
    profile = slopes.curve_profile(args.curve, cls.signature.g)
    out.write(_value_str(slopes.pair(cls, profile)) + "\n")
    return 0


def cmd_class(args, out) -> int:
    if args.which == "bn":
        cls = slopes.brill_noether_class(args.g, args.r, args.d)
    elif args.which == "canonical":
        cls = slopes.canonical_class_mg(args.g)
    elif args.which == "kgn":
        cls = pointed.canonical_class_gn(args.g, args.n)
        if args.symmetric:
            out.write(picard.serialize_symmetric(picard.symmetrize(cls)) + "\n")
            return 0
    elif args.which == "mrc":
        sym = pointed.mrc_class(args.g, args.r, args.i)
        if args.expand:
            out.write(picard.serialize(picard.expand(sym)) + "\n")
        else:
            out.write(picard.serialize_symmetric(sym) + "\n")
        return 0
    elif args.which == "logan":
        weights = [int(x) for x in args.a.split(",") if x != ""]
        cls = pointed.logan_class(args.g, weights)
    elif args.which == "named":
        cls = slopes.named_class(args.name)
    else:  # pragma: no cover
        raise ValueError(args.which)
    out.write(picard.serialize(cls) + "\n")
    return 0


def cmd_certify_mg(args, out) -> int:
    cert = slopes.general_type_certificate_mg(_load_class(args.class_file))
    if cert is None:
        out.write("Infeasible\n")
        return 1
    out.write(cert.describe() + "\n")
    return 0


def cmd_certify_mgn(args, out) -> int:
    cands = [_load_any_class(p) for p in args.candidates]
    cert = pointed.general_type_certificate_gn(args.g, args.n, cands)
    if cert is None:
        out.write("Inconclusive\n")
        return 1
    out.write(cert.describe() + "\n")
    return 0


# -------------------------------------------------------------------- syzygy


def cmd_syzygy(args, out) -> int:
    if args.which == "params":
        fam = syzygy.family(args.s, args.i)
        out.write(f"r={fam.r} g={fam.g} d={fam.d}\n")
        return 0
    if args.which == "ranks":
        ra, rb = syzygy.ranks(syzygy.family(args.s, args.i))
        out.write(f"rank_A={ra} rank_B={rb}\n")
        return 0
    if args.which == "slope":
        out.write(_value_str(syzygy.virtual_slope(args.s, args.i)) + "\n")
        return 0
    # sweep
    rows = []
    ok = True
    for s in range(max(args.s, 1), args.smax + 1):
        for i in range(max(args.i, 0), args.imax + 1):
            fam = syzygy.family(s, i)
            ra, _ = syzygy.ranks(fam)
            value = syzygy.virtual_slope(s, i)
            if s >= 2:
                bc = syzygy.bound_check(s, i)
                bound = "ok" if bc.ok else "VIOLATED"
                ok = ok and bc.ok
            else:
                bound = "n/a (s=1)"
            rows.append(
                (str(s), str(i), str(fam.g), str(ra), format_fraction(value),
                 decimal_str(value), bound)
            )
    _emit_table(["s", "i", "g", "rank", "slope", "decimal", "bound 6<s<6+12/(g+1)"],
                rows, args.format, out)
    return 0 if ok else 1


# ------------------------------------------------------------------ jacobian


def cmd_jacobian(args, out) -> int:
    if args.which == "lemma-check":
        ctx = jacobian.EvalContext.from_family(args.s, args.i)
        convention = jacobian.calibrated_convention()
        rows = []
        ok = True
        for name, got, want in jacobian.vandermonde_identities(ctx, convention):
            match = got == want
            ok = ok and match
            rows.append((name, format_fraction(got), format_fraction(want),
                         "ok" if match else "FAIL"))
        _emit_table(["identity", "computed", "expected", "status"], rows,
                    args.format if args.format != "text" else "markdown", out)
        out.write(f"convention: {convention}\n")
        return 0 if ok else 1
    if args.which == "solve":
        res = jacobian.solve_coefficients(args.s, args.i)
        if args.json or args.format == "json":
            doc = {
                "s": res.s, "i": res.i,
                "A": format_fraction(res.A),
                "B0": format_fraction(res.B0),
                "B1": format_fraction(res.B1),
                "slope": format_fraction(res.slope),
                "slope_decimal": decimal_str(res.slope),
            }
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            out.write(
                f"A={format_fraction(res.A)} B0={format_fraction(res.B0)} "
                f"B1={format_fraction(res.B1)} slope={_value_str(res.slope)}\n"
            )
        return 0
    # ht: one Harris-Tu determinant evaluation
    exps = tuple(int(x) for x in args.exponents.split(","))
    ctx = jacobian.EvalContext.from_family(args.s, args.i)
    value = jacobian.harris_tu(exps, ctx, args.theta)
    out.write(_value_str(value) + "\n")
    return 0


# -------------------------------------------------------------------- report


def _solve_pair(si: tuple[int, int]) -> jacobian.SolveResult:
    return jacobian.solve_coefficients(*si)


def cmd_table_mgn(args, out) -> int:
    rows = [(str(g), str(n)) for g, n in sorted(pointed.mgn_table().items())]
    _emit_table(["g", "n >= (general type)"], rows, args.format, out)
    out.write("literature-reported fixture; re-derivation out of scope\n"
              if args.format == "text" else "")
    return 0


def cmd_report(args, out) -> int:
    deadline = None if args.budget_seconds is None else time.monotonic() + args.budget_seconds
    fmt = args.format if args.format != "text" else "markdown"
    ok = True

    out.write("# modcone sweep report\n\n" if fmt == "markdown" else "")
    rows = []
    grid = [(s, i) for s in range(1, args.smax + 1) for i in range(0, args.imax + 1)]
    for s, i in grid:
        fam = syzygy.family(s, i)
        ra, rb = syzygy.ranks(fam)
        value = syzygy.virtual_slope(s, i)
        bound = "n/a" if s < 2 else ("ok" if syzygy.bound_check(s, i).ok else "VIOLATED")
        ok = ok and bound != "VIOLATED"
        rows.append((str(s), str(i), str(fam.g), f"{ra}={rb}",
                     format_fraction(value), decimal_str(value), bound))
    out.write("## virtual slopes, rank and bound checks\n\n" if fmt == "markdown" else "")
    _emit_table(["s", "i", "g", "ranks", "slope", "decimal", "bound"], rows, fmt, out)

    out.write("\n## fixture comparisons\n\n" if fmt == "markdown" else "")
    fix_rows = []
    for name, value, dec in syzygy.fixed_slopes():
        if name == "M22 quadric divisor":
            formula = slopes.slope(slopes.named_class("d22"))
        elif name == "K10":
            formula = slopes.slope(slopes.named_class("k10"))
        else:
            formula = value
        mark = "ok" if formula == value else "MISMATCH"
        ok = ok and mark == "ok"
        fix_rows.append((name, format_fraction(value), dec, mark))
    _emit_table(["fixture", "slope", "decimal", "status"], fix_rows, fmt, out)

    out.write("\n## intersection-theory confirmations\n\n" if fmt == "markdown" else "")
    solve_grid = [(s, i) for (s, i) in grid if (s, i) != (1, 0) or True]
    solve_rows = []
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = {si: pool.submit(_solve_pair, si) for si in solve_grid}
            for si in solve_grid:
                remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
                try:
                    res = futures[si].result(timeout=remaining)
                    solve_rows.append((str(si[0]), str(si[1]), format_fraction(res.slope), "confirmed"))
                except concurrent.futures.TimeoutError:
                    solve_rows.append((str(si[0]), str(si[1]), "-", "SKIPPED (budget)"))
                    for other in solve_grid:
                        futures[other].cancel()
    else:
        for si in solve_grid:
            if deadline is not None and time.monotonic() > deadline:
                solve_rows.append((str(si[0]), str(si[1]), "-", "SKIPPED (budget)"))
                continue
            res = _solve_pair(si)
            solve_rows.append((str(si[0]), str(si[1]), format_fraction(res.slope), "confirmed"))
    _emit_table(["s", "i", "slope", "status"], solve_rows, fmt, out)
    return 0 if ok else 1


# ---------------------------------------------------------------- dispatcher


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = argparse.ArgumentParser(prog="modcone", description=__doc__)
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fcurve", parents=[common])
    fsub = p.add_subparsers(dest="fcurve_cmd", required=True)
    pl = fsub.add_parser("list", parents=[common])
    pl.add_argument("--g", type=int)
    pl.add_argument("--zero-n", type=int, dest="zero_n")
    pl.set_defaults(func=cmd_fcurve_list)

    p = sub.add_parser("cone")
    csub = p.add_subparsers(dest="cone_cmd", required=True)
    for mode in ("fnef", "fample"):
        pc = csub.add_parser(mode, parents=[common])
        pc.add_argument("--class", dest="class_file", required=True)
        pc.set_defaults(func=cmd_cone_check, mode=mode)
    pm = csub.add_parser("member", parents=[common])
    pm.add_argument("--target", required=True)
    pm.add_argument("--gens", nargs="+", required=True)
    pm.set_defaults(func=cmd_cone_member)

    p = sub.add_parser("slope", parents=[common])
    p.add_argument("--class", dest="class_file", required=True)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("pair", parents=[common])
    p.add_argument("--class", dest="class_file", required=True)
    p.add_argument("--curve", choices=("B", "R", "C0", "C1"), required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("class")
    ksub = p.add_subparsers(dest="class_cmd", required=True)
    pb = ksub.add_parser("bn", parents=[common])
    pb.add_argument("--g", type=int, required=True)
    pb.add_argument("--r", type=int, required=True)
    pb.add_argument("--d", type=int, required=True)
    pb.set_defaults(func=cmd_class, which="bn")
    pc = ksub.add_parser("canonical", parents=[common])
    pc.add_argument("--g", type=int, required=True)
    pc.set_defaults(func=cmd_class, which="canonical")
    pk = ksub.add_parser("kgn", parents=[common])
    pk.add_argument("--g", type=int, required=True)
    pk.add_argument("--n", type=int, required=True)
    pk.add_argument("--symmetric", action="store_true")
    pk.set_defaults(func=cmd_class, which="kgn")
    pm = ksub.add_parser("mrc", parents=[common])
    pm.add_argument("--g", type=int, required=True)
    pm.add_argument("--r", type=int, required=True)
    pm.add_argument("--i", type=int, required=True)
    pm.add_argument("--expand", action="store_true")
    pm.set_defaults(func=cmd_class, which="mrc")
    pl = ksub.add_parser("logan", parents=[common])
    pl.add_argument("--g", type=int, required=True)
    pl.add_argument("--a", required=True, help="comma-separated weights, e.g. 2,2,0")
    pl.set_defaults(func=cmd_class, which="logan")
    pn = ksub.add_parser("named", parents=[common])
    pn.add_argument("name")
    pn.set_defaults(func=cmd_class, which="named")

    p = sub.add_parser("certify")
    csub = p.add_subparsers(dest="certify_cmd", required=True)
    pg = csub.add_parser("mg", parents=[common])
    pg.add_argument("--class", dest="class_file", required=True)
    pg.set_defaults(func=cmd_certify_mg)
    pn = csub.add_parser("mgn", parents=[common])
    pn.add_argument("--g", type=int, required=True)
    pn.add_argument("--n", type=int, required=True)
    pn.add_argument("--candidates", nargs="*", default=[])
    pn.set_defaults(func=cmd_certify_mgn)

    p = sub.add_parser("syzygy")
    ssub = p.add_subparsers(dest="syzygy_cmd", required=True)
    for which in ("params", "ranks", "slope", "sweep"):
        ps = ssub.add_parser(which, parents=[common])
        ps.add_argument("--s", type=int, default=1)
        ps.add_argument("--i", type=int, default=0)
        if which == "sweep":
            ps.add_argument("--smax", type=int, required=True)
            ps.add_argument("--imax", type=int, required=True)
        ps.set_defaults(func=cmd_syzygy, which=which)

    p = sub.add_parser("jacobian")
    jsub = p.add_subparsers(dest="jacobian_cmd", required=True)
    pl = jsub.add_parser("lemma-check", parents=[common])
    pl.add_argument("--s", type=int, required=True)
    pl.add_argument("--i", type=int, required=True)
    pl.set_defaults(func=cmd_jacobian, which="lemma-check")
    po = jsub.add_parser("solve", parents=[common])
    po.add_argument("--s", type=int, required=True)
    po.add_argument("--i", type=int, required=True)
    po.add_argument("--json", action="store_true")
    po.set_defaults(func=cmd_jacobian, which="solve")
    ph = jsub.add_parser("ht", parents=[common])
    ph.add_argument("--exponents", required=True, help="comma-separated, one per Chern root")
    ph.add_argument("--theta", type=int, default=0)
    ph.add_argument("--s", type=int, required=True)
    ph.add_argument("--i", type=int, required=True)
    ph.set_defaults(func=cmd_jacobian, which="ht")

    p = sub.add_parser("table")
    tsub = p.add_subparsers(dest="table_cmd", required=True)
    pt = tsub.add_parser("mgn", parents=[common])
    pt.set_defaults(func=cmd_table_mgn)

    p = sub.add_parser("report", parents=[common])
    p.add_argument("--smax", type=int, default=3)
    p.add_argument("--imax", type=int, default=2)
    p.set_defaults(func=cmd_report)

    return root


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except (ValueError, OSError, KeyError, ZeroDivisionError) as exc:
        print(f"modcone: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"modcone: check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
