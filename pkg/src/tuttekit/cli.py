"""tuttekit command line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard
violation (input too large for the requested route).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from . import asymptotics as asy
from . import clan, loci, spanning, verify
from .families import parse_family
from .polynomial import BiPoly, UniPoly
from .specializations import chromatic, flow, reliability, valuations
from .transfer import tutte_transfer
from .tutte import GuardError, tutte_dc, tutte_oracle, z_from_t


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- helpers

def _num(x, digits):
    return f"{x:.{digits}g}"


def _graph(text):
    try:
        spec = parse_family(text)
        return spec, spec.build()
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


def _window(text):
    try:
        a, b, c, d = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"window must be re0:re1:im0:im1, got {text!r}") from None
    if not (a < b and c < d):
        raise UsageError("window needs re0 < re1 and im0 < im1")
    return a, b, c, d


def _fix(text):
    if text is None:
        return None, None
    name, _, val = text.partition("=")
    if name not in ("v", "q", "p") or not val:
        raise UsageError(f"--fix expects v=..., q=... or p=..., got {text!r}")
    try:
        return name, Fraction(val)
    except ValueError:
        raise UsageError(f"cannot read {val!r} as a number") from None


def _csv(rows, header=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _poly_payload(kind, graph, poly, fmt):
    if fmt == "json":
        return json.dumps({"kind": kind, "graph": graph, "polynomial": poly.to_str()}, indent=2) + "\n"
    if fmt == "csv":
        if isinstance(poly, BiPoly):
            names = poly.names
            rows = [(i, j, c) for (i, j), c in sorted(poly.c.items())]
            return _csv(rows, [f"{names[0]}_exp", f"{names[1]}_exp", "coeff"])
        rows = [(i, c) for i, c in enumerate(poly.c) if c]
        return _csv(rows, ["exp", "coeff"])
    return poly.to_str() + "\n"


def _record(kind, graph, items, fmt, digits):
    """Emit a flat mapping of named values."""
    def show(v):
        return _num(v, digits) if isinstance(v, float) else str(v)

    if fmt == "json":
        body = {"kind": kind, "graph": graph}
        body.update({k: (float(_num(v, digits)) if isinstance(v, float) else
                         v if isinstance(v, (int, bool, list)) else str(v)) for k, v in items})
        return json.dumps(body, indent=2) + "\n"
    if fmt == "csv":
        return _csv([(k, show(v)) for k, v in items], ["name", "value"])
    return "".join(f"{k}: {show(v)}\n" for k, v in items)


# ---------------------------------------------------------------- commands

def cmd_tutte(a):
    spec, g = _graph(a.graph)
    fn = {"dc": tutte_dc, "oracle": tutte_oracle, "transfer": tutte_transfer}[a.method]
    t = fn(g)
    return _poly_payload("tutte", str(spec), t.polynomial, a.format)


def cmd_potts(a):
    spec, g = _graph(a.graph)
    t = tutte_dc(g)
    Z = z_from_t(t, t.k, t.n).polynomial
    return _poly_payload("potts", str(spec), Z, a.format)


def _spec_cmd(kind, fn, var):
    def run(a):
        spec, g = _graph(a.graph)
        P = fn(g)
        if a.at is not None:
            val = P.eval_exact(Fraction(a.at))
            return _record(kind, str(spec), [(var, a.at), ("value", val)], a.format, a.digits)
        return _poly_payload(kind, str(spec), P, a.format)
    return run


def cmd_counts(a):
    spec, g = _graph(a.graph)
    s = tuple(int(v) for v in a.s.split(",")) if a.s else ()
    val = valuations(g, s)
    items = [(k, v) for k, v in val.items() if k != "a_s"]
    items += [(f"a_{k}", v) for k, v in val.get("a_s", {}).items()]
    return _record("counts", str(spec), items, a.format, a.digits)


def cmd_spanning(a):
    if a.graph:
        spec, g = _graph(a.graph)
        items = [("N_ST", spanning.kirchhoff_count(g))]
        if spec.kind in ("clan-jn", "clan-id"):
            r, m = spec.params["r"], spec.params["m"]
            f = spanning.nst_clan_jn if spec.kind == "clan-jn" else spanning.nst_clan_id
            items.append(("closed_form", f(r, m)))
        return _record("spanning-trees", str(spec), items, a.format, a.digits)
    if a.r is None:
        raise UsageError("spanning-trees needs --graph or --family with --r")
    rep = spanning.growth_and_bounds(a.family, a.r)
    items = [("r", a.r), ("e^z", rep.ez), ("Delta", rep.delta), ("C_Delta", rep.c_delta),
             ("R1", rep.R1), ("R2", rep.R2)]
    return _record("spanning-growth", f"{a.family}", items, a.format, a.digits)


def cmd_alpha(a):
    if a.clan is not None:
        items = [("r", a.clan), ("alpha", asy.alpha_clan(a.clan).alpha)]
        return _record("alpha", f"clan:jn:r={a.clan}", items, a.format, a.digits)
    if a.lattice is None or a.Ly is None:
        raise UsageError("alpha needs --lattice and --Ly (or --clan R)")
    items = []
    if a.route in ("fit", "both"):
        items.append(("alpha_fit", asy.alpha_strip(a.lattice, a.Ly, a.bc).alpha))
    if a.route in ("closed", "both"):
        try:
            v = asy.alpha_closed_form(a.lattice, a.Ly, a.bc)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        items += [("alpha_closed", v.alpha), ("route", v.route)]
    return _record("alpha", f"{a.lattice}:Ly={a.Ly},BCy={a.bc}", items, a.format, a.digits)


def _emit_locus(locus, fmt, digits):
    if fmt == "json":
        return json.dumps(locus.to_json(digits), indent=2) + "\n"
    if fmt == "csv":
        return locus.to_csv(digits=digits)
    return locus.to_gnuplot(digits)


def cmd_zeros(a):
    try:
        spec = parse_family(a.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    name, val = _fix(a.fix)
    if a.poly.upper() == "Z" and name != "v":
        raise UsageError("Z zeros need --fix v=...")
    locus = loci.finite_zeros(spec, a.m, a.poly, val)
    return _emit_locus(locus, a.format, a.digits)


def _locus_spectrum(spec, poly, fix):
    name, val = fix
    r = spec.params.get("r")
    poly = poly.upper()
    if spec.kind == "circuit":
        if name != "v":
            raise UsageError("circuit loci need --fix v=...")
        return loci.circuit_spectrum(float(val)), "q"
    if spec.kind != "clan-jn":
        raise UsageError("loci are available for clan:jn and circuit families")
    if poly == "P" or (poly == "Z" and val == -1):
        return loci.chromatic_spectrum(r), "q"
    if poly == "Z":
        if name != "v":
            raise UsageError("Potts loci need --fix v=...")
        if r not in (1, 2, 3):
            raise UsageError("Potts spectra are tabulated for r <= 3")
        return loci.potts_spectrum(r, float(val)), "q"
    if poly in ("F", "FU"):
        if r != 2:
            raise UsageError("the flow spectrum is tabulated for r = 2")
        return (loci.flow_spectrum("u"), "u") if poly == "FU" else (loci.flow_spectrum("q"), "q")
    if poly == "R":
        if r != 2:
            raise UsageError("the reliability spectrum is tabulated for r = 2")
        return loci.reliability_spectrum(), "p"
    raise UsageError(f"unknown polynomial kind {poly!r}")


def cmd_locus(a):
    try:
        spec = parse_family(a.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if a.circles:
        if spec.kind != "clan-jn":
            raise UsageError("--circles needs a clan:jn family")
        locus, _ = loci.chromatic_circle_locus(spec.params["r"], n=a.res)
        return _emit_locus(locus, a.format, a.digits)
    fix = _fix(a.fix)
    poly = a.poly or ("Z" if fix[0] == "v" else "P")
    sp, plane = _locus_spectrum(spec, poly, fix)
    locus = loci.equimodular_locus(sp, _window(a.window), res=a.res, threads=a.threads, plane=plane)
    locus.meta.update({"family": str(spec), "m": "inf"})
    if fix[0]:
        locus.meta[fix[0]] = str(fix[1])
    return _emit_locus(locus, a.format, a.digits)


def _table_structure(rmax):
    rows = []
    for r in range(1, rmax + 1):
        sc = clan.structure_counts(r)
        rows.append([r] + list(sc.counts) + [""] * (rmax - r) + [sc.total])
    return ["r"] + [f"d={d}" for d in range(rmax + 1)] + ["N"], rows


def _table_alpha(lattice):
    rows = []
    for v in asy.alpha_table(lattice):
        Ly = "inf" if v.Ly is None else v.Ly
        rows.append([Ly, "F" if v.BCy == "free" else "P", f"{v.alpha:.3f}", v.route])
    return ["Ly", "BCy", "alpha", "route"], rows


def _table_spanning(family):
    return ["r", "e^z", "R1", "R2"], [rep.row(3) for rep in spanning.spanning_table(family)]


def cmd_tables(a):
    if a.table == "structure":
        header, rows = _table_structure(a.rmax)
    elif a.table == "alpha":
        header, rows = _table_alpha(a.lattice or "sq")
    else:
        header, rows = _table_spanning(a.family)
    if a.format == "json":
        return json.dumps({"table": a.table, "header": header, "rows": rows}, indent=2) + "\n"
    if a.format == "text":
        w = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        lines = ["  ".join(str(x).rjust(n) for x, n in zip(line, w)) for line in [header] + rows]
        return "\n".join(lines) + "\n"
    return _csv(rows, header)


def cmd_verify(a):
    try:
        checks = verify.run_suite(a.suite, threads=a.threads)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if a.format == "json":
        out = json.dumps({"suite": a.suite, "checks": [
            {"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}, indent=2) + "\n"
    elif a.format == "csv":
        out = _csv([(c.name, "pass" if c.ok else "fail", c.detail) for c in checks], ["check", "result", "detail"])
    else:
        out = "".join(c.line() + "\n" for c in checks)
        out += f"{sum(c.ok for c in checks)}/{len(checks)} checks passed\n"
    return out, 0 if all(c.ok for c in checks) else 1


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="tuttekit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tuttekit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker cap (output does not depend on it)")
    common.add_argument("--digits", type=int, default=6, help="significant digits for floats")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("tutte", cmd_tutte, "Tutte polynomial T(G,x,y)")
    sp.add_argument("--graph", required=True, help="family spec, e.g. circuit:m=4 or clan:jn:r=2,m=3")
    sp.add_argument("--method", choices=("dc", "oracle", "transfer"), default="dc")

    sp = add("potts", cmd_potts, "Potts partition function Z(G,q,v)")
    sp.add_argument("--graph", required=True)

    for name, fn, var in (("chromatic", chromatic, "q"), ("flow", flow, "q"), ("reliability", reliability, "p")):
        sp = add(name, _spec_cmd(name, fn, var), f"{name} polynomial")
        sp.add_argument("--graph", required=True)
        sp.add_argument("--at", help=f"evaluate exactly at this {var} (rational)")

    sp = add("counts", cmd_counts, "spanning trees, forests, acyclic orientations ...")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--s", default="1", help="comma list of s for a_s = (-1)^n P(G,-s)")

    sp = add("spanning-trees", cmd_spanning, "spanning-tree counts and growth rates")
    sp.add_argument("--graph")
    sp.add_argument("--family", choices=("jn", "id"), default="jn")
    sp.add_argument("--r", type=int)

    sp = add("alpha", cmd_alpha, "acyclic-orientation growth constant")
    sp.add_argument("--lattice", choices=("sq", "tri"))
    sp.add_argument("--Ly", type=int)
    sp.add_argument("--bc", default="F", help="transverse boundary: F or P")
    sp.add_argument("--route", choices=("fit", "closed", "both"), default="both")
    sp.add_argument("--clan", type=int, metavar="R", help="cyclic clan graphs with block size R")

    sp = add("zeros", cmd_zeros, "zeros of Z, P, F or R for a finite graph")
    sp.add_argument("--family", required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--poly", choices=("P", "F", "R", "Z"), default="P")
    sp.add_argument("--fix", help="v=... for Z")

    sp = add("locus", cmd_locus, "equimodular accumulation locus (m -> infinity)")
    sp.add_argument("--family", required=True, help="clan:jn:r=R or circuit:m=1")
    sp.add_argument("--poly", help="P, Z, F (q plane), FU (u = 1/q plane) or R")
    sp.add_argument("--fix", help="v=... for Potts loci")
    sp.add_argument("--window", default="-1:7:-3.5:3.5", help="re0:re1:im0:im1")
    sp.add_argument("--res", type=int, default=600)
    sp.add_argument("--circles", action="store_true", help="emit the closed-form circle union instead")

    sp = add("tables", cmd_tables, "regenerate the reference tables")
    sp.add_argument("table", choices=("structure", "alpha", "spanning"))
    sp.add_argument("--family", choices=("jn", "id"), default="jn")
    sp.add_argument("--lattice", choices=("sq", "tri"))
    sp.add_argument("--rmax", type=int, default=8)
    sp.set_defaults(format=None)

    sp = add("verify", cmd_verify, "run a verification suite and print a pass/fail matrix")
    sp.add_argument("--suite", default="clan-r3", help=", ".join(verify.SUITES))
    return p


_VALUE_FLAGS = ("--window", "--fix", "--at")


def _glue_negative(argv):
    """Join ``--window -1:7:...`` into ``--window=-1:7:...`` so argparse keeps the value."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative(argv))
    if args.command == "tables" and args.format is None:
        args.format = "csv"
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    code = 0
    try:
        out = args.func(args)
        if isinstance(out, tuple):
            out, code = out
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tuttekit: error: {exc}", file=sys.stderr)
        return 2
    except GuardError as exc:
        print(f"tuttekit: guard: {exc}", file=sys.stderr)
        return 3
    except clan.UnsupportedSpectrum as exc:
        print(f"tuttekit: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
