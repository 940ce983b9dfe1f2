"""ku-stab command line.

Grammar: ``ku-stab <module> <op> [flags]``.  Exit codes: 0 success,
1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .exact import InputError, format_rat, rat

VALUE_FLAGS = {"--alpha-sq", "--beta", "--v", "--bound", "--d", "--s", "--square",
               "--vec", "--vecs", "--re", "--im", "--ch", "--script", "--max"}


def _emit(args, payload, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _int_vec(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in s.split(","))
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {s!r}") from exc


def _rat_vec(s: str) -> tuple[Fraction, ...]:
    return tuple(rat(t) for t in s.split(","))


def _lattice(args):
    from .io import load_lattice_file
    from .lattice import build_named
    if getattr(args, "lattice", None):
        return load_lattice_file(args.lattice)
    if getattr(args, "name", None):
        return build_named(args.name)
    raise InputError("give --lattice FILE or --name NAME")


def _report_text(rep) -> str:
    lines = [rep.title]
    for c in rep.checks:
        lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}  {c.detail}")
    for n in rep.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines)


# ---- tilt ------------------------------------------------------------------

def cmd_tilt(args) -> int:
    from .chern import format_slope, slope_h
    from .tilt import (MukaiVector, TiltParams, exceptional_table, ku_charge,
                       tilt_slope, verify_heart_window, wall_scan, z_first)
    if args.op == "verify":
        rep = verify_heart_window(TiltParams(args.alpha_sq, args.beta))
        _emit(args, rep.to_json(), _report_text(rep))
        return 0 if rep.passed else 1
    if args.op == "wall-scan":
        v = MukaiVector.parse(args.v)
        sols = wall_scan(v, args.bound)
        text = "\n".join(
            f"{s.destabilizer}\t{'none' if s.alpha_sq_root is None else format_rat(s.alpha_sq_root)}"
            f"\t{'in-window' if s.in_window else 'outside'}" for s in sols)
        _emit(args, [s.to_json() for s in sols], text)
        return 0
    if args.op == "table":
        p = TiltParams(args.alpha_sq, args.beta)
        rows = []
        for e in exceptional_table():
            z = z_first(p, e.twisted_ch)
            rows.append({
                "name": e.name,
                "ch_le2": [format_rat(x) for x in e.truncated],
                "mu_h": format_slope(slope_h(e.twisted_ch)),
                "Z": z.to_json(),
                "mu_first": format_slope(tilt_slope(p, e.twisted_ch)),
                "mu_second": format_slope(tilt_slope(p, e.twisted_ch, "second")),
            })
        text = "\n".join(
            "\t".join([r["name"], " ".join(r["ch_le2"]), r["mu_h"], r["mu_first"], r["mu_second"]])
            for r in rows)
        _emit(args, rows, "name\tch<=2\tmu_h\tmu\tmu0\n" + text)
        return 0
    if args.op == "charge":
        z = ku_charge(args.alpha_sq, MukaiVector.parse(args.v))
        _emit(args, z.to_json(), str(z))
        return 0
    raise InputError(f"unknown op {args.op}")


# ---- sigma -----------------------------------------------------------------

def cmd_sigma(args) -> int:
    from .sigma import basis_gram, bogomolov_from_chi_bound, rank4_chi2_obstruction
    if args.op == "gram":
        g = basis_gram()
        rows = g.as_int_rows()
        det = g.determinant()
        payload = {"basis": list(g.basis_labels), "gram": rows, "det": format_rat(det),
                   "symmetric": g.is_symmetric()}
        text = "\n".join("\t".join(str(x) for x in r) for r in rows) + f"\ndet = {format_rat(det)}"
        _emit(args, payload, text)
        return 0 if det == 256 else 1
    rep = rank4_chi2_obstruction(args.bound) if args.op == "obstruction" else bogomolov_from_chi_bound(args.bound)
    _emit(args, rep.to_json(), _report_text(rep))
    return 0 if rep.passed else 1


# ---- lattice ---------------------------------------------------------------

def cmd_lattice(args) -> int:
    from . import lattice as L
    op = args.op
    if op == "neg-two":
        rep = L.neg_two_obstruction(args.s, args.bound)
        _emit(args, rep.to_json(), _report_text(rep))
        return 0 if rep.passed else 1
    lat = _lattice(args)
    if op == "show":
        sig = L.signature(lat)
        payload = {**lat.to_json(), "rank": lat.rank, "det": lat.det, "signature": list(sig)}
        if lat.name == "Mukai24-default":
            payload["convention"] = "E8(-1)^2 + U^4 with lambda1, lambda2 = e+f in two U summands"
        _emit(args, payload, f"{lat.name}: rank {lat.rank}, det {lat.det}, signature {sig}")
    elif op == "disc":
        d = L.discriminant_group(lat)
        _emit(args, {"invariant_factors": d}, " ".join(map(str, d)) or "trivial")
    elif op == "divisibility":
        d = L.divisibility(lat.vector(_int_vec(args.vec)))
        _emit(args, {"divisibility": d}, str(d))
    elif op == "complement":
        vecs = [_int_vec(s) for s in args.vecs.split(";")]
        c = L.orthogonal_complement(lat, vecs)
        sub = c.lattice
        payload = {"basis": [list(b) for b in c.basis], "gram": [list(r) for r in sub.gram]}
        _emit(args, payload, "\n".join(" ".join(map(str, b)) for b in c.basis))
    elif op == "enumerate":
        en = L.enumerate_square(lat, args.square, args.bound)
        payload = {"vectors": [list(v) for v in en.vectors], "exhaustive": en.exhaustive,
                   "note": en.note}
        _emit(args, payload, "\n".join(" ".join(map(str, v)) for v in en.vectors)
              + f"\n# {len(en.vectors)} vectors, {en.note}")
    elif op in ("isotropic", "hyperbolic"):
        fn = L.isotropic_exists if op == "isotropic" else L.hyperbolic_plane_exists
        r = fn(lat, args.bound)
        _emit(args, r.to_json(), f"{r.status} {r.witness if r.witness is not None else ''} ({r.note})")
    else:
        raise InputError(f"unknown op {op}")
    return 0


# ---- k3 --------------------------------------------------------------------

def cmd_k3(args) -> int:
    from .k3 import (EtaVector, d_label, in_P, in_P0, star_star_prime,
                     twisted_k3_criterion, untwisted_k3_criterion)
    if args.op == "label":
        lab = d_label(args.d)
        _emit(args, lab.to_json(), f"d={lab.d}: {lab.status} {' '.join(lab.components)}")
        return 0
    if args.op == "starstar":
        ok, f = star_star_prime(args.d)
        fac = " * ".join(f"{p}^{e}" for p, e in sorted(f.items())) or "1"
        _emit(args, {"d": args.d, "holds": ok, "factorization": {str(p): e for p, e in f.items()}},
              f"{args.d} = {fac}: {'holds' if ok else 'fails'}")
        return 0
    lat = _lattice(args)
    if args.op == "criterion":
        fn = twisted_k3_criterion if args.kind == "twisted" else untwisted_k3_criterion
        r = fn(lat, args.bound)
        payload = {**r.to_json(), "kind": args.kind,
                   "scope": "answer concerns the supplied lattice only"}
        _emit(args, payload, f"{args.kind}: {r.status} {r.witness if r.witness else ''} ({r.note})")
        return 0
    if args.op == "p0":
        eta = EtaVector(_rat_vec(args.re), _rat_vec(args.im), lat)
        ans = in_P0(eta, args.bound)
        payload = {**ans.to_json(), "in_P": in_P(eta)}
        _emit(args, payload, f"{ans.status} ({'certified' if ans.certified else 'bounded'}: {ans.note})")
        return 0
    raise InputError(f"unknown op {args.op}")


# ---- moduli ----------------------------------------------------------------

def cmd_moduli(args) -> int:
    from .moduli import family_invariants, grid, h2_structure, moduli_dimension
    from .tilt import MukaiVector
    if args.op == "grid":
        reps = grid(args.max)
        text = "a\tb\tdim\tdegree\tdiv\tt\tlabel\n" + "\n".join(
            f"{r.v.a}\t{r.v.b}\t{r.dim}\t{r.degree}\t{r.divisibility}\t{r.involution_witness}\t{r.example_label}"
            for r in reps)
        _emit(args, [r.to_json() for r in reps], text)
        return 0
    if args.v is None:
        raise InputError("give --v a,b")
    v = MukaiVector.parse(args.v)
    if args.op == "dim":
        d = moduli_dimension(v.square())
        _emit(args, {"square": v.square(), "dim": d}, str(d) if d is not None else "empty")
        return 0
    if args.op == "h2":
        s = h2_structure(v)
        _emit(args, s.to_json(), f"{s.kind}, rank {s.lattice.rank}")
        return 0
    r = family_invariants(v)
    text = (f"v = {v}\ndim = {r.dim}\ndegree = {r.degree}\ndivisibility = {r.divisibility}\n"
            f"polarization = {r.polarization}\ninvolution t = {r.involution_witness}\n"
            f"label = {r.example_label}")
    if r.candidates:
        text += "\ncandidates = " + " | ".join(r.candidates)
    _emit(args, r.to_json(), text)
    return 0


# ---- mutate, verify, io, report -------------------------------------------

def cmd_mutate(args) -> int:
    from .io import load_context_file
    from .mutation import builtin_context, mutate_collection
    if args.context:
        ctx = load_context_file(args.context)
    elif args.builtin:
        ctx = builtin_context(args.builtin)
    else:
        raise InputError("give --context FILE or --builtin NAME")
    res = mutate_collection(ctx, args.script or "")
    c = res.context
    text = "\t".join(c.basis_labels) + "\n" + "\n".join(
        "\t".join(format_rat(x) for x in row) for row in c.euler)
    _emit(args, res.to_json(), text)
    return 0


def cmd_verify(args) -> int:
    from .verify import FAIL, all_tags, run_suite
    items = run_suite(args.filter)
    if args.filter is not None and not items:
        print(f"warning: no items carry tag {args.filter!r}; known tags: {', '.join(all_tags())}",
              file=sys.stderr)
    text = "\n".join(f"{i.status.upper():<5} {i.id:<28} {i.paper_location}  [{i.details}]" for i in items)
    _emit(args, [i.to_json() for i in items], text)
    return 1 if any(i.status == FAIL for i in items) else 0


def cmd_io(args) -> int:
    from .io import io_roundtrip
    if args.file and args.file != "-":
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
    else:
        text = sys.stdin.read()
    print(io_roundtrip(text))
    return 0


def cmd_chern(args) -> int:
    from .chern import ChernY, discriminant_y, slope_h, format_slope, twist_cl0
    vals = _rat_vec(args.ch)
    if len(vals) not in (3, 4):
        raise InputError("--ch takes ch0,ch1,ch2[,ch3]")
    e = ChernY(*vals) if len(vals) == 4 else ChernY(*vals, None)
    payload = {"ch": e.to_json(), "twisted": twist_cl0(e).to_json(),
               "discriminant": format_rat(discriminant_y(e)),
               "mu_h": format_slope(slope_h(e))}
    _emit(args, payload, "\n".join(f"{k} = {v}" for k, v in payload.items()))
    return 0


def cmd_report(args) -> int:
    from .plotting import write_report
    files = write_report(args.out, args.max)
    _emit(args, {"files": files}, "\n".join(files))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="ku-stab", parents=[common],
                                description="Exact numerics for stability conditions on GM fourfolds.")
    sub = p.add_subparsers(dest="module", required=True)

    t = sub.add_parser("tilt", parents=[common], help="double-tilt charges and slopes")
    t.add_argument("op", choices=("verify", "wall-scan", "table", "charge"))
    t.add_argument("--alpha-sq", type=rat, default=Fraction(1, 32))
    t.add_argument("--beta", type=rat, default=Fraction(-5, 4))
    t.add_argument("--v", default="1,0")
    t.add_argument("--bound", type=int, default=5)
    t.set_defaults(func=cmd_tilt)

    s = sub.add_parser("sigma", parents=[common], help="Euler form on the quadric surface")
    s.add_argument("op", choices=("gram", "obstruction", "bogomolov"))
    s.add_argument("--bound", type=int, default=50)
    s.set_defaults(func=cmd_sigma)

    la = sub.add_parser("lattice", parents=[common], help="integral lattices")
    la.add_argument("op", choices=("show", "disc", "divisibility", "complement", "enumerate",
                                   "isotropic", "hyperbolic", "neg-two"))
    la.add_argument("--lattice", help="JSON lattice file")
    la.add_argument("--name", help="named lattice, e.g. U, E8(-1), Ls(1), Mukai24-default")
    la.add_argument("--vec")
    la.add_argument("--vecs", help="vectors separated by ';'")
    la.add_argument("--square", type=int, default=-2)
    la.add_argument("--bound", type=int, default=10)
    la.add_argument("--s", type=int, default=1)
    la.set_defaults(func=cmd_lattice)

    k = sub.add_parser("k3", parents=[common], help="associated K3 criteria")
    k.add_argument("op", choices=("label", "starstar", "criterion", "p0"))
    k.add_argument("--d", type=int, default=10)
    k.add_argument("--lattice")
    k.add_argument("--name")
    k.add_argument("--kind", choices=("twisted", "untwisted"), default="twisted")
    k.add_argument("--bound", type=int, default=50)
    k.add_argument("--re")
    k.add_argument("--im")
    k.set_defaults(func=cmd_k3)

    m = sub.add_parser("moduli", parents=[common], help="moduli space invariants")
    m.add_argument("op", nargs="?", choices=("show", "grid", "dim", "h2"), default="show")
    m.add_argument("--v")
    m.add_argument("--max", type=int, default=20)
    m.set_defaults(func=cmd_moduli)

    mu = sub.add_parser("mutate", parents=[common], help="mutations of exceptional collections")
    mu.add_argument("--context")
    mu.add_argument("--builtin", choices=("sigma", "quadric3"))
    mu.add_argument("--script", default="")
    mu.set_defaults(func=cmd_mutate)

    v = sub.add_parser("verify", parents=[common], help="run the reproduction suite")
    v.add_argument("--filter", default=None, help="only items carrying this tag")
    v.set_defaults(func=cmd_verify)

    io = sub.add_parser("io", parents=[common], help="JSON documents")
    io.add_argument("op", choices=("roundtrip",))
    io.add_argument("file", nargs="?", default="-")
    io.set_defaults(func=cmd_io)

    c = sub.add_parser("chern", parents=[common], help="character summary on the threefold")
    c.add_argument("--ch", required=True, help="ch0,ch1,ch2[,ch3]")
    c.set_defaults(func=cmd_chern)

    r = sub.add_parser("report", parents=[common], help="CSV tables and PNG figures")
    r.add_argument("--out", required=True)
    r.add_argument("--max", type=int, default=50)
    r.set_defaults(func=cmd_report)
    return p


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "-5/4" or "-1,2" as an option
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    args.json = getattr(args, "json", False) or getattr(args, "format", "text") == "json"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
