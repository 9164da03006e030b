"""Command-line front end: exact coupling tables, projector dumps, GT bases,
and the verification suites.

Output is deterministic: records are sorted by their canonical key order and
rendered identically across runs.  Exact values appear as Radical strings;
the value_float column is a display-only decimal rendering.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from .algebra import (
    NormalOrdering,
    build_root_system,
    default_ordering,
    validate_normal_ordering,
)
from .exact import Radical, sqrt_of_rational
from .pbw import RewriteEngine
from .projector import (
    extremal_projector,
    no_go_polynomial_residual,
    verify_extremal_identities,
)
from .repmod import su3_irrep
from .su3gt import enumerate_gt_labels, gt_hypercharge, gt_norm_factor, gt_vector
from .wigner2 import cgc_closed, cgc_projector, ninej, sixj

SCHEMA = 1


def half(text):
    """argparse type for exact half-integers written as `p/2` or integers."""
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational: %r" % (text,))
    if (2 * f).denominator != 1:
        raise argparse.ArgumentTypeError("not a half-integer: %r" % (text,))
    return f


def _fstr(x):
    return str(Fraction(x))


def _vfloat(v):
    return "%.12g" % float(v)


def _record(keys, value):
    rec = dict(keys)
    rec["value"] = str(value)
    rec["value_float"] = _vfloat(value)
    return rec


def _spin_range(lo, hi):
    x = lo
    while x <= hi:
        yield x
        x += Fraction(1, 2)


def _proj_range(j):
    m = j
    while m >= -j:
        yield m
        m -= 1


# -- table builders ---------------------------------------------------


def records_cgc_su2(args):
    j1, j2 = args.j1, args.j2
    j3s = [args.j3] if args.j3 is not None else list(_spin_range(abs(j1 - j2), j1 + j2))
    out = []
    for j3 in sorted(j3s, reverse=True):
        if (j1 + j2 + j3).denominator != 1 or not abs(j1 - j2) <= j3 <= j1 + j2:
            continue
        for m3 in _proj_range(j3):
            for m1 in _proj_range(j1):
                m2 = m3 - m1
                if abs(m2) > j2:
                    continue
                v = cgc_closed(j1, m1, j2, m2, j3, m3)
                if not v:
                    continue
                out.append(
                    _record(
                        [
                            ("j1", _fstr(j1)), ("m1", _fstr(m1)),
                            ("j2", _fstr(j2)), ("m2", _fstr(m2)),
                            ("j3", _fstr(j3)), ("m3", _fstr(m3)),
                        ],
                        v,
                    )
                )
    return out


def records_cgc_su3(args):
    from .su3cgc import decompose, su3_cgc

    lam1, mu1, lam2, mu2 = args.lam1, args.mu1, args.lam2, args.mu2
    found = decompose(lam1, mu1, lam2, mu2)
    targets = sorted(found)
    if args.lam3 is not None or args.mu3 is not None:
        if args.lam3 is None or args.mu3 is None:
            raise CliError("--lam3 and --mu3 must be given together")
        want = (args.lam3, args.mu3)
        if want not in found:
            raise CliError(
                "(%d,%d) does not occur in (%d,%d)x(%d,%d)"
                % (want + (lam1, mu1, lam2, mu2))
            )
        targets = [want]
    labs1 = enumerate_gt_labels(lam1, mu1)
    labs2 = enumerate_gt_labels(lam2, mu2)
    out = []
    for lam3, mu3 in targets:
        for s in range(1, len(found[(lam3, mu3)]) + 1):
            for g3 in enumerate_gt_labels(lam3, mu3):
                for g1 in labs1:
                    for g2 in labs2:
                        v = su3_cgc(lam1, mu1, g1, lam2, mu2, g2, lam3, mu3, g3, s=s)
                        if not v:
                            continue
                        out.append(
                            _record(
                                [
                                    ("lam3", lam3), ("mu3", mu3), ("s", s),
                                    ("j3", _fstr(g3[0])), ("t3", _fstr(g3[1])), ("tz3", _fstr(g3[2])),
                                    ("j1", _fstr(g1[0])), ("t1", _fstr(g1[1])), ("tz1", _fstr(g1[2])),
                                    ("j2", _fstr(g2[0])), ("t2", _fstr(g2[1])), ("tz2", _fstr(g2[2])),
                                ],
                                v,
                            )
                        )
    return out


def records_sixj(args):
    v = sixj(args.j1, args.j2, args.j3, args.j4, args.j5, args.j6)
    keys = [("j%d" % k, _fstr(getattr(args, "j%d" % k))) for k in range(1, 7)]
    return [_record(keys, v)]


def records_ninej(args):
    rows = (
        (args.j1, args.j2, args.j3),
        (args.j4, args.j5, args.j6),
        (args.j7, args.j8, args.j9),
    )
    v = ninej(rows)
    keys = [("j%d" % k, _fstr(getattr(args, "j%d" % k))) for k in range(1, 10)]
    return [_record(keys, v)]


def records_gt_basis(args):
    lam, mu = args.lam, args.mu
    M = su3_irrep(lam, mu)
    out = []
    for lab in enumerate_gt_labels(lam, mu):
        v = gt_vector(lam, mu, lab, module=M)
        coords = ";".join(
            "%d:%s" % (i, v.coords[i]) for i in sorted(v.coords)
        )
        rec = _record(
            [
                ("lam", lam), ("mu", mu),
                ("j", _fstr(lab[0])), ("t", _fstr(lab[1])), ("tz", _fstr(lab[2])),
                ("y", _fstr(gt_hypercharge(lam, mu, lab[0]))),
            ],
            gt_norm_factor(lam, mu, lab[0], lab[1]),
        )
        rec["coords"] = coords
        out.append(rec)
    return out


def _parse_order(sys_data, text):
    seq = []
    for tok in text.split(","):
        tok = tok.strip()
        if len(tok) != 2 or not tok.isdigit():
            raise CliError("bad root %r in --order (want e.g. 12,13,23)" % (tok,))
        seq.append((int(tok[0]), int(tok[1])))
    seq = tuple(seq)
    try:
        ok, _ = validate_normal_ordering(sys_data, seq)
    except ValueError as exc:
        raise CliError(str(exc))
    if not ok:
        raise CliError("%r is not a normal ordering" % (text,))
    return NormalOrdering(sequence=seq)


def records_projector(args):
    n = {"su2": 2, "su3": 3}[args.algebra]
    sys_data = build_root_system(n)
    order = _parse_order(sys_data, args.order) if args.order else None
    P = extremal_projector(sys_data, order=order, N=args.trunc).canonical()
    out = []
    for L, c, R in P.monomials():
        import sympy

        num, den = sympy.fraction(c.as_expr())
        out.append(
            {
                "lowering": P._word_str(L),
                "coefficient": "(%s)/(%s)" % (num, den) if den != 1 else str(num),
                "raising": P._word_str(R),
            }
        )
    return out


# -- verification suites ----------------------------------------------


def _verify_su_projector(n, trunc):
    default = {2: 6, 3: 4}[n]
    N = trunc if trunc is not None else default
    sys_data = build_root_system(n)
    eng = RewriteEngine(sys_data)
    P = extremal_projector(sys_data, N=N, engine=eng)
    rep = verify_extremal_identities(P, sys_data, N, engine=eng)
    checks = [
        ("annihilation_left", all(not v for v in rep.annihilation_left.values())),
        ("annihilation_right", all(not v for v in rep.annihilation_right.values())),
        ("idempotency", not rep.idempotency),
    ]
    return checks


def _verify_no_go(trunc):
    N = trunc if trunc is not None else 3
    res = no_go_polynomial_residual(build_root_system(2), N)
    return [("polynomial_truncation_fails_annihilation", bool(res.terms))]


def _verify_su2_cgc(trunc):
    hi = Fraction(trunc) / 2 if trunc is not None else Fraction(1)
    ok = True
    for j1 in _spin_range(Fraction(0), hi):
        for j2 in _spin_range(Fraction(0), hi):
            for j3 in _spin_range(abs(j1 - j2), j1 + j2):
                for m3 in _proj_range(j3):
                    for m1 in _proj_range(j1):
                        m2 = m3 - m1
                        if abs(m2) > j2:
                            continue
                        a = cgc_closed(j1, m1, j2, m2, j3, m3)
                        b = cgc_projector(j1, m1, j2, m2, j3, m3)
                        ok = ok and not (a - b)
    return [("closed_equals_projector_route", ok)]


def _verify_su3_gt(trunc):
    lam, mu = (1, 1)
    labels = enumerate_gt_labels(lam, mu)
    count_ok = len(labels) == (lam + 1) * (mu + 1) * (lam + mu + 2) // 2
    M = su3_irrep(lam, mu)
    vecs = [gt_vector(lam, mu, lab, module=M) for lab in labels]
    one = Radical.from_rational(1)
    gram_ok = True
    for a, va in enumerate(vecs):
        for b, vb in enumerate(vecs):
            want = one if a == b else Radical.from_rational(0)
            if va.inner(vb) != want:
                gram_ok = False
    return [("label_count", count_ok), ("orthonormality", gram_ok)]


def _verify_su3_cgc(trunc):
    from .su3cgc import decompose, su3_cgc

    found = decompose(1, 0, 0, 1)
    decomp_ok = sorted(found) == [(0, 0), (1, 1)]
    mag = sqrt_of_rational(Fraction(1, 3))
    labs1 = enumerate_gt_labels(1, 0)
    labs2 = enumerate_gt_labels(0, 1)
    singlet_ok = True
    zero = Radical.from_rational(0)
    for g1 in labs1:
        for g2 in labs2:
            v = su3_cgc(1, 0, g1, 0, 1, g2, 0, 0, (0, 0, 0))
            if v != zero and v != mag and v != -mag:
                singlet_ok = False
    return [("decomposition", decomp_ok), ("singlet_magnitudes", singlet_ok)]


SUITES = {
    "su2-projector": lambda trunc: _verify_su_projector(2, trunc),
    "su3-projector": lambda trunc: _verify_su_projector(3, trunc),
    "no-go": _verify_no_go,
    "su2-cgc": _verify_su2_cgc,
    "su3-gt": _verify_su3_gt,
    "su3-cgc": _verify_su3_cgc,
}


def records_verify(args):
    checks = SUITES[args.suite](args.trunc)
    return [
        {"suite": args.suite, "check": name, "ok": bool(ok)} for name, ok in checks
    ]


# -- output plumbing --------------------------------------------------


class CliError(Exception):
    pass


def render(records, fmt, command):
    if not records:
        fields = []
    else:
        fields = list(records[0].keys())
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, "records": records}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        w.writerow(fields)
        for rec in records:
            w.writerow([rec[f] for f in fields])
        return buf.getvalue()
    widths = {f: max([len(f)] + [len(str(r[f])) for r in records]) for f in fields}
    lines = ["  ".join(f.ljust(widths[f]) for f in fields).rstrip()]
    for rec in records:
        lines.append("  ".join(str(rec[f]).ljust(widths[f]) for f in fields).rstrip())
    return "\n".join(lines) + "\n"


def emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".extremal-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser():
    p = argparse.ArgumentParser(
        prog="extremal",
        description="Exact extremal-projector calculator for su(2) and su(3): "
        "Clebsch-Gordan tables, 6j/9j symbols, Gelfand-Tsetlin bases.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
        sp.add_argument("--out", metavar="FILE", default=None)

    sp = sub.add_parser("cgc-su2", help="su(2) Clebsch-Gordan table")
    sp.add_argument("--j1", type=half, required=True)
    sp.add_argument("--j2", type=half, required=True)
    sp.add_argument("--j3", type=half, default=None)
    common(sp)
    sp.set_defaults(builder=records_cgc_su2)

    sp = sub.add_parser("cgc-su3", help="su(3) Clebsch-Gordan table")
    for name in ("lam1", "mu1", "lam2", "mu2"):
        sp.add_argument("--" + name, type=int, required=True)
    sp.add_argument("--lam3", type=int, default=None)
    sp.add_argument("--mu3", type=int, default=None)
    common(sp)
    sp.set_defaults(builder=records_cgc_su3)

    sp = sub.add_parser("sixj", help="su(2) 6j symbol")
    for k in range(1, 7):
        sp.add_argument("--j%d" % k, type=half, required=True)
    common(sp)
    sp.set_defaults(builder=records_sixj)

    sp = sub.add_parser("ninej", help="su(2) 9j symbol")
    for k in range(1, 10):
        sp.add_argument("--j%d" % k, type=half, required=True)
    common(sp)
    sp.set_defaults(builder=records_ninej)

    sp = sub.add_parser("gt-basis", help="Gelfand-Tsetlin basis of an su(3) irrep")
    sp.add_argument("--lam", type=int, required=True)
    sp.add_argument("--mu", type=int, required=True)
    common(sp)
    sp.set_defaults(builder=records_gt_basis)

    sp = sub.add_parser("projector", help="dump the truncated extremal projector")
    sp.add_argument("--algebra", choices=("su2", "su3"), required=True)
    sp.add_argument("--trunc", type=int, default=4)
    sp.add_argument("--order", default=None, help="normal ordering, e.g. 12,13,23")
    common(sp)
    sp.set_defaults(builder=records_projector)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--trunc", type=int, default=None)
    common(sp)
    sp.set_defaults(builder=records_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records = args.builder(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    emit(render(records, args.format, args.command), args.out)
    if args.command == "verify" and not all(r["ok"] for r in records):
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
