"""Command-line front end.

Every subcommand prints machine-readable TSV by default (``--format pretty``
aligns columns for reading).  Randomness only comes from ``--seed``, which
defaults to 0, so repeated runs print identical output.

Inputs
  scheme   JSON file (``-`` for stdin) with keys field, n, points, multiplicities;
           or ``--generic R`` / ``--star S`` for seeded random configurations
  curve    JSON coefficient map {"a,b,c": "coeff"} or {"field": ..., "form": {...}},
           given inline or as a file path
  class    "d;m1,m2,..." where "10^5" repeats an entry
  point    "c0,c1,c2"

Exit status: 0 success, 2 bad input, 3 budget exhausted, 4 internal check failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bezout, cht, macaulay, picard, scheme
from .errors import (BudgetExceededError, FatPointsError, InvalidInputError,
                     InvariantViolation)
from .exactlin import FieldSpec
from .ring import parse_coefficient_map

EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


# ---------------------------------------------------------------------------
# parsing helpers


def parse_field(text):
    """``rational``/``QQ`` or ``prime:P`` (also ``GF(P)`` or a bare prime)."""
    t = text.strip()
    if t.lower() in ("rational", "qq", "q"):
        return FieldSpec.rational()
    for prefix in ("prime:", "gf(", "gf"):
        if t.lower().startswith(prefix):
            t = t[len(prefix):].rstrip(")")
            break
    try:
        return FieldSpec.prime(int(t))
    except ValueError as exc:
        raise InvalidInputError(f"--field: {exc}") from None


def parse_int_list(text, name):
    try:
        out = []
        for tok in text.replace(";", ",").split(","):
            tok = tok.strip()
            if not tok:
                continue
            val, _, rep = tok.partition("^")
            out.extend([int(val)] * (int(rep) if rep else 1))
        return out
    except ValueError:
        raise InvalidInputError(f"{name}: expected comma-separated integers, got {text!r}") from None


def parse_point(text, name="--point"):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InvalidInputError(f"{name}: empty point")
    try:
        [Fraction(p) for p in parts]
    except ValueError:
        raise InvalidInputError(f"{name}: bad coordinate in {text!r}") from None
    return parts


def _load_json(text, name):
    if text == "-":
        raw = sys.stdin.read()
    elif os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{name}: not valid JSON ({exc.msg})") from None


def parse_curve(text, field, name):
    obj = _load_json(text, name)
    if not isinstance(obj, dict):
        raise InvalidInputError(f"{name}: expected a JSON object")
    if "form" in obj:
        if field is None and "field" in obj:
            field = FieldSpec.from_json(obj["field"])
        obj = obj["form"]
    field = field or FieldSpec.rational()
    try:
        F = parse_coefficient_map(field, obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"{name}: {exc}") from None
    if F.nvars != 3 or not F.is_homogeneous() or F.is_zero():
        raise InvalidInputError(f"{name}: need a nonzero homogeneous form in x0, x1, x2")
    return F


def parse_class(text, name="class"):
    try:
        return picard.DivClass.parse(text)
    except InvalidInputError as exc:
        raise InvalidInputError(f"{name}: {exc}") from None


def load_scheme(args):
    field = args.field
    mult = getattr(args, "mult", None)
    if args.generic is not None:
        field = field or FieldSpec.prime(scheme.DEFAULT_PRIME)
        pts = scheme.random_generic_points(args.generic, 2, field, seed=args.seed)
        return scheme.FatPointScheme.build(field, pts, mult or 1)
    if args.star is not None:
        field = field or FieldSpec.prime(scheme.DEFAULT_PRIME)
        _, pts = scheme.star_configuration(args.star, field, seed=args.seed)
        return scheme.FatPointScheme.build(field, pts, mult or 1)
    if args.scheme is None:
        raise InvalidInputError("scheme: give a JSON file, --generic R or --star S")
    obj = _load_json(args.scheme, "scheme")
    if field is not None:
        obj = dict(obj, field=field.to_json())
    try:
        Z = scheme.FatPointScheme.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"scheme: {exc}") from None
    return Z.with_multiplicity(mult) if mult else Z


# ---------------------------------------------------------------------------
# output


class Table:
    def __init__(self, header):
        self.header = list(header)
        self.rows = []

    def add(self, *row):
        self.rows.append([str(x) for x in row])

    def render(self, fmt):
        rows = [self.header] + self.rows
        if fmt == "tsv":
            return "\n".join("\t".join(r) for r in rows)
        widths = [max(len(r[i]) for r in rows) for i in range(len(self.header))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def emit(args, *chunks):
    for c in chunks:
        print(c.render(args.format) if isinstance(c, Table) else c)


def _csv(xs):
    return ",".join(str(x) for x in xs)


# ---------------------------------------------------------------------------
# subcommands: schemes


def cmd_hilbert(args):
    Z = load_scheme(args)
    hf = scheme.hilbert_function(Z)
    upto = hf.t_stab + 1 if args.upto is None else args.upto
    tab = Table(["t", "H_I", "H_R/I", "delta"])
    diff = hf.difference(upto)
    for t in range(upto + 1):
        tab.add(t, hf.ideal(t), hf.quotient(t), diff[t])
    emit(args, tab, f"H_R/I: {_csv(hf.quotient_values(hf.t_stab + 1))} (stable)")


def cmd_alpha(args):
    Z = load_scheme(args)
    emit(args, scheme.alpha(Z, cap=args.cap))


def cmd_waldschmidt(args):
    Z = load_scheme(args)
    br = scheme.waldschmidt_bracket(Z.with_multiplicity(1), args.mmax,
                                    degree_budget=args.budget)
    tab = Table(["m", "alpha", "alpha/m"])
    for m, (a, s) in enumerate(zip(br.alphas, br.samples), start=1):
        tab.add(m, a, s)
    emit(args, tab, f"lower\t{br.lower}", f"upper\t{br.upper}",
         f"chudnovsky (conjectural)\t{br.chudnovsky}")


def cmd_generators(args):
    Z = load_scheme(args)
    tab = Table(["degree", "generator"])
    for g in scheme.minimal_generators(Z, d_max=args.dmax):
        tab.add(g.degree, g)
    emit(args, tab)


def cmd_containment(args):
    Z = load_scheme(args)
    res = scheme.containment_test(Z, args.m, args.r, t_max=args.tmax, direction=args.direction)
    lhs, rhs = (f"I^{args.r}", f"I^({args.m})")
    if args.direction == scheme.SYMBOLIC_IN_ORDINARY:
        lhs, rhs = rhs, lhs
    emit(args, f"{lhs} in {rhs}\t{'yes' if res.holds else 'no'}")
    if not res.holds:
        emit(args, f"degree\t{res.degree}", f"witness\t{res.witness}")


def cmd_reduction(args):
    Z = load_scheme(args)
    field = Z.field
    lines = []
    for chunk in args.lines.split(";"):
        if chunk.strip():
            lines.append(tuple(field.element(c) for c in parse_point(chunk, "--lines")))
    red = cht.reduction_vector_of(Z, lines)
    emit(args, f"d\t{_csv(red.vector)}", f"diag\t{_csv(cht.diag(red.vector))}")


def cmd_realize(args):
    d = parse_int_list(args.dvector, "--dvector")
    field = args.field or FieldSpec.prime(scheme.DEFAULT_PRIME)
    Z = cht.configuration_from_vector(d, field, seed=args.seed)
    if args.json:
        emit(args, json.dumps(Z.to_json()))
        return
    tab = Table(["point"])
    for p in Z.points:
        tab.add(p)
    emit(args, tab)


# ---------------------------------------------------------------------------
# reduction vectors and sequences


def cmd_diag(args):
    d = parse_int_list(args.d, "d")
    emit(args, _csv(cht.diag(d)))
    if args.format == "pretty":
        emit(args, cht.dot_diagram(d))


def cmd_cht_bounds(args):
    d = parse_int_list(args.d, "d")
    total, little, rows = cht.cht_upper_bound_terms(d, args.t)
    low = cht.cht_lower_bound(d, args.t)
    emit(args, f"lower\t{low.value}{' (exact)' if low.exact else ''}",
         f"upper\t{cht.cht_upper_bound(d, args.t)}",
         f"terms\t{total} - {little} - {sum(rows)}")


def cmd_macaulay(args):
    exp = macaulay.d_binomial_expansion(args.h, args.d)
    emit(args, macaulay.macaulay_growth(args.h, args.d))
    if args.format == "pretty":
        emit(args, f"{args.h} = {exp}")


def cmd_osequence(args):
    seq = parse_int_list(args.sequence, "sequence")
    cls = macaulay.classify_sequence(seq, eventually_constant=not args.prefix)
    emit(args, f"kind\t{cls.kind}", f"zero-dimensional\t{'yes' if cls.zero_dimensional else 'no'}",
         f"delta\t{_csv(cls.delta)}")
    if cls.violation is not None:
        emit(args, f"violation\t{cls.violation}")


def cmd_gmr(args):
    seq = parse_int_list(args.sequence, "--sequence")
    lift = macaulay.gmr_lift(seq, args.field)
    tab = Table(["lex generator", "lifted"])
    for (a, b), g in zip(lift.lex_generators, lift.lifted_generators):
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in (("x1", a), ("x2", b)) if k)
        tab.add(mono, g)
    emit(args, tab, "points\t" + " ".join(str(p) for p in lift.scheme.points))
    if args.check:
        hf = scheme.hilbert_function(lift.scheme)
        got = hf.quotient_values(len(seq) - 1)
        if list(got) != list(seq):
            raise InvariantViolation(f"lift has Hilbert function {got}, wanted {seq}")
        emit(args, "check\tok")
    if args.format == "pretty":
        emit(args, lift.staircase())


# ---------------------------------------------------------------------------
# curves


def _point(args, field):
    return [field.element(c) for c in parse_point(args.point)]


def cmd_mult(args):
    F = parse_curve(args.curve, args.field, "curve")
    emit(args, bezout.multiplicity_at(F, _point(args, F.field)))


def cmd_tangent(args):
    F = parse_curve(args.curve, args.field, "curve")
    cone = bezout.tangent_cone(F, _point(args, F.field))
    emit(args, f"cone\t{cone.form}", f"multiplicity\t{cone.degree}", f"chart\t{cone.chart}")
    if args.other:
        G = parse_curve(args.other, F.field, "--other")
        emit(args, f"common tangent\t{'yes' if bezout.common_tangent(F, G, _point(args, F.field)) else 'no'}")


def cmd_intmult(args):
    F = parse_curve(args.f, args.field, "--f")
    G = parse_curve(args.g, F.field, "--g")
    res = bezout.intersection_multiplicity(F, G, _point(args, F.field), method=args.method,
                                           with_trace=True)
    emit(args, res.value)
    if args.trace:
        tab = Table(["m", "Lambda_m"])
        for m, lam in res.trace:
            tab.add(m, lam)
        emit(args, tab)


def cmd_bezout(args):
    F = parse_curve(args.f, args.field, "--f")
    G = parse_curve(args.g, F.field, "--g")
    pts = None
    if args.points:
        pts = [parse_point(c, "--points") for c in args.points.split(";") if c.strip()]
    chk = bezout.bezout_sum_check(F, G, pts, method=args.method)
    tab = Table(["point", "I_p"])
    for c, v in chk.multiplicities:
        tab.add("(" + ",".join(F.field.format(x) for x in c) + ")", v)
    tab.add("total", f"{chk.total} / {chk.expected} ({'equal' if chk.equal else 'short'})")
    emit(args, tab)


# ---------------------------------------------------------------------------
# Picard lattice


def cmd_pair(args):
    emit(args, picard.pairing(parse_class(args.a, "first class"),
                              parse_class(args.b, "second class")))


def cmd_weyl(args):
    x = parse_class(args.x)
    word = parse_int_list(args.word, "word")
    emit(args, picard.apply_word(word, x))


def cmd_reduce(args):
    D = parse_class(args.x)
    reduced, word, steps = picard.cremona_reduce(D, with_steps=True)
    if picard.apply_word(word, D) != reduced:
        raise InvariantViolation("replaying the reduction word does not reproduce the result")
    emit(args, reduced)
    emit(args, f"word\t{' '.join(f's{i}' for i in word) or '(empty)'}")
    if args.steps:
        tab = Table(["step", "generator", "class"])
        for k, st in enumerate(steps, start=1):
            tab.add(k, f"s{st.generator}", st.result.semicolon())
        emit(args, tab)


def cmd_expdim(args):
    emit(args, picard.expected_dimension(parse_class(args.x)))


def cmd_shgh(args):
    ms = parse_int_list(args.mults, "--mults")
    rep = picard.shgh_report(ms, args.t, allow_conjectural=args.conjectural)
    emit(args, f"{rep.value}{' (conjectural)' if rep.conjectural else ''}")
    if args.format == "pretty":
        emit(args, f"final class {rep.final}, {rep.passes} pass(es)")


def cmd_shgh_alpha(args):
    ms = parse_int_list(args.mults, "--mults")
    a = picard.shgh_alpha(ms, allow_conjectural=args.conjectural)
    conj = len(ms) > picard.SHGH_PROVEN_MAX_POINTS
    emit(args, f"{a}{' (conjectural)' if conj else ''}")


def cmd_exceptional(args):
    tab = Table(["class", "d;m"])
    classes = picard.enumerate_exceptional(args.r)
    for c in classes:
        tab.add(c, c.semicolon())
    emit(args, tab, f"count\t{len(classes)}")


# ---------------------------------------------------------------------------


def _scheme_args(p, mult=True):
    p.add_argument("scheme", nargs="?", help="scheme JSON file, or - for stdin")
    p.add_argument("--generic", type=int, metavar="R", help="R seeded random points instead")
    p.add_argument("--star", type=int, metavar="S", help="star configuration of S lines instead")
    if mult:
        p.add_argument("--mult", type=int, help="override every multiplicity")


def _curve_args(p, two):
    if two:
        p.add_argument("--f", required=True, help="first curve (JSON map or file)")
        p.add_argument("--g", required=True, help="second curve (JSON map or file)")
    else:
        p.add_argument("--curve", required=True, help="curve (JSON map or file)")


def build_parser():
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--format", choices=("tsv", "pretty"), default="tsv")
    common.add_argument("--field", type=parse_field, default=None,
                        help="rational or prime:P (overrides the input file)")

    ap = argparse.ArgumentParser(prog="fatpoints", description=__doc__.split("\n\n")[0],
                                 epilog=__doc__.split("\n\n", 1)[1],
                                 formatter_class=argparse.RawDescriptionHelpFormatter,
                                 parents=[common], allow_abbrev=False)
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_,
                           allow_abbrev=False)
        p.set_defaults(func=fn)
        return p

    p = add("hilbert", cmd_hilbert, "TSV columns t, H_I, H_R/I, delta; then the stable sequence")
    _scheme_args(p)
    p.add_argument("--upto", type=int, help="last degree in the table")

    p = add("alpha", cmd_alpha, "least degree of a nonzero element of I(Z)")
    _scheme_args(p)
    p.add_argument("--cap", type=int, help="give up past this degree")

    p = add("waldschmidt", cmd_waldschmidt, "alpha(I^(m)) for m <= mmax and bounds on the limit")
    _scheme_args(p, mult=False)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--budget", type=int, default=scheme.DEFAULT_DEGREE_BUDGET)

    p = add("generators", cmd_generators, "minimal generators, TSV columns degree, form")
    _scheme_args(p)
    p.add_argument("--dmax", type=int)

    p = add("containment", cmd_containment, "compare I^r with I^(m)")
    _scheme_args(p, mult=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--tmax", type=int)
    p.add_argument("--direction", default=scheme.ORDINARY_IN_SYMBOLIC,
                   choices=(scheme.ORDINARY_IN_SYMBOLIC, scheme.SYMBOLIC_IN_ORDINARY))

    p = add("diag", cmd_diag, "antidiagonal dot counts of a reduction vector")
    p.add_argument("d", help="e.g. 8,6,5,2")

    p = add("cht-bounds", cmd_cht_bounds, "lower bound on H_R/I(t) and the dot-count formula")
    p.add_argument("d")
    p.add_argument("--t", type=int, required=True)

    p = add("reduction", cmd_reduction, "reduction vector of a scheme for given lines")
    _scheme_args(p)
    p.add_argument("--lines", required=True, help='"a0,a1,a2;b0,b1,b2;..."')

    p = add("realize", cmd_realize, "points with a given strictly decreasing reduction vector")
    p.add_argument("--dvector", required=True)
    p.add_argument("--json", action="store_true", help="print a scheme JSON document")

    p = add("macaulay", cmd_macaulay, "Macaulay growth bound h^<d>")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("osequence", cmd_osequence, "classify a Hilbert function prefix")
    p.add_argument("sequence")
    p.add_argument("--prefix", action="store_true",
                   help="do not assume the last entry repeats forever")

    p = add("gmr", cmd_gmr, "points in the plane with a given Hilbert function")
    p.add_argument("--sequence", required=True)
    p.add_argument("--check", action="store_true", help="recompute the Hilbert function")

    p = add("mult", cmd_mult, "multiplicity of a curve at a point")
    _curve_args(p, False)
    p.add_argument("--point", required=True)

    p = add("tangent", cmd_tangent, "tangent cone at a point")
    _curve_args(p, False)
    p.add_argument("--point", required=True)
    p.add_argument("--other", help="second curve, to test for a common tangent")

    p = add("intmult", cmd_intmult, "intersection multiplicity at a point")
    _curve_args(p, True)
    p.add_argument("--point", required=True)
    p.add_argument("--method", choices=("local", "graded"), default="local")
    p.add_argument("--trace", action="store_true")

    p = add("bezout", cmd_bezout, "sum of intersection multiplicities, TSV columns point, I_p")
    _curve_args(p, True)
    p.add_argument("--points", help='candidates "1,0,0;0,1,0"; default scans GF(p), p <= 101')
    p.add_argument("--method", choices=("local", "graded"), default="local")

    p = add("pair", cmd_pair, "intersection pairing of two classes")
    p.add_argument("a")
    p.add_argument("b")

    p = add("weyl", cmd_weyl, "apply generators s_i in order")
    p.add_argument("x")
    p.add_argument("word", help="generator indices, e.g. 0,1,0")

    p = add("reduce", cmd_reduce, "Cremona reduction of a class")
    p.add_argument("x")
    p.add_argument("--steps", action="store_true", help="print every intermediate class")

    p = add("expdim", cmd_expdim, "expected dimension C(d+2,2) - sum C(m+1,2)")
    p.add_argument("x")

    p = add("shgh", cmd_shgh, "predicted dim I(Z)_t for generic points")
    p.add_argument("--mults", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--conjectural", action="store_true", help="allow more than 9 points")

    p = add("shgh-alpha", cmd_shgh_alpha, "least t with a positive prediction")
    p.add_argument("--mults", required=True)
    p.add_argument("--conjectural", action="store_true")

    p = add("exceptional", cmd_exceptional, "all exceptional classes for r <= 8 points")
    p.add_argument("--r", type=int, required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except BudgetExceededError as exc:
        print(f"fatpoints: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"fatpoints: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (FatPointsError, ValueError, ZeroDivisionError) as exc:
        print(f"fatpoints: {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
