"""Command-line front end: ``finsemi <verb> ...``.

Exit codes: 0 success / holds, 1 definite negative, 2 budget or size cap hit,
3 usage or input error.
"""
from __future__ import annotations

import argparse
import sys

from . import sapir
from .core import (
    group_elements,
    has_central_idempotents,
    idempotents,
    is_ideal,
    is_nilsemigroup,
    is_right_ideal,
)
from .errors import BudgetExceeded, CapExceeded, SemigroupError
from .green import RELATIONS, class_counts, egg_box, format_counts, green_classes, is_completely_regular, is_completely_simple
from .identities import global_index_period, identity_witness, parse_identity
from .identities import DEFAULT_BUDGET as IDENTITY_BUDGET
from .language import parse_construction
from .lemmas import LEMMAS, verify_lemma
from .morphisms import DEFAULT_BUDGET as SEARCH_BUDGET
from .morphisms import Mapping, divisor_witness, homomorphism_violation, is_injective, is_onto
from .sgfile import format_sg, read_sg, write_sg

EXIT_OK, EXIT_NO, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    """Human lines or key=value lines, chosen once per run."""

    def __init__(self, porcelain: bool):
        self.porcelain = porcelain

    def kv(self, key: str, value, human: str | None = None) -> None:
        if self.porcelain:
            print(f"{key}={_fmt(value)}")
        elif human is not None:
            print(human)
        else:
            print(f"{key}: {_fmt(value)}")

    def text(self, line: str) -> None:
        if not self.porcelain:
            print(line)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _set(t, xs) -> str:
    return "{" + ",".join(t.label(x) for x in xs) + "}"


# ---------------------------------------------------------------- verbs


def cmd_construct(args, out: Output) -> int:
    t = parse_construction(args.spec)
    if args.output:
        write_sg(t, args.output)
        out.kv("n", t.n, f"wrote {t.n}-element table to {args.output}")
        if out.porcelain:
            out.kv("path", args.output)
    else:
        sys.stdout.write(format_sg(t))
    return EXIT_OK


def cmd_analyze(args, out: Output) -> int:
    t = read_sg(args.table, jobs=args.jobs)
    gr = group_elements(t)
    m, k = global_index_period(t)
    counts = class_counts(t)
    out.kv("n", t.n)
    out.kv("idempotents", _set(t, idempotents(t)))
    if out.porcelain:
        out.kv("GrS", _set(t, gr))
        out.kv("right_ideal", is_right_ideal(t, gr))
    else:
        print(f"GrS={_set(t, gr)} right_ideal={_fmt(is_right_ideal(t, gr))}")
    out.kv("gr_ideal", is_ideal(t, gr))
    out.kv("nil", is_nilsemigroup(t))
    out.kv("completely_regular", is_completely_regular(t))
    out.kv("completely_simple", is_completely_simple(t))
    out.kv("central_idempotents", has_central_idempotents(t))
    out.kv("index_period", f"{m},{k}", f"index_period: m={m} k={k}")
    if out.porcelain:
        for rel in RELATIONS:
            out.kv(rel, counts[rel])
    else:
        print(format_counts(counts))
    return EXIT_OK


def cmd_green(args, out: Output) -> int:
    t = read_sg(args.table, jobs=args.jobs)
    rels = [args.relation.upper()] if args.relation else list(RELATIONS)
    for rel in rels:
        part = green_classes(t, rel)
        classes = part.classes()
        out.kv(rel, " ".join(_set(t, c) for c in classes), f"{rel} ({part.class_count}): " + " ".join(_set(t, c) for c in classes))
    if args.eggbox:
        D = green_classes(t, "D")
        for d in range(D.class_count):
            box = egg_box(t, d)
            out.text(f"D-class {d} ({box.shape[0]}x{box.shape[1]}):")
            out.text(box.render(t))
    return EXIT_OK


def cmd_check(args, out: Output) -> int:
    t = read_sg(args.table, jobs=args.jobs)
    ident = parse_identity(args.identity)
    witness = identity_witness(t, ident, args.budget)
    if witness is None:
        out.kv("result", "holds", f"holds: {ident}")
        return EXIT_OK
    assignment = " ".join(f"x{v + 1}={t.label(x)}" for v, x in sorted(witness.items()))
    out.kv("result", "fails", f"fails: {ident}")
    out.kv("witness", assignment)
    return EXIT_NO


def cmd_divides(args, out: Output) -> int:
    T = read_sg(args.divisor, jobs=args.jobs)
    S = read_sg(args.semigroup, jobs=args.jobs)
    w = divisor_witness(T, S, args.budget)
    if w is None:
        out.kv("divides", False, "no: not a divisor")
        return EXIT_NO
    out.kv("divides", True, "yes")
    out.kv("subsemigroup", _set(S, w.elements))
    out.kv("generators", _set(S, w.generators))
    out.kv("map", " ".join(f"{S.label(w.elements[i])}->{T.label(y)}" for i, y in enumerate(w.mapping.image_of.tolist())))
    return EXIT_OK


def _read_map(path, n_source: int) -> list[int]:
    image = [-1] * n_source
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise UsageError(f"{path}:{lineno}: expected 'src dst'")
                src, dst = int(parts[0]), int(parts[1])
                if not 0 <= src < n_source:
                    raise UsageError(f"{path}:{lineno}: source index {src} out of range")
                image[src] = dst
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError:
        raise UsageError(f"{path}: indices must be integers") from None
    missing = [i for i, v in enumerate(image) if v < 0]
    if missing:
        raise UsageError(f"{path}: no image for source element {missing[0]}")
    return image


def cmd_check_map(args, out: Output) -> int:
    S = read_sg(args.source, jobs=args.jobs)
    T = read_sg(args.target, jobs=args.jobs)
    try:
        m = Mapping(S, T, _read_map(args.mapping, S.n))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bad = homomorphism_violation(m)
    out.kv("homomorphism", bad is None)
    if bad is not None:
        x, y = bad
        out.kv("witness", f"{S.label(x)},{S.label(y)}")
        return EXIT_NO
    out.kv("onto", is_onto(m))
    out.kv("injective", is_injective(m))
    return EXIT_OK


def cmd_sapir(args, out: Output) -> int:
    if args.sapir_cmd == "gen":
        w = sapir.gamma_power(args.k, args.m)
        text = sapir.format_word(args.k, w)
        out.kv("word", text, text)
        return EXIT_OK
    if args.sapir_cmd == "check-squarefree":
        w = sapir.gamma_power(args.k, args.m)
        wit = sapir.square_witness(w)
        out.kv("length", len(w))
        out.kv("square_free", wit is None)
        if wit is not None:
            start, p = wit
            out.kv("square", sapir.format_word(args.k, w[start:start + 2 * p]))
            return EXIT_NO
        return EXIT_OK
    fs = sapir.factors_upto(args.k, args.L)
    t = sapir.vk_table(fs)
    if args.out:
        write_sg(t, args.out)
    else:
        sys.stdout.write(format_sg(t))
        return EXIT_OK
    out.kv("n", t.n, f"wrote {t.n}-element table to {args.out}")
    out.kv("stabilized_at", fs.stabilized_at)
    return EXIT_OK


def cmd_verify_lemma(args, out: Output) -> int:
    names = list(LEMMAS) if args.name == "all" else [args.name]
    ok = True
    for name in names:
        rep = verify_lemma(name)
        ok &= rep.passed
        if out.porcelain:
            out.kv(name, "PASS" if rep.passed else "FAIL")
        else:
            print(rep.render())
    return EXIT_OK if ok else EXIT_NO


# ---------------------------------------------------------------- parser


def _common(parser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--porcelain", action="store_true", default=d(False), help="print key=value lines")
    parser.add_argument("--jobs", type=int, default=d(1), metavar="N", help="worker threads for table scans")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="finsemi", description="Finite semigroup tables: constructions, Green's relations, identities, divisors.")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp, suppress=True)
        return sp

    sp = verb("construct", "build a named table and write it as .sg")
    sp.add_argument("spec", help='e.g. "L(C2)", "Lflat(C6,{0,3})", "N2_1 x R2"')
    sp.add_argument("-o", "--output", help="output file (default: stdout)")
    sp.set_defaults(func=cmd_construct)

    sp = verb("analyze", "summary of a table")
    sp.add_argument("table")
    sp.set_defaults(func=cmd_analyze)

    sp = verb("green", "Green's classes of a table")
    sp.add_argument("table")
    sp.add_argument("--relation", choices=[*RELATIONS, *(r.lower() for r in RELATIONS)])
    sp.add_argument("--eggbox", action="store_true", help="also draw each D-class")
    sp.set_defaults(func=cmd_green)

    sp = verb("check", "check an identity exhaustively")
    sp.add_argument("table")
    sp.add_argument("identity", help='e.g. "x1 x2 x1 = x2 x1 x2"')
    sp.add_argument("--budget", type=int, default=IDENTITY_BUDGET)
    sp.set_defaults(func=cmd_check)

    sp = verb("divides", "is T a homomorphic image of a subsemigroup of S?")
    sp.add_argument("divisor", metavar="T.sg")
    sp.add_argument("semigroup", metavar="S.sg")
    sp.add_argument("--budget", type=int, default=SEARCH_BUDGET)
    sp.set_defaults(func=cmd_divides)

    sp = verb("check-map", "check a mapping file (lines 'src dst') between two tables")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("mapping")
    sp.set_defaults(func=cmd_check_map)

    sp = verb("sapir", "square-free words and their factor semigroup")
    ssub = sp.add_subparsers(dest="sapir_cmd", required=True, parser_class=_Parser)
    for name, help_ in (("gen", "print gamma^m(a_1_1)"), ("check-squarefree", "test gamma^m(a_1_1) for squares")):
        s2 = ssub.add_parser(name, help=help_)
        _common(s2, suppress=True)
        s2.add_argument("--k", type=int, default=1)
        s2.add_argument("--m", type=int, required=True)
    s2 = ssub.add_parser("table", help="write the factor semigroup for length bound L")
    _common(s2, suppress=True)
    s2.add_argument("--k", type=int, default=1)
    s2.add_argument("--L", type=int, required=True)
    s2.add_argument("--out")
    sp.set_defaults(func=cmd_sapir)

    sp = verb("verify-lemma", "run a named finite check (or 'all')")
    sp.add_argument("name", choices=[*LEMMAS, "all"])
    sp.set_defaults(func=cmd_verify_lemma)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    if getattr(args, "budget", 1) < 1:
        parser.error("--budget must be at least 1")
    out = Output(args.porcelain)
    try:
        return args.func(args, out)
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"finsemi: limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (SemigroupError, UsageError) as exc:
        print(f"finsemi: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
