"""Command-line front end.

Exit codes: 0 success, 1 domain rejection (non-sparse input, dependent
bases, failed verification), 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import bounds
from .automata import AutomatonError, Dfa, member, minimize, project, reverse_direction
from .decompose import NotSparseError, decompose, verify_decomposition
from .expsum import enumerate_values, format_form, to_expsum, value_order
from .formats import ParseError, dumps_dfa, dumps_terms, load_dfa, load_terms
from .intersect import bounded_intersection
from .sparsity import classify, count_words, cumulative, analysis_automaton


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def _tuple(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad tuple {text!r}") from None
    if any(v < 0 for v in values):
        raise ParseError(f"tuple {text!r} has a negative entry")
    return values


def _load(args, path) -> Dfa:
    a = load_dfa(path)
    return a if args.keep_direction else reverse_direction(a)


def _cmd_member(args, out):
    a = _load(args, args.automaton)
    print("true" if member(a, _tuple(args.tuple)) else "false", file=out)


def _cmd_sparsity(args, out):
    rep = classify(_load(args, args.automaton))
    if rep.is_sparse:
        print(f"sparse degree={rep.poly_degree}", file=out)
        return
    w = rep.witness
    cycles = " ".join(",".join(map(str, c)) for c in w.cycles)
    print(
        f"not-sparse state={w.state} cycles={cycles} "
        f"alpha={rep.alpha!r} alpha_from={rep.alpha_from}",
        file=out,
    )


def _cmd_counts(args, out):
    t = analysis_automaton(_load(args, args.automaton))
    per_len = count_words(t, args.max_len)
    for n, (c, f) in enumerate(zip(per_len, cumulative(per_len))):
        print(f"{n} {c} {f}", file=out)


def _cmd_decompose(args, out):
    a = _load(args, args.automaton)
    terms = decompose(a)
    out.write(dumps_terms(terms, a.base, a.dim))
    if args.verify is not None:
        ok = verify_decomposition(a, terms, args.verify)
        print(f"verified max_len={args.verify} {'ok' if ok else 'FAILED'}", file=sys.stderr)
        if not ok:
            return 1


def _cmd_expsum(args, out):
    _, _, terms = load_terms(args.terms)
    for term in terms:
        print(format_form(to_expsum(term)), file=out)


def _cmd_enumerate(args, out):
    _, _, terms = load_terms(args.terms)
    values = set()
    for term in terms:
        values.update(enumerate_values(to_expsum(term), args.bound))
    for v in sorted(values, key=value_order):
        print(",".join(map(str, v)), file=out)


_FORMULAS = {
    "main": (bounds.intersection_bound, ("Q", "Qp", "d", "k", "l")),
    "av": (bounds.av_bound, ("n", "r")),
    "nondegenerate": (bounds.nondegenerate_pair_bound, ("n", "m")),
    "degenerate": (bounds.degenerate_pair_bound, ("n", "m")),
    "term-pair": (bounds.term_pair_bound, ("s", "t")),
}


def _cmd_bound(args, out):
    func, names = _FORMULAS[args.formula]
    values = []
    for name in names:
        v = getattr(args, name)
        if v is None:
            raise ParseError(f"--formula {args.formula} needs --{name}")
        values.append(v)
    try:
        b = func(*values, cap_bits=args.cap_bits)
    except bounds.DependentBasesError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    print(b.report(max_digits=args.max_digits), file=out)


def _cmd_intersect(args, out):
    x = _load(args, args.x)
    y = _load(args, args.y)
    res = bounded_intersection(x, y, args.bound, diagnostics=args.diagnostics)
    print(res.format(), file=out)
    if args.diagnostics and res.per_witness:
        for w, inst in res.per_witness:
            blocks = " | ".join(
                " ".join(str(inst.terms[i]) for i in block) for block in inst.partition
            )
            print(f"# {','.join(map(str, w))}: r={len(inst.partition)} blocks: {blocks}", file=out)


def _cmd_project(args, out):
    a = _load(args, args.automaton)
    if a.direction != "msd":
        a = reverse_direction(a)
    coords = _tuple(args.coords)
    out.write(dumps_dfa(minimize(project(a, coords))))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sparseauto", description=__doc__.splitlines()[0])
    p.add_argument(
        "--keep-direction",
        action="store_true",
        help="do not normalize lsd-first automata to msd-first",
    )
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("member", help="membership of a comma-separated tuple")
    s.add_argument("automaton")
    s.add_argument("tuple")
    s.set_defaults(func=_cmd_member)

    s = sub.add_parser("sparsity", help="sparse / not-sparse verdict")
    s.add_argument("automaton")
    s.set_defaults(func=_cmd_sparsity)

    s = sub.add_parser("counts", help="accepted words per length and cumulative")
    s.add_argument("automaton")
    s.add_argument("--max-len", type=int, default=20)
    s.set_defaults(func=_cmd_counts)

    s = sub.add_parser("decompose", help="simple sparse terms of the language")
    s.add_argument("automaton")
    s.add_argument("--verify", type=int, metavar="MAX_LEN")
    s.set_defaults(func=_cmd_decompose)

    s = sub.add_parser("expsum", help="closed forms of the terms in a .term file")
    s.add_argument("terms")
    s.set_defaults(func=_cmd_expsum)

    s = sub.add_parser("enumerate", help="values of the terms up to a coordinate-sum bound")
    s.add_argument("terms")
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(func=_cmd_enumerate)

    s = sub.add_parser("bound", help="evaluate one of the explicit bounds")
    s.add_argument("--formula", choices=sorted(_FORMULAS), required=True)
    for name in ("Q", "Qp", "d", "k", "l", "n", "r", "m", "s", "t"):
        s.add_argument(f"--{name}", type=int)
    s.add_argument("--cap-bits", type=int, default=bounds.DEFAULT_CAP_BITS)
    s.add_argument("--max-digits", type=int, default=2000, help="print exact only below this many digits")
    s.set_defaults(func=_cmd_bound)

    s = sub.add_parser("intersect", help="bounded X ∩ Y for sparse X")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--diagnostics", action="store_true")
    s.set_defaults(func=_cmd_intersect)

    s = sub.add_parser("project", help="projection onto 1-based coordinates")
    s.add_argument("automaton")
    s.add_argument("--coords", required=True)
    s.set_defaults(func=_cmd_project)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out) or 0
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotSparseError, bounds.DependentBasesError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 1
    except AutomatonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
