"""Line-oriented text formats.

Automata (``.aut``)::

    base 2
    dim 1
    states 5
    initial 0
    accepting 3
    direction lsd
    trans 0 0 4
    trans 0 1 1
    ...

Terms (``.term``): ``base``/``dim`` headers then one term per line, written
as quoted words with optional ``(...)*`` loops, e.g. ``"11" ("0")* "1"``.
For dim 1 each character is a digit; for dim > 1 a word is a space
separated list of comma separated symbols, e.g. ``"1,0 1,1" ("0,1")* ""``.
"""

from __future__ import annotations

import re
from typing import Iterable

from .automata import MSD, Dfa, DigitWord, index_symbol, symbol_index
from .decompose import SparseTerm


class ParseError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def loads_dfa(text: str) -> Dfa:
    header: dict[str, object] = {}
    trans: dict[tuple[int, int], int] = {}
    for lineno, line in _lines(text):
        key, *args = line.split()
        if key in ("base", "dim", "states", "initial"):
            if len(args) != 1:
                raise ParseError(f"line {lineno}: {key} takes one value")
            header[key] = _int(args[0], lineno)
        elif key == "accepting":
            header["accepting"] = frozenset(_int(a, lineno) for a in args)
        elif key == "direction":
            if args not in (["msd"], ["lsd"]):
                raise ParseError(f"line {lineno}: direction must be msd or lsd")
            header["direction"] = args[0]
        elif key == "trans":
            if "base" not in header or "dim" not in header:
                raise ParseError(f"line {lineno}: trans before base/dim")
            if len(args) != 3:
                raise ParseError(f"line {lineno}: trans <from> <d1,...,dd> <to>")
            digits = [_int(t, lineno) for t in args[1].split(",")]
            if len(digits) != header["dim"] or any(
                not 0 <= x < header["base"] for x in digits
            ):
                raise ParseError(f"line {lineno}: bad symbol {args[1]!r}")
            src = _int(args[0], lineno)
            sym = symbol_index(digits, header["base"])
            if (src, sym) in trans:
                raise ParseError(f"line {lineno}: duplicate transition")
            trans[(src, sym)] = _int(args[2], lineno)
        else:
            raise ParseError(f"line {lineno}: unknown declaration {key!r}")
    for key in ("base", "dim", "states", "initial"):
        if key not in header:
            raise ParseError(f"missing {key} declaration")
    k, d, n = header["base"], header["dim"], header["states"]
    if k < 2 or d < 1 or n < 1:
        raise ParseError("need base >= 2, dim >= 1, states >= 1")
    for (src, _), dst in trans.items():
        if not (0 <= src < n and 0 <= dst < n):
            raise ParseError(f"transition {src} -> {dst} uses an unknown state")
    width = k**d
    delta = []
    for q in range(n):
        row = []
        for a in range(width):
            if (q, a) not in trans:
                sym = ",".join(map(str, index_symbol(a, k, d)))
                raise ParseError(f"missing transition from state {q} on {sym}")
            row.append(trans[(q, a)])
        delta.append(tuple(row))
    try:
        return Dfa(
            k,
            d,
            tuple(delta),
            header["initial"],
            header.get("accepting", frozenset()),
            header.get("direction", MSD),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dumps_dfa(a: Dfa) -> str:
    out = [
        f"base {a.base}",
        f"dim {a.dim}",
        f"states {a.n_states}",
        f"initial {a.initial}",
        " ".join(["accepting"] + [str(q) for q in sorted(a.accepting)]),
        f"direction {a.direction}",
    ]
    for q, row in enumerate(a.delta):
        for sym, p in enumerate(row):
            out.append(f"trans {q} {','.join(map(str, index_symbol(sym, a.base, a.dim)))} {p}")
    return "\n".join(out) + "\n"


def load_dfa(path) -> Dfa:
    with open(path) as fh:
        return loads_dfa(fh.read())


_TOKEN = re.compile(r'\s*(?:(\()\s*"([^"]*)"\s*\)\s*\*|"([^"]*)")')


def _parse_word(body: str, base: int, dim: int, lineno: int) -> DigitWord:
    try:
        if dim == 1 and not re.search(r"[\s,]", body):
            return DigitWord.from_strings((body,), base)
        syms = []
        for tok in body.split():
            digits = tuple(int(x) for x in tok.split(","))
            syms.append(digits)
        return DigitWord(base, dim, tuple(syms))
    except ValueError as exc:
        raise ParseError(f"line {lineno}: bad word {body!r}: {exc}") from None


def _parse_term(line: str, base: int, dim: int, lineno: int) -> SparseTerm:
    fixed: list[DigitWord] = []
    loops: list[DigitWord] = []
    pending = DigitWord(base, dim)  # fixed words between loops are concatenated
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse term at {line[pos:]!r}")
        pos = m.end()
        if m.group(1):
            fixed.append(pending)
            loop = _parse_word(m.group(2), base, dim, lineno)
            if not len(loop):
                raise ParseError(f"line {lineno}: loop words must be nonempty")
            loops.append(loop)
            pending = DigitWord(base, dim)
        else:
            pending = pending + _parse_word(m.group(3), base, dim, lineno)
        if line[pos:].strip() == "":
            break
    fixed.append(pending)
    return SparseTerm(base, dim, tuple(fixed), tuple(loops))


def loads_terms(text: str) -> tuple[int, int, list[SparseTerm]]:
    base = dim = None
    terms = []
    for lineno, line in _lines(text):
        key, *args = line.split()
        if key in ("base", "dim"):
            if len(args) != 1:
                raise ParseError(f"line {lineno}: {key} takes one value")
            if key == "base":
                base = _int(args[0], lineno)
            else:
                dim = _int(args[0], lineno)
        elif line[0] in "(\"":
            if base is None or dim is None:
                raise ParseError(f"line {lineno}: term before base/dim")
            terms.append(_parse_term(line, base, dim, lineno))
        else:
            raise ParseError(f"line {lineno}: unknown declaration {key!r}")
    if base is None or dim is None:
        raise ParseError("missing base or dim declaration")
    if base < 2 or dim < 1:
        raise ParseError("need base >= 2 and dim >= 1")
    return base, dim, terms


def load_terms(path) -> tuple[int, int, list[SparseTerm]]:
    with open(path) as fh:
        return loads_terms(fh.read())


def format_word(w: DigitWord) -> str:
    if w.dim == 1:
        return w.rows()[0]
    return " ".join(",".join(map(str, s)) for s in w.symbols)


def format_term(t: SparseTerm) -> str:
    parts = [f'"{format_word(t.fixed[0])}"']
    for w, v in zip(t.loops, t.fixed[1:]):
        parts.append(f'("{format_word(w)}")*')
        parts.append(f'"{format_word(v)}"')
    return " ".join(parts)


def dumps_terms(terms: Iterable[SparseTerm], base: int, dim: int) -> str:
    return "\n".join([f"base {base}", f"dim {dim}"] + [format_term(t) for t in terms]) + "\n"
