"""Ready-made automata used in the examples, tests and documentation."""

from __future__ import annotations

from .automata import LSD, Dfa, DigitWord, minimize
from .decompose import SparseTerm, terms_to_dfa


def three_pow2_plus1() -> Dfa:
    """The five-state lsd-first machine for {3*2^n + 1 : n >= 1}.

    q0 -1-> q1, q1 loops on 0, q1 -1-> q2, q2 -1-> q3 (accepting);
    every other move ends in the sink q4.
    """
    return Dfa(
        base=2,
        dim=1,
        delta=((4, 1), (1, 2), (4, 3), (4, 4), (4, 4)),
        initial=0,
        accepting=frozenset({3}),
        direction=LSD,
    )


def term(base: int, fixed, loops=()) -> SparseTerm:
    """Term from digit strings, e.g. ``term(2, ["11", "1"], ["0"])`` for 11 0* 1.

    For dim > 1 pass tuples of equal-length strings per segment.
    """

    def word(x):
        return DigitWord.from_strings(x, base)

    fixed = [word(v) for v in fixed]
    return SparseTerm(base, fixed[0].dim, tuple(fixed), tuple(word(w) for w in loops))


def from_terms(*terms: SparseTerm) -> Dfa:
    return terms_to_dfa(terms, terms[0].base, terms[0].dim)


def powers(base: int) -> Dfa:
    """{base^n : n >= 0}."""
    return from_terms(term(base, ["1", ""], ["0"]))


def powers_plus_one(base: int) -> Dfa:
    """{base^n + 1 : n >= 0}; n = 0 gives 2."""
    return from_terms(term(base, ["2" if base > 2 else "10"]), term(base, ["1", "1"], ["0"]))


def digits_avoiding(base: int, banned: set[int]) -> Dfa:
    """Naturals whose base-k expansion avoids the given digits (words over the rest)."""
    allowed = [d for d in range(base) if d not in banned]
    sink = 1
    row = tuple(0 if d in allowed else sink for d in range(base))
    return minimize(Dfa(base, 1, (row, (sink,) * base), 0, frozenset({0})))
