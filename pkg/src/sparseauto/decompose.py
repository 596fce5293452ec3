"""Decomposition of sparse digit languages into simple sparse terms.

A term is ``v0 w1* v1 w2* ... ws* vs`` with nonempty loop words ``wi``.  The
recursion walks the component structure of the trimmed minimal automaton:
a state without a cycle branches on its first letter, a state on the unique
cycle ``w1`` contributes the words ending on the cycle plus, for every exit
``z x`` with ``z`` a proper prefix of ``w1``, the terms of the exit state.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automata import (
    MSD,
    Dfa,
    DigitWord,
    determinize,
    minimize,
    reverse_direction,
    useful_states,
)
from .sparsity import CycleWitness, analysis_automaton, components, find_witness, inner_moves


class NotSparseError(ValueError):
    """Raised for automata whose language is not sparse; carries the witness."""

    def __init__(self, witness: CycleWitness):
        self.witness = witness
        super().__init__(
            f"language is not sparse: state {witness.state} has first-return "
            f"words {witness.cycles[0]} and {witness.cycles[1]}"
        )


@dataclass(frozen=True)
class SparseTerm:
    """The language ``fixed[0] loops[0]* fixed[1] ... loops[s-1]* fixed[s]``."""

    base: int
    dim: int
    fixed: tuple[DigitWord, ...]
    loops: tuple[DigitWord, ...] = ()

    def __post_init__(self):
        if len(self.fixed) != len(self.loops) + 1:
            raise ValueError("a term with s loops needs s+1 fixed words")
        for w in self.fixed + self.loops:
            if (w.base, w.dim) != (self.base, self.dim):
                raise ValueError("all segments must share base and dim")
        if any(len(w) == 0 for w in self.loops):
            raise ValueError("loop words must be nonempty")

    @classmethod
    def from_indices(cls, base: int, dim: int, fixed, loops=()) -> "SparseTerm":
        return cls(
            base,
            dim,
            tuple(DigitWord.from_indices(v, base, dim) for v in fixed),
            tuple(DigitWord.from_indices(w, base, dim) for w in loops),
        )

    @property
    def star_count(self) -> int:
        return len(self.loops)

    @property
    def segments(self) -> tuple[DigitWord, ...]:
        """v0, w1, v1, ..., ws, vs."""
        out = [self.fixed[0]]
        for w, v in zip(self.loops, self.fixed[1:]):
            out += [w, v]
        return tuple(out)

    def assemble(self, reps: Sequence[int]) -> DigitWord:
        """The word with loop ``i`` repeated ``reps[i]`` times."""
        if len(reps) != self.star_count:
            raise ValueError(f"need {self.star_count} repetition counts, got {len(reps)}")
        word = self.fixed[0]
        for w, v, n in zip(self.loops, self.fixed[1:], reps):
            word = word + w * n + v
        return word


def term_count_bound(n_states: int, n_symbols: int) -> int:
    """``(|Q|-1)! (N^(|Q|-1) + ... + N + 1)``."""
    return math.factorial(n_states - 1) * sum(n_symbols**i for i in range(n_states))


def check_term_bounds(terms: Sequence[SparseTerm], n_states: int, n_symbols: int):
    """Raise AssertionError when a decomposition exceeds the count or length bounds."""
    limit = term_count_bound(n_states, n_symbols)
    if len(terms) > limit:
        raise AssertionError(f"{len(terms)} terms exceed the bound {limit}")
    for t in terms:
        loop_len = sum(len(w) for w in t.loops)
        fixed_len = sum(len(v) for v in t.fixed)
        if loop_len > n_states - 1:
            raise AssertionError(f"loop length {loop_len} exceeds {n_states - 1}")
        if fixed_len > n_symbols * (n_states - 1):
            raise AssertionError(
                f"fixed length {fixed_len} exceeds {n_symbols * (n_states - 1)}"
            )


_Raw = tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]


def decompose_trimmed(t: Dfa) -> list[SparseTerm]:
    """Terms for a trimmed, minimal, msd-first automaton with a sparse language."""
    useful = useful_states(t)
    if t.initial not in useful:
        return []
    comp = components(t, useful)
    memo: dict[int, list[_Raw]] = {}

    def terms_from(q: int) -> list[_Raw]:
        if q in memo:
            return memo[q]
        scc = comp[q]
        out: list[_Raw] = []
        if not inner_moves(t, q, scc):
            if q in t.accepting:
                out.append((((),), ()))
            for x in range(t.n_symbols):
                p = t.delta[q][x]
                if p in useful:
                    for fixed, loops in terms_from(p):
                        out.append((((x,) + fixed[0],) + fixed[1:], loops))
        else:
            cycle, on_cycle = [], []
            cur = q
            for _ in range(len(scc)):
                on_cycle.append(cur)
                (sym,) = inner_moves(t, cur, scc)
                cycle.append(sym)
                cur = t.delta[cur][sym]
            assert cur == q
            w1 = tuple(cycle)
            for i, p in enumerate(on_cycle):
                if p in t.accepting:
                    out.append((((), w1[:i]), (w1,)))
            exits = sorted(
                (t.delta[p][x], i, x)
                for i, p in enumerate(on_cycle)
                for x in range(t.n_symbols)
                if t.delta[p][x] in useful and t.delta[p][x] not in scc
            )
            for target, i, x in exits:
                head = w1[:i] + (x,)
                for fixed, loops in terms_from(target):
                    out.append((((), head + fixed[0]) + fixed[1:], (w1,) + loops))
        memo[q] = out
        return out

    return [
        SparseTerm.from_indices(t.base, t.dim, fixed, loops)
        for fixed, loops in terms_from(t.initial)
    ]


def decompose(a: Dfa) -> list[SparseTerm]:
    """Simple sparse terms whose union is the (msd-first) word language of ``a``.

    lsd-first input is normalized first.  Raises NotSparseError otherwise.
    The count and length bounds are checked against the state count of the
    trimmed minimal automaton (dead state included).
    """
    t = analysis_automaton(a)
    witness = find_witness(t)
    if witness is not None:
        raise NotSparseError(witness)
    terms = decompose_trimmed(t)
    check_term_bounds(terms, t.n_states, t.n_symbols)
    return terms


def _term_nfa(term: SparseTerm, moves, eps, start: int) -> int:
    """Append an epsilon-NFA for ``term`` starting at ``start``; return the final state."""

    def new_state():
        moves.append({})
        eps.append(set())
        return len(moves) - 1

    def chain(src, word, dst=None):
        syms = word.indices()
        cur = src
        for j, a in enumerate(syms):
            nxt = dst if (dst is not None and j == len(syms) - 1) else new_state()
            moves[cur].setdefault(a, set()).add(nxt)
            cur = nxt
        return cur

    cur = chain(start, term.fixed[0])
    for w, v in zip(term.loops, term.fixed[1:]):
        chain(cur, w, dst=cur)
        after = new_state()
        eps[cur].add(after)
        cur = chain(after, v)
    return cur


def terms_to_dfa(terms: Iterable[SparseTerm], base: int, dim: int) -> Dfa:
    """Minimal msd-first DFA for the union of the term languages."""
    moves: list[dict[int, set[int]]] = [{}]
    eps: list[set[int]] = [set()]
    finals = set()
    for term in terms:
        if (term.base, term.dim) != (base, dim):
            raise ValueError("term base/dim mismatch")
        moves.append({})
        eps.append(set())
        entry = len(moves) - 1
        eps[0].add(entry)
        finals.add(_term_nfa(term, moves, eps, entry))
    return minimize(determinize(base, dim, moves, {0}, finals, MSD, eps))


def term_to_dfa(term: SparseTerm) -> Dfa:
    return terms_to_dfa([term], term.base, term.dim)


def first_difference(a: Dfa, b: Dfa, max_len: int) -> tuple[int, ...] | None:
    """Shortest word of length <= max_len accepted by exactly one of a, b."""
    start = (a.initial, b.initial)
    prev = {start: None}
    queue = deque([(start, 0)])
    while queue:
        (p, q), depth = queue.popleft()
        if (p in a.accepting) != (q in b.accepting):
            word = []
            node = (p, q)
            while prev[node] is not None:
                node, sym = prev[node]
                word.append(sym)
            return tuple(reversed(word))
        if depth == max_len:
            continue
        for sym in range(a.n_symbols):
            nxt = (a.delta[p][sym], b.delta[q][sym])
            if nxt not in prev:
                prev[nxt] = ((p, q), sym)
                queue.append((nxt, depth + 1))
    return None


def verify_decomposition(a: Dfa, terms: Sequence[SparseTerm], max_len: int) -> bool:
    """Every word of length <= max_len is accepted by ``a`` iff some term matches it."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    a = reverse_direction(a)
    union = terms_to_dfa(terms, a.base, a.dim)
    return first_difference(a, union, max_len) is None


def project_term(term: SparseTerm, coords: Sequence[int]) -> SparseTerm:
    """Coordinatewise projection; star structure and segment lengths are kept."""
    coords = list(coords)
    if not coords or any(not 1 <= c <= term.dim for c in coords):
        raise ValueError(f"invalid coordinates {coords} for dim {term.dim}")

    def proj(w: DigitWord) -> DigitWord:
        return DigitWord(term.base, len(coords), tuple(tuple(s[c - 1] for c in coords) for s in w.symbols))

    return SparseTerm(
        term.base,
        len(coords),
        tuple(proj(v) for v in term.fixed),
        tuple(proj(w) for w in term.loops),
    )

