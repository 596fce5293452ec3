"""Sparsity of regular digit languages.

A trimmed automaton accepts a sparse language exactly when every strongly
connected component that carries a cycle is a single simple cycle, i.e. each
of its states has exactly one transition staying inside the component.
"""

from __future__ import annotations

import math
import statistics
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .automata import Dfa, minimize, reverse_direction, trim, useful_states


@dataclass(frozen=True)
class CycleWitness:
    """A useful state with two distinct first-return words.

    ``prefix`` leads from the initial state to ``state`` and ``suffix`` from
    ``state`` to an accepting state; all words are symbol-index tuples on the
    trimmed minimal automaton.
    """

    state: int
    cycles: tuple[tuple[int, ...], tuple[int, ...]]
    prefix: tuple[int, ...]
    suffix: tuple[int, ...]

    def growth_exponent(self, n_from: int) -> Fraction | None:
        """Exponent e with ``f_L(n) >= 2**(n*e)`` for every ``n >= n_from``.

        ``prefix {u,v}^m suffix`` gives 2**m distinct accepted words of
        length at most ``|prefix| + |suffix| + m*max(|u|,|v|)``.  Returns
        None when ``n_from`` is too small for a positive exponent.
        """
        span = max(len(c) for c in self.cycles)
        slack = len(self.prefix) + len(self.suffix) + span - 1
        if n_from <= slack:
            return None
        return Fraction(n_from - slack, span * n_from)


@dataclass(frozen=True)
class SparsityReport:
    is_sparse: bool
    witness: CycleWitness | None
    poly_degree: int | None
    counts: tuple[int, ...]
    term_count: int | None = None
    alpha_log2: Fraction | None = None
    alpha_from: int | None = None

    @property
    def alpha(self) -> float | None:
        """Certified base of exponential growth (non-sparse only)."""
        if self.alpha_log2 is None:
            return None
        return 2.0 ** float(self.alpha_log2)


def analysis_automaton(a: Dfa) -> Dfa:
    """The trimmed minimal msd-first automaton all analyses run on."""
    return trim(minimize(reverse_direction(a)))


def components(a: Dfa, states: frozenset[int]) -> dict[int, frozenset[int]]:
    """Strongly connected components of the subgraph induced on ``states``."""
    reach = {}
    for q in states:
        seen = {q}
        todo = [q]
        while todo:
            p = todo.pop()
            for r in a.delta[p]:
                if r in states and r not in seen:
                    seen.add(r)
                    todo.append(r)
        reach[q] = seen
    comp = {}
    for q in states:
        comp[q] = frozenset(p for p in reach[q] if q in reach[p])
    return comp


def inner_moves(a: Dfa, q: int, comp: frozenset[int]) -> list[int]:
    """Symbols whose transition from ``q`` stays inside ``comp``."""
    return [sym for sym, p in enumerate(a.delta[q]) if p in comp]


def _shortest(a: Dfa, src: int, targets, allowed) -> tuple[int, ...]:
    if src in targets:
        return ()
    prev = {src: None}
    queue = deque([src])
    while queue:
        q = queue.popleft()
        for sym, p in enumerate(a.delta[q]):
            if p in allowed and p not in prev:
                prev[p] = (q, sym)
                if p in targets:
                    word = []
                    while prev[p] is not None:
                        p, s = prev[p]
                        word.append(s)
                    return tuple(reversed(word))
                queue.append(p)
    raise ValueError("target unreachable")


def find_witness(a: Dfa) -> CycleWitness | None:
    """Two-cycle witness on a trimmed automaton, or None when sparse."""
    useful = useful_states(a)
    comp = components(a, useful)
    for q in sorted(useful):
        moves = inner_moves(a, q, comp[q])
        if len(moves) < 2:
            continue
        cycles = []
        for sym in moves[:2]:
            back = _shortest(a, a.delta[q][sym], {q}, comp[q])
            cycles.append((sym,) + back)
        return CycleWitness(
            state=q,
            cycles=(cycles[0], cycles[1]),
            prefix=_shortest(a, a.initial, {q}, useful),
            suffix=_shortest(a, q, a.accepting, useful),
        )
    return None


def star_depth(a: Dfa) -> int:
    """Most cyclic components met on one path from the initial state (trimmed input)."""
    useful = useful_states(a)
    if a.initial not in useful:
        return 0
    comp = components(a, useful)
    cyclic = {c for c in comp.values() if any(inner_moves(a, q, c) for q in c)}
    best: dict[frozenset[int], int] = {}

    def depth(c: frozenset[int]) -> int:
        if c in best:
            return best[c]
        below = 0
        for q in c:
            for p in a.delta[q]:
                if p in useful and p not in c:
                    below = max(below, depth(comp[p]))
        best[c] = below + (1 if c in cyclic else 0)
        return best[c]

    return depth(comp[a.initial])


def count_words(a: Dfa, n_max: int) -> list[int]:
    """Number of accepted words of each exact length 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vec = [0] * a.n_states
    vec[a.initial] = 1
    out = []
    for n in range(n_max + 1):
        out.append(sum(vec[q] for q in a.accepting))
        if n == n_max:
            break
        nxt = [0] * a.n_states
        for q, c in enumerate(vec):
            if c:
                for p in a.delta[q]:
                    nxt[p] += c
        vec = nxt
    return out


def cumulative(counts: list[int]) -> list[int]:
    out, total = [], 0
    for c in counts:
        total += c
        out.append(total)
    return out


def classify(a: Dfa, n_max: int = 20, alpha_from: int = 10) -> SparsityReport:
    """Sparse/non-sparse verdict with counts, degree or growth certificate."""
    t = analysis_automaton(a)
    counts = tuple(cumulative(count_words(t, n_max)))
    witness = find_witness(t)
    if witness is None:
        from .decompose import decompose_trimmed

        return SparsityReport(
            is_sparse=True,
            witness=None,
            poly_degree=star_depth(t),
            counts=counts,
            term_count=len(decompose_trimmed(t)),
        )
    n_from = alpha_from
    exponent = witness.growth_exponent(n_from)
    while exponent is None:
        n_from += 1
        exponent = witness.growth_exponent(n_from)
    return SparsityReport(
        is_sparse=False,
        witness=witness,
        poly_degree=None,
        counts=counts,
        alpha_log2=exponent,
        alpha_from=n_from,
    )


def is_sparse(a: Dfa) -> bool:
    return find_witness(analysis_automaton(a)) is None


@dataclass(frozen=True)
class GrowthEstimate:
    kind: str  # "polynomial" or "exponential"
    value: float  # fitted degree, or per-length growth ratio


def growth_estimate(a: Dfa, n_max: int = 64) -> GrowthEstimate:
    """Numerical annotation of the structural verdict.

    Sparse: slope of log f_L(n) against log n over the upper half of lengths.
    Otherwise: geometric mean of successive ratios of f_L over that window.
    """
    if n_max < 8:
        raise ValueError("n_max must be >= 8")
    t = analysis_automaton(a)
    cum = cumulative(count_words(t, n_max))
    lo = n_max // 2
    if find_witness(t) is None:
        pts = [(math.log(n), math.log(cum[n])) for n in range(lo, n_max + 1) if cum[n] > 0]
        if len(pts) < 2 or len({y for _, y in pts}) == 1:
            return GrowthEstimate("polynomial", 0.0)
        slope, _ = statistics.linear_regression([x for x, _ in pts], [y for _, y in pts])
        return GrowthEstimate("polynomial", slope)
    start = next(n for n in range(lo, n_max + 1) if cum[n] > 0 or n == n_max)
    if start == n_max:
        raise ValueError(f"no accepted word of length <= {n_max - 1}; raise n_max")
    ratio = math.exp((math.log(cum[n_max]) - math.log(cum[start])) / (n_max - start))
    return GrowthEstimate("exponential", ratio)
