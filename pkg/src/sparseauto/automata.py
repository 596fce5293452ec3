"""Digit-tuple words, base-k evaluation and deterministic automata.

Symbols of the alphabet ``Sigma_k^d`` are d-tuples of digits.  Inside an
automaton a symbol is stored by its mixed-radix index
``a_1*k^(d-1) + ... + a_d`` so that transition rows are plain tuples.

Words (``DigitWord``) are always written most-significant digit first.  An
automaton carries a ``direction``: an ``lsd`` machine reads the written word
right-to-left.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Sequence

MSD = "msd"
LSD = "lsd"

Symbol = tuple[int, ...]


class AutomatonError(ValueError):
    """Malformed automaton or a base/dim mismatch between arguments."""


def symbol_index(symbol: Sequence[int], base: int) -> int:
    idx = 0
    for digit in symbol:
        idx = idx * base + digit
    return idx


def index_symbol(idx: int, base: int, dim: int) -> Symbol:
    digits = [0] * dim
    for i in range(dim - 1, -1, -1):
        idx, digits[i] = divmod(idx, base)
    return tuple(digits)


def alphabet(base: int, dim: int) -> list[Symbol]:
    """All symbols of ``Sigma_base^dim`` in index order."""
    return [tuple(s) for s in _cartesian(range(base), repeat=dim)]


@dataclass(frozen=True)
class DigitWord:
    """A word over d-tuples of base-k digits, written msd-first."""

    base: int
    dim: int
    symbols: tuple[Symbol, ...] = ()

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        syms = tuple(tuple(s) for s in self.symbols)
        for s in syms:
            if len(s) != self.dim:
                raise ValueError(f"symbol {s} does not have {self.dim} entries")
            if any(not 0 <= c < self.base for c in s):
                raise ValueError(f"symbol {s} has a digit outside [0, {self.base - 1}]")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def from_strings(cls, rows: Sequence[str], base: int) -> "DigitWord":
        """Build from one digit string per coordinate, e.g. ``("2110", "0020")``."""
        if isinstance(rows, str):
            rows = (rows,)
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise ValueError("coordinate strings must have equal length")
        n = lengths.pop() if lengths else 0
        syms = tuple(tuple(int(r[i], 36) for r in rows) for i in range(n))
        return cls(base, len(rows), syms)

    @classmethod
    def from_indices(cls, indices: Iterable[int], base: int, dim: int) -> "DigitWord":
        return cls(base, dim, tuple(index_symbol(i, base, dim) for i in indices))

    def indices(self) -> tuple[int, ...]:
        return tuple(symbol_index(s, self.base) for s in self.symbols)

    def rows(self) -> tuple[str, ...]:
        """Per-coordinate digit strings (digits above 9 as letters)."""
        return tuple(
            "".join(_DIGITS[s[i]] for s in self.symbols) for i in range(self.dim)
        )

    def __len__(self) -> int:
        return len(self.symbols)

    def __add__(self, other: "DigitWord") -> "DigitWord":
        if (self.base, self.dim) != (other.base, other.dim):
            raise AutomatonError("cannot concatenate words of different base/dim")
        return DigitWord(self.base, self.dim, self.symbols + other.symbols)

    def __mul__(self, times: int) -> "DigitWord":
        return DigitWord(self.base, self.dim, self.symbols * times)

    def __str__(self) -> str:
        return ",".join(self.rows()) if self.symbols else "ε"


_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def evaluate(w: DigitWord) -> tuple[int, ...]:
    """Positional base-k value of each coordinate of ``w`` (msd-first)."""
    values = [0] * w.dim
    for sym in w.symbols:
        for i, digit in enumerate(sym):
            values[i] = values[i] * w.base + digit
    return tuple(values)


def expand(t: Sequence[int], base: int) -> DigitWord:
    """Canonical expansion of a tuple: equal-length rows, no all-zero leading symbol."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    t = tuple(int(x) for x in t)
    if any(x < 0 for x in t):
        raise ValueError(f"tuple {t} has a negative coordinate")
    rows = []
    for x in t:
        digits = []
        while x:
            x, r = divmod(x, base)
            digits.append(r)
        rows.append(digits)
    n = max((len(r) for r in rows), default=0)
    syms = tuple(
        tuple(r[j] if j < len(r) else 0 for r in rows) for j in range(n - 1, -1, -1)
    )
    return DigitWord(base, len(t), syms)


@dataclass(frozen=True)
class Dfa:
    """Complete DFA over ``Sigma_base^dim``.

    ``delta[q][a]`` is the successor of state ``q`` on the symbol with index
    ``a``.  States are ``0 .. n_states-1``.
    """

    base: int
    dim: int
    delta: tuple[tuple[int, ...], ...]
    initial: int = 0
    accepting: frozenset[int] = field(default_factory=frozenset)
    direction: str = MSD

    def __post_init__(self):
        if self.base < 2 or self.dim < 1:
            raise AutomatonError(f"invalid base/dim {self.base}/{self.dim}")
        if self.direction not in (MSD, LSD):
            raise AutomatonError(f"direction must be msd or lsd, got {self.direction!r}")
        delta = tuple(tuple(row) for row in self.delta)
        n = len(delta)
        if n == 0:
            raise AutomatonError("automaton needs at least one state")
        width = self.base**self.dim
        for q, row in enumerate(delta):
            if len(row) != width:
                raise AutomatonError(f"state {q} has {len(row)} transitions, expected {width}")
            for p in row:
                if not 0 <= p < n:
                    raise AutomatonError(f"transition from {q} to unknown state {p}")
        if not 0 <= self.initial < n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        acc = frozenset(self.accepting)
        if any(not 0 <= q < n for q in acc):
            raise AutomatonError("accepting state out of range")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "accepting", acc)

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def n_symbols(self) -> int:
        return self.base**self.dim

    def run(self, indices: Iterable[int], start: int | None = None) -> int:
        """Feed symbol indices in the given order; return the final state."""
        q = self.initial if start is None else start
        for a in indices:
            q = self.delta[q][a]
        return q


def _check_word(a: Dfa, w: DigitWord):
    if (a.base, a.dim) != (w.base, w.dim):
        raise AutomatonError(
            f"word over base {w.base}/dim {w.dim} given to automaton over "
            f"base {a.base}/dim {a.dim}"
        )


def accepts(a: Dfa, w: DigitWord) -> bool:
    _check_word(a, w)
    idx = w.indices()
    if a.direction == LSD:
        idx = idx[::-1]
    return a.run(idx) in a.accepting


def member(a: Dfa, t: Sequence[int]) -> bool:
    if len(t) != a.dim:
        raise AutomatonError(f"tuple of length {len(t)} given to a dim-{a.dim} automaton")
    return accepts(a, expand(t, a.base))


# ---------------------------------------------------------------------------
# structure


def reachable(a: Dfa, start: int | None = None) -> set[int]:
    start = a.initial if start is None else start
    seen = {start}
    todo = [start]
    while todo:
        q = todo.pop()
        for p in a.delta[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def coreachable(a: Dfa) -> set[int]:
    """States from which some accepting state can be reached."""
    preds: list[set[int]] = [set() for _ in range(a.n_states)]
    for q, row in enumerate(a.delta):
        for p in row:
            preds[p].add(q)
    seen = set(a.accepting)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def useful_states(a: Dfa) -> frozenset[int]:
    return frozenset(reachable(a) & coreachable(a))


def canonical(a: Dfa) -> Dfa:
    """Renumber reachable states in BFS order (symbols by index); drop the rest."""
    order = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        for p in a.delta[q]:
            if p not in order:
                order[p] = len(order)
                queue.append(p)
    delta = [None] * len(order)
    for q, i in order.items():
        delta[i] = tuple(order[p] for p in a.delta[q])
    return Dfa(
        a.base,
        a.dim,
        tuple(delta),
        0,
        frozenset(order[q] for q in a.accepting if q in order),
        a.direction,
    )


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """Isomorphism of the reachable parts."""
    return canonical(a) == canonical(b)


def trim(a: Dfa) -> Dfa:
    """Keep useful states; route every other move to one explicit dead state."""
    useful = useful_states(a)
    if not useful:
        return Dfa(a.base, a.dim, ((0,) * a.n_symbols,), 0, frozenset(), a.direction)
    needs_dead = any(p not in useful for q in useful for p in a.delta[q])
    dead = len(useful)
    order = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        for p in a.delta[q]:
            if p in useful and p not in order:
                order[p] = len(order)
                queue.append(p)
    delta = [None] * len(order)
    for q, i in order.items():
        delta[i] = tuple(order.get(p, dead) for p in a.delta[q])
    if needs_dead:
        delta.append((dead,) * a.n_symbols)
    return Dfa(
        a.base,
        a.dim,
        tuple(delta),
        0,
        frozenset(order[q] for q in a.accepting if q in order),
        a.direction,
    )


def minimize(a: Dfa) -> Dfa:
    """Minimal complete DFA for the same word language, in canonical numbering."""
    a = canonical(a)
    n = a.n_states
    labels: dict[bool, int] = {}
    block = [labels.setdefault(q in a.accepting, len(labels)) for q in range(n)]
    n_blocks = len(labels)
    while True:
        sigs = {}
        new_block = []
        for q in range(n):
            sig = (block[q], tuple(block[p] for p in a.delta[q]))
            new_block.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == n_blocks:
            break
        block, n_blocks = new_block, len(sigs)
    delta = [None] * n_blocks
    for q in range(n):
        if delta[block[q]] is None:
            delta[block[q]] = tuple(block[p] for p in a.delta[q])
    quotient = Dfa(
        a.base,
        a.dim,
        tuple(delta),
        block[a.initial],
        frozenset(block[q] for q in a.accepting),
        a.direction,
    )
    return canonical(quotient)


def determinize(
    base: int,
    dim: int,
    moves: Sequence[dict[int, set[int]]],
    starts: Iterable[int],
    finals: Iterable[int],
    direction: str = MSD,
    eps: Sequence[set[int]] | None = None,
) -> Dfa:
    """Subset construction for an NFA given as ``moves[q][symbol] -> targets``.

    The empty subset becomes an ordinary (dead) state, so the result is complete.
    """
    finals = set(finals)

    def closure(states: Iterable[int]) -> frozenset[int]:
        out = set(states)
        if eps is None:
            return frozenset(out)
        todo = list(out)
        while todo:
            q = todo.pop()
            for p in eps[q]:
                if p not in out:
                    out.add(p)
                    todo.append(p)
        return frozenset(out)

    width = base**dim
    start = closure(starts)
    index = {start: 0}
    rows: list[tuple[int, ...]] = []
    todo = [start]
    while todo:
        subset = todo.pop(0)
        row = []
        for a in range(width):
            nxt = set()
            for q in subset:
                nxt |= moves[q].get(a, set())
            target = closure(nxt)
            if target not in index:
                index[target] = len(index)
                todo.append(target)
            row.append(index[target])
        rows.append(tuple(row))
    acc = frozenset(i for s, i in index.items() if s & finals)
    return Dfa(base, dim, tuple(rows), 0, acc, direction)


def reverse_language(a: Dfa) -> Dfa:
    """Minimal DFA for the mirror-image word language; direction flag flipped."""
    moves: list[dict[int, set[int]]] = [dict() for _ in range(a.n_states)]
    for q, row in enumerate(a.delta):
        for sym, p in enumerate(row):
            moves[p].setdefault(sym, set()).add(q)
    flipped = LSD if a.direction == MSD else MSD
    d = determinize(a.base, a.dim, moves, a.accepting, {a.initial}, flipped)
    return minimize(d)


def reverse_direction(a: Dfa) -> Dfa:
    """Member-equivalent msd-first automaton (msd input is returned unchanged)."""
    if a.direction == MSD:
        return a
    return reverse_language(a)


def normalize(a: Dfa) -> Dfa:
    return minimize(reverse_direction(a))


def product(a: Dfa, b: Dfa, mode: str = "and") -> Dfa:
    """Product automaton; ``mode`` is ``and`` (intersection) or ``or`` (union)."""
    if (a.base, a.dim, a.direction) != (b.base, b.dim, b.direction):
        raise AutomatonError("product needs equal base, dim and direction")
    if mode not in ("and", "or"):
        raise ValueError(f"unknown product mode {mode!r}")
    start = (a.initial, b.initial)
    index = {start: 0}
    rows = []
    todo = deque([start])
    while todo:
        p, q = todo.popleft()
        row = []
        for x, y in zip(a.delta[p], b.delta[q]):
            if (x, y) not in index:
                index[(x, y)] = len(index)
                todo.append((x, y))
            row.append(index[(x, y)])
        rows.append(tuple(row))
    if mode == "and":
        acc = {i for (p, q), i in index.items() if p in a.accepting and q in b.accepting}
    else:
        acc = {i for (p, q), i in index.items() if p in a.accepting or q in b.accepting}
    return Dfa(a.base, a.dim, tuple(rows), 0, frozenset(acc), a.direction)


def union(automata: Sequence[Dfa], base: int | None = None, dim: int | None = None) -> Dfa:
    if not automata:
        if base is None or dim is None:
            raise ValueError("empty union needs base and dim")
        return empty_dfa(base, dim)
    out = automata[0]
    for b in automata[1:]:
        out = minimize(product(out, b, "or"))
    return out


def empty_dfa(base: int, dim: int = 1, direction: str = MSD) -> Dfa:
    return Dfa(base, dim, ((0,) * base**dim,), 0, frozenset(), direction)


def universal_dfa(base: int, dim: int = 1, direction: str = MSD) -> Dfa:
    return Dfa(base, dim, ((0,) * base**dim,), 0, frozenset({0}), direction)


def canonical_words(base: int, dim: int = 1) -> Dfa:
    """msd-first acceptor of canonical expansions: empty, or first symbol nonzero."""
    width = base**dim
    # 0: start (accepting: empty word), 1: after nonzero lead, 2: dead
    return Dfa(
        base,
        dim,
        ((2,) + (1,) * (width - 1), (1,) * width, (2,) * width),
        0,
        frozenset({0, 1}),
    )


def restrict_canonical(a: Dfa) -> Dfa:
    """Drop accepted words that are not canonical expansions (msd-first)."""
    a = reverse_direction(a)
    return minimize(product(a, canonical_words(a.base, a.dim)))


def project(a: Dfa, coords: Sequence[int]) -> Dfa:
    """Automaton for the projection of the set onto the given 1-based coordinates."""
    coords = list(coords)
    if not coords:
        raise AutomatonError("projection needs at least one coordinate")
    if any(not 1 <= c <= a.dim for c in coords):
        raise AutomatonError(f"coordinates {coords} outside 1..{a.dim}")
    if a.direction != MSD:
        raise AutomatonError("project expects an msd-first automaton")
    src = restrict_canonical(a)
    k, dim = src.base, len(coords)

    moves: list[dict[int, set[int]]] = [dict() for _ in range(src.n_states)]
    for q, row in enumerate(src.delta):
        for sym, p in enumerate(row):
            digits = index_symbol(sym, k, src.dim)
            image = symbol_index([digits[c - 1] for c in coords], k)
            moves[q].setdefault(image, set()).add(p)

    # leading-zero closure: any state reachable on projected zeros may start
    starts = {src.initial}
    todo = [src.initial]
    while todo:
        q = todo.pop()
        for p in moves[q].get(0, ()):
            if p not in starts:
                starts.add(p)
                todo.append(p)
    d = determinize(k, dim, moves, starts, src.accepting, MSD)
    return minimize(d)


def words_up_to(a: Dfa, max_len: int) -> Iterable[tuple[int, ...]]:
    """Accepted words (symbol indices, reading order) of length <= max_len.

    Depth-first over useful states only; cost is proportional to the number
    of accepted-word prefixes.
    """
    useful = useful_states(a)
    if a.initial not in useful:
        return
    stack = [(a.initial, ())]
    while stack:
        q, word = stack.pop()
        if q in a.accepting:
            yield word
        if len(word) == max_len:
            continue
        for sym in range(a.n_symbols - 1, -1, -1):
            p = a.delta[q][sym]
            if p in useful:
                stack.append((p, word + (sym,)))
