"""Closed forms for the values of a simple sparse term.

For ``W = v0 w1^n1 v1 ... ws^ns vs`` over base k, write ``E_j`` for
``d_s n_s + ... + d_j n_j`` (``d_i = |w_i|``, ``E_{s+1} = 0``).  Then every
coordinate of ``[W]_k`` equals ``c_0 + c_1 k^E_s + ... + c_s k^E_1`` with
rational ``c_i``.  All arithmetic here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterator, Sequence

from .automata import evaluate
from .decompose import SparseTerm


@dataclass(frozen=True)
class ExpSumForm:
    """``coefficients[i][j]`` is c_j for coordinate i; ``deltas`` are d_1..d_s."""

    base: int
    dim: int
    coefficients: tuple[tuple[Fraction, ...], ...]
    deltas: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.deltas):
            raise ValueError("loop lengths must be positive")
        if len(self.coefficients) != self.dim:
            raise ValueError("need one coefficient row per coordinate")
        if any(len(row) != len(self.deltas) + 1 for row in self.coefficients):
            raise ValueError("each coordinate needs s+1 coefficients")

    @property
    def star_count(self) -> int:
        return len(self.deltas)

    def exponents(self, n: Sequence[int]) -> tuple[int, ...]:
        """(E_{s+1}, E_s, ..., E_1): the power of k multiplying c_0..c_s."""
        out = [0]
        for d, m in zip(reversed(self.deltas), reversed(tuple(n))):
            out.append(out[-1] + d * m)
        return tuple(out)

    def __str__(self) -> str:
        return format_form(self)


def to_expsum(term: SparseTerm) -> ExpSumForm:
    k, s = term.base, term.star_count
    deltas = tuple(len(w) for w in term.loops)
    # tail[j] = |v_j| + ... + |v_s|
    tail = [0] * (s + 2)
    for j in range(s, -1, -1):
        tail[j] = tail[j + 1] + len(term.fixed[j])
    fixed_vals = [evaluate(v) for v in term.fixed]
    loop_vals = [evaluate(w) for w in term.loops]

    rows = []
    for c in range(term.dim):
        # g[j] = [w_j] / (k^|w_j| - 1), 1-based
        g = [None] + [Fraction(loop_vals[j][c], k ** deltas[j] - 1) for j in range(s)]
        coeff_of_E = {}
        for j in range(1, s + 2):
            val = Fraction(fixed_vals[j - 1][c])
            if j <= s:
                val += g[j]
            val *= k ** tail[j]
            if j >= 2:
                val -= g[j - 1] * k ** tail[j - 1]
            coeff_of_E[j] = val
        # c_i multiplies k^{E_{s+1-i}}
        rows.append(tuple(coeff_of_E[s + 1 - i] for i in range(s + 1)))
    return ExpSumForm(k, term.dim, tuple(rows), deltas)


def eval_exact(f: ExpSumForm, n: Sequence[int]) -> tuple[Fraction, ...]:
    if len(n) != f.star_count:
        raise ValueError(f"need {f.star_count} exponents, got {len(n)}")
    if any(m < 0 for m in n):
        raise ValueError("exponents must be nonnegative")
    powers = [f.base**e for e in f.exponents(n)]
    return tuple(sum(c * p for c, p in zip(row, powers)) for row in f.coefficients)


def eval_expsum(f: ExpSumForm, n: Sequence[int]) -> tuple[int, ...]:
    values = eval_exact(f, n)
    for v in values:
        if v.denominator != 1 or v < 0:
            raise ArithmeticError(f"form evaluated to {v} at {tuple(n)}; malformed form")
    return tuple(int(v) for v in values)


def exponent_cap(base: int, bound: int) -> int:
    """Largest repetition count that can matter for values with coordinate sum <= bound.

    With ``n`` repetitions of a loop containing a nonzero digit, the value is
    at least ``k^(n-1)``.  A loop repeated more often than the number of
    base-k digits of ``bound`` is therefore all zeros and preceded only by
    zeros, and dropping it leaves the value unchanged.
    """
    digits = 0
    while bound:
        bound //= base
        digits += 1
    return digits


def enumerate_points(f: ExpSumForm, bound: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(exponents, value)`` for every value with coordinate sum <= bound.

    Values of forms built from terms are nondecreasing in each exponent, so
    the search over n_1, n_2, ... stops a branch as soon as the value with
    all later exponents at zero exceeds the bound.  If a decrease is ever
    observed the whole exponent box is scanned instead.
    """
    if bound < 0:
        return
    cap = exponent_cap(f.base, bound)
    s = f.star_count

    def fallback():
        for n in _cartesian(range(cap + 1), repeat=s):
            v = eval_expsum(f, n)
            if sum(v) <= bound:
                yield n, v

    out = []

    def search(prefix: tuple[int, ...]) -> bool:
        if len(prefix) == s:
            return True
        previous = None
        for m in range(cap + 1):
            n = prefix + (m,) + (0,) * (s - len(prefix) - 1)
            v = eval_expsum(f, n)
            total = sum(v)
            if previous is not None and total < previous:
                return False
            previous = total
            if total > bound:
                break
            if len(prefix) + 1 == s:
                out.append((n, v))
            elif not search(prefix + (m,)):
                return False
        return True

    if s == 0:
        v = eval_expsum(f, ())
        if sum(v) <= bound:
            yield (), v
        return
    if search(()):
        yield from out
    else:
        yield from fallback()


def value_order(t: tuple[int, ...]):
    return (sum(t), t)


def enumerate_values(f: ExpSumForm, bound: int) -> list[tuple[int, ...]]:
    """Distinct values with coordinate sum <= bound, by sum then lexicographically."""
    return sorted({v for _, v in enumerate_points(f, bound)}, key=value_order)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_form(f: ExpSumForm) -> str:
    """``c0 + c1*k^(d_s*n_s) + ...``, one line per coordinate when dim > 1."""
    s = f.star_count
    exps = []
    for i in range(1, s + 1):
        # c_i multiplies k^(d_s n_s + ... + d_{s-i+1} n_{s-i+1})
        parts = [f"{f.deltas[j - 1]}*n{j}" for j in range(s, s - i, -1)]
        exps.append(" + ".join(parts))
    lines = []
    for c, row in enumerate(f.coefficients):
        pieces = [_fmt_rational(row[0])]
        for i in range(1, s + 1):
            pieces.append(f"{_fmt_rational(row[i])}*{f.base}^({exps[i - 1]})")
        expr = " + ".join(pieces)
        lines.append(expr if f.dim == 1 else f"x{c + 1} = {expr}")
    return "\n".join(lines)
