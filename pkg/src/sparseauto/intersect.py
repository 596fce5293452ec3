"""Bounded enumeration of X ∩ Y for a sparse k-automatic X and an l-automatic Y.

The sparse side is enumerated through its closed forms (there are only
polylogarithmically many elements below a bound) and each candidate is
tested against Y's automaton.  Results are complete below the search bound
and make no claim beyond it.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .automata import AutomatonError, Dfa, index_symbol, member, minimize, normalize, product
from .bounds import DEFAULT_CAP_BITS, BoundValue, intersection_bound, multiplicatively_independent
from .decompose import NotSparseError, decompose
from .expsum import ExpSumForm, enumerate_points, eval_expsum, to_expsum, value_order
from .sparsity import analysis_automaton, find_witness


@dataclass(frozen=True)
class UnitEquationInstance:
    """``d_0 X_0 + ... + d_t X_t - c_0 Y_0 - ... - c_s Y_s = 0`` at one witness.

    Term ``i`` of the signed list is lhs term ``i`` for ``i <= t`` and rhs
    term ``i - t - 1`` after that.  Zero-coefficient terms are left out of
    the partition (``dropped``).
    """

    value: int
    lhs_coeffs: tuple[Fraction, ...]
    rhs_coeffs: tuple[Fraction, ...]
    lhs_powers: tuple[int, ...]
    rhs_powers: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]
    dropped: tuple[int, ...] = ()

    @property
    def terms(self) -> tuple[Fraction, ...]:
        lhs = [d * x for d, x in zip(self.lhs_coeffs, self.lhs_powers)]
        rhs = [-c * y for c, y in zip(self.rhs_coeffs, self.rhs_powers)]
        return tuple(lhs + rhs)

    def side(self, i: int) -> str:
        return "lhs" if i < len(self.lhs_coeffs) else "rhs"

    @property
    def meets_both_sides(self) -> bool:
        return all(len({self.side(i) for i in block}) == 2 for block in self.partition)

    @property
    def r_bound_holds(self) -> bool | None:
        """``r <= (number of terms)/2`` when every block meets both sides, else None."""
        if not self.meets_both_sides:
            return None
        used = sum(len(b) for b in self.partition)
        return 2 * len(self.partition) <= used


def subsum_diagnostics(
    fx: ExpSumForm, fy: ExpSumForm, nx: Sequence[int], ny: Sequence[int]
) -> UnitEquationInstance:
    """Split the unit equation at a common value into minimal vanishing subsums.

    Blocks are chosen greedily: the lowest unplaced term together with the
    smallest (then lexicographically first) set of other unplaced terms
    that cancels it.  A smallest cancelling set is automatically minimal.
    """
    if fx.dim != 1 or fy.dim != 1:
        raise ValueError("subsum diagnostics are defined for dim 1")
    (ax,) = eval_expsum(fx, nx)
    (ay,) = eval_expsum(fy, ny)
    if ax != ay:
        raise ValueError(f"forms disagree at the witness: {ax} != {ay}")
    lhs_coeffs = fy.coefficients[0]
    rhs_coeffs = fx.coefficients[0]
    lhs_powers = tuple(fy.base**e for e in fy.exponents(ny))
    rhs_powers = tuple(fx.base**e for e in fx.exponents(nx))
    values = [d * x for d, x in zip(lhs_coeffs, lhs_powers)]
    values += [-c * y for c, y in zip(rhs_coeffs, rhs_powers)]

    remaining = [i for i, v in enumerate(values) if v != 0]
    dropped = tuple(i for i, v in enumerate(values) if v == 0)
    blocks = []
    while remaining:
        head, rest = remaining[0], remaining[1:]
        block = None
        for size in range(1, len(rest) + 1):
            for combo in combinations(rest, size):
                if values[head] + sum(values[i] for i in combo) == 0:
                    block = (head,) + combo
                    break
            if block:
                break
        if block is None:
            raise ArithmeticError("signed terms do not cancel")
        blocks.append(block)
        remaining = [i for i in remaining if i not in block]
    return UnitEquationInstance(
        ax, lhs_coeffs, rhs_coeffs, lhs_powers, rhs_powers, tuple(blocks), dropped
    )


@dataclass(frozen=True)
class IntersectionResult:
    witnesses: tuple[tuple[int, ...], ...]
    search_bound: int
    exhaustive_below: float
    theory_bound: BoundValue | None = None
    per_witness: tuple[tuple[tuple[int, ...], UnitEquationInstance], ...] | None = None
    same_base: bool = False

    def format(self) -> str:
        log10 = "none" if self.theory_bound is None else repr(self.theory_bound.log10)
        complete = min(self.search_bound, self.exhaustive_below)
        lines = [f"bound={self.search_bound} complete_below={int(complete)} paper_bound_log10={log10}"]
        lines += [",".join(map(str, w)) for w in self.witnesses]
        return "\n".join(lines)


def sparse_points(a: Dfa, bound: int) -> dict[tuple[int, ...], tuple[ExpSumForm, tuple[int, ...]]]:
    """Elements of a sparse set with coordinate sum <= bound, each with one
    (form, exponents) pair producing it."""
    found = {}
    for term in decompose(a):
        form = to_expsum(term)
        for n, v in enumerate_points(form, bound):
            if v not in found and member(a, v):
                found[v] = (form, n)
    return found


def sparse_elements(a: Dfa, bound: int) -> list[tuple[int, ...]]:
    return sorted(sparse_points(a, bound), key=value_order)


def bounded_intersection(
    x: Dfa,
    y: Dfa,
    bound: int,
    diagnostics: bool = False,
    cap_bits: int = DEFAULT_CAP_BITS,
) -> IntersectionResult:
    """Elements of X ∩ Y with coordinate sum <= bound; X must be sparse."""
    if x.dim != y.dim:
        raise AutomatonError(f"dimension mismatch: {x.dim} vs {y.dim}")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    xw = find_witness(analysis_automaton(x))
    if xw is not None:
        raise NotSparseError(xw)
    xm, ym = minimize(normalize(x)), minimize(normalize(y))

    if x.base == y.base:
        both = minimize(product(xm, ym))
        return IntersectionResult(
            tuple(sparse_elements(both, bound)), bound, math.inf, None, None, True
        )

    points = sparse_points(xm, bound)
    witnesses = tuple(sorted((v for v in points if member(ym, v)), key=value_order))

    y_sparse = find_witness(analysis_automaton(ym)) is None
    theory = None
    if y_sparse and multiplicatively_independent(x.base, y.base):
        theory = intersection_bound(xm.n_states, ym.n_states, x.dim, x.base, y.base, cap_bits)

    per = None
    if diagnostics and y_sparse and x.dim == 1:
        ypoints = sparse_points(ym, bound)
        per = tuple(
            (w, subsum_diagnostics(points[w][0], ypoints[w][0], points[w][1], ypoints[w][1]))
            for w in witnesses
        )
    return IntersectionResult(witnesses, bound, bound, theory, per, False)


def brute_force_intersection(x: Dfa, y: Dfa, bound: int) -> list[tuple[int]]:
    """Reference scan of 0..bound (dim 1) through both automata."""
    if x.dim != 1 or y.dim != 1:
        raise ValueError("brute force scan is for dim 1")
    return [(n,) for n in range(bound + 1) if member(x, (n,)) and member(y, (n,))]


def pi_count(a: Dfa, x: int) -> int:
    """Number of tuples in the set with coordinate sum <= x.

    Digit DP over canonical words of each length, msd-first.  Alongside the
    automaton state it tracks ``floor(x / k^rest) - (prefix sum)`` clamped to
    ``[0, d]``: once the slack reaches d it can never drop below d, and once
    negative it can never recover.
    """
    if x < 0:
        return 0
    a = normalize(a)
    k, d = a.base, a.dim
    sums = [sum(index_symbol(s, k, d)) for s in range(a.n_symbols)]
    total = 1 if a.initial in a.accepting else 0
    n_digits = 0
    while k**n_digits <= x:
        n_digits += 1
    for length in range(1, n_digits + 1):
        cur = {(a.initial, min(d, x // k**length)): 1}
        for j in range(length):
            hi = x // k ** (length - j)
            lo = x // k ** (length - j - 1)
            xd = lo - k * hi
            nxt = defaultdict(int)
            for (q, slack), c in cur.items():
                for sym in range(1 if j == 0 else 0, a.n_symbols):
                    ns = slack * k + xd - sums[sym]
                    if ns < 0:
                        continue
                    nxt[(a.delta[q][sym], min(ns, d))] += c
            cur = nxt
        total += sum(c for (q, _), c in cur.items() if q in a.accepting)
    return total
