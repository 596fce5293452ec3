"""Explicit bounds on solution counts and intersection sizes.

Every bound is a product of integer powers, so ``log10`` is computed from
the exponents directly and the exact value is only materialized when its
bit size stays below ``cap_bits``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

DEFAULT_CAP_BITS = 1 << 26


class DependentBasesError(ValueError):
    """k and l satisfy k^a = l^b for some positive a, b."""


@dataclass(frozen=True)
class BoundValue:
    formula_id: str
    inputs: dict = field(compare=False)
    log10: float
    exact: int | Fraction | None = None

    def report(self, max_digits: int | None = None) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.inputs.items())
        return (
            f"formula={self.formula_id} inputs={args} log10={self.log10!r} "
            f"exact={self._exact_text(max_digits)}"
        )

    def _exact_text(self, max_digits):
        if self.exact is None:
            return "omitted"
        if max_digits is not None and self.log10 >= max_digits:
            return "omitted"
        if isinstance(self.exact, Fraction):
            num = gmpy2.mpz(self.exact.numerator).digits()
            if self.exact.denominator == 1:
                return num
            return f"{num}/{gmpy2.mpz(self.exact.denominator).digits()}"
        return gmpy2.mpz(self.exact).digits()


def _power(base: int, exponent: int, cap_bits: int) -> int | None:
    if exponent * math.log2(base) > cap_bits:
        return None
    return int(gmpy2.mpz(base) ** exponent)


def _build(formula_id, inputs, factors, cap_bits, divisor=1):
    """``factors`` is a list of (base, exponent); the value is their product / divisor."""
    log10 = sum(e * math.log10(b) for b, e in factors) - math.log10(divisor)
    exact = 1
    for b, e in factors:
        p = _power(b, e, cap_bits)
        if p is None:
            exact = None
            break
        exact *= p
    if exact is not None and divisor != 1:
        exact = Fraction(exact, divisor)
    return BoundValue(formula_id, dict(inputs), log10, exact)


def _require(cond, msg):
    if not cond:
        raise ValueError(msg)


def av_bound(n: int, r: int, cap_bits: int = DEFAULT_CAP_BITS) -> BoundValue:
    """Non-degenerate solutions of a_1 x_1 + ... + a_n x_n = 1 in a rank-r group:
    ``(8n)^(4 n^4 (n+r+1))``."""
    _require(n >= 1 and r >= 0, "need n >= 1 and r >= 0")
    return _build("av", {"n": n, "r": r}, [(8 * n, 4 * n**4 * (n + r + 1))], cap_bits)


def nondegenerate_pair_bound(n: int, m: int, cap_bits: int = DEFAULT_CAP_BITS) -> BoundValue:
    """``(8(n+m-1))^(10(n+m)^5 - 4(n+m-1)^4)``."""
    _require(n >= 1 and m >= 1, "need n, m >= 1")
    t = n + m
    return _build(
        "nondegenerate",
        {"n": n, "m": m},
        [(8 * (t - 1), 10 * t**5 - 4 * (t - 1) ** 4)],
        cap_bits,
    )


def degenerate_pair_bound(n: int, m: int, cap_bits: int = DEFAULT_CAP_BITS) -> BoundValue:
    """``2^-(n+m) (8(n+m-1))^(10(n+m)^5 - (n+m))``, kept as an exact rational."""
    _require(n >= 1 and m >= 1, "need n, m >= 1")
    t = n + m
    return _build(
        "degenerate",
        {"n": n, "m": m},
        [(8 * (t - 1), 10 * t**5 - t)],
        cap_bits,
        divisor=2**t,
    )


def term_pair_bound(s: int, t: int, cap_bits: int = DEFAULT_CAP_BITS) -> BoundValue:
    """Intersection of two single-term sets: ``(8(s+t+1))^(10(s+t+2)^5 - (s+t+2))``."""
    _require(s >= 1 and t >= 1, "need s, t >= 1")
    u = s + t + 2
    return _build("term-pair", {"s": s, "t": t}, [(8 * (s + t + 1), 10 * u**5 - u)], cap_bits)


def chain_value(s: int, t: int, cap_bits: int = DEFAULT_CAP_BITS) -> Fraction | None:
    """``2^(s+t+2)`` choices of removed subsums times the degenerate bound at
    n = t+1, m = s+1.  Equals ``term_pair_bound(s, t)`` exactly."""
    deg = degenerate_pair_bound(t + 1, s + 1, cap_bits)
    if deg.exact is None:
        return None
    return 2 ** (s + t + 2) * Fraction(deg.exact)


def intersection_bound(
    q: int, qp: int, d: int, k: int, l: int, cap_bits: int = DEFAULT_CAP_BITS
) -> BoundValue:
    """``k^(d|Q|) l^(d|Q'|) (8(|Q|+|Q'|-1))^(10 d (|Q|+|Q'|)^5)``."""
    _require(q >= 1 and qp >= 1 and d >= 1, "need |Q|, |Q'|, d >= 1")
    _require(k >= 2 and l >= 2, "bases must be >= 2")
    if not multiplicatively_independent(k, l):
        raise DependentBasesError(f"{k} and {l} are multiplicatively dependent")
    total = q + qp
    return _build(
        "main",
        {"Q": q, "Qp": qp, "d": d, "k": k, "l": l},
        [(k, d * q), (l, d * qp), (8 * (total - 1), 10 * d * total**5)],
        cap_bits,
    )


def primitive_root(x: int) -> int:
    """Smallest r with x = r^e for some e >= 1 (largest e wins)."""
    if x < 2:
        raise ValueError("need x >= 2")
    for e in range(x.bit_length(), 1, -1):
        root, exact = gmpy2.iroot(gmpy2.mpz(x), e)
        if exact:
            return int(root)
    return x


def multiplicatively_independent(k: int, l: int) -> bool:
    """No positive a, b with k^a = l^b (equivalently different primitive roots)."""
    return primitive_root(k) != primitive_root(l)


def max_bichromatic_blocks(n: int, m: int) -> int:
    """Most blocks in a partition of n X-terms and m Y-terms where every
    block holds at least one of each: min(n, m)."""
    return min(n, m)


def blocks_within_half(n: int, m: int, r: int) -> bool:
    """The block-count inequality ``r <= (n+m)/2``."""
    return 2 * r <= n + m

