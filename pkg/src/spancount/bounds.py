"""Exact big-number arithmetic for the counting expressions.

Transcendental quantities (e^{-n}, log n) are carried as rigorous
rational brackets: decimal exp/ln are correctly rounded to the working
precision (always half-even, whatever the context rounding says), so
widening that value by one unit in the last place on each side gives
guaranteed lower and upper rational bounds.  Every comparison against
an exact integer count uses the conservative side of the bracket, so
no check can pass or fail on rounding direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import InvalidQueryError


@dataclass(frozen=True)
class RationalBracket:
    """Exact rational lower/upper bounds on a real quantity."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidQueryError(f"bracket lower bound {self.lo} exceeds upper {self.hi}")

    def __contains__(self, value) -> bool:
        return self.lo <= Fraction(value) <= self.hi

    def surely_le(self, value) -> bool:
        """True only if the bracketed quantity is certainly <= value."""
        return self.hi <= Fraction(value)

    def surely_ge(self, value) -> bool:
        return self.lo >= Fraction(value)

    def midpoint_float(self) -> float:
        return float((self.lo + self.hi) / 2)


@dataclass(frozen=True)
class CountBound:
    """A counting quantity: log bracket plus the exact value when known.

    log_value is a bracket on the natural logarithm, or None when the
    quantity is zero.
    """

    log_value: Optional[RationalBracket]
    exact_value: Optional[Fraction] = None


def _digits_for_bits(bits: int) -> int:
    # 64 fractional bits ~ 19.3 decimal digits; pad for safety
    return max(10, int(bits * 0.30103) + 5)


def _ulp_bracket(d: Decimal, prec: int) -> Tuple[Fraction, Fraction]:
    """Widen a correctly rounded decimal by one unit in the last place.

    Decimal exp/ln always round half-even, so the true value lies
    strictly within one ulp of d in either direction.
    """
    ulp = Fraction(Decimal(1).scaleb(d.adjusted() - prec + 1))
    return Fraction(d) - ulp, Fraction(d) + ulp


def exp_neg_bracket(n: int, precision_bits: int = 64) -> Tuple[Fraction, Fraction]:
    """Rigorous rational bracket of e^{-n} for integer n >= 0."""
    if n < 0:
        raise InvalidQueryError("n must be non-negative")
    if n == 0:
        return Fraction(1), Fraction(1)
    prec = _digits_for_bits(precision_bits)
    return _ulp_bracket(Context(prec=prec).exp(Decimal(-n)), prec)


def _ln_int_bracket(p: int, prec: int) -> Tuple[Fraction, Fraction]:
    if p == 1:
        return Fraction(0), Fraction(0)
    return _ulp_bracket(Context(prec=prec).ln(Decimal(p)), prec)


def log_bracket(x, precision_bits: int = 64) -> RationalBracket:
    """Rigorous rational bracket of ln(x) for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise InvalidQueryError(f"log bracket needs x > 0, got {x}")
    prec = _digits_for_bits(precision_bits)
    # ln(p/q) = ln p - ln q, combining the conservative sides
    lo_p, hi_p = _ln_int_bracket(x.numerator, prec)
    lo_q, hi_q = _ln_int_bracket(x.denominator, prec)
    return RationalBracket(lo_p - hi_q, hi_p - lo_q)


def multinomial(n: int, sizes: Sequence[int]) -> int:
    """Exact multinomial coefficient n! / (n_1! ... n_r!)."""
    sizes = tuple(sizes)
    if any(s < 0 for s in sizes):
        raise InvalidQueryError("sizes must be non-negative")
    if sum(sizes) != n:
        raise InvalidQueryError(f"sizes sum to {sum(sizes)}, expected {n}")
    out = 1
    remaining = n
    for s in sizes:
        out *= math.comb(remaining, s)
        remaining -= s
    return out


def log_growth_bound(n: int, C, t: Optional[int] = None, precision_bits: int = 64) -> CountBound:
    """Log bracket of exp((1 - 1/t) n log n - C n); t omitted means the
    plain exp(n log n - C n) cycle-count bound."""
    if n < 1:
        raise InvalidQueryError("n must be >= 1")
    C = Fraction(C)
    if C < 0:
        raise InvalidQueryError("C must be >= 0")
    factor = Fraction(1) if t is None else 1 - Fraction(1, t)
    logn = log_bracket(n, precision_bits)
    scale = factor * n
    lo = logn.lo * scale - C * n
    hi = logn.hi * scale - C * n
    return CountBound(RationalBracket(lo, hi))


def count_bound_from_exact(value: Fraction, precision_bits: int = 64) -> CountBound:
    """Wrap an exact non-negative rational as a CountBound."""
    value = Fraction(value)
    if value < 0:
        raise InvalidQueryError("counts cannot be negative")
    if value == 0:
        return CountBound(None, exact_value=value)
    return CountBound(log_bracket(value, precision_bits), exact_value=value)


def expected_random_count(
    n: int,
    k: int,
    ell: int,
    delta,
    budget: Optional[int] = None,
    precision_bits: int = 64,
) -> CountBound:
    """Psi_{k,ell}(n, delta): expected Hamilton ell-cycle count in the
    binomial random k-graph, as (complete-host count) * delta^(n/(k-ell)).

    The complete-host count comes from the exact enumerator, so n must
    stay inside its exhaustive budget; each Hamilton ell-cycle has
    exactly n/(k-ell) edges.
    """
    from .hypergraphs import complete
    from .paths import enumerate_hamilton_ell_cycles

    delta = Fraction(delta)
    if not 0 <= delta <= 1:
        raise InvalidQueryError(f"delta = {delta} must lie in [0, 1]")
    count = enumerate_hamilton_ell_cycles(complete(n, k), ell, mode="count", budget=budget)
    value = count * delta ** (n // (k - ell))
    return count_bound_from_exact(value, precision_bits)
