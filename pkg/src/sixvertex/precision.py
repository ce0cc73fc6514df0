"""Extended-precision scalars, closed-form geometric moments and certified sums.

Every real-valued quantity in the package is an ``mpmath.mpf`` evaluated at the
ambient ``mpmath.mp`` precision.  Routines that only need ring operations are
written so that ``fractions.Fraction`` inputs stay exact.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence, Union

import mpmath
from mpmath import mp, mpf

ExtReal = mpf
Number = Union[mpf, Fraction, int]

DEFAULT_PRECISION = 256
VALIDATION_BITS = 200


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class ConvergenceError(ArithmeticError):
    """A series did not reach its ratio regime within the index budget."""


class PrecisionError(ArithmeticError):
    """Working precision is insufficient for a reliable result."""


@contextlib.contextmanager
def working_precision(bits: int) -> Iterator[None]:
    if bits < 64:
        raise DomainError(f"precision must be at least 64 bits, got {bits}")
    with mp.workprec(bits):
        yield


def to_ext(x) -> mpf:
    """Convert ints, Fractions, decimal strings or mpf to an mpf."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def is_exact(*xs) -> bool:
    return all(isinstance(x, (Fraction, int)) for x in xs)


@lru_cache(maxsize=None)
def eulerian_numbers(m: int) -> tuple[int, ...]:
    """Row ``m`` of the Eulerian triangle, A(m, 0..m-1); A(0) = (1,)."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    row = [1]
    for k in range(1, m + 1):
        prev = row
        row = [0] * k
        for j in range(k):
            left = prev[j] if j < len(prev) else 0
            diag = prev[j - 1] if 0 <= j - 1 < len(prev) else 0
            row[j] = (j + 1) * left + (k - j) * diag
    return tuple(row)


def geometric_moment(r: Number, m: int):
    """Sum of l**m * r**l over l >= 1, in closed form.

    Uses sum_l l^m r^l = r * A_m(r) / (1 - r)^(m+1) with A_m the Eulerian
    polynomial.  Exact when ``r`` is a Fraction.
    """
    if m < 0:
        raise DomainError("moment order must be nonnegative")
    if not 0 < r < 1:
        raise DomainError(f"geometric ratio must lie in (0, 1), got {r}")
    poly = 0
    for a in reversed(eulerian_numbers(m)):
        poly = poly * r + a
    return r * poly / (1 - r) ** (m + 1)


@dataclass(frozen=True)
class TailBound:
    """Rigorous majorant of the omitted tail of a truncated series."""

    truncation_index: int
    bound: mpf

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("tail bound must be nonnegative")


def truncated_weighted_sum(
    term: Callable[[int], Number],
    majorant_ratio: Number,
    tol: Number,
    *,
    start: int = 1,
    min_index: int | None = None,
    run_length: int = 8,
    max_index: int = 200_000,
) -> tuple[mpf, TailBound]:
    """Sum ``term(l)`` for ``l >= start`` with a certified tail.

    The ratio regime |term(l+1)| <= majorant_ratio * |term(l)| is detected once
    it has held for ``run_length`` consecutive indices at or beyond
    ``min_index``.  From then on the tail after index L is bounded by
    |term(L+1)| / (1 - majorant_ratio), and summation stops when that bound is
    at most ``tol``.  Callers that know a rigorous onset of the ratio regime
    pass it as ``min_index``.
    """
    rho = to_ext(majorant_ratio)
    if not 0 < rho < 1:
        raise DomainError("majorant ratio must lie in (0, 1)")
    tol = to_ext(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    floor = start if min_index is None else max(start, min_index)

    total = mpf(0)
    streak = 0
    l = start
    current = to_ext(term(l))
    while l <= max_index:
        total += current
        nxt = to_ext(term(l + 1))
        if l >= floor and abs(nxt) <= rho * abs(current):
            streak += 1
        else:
            streak = 0
        if streak >= run_length:
            bound = abs(nxt) / (1 - rho)
            if bound <= tol:
                return total, TailBound(l, bound)
        current = nxt
        l += 1
    raise ConvergenceError(
        f"ratio condition {mpmath.nstr(rho, 5)} not established by index {max_index}"
    )


def relative_difference(x, y) -> mpf:
    x, y = to_ext(x), to_ext(y)
    scale = max(abs(x), abs(y))
    if scale == 0:
        return mpf(0)
    return abs(x - y) / scale


def validated(
    fn: Callable[[], object],
    bits: int = DEFAULT_PRECISION,
    agreement_bits: int = VALIDATION_BITS,
):
    """Evaluate ``fn`` at ``bits`` and ``2*bits``; accept if they agree.

    ``fn`` must construct its own inputs so that both runs see them at the
    respective precision.  It may return a scalar or a flat sequence of
    scalars.  Returns the result of the lower-precision run.
    """
    with working_precision(bits):
        low = fn()
    with working_precision(2 * bits):
        high = fn()
    lows = low if isinstance(low, (list, tuple)) else [low]
    highs = high if isinstance(high, (list, tuple)) else [high]
    with working_precision(2 * bits):
        threshold = mpf(2) ** (-agreement_bits)
        for a, b in zip(lows, highs):
            if relative_difference(a, b) >= threshold:
                raise PrecisionError(
                    f"{bits}-bit and {2 * bits}-bit results disagree: "
                    f"{mpmath.nstr(to_ext(a), 20)} vs {mpmath.nstr(to_ext(b), 20)}"
                )
    return low


def fmt(x, digits: int = 30) -> str:
    """Fixed-significance decimal rendering used for all printed output."""
    return mpmath.nstr(to_ext(x), digits, strip_zeros=False, min_fixed=-4, max_fixed=16)


def fsum(values: Sequence[Number]):
    if values and is_exact(*values):
        return sum(values, Fraction(0))
    return mpmath.fsum(to_ext(v) for v in values)
