"""Izergin determinant in the ferroelectric parametrization.

The Hankel matrix of derivatives of phi(t) = sinh 2g / (sinh(t+g) sinh(t-g))
reduces, after pulling powers of -2 out of rows and columns, to 2^{n^2} times
the Hankel determinant of the moments m_j = sum_{l>=1} l^j w(l) of the weight
w(l) = q^l - q0^l.  Moments are closed-form, so the only numerical step is a
fraction-free elimination.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from mpmath import mp

from .precision import PrecisionError, geometric_moment, is_exact
from .weights import FerroParams

_MAX_RETRIES = 2


@dataclass(frozen=True)
class MomentTable:
    params: FerroParams
    m: tuple

    @property
    def jmax(self) -> int:
        return len(self.m) - 1


def weight_w(l: int, p: FerroParams):
    """w(l) = 2 e^{-2tl} sinh(2 gamma l) = q^l - q0^l."""
    if l < 1:
        raise ValueError("the weight lives on l = 1, 2, ...")
    return p.q**l - p.q0**l


def moments(p: FerroParams, jmax: int) -> MomentTable:
    q, q0 = p.q, p.q0
    return MomentTable(p, tuple(geometric_moment(q, j) - geometric_moment(q0, j) for j in range(jmax + 1)))


def phi(p: FerroParams):
    return p.c / p.ab


def phi_derivative(p: FerroParams, order: int):
    """d^order phi / dt^order = 2 (-2)^order m_order."""
    m = moments(p, order).m[order]
    return 2 * (-2) ** order * m


def bareiss_upper(matrix: Sequence[Sequence]) -> list[list]:
    """Fraction-free elimination without pivoting.

    Returns the upper-triangular array U with U[i][j] equal to the minor on rows
    0..i and columns 0..i-1 plus j.  In particular U[i][i] is the leading
    principal minor of order i+1.  Works for rectangular (rows <= cols) input.
    """
    M = [list(row) for row in matrix]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    prev = 1
    for k in range(rows - 1):
        pivot = M[k][k]
        if pivot == 0:
            raise PrecisionError(f"zero pivot at step {k}")
        for i in range(k + 1, rows):
            mik = M[i][k]
            Mi = M[i]
            Mk = M[k]
            for j in range(k + 1, cols):
                Mi[j] = (pivot * Mi[j] - mik * Mk[j]) / prev
            Mi[k] = 0
        prev = pivot
    return M


def hankel_minors(m: Sequence, order: int, extra_column: bool = False) -> list[list]:
    """Bareiss array of the Hankel matrix (m_{i+j}) with ``order`` rows.

    With ``extra_column`` the matrix has order+1 columns, exposing the bordered
    minors needed for recurrence coefficients.
    """
    cols = order + (1 if extra_column else 0)
    if len(m) < order + cols - 1:
        raise ValueError("not enough moments for the requested Hankel order")
    H = [[m[i + j] for j in range(cols)] for i in range(order)]
    return bareiss_upper(H)


def leading_minors(m: Sequence, order: int) -> list:
    """D_0 = 1, D_1, ..., D_order; raises PrecisionError if positivity fails."""
    U = hankel_minors(m, order)
    D = [1] + [U[i][i] for i in range(order)]
    if not is_exact(*D) and any(d <= 0 for d in D):
        raise PrecisionError("Hankel minors lost positivity; increase precision")
    return D


def guard_bits(order: int) -> int:
    """Extra working bits for a Hankel elimination of the given order."""
    return 6 * order + 32


def _with_retry(fn, p: FerroParams, order: int):
    """Run a Hankel computation with guard bits, doubling on PrecisionError."""
    if p.exact is not None:
        return fn(p, order)
    bits = mp.prec + guard_bits(order)
    err = None
    for attempt in range(_MAX_RETRIES + 1):
        try:
            with mp.workprec(bits * 2**attempt):
                value = fn(p, order)
            return +value
        except PrecisionError as exc:
            err = exc
    raise err


def _hankel_det(p: FerroParams, n: int):
    m = moments(p, 2 * n - 2).m
    return leading_minors(m, n)[n]


def tau_n(p: FerroParams, n: int):
    """tau_n = det(d^{j+k-2} phi / dt^{j+k-2}) = 2^{n^2} det(m_{j+k-2})."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 ** (n * n) * _with_retry(_hankel_det, p, n)


def factorial_product(n: int) -> int:
    """prod_{j=0}^{n-1} j!"""
    out = 1
    for j in range(n):
        out *= math.factorial(j)
    return out


def izergin_prefactor(p: FerroParams, n: int):
    return p.ab ** (n * n) / factorial_product(n) ** 2


def partition_izergin(p: FerroParams, n: int):
    return izergin_prefactor(p, n) * tau_n(p, n)
