"""Meixner polynomials at beta = 1 and the shifted monic family Q_k.

Q_k(z) = P^M_k(z - 1) is orthogonal on l = 1, 2, ... for the weight q^l and
serves as the exactly solvable comparison system for the ferroelectric weight.
Polynomials are kept as coefficient lists (constant term first) generated by
the three-term recurrence, so rational ``q`` gives exact arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp

from .izergin import factorial_product
from .precision import DomainError, Number, to_ext
from .weights import FerroParams


def _check_q(q) -> None:
    if not 0 < q < 1:
        raise DomainError(f"Meixner parameter must lie in (0, 1), got {q}")


def meixner_M(q: Number, k: int, z: Number):
    """Terminating 2F1(-k, -z; 1; 1 - 1/q) as a finite sum of k+1 terms."""
    _check_q(q)
    if k < 0:
        raise DomainError("degree must be nonnegative")
    u = 1 - 1 / q
    total = 0
    term_k = 1  # prod_{i<j} (k - i)
    term_z = 1  # prod_{i<j} (z - i)
    for j in range(k + 1):
        total = total + u**j * term_k * term_z / math.factorial(j) ** 2
        term_k *= k - j
        term_z = term_z * (z - j)
    return total


def recurrence_coefficients(q: Number, k: int) -> tuple:
    """(A_k, B_k) in z P_k = P_{k+1} + A_k P_k + B_k P_{k-1} for monic P^M."""
    return (k * q + k + q) / (1 - q), k * k * q / (1 - q) ** 2


def _poly_mul_x_minus(p: list, shift) -> list:
    out = [0] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] - shift * c
    return out


def _poly_axpy(p: list, scale, r: list) -> list:
    out = list(p)
    for i, c in enumerate(r):
        out[i] = out[i] - scale * c
    return out


@lru_cache(maxsize=256)
def _monic_coefficients(q, kmax: int, shift: int, prec: int) -> tuple:
    polys = [[1]]
    prev: list = [0]
    for k in range(kmax):
        A, B = recurrence_coefficients(q, k)
        nxt = _poly_mul_x_minus(polys[-1], A + shift)
        if k > 0:
            nxt = _poly_axpy(nxt, B, prev)
        prev = polys[-1]
        polys.append(nxt)
    return tuple(tuple(p) for p in polys)


def meixner_P_coefficients(q: Number, k: int) -> tuple:
    """Coefficients of the monic Meixner polynomial P^M_k."""
    _check_q(q)
    return _monic_coefficients(q, k, 0, mp.prec)[k]


def shifted_Q_coefficients(q: Number, k: int) -> tuple:
    """Coefficients of Q_k(z) = P^M_k(z - 1)."""
    _check_q(q)
    return _monic_coefficients(q, k, 1, mp.prec)[k]


def horner(coeffs, z):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def meixner_P(q: Number, k: int, z: Number):
    return horner(meixner_P_coefficients(q, k), z)


def meixner_P_hypergeometric(q: Number, k: int, z: Number):
    """k! / (1 - 1/q)^k * M_k(z; q)."""
    return math.factorial(k) / (1 - 1 / q) ** k * meixner_M(q, k, z)


def shifted_Q(q: Number, k: int, z: Number):
    """Q_k(z) evaluated by the shifted three-term recurrence."""
    _check_q(q)
    prev, cur = 0, 1
    for j in range(k):
        A, B = recurrence_coefficients(q, j)
        prev, cur = cur, (z - A - 1) * cur - B * prev
    return cur


def h_Q(q: Number, k: int):
    """(k!)^2 q^{k+1} / (1-q)^{2k+1}."""
    _check_q(q)
    return math.factorial(k) ** 2 * q ** (k + 1) / (1 - q) ** (2 * k + 1)


def h_M(q: Number, k: int):
    """Norm of P^M_k on l = 0, 1, ... : (k!)^2 q^k / (1-q)^{2k+1}."""
    _check_q(q)
    return math.factorial(k) ** 2 * q**k / (1 - q) ** (2 * k + 1)


def recurrence_check(q: Number, k: int, z: Number):
    """|z P_k - P_{k+1} - A_k P_k - B_k P_{k-1}| with P from the hypergeometric sum."""
    if k < 1:
        raise DomainError("recurrence check needs k >= 1")
    A, B = recurrence_coefficients(q, k)
    P = lambda j: meixner_P_hypergeometric(q, j, z)  # noqa: E731
    return abs(z * P(k) - P(k + 1) - A * P(k) - B * P(k - 1))


def jacobi_zero_bound(q: Number, k: int, shift: int = 1):
    """Upper bound on the zeros of Q_k (shift=1) or P^M_k (shift=0).

    Gershgorin on the k x k Jacobi matrix: zeros <= max_i (alpha_i + sqrt(beta_i) + sqrt(beta_{i+1})).
    """
    if k == 0:
        return to_ext(0)
    best = None
    for i in range(k):
        A, B = recurrence_coefficients(q, i)
        radius = mp.sqrt(to_ext(B))
        if i + 1 < k:
            radius += mp.sqrt(to_ext(recurrence_coefficients(q, i + 1)[1]))
        value = to_ext(A + shift) + radius
        best = value if best is None else max(best, value)
    return best


@dataclass(frozen=True)
class MeixnerSystem:
    q: Number

    def __post_init__(self):
        _check_q(self.q)

    def Q(self, k: int, z):
        return shifted_Q(self.q, k, z)

    def coefficients(self, k: int) -> tuple:
        return shifted_Q_coefficients(self.q, k)

    def h(self, k: int):
        return h_Q(self.q, k)

    def weight(self, l: int):
        return self.q**l

    def zero_bound(self, k: int):
        return jacobi_zero_bound(self.q, k, shift=1)


def tau_Q(p: FerroParams, n: int):
    """2^{n^2} prod_{k<n} h_k^Q."""
    out = 2 ** (n * n)
    for k in range(n):
        out = out * h_Q(p.q, k)
    return out


def Z_Q(p: FerroParams, n: int):
    """Comparison partition function built from tau_Q with the Izergin prefactor.

    The prefactor uses sinh(t-gamma) sinh(t+gamma) > 0, so the result equals
    F^{n^2} G^n for every n.
    """
    return p.ab ** (n * n) / factorial_product(n) ** 2 * tau_Q(p, n)


def constants_FG(p: FerroParams) -> tuple:
    """(F, G) = (sinh(t + gamma), e^{gamma - t})."""
    return mp.sinh(p.t + p.gamma), mp.exp(p.gamma - p.t)


def F_from_norms(p: FerroParams):
    """2 sinh(t-g) sinh(t+g) sqrt(q) / (1 - q), the other expression for F."""
    q = to_ext(p.q)
    return 2 * to_ext(p.ab) * mp.sqrt(q) / (1 - q)
