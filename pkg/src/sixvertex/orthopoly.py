"""Monic orthogonal polynomials on l = 1, 2, ... for w(l) = q^l - q0^l.

Norms come from ratios of leading Hankel minors, recurrence coefficients from
the bordered minors of the same elimination.  The comparison with the Meixner
system uses certified truncated sums whose ratio regime is located from a
Gershgorin bound on the polynomial zeros.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from mpmath import mp, mpf

from . import meixner
from .izergin import guard_bits, hankel_minors, izergin_prefactor, moments
from .precision import PrecisionError, TailBound, is_exact, to_ext, truncated_weighted_sum
from .weights import FerroParams

DEFAULT_KMAX = 24
DEFAULT_SUM_TOL = mpf(10) ** -45


@dataclass(frozen=True)
class OPSystem:
    params: FerroParams
    kmax: int
    D: tuple
    h: tuple
    alpha: tuple
    beta: tuple

    def meixner(self) -> meixner.MeixnerSystem:
        return meixner.MeixnerSystem(self.params.q)


def _build(p: FerroParams, kmax: int) -> OPSystem:
    m = moments(p, 2 * kmax + 1).m
    U = hankel_minors(m, kmax + 1, extra_column=True)
    D = [1] + [U[k][k] for k in range(kmax + 1)]
    exact = is_exact(*D)
    if not exact and any(d <= 0 for d in D):
        raise PrecisionError("Hankel minors lost positivity")
    h = [D[k + 1] / D[k] for k in range(kmax + 1)]
    # subleading coefficient of P_k is -U[k-1][k] / D_k
    sub = [0] + [-U[k - 1][k] / D[k] for k in range(1, kmax + 2)]
    alpha = [sub[k] - sub[k + 1] for k in range(kmax + 1)]
    beta = [0] + [h[k] / h[k - 1] for k in range(1, kmax + 1)]
    return OPSystem(p, kmax, tuple(D), tuple(h), tuple(alpha), tuple(beta))


def build(p: FerroParams, kmax: int = DEFAULT_KMAX) -> OPSystem:
    """Norms and recurrence coefficients up to degree ``kmax``.

    In exact mode (rational q, q0) every entry is a Fraction.  Otherwise the
    elimination runs with guard bits and is retried at doubled precision if
    positivity of the minors fails; results are rounded back to the caller's
    precision.
    """
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if p.exact is not None:
        return _build(p, kmax)
    prec = mp.prec
    extra = guard_bits(kmax + 1)
    for attempt in range(3):
        try:
            with mp.workprec((prec + extra) * 2**attempt):
                sys = _build(p, kmax)
            break
        except PrecisionError:
            continue
    else:
        raise PrecisionError(f"Hankel elimination failed up to {(prec + extra) * 4} bits")
    rnd = lambda xs: tuple(+x if isinstance(x, mpf) else x for x in xs)  # noqa: E731
    return OPSystem(p, kmax, rnd(sys.D), rnd(sys.h), rnd(sys.alpha), rnd(sys.beta))


def eval_P(sys: OPSystem, k: int, z):
    """P_k(z) through the three-term recurrence."""
    if not 0 <= k <= sys.kmax:
        raise ValueError(f"degree {k} outside 0..{sys.kmax}")
    prev, cur = 0, 1
    for j in range(k):
        prev, cur = cur, (z - sys.alpha[j]) * cur - sys.beta[j] * prev
    return cur


def P_coefficients(sys: OPSystem, k: int) -> tuple:
    """Power-basis coefficients of P_k, constant term first."""
    prev: list = [0]
    cur: list = [1]
    for j in range(k):
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += c
            nxt[i] -= sys.alpha[j] * c
        for i, c in enumerate(prev):
            nxt[i] -= sys.beta[j] * c
        prev, cur = cur, nxt
    return tuple(cur)


def zero_bound(sys: OPSystem, k: int) -> mpf:
    """Gershgorin bound on the largest zero of P_k."""
    if k == 0:
        return mpf(0)
    sq = [mp.sqrt(to_ext(b)) for b in sys.beta[: k]]
    best = None
    for i in range(k):
        value = to_ext(sys.alpha[i]) + sq[i] + (sq[i + 1] if i + 1 < k else 0)
        best = value if best is None else max(best, value)
    return best


def certified_series(
    poly: Callable[[int], object],
    degree: int,
    zeros_below,
    base,
    tol,
    weight: Callable[[int], object] | None = None,
) -> tuple[mpf, TailBound]:
    """Certified sum over l >= 1 of poly(l) * weight(l).

    ``poly`` must have only real zeros, all at most ``zeros_below``; ``weight``
    defaults to base**l and must satisfy weight(l+1) <= base * weight(l).
    Beyond index L0 with base * (1 + 1/(L0 - R))^degree <= (1 + base)/2 the
    term ratio is rigorously below (1 + base)/2.
    """
    r = to_ext(base)
    rho = (1 + r) / 2
    R = max(to_ext(zeros_below), mpf(0))
    if degree == 0:
        L0 = 1
    else:
        L0 = int(mp.ceil(R + 1 / ((rho / r) ** (mpf(1) / degree) - 1))) + 1
    if weight is None:
        term = lambda l: poly(l) * r**l  # noqa: E731
    else:
        term = lambda l: poly(l) * weight(l)  # noqa: E731
    return truncated_weighted_sum(term, rho, tol, min_index=L0)


def _ext_system(sys: OPSystem):
    """mpf copies of the recurrence data for fast numeric evaluation."""
    return [to_ext(a) for a in sys.alpha], [to_ext(b) for b in sys.beta]


def _make_P(sys: OPSystem, k: int):
    alpha, beta = _ext_system(sys)

    def P(l):
        prev, cur = mpf(0), mpf(1)
        for j in range(k):
            prev, cur = cur, (l - alpha[j]) * cur - beta[j] * prev
        return cur

    return P


def _make_Q(q, k: int):
    coeffs = [tuple(to_ext(x) for x in meixner.recurrence_coefficients(q, j)) for j in range(k)]

    def Q(l):
        prev, cur = mpf(0), mpf(1)
        for A, B in coeffs:
            prev, cur = cur, (l - A - 1) * cur - B * prev
        return cur

    return Q


def _PQ_bound(sys: OPSystem, k: int):
    return max(zero_bound(sys, k), meixner.jacobi_zero_bound(sys.params.q, k))


@dataclass(frozen=True)
class IdentityReport:
    k: int
    lhs: mpf
    rhs: mpf
    identity_residual: mpf
    split_w_residual: mpf
    split_q_residual: mpf
    tail: mpf

    @property
    def max_residual(self) -> mpf:
        return max(self.identity_residual, self.split_w_residual, self.split_q_residual)


def ip_identity_report(sys: OPSystem, k: int, tol=None) -> IdentityReport:
    """Check h_k - h_k^Q = -sum P_k Q_k (w^Q - w) and its two halves.

    The halves are h_k = sum P_k Q_k w and h_k^Q = sum P_k Q_k w^Q.
    """
    if not 0 <= k <= sys.kmax:
        raise ValueError(f"degree {k} outside 0..{sys.kmax}")
    p = sys.params
    q, q0 = to_ext(p.q), to_ext(p.q0)
    hk, hQ = to_ext(sys.h[k]), to_ext(meixner.h_Q(p.q, k))
    if tol is None:
        tol = DEFAULT_SUM_TOL * max(1, hQ)
    P, Q = _make_P(sys, k), _make_Q(p.q, k)
    PQ = lambda l: P(l) * Q(l)  # noqa: E731
    R = _PQ_bound(sys, k)
    deg = 2 * k

    diff, t1 = certified_series(PQ, deg, R, q0, tol, weight=lambda l: q**l - (q**l - q0**l))
    rhs = -diff
    with_q, t2 = certified_series(PQ, deg, R, q, tol)
    with_q0, t3 = certified_series(PQ, deg, R, q0, tol)
    with_w = with_q - with_q0
    lhs = hk - hQ
    return IdentityReport(
        k,
        lhs,
        rhs,
        abs(lhs - rhs),
        abs(hk - with_w),
        abs(hQ - with_q),
        t1.bound + t2.bound + t3.bound,
    )


def ip_identity_residual(sys: OPSystem, k: int, tol=None) -> mpf:
    """Largest of the identity residual and the two split-identity residuals."""
    return ip_identity_report(sys, k, tol).max_residual


def epsilon_tilde(sys: OPSystem, k: int):
    """h_k / h_k^Q - 1 (signed)."""
    return sys.h[k] / meixner.h_Q(sys.params.q, k) - 1


def epsilon_k(sys: OPSystem, k: int):
    return abs(epsilon_tilde(sys, k))


def delta_k(sys: OPSystem, k: int, tol=None) -> mpf:
    """(1 / h_k^Q) * sum_{l>=1} Q_k(l)^2 q0^l, certified."""
    p = sys.params
    hQ = to_ext(meixner.h_Q(p.q, k))
    if tol is None:
        tol = DEFAULT_SUM_TOL * max(1, hQ)
    Q = _make_Q(p.q, k)
    total, _ = certified_series(
        lambda l: Q(l) ** 2, 2 * k, meixner.jacobi_zero_bound(p.q, k), to_ext(p.q0), tol
    )
    return total / hQ


def C0(p: FerroParams):
    """1 / (e^{4 gamma} - 1) = q0 / (q - q0)."""
    return p.q0 / (p.q - p.q0)


def inequality_slack(sys: OPSystem, k: int) -> mpf:
    """C0 (1 + eps_k) delta_k - eps_k^2; nonnegative when the bound holds."""
    eps = to_ext(epsilon_k(sys, k))
    return to_ext(C0(sys.params)) * (1 + eps) * delta_k(sys, k) - eps**2


def orthogonality_residual(sys: OPSystem, j: int, k: int, tol=None) -> mpf:
    """|sum_l P_j(l) P_k(l) w(l)| with a certified tail."""
    p = sys.params
    q, q0 = to_ext(p.q), to_ext(p.q0)
    if tol is None:
        tol = DEFAULT_SUM_TOL * max(1, to_ext(max(sys.h[: max(j, k) + 1], key=to_ext)))
    Pj, Pk = _make_P(sys, j), _make_P(sys, k)
    f = lambda l: Pj(l) * Pk(l)  # noqa: E731
    R = max(zero_bound(sys, j), zero_bound(sys, k))
    a, _ = certified_series(f, j + k, R, q, tol)
    b, _ = certified_series(f, j + k, R, q0, tol)
    return abs(a - b)


def tau_from_norms(sys: OPSystem, n: int):
    """2^{n^2} prod_{k<n} h_k."""
    if n > sys.kmax + 1:
        raise ValueError("system too small for this n")
    out = 2 ** (n * n)
    for k in range(n):
        out = out * sys.h[k]
    return out


def partition_from_norms(sys: OPSystem, n: int):
    return izergin_prefactor(sys.params, n) * tau_from_norms(sys, n)


def norms_table(sys: OPSystem, kmax: int | None = None) -> list[dict]:
    """Rows (k, h_k, h_k^Q, eps_k, delta_k, slack) for k = 0..kmax."""
    kmax = sys.kmax if kmax is None else kmax
    rows = []
    for k in range(kmax + 1):
        eps = to_ext(epsilon_k(sys, k))
        dk = delta_k(sys, k)
        slack = to_ext(C0(sys.params)) * (1 + eps) * dk - eps**2
        rows.append(
            {
                "k": k,
                "h": to_ext(sys.h[k]),
                "hQ": to_ext(meixner.h_Q(sys.params.q, k)),
                "epsilon": eps,
                "delta": dk,
                "slack": slack,
            }
        )
    return rows
