"""Large-n asymptotics, Toda identities and the free energy near the transition."""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from . import izergin, meixner, orthopoly
from .precision import DomainError, PrecisionError, to_ext
from .weights import FerroParams, LineParams, invert_line_params


@dataclass(frozen=True)
class AsymptoticConstants:
    C: mpf
    G: mpf
    F: mpf


def constants(p: FerroParams) -> AsymptoticConstants:
    """C = 1 - e^{-4 gamma}, G = e^{gamma - t}, F = sinh(t + gamma)."""
    F, G = meixner.constants_FG(p)
    return AsymptoticConstants(1 - mp.exp(-4 * p.gamma), G, F)


def c_hat(p: FerroParams, n: int) -> mpf:
    """Z_n / (G^n F^{n^2}) with Z_n from the Izergin determinant."""
    if n < 1:
        raise DomainError("n must be positive")
    k = constants(p)
    return to_ext(izergin.partition_izergin(p, n)) / (k.G**n * k.F ** (n * n))


def c_hat_product(sys: orthopoly.OPSystem, n: int):
    """prod_{k<n} (1 + eps~_k) = prod_{k<n} h_k / h_k^Q."""
    if n > sys.kmax + 1:
        raise ValueError("system too small for this n")
    out = 1
    for k in range(n):
        out = out * (1 + orthopoly.epsilon_tilde(sys, k))
    return out


def c_hat_exact(p: FerroParams, n: int):
    """tau_n / tau_n^Q, equal to c_hat; exact when p is in exact mode."""
    return izergin.tau_n(p, n) / meixner.tau_Q(p, n)


def observed_limit(p: FerroParams) -> mpf:
    """prod_{k>=1} (1 - e^{-4 gamma k}), the value the products h_k / h_k^Q converge to.

    Differs from C by the factors k >= 2; kept as a diagnostic next to C.
    """
    s = mp.exp(-4 * to_ext(p.gamma))
    return mp.qp(s, s)


def _tau_at(p: FerroParams, n: int, dt) -> mpf:
    return to_ext(izergin.tau_n(FerroParams(p.t + dt, p.gamma), n))


def toda_residuals(p: FerroParams, n: int, step=mpf("1e-4"), form: str = "log") -> tuple[mpf, mpf]:
    """Relative residuals of the two Toda-type identities by central differences in t.

    r1: tau_n tau_n'' - (tau_n')^2 against tau_{n+1} tau_{n-1} (Izergin route).
    r2: (ln tau_n)'' against 4 h_n / h_{n-1} (norm route).

    With ``form="log"`` the left side of r1 is evaluated as tau_n^2 (ln tau_n)''
    using the second-order stencil on ln tau_n.  ``form="direct"`` differences
    tau_n itself; since tau_n varies like exp(-O(n^2) t) the direct stencil
    carries an O(n^8 step^2) truncation error.
    """
    if n < 2:
        raise DomainError("Toda residuals need n >= 2")
    if form not in ("log", "direct"):
        raise ValueError("form must be 'log' or 'direct'")
    step = to_ext(step)
    if step <= 0:
        raise DomainError("step must be positive")
    if step**4 < mpf(2) ** (-mp.prec // 2):
        raise PrecisionError("finite-difference step too small for the working precision")
    p = FerroParams(to_ext(p.t), to_ext(p.gamma))
    minus, mid, plus = (_tau_at(p, n, s * step) for s in (-1, 0, 1))
    log_d2 = (mp.log(plus) - 2 * mp.log(mid) + mp.log(minus)) / step**2
    if form == "log":
        lhs = mid**2 * log_d2
    else:
        d1 = (plus - minus) / (2 * step)
        d2 = (plus - 2 * mid + minus) / step**2
        lhs = mid * d2 - d1**2
    rhs = to_ext(izergin.tau_n(p, n + 1)) * to_ext(izergin.tau_n(p, n - 1))
    r1 = abs(lhs - rhs) / abs(rhs)

    sys = orthopoly.build(p, n)
    target = 4 * to_ext(sys.h[n]) / to_ext(sys.h[n - 1])
    r2 = abs(log_d2 - target) / abs(target)
    return r1, r2


def ground_state_G0(p: FerroParams) -> mpf:
    return mp.sinh(2 * p.gamma) / mp.sinh(p.t + p.gamma)


def ground_state_ratio(p: FerroParams) -> mpf:
    """G1 = G / G0 = (e^{2g} - e^{-2t}) / (e^{2g} - e^{-2g})."""
    return constants(p).G / ground_state_G0(p)


def ground_state_weight(p: FerroParams, n: int) -> mpf:
    """b^{n^2} (c/b)^n = F^{n^2} G0^n."""
    b, c = mp.sinh(p.t + p.gamma), mp.sinh(2 * p.gamma)
    return b ** (n * n) * (c / b) ** n


def g_factor(t, gamma) -> mpf:
    """pi sin(t-g) / ((pi - 2g) sin(pi (t-g) / (pi - 2g)))."""
    t, gamma = to_ext(t), to_ext(gamma)
    u = mp.pi - 2 * gamma
    return mp.pi * mp.sin(t - gamma) / (u * mp.sin(mp.pi * (t - gamma) / u))


def F0_ferro(lp: LineParams) -> mpf:
    """(alpha + |beta|)/2 for |beta| >= 1 (a <-> b symmetry covers beta <= -1)."""
    beta = abs(to_ext(lp.beta))
    if beta < 1:
        raise DomainError("ferroelectric free energy needs |beta| >= 1")
    return (to_ext(lp.alpha) + beta) / 2


def F0_disordered(lp: LineParams) -> mpf:
    """(alpha + |beta|) g(t, gamma) / 2 for |beta| < 1."""
    alpha, beta = to_ext(lp.alpha), abs(to_ext(lp.beta))
    if beta >= 1:
        raise DomainError("disordered free energy needs |beta| < 1")
    if beta == 0:
        # cos t = 0 on the symmetry axis: t = pi/2, sin gamma = 1/alpha
        t, gamma = mp.pi / 2, mp.asin(1 / alpha)
    else:
        t, gamma = invert_line_params(LineParams(alpha, beta))
    return (alpha + beta) * g_factor(t, gamma) / 2


def F0(lp: LineParams) -> mpf:
    if abs(to_ext(lp.beta)) >= 1:
        return F0_ferro(lp)
    return F0_disordered(lp)


def g_on_line(alpha, beta) -> mpf:
    t, gamma = invert_line_params(LineParams(to_ext(alpha), to_ext(beta)))
    return g_factor(t, gamma)


def transition_amplitude(alpha) -> mpf:
    """Leading coefficient of g - 1 in powers of (1 - beta) as beta -> 1-.

    From sin^2 gamma = (1-beta^2)/(alpha^2-beta^2) and t ~ alpha gamma one gets
    g - 1 ~ (2 gamma / pi) (t - gamma)^2 / 3, i.e.
    2^{5/2} (alpha-1)^{1/2} / (3 pi (alpha+1)^{3/2}) times (1 - beta)^{3/2}.
    """
    alpha = to_ext(alpha)
    return 2 ** mpf(2.5) * mp.sqrt(alpha - 1) / (3 * mp.pi * (alpha + 1) ** mpf(1.5))


def amplitude_ratio(alpha, gap) -> mpf:
    """(g - 1) / (1 - beta)^{3/2} at beta = 1 - gap."""
    gap = to_ext(gap)
    return (g_on_line(alpha, 1 - gap) - 1) / gap ** mpf(1.5)


def log_spaced_betas(lo_gap, hi_gap, count: int) -> list[mpf]:
    """beta = 1 - gap with gaps log-spaced from ``lo_gap`` down to ``hi_gap``."""
    a, b = mp.log(to_ext(lo_gap)), mp.log(to_ext(hi_gap))
    return [1 - mp.exp(a + (b - a) * i / (count - 1)) for i in range(count)]


def transition_exponent(alpha, betas) -> mpf:
    """Least-squares slope of ln(g - 1) against ln(1 - beta)."""
    xs = [mp.log(1 - to_ext(b)) for b in betas]
    ys = [mp.log(g_on_line(alpha, b) - 1) for b in betas]
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def delta_on_line(alpha, beta) -> mpf:
    alpha, beta = to_ext(alpha), to_ext(beta)
    return (alpha**2 + beta**2 - 2) / (alpha**2 - beta**2)


def delta_expansion_check(lp: LineParams) -> mpf:
    """|Delta - 1 - 4(beta-1)/(alpha^2-1)| / (beta-1)^2; zero at beta = 1."""
    alpha, beta = to_ext(lp.alpha), to_ext(lp.beta)
    if beta == 1:
        return abs(delta_on_line(alpha, beta) - 1)
    lin = 1 + 4 * (beta - 1) / (alpha**2 - 1)
    return abs(delta_on_line(alpha, beta) - lin) / (beta - 1) ** 2


def kappa(gamma) -> mpf:
    gamma = to_ext(gamma)
    if not 0 < gamma < mp.pi / 2:
        raise DomainError("kappa needs 0 < gamma < pi/2")
    return mpf(1) / 12 - 2 * gamma**2 / (3 * mp.pi * (mp.pi - 2 * gamma))


def free_energy_curve(alpha, betas, step=mpf("1e-6")) -> list[tuple[mpf, mpf, mpf]]:
    """Rows (beta, F0, dF0/dbeta) on the line (a+b)/c = alpha; central differences."""
    alpha, step = to_ext(alpha), to_ext(step)
    rows = []
    for beta in betas:
        beta = to_ext(beta)
        f = F0(LineParams(alpha, beta))
        df = (F0(LineParams(alpha, beta + step)) - F0(LineParams(alpha, beta - step))) / (2 * step)
        rows.append((beta, f, df))
    return rows


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    Z: mpf
    leading: mpf
    ratio: mpf


def asymptotic_table(p: FerroParams, nmax: int) -> list[AsymptoticRow]:
    """(n, Z_n, C G^n F^{n^2}, ratio) for n = 1..nmax."""
    k = constants(p)
    rows = []
    for n in range(1, nmax + 1):
        Z = to_ext(izergin.partition_izergin(p, n))
        lead = k.C * k.G**n * k.F ** (n * n)
        rows.append(AsymptoticRow(n, Z, lead, Z / lead))
    return rows
