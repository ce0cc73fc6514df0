"""Vertex weight systems, the Delta parameter and phase parametrizations."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .precision import DomainError, Number, is_exact, to_ext


@dataclass(frozen=True)
class SixWeights:
    w1: Number
    w2: Number
    w3: Number
    w4: Number
    w5: Number
    w6: Number

    def __post_init__(self):
        if any(w <= 0 for w in self.as_tuple()):
            raise DomainError("vertex weights must be strictly positive")

    def as_tuple(self) -> tuple:
        return (self.w1, self.w2, self.w3, self.w4, self.w5, self.w6)


@dataclass(frozen=True)
class ABCWeights:
    a: Number
    b: Number
    c: Number

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise DomainError("weights a, b, c must be strictly positive")

    def six(self) -> SixWeights:
        return SixWeights(self.a, self.a, self.b, self.b, self.c, self.c)

    def scaled(self) -> "ABCWeights":
        """The two-parameter normalisation (a/c, b/c, 1)."""
        return ABCWeights(self.a / self.c, self.b / self.c, self.c / self.c)


@dataclass(frozen=True)
class FerroParams:
    """Ferroelectric parameters 0 < gamma < t.

    ``exact`` optionally carries the pair (e^{-2t}, e^{2 gamma}) as Fractions.
    When present, every algebraic derived quantity (q, q0, a*b, c, ...) is
    returned exactly, which makes rational reference points reproducible
    digit for digit.
    """

    t: mpf
    gamma: mpf
    exact: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        if not 0 < self.gamma < self.t:
            raise DomainError(f"ferroelectric phase needs 0 < gamma < t (t={self.t}, gamma={self.gamma})")

    @classmethod
    def from_exponentials(cls, exp_m2t: Fraction, exp_2g: Fraction) -> "FerroParams":
        x, y = Fraction(exp_m2t), Fraction(exp_2g)
        if not (0 < x < 1 and y > 1):
            raise DomainError("need 0 < e^{-2t} < 1 < e^{2 gamma}")
        return cls(-mp.log(to_ext(x)) / 2, mp.log(to_ext(y)) / 2, (x, y))

    @classmethod
    def ref(cls, exact: bool = False) -> "FerroParams":
        """t = ln 2, gamma = ln 2 / 2 at the current working precision."""
        if exact:
            return cls.from_exponentials(Fraction(1, 4), Fraction(2))
        return cls(mp.ln2, mp.ln2 / 2)

    @classmethod
    def parse(cls, t, gamma) -> "FerroParams":
        return cls(to_ext(t), to_ext(gamma))

    def shifted(self, dt) -> "FerroParams":
        return FerroParams(self.t + dt, self.gamma)

    def at_precision(self) -> "FerroParams":
        """Re-derive t and gamma at the current precision (exact mode only)."""
        if self.exact is None:
            return self
        return FerroParams.from_exponentials(*self.exact)

    @property
    def q(self):
        if self.exact:
            x, y = self.exact
            return x * y
        return mp.exp(2 * self.gamma - 2 * self.t)

    @property
    def q0(self):
        if self.exact:
            x, y = self.exact
            return x / y
        return mp.exp(-2 * self.gamma - 2 * self.t)

    @property
    def ab(self):
        """sinh(t - gamma) * sinh(t + gamma)."""
        if self.exact:
            x, y = self.exact
            return (1 / x + x - y - 1 / y) / 4
        return mp.sinh(self.t - self.gamma) * mp.sinh(self.t + self.gamma)

    @property
    def c(self):
        """sinh(2 gamma)."""
        if self.exact:
            y = self.exact[1]
            return (y - 1 / y) / 2
        return mp.sinh(2 * self.gamma)


@dataclass(frozen=True)
class LineParams:
    """Point on the line (a+b)/c = alpha, parametrised by beta = (b-a)/c."""

    alpha: mpf
    beta: mpf

    def __post_init__(self):
        if not self.alpha > 1:
            raise DomainError("alpha must exceed 1")
        if not abs(self.beta) < self.alpha:
            raise DomainError("|beta| must be below alpha")

    @classmethod
    def parse(cls, alpha, beta) -> "LineParams":
        return cls(to_ext(alpha), to_ext(beta))


class Phase(enum.Enum):
    FERROELECTRIC = "ferroelectric"
    ANTIFERROELECTRIC = "antiferroelectric"
    DISORDERED = "disordered"
    BOUNDARY = "boundary"
    FREE_FERMION = "free-fermion"


def reduce(w: SixWeights, n: int) -> tuple[ABCWeights, mpf]:
    """Collapse six weights to (a, b, c) plus the prefactor (w5/w6)^(n/2)."""
    a = mp.sqrt(to_ext(w.w1) * to_ext(w.w2))
    b = mp.sqrt(to_ext(w.w3) * to_ext(w.w4))
    c = mp.sqrt(to_ext(w.w5) * to_ext(w.w6))
    factor = (to_ext(w.w5) / to_ext(w.w6)) ** (mpf(n) / 2)
    return ABCWeights(a, b, c), factor


def delta(w: ABCWeights):
    return (w.a * w.a + w.b * w.b - w.c * w.c) / (2 * w.a * w.b)


def classify(w: ABCWeights, tol=None) -> Phase:
    d = delta(w)
    if tol is None:
        tol = mpf(2) ** -128
    if is_exact(d):
        if d == 0:
            return Phase.FREE_FERMION
    elif abs(d) < tol:
        return Phase.FREE_FERMION
    if d > 1:
        return Phase.FERROELECTRIC
    if d < -1:
        return Phase.ANTIFERROELECTRIC
    if d == 1 or d == -1:
        return Phase.BOUNDARY
    return Phase.DISORDERED


def ferro_weights(p: FerroParams) -> ABCWeights:
    return ABCWeights(mp.sinh(p.t - p.gamma), mp.sinh(p.t + p.gamma), mp.sinh(2 * p.gamma))


def disordered_weights(t, gamma) -> ABCWeights:
    t, gamma = to_ext(t), to_ext(gamma)
    if not (0 < abs(gamma) < t and t + gamma < mp.pi):
        raise DomainError("disordered parametrization needs 0 < |gamma| < t and t + gamma < pi")
    return ABCWeights(mp.sin(t - gamma), mp.sin(t + gamma), mp.sin(2 * abs(gamma)))


def invert_line_params(lp: LineParams) -> tuple[mpf, mpf]:
    """(t, gamma) of the disordered parametrization on the line (a+b)/c = alpha.

    Solves sin t = alpha sin gamma, cos t = beta cos gamma, taking the root with
    0 < gamma < t < pi/2.
    """
    alpha, beta = to_ext(lp.alpha), to_ext(lp.beta)
    if beta >= 1:
        raise DomainError("beta >= 1 lies in the ferroelectric phase")
    if beta <= 0:
        raise DomainError("inversion is defined for 0 < beta < 1")
    s2 = (1 - beta**2) / (alpha**2 - beta**2)
    gamma = mp.asin(mp.sqrt(s2))
    t = mp.atan2(alpha * mp.sin(gamma), beta * mp.cos(gamma))
    return t, gamma
