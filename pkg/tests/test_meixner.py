from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from sixvertex import meixner
from sixvertex.meixner import (
    MeixnerSystem,
    constants_FG,
    h_Q,
    meixner_M,
    meixner_P,
    meixner_P_hypergeometric,
    recurrence_check,
    shifted_Q,
    shifted_Q_coefficients,
    tau_Q,
    Z_Q,
)
from sixvertex.orthopoly import certified_series
from sixvertex.precision import DomainError, relative_difference
from sixvertex.weights import FerroParams

HALF = F(1, 2)


def test_M_examples():
    for z in (F(-2), F(0), F(5, 3)):
        assert meixner_M(HALF, 0, z) == 1
        assert meixner_M(F(1, 3), 1, z) == 1 + (1 - 3) * z
    assert meixner_M(HALF, 2, 0) == 1


def test_Q_examples():
    assert shifted_Q(HALF, 0, F(7)) == 1
    for z in (F(-1), F(0), F(3), F(9, 2)):
        assert shifted_Q(HALF, 1, z) == z - 2
        assert shifted_Q(F(1, 5), 1, z) == z - 1 - F(1, 4)
    for k in range(7):
        assert shifted_Q_coefficients(HALF, k)[-1] == 1
        assert len(shifted_Q_coefficients(HALF, k)) == k + 1


def test_Q_coefficients_match_recurrence():
    for k in range(7):
        coeffs = shifted_Q_coefficients(F(2, 7), k)
        for z in range(-3, 6):
            assert meixner.horner(coeffs, z) == shifted_Q(F(2, 7), k, F(z))


def test_h_examples():
    assert h_Q(HALF, 0) == 1
    assert h_Q(HALF, 1) == 2


@pytest.mark.parametrize("k", range(7))
def test_norm_by_certified_sum(k):
    q = mpf(1) / 2
    Q = lambda l: shifted_Q(q, k, mpf(l))  # noqa: E731
    s, _ = certified_series(lambda l: Q(l) ** 2, 2 * k, meixner.jacobi_zero_bound(q, k), q, mpf(10) ** -40)
    assert abs(s - h_Q(q, k)) < mpf(10) ** -30


def test_off_diagonal_orthogonality():
    q = mpf(1) / 2
    for j in range(6):
        for k in range(j + 1, 6):
            f = lambda l: shifted_Q(q, j, mpf(l)) * shifted_Q(q, k, mpf(l))  # noqa: E731
            bound = max(meixner.jacobi_zero_bound(q, j), meixner.jacobi_zero_bound(q, k))
            s, _ = certified_series(f, j + k, bound, q, mpf(10) ** -40)
            assert abs(s) < mpf(10) ** -30


def test_recurrence_examples():
    assert recurrence_check(HALF, 1, F(3)) == 0
    assert recurrence_check(mpf(1) / 2, 4, mpf(-2)) < mpf(10) ** -50
    for q in (F(1, 3), F(1, 2), F(9, 10)):
        assert recurrence_check(q, 1, F(0)) == 0


def test_recurrence_vs_hypergeometric_exact():
    for k in range(9):
        for z in range(-3, 9):
            assert meixner_P(HALF, k, F(z)) == meixner_P_hypergeometric(HALF, k, F(z))
            assert shifted_Q(HALF, k, F(z + 1)) == meixner_P(HALF, k, F(z))


def test_domain():
    with pytest.raises(DomainError):
        meixner_M(F(3, 2), 1, 0)
    with pytest.raises(DomainError):
        h_Q(1, 2)
    with pytest.raises(DomainError):
        recurrence_check(HALF, 0, 1)


def test_constants_ref(ref):
    F_, G = constants_FG(ref)
    s2 = mp.sqrt(2)
    assert abs(F_ - (2 * s2 - 1 / (2 * s2)) / 2) < mpf(10) ** -60
    assert abs(G - 1 / s2) < mpf(10) ** -60


def test_Z_Q_ref(ref_exact, ref):
    assert Z_Q(ref_exact, 2) == F(2401, 2048)
    F_, G = constants_FG(ref)
    for n in range(1, 8):
        assert relative_difference(Z_Q(ref, n), F_ ** (n * n) * G**n) < mpf(10) ** -50


def test_tau_Q_small(ref_exact):
    assert tau_Q(ref_exact, 1) == 2
    assert tau_Q(ref_exact, 2) == 16 * 1 * 2


@pytest.mark.parametrize("t", [mpf("0.4"), mpf(1), mpf(3)])
@pytest.mark.parametrize("frac", [mpf("0.1"), mpf("0.5"), mpf("0.9")])
def test_two_F_expressions(t, frac):
    p = FerroParams.parse(t, t * frac)
    assert relative_difference(meixner.F_from_norms(p), constants_FG(p)[0]) < mpf(10) ** -70


def test_system_wrapper():
    s = MeixnerSystem(HALF)
    assert s.h(1) == 2 and s.Q(1, F(5)) == 3 and s.weight(3) == F(1, 8)
    assert s.coefficients(2)[-1] == 1
    assert s.zero_bound(3) > 0
    with pytest.raises(DomainError):
        MeixnerSystem(F(2))
