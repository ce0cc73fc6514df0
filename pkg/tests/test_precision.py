from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from sixvertex.precision import (
    ConvergenceError,
    DomainError,
    PrecisionError,
    eulerian_numbers,
    fmt,
    geometric_moment,
    relative_difference,
    to_ext,
    truncated_weighted_sum,
    validated,
    working_precision,
)

TOL30 = mpf(10) ** -30


def test_geometric_moment_examples():
    assert geometric_moment(F(1, 2), 0) == 1
    assert geometric_moment(F(1, 2), 1) == 2
    assert geometric_moment(F(1, 8), 2) == F(72, 343)


def test_geometric_moment_rejects_bad_ratio():
    for r in (0, 1, F(3, 2), -F(1, 2)):
        with pytest.raises(DomainError):
            geometric_moment(r, 2)


def test_eulerian_rows():
    assert eulerian_numbers(0) == (1,)
    assert eulerian_numbers(3) == (1, 4, 1)
    assert eulerian_numbers(4) == (1, 11, 11, 1)
    assert sum(eulerian_numbers(6)) == 720


def test_sum_geometric():
    s, tail = truncated_weighted_sum(lambda l: mpf(2) ** -l, mpf(1) / 2, TOL30)
    assert abs(s - 1) < TOL30
    assert tail.bound <= TOL30


def test_sum_linear_geometric():
    s, _ = truncated_weighted_sum(lambda l: l * mpf(2) ** -l, mpf(3) / 4, TOL30)
    assert abs(s - 2) < TOL30


def test_sum_of_ref_weight(ref):
    q, q0 = ref.q, ref.q0
    s, _ = truncated_weighted_sum(lambda l: q**l - q0**l, mpf(9) / 16, TOL30)
    assert abs(s - mpf(6) / 7) < TOL30


def test_sum_detects_missing_ratio_regime():
    with pytest.raises(ConvergenceError):
        truncated_weighted_sum(lambda l: mpf(1) / l, mpf(1) / 2, TOL30, max_index=500)


@settings(max_examples=25, deadline=None)
@given(num=st.integers(1, 15), m=st.integers(0, 12))
def test_moment_matches_certified_sum(num, m):
    r = mpf(num) / 16
    s, tail = truncated_weighted_sum(lambda l: mpf(l) ** m * r**l, (1 + r) / 2, mpf(10) ** -40, min_index=m + 1 + int(2 * m / (1 - r)))
    exact = geometric_moment(r, m)
    assert abs(s - exact) <= tail.bound + mpf(10) ** -60 * exact


@settings(max_examples=20, deadline=None)
@given(num=st.integers(1, 31), m=st.integers(0, 10))
def test_moment_stable_under_precision_doubling(num, m):
    with working_precision(128):
        low = geometric_moment(mpf(num) / 32, m)
    with working_precision(256):
        high = geometric_moment(mpf(num) / 32, m)
        assert relative_difference(low, high) < mpf(2) ** (-128 + 8)


def test_working_precision_floor():
    with pytest.raises(DomainError):
        with working_precision(32):
            pass


def test_validated_accepts_stable_and_rejects_unstable():
    assert validated(lambda: mp.exp(mpf(1) / 3)) == +mp.exp(mpf(1) / 3)
    # cancellation that only the doubled run resolves
    with pytest.raises(PrecisionError):
        validated(lambda: (1 + mpf(2) ** -300) - 1 + mpf(2) ** -400)


def test_fmt_is_fixed_significance():
    assert fmt(F(3, 4)) == "0.750000000000000000000000000000"
    assert fmt(to_ext(1) / 3).startswith("0.333333333333333333333333333333")
    assert "e-8" in fmt(mpf("4.2e-8"))
