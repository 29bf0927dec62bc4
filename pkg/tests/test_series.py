"""Float layer: closed-form values, mpmath oracle agreement, bound contracts."""

import cmath
import math
from fractions import Fraction as F

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhlerch import exact, series
from mhlerch.errors import DomainError, InvalidShiftError, PrecisionError
from mhlerch.series import SeriesResult, ShiftParam

mp.mp.dps = 30

LN2 = 0.6931471805599453
PI2_12 = 0.8224670334241132
DILOG_HALF = 0.5822405264650125  # pi^2/12 - ln(2)^2/2

ALPHAS_RATIONAL = [F(0), F(-1, 2), F(1, 2), F(1), F(4, 3), F(4)]
SHIFTS_MIXED = [0j, 0.5 + 0j, 1j, -0.5 + 0.5j]


def ref_lerch(w: complex, alpha: complex, s: int) -> complex:
    """Independent oracle: sum_{n>=1} w^n/(alpha+n)^s via mpmath's lerchphi."""
    value = mp.mpc(w) * mp.lerchphi(mp.mpc(w), s, mp.mpc(alpha) + 1)
    return complex(value)


# ---------------------------------------------------------------------------
# shift machinery
# ---------------------------------------------------------------------------


def test_shift_gap_values():
    assert series.shift_gap(0) == 1.0
    assert series.shift_gap(-2) == 0.0
    assert series.shift_gap(-2.5) == 0.5
    assert series.shift_gap(1j) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert series.shift_gap(-3.25) == pytest.approx(0.25, rel=1e-15)
    assert series.shift_gap(0.75) == 1.75


def test_shift_gap_rejects_nonfinite():
    with pytest.raises(ValueError):
        series.shift_gap(float("nan"))
    with pytest.raises(ValueError):
        series.shift_gap(complex(0, float("inf")))


def test_shift_param_validation():
    assert ShiftParam(0.5 + 0j).gap == 1.5
    for bad in (-1, -2.0, -3 + 1e-13j):
        with pytest.raises(InvalidShiftError):
            ShiftParam(bad)
    # just outside the rejection band
    ShiftParam(-2 + 1e-6j)


# ---------------------------------------------------------------------------
# direct series
# ---------------------------------------------------------------------------


def test_direct_at_zero():
    result = series.lerch_direct(0, ShiftParam(0j), 2)
    assert result.value == 0
    assert result.terms_used == 1
    assert result.converged
    assert result.error_bound == 0.0


def test_direct_log2():
    result = series.lerch_direct(0.5, ShiftParam(0j), 1, tol=1e-12)
    assert result.converged
    assert result.value.real == pytest.approx(LN2, abs=1e-12)


def test_direct_dilog_half():
    result = series.lerch_direct(0.5, ShiftParam(0j), 2, tol=1e-12)
    assert result.value.real == pytest.approx(DILOG_HALF, abs=1e-12)


def test_direct_domain_error():
    for w in (1.0, -1.0, 1.2, cmath.exp(0.3j)):
        with pytest.raises(DomainError):
            series.lerch_direct(w, ShiftParam(0j), 1)


def test_direct_tolerance_floor():
    with pytest.raises(PrecisionError):
        series.lerch_direct(0.5, ShiftParam(0j), 1, tol=1e-14)


def test_direct_nonconvergence_flag():
    result = series.lerch_direct(0.9, ShiftParam(0j), 1, tol=1e-12, max_terms=5)
    assert not result.converged
    assert result.terms_used == 5
    assert result.error_bound > 1e-12


def test_direct_bound_contract_vs_oracle():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in (1, 2, 3):
            for w in (0.5, -0.66, 0.3 + 0.4j, -0.2 - 0.5j):
                result = series.lerch_direct(w, shift, s, tol=1e-12)
                assert result.converged
                assert abs(result.value - ref_lerch(w, alpha, s)) <= result.error_bound + 1e-15


# ---------------------------------------------------------------------------
# alternating boundary series
# ---------------------------------------------------------------------------


def test_alternating_single_term():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        assert series.alternating_direct(shift, 3, 1) == -1 / (alpha + 1) ** 3


def test_alternating_log2():
    # alternating-series remainder: within 1/(N+1) of -ln 2
    value = series.alternating_direct(ShiftParam(0j), 1, 1000)
    assert abs(value.real + LN2) < 1.0 / 1001


def test_alternating_eta2():
    value = series.alternating_direct(ShiftParam(0j), 2, 2000)
    assert abs(value.real + PI2_12) < 1.0 / 2001**2


# ---------------------------------------------------------------------------
# coefficients and their majorant
# ---------------------------------------------------------------------------


def test_coefficient_float_first_index():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in (1, 2, 4):
            expected = -1 / (alpha + 1) ** s
            assert series.coefficient_float(1, shift, s) == pytest.approx(expected, rel=1e-15)


def test_coefficient_float_harmonic_case():
    shift = ShiftParam(0j)
    for p in (1, 2, 7, 20):
        assert series.coefficient_float(p, shift, 1) == pytest.approx(-1.0 / p, rel=1e-14)


def test_coefficient_float_frozen_value():
    assert series.coefficient_float(3, ShiftParam(0j), 2).real == pytest.approx(
        -11.0 / 18.0, rel=1e-15
    )


def test_coefficient_float_matches_exact():
    for alpha in ALPHAS_RATIONAL:
        shift = ShiftParam(complex(alpha))
        for s in (1, 2, 5):
            for p in (1, 5, 17, 40):
                c_exact = float(exact.coefficient_exact(p, alpha, s))
                c_float = series.coefficient_float(p, shift, s)
                assert abs(c_float - c_exact) / abs(c_exact) <= 1e-12


def test_coefficient_bound_alpha_zero_closed_form():
    # bound simplifies to p^{s-2} at alpha = 0
    shift = ShiftParam(0j)
    for s in (1, 2, 3, 5):
        for p in (1, 4, 30, 200):
            expected = float(p) ** (s - 2)
            assert series.coefficient_bound(p, shift, s) == pytest.approx(expected, rel=1e-13)


def test_coefficient_bound_first_index():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in (1, 2, 3):
            expected = 1.0 / (abs(alpha + 1) * shift.gap ** (s - 1))
            assert series.coefficient_bound(1, shift, s) == pytest.approx(expected, rel=1e-14)


def test_coefficient_bound_attained_at_s1_alpha0():
    shift = ShiftParam(0j)
    for p in (1, 3, 10):
        assert abs(series.coefficient_float(p, shift, 1)) == pytest.approx(
            series.coefficient_bound(p, shift, 1), rel=1e-13
        )


def test_coefficient_bound_validity():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in range(1, 7):
            for p in range(1, 61):
                c = series.coefficient_float(p, shift, s)
                assert abs(c) <= series.coefficient_bound(p, shift, s) * (1 + 1e-10)


# ---------------------------------------------------------------------------
# accelerated evaluator
# ---------------------------------------------------------------------------


def test_accelerated_at_zero():
    result = series.lerch_accelerated(0, ShiftParam(0j), 3)
    assert result.value == 0
    assert result.converged


def test_accelerated_log2():
    result = series.lerch_accelerated(-1, ShiftParam(0j), 1, tol=1e-12)
    assert result.converged
    assert result.value.real == pytest.approx(-LN2, abs=1e-12)


def test_accelerated_eta2():
    result = series.lerch_accelerated(-1, ShiftParam(0j), 2, tol=1e-12)
    assert result.value.real == pytest.approx(-PI2_12, abs=1e-12)


def test_accelerated_domain_error():
    for w in (0.5, 0.6, 0.5 + 3j, 2.0):
        with pytest.raises(DomainError):
            series.lerch_accelerated(w, ShiftParam(0j), 2)


def test_accelerated_bound_contract_vs_oracle():
    # the certificate must cover the true error on the whole shift grid
    for alpha in SHIFTS_MIXED + [4 + 0j, -0.5 + 0j]:
        shift = ShiftParam(alpha)
        for s in (1, 2, 4):
            for w in (-1.0, -5.0, 0.3 + 2j, -0.4 - 0.4j, 0.45):
                result = series.lerch_accelerated(w, shift, s, tol=1e-12)
                assert result.converged
                err = abs(result.value - ref_lerch(w, alpha, s))
                assert err <= result.error_bound + 1e-15


def test_accelerated_agrees_with_direct_inside_disk():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in (1, 2, 3):
            for z in (0.4, -0.4, 0.2 + 0.2j, -0.1 - 0.3j):
                w = series.disk_to_half_plane(z)
                a = series.lerch_accelerated(w, shift, s, tol=1e-12)
                d = series.lerch_direct(w, shift, s, tol=1e-12)
                assert abs(a.value - d.value) <= 10 * (a.error_bound + d.error_bound)


def test_accelerated_nonconvergence_flag():
    result = series.lerch_accelerated(-1, ShiftParam(0j), 2, tol=1e-12, max_terms=8)
    assert not result.converged
    assert result.terms_used == 8


def test_accelerated_rejects_nonfinite():
    with pytest.raises(ValueError):
        series.lerch_accelerated(float("nan"), ShiftParam(0j), 2)


# ---------------------------------------------------------------------------
# binomial double-sum form
# ---------------------------------------------------------------------------


def test_euler_single_term():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        z = 0.3 + 0.1j
        expected = z * (-1) / (alpha + 1) ** 2
        assert series.euler_transform_eval(z, shift, 2, 1) == pytest.approx(expected, rel=1e-15)


def test_euler_eta2_at_half():
    value = series.euler_transform_eval(0.5, ShiftParam(0j), 2, 60)
    assert value.real == pytest.approx(-PI2_12, abs=1e-12)


def test_euler_domain_error():
    with pytest.raises(DomainError):
        series.euler_transform_eval(1.0, ShiftParam(0j), 2, 10)


def test_euler_matches_accelerated_on_disk():
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in (1, 3):
            for z in (0.5, -0.5, 0.3 + 0.3j):
                w = series.disk_to_half_plane(z)
                a = series.lerch_accelerated(w, shift, s, tol=1e-12)
                e = series.euler_transform_eval(z, shift, s, a.terms_used)
                assert abs(a.value - e) <= a.error_bound + 1e-12


def test_euler_inner_sum_matches_coefficient_float_shallow():
    # binary64 cancellation stays below 1e-12 relative only for small p
    for alpha in SHIFTS_MIXED:
        shift = ShiftParam(alpha)
        for s in (1, 2, 3):
            for p in range(1, 13):
                inner = series.euler_inner_sum(p, shift, s)
                c = series.coefficient_float(p, shift, s)
                assert abs(inner - c) / abs(c) <= 1e-12


# ---------------------------------------------------------------------------
# zeta series
# ---------------------------------------------------------------------------


def test_zeta_two():
    result = series.zeta_accelerated(2, tol=1e-12)
    assert result.converged
    assert result.terms_used <= 64
    assert result.value.real == pytest.approx(1.6449340668482264, abs=1e-12)


def test_zeta_three():
    result = series.zeta_accelerated(3, tol=1e-12)
    assert result.value.real == pytest.approx(1.2020569031595943, abs=1e-12)


def test_zeta_first_term():
    # a_1 = 1 for every depth, so the p = 1 term is a_1/(1*2) = 1/2
    for s in (2, 3, 5):
        assert series.ap_coefficient(1, s) == 1.0
        truncated = series.zeta_accelerated(s, tol=1e-12, max_terms=1)
        assert not truncated.converged
        assert truncated.value.real * (1 - 2.0 ** (1 - s)) == 0.5


def test_zeta_pole_rejected():
    for s in (1, 0, -3):
        with pytest.raises(DomainError):
            series.zeta_accelerated(s)


def test_zeta_bound_contract_vs_oracle():
    for s in range(2, 9):
        for tol in (1e-6, 1e-10, 1e-12):
            result = series.zeta_accelerated(s, tol=tol)
            assert result.converged
            assert result.error_bound <= tol
            err = abs(result.value.real - float(mp.zeta(s)))
            assert err <= result.error_bound


def test_zeta_matches_lerch_at_minus_one():
    for s in (2, 3, 5):
        eta = -series.lerch_accelerated(-1, ShiftParam(0j), s, tol=1e-12).value.real
        zeta = series.zeta_accelerated(s, tol=1e-12).value.real
        assert eta / (1 - 2.0 ** (1 - s)) == pytest.approx(zeta, rel=1e-12)


# ---------------------------------------------------------------------------
# tuple-harmonic coefficients a_p
# ---------------------------------------------------------------------------


def test_ap_depth_zero():
    for p in (1, 5, 100):
        assert series.ap_coefficient(p, 1) == 1.0


def test_ap_harmonic_number():
    assert series.ap_coefficient(3, 2) == pytest.approx(11.0 / 6.0, rel=1e-15)


def test_ap_depth_two():
    # 1 + 1/2 + 1/4
    assert series.ap_coefficient(2, 3) == pytest.approx(7.0 / 4.0, rel=1e-15)


def test_ap_matches_exact_multi_sum():
    for s in (2, 3, 5):
        for p in (1, 4, 11):
            expected = float(exact.multi_sum(exact.MultiSumSpec(1, p, s - 1, F(0))))
            assert series.ap_coefficient(p, s) == pytest.approx(expected, rel=1e-13)


def test_ap_relates_to_coefficient():
    # a_p = -p * c_p at alpha = 0
    shift = ShiftParam(0j)
    for s in (1, 2, 4):
        for p in (1, 3, 9, 25):
            assert series.ap_coefficient(p, s) == pytest.approx(
                -p * series.coefficient_float(p, shift, s).real, rel=1e-13
            )


def test_ap_bound_and_monotonicity():
    for s in range(1, 7):
        previous = 0.0
        for p in range(1, 201):
            a_p = series.ap_coefficient(p, s)
            assert 0.0 < a_p <= (1 + math.log(p)) ** (s - 1)
            assert a_p >= previous
            previous = a_p


# ---------------------------------------------------------------------------
# domain mapping properties
# ---------------------------------------------------------------------------

half_plane_points = st.builds(
    complex,
    st.floats(min_value=-50.0, max_value=0.499, allow_nan=False),
    st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
)
disk_points = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(min_value=0.0, max_value=0.999),
    st.floats(min_value=0.0, max_value=2 * math.pi),
)


@given(w=half_plane_points)
def test_half_plane_maps_into_disk(w):
    assert abs(series.half_plane_to_disk(w)) < 1.0


@settings(max_examples=200)
@given(z=disk_points)
def test_disk_maps_into_half_plane(z):
    assert series.disk_to_half_plane(z).real < 0.5


@given(w=half_plane_points)
def test_mapping_round_trip(w):
    back = series.disk_to_half_plane(series.half_plane_to_disk(w))
    assert abs(back - w) <= 1e-9 * (1 + abs(w))


def test_series_result_contract():
    for tol in (1e-6, 1e-10, 1e-12):
        for result in (
            series.lerch_accelerated(-1, ShiftParam(0.5 + 0j), 2, tol=tol),
            series.lerch_direct(0.4 - 0.3j, ShiftParam(1j), 3, tol=tol),
            series.zeta_accelerated(4, tol=tol),
        ):
            assert isinstance(result, SeriesResult)
            assert result.converged
            assert result.error_bound <= tol
            assert result.terms_used <= series.DEFAULT_MAX_TERMS
