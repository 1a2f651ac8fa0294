import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exprs
from zeta_notation import DivisionByZero, LogOfZero, Overflow
from zeta_notation.expr import (
    Add,
    ComplexValue,
    Constant,
    Divide,
    EvalSettings,
    I,
    Log,
    LogBase,
    Multiply,
    N,
    Power,
    Subtract,
    evaluate,
    log_polar,
)
from zeta_notation.parser import parse

MIXED = parse("n*log(n) + i*n^2")


def test_identity_on_variable():
    assert evaluate(N, 5) == ComplexValue(5.0, 0.0)


def test_pure_imaginary_scaling():
    assert evaluate(I * N ** 2, 3) == ComplexValue(0.0, 9.0)


def test_mixed_example_at_four():
    # 4*ln(4) from a 50-digit mpmath computation
    v = evaluate(MIXED, 4)
    assert v.re == pytest.approx(5.545177444479562475, rel=1e-15)
    assert v.im == 16.0


def test_deterministic_bits():
    a = [evaluate(MIXED, n) for n in (2, 3, 1000, 2**40)]
    b = [evaluate(MIXED, n) for n in (2, 3, 1000, 2**40)]
    assert [(v.re.hex(), v.im.hex()) for v in a] == [(v.re.hex(), v.im.hex()) for v in b]


def test_bare_log_base_is_configurable():
    two = EvalSettings(log_base_for_bare_log=2.0)
    assert evaluate(Log(N), 8, two).re == pytest.approx(3.0, rel=1e-15)
    assert evaluate(Log(N), 8).re == pytest.approx(math.log(8), rel=1e-15)
    assert evaluate(LogBase(10.0, N), 1000).re == pytest.approx(3.0, rel=1e-15)


def test_principal_branch_for_negative_arguments():
    v = evaluate(Log(-N), 2)
    assert v.im == math.pi
    assert v.re == pytest.approx(math.log(2))
    root = evaluate(parse("sqrt(-n)"), 4)
    assert (root.re, root.im) == (0.0, 2.0)
    half = evaluate(parse("(-n)^0.5"), 4)
    assert half.re == pytest.approx(0.0, abs=1e-15)
    assert half.im == pytest.approx(2.0)


def test_no_negative_zero_leaks():
    v = evaluate(parse("-n"), 3)
    assert math.copysign(1.0, v.im) == 1.0


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        evaluate(parse("1/(n - 2)"), 2)
    with pytest.raises(DivisionByZero):
        evaluate(parse("(n - 2)^-1"), 2)
    assert evaluate(parse("1/(n - 2)"), 3).re == 1.0


def test_log_of_zero():
    with pytest.raises(LogOfZero):
        evaluate(parse("log(n - 2)"), 2)
    with pytest.raises(LogOfZero):
        evaluate(parse("log2(n - n)"), 7)


def test_domain_starts_at_two():
    with pytest.raises(ValueError):
        evaluate(N, 1)
    with pytest.raises(TypeError):
        evaluate(N, 2.5)


def test_overflow_policies():
    f = parse("2^n")
    with pytest.raises(Overflow):
        evaluate(f, 2**20, EvalSettings(overflow_policy="error"))
    v = evaluate(f, 2**20)
    assert v.overflow and v.re == math.inf and v.im == 0.0


def test_overflowing_intermediate_with_finite_result():
    v = evaluate(parse("2^n / 2^(n - 1)"), 5000)
    assert not v.overflow
    assert v.re == pytest.approx(2.0, rel=1e-12)


def test_log_polar_beyond_double_range():
    lg, phi = log_polar(parse("2^n"), 2**40)
    assert lg == pytest.approx(2**40 * math.log(2), rel=1e-14)
    assert phi == 0.0
    lg, phi = log_polar(parse("-i*3^n"), 10**6)
    assert lg == pytest.approx(10**6 * math.log(3), rel=1e-12)
    assert phi == -math.pi / 2
    lg, _ = log_polar(parse("2^(-n)"), 4000)
    assert lg == pytest.approx(-4000 * math.log(2), rel=1e-12)
    assert log_polar(parse("n - n"), 5) == (-math.inf, 0.0)


def test_complex_value_rejects_unflagged_infinity():
    with pytest.raises(ValueError):
        ComplexValue(math.inf, 0.0)
    ComplexValue(math.inf, 0.0, overflow=True)


def test_logbase_invariant():
    with pytest.raises(ValueError):
        LogBase(1.0, N)
    with pytest.raises(ValueError):
        LogBase(-2.0, N)


def _safe(f, n):
    try:
        v = evaluate(f, n)
    except (DivisionByZero, LogOfZero):
        return None
    return None if v.overflow else complex(v)


@settings(max_examples=200, deadline=None)
@given(exprs, exprs, st.sampled_from([2, 3, 5, 17]))
def test_evaluation_is_a_homomorphism(a, b, n):
    za, zb = _safe(a, n), _safe(b, n)
    if za is None or zb is None:
        return
    for node, expected in [
        (Add(a, b), za + zb),
        (Subtract(a, b), za - zb),
        (Multiply(a, b), za * zb),
    ]:
        got = _safe(node, n)
        if got is not None:
            assert cmath.isclose(got, expected, rel_tol=1e-12, abs_tol=1e-12)
    if zb != 0:
        got = _safe(Divide(a, b), n)
        if got is not None:
            assert cmath.isclose(got, za / zb, rel_tol=1e-12, abs_tol=1e-12)


def test_constant_power_with_integer_exponent_is_exact():
    assert evaluate(Power(Constant(-2.0), N), 3) == ComplexValue(-8.0, 0.0)
