import itertools
import math
import random

import pytest

from zeta_notation import NegativeRealBranch, NonRealComplexity, ScheduleTooShort, ZeroAlpha, ZeroDenominator
from zeta_notation.asymptote import (
    Family,
    Relation,
    Thresholds,
    TransformParams,
    apply_general_notation,
    check_big_o,
    classify_zeta,
    compare_modulus,
    transform_to_real,
)
from zeta_notation.expr import Constant, Multiply, evaluate, log_polar
from zeta_notation.parser import parse
from zeta_notation.zeta import DEFAULT_SCHEDULE, PhaseKind, SampleSchedule

CATALOG = ["1", "log(n)", "n", "n*log(n)", "n^2", "n^3", "2^n"]
MIXED = parse("n*log(n) + i*n^2")
S = DEFAULT_SCHEDULE


def test_compare_identical():
    assert compare_modulus(parse("n"), parse("n"), S).relation is Relation.THETA_EQUIVALENT


def test_compare_strict():
    v = compare_modulus(parse("n"), parse("n^2"), S)
    assert v.relation is Relation.STRICTLY_DOMINATED
    assert v.trend_slope == pytest.approx(-1.0, abs=1e-12)


def test_compare_mixed_example_against_square():
    v = compare_modulus(MIXED, parse("n^2"), S)
    assert v.relation is Relation.THETA_EQUIVALENT
    assert all(0.99 <= r <= 1.01 for _, r in v.ratio_evidence)


def test_mixed_ratio_oracle():
    # sqrt((ln n/n)^2 + 1) evaluated independently
    f2 = parse("n^2")
    for k in (20, 30, 40):
        n = 2**k
        ratio = math.exp(log_polar(MIXED, n)[0] - log_polar(f2, n)[0])
        assert ratio == pytest.approx(math.sqrt((math.log(n) / n) ** 2 + 1), rel=1e-12)


def test_compare_rejects_vanishing_reference():
    with pytest.raises(ZeroDenominator):
        compare_modulus(parse("n"), parse("n - n"), S)


def test_compare_needs_two_tail_points():
    with pytest.raises(ScheduleTooShort):
        compare_modulus(parse("n"), parse("n"), SampleSchedule((5,)))


def test_log_log_factor_is_below_sampling_resolution():
    # ln ln n changes by under 7% across the tail, so the pair looks Theta;
    # the verdict must at least never point the wrong way
    v = compare_modulus(parse("n"), parse("n*log(log(n))"), S)
    assert v.relation is not Relation.STRICTLY_DOMINATES
    assert -0.02 < v.trend_slope < 0


def test_tight_thresholds_cannot_separate_log_factors():
    # with these cutoffs a log factor is indistinguishable from a constant
    strict = Thresholds(small=1e-3, large=1e3, theta_band=100, slope_tol=0.05)
    v = compare_modulus(parse("n"), parse("n*log(n)"), S, strict)
    assert v.relation is Relation.THETA_EQUIVALENT
    assert -0.05 < v.trend_slope < -0.03


@pytest.mark.parametrize("i, j", list(itertools.combinations(range(len(CATALOG)), 2)))
def test_catalog_order_and_antisymmetry(i, j):
    a, b = parse(CATALOG[i]), parse(CATALOG[j])
    assert compare_modulus(a, b, S).relation is Relation.STRICTLY_DOMINATED
    assert compare_modulus(b, a, S).relation is Relation.STRICTLY_DOMINATES


@pytest.mark.parametrize("text", CATALOG + ["n*log(n) + i*n^2", "exp(i*n)*n", "-3*n"])
def test_reflexive(text):
    f = parse(text)
    assert compare_modulus(f, f, S).relation is Relation.THETA_EQUIVALENT


@pytest.mark.parametrize("c", [2, 10])
@pytest.mark.parametrize("i, j", [(0, 2), (2, 3), (3, 4), (4, 6), (2, 2), (5, 1)])
def test_scale_invariance(c, i, j):
    a, b = parse(CATALOG[i]), parse(CATALOG[j])
    base = compare_modulus(a, b, S).relation
    scaled = compare_modulus(Multiply(Constant(float(c)), a), b, S).relation
    assert base is not Relation.UNDETERMINED
    assert scaled is base


def test_big_o_examples():
    assert check_big_o(parse("n"), parse("n^2"), S).holds
    assert not check_big_o(parse("n^2"), parse("n"), S).holds
    r = check_big_o(MIXED, parse("n^2"), S)
    assert r.holds
    assert r.witness_constant == pytest.approx(2.0, rel=1e-6)
    assert r.from_n == S.tail[0]


@pytest.mark.parametrize("psi, f", list(itertools.product(CATALOG, CATALOG)))
def test_big_o_witness_soundness(psi, f):
    p, q = parse(psi), parse(f)
    r = check_big_o(p, q, S)
    assert r.holds == (CATALOG.index(psi) <= CATALOG.index(f))
    if r.holds:
        for n in S.points:
            if n >= r.from_n:
                assert log_polar(p, n)[0] <= math.log(r.witness_constant) + log_polar(q, n)[0]


# -- general notation --------------------------------------------------------


def test_apply_examples():
    assert apply_general_notation(parse("n")) == parse("n")
    assert apply_general_notation(parse("n"), TransformParams(2, 3)) == parse("2*n + 3")
    assert evaluate(apply_general_notation(parse("n^2"), TransformParams(3, 1)), 4).re == 49.0


def test_zero_alpha_is_rejected():
    with pytest.raises(ZeroAlpha):
        TransformParams(0, 1)


def test_transform_examples():
    assert transform_to_real(parse("2*n + 3"), TransformParams(2, 3), S) == parse("n")
    g = parse("n*log(n) + 1")
    assert transform_to_real(g, TransformParams(), S) == g


def test_transform_refuses_imaginary_part():
    with pytest.raises(NonRealComplexity) as info:
        transform_to_real(parse("n + i*n"), TransformParams(), S)
    assert info.value.witness_n == 2
    assert "n=2" in str(info.value)


def test_transform_refuses_negative_branch():
    with pytest.raises(NegativeRealBranch):
        transform_to_real(parse("-n"), TransformParams(), S)


def test_transform_round_trip():
    rng = random.Random(7)
    sched = SampleSchedule.geometric(2, 2, 20)
    for text in ["n", "n*log(n)", "sqrt(n) + 3", "n^2/log(n)", "log2(n)^2"]:
        f = parse(text)
        for _ in range(5):
            p = TransformParams(rng.uniform(0.1, 10), rng.uniform(0, 10))
            back = transform_to_real(apply_general_notation(f, p), p, sched)
            for n in sched:
                want = evaluate(f, n).re
                assert evaluate(back, n).re == pytest.approx(want, rel=1e-9)


# -- classification ----------------------------------------------------------


@pytest.mark.parametrize(
    "text, family",
    [
        ("1", Family.CONSTANT),
        ("7 + i", Family.CONSTANT),
        ("log(n)", Family.LOGARITHMIC),
        ("n", Family.LINEAR),
        ("n*log(n)", Family.LINEARITHMIC),
        ("n^2", Family.POLYNOMIAL),
        ("2^n", Family.EXPONENTIAL),
        ("1/n", Family.UNCLASSIFIED),
    ],
)
def test_classify_catalog(text, family):
    assert classify_zeta(parse(text), S).family is family


def test_classify_cubic():
    label = classify_zeta(parse("n^3"), S)
    assert label.family is Family.POLYNOMIAL
    assert label.degree == pytest.approx(3.0, abs=1e-9)


def test_classify_mixed_example():
    label = classify_zeta(MIXED, S)
    assert label.family is Family.POLYNOMIAL
    assert 1.95 <= label.degree <= 2.05
    assert label.limiting_phase.kind is PhaseKind.CONVERGES
    assert abs(label.limiting_phase.value - math.pi / 2) <= 1e-3


def test_exponential_fit_oracle():
    # log g = n ln 2 exactly, so the log-linear fit slope is ln 2
    logs = [log_polar(parse("2^n"), n)[0] for n in S.tail]
    for n, lg in zip(S.tail, logs):
        assert lg == pytest.approx(n * math.log(2), rel=1e-14)


@pytest.mark.parametrize("text", ["n", "n*log(n)", "n^2 + 1", "sqrt(n)", "2^n"])
def test_real_functions_have_zero_phase(text):
    f = parse(text)
    assert classify_zeta(f, S).limiting_phase.value == 0.0
    assert compare_modulus(f, f, S).relation is Relation.THETA_EQUIVALENT
