"""Exact measure values, additivity, monotonicity, and bucket reports."""

import random
from fractions import Fraction

import pytest

from densepairs.decomposition import decompose, is_small
from densepairs.errors import NotGroundError
from densepairs.evaluate import eval_formula
from densepairs.formulas import FALSE, TheoryMode, make_and, make_not, make_or
from densepairs.measure import BucketReport, bucket_index, bucket_partition, measure
from densepairs.model import Model, ModelElement, compare
from densepairs.parser import parse, parse_element
from densepairs.qe import qe
from densepairs.randgen import random_qf_formula
from densepairs.terms import hvar

MODEL = Model(3)
X = hvar(1)


def mval(text):
    return measure(parse(text), X).value


def test_normalization():
    assert mval("0 < x1 & x1 < 1") == ModelElement.from_rational(1)
    assert mval("x1 < x1") == ModelElement()
    assert measure(FALSE, X).value == ModelElement()


def test_small_sets_are_null():
    assert mval("Q(x1)") == ModelElement()
    assert mval("pi(x1) = pi(r2)") == ModelElement()
    assert mval("x1 = 1/2") == ModelElement()


def test_interval_lengths():
    assert mval("0 < x1 & x1 < 1/2") == ModelElement.from_rational(Fraction(1, 2))
    assert mval("1/4 < x1 & x1 < 3/4") == ModelElement.from_rational(Fraction(1, 2))
    # clipping to the unit window
    assert mval("x1 > 1/2") == ModelElement.from_rational(Fraction(1, 2))
    assert mval("x1 < 10") == ModelElement.from_rational(1)


def test_irrational_endpoint_gives_exact_element():
    got = mval("x1 > r2 - 1 & x1 < 1")
    expected = ModelElement({0: Fraction(2), 2: Fraction(-1)})  # 2 - sqrt2
    assert got == expected
    lo, hi = got.enclosure(64)
    assert lo > Fraction(58, 100) and hi < Fraction(59, 100)


def test_coset_complement_has_full_measure():
    # removing a small set does not change the measure
    assert mval("!Q(x1)") == ModelElement.from_rational(1)
    assert mval("!Q(x1) & x1 != 1/2*r2") == ModelElement.from_rational(1)
    assert mval("Q(x1) | x1 = 1/2*r2") == ModelElement()


def test_two_valued_on_invariant_sets():
    # coset-bounded sets take measure 0 or 1 on the window, never in between
    texts = ["Q(x1)", "!Q(x1)", "pi(x1) != pi(r2)", "pi(2*x1) = pi(r3)"]
    for text in texts:
        f = parse(text)
        value = measure(f, X).value
        window = parse("0 < x1 & x1 < 1")
        d = decompose(make_and([f, window]), X)
        if is_small(d):
            assert value == ModelElement()
        else:
            assert value == ModelElement.from_rational(1)


def test_finite_additivity_exact():
    rng = random.Random(1001)
    tried = 0
    while tried < 40:
        f = random_qf_formula(rng, [X], MODEL, TheoryMode.POVS, depth=2)
        g = random_qf_formula(rng, [X], MODEL, TheoryMode.POVS, depth=2)
        window = parse("0 < x1 & x1 < 1")
        if not decompose(make_and([f, g, window]), X).is_empty():
            continue  # need disjoint pairs on the window
        tried += 1
        total = measure(make_or([f, g]), X).value
        assert total == measure(f, X).value + measure(g, X).value


def test_monotonicity_exact():
    rng = random.Random(1002)
    checked = 0
    while checked < 40:
        f = random_qf_formula(rng, [X], MODEL, TheoryMode.POVS, depth=2)
        g = random_qf_formula(rng, [X], MODEL, TheoryMode.POVS, depth=2)
        implies = qe(make_not(make_or([make_not(f), g])), TheoryMode.POVS)
        # f implies g iff f & !g defines the empty set
        if not decompose(make_and([f, make_not(g)]), X).is_empty():
            continue
        checked += 1
        assert compare(measure(f, X).value, measure(g, X).value) <= 0


def test_requires_ground_parameters():
    with pytest.raises(NotGroundError):
        measure(parse("x1 < x2"), X)
    value = measure(parse("x1 < x2"), X, {hvar(2): parse_element("1/3")}).value
    assert value == ModelElement.from_rational(Fraction(1, 3))


def test_bucket_index_tie_goes_down():
    assert bucket_index(ModelElement(), 10) == 1
    assert bucket_index(ModelElement.from_rational(Fraction(1, 10)), 10) == 1
    assert bucket_index(ModelElement.from_rational(Fraction(11, 100)), 10) == 2
    assert bucket_index(ModelElement.from_rational(1), 10) == 10
    assert bucket_index(ModelElement({0: Fraction(2), 2: Fraction(-1)}), 10) == 6


def test_bucket_partition_example():
    f = parse("0 < x1 & x1 < x2")
    params = [
        {hvar(2): parse_element("1/4")},
        {hvar(2): parse_element("3/10")},
    ]
    report = bucket_partition(f, X, params, 10)
    assert isinstance(report, BucketReport)
    assert [e.bucket for e in report.entries] == [3, 3]
    assert [e.value for e in report.entries] == [
        ModelElement.from_rational(Fraction(1, 4)),
        ModelElement.from_rational(Fraction(3, 10)),
    ]


def test_bucket_partition_small_sets_land_in_bucket_one():
    report = bucket_partition(
        parse("Q(x1 - x2)"),
        X,
        [{hvar(2): parse_element("r2")}, {hvar(2): parse_element("1/2")}],
        7,
    )
    assert all(e.bucket == 1 or e.value == ModelElement.from_rational(1) for e in report.entries)
    assert report.entries[0].value == ModelElement()  # sqrt2-coset is small


def test_bucket_bound_within_buckets():
    rng = random.Random(1003)
    f = parse("0 < x1 & x1 < x2")
    params = [
        {hvar(2): ModelElement.from_rational(Fraction(rng.randint(0, 12), 12))}
        for _ in range(30)
    ]
    for k in (5, 10, 100):
        report = bucket_partition(f, X, params, k)
        by_bucket = {}
        for entry in report.entries:
            by_bucket.setdefault(entry.bucket, []).append(entry.value)
        for values in by_bucket.values():
            for a in values:
                for b in values:
                    diff = a - b
                    if diff.sign() < 0:
                        diff = -diff
                    assert compare(diff, ModelElement.from_rational(Fraction(2, k))) <= 0


def test_report_serialization():
    report = bucket_partition(
        parse("0 < x1 & x1 < x2"), X, [{hvar(2): parse_element("1/4")}], 10
    )
    data = report.to_json()
    assert data["k"] == 10
    assert data["assignments"][0]["params"] == {"x2": {"0": "1/4"}}
    assert data["assignments"][0]["bucket"] == 3
