"""Linear normal form of terms over both sorts."""

from fractions import Fraction

import pytest

from densepairs.errors import SortError, UnboundVariableError
from densepairs.model import ModelElement, QuotientElement, project
from densepairs.terms import HomeTerm, QuotientTerm, Sort, Variable, hvar, qvar


def test_variable_naming():
    assert hvar(3).name == "x3"
    assert qvar(0).name == "u0"
    assert hvar(1) != qvar(1)


def test_zero_coefficients_dropped():
    t = HomeTerm({hvar(1): Fraction(0), hvar(2): Fraction(2)})
    assert t.variables() == {hvar(2)}
    assert HomeTerm({hvar(1): Fraction(1)}) - HomeTerm({hvar(1): Fraction(1)}) == HomeTerm()


def test_normal_form_is_canonical():
    # same affine function built two ways compares equal (and hashes equal)
    a = HomeTerm({hvar(1): Fraction(2)}, ModelElement.from_rational(1))
    b = (
        HomeTerm.from_variable(hvar(1))
        + HomeTerm.from_variable(hvar(1))
        + HomeTerm.from_element(ModelElement.from_rational(1))
    )
    assert a == b
    assert hash(a) == hash(b)
    assert str(a) == "2*x1 + 1"


def test_sort_checked_in_coefficient_maps():
    with pytest.raises(SortError):
        HomeTerm({qvar(1): Fraction(1)})
    with pytest.raises(SortError):
        QuotientTerm({hvar(1): Fraction(1)})


def test_home_term_evaluation_and_substitution():
    t = HomeTerm({hvar(1): Fraction(2), hvar(2): Fraction(-1)}, ModelElement.from_rational(3))
    sigma = {
        hvar(1): ModelElement({2: Fraction(1)}),
        hvar(2): ModelElement.from_rational(Fraction(1, 2)),
    }
    value = t.evaluate(sigma)
    assert value == ModelElement({0: Fraction(5, 2), 2: Fraction(2)})
    with pytest.raises(UnboundVariableError):
        t.evaluate({hvar(1): ModelElement()})
    replaced = t.substitute(hvar(1), HomeTerm.from_variable(hvar(3)).scale(3))
    assert replaced.coeff(hvar(3)) == 6
    assert replaced.coeff(hvar(1)) == 0


def test_quotient_term_aggregates_the_quotient_map():
    # pi(x1 + r2) contributes its constant to the quotient constant
    inner = HomeTerm({hvar(1): Fraction(1)}, ModelElement({2: Fraction(1)}))
    s = QuotientTerm.project_term(inner)
    assert s.pushed == HomeTerm({hvar(1): Fraction(1)})
    assert s.constant == QuotientElement({2: Fraction(1)})
    assert s.pushed.constant.is_zero()


def test_quotient_term_evaluation():
    s = QuotientTerm(
        {qvar(1): Fraction(2)},
        HomeTerm({hvar(1): Fraction(1)}),
        QuotientElement({3: Fraction(1)}),
    )
    sigma = {
        qvar(1): QuotientElement({2: Fraction(1)}),
        hvar(1): ModelElement({0: Fraction(5), 2: Fraction(1)}),
    }
    assert s.evaluate(sigma) == QuotientElement({2: Fraction(3), 3: Fraction(1)})


def test_quotient_substitution_distributes_into_pushed():
    s = QuotientTerm((), HomeTerm({hvar(1): Fraction(1)}))
    t = HomeTerm({hvar(3): Fraction(2)})
    out = s.substitute_home(hvar(1), t)
    assert out.pushed == HomeTerm({hvar(3): Fraction(2)})

    u = QuotientTerm({qvar(1): Fraction(1)})
    w = QuotientTerm((), HomeTerm({hvar(2): Fraction(1)}))
    assert u.substitute_quotient(qvar(1), w).pushed.coeff(hvar(2)) == 1


def test_quotient_substitution_by_constant_lands_in_constant():
    s = QuotientTerm((), HomeTerm({hvar(1): Fraction(2)}))
    out = s.substitute_home(hvar(1), HomeTerm.from_element(ModelElement({2: Fraction(1)})))
    assert out.pushed.is_zero()
    assert out.constant == QuotientElement({2: Fraction(2)})


def test_rendering():
    t = HomeTerm({hvar(1): Fraction(2), hvar(3): Fraction(-1)}, ModelElement({0: Fraction(3, 2), 2: Fraction(1)}))
    assert str(t) == "2*x1 - x3 + 3/2 + r2"
    s = QuotientTerm(
        {qvar(1): Fraction(2), qvar(2): Fraction(-1)},
        HomeTerm({hvar(1): Fraction(1)}),
        QuotientElement({2: Fraction(1)}),
    )
    assert str(s) == "2*u1 - u2 + pi(x1 + r2)"
    assert str(QuotientTerm()) == "0"
