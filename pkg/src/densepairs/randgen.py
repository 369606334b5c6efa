"""Seedable random instances for self-checking and the test suite.

Everything here draws only from an explicit random.Random, so a fixed
seed reproduces the same formulas, assignments, and verdicts bit for
bit across runs and platforms.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .formulas import (
    Atom,
    Formula,
    TheoryMode,
    home_eq,
    home_lt,
    in_q,
    make_and,
    make_not,
    make_or,
    quot_eq,
    quot_prec,
)
from .model import Model, ModelElement, QuotientElement
from .terms import HomeTerm, QuotientTerm, Sort, Variable


def random_rational(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_element(rng: random.Random, model: Model, span: int = 3) -> ModelElement:
    coeffs = {}
    for k in model.radicands:
        if rng.random() < 0.6:
            coeffs[k] = random_rational(rng, span)
    return ModelElement(coeffs)


def random_quotient_element(rng: random.Random, model: Model, span: int = 3) -> QuotientElement:
    coeffs = {}
    for k in model.primes:
        if rng.random() < 0.6:
            coeffs[k] = random_rational(rng, span)
    return QuotientElement(coeffs)


def random_assignment(rng: random.Random, variables: Sequence[Variable], model: Model):
    out = {}
    for v in variables:
        if v.sort is Sort.HOME:
            out[v] = random_element(rng, model)
        else:
            out[v] = random_quotient_element(rng, model)
    return out


def _random_home_term(
    rng: random.Random, variables: Sequence[Variable], model: Model, force: Variable | None
) -> HomeTerm:
    coeffs = {}
    for v in variables:
        if v.sort is Sort.HOME and rng.random() < 0.5:
            c = rng.randint(-3, 3)
            if c:
                coeffs[v] = Fraction(c)
    if force is not None:
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        coeffs[force] = Fraction(c)
    constant = random_element(rng, model, 2) if rng.random() < 0.7 else ModelElement()
    return HomeTerm(coeffs, constant)


def _random_quotient_term(
    rng: random.Random, variables: Sequence[Variable], model: Model, force: Variable | None
) -> QuotientTerm:
    coeffs = {}
    pushed = {}
    for v in variables:
        if rng.random() < 0.5:
            c = rng.randint(-3, 3)
            if not c:
                continue
            if v.sort is Sort.QUOTIENT:
                coeffs[v] = Fraction(c)
            else:
                pushed[v] = Fraction(c)
    if force is not None:
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        if force.sort is Sort.QUOTIENT:
            coeffs[force] = c
        else:
            pushed[force] = c
    constant = (
        random_quotient_element(rng, model, 2) if rng.random() < 0.5 else QuotientElement()
    )
    return QuotientTerm(coeffs, HomeTerm(pushed), constant)


def random_literal(
    rng: random.Random,
    variables: Sequence[Variable],
    model: Model,
    mode: TheoryMode,
    force: Variable | None = None,
) -> Formula:
    """One random literal, optionally guaranteed to mention `force`."""
    home_kinds = ["home_eq", "home_lt", "in_q"]
    quot_kinds = ["quot_eq"]
    if mode is TheoryMode.OVS:
        kinds = ["home_eq", "home_lt"]
    elif mode is TheoryMode.POVS:
        kinds = home_kinds + quot_kinds
    else:
        kinds = home_kinds + quot_kinds + ["quot_prec"]
    if force is not None and force.sort is Sort.QUOTIENT:
        kinds = [k for k in kinds if k.startswith("quot")]
    kind = rng.choice(kinds)
    if kind in ("home_eq", "home_lt", "in_q"):
        t = _random_home_term(rng, variables, model, force)
        atom: Atom = {"home_eq": home_eq, "home_lt": home_lt, "in_q": in_q}[kind](t)
    else:
        s = _random_quotient_term(rng, variables, model, force)
        atom = quot_eq(s) if kind == "quot_eq" else quot_prec(s)
    lit: Formula = atom
    if rng.random() < 0.35:
        lit = make_not(lit)
    return lit


def random_conjunction(
    rng: random.Random,
    bound: Variable,
    context: Sequence[Variable],
    model: Model,
    mode: TheoryMode,
    max_literals: int = 6,
) -> list[Formula]:
    """Literals for a single-quantifier instance; most mention the bound variable."""
    n = rng.randint(1, max_literals)
    literals = []
    for i in range(n):
        force = bound if (i == 0 or rng.random() < 0.7) else None
        literals.append(random_literal(rng, [bound, *context], model, mode, force))
    return literals


def random_qf_formula(
    rng: random.Random,
    variables: Sequence[Variable],
    model: Model,
    mode: TheoryMode,
    depth: int = 2,
) -> Formula:
    if depth <= 0 or rng.random() < 0.4:
        return random_literal(rng, variables, model, mode)
    shape = rng.random()
    children = [
        random_qf_formula(rng, variables, model, mode, depth - 1)
        for _ in range(rng.randint(2, 3))
    ]
    if shape < 0.45:
        return make_and(children)
    if shape < 0.9:
        return make_or(children)
    return make_not(children[0])


def random_quantified_formula(
    rng: random.Random,
    model: Model,
    mode: TheoryMode,
    quantifiers: int = 2,
    free_home: int = 1,
    free_quotient: int = 1,
) -> Formula:
    """A prefix of alternating-ish quantifiers over both sorts."""
    from .formulas import Exists, Forall

    if mode is TheoryMode.OVS:
        free_quotient = 0
    bound_vars = []
    for i in range(quantifiers):
        sort = Sort.HOME if (mode is TheoryMode.OVS or rng.random() < 0.6) else Sort.QUOTIENT
        bound_vars.append(Variable(sort, 50 + i))
    context = [Variable(Sort.HOME, 90 + i) for i in range(free_home)] + [
        Variable(Sort.QUOTIENT, 90 + i) for i in range(free_quotient)
    ]
    body = random_qf_formula(rng, bound_vars + context, model, mode, depth=2)
    f = body
    for i, v in enumerate(reversed(bound_vars)):
        if rng.random() < 0.5:
            f = Exists(v, f)
        else:
            f = Forall(v, f)
    return f
