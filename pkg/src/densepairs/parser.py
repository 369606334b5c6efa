"""Text front end for the two-sorted formula language.

Grammar (whitespace-insensitive)::

    rational := ['-'] digits ['/' digits]
    hvar     := 'x' digits           qvar := 'u' digits
    basis    := 'r' prime            (r2, r3, r5, ... name square roots)
    hterm    := signed sum of [rational '*'] (hvar | basis | rational)
    qterm    := signed sum of [rational '*'] qvar and 'pi(' hterm ')' parts
    atom     := hterm ('='|'<'|'<='|'>'|'>=') hterm | 'Q(' hterm ')'
              | qterm ('='|'!=') qterm | qterm ('prec'|'preceq') qterm
    formula  := 'true' | 'false' | atom | '!' formula
              | formula ('&'|'|'|'->') formula
              | ('E'|'A') (hvar|qvar) '.' formula | '(' formula ')'

Precedence is ``!`` over ``&`` over ``|`` over ``->``; quantifier scope
extends maximally to the right.  ``<=``, ``>=``, ``preceq`` and ``->``
are surface syntax, desugared while parsing; the literal 0 may stand for
the zero of either sort.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModeError, ParseError, SortError
from .formulas import (
    FALSE,
    TRUE,
    Exists,
    Forall,
    Formula,
    TheoryMode,
    check_mode,
    home_eq,
    home_lt,
    in_q,
    make_and,
    make_not,
    make_or,
    quot_eq,
    quot_prec,
    standardize,
)
from .model import ModelElement, QuotientElement, is_prime
from .terms import HomeTerm, QuotientTerm, Sort, Variable

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+\d*)"
    r"|(?P<op>->|<=|>=|!=|[=<>!&|().+\-*/]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(at, f"unexpected character {stripped[0]!r}")
        pos = m.end()
        for kind in ("num", "name", "op"):
            got = m.group(kind)
            if got is not None:
                tokens.append(_Token(kind, got, m.start(kind)))
                break
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _RawTerm:
    """A parsed signed sum before its sort is resolved."""

    def __init__(self):
        self.hcoeffs: dict[Variable, Fraction] = {}
        self.qcoeffs: dict[Variable, Fraction] = {}
        self.const: dict[int, Fraction] = {}
        self.pushed = HomeTerm()
        self.saw_quotient = False

    def add_var(self, v: Variable, q: Fraction) -> None:
        if v.sort is Sort.QUOTIENT:
            self.saw_quotient = True
            self.qcoeffs[v] = self.qcoeffs.get(v, Fraction(0)) + q
        else:
            self.hcoeffs[v] = self.hcoeffs.get(v, Fraction(0)) + q

    def add_const(self, radicand: int, q: Fraction) -> None:
        self.const[radicand] = self.const.get(radicand, Fraction(0)) + q

    def add_pushed(self, inner: HomeTerm, q: Fraction) -> None:
        self.saw_quotient = True
        self.pushed = self.pushed + inner.scale(q)

    def quotient_like(self) -> bool:
        return self.saw_quotient

    def home_like(self) -> bool:
        return bool(self.hcoeffs) or any(q != 0 for q in self.const.values())

    def as_home(self, pos: int) -> HomeTerm:
        if self.quotient_like():
            raise SortError(f"quotient-sort material in a home-sort term (position {pos})")
        return HomeTerm(self.hcoeffs, ModelElement(self.const))

    def as_quotient(self, pos: int) -> QuotientTerm:
        if self.hcoeffs:
            raise SortError(
                f"home variable outside pi(...) in a quotient-sort term (position {pos})"
            )
        if any(q != 0 for q in self.const.values()):
            raise SortError(
                f"nonzero home-sort constant in a quotient-sort term (position {pos}); "
                "wrap it in pi(...)"
            )
        return QuotientTerm(self.qcoeffs, self.pushed)


class _Parser:
    def __init__(self, text: str, mode: TheoryMode):
        self.text = text
        self.mode = mode
        self.tokens = _tokenize(text)
        self.idx = 0

    # -- token plumbing ------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def next(self) -> _Token:
        tok = self.tokens[self.idx]
        if tok.kind != "end":
            self.idx += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(tok.pos, f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return tok

    def at_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in texts

    def at_name(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "name" and tok.text in texts

    # -- formulas --------------------------------------------------------

    def parse_formula(self) -> Formula:
        left = self.parse_or()
        if self.at_op("->"):
            self.next()
            right = self.parse_formula()  # right-associative
            return make_or([make_not(left), right])
        return left

    def parse_or(self) -> Formula:
        parts = [self.parse_and()]
        while self.at_op("|"):
            self.next()
            parts.append(self.parse_and())
        return make_or(parts) if len(parts) > 1 else parts[0]

    def parse_and(self) -> Formula:
        parts = [self.parse_unary()]
        while self.at_op("&"):
            self.next()
            parts.append(self.parse_unary())
        return make_and(parts) if len(parts) > 1 else parts[0]

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "!":
            self.next()
            return make_not(self.parse_unary())
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.parse_formula()
            self.expect_op(")")
            return inner
        if tok.kind == "name" and tok.text in ("E", "A"):
            self.next()
            var = self.parse_quantified_variable()
            self.expect_op(".")
            body = self.parse_formula()  # scope extends maximally right
            return Exists(var, body) if tok.text == "E" else Forall(var, body)
        if tok.kind == "name" and tok.text == "true":
            self.next()
            return TRUE
        if tok.kind == "name" and tok.text == "false":
            self.next()
            return FALSE
        return self.parse_atom()

    def parse_quantified_variable(self) -> Variable:
        tok = self.next()
        v = _variable_of(tok)
        if v is None:
            raise ParseError(tok.pos, f"expected a variable after quantifier, found {tok.text!r}")
        if v.sort is Sort.QUOTIENT and self.mode is TheoryMode.OVS:
            raise ModeError("quotient-sort variables require theory mode povs or povs-prec")
        return v

    def parse_atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "name" and tok.text == "Q" and self.tokens[self.idx + 1].text == "(":
            if self.mode is TheoryMode.OVS:
                raise ModeError("the subspace predicate Q requires theory mode povs or povs-prec")
            self.next()
            self.expect_op("(")
            raw, pos = self.parse_raw_term()
            self.expect_op(")")
            return in_q(raw.as_home(pos))

        left, lpos = self.parse_raw_term()
        op = self.next()
        if op.kind != "op" and not (op.kind == "name" and op.text in ("prec", "preceq")):
            raise ParseError(op.pos, f"expected a relation, found {op.text or 'end of input'!r}")
        right, rpos = self.parse_raw_term()
        rel = op.text

        if rel in ("prec", "preceq"):
            if self.mode is not TheoryMode.POVS_PREC:
                raise ModeError(f"{rel} requires theory mode povs-prec")
            s = left.as_quotient(lpos) - right.as_quotient(rpos)
            if rel == "prec":
                return quot_prec(s)
            return make_or([quot_prec(s), quot_eq(s)])

        quotient_sides = left.quotient_like() or right.quotient_like()
        if quotient_sides:
            if self.mode is TheoryMode.OVS:
                raise ModeError("quotient-sort atoms require theory mode povs or povs-prec")
            s = left.as_quotient(lpos) - right.as_quotient(rpos)
            if rel == "=":
                return quot_eq(s)
            if rel == "!=":
                return make_not(quot_eq(s))
            raise SortError(f"relation {rel!r} does not apply to quotient-sort terms")

        t = left.as_home(lpos) - right.as_home(rpos)
        if rel == "=":
            return home_eq(t)
        if rel == "!=":
            return make_not(home_eq(t))
        if rel == "<":
            return home_lt(t)
        if rel == ">":
            return home_lt(-t)
        if rel == "<=":
            return make_or([home_lt(t), home_eq(t)])
        if rel == ">=":
            return make_or([home_lt(-t), home_eq(t)])
        raise ParseError(op.pos, f"unknown relation {rel!r}")

    # -- terms -----------------------------------------------------------

    def parse_raw_term(self) -> tuple[_RawTerm, int]:
        raw = _RawTerm()
        start = self.peek().pos
        sign = Fraction(1)
        if self.at_op("-"):
            self.next()
            sign = Fraction(-1)
        elif self.at_op("+"):
            self.next()
        self.parse_summand(raw, sign)
        while self.at_op("+", "-"):
            sign = Fraction(1) if self.next().text == "+" else Fraction(-1)
            self.parse_summand(raw, sign)
        return raw, start

    def parse_summand(self, raw: _RawTerm, sign: Fraction) -> None:
        tok = self.peek()
        if tok.kind == "num":
            q = sign * self.parse_rational()
            if self.at_op("*"):
                self.next()
                self.parse_primary(raw, q)
            else:
                raw.add_const(0, q)
            return
        if tok.kind == "name":
            self.parse_primary(raw, sign)
            return
        raise ParseError(tok.pos, f"expected a term, found {tok.text or 'end of input'!r}")

    def parse_rational(self) -> Fraction:
        tok = self.next()
        if tok.kind != "num":
            raise ParseError(tok.pos, f"expected a number, found {tok.text!r}")
        numerator = int(tok.text)
        if self.at_op("/"):
            self.next()
            den = self.next()
            if den.kind != "num":
                raise ParseError(den.pos, f"expected a denominator, found {den.text!r}")
            if int(den.text) == 0:
                raise ParseError(den.pos, "zero denominator")
            return Fraction(numerator, int(den.text))
        return Fraction(numerator)

    def parse_primary(self, raw: _RawTerm, q: Fraction) -> None:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(tok.pos, f"expected a variable or basis symbol, found {tok.text!r}")
        if tok.text == "pi":
            if self.mode is TheoryMode.OVS:
                raise ModeError("pi requires theory mode povs or povs-prec")
            self.expect_op("(")
            inner, ipos = self.parse_raw_term()
            self.expect_op(")")
            raw.add_pushed(inner.as_home(ipos), q)
            return
        v = _variable_of(tok)
        if v is not None:
            if v.sort is Sort.QUOTIENT and self.mode is TheoryMode.OVS:
                raise ModeError("quotient-sort variables require theory mode povs or povs-prec")
            raw.add_var(v, q)
            return
        m = re.fullmatch(r"r(\d+)", tok.text)
        if m:
            radicand = int(m.group(1))
            if not is_prime(radicand):
                raise ParseError(tok.pos, f"r{radicand} is not a square root of a prime")
            raw.add_const(radicand, q)
            return
        raise ParseError(tok.pos, f"unknown symbol {tok.text!r}")


def _variable_of(tok: _Token) -> Variable | None:
    m = re.fullmatch(r"([xu])(\d+)", tok.text)
    if m is None:
        return None
    sort = Sort.HOME if m.group(1) == "x" else Sort.QUOTIENT
    return Variable(sort, int(m.group(2)))


def parse(text: str, mode: TheoryMode = TheoryMode.POVS) -> Formula:
    """Parse a formula; raises ParseError, SortError, or ModeError."""
    p = _Parser(text, mode)
    f = p.parse_formula()
    tail = p.peek()
    if tail.kind != "end":
        raise ParseError(tail.pos, f"unexpected trailing input {tail.text!r}")
    f = standardize(f)
    check_mode(f, mode)
    return f


def render(f: Formula) -> str:
    """Inverse of parse up to term normalization."""
    return str(f)


def parse_element(text: str) -> ModelElement:
    """Parse a ground home-sort constant like ``3/2 + 1/3*r2 - r5``."""
    p = _Parser(text, TheoryMode.POVS)
    raw, pos = p.parse_raw_term()
    tail = p.peek()
    if tail.kind != "end":
        raise ParseError(tail.pos, f"unexpected trailing input {tail.text!r}")
    t = raw.as_home(pos)
    if t.coeffs:
        raise ParseError(pos, "expected a constant, found variables")
    return t.constant


def parse_quotient_element(text: str) -> QuotientElement:
    """Parse a ground quotient-sort constant like ``pi(r2 + 2*r3)``."""
    p = _Parser(text, TheoryMode.POVS)
    raw, pos = p.parse_raw_term()
    tail = p.peek()
    if tail.kind != "end":
        raise ParseError(tail.pos, f"unexpected trailing input {tail.text!r}")
    s = raw.as_quotient(pos)
    if s.coeffs or s.pushed.coeffs:
        raise ParseError(pos, "expected a constant, found variables")
    return s.constant
