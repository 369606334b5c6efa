"""Canonical codes for definable unary sets and piecewise-linear functions.

A unary set is coded by its near-frontier together with its interior
pieces, each piece carrying its endpoints and a lexicographically
sorted list of coset representatives.  Because the decomposition is
canonical, structural equality of codes coincides with extensional
equality of the coded sets, which strengthens the usual
finitely-many-codes notion to a single canonical datum.

A definable partial function with a piecewise-linear graph is coded by
its finite slope/intercept inventory: for every line that the graph
follows on an infinite locus, the (coset-pattern) domain on which it
does, plus the finitely many leftover graph points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .decomposition import (
    CosetSet,
    Decomposition,
    Endpoint,
    decompose,
    near_interior,
)
from .errors import (
    ArityError,
    InfiniteResidualError,
    InternalError,
    NotFunctionalError,
    NotGroundError,
)
from .evaluate import Assignment, eval_formula
from .formulas import (
    AtomKind,
    Exists,
    Forall,
    Formula,
    Not,
    TheoryMode,
    all_atoms,
    bound_variables,
    dnf_clauses,
    free_variables,
    home_eq,
    make_and,
    make_not,
    make_or,
    substitute,
)
from .model import ModelElement, QuotientElement, compare
from .qe import decide_sentence, qe
from .terms import HomeTerm, QuotientTerm, Sort, Variable


@dataclass(frozen=True)
class CodePiece:
    lo: Endpoint
    hi: Endpoint
    cofinite: bool
    cosets: tuple[QuotientElement, ...]  # sorted lexicographically

    def to_json(self):
        return {
            "a": self.lo.to_json(),
            "b": self.hi.to_json(),
            "polarity": "cofinite" if self.cofinite else "finite",
            "cosets": [w.to_json() for w in self.cosets],
        }


@dataclass(frozen=True)
class UnarySetCode:
    """Canonical code of a definable unary set; equal codes, equal sets."""

    frontier: tuple[ModelElement, ...]
    pieces: tuple[CodePiece, ...]

    def to_json(self):
        return {
            "frontier": [p.to_json() for p in self.frontier],
            "pieces": [p.to_json() for p in self.pieces],
        }


def _code_of_decomposition(d: Decomposition) -> UnarySetCode:
    interior, frontier = near_interior(d)
    pieces = tuple(
        CodePiece(p.lo, p.hi, p.cosets.cofinite, p.sorted_cosets())
        for p in interior.pieces
    )
    return UnarySetCode(tuple(frontier), pieces)


def code_unary_set(
    f: Formula, v: Variable, assignment: Assignment | None = None
) -> UnarySetCode:
    return _code_of_decomposition(decompose(f, v, assignment))


def codes_equal(c1: UnarySetCode, c2: UnarySetCode) -> bool:
    """Structural equality; by canonicality this is extensional equality."""
    return c1 == c2


@dataclass(frozen=True)
class FunctionPiece:
    slope: Fraction
    intercept: ModelElement
    domain: UnarySetCode

    def to_json(self):
        return {
            "slope": str(self.slope),
            "intercept": self.intercept.to_json(),
            "domain": self.domain.to_json(),
        }


@dataclass(frozen=True)
class FunctionCode:
    """Slope/intercept inventory of a piecewise-linear definable function."""

    exceptional: tuple[tuple[ModelElement, ModelElement], ...]
    pieces: tuple[FunctionPiece, ...]

    def to_json(self):
        return {
            "exceptional": [[a.to_json(), b.to_json()] for a, b in self.exceptional],
            "pieces": [p.to_json() for p in self.pieces],
        }

    def value_at(self, x: ModelElement) -> ModelElement | None:
        """Reconstruct the function from its code."""
        for a, b in self.exceptional:
            if a == x:
                return b
        for piece in self.pieces:
            if _code_contains(piece.domain, x):
                return x.scale(piece.slope) + piece.intercept
        return None


def _code_contains(code: UnarySetCode, m: ModelElement) -> bool:
    from .model import project

    if m in code.frontier:
        return True
    e = Endpoint.at(m)
    for piece in code.pieces:
        if piece.lo.compare(e) < 0 and e.compare(piece.hi) < 0:
            if (project(m) in piece.cosets) != piece.cofinite:
                return True
    return False


def _check_functional(g: Formula, x: Variable, y: Variable) -> None:
    taken = {v.index for v in free_variables(g) | bound_variables(g) if v.sort is Sort.HOME}
    taken |= {x.index, y.index}
    y2 = Variable(Sort.HOME, max(taken) + 1)
    both = make_and([g, substitute(g, y, HomeTerm.from_variable(y2))])
    same = home_eq(HomeTerm.from_variable(y) - HomeTerm.from_variable(y2))
    sentence = Forall(x, Forall(y, Forall(y2, make_or([make_not(both), same]))))
    if not decide_sentence(sentence, TheoryMode.POVS):
        raise NotFunctionalError("the relation maps some point to two values")


def _line_candidates(g: Formula, x: Variable, y: Variable):
    """Slope/intercept pairs read from the equality literals linking y to x.

    A conjunction of strict order and coset literals never pins y to a
    single value, so every graph point of a functional relation comes
    from an equation, and the equations of the eliminated form list
    every line the graph can follow.
    """
    candidates = []
    seen = set()
    for clause in dnf_clauses(g):
        for lit in clause:
            if isinstance(lit, Not):
                continue  # a disequation pins nothing
            atom = lit
            if atom.kind is not AtomKind.HOME_EQ:
                continue
            b = atom.payload.coeff(y)
            if b == 0:
                continue
            a = atom.payload.coeff(x)
            const = atom.payload.without(x).without(y).constant
            slope = -a / b
            intercept = const.scale(-1 / b)
            key = (slope, intercept)
            if key not in seen:
                seen.add(key)
                candidates.append(key)
    candidates.sort(key=lambda sc: (sc[0], tuple(sorted(sc[1].coeffs.items()))))
    return candidates


def _strip_points(formula: Formula, v: Variable) -> Decomposition:
    """Decompose and drop listed points until only open-pattern pieces remain."""
    current = formula
    for _ in range(5):
        d = decompose(current, v)
        if not d.points:
            return d
        if not d.pieces:
            return Decomposition((), ())
        x = HomeTerm.from_variable(v)
        holes = [make_not(home_eq(x - HomeTerm.from_element(p))) for p in d.points]
        current = make_and([make_or([p.formula(v) for p in d.pieces])] + holes)
    raise InternalError("point stripping did not converge")


def code_function(
    f: Formula,
    x: Variable,
    y: Variable,
    assignment: Assignment | None = None,
) -> FunctionCode:
    """Code a binary formula that is functional from x to y.

    Slopes are extracted syntactically from the eliminated form; each
    candidate line is intersected with the graph, its matching locus is
    reduced to open coset patterns, and whatever those loci miss is a
    finite set of explicit graph points (a non-finite residue would
    contradict the decomposition shape of definable graphs and raises).
    """
    if x.sort is not Sort.HOME or y.sort is not Sort.HOME:
        raise ArityError("function coding needs two home-sort variables")
    if x == y:
        raise ArityError("argument and value variables must differ")
    assignment = assignment or {}
    g = f
    for var in sorted(free_variables(f) - {x, y}, key=lambda w: w.sort_key()):
        if var not in assignment:
            raise NotGroundError(f"{var} is not bound by the assignment")
        value = assignment[var]
        term = (
            HomeTerm.from_element(value)
            if var.sort is Sort.HOME
            else QuotientTerm.from_element(value)
        )
        g = substitute(g, var, term)
    for atom in all_atoms(g):
        if atom.kind is AtomKind.QUOT_PREC:
            raise ArityError("function coding lives in the unordered pair theory")
    g = qe(g, TheoryMode.POVS)
    _check_functional(g, x, y)

    domain_formula = qe(Exists(y, g), TheoryMode.POVS)

    pieces: list[FunctionPiece] = []
    domain_formulas: list[Formula] = []
    for slope, intercept in _line_candidates(g, x, y):
        line = HomeTerm.from_variable(x).scale(slope) + HomeTerm.from_element(intercept)
        on_line = substitute(g, y, line)
        d = decompose(on_line, x)
        if not d.pieces:
            continue
        open_part = _strip_points(make_or([p.formula(x) for p in d.pieces]), x)
        if open_part.is_empty():
            continue
        code = _code_of_decomposition(open_part)
        pieces.append(FunctionPiece(slope, intercept, code))
        domain_formulas.append(open_part.formula(x))

    _check_disjoint(pieces, x)

    covered = make_or(domain_formulas) if domain_formulas else None
    residual = (
        make_and([domain_formula, make_not(covered)]) if covered is not None else domain_formula
    )
    rd = decompose(residual, x)
    if rd.pieces:
        raise InfiniteResidualError(
            "candidate lines leave an infinite part of the domain uncovered"
        )
    exceptional = []
    for e in rd.points:
        value = _function_value(g, x, y, e, pieces)
        exceptional.append((e, value))
    exceptional.sort(key=cmp_to_key(lambda p, q: compare(p[0], q[0])))

    return FunctionCode(tuple(exceptional), tuple(pieces))


def _function_value(
    g: Formula, x: Variable, y: Variable, at: ModelElement, pieces
) -> ModelElement:
    tried = set()
    for piece in pieces:
        candidate = at.scale(piece.slope) + piece.intercept
        if candidate not in tried:
            tried.add(candidate)
            if eval_formula(g, {x: at, y: candidate}):
                return candidate
    # fall back to every line the eliminated form mentions
    for slope, intercept in _line_candidates(g, x, y):
        candidate = at.scale(slope) + intercept
        if candidate not in tried:
            tried.add(candidate)
            if eval_formula(g, {x: at, y: candidate}):
                return candidate
    raise InternalError(f"no candidate line passes through the graph at {at}")


def _check_disjoint(pieces: list[FunctionPiece], v: Variable) -> None:
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            a, b = pieces[i], pieces[j]
            overlap = any(
                _intervals_overlap(pa, pb) and _patterns_meet(pa, pb)
                for pa in a.domain.pieces
                for pb in b.domain.pieces
            )
            if overlap:
                raise InternalError("function piece domains overlap")


def _intervals_overlap(a: CodePiece, b: CodePiece) -> bool:
    lo = a.lo if a.lo.compare(b.lo) >= 0 else b.lo
    hi = a.hi if a.hi.compare(b.hi) <= 0 else b.hi
    return lo.compare(hi) < 0


def _patterns_meet(a: CodePiece, b: CodePiece) -> bool:
    sa = CosetSet(a.cofinite, frozenset(a.cosets))
    sb = CosetSet(b.cofinite, frozenset(b.cosets))
    if not sa.cofinite and not sb.cofinite:
        return bool(sa.members & sb.members)
    if sa.cofinite and sb.cofinite:
        return True  # both miss only finitely many of infinitely many cosets
    fin, cof = (sa, sb) if sb.cofinite else (sb, sa)
    return any(w not in cof.members for w in fin.members)
