"""Exact evaluation of the canonical finitely additive measure.

The measure concentrates on the unit interval: an interval gets its
length, any set covered by finitely many cosets of the rational line
gets 0, and those two rules already determine the value on every
definable set through the canonical decomposition.  In the standard
archimedean reference model the standard-part map is the identity, so
measure values are exact model elements rather than approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .decomposition import decompose
from .errors import InternalError
from .evaluate import Assignment
from .formulas import Formula, home_lt, make_and
from .model import ModelElement, compare
from .terms import HomeTerm, Variable


@dataclass(frozen=True)
class MeasureValue:
    """An exact measure value in [0, 1]."""

    value: ModelElement

    def __post_init__(self):
        if self.value.sign() < 0 or compare(self.value, ModelElement.from_rational(1)) > 0:
            raise InternalError(f"measure value {self.value} outside [0, 1]")

    def __str__(self) -> str:
        return str(self.value)

    def to_json(self):
        return self.value.to_json()


def _unit_window(f: Formula, v: Variable) -> Formula:
    x = HomeTerm.from_variable(v)
    return make_and([f, home_lt(-x), home_lt(x - HomeTerm.from_element(ModelElement.from_rational(1)))])


def measure(f: Formula, v: Variable, assignment: Assignment | None = None) -> MeasureValue:
    """The measure of the set defined by f in v, concentrated on (0, 1).

    Only pieces meeting all but finitely many cosets carry length; the
    rest of the decomposition is coset-coverable, hence null.
    """
    d = decompose(_unit_window(f, v), v, assignment)
    total = ModelElement()
    for piece in d.pieces:
        if piece.cosets.cofinite:
            if not (piece.lo.is_finite() and piece.hi.is_finite()):
                raise InternalError("unbounded piece inside the unit window")
            total = total + (piece.hi.value - piece.lo.value)
    return MeasureValue(total)


def bucket_index(value: ModelElement, k: int) -> int:
    """The j in 1..k with (j-1)/k <= value <= j/k, ties going down."""
    for j in range(1, k + 1):
        if compare(value, ModelElement.from_rational(Fraction(j, k))) <= 0:
            return j
    raise InternalError(f"value {value} above 1")


@dataclass(frozen=True)
class BucketEntry:
    params: tuple[tuple[Variable, object], ...]
    bucket: int
    value: ModelElement

    def to_json(self):
        return {
            "params": {var.name: val.to_json() for var, val in self.params},
            "bucket": self.bucket,
            "measure": self.value.to_json(),
        }


@dataclass(frozen=True)
class BucketReport:
    """Exact measures of one definable family at several parameter tuples,
    bucketed into k bands of width 1/k.

    Parameters landing in the same bucket have measures within 2/k of
    each other, which is the uniform-definability bound the partition
    exists to witness.
    """

    k: int
    entries: tuple[BucketEntry, ...]

    def to_json(self):
        return {"k": self.k, "assignments": [e.to_json() for e in self.entries]}


def bucket_partition(
    f: Formula, v: Variable, params: Sequence[Assignment], k: int
) -> BucketReport:
    if k < 1:
        raise ValueError("k must be at least 1")
    entries = []
    for assignment in params:
        mv = measure(f, v, assignment)
        ordered = tuple(sorted(assignment.items(), key=lambda kv: kv[0].sort_key()))
        entries.append(BucketEntry(ordered, bucket_index(mv.value, k), mv.value))
    return BucketReport(k, tuple(entries))
