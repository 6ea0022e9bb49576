"""Gabriel-Roiter measure values and their total order.

A measure is a finite set of positive integers, stored as a strictly
increasing tuple. I < J iff the smallest element of the symmetric
difference lies in J.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from pydantic import BaseModel, ConfigDict, field_validator

from grsegments.errors import InvalidInput

_MAX_ELEMENT = 2**31 - 1


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class GrMeasure(BaseModel):
    model_config = ConfigDict(frozen=True)

    elements: tuple[int, ...]

    @field_validator("elements")
    @classmethod
    def _strictly_increasing(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if not v:
            raise ValueError("a GR measure has at least one element")
        if v[0] < 1 or v[-1] > _MAX_ELEMENT:
            raise ValueError(f"elements out of range: {v}")
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ValueError(f"elements must be strictly increasing: {v}")
        return v

    @classmethod
    def of(cls, *elements: int) -> GrMeasure:
        return cls(elements=tuple(elements))

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    def __len__(self) -> int:
        return len(self.elements)

    def __lt__(self, other: GrMeasure) -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: GrMeasure) -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: GrMeasure) -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: GrMeasure) -> bool:
        return compare(self, other) is not Ordering.LESS


def compare(I: GrMeasure, J: GrMeasure) -> Ordering:
    a, b = I.elements, J.elements
    for x, y in zip(a, b):
        if x != y:
            # the smaller of the two is the least element of the difference
            return Ordering.GREATER if x < y else Ordering.LESS
    if len(a) == len(b):
        return Ordering.EQUAL
    # one is a prefix of the other; the extra elements belong to the longer one
    return Ordering.LESS if len(a) < len(b) else Ordering.GREATER


def starts_with(J: GrMeasure, I: GrMeasure) -> bool:
    """True iff J = I or J is I followed by elements all larger than top(I)."""
    n = len(I.elements)
    return J.elements[:n] == I.elements


def extend(I: GrMeasure, m: int) -> GrMeasure:
    if m <= top(I):
        raise InvalidInput(f"cannot extend {I} by {m}: must exceed {top(I)}")
    return GrMeasure(elements=I.elements + (m,))


def top(I: GrMeasure) -> int:
    return I.elements[-1]


def max_of(measures: Iterable[GrMeasure]) -> GrMeasure:
    best: GrMeasure | None = None
    for m in measures:
        if best is None or compare(m, best) is Ordering.GREATER:
            best = m
    if best is None:
        raise InvalidInput("max_of needs at least one measure")
    return best


def parse_measure(text: str) -> GrMeasure:
    """Parse the textual form "{1,2,4}"."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise InvalidInput(f"not a measure literal: {text!r}")
    body = s[1:-1].strip()
    try:
        elements = tuple(int(tok) for tok in body.split(",")) if body else ()
        return GrMeasure(elements=elements)
    except ValueError as e:
        raise InvalidInput(f"not a measure literal: {text!r} ({e})") from e
