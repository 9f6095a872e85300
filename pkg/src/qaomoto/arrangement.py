"""Affine line arrangements in the rational plane.

All geometry is exact (``fractions.Fraction``).  Lines are 0-indexed
internally; every text/JSON surface is 1-indexed so that line i prints as H_i.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

__all__ = [
    "ArrangementError",
    "Line",
    "Arrangement",
    "IntersectionPoint",
    "parse_rational",
    "parse_arrangement",
    "load_arrangement",
    "intersection_points",
]


class ArrangementError(ValueError):
    pass


def parse_rational(v) -> Fraction:
    """Integers or "p/q" strings; floats are refused to keep inputs exact."""
    if isinstance(v, bool):
        raise ArrangementError(f"malformed rational {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ArrangementError(f"malformed rational {v!r}") from None
    raise ArrangementError(f"malformed rational {v!r} (use an integer or a 'p/q' string)")


@dataclass(frozen=True)
class Line:
    """The line a*x + b*y = c with coprime integer coefficients.

    Use :meth:`make` to normalize; the first nonzero of (a, b) is positive.
    """

    a: int
    b: int
    c: int

    @classmethod
    def make(cls, a, b, c) -> Line:
        a, b, c = (parse_rational(v) for v in (a, b, c))
        if a == 0 and b == 0:
            raise ArrangementError("degenerate line (a=b=0)")
        den = math.lcm(a.denominator, b.denominator, c.denominator)
        ia, ib, ic = (int(v * den) for v in (a, b, c))
        g = math.gcd(ia, ib, ic)
        ia, ib, ic = ia // g, ib // g, ic // g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, ic = -ia, -ib, -ic
        return cls(ia, ib, ic)

    def value(self, x, y) -> Fraction:
        """a*x + b*y - c; its sign says which side of the line (x, y) is on."""
        return self.a * x + self.b * y - self.c

    def side(self, x, y) -> int:
        v = self.value(x, y)
        return (v > 0) - (v < 0)

    def is_parallel(self, other: Line) -> bool:
        return self.a * other.b - self.b * other.a == 0

    def meet(self, other: Line) -> tuple[Fraction, Fraction] | None:
        det = self.a * other.b - self.b * other.a
        if det == 0:
            return None
        x = Fraction(self.c * other.b - other.c * self.b, det)
        y = Fraction(self.a * other.c - other.a * self.c, det)
        return x, y

    def point_and_direction(self) -> tuple[tuple[Fraction, Fraction], tuple[int, int]]:
        if self.b != 0:
            base = (Fraction(0), Fraction(self.c, self.b))
        else:
            base = (Fraction(self.c, self.a), Fraction(0))
        return base, (self.b, -self.a)

    def to_json(self) -> list:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"{self.a}x + {self.b}y = {self.c}".replace("+ -", "- ")


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[Line, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.lines):
            raise ArrangementError("weight count mismatch")
        if len(set(self.lines)) != len(self.lines):
            raise ArrangementError("duplicate line")

    @property
    def n(self) -> int:
        return len(self.lines)

    @classmethod
    def from_lines(cls, lines: Sequence, weights: Sequence[int] | None = None) -> Arrangement:
        ls = tuple(l if isinstance(l, Line) else Line.make(*l) for l in lines)
        if weights is None:
            weights = [1] * len(ls)
        return cls(ls, tuple(int(w) for w in weights))

    def with_weights(self, weights: Sequence[int]) -> Arrangement:
        return Arrangement(self.lines, tuple(int(w) for w in weights))

    def to_json(self) -> dict:
        return {"lines": [l.to_json() for l in self.lines], "weights": list(self.weights)}


@dataclass(frozen=True)
class IntersectionPoint:
    x: Fraction
    y: Fraction
    incident: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)


def parse_arrangement(text: str) -> Arrangement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict) or "lines" not in data:
        raise ArrangementError("malformed JSON: expected an object with a 'lines' list")
    lines = data["lines"]
    if not isinstance(lines, list) or any(not isinstance(l, list) or len(l) != 3 for l in lines):
        raise ArrangementError("malformed JSON: each line must be [a, b, c]")
    weights = data.get("weights")
    if weights is None:
        weights = [1] * len(lines)
    if not isinstance(weights, list) or any(
        not isinstance(w, int) or isinstance(w, bool) for w in weights
    ):
        raise ArrangementError("malformed JSON: weights must be a list of integers")
    if len(weights) != len(lines):
        raise ArrangementError("weight count mismatch")
    return Arrangement.from_lines(lines, weights)


def load_arrangement(path) -> Arrangement:
    return parse_arrangement(Path(path).read_text())


def intersection_points(arr: Arrangement) -> list[IntersectionPoint]:
    """All multiple points, concurrent lines merged, sorted by (x, y)."""
    pts: dict[tuple[Fraction, Fraction], set[int]] = {}
    for i, j in combinations(range(arr.n), 2):
        p = arr.lines[i].meet(arr.lines[j])
        if p is not None:
            pts.setdefault(p, set()).update((i, j))
    return [IntersectionPoint(x, y, tuple(sorted(inc))) for (x, y), inc in sorted(pts.items())]


def zaslavsky_count(arr: Arrangement) -> int:
    """Number of regions of the real complement: 1 + n + sum over points of (m_p - 1)."""
    return 1 + arr.n + sum(p.multiplicity - 1 for p in intersection_points(arr))
