"""Chambers of a real line arrangement and their stratification by a generic flag.

A chamber is identified by its sign vector: entry i is +1 when the chamber lies
on the side a_i x + b_i y > c_i of line i, and -1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Sequence

from .arrangement import Arrangement, Line, intersection_points, zaslavsky_count

__all__ = [
    "ChamberError",
    "Chamber",
    "Flag",
    "FlagDecomposition",
    "enumerate_chambers",
    "auto_flag",
    "decompose",
    "separating_weight",
    "sign_string",
    "locate",
]


class ChamberError(ValueError):
    pass


@dataclass(frozen=True)
class Chamber:
    sign: tuple[int, ...]
    witness: tuple[Fraction, Fraction]

    def __str__(self):
        return sign_string(self.sign)


def sign_string(sign: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in sign)


def locate(arr: Arrangement, x, y) -> tuple[int, ...] | None:
    """Sign vector of the point (x, y), or None if it lies on a line."""
    sign = tuple(l.side(x, y) for l in arr.lines)
    return None if 0 in sign else sign


def _edge_samples(arr: Arrangement, line: Line, vertices) -> list[tuple[Fraction, Fraction]]:
    (x0, y0), (dx, dy) = line.point_and_direction()
    norm2 = dx * dx + dy * dy
    params = sorted({Fraction((vx - x0) * dx + (vy - y0) * dy, norm2) for vx, vy in vertices})
    if not params:
        ts = [Fraction(0)]
    else:
        ts = [params[0] - 1, params[-1] + 1]
        ts += [(s + t) / 2 for s, t in zip(params, params[1:])]
    return [(x0 + t * dx, y0 + t * dy) for t in ts]


def _safe_offset(arr: Arrangement, skip: int, p, direction) -> Fraction:
    """A step along ``direction`` from p that crosses no line other than ``skip``."""
    best = None
    for k, l in enumerate(arr.lines):
        if k == skip:
            continue
        rate = abs(l.a * direction[0] + l.b * direction[1])
        v = abs(l.value(*p))
        if rate == 0:
            continue
        bound = v / rate
        best = bound if best is None else min(best, bound)
    return Fraction(1) if best is None else best / 2


def _candidates(arr: Arrangement, scale: Fraction):
    pts = intersection_points(arr)
    cands = []
    for i, line in enumerate(arr.lines):
        verts = [(p.x, p.y) for p in pts if i in p.incident]
        for p in _edge_samples(arr, line, verts):
            normal = (line.a, line.b)
            t = _safe_offset(arr, i, p, normal) * scale
            cands.append((p[0] + t * normal[0], p[1] + t * normal[1]))
            cands.append((p[0] - t * normal[0], p[1] - t * normal[1]))
    # vertex diagonals and a coarse exterior box are cheap extra witnesses
    if pts:
        gaps = [abs(u - v) for p in pts for q in pts for u, v in ((p.x, q.x), (p.y, q.y)) if u != v]
        eps = (min(gaps) if gaps else Fraction(1)) * scale / 4
        for p in pts:
            for sx in (-1, 1):
                for sy in (-1, 1):
                    cands.append((p.x + sx * eps, p.y + sy * eps))
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        for x in (min(xs) - 1, (min(xs) + max(xs)) / 2, max(xs) + 1):
            for y in (min(ys) - 1, (min(ys) + max(ys)) / 2, max(ys) + 1):
                cands.append((x, y))
    return cands


def enumerate_chambers(arr: Arrangement, max_attempts: int = 10) -> list[Chamber]:
    """Every chamber exactly once, sorted by sign vector.

    Witnesses are taken on both sides of every edge (the segments between
    consecutive vertices of a line, and the two end rays); the count is
    checked against 1 + n + sum(m_p - 1).
    """
    if arr.n < 1:
        raise ChamberError("arrangement has no lines")
    expected = zaslavsky_count(arr)
    scale = Fraction(1)
    for _ in range(max_attempts):
        found: dict[tuple[int, ...], tuple[Fraction, Fraction]] = {}
        for x, y in _candidates(arr, scale):
            s = locate(arr, x, y)
            if s is not None and s not in found:
                found[s] = (x, y)
        if len(found) == expected:
            return [Chamber(s, w) for s, w in sorted(found.items(), key=lambda kv: sign_string(kv[0]))]
        scale /= 2
    raise ChamberError(f"chamber count mismatch: found {len(found)}, expected {expected}")


@dataclass(frozen=True)
class Flag:
    """F0 = ``point``; F1 = {point + t * direction}.  Crossings are ordered by t > 0."""

    point: tuple[Fraction, Fraction]
    direction: tuple[Fraction, Fraction]

    def at(self, t) -> tuple[Fraction, Fraction]:
        return (self.point[0] + t * self.direction[0], self.point[1] + t * self.direction[1])

    def crossing(self, line: Line) -> Fraction | None:
        rate = line.a * self.direction[0] + line.b * self.direction[1]
        if rate == 0:
            return None
        return -line.value(*self.point) / rate

    def on_f1(self, x, y) -> bool:
        dx, dy = self.direction
        return (x - self.point[0]) * dy - (y - self.point[1]) * dx == 0


def auto_flag(arr: Arrangement) -> Flag:
    """A generic flag with F1 below every multiple point, read left to right."""
    verts = [(p.x, p.y) for p in intersection_points(arr)]
    for k in count():
        slope = Fraction(0) if k == 0 else Fraction(1, k)
        if any(l.a + l.b * slope == 0 for l in arr.lines):
            continue
        h = min((y - slope * x for x, y in verts), default=Fraction(1)) - 1
        base = (Fraction(0), h)
        direction = (Fraction(1), slope)
        f = Flag(base, direction)
        ts = [f.crossing(l) for l in arr.lines]
        t0 = min(ts) - 1
        flag = Flag(f.at(t0), direction)
        if _generic_problem(arr, flag) is None:
            return flag
    raise AssertionError("unreachable")


def _generic_problem(arr: Arrangement, flag: Flag) -> str | None:
    if flag.direction == (0, 0):
        return "zero direction"
    ts = []
    for i, l in enumerate(arr.lines):
        t = flag.crossing(l)
        if t is None:
            return f"F1 parallel to H{i + 1}"
        if t <= 0:
            return f"F0 not strictly before the crossing with H{i + 1}"
        ts.append(t)
    if len(set(ts)) != len(ts):
        return "two crossings coincide"
    for p in intersection_points(arr):
        if flag.on_f1(p.x, p.y):
            return f"F1 passes through the point ({p.x}, {p.y})"
    return None


@dataclass(frozen=True)
class FlagDecomposition:
    arrangement: Arrangement
    flag: Flag
    ch0: Chamber
    ch1: tuple[Chamber, ...]
    ch2: tuple[Chamber, ...]
    crossing_order: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int, int]:
        return 1, len(self.ch1), len(self.ch2)

    @property
    def labels_c(self) -> list[str]:
        return [f"C_{j + 1}" for j in range(len(self.ch1))]

    @property
    def labels_d(self) -> list[str]:
        return [f"D_{i + 1}" for i in range(len(self.ch2))]

    def chamber(self, label: str) -> Chamber:
        kind, _, idx = label.partition("_")
        k = int(idx)
        if kind == "C":
            return self.ch0 if k == 0 else self.ch1[k - 1]
        if kind == "D":
            return self.ch2[k - 1]
        raise KeyError(label)

    def s_vector(self, weights: Sequence[int] | None = None) -> list[int]:
        w = self.arrangement.weights if weights is None else weights
        return [separating_weight(self.ch0, c, w)[1] for c in self.ch1]

    def l_matrix(self, weights: Sequence[int] | None = None) -> list[list[int]]:
        """Rows D_i, columns C_j: separating weight L(C_j, D_i)."""
        w = self.arrangement.weights if weights is None else weights
        return [[separating_weight(c, d, w)[1] for c in self.ch1] for d in self.ch2]

    def report(self) -> dict:
        def cham(label, c):
            return {
                "label": label,
                "sign": sign_string(c.sign),
                "witness": [str(c.witness[0]), str(c.witness[1])],
            }

        return {
            "sizes": list(self.sizes),
            "flag": {
                "F0": [str(v) for v in self.flag.point],
                "direction": [str(v) for v in self.flag.direction],
            },
            "crossing_order": [i + 1 for i in self.crossing_order],
            "ch0": [cham("C_0", self.ch0)],
            "ch1": [cham(l, c) for l, c in zip(self.labels_c, self.ch1)],
            "ch2": [cham(l, c) for l, c in zip(self.labels_d, self.ch2)],
            "s_vector": self.s_vector(),
            "L": self.l_matrix(),
        }


def decompose(arr: Arrangement, chambers: Sequence[Chamber], flag: Flag) -> FlagDecomposition:
    problem = _generic_problem(arr, flag)
    if problem is not None:
        raise ChamberError(f"flag not generic: {problem}")
    by_sign = {c.sign: c for c in chambers}
    ts = [flag.crossing(l) for l in arr.lines]
    order = sorted(range(arr.n), key=lambda i: ts[i])
    sorted_ts = [ts[i] for i in order]
    samples = [Fraction(0)]
    samples += [(s + t) / 2 for s, t in zip(sorted_ts, sorted_ts[1:])]
    samples.append(sorted_ts[-1] + 1)
    met = []
    for t in samples:
        s = locate(arr, *flag.at(t))
        if s is None or s not in by_sign:
            raise ChamberError("flag not generic: F1 sample point is not in a listed chamber")
        met.append(by_sign[s])
    met_signs = {c.sign for c in met}
    if len(met_signs) != len(met):
        raise ChamberError("flag not generic: F1 meets a chamber twice")
    rest = sorted((c for c in chambers if c.sign not in met_signs), key=lambda c: sign_string(c.sign))
    return FlagDecomposition(arr, flag, met[0], tuple(met[1:]), tuple(rest), tuple(order))


def separating_weight(c1: Chamber, c2: Chamber, weights: Sequence[int]) -> tuple[frozenset[int], int]:
    """Lines separating the two chambers and the sum of their weights."""
    sep = frozenset(i for i, (a, b) in enumerate(zip(c1.sign, c2.sign)) if a != b)
    return sep, sum(weights[i] for i in sep)
