"""Orlik-Solomon algebra of a line arrangement and its Aomoto complex.

Only degrees 0, 1, 2 exist for lines in the plane.  The degree-2 basis takes,
for every multiple point with incident lines i_1 < ... < i_m, the products
e_{i_1} e_{i_j} (j = 2..m).  Any other product at that point is rewritten by

    e_i e_j = e_{i_1} e_j - e_{i_1} e_i,

and products of parallel lines vanish.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .arrangement import Arrangement, intersection_points
from .exactlinalg import rank_mod_p, rank_rational
from .qring import QNum, qint

__all__ = [
    "ChainConditionError",
    "OSAlgebra",
    "BasisChange",
    "AomotoMatrices",
    "build_os",
    "aomoto_matrices",
    "check_chain",
    "is_canonically_qdeformable",
    "aomoto_cohomology_dims",
    "parse_basis_change",
    "load_basis_change",
]


class ChainConditionError(ValueError):
    """A pair of coboundary matrices does not compose to zero."""


@dataclass(frozen=True)
class OSAlgebra:
    n: int
    deg2_basis: tuple[tuple[int, int], ...]
    product_table: dict = field(repr=False)

    @property
    def b(self) -> int:
        return len(self.deg2_basis)

    def product(self, i: int, j: int) -> tuple[int, ...]:
        """e_i e_j expanded in the degree-2 basis."""
        if i == j:
            return (0,) * self.b
        if i < j:
            return self.product_table[i, j]
        return tuple(-c for c in self.product_table[j, i])


def build_os(arr: Arrangement) -> OSAlgebra:
    basis: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for pt in intersection_points(arr):
        i0 = pt.incident[0]
        for j in pt.incident[1:]:
            index[i0, j] = len(basis)
            basis.append((i0, j))
    b = len(basis)

    def unit(k):
        v = [0] * b
        v[k] = 1
        return v

    table = {}
    for i in range(arr.n):
        for j in range(i + 1, arr.n):
            table[i, j] = (0,) * b
    for pt in intersection_points(arr):
        inc = pt.incident
        i0 = inc[0]
        for a_pos, i in enumerate(inc):
            for j in inc[a_pos + 1:]:
                if i == i0:
                    table[i, j] = tuple(unit(index[i0, j]))
                else:
                    v = unit(index[i0, j])
                    v[index[i0, i]] -= 1
                    table[i, j] = tuple(v)
    return OSAlgebra(arr.n, tuple(basis), table)


def _det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def _inverse(rows) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]) if B else 0)]
            for i in range(len(A))]


def _is_unimodular(m) -> bool:
    if any(len(r) != len(m) for r in m):
        return False
    return abs(_det(m)) == 1 if m else True


@dataclass(frozen=True)
class BasisChange:
    """Columns of P1 are the new degree-1 basis vectors in e-coordinates;
    columns of P2 the new degree-2 basis vectors in deg2_basis coordinates."""

    P1: tuple[tuple[int, ...], ...]
    P2: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not _is_unimodular(self.P1) or not _is_unimodular(self.P2):
            raise ValueError("basis not unimodular")

    @classmethod
    def identity(cls, n: int, b: int) -> BasisChange:
        eye = lambda k: tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        return cls(eye(n), eye(b))

    def to_json(self) -> dict:
        return {"P1": [list(r) for r in self.P1], "P2": [list(r) for r in self.P2]}


def parse_basis_change(text: str) -> BasisChange:
    try:
        data = json.loads(text)
        P1 = tuple(tuple(int(x) for x in r) for r in data["P1"])
        P2 = tuple(tuple(int(x) for x in r) for r in data["P2"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"malformed basis change JSON: {exc}") from None
    return BasisChange(P1, P2)


def load_basis_change(path) -> BasisChange:
    return parse_basis_change(Path(path).read_text())


@dataclass(frozen=True)
class AomotoMatrices:
    S: tuple[int, ...]
    T: tuple[tuple[int, ...], ...]
    basis: str = "standard"

    @property
    def n(self) -> int:
        return len(self.S)

    @property
    def b(self) -> int:
        return len(self.T)


def _integral(rows, what):
    out = []
    for r in rows:
        row = []
        for x in r:
            x = Fraction(x)
            if x.denominator != 1:
                raise ArithmeticError(f"non-integral {what}")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def aomoto_matrices(os: OSAlgebra, weights: Sequence[int], basis: BasisChange | None = None) -> AomotoMatrices:
    """S = P1^-1 a and T = P2^-1 T_std P1.

    Column j of T_std is omega * e_j in the degree-2 basis.
    """
    n, b = os.n, os.b
    if len(weights) != n:
        raise ValueError("weight count mismatch")
    T_std = [[0] * n for _ in range(b)]
    for j in range(n):
        for i, a in enumerate(weights):
            if a:
                for k, c in enumerate(os.product(i, j)):
                    T_std[k][j] += a * c
    if basis is None:
        return AomotoMatrices(tuple(weights), tuple(tuple(r) for r in T_std), "standard")
    if len(basis.P1) != n or len(basis.P2) != b:
        raise ValueError("basis change has the wrong size")
    P1inv = _inverse(basis.P1) if n else []
    P2inv = _inverse(basis.P2) if b else []
    S = _integral(_matmul(P1inv, [[a] for a in weights]), "S") if n else ()
    S = tuple(r[0] for r in S)
    if b and n:
        T = _integral(_matmul(_matmul(P2inv, T_std), [list(r) for r in basis.P1]), "T")
    else:
        T = tuple(() for _ in range(b))
    return AomotoMatrices(S, T, "custom")


def check_chain(am: AomotoMatrices) -> bool:
    return all(sum(t * s for t, s in zip(row, am.S)) == 0 for row in am.T)


def is_canonically_qdeformable(am: AomotoMatrices) -> tuple[bool, list[QNum]]:
    """Replace every entry by its q-integer and test [T]_q [S]_q = 0.

    Returns the verdict and the product vector.
    """
    if not check_chain(am):
        raise ChainConditionError("not a chain complex")
    Sq = [qint(s) for s in am.S]
    prod = []
    for row in am.T:
        acc = QNum()
        for t, s in zip(row, Sq):
            if t and s:
                acc = acc + qint(t) * s
        prod.append(acc)
    return all(p.is_zero() for p in prod), prod


def aomoto_cohomology_dims(am: AomotoMatrices, field="Q") -> tuple[int, int, int]:
    """(h0, h1, h2) of 0 -> A^0 -> A^1 -> A^2 -> 0 over Q or F_p.

    ``field`` is "Q", a prime p, or a string "Fp"/"F3".
    """
    if not check_chain(am):
        raise ChainConditionError("not a chain complex")
    p = _field_prime(field)
    S_col = [[s] for s in am.S]
    if p is None:
        rS = rank_rational(S_col) if am.S else 0
        rT = rank_rational(am.T) if am.T and am.n else 0
    else:
        rS = rank_mod_p(S_col, p) if am.S else 0
        rT = rank_mod_p(am.T, p) if am.T and am.n else 0
    return 1 - rS, am.n - rT - rS, am.b - rT


def _field_prime(field) -> int | None:
    if isinstance(field, int):
        return field
    f = str(field).strip()
    if f.upper() == "Q":
        return None
    if f[:1].upper() == "F" and f[1:].isdigit():
        return int(f[1:])
    raise ValueError(f"unknown field {field!r} (use Q or Fp, e.g. F3)")
