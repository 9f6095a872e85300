"""Exact ranks over Q, F_p and cyclotomic fields, plus a thresholded complex rank.

Cyclotomic elements live in Q(zeta_m) = Q[x]/(Phi_m) and are stored as an
integer coefficient vector over a positive common denominator in the power
basis 1, zeta, ..., zeta^(phi(m)-1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

__all__ = [
    "Matrix",
    "CycloElem",
    "cyclotomic_poly",
    "cyclo_arith",
    "rank",
    "rank_rational",
    "rank_mod_p",
    "rank_cyclotomic",
    "rank_float",
    "is_prime",
]


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over any carrier."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def map(self, f) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(f(x) for x in self.entries))

    def render(self, fmt=str) -> str:
        cells = [[fmt(x) for x in row] for row in self.to_rows()]
        if not cells:
            return "(empty %dx%d)" % (self.rows, self.cols)
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _as_rows(mat) -> list[list]:
    if isinstance(mat, Matrix):
        return mat.to_rows()
    return [list(r) for r in mat]


# ----------------------------------------------------------------------------
# integer / rational polynomials (coefficient lists, low degree first)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = [Fraction(c) for c in num]
    den = _trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    while len(_trim(num)) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Phi_m as integer coefficients, lowest degree first.

    Computed as (x^m - 1) divided by Phi_d for every proper divisor d of m.
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_poly(d)))
            if any(r):
                raise ArithmeticError("inexact cyclotomic division")
            num = q
    out = []
    for c in _trim(list(num)):
        if c.denominator != 1:
            raise ArithmeticError("non-integral cyclotomic coefficient")
        out.append(int(c))
    return tuple(out)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    # row k holds x^(d+k) mod Phi_m for 0 <= k <= d-2
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    rows = []
    cur = [-c for c in phi[:-1]]  # x^d
    for _ in range(max(d - 1, 0)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


def _degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


class CycloElem:
    """Element of Q(zeta_m), zeta_m = exp(2*pi*i/m)."""

    __slots__ = ("m", "_num", "_den")

    def __init__(self, m: int, vec: Sequence = (), _raw=None):
        self.m = m
        if _raw is not None:
            self._num, self._den = _raw
            return
        d = _degree(m)
        vec = list(vec) + [0] * (d - len(vec))
        if len(vec) != d:
            raise ValueError(f"vector length {len(vec)} exceeds degree {d} of Phi_{m}")
        fr = [Fraction(c) for c in vec]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in fr]
        self._num, self._den = _normalize(num, den)

    @property
    def vec(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycloElem:
        return _zeta_power(m, k)

    @classmethod
    def from_int(cls, m: int, c) -> CycloElem:
        return cls(m, [c])

    def _lift(self, other):
        if isinstance(other, CycloElem):
            if other.m != self.m:
                raise ValueError("conductor mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.m, [other])
        return None

    def is_zero(self) -> bool:
        return not any(self._num)

    def __eq__(self, other):
        if isinstance(other, CycloElem) and other.m != self.m:
            return False
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        return hash((self.m, self._num, self._den))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        den = self._den * o._den
        num = [a * o._den + b * self._den for a, b in zip(self._num, o._num)]
        return CycloElem(self.m, _raw=_normalize(num, den))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.m, _raw=(tuple(-a for a in self._num), self._den))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElem(self.m, _raw=_normalize([a * other for a in self._num], self._den))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = len(self._num)
        prod = [0] * max(2 * d - 1, 0)
        for i, a in enumerate(self._num):
            if a:
                for j, b in enumerate(o._num):
                    if b:
                        prod[i + j] += a * b
        table = _reduction_table(self.m)
        res = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for t, r in enumerate(table[k - d]):
                    if r:
                        res[t] += c * r
        return CycloElem(self.m, _raw=_normalize(res, self._den * o._den))

    __rmul__ = __mul__

    def inverse(self) -> CycloElem:
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        # extended Euclid: find u with u*a = 1 mod Phi_m
        r0 = [Fraction(c) for c in cyclotomic_poly(self.m)]
        r1 = _trim([Fraction(c, self._den) for c in self._num])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        u = [x / c for x in s1]
        # reduce u modulo Phi_m
        _, u = _poly_divmod(u, list(cyclotomic_poly(self.m)))
        return CycloElem(self.m, u)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloElem(self.m, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(complex(c) * z ** i for i, c in enumerate(self.vec))

    def __repr__(self):
        return f"CycloElem({self.m}, {[str(c) for c in self.vec]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.vec):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _normalize(num, den) -> tuple[tuple[int, ...], int]:
    g = den
    for a in num:
        g = math.gcd(g, a)
        if g == 1:
            break
    if den < 0:
        g = -g
    if g != 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def _zeta_power(m: int, k: int) -> CycloElem:
    k %= m
    d = _degree(m)
    vec = [0] * max(d, 1)
    if k < d:
        vec[k] = 1
        return CycloElem(m, vec[:d])
    z = CycloElem(m, [0, 1] if d > 1 else [cyclotomic_poly(m)[0] * -1])
    out = CycloElem(m, [1])
    for _ in range(k):
        out = out * z
    return out


def cyclo_arith(a: CycloElem, b: CycloElem | None, op: str) -> CycloElem:
    """Field operation ``op`` in {"add", "mul", "inv"} (b ignored for inv)."""
    if op == "inv":
        return a.inverse()
    if b is not None and a.m != b.m:
        raise ValueError("conductor mismatch")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# ----------------------------------------------------------------------------
# ranks


def _rank_exact(rows: list[list], is_zero) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if is_zero(a):
                continue
            f = a * inv
            rows[i] = [x - f * y if j >= c else x for j, (x, y) in enumerate(zip(rows[i], rows[r]))]
        r += 1
        if r == len(rows):
            break
    return r


def rank_rational(mat) -> int:
    rows = [[Fraction(x) for x in row] for row in _as_rows(mat)]
    return _rank_exact(rows, lambda x: x == 0)


def rank_cyclotomic(mat) -> int:
    rows = _as_rows(mat)
    m = next((x.m for row in rows for x in row if isinstance(x, CycloElem)), None)
    if m is None:
        return rank_rational(rows)
    rows = [[x if isinstance(x, CycloElem) else CycloElem(m, [x]) for x in row] for row in rows]
    return _rank_exact(rows, CycloElem.is_zero)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def rank_mod_p(mat, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")

    def red(x):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return x.numerator * pow(x.denominator, -1, p) % p

    rows = [[red(x) for x in row] for row in _as_rows(mat)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        for i in range(r + 1, len(rows)):
            f = rows[i][c] * inv % p
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rank_float(mat, tol: float = 1e-9) -> int:
    """Gaussian elimination with complete pivoting.

    A pivot counts when its magnitude exceeds tol times the largest entry
    magnitude of the input.
    """
    a = np.array(_as_rows(mat), dtype=complex)
    if a.size == 0:
        return 0
    scale = np.abs(a).max()
    if scale == 0:
        return 0
    thresh = tol * scale
    r = 0
    nr, nc = a.shape
    while r < min(nr, nc):
        sub = np.abs(a[r:, r:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= thresh:
            break
        i += r
        j += r
        a[[r, i], :] = a[[i, r], :]
        a[:, [r, j]] = a[:, [j, r]]
        a[r + 1:, :] -= np.outer(a[r + 1:, r] / a[r, r], a[r, :])
        r += 1
    return r


def rank(mat, *, p: int | None = None, tol: float = 1e-9) -> int:
    """Rank, with the carrier chosen from the entries.

    ``p`` forces arithmetic in F_p on integer/rational entries.  Complex or
    float entries use :func:`rank_float` with threshold ``tol``.
    """
    rows = _as_rows(mat)
    if p is not None:
        return rank_mod_p(rows, p)
    flat = [x for row in rows for x in row]
    if any(isinstance(x, CycloElem) for x in flat):
        return rank_cyclotomic(rows)
    if any(isinstance(x, (complex, float, np.number)) for x in flat):
        return rank_float(rows, tol)
    return rank_rational(rows)
