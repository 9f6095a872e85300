"""Arithmetic in the ring of involution-invariant Laurent polynomials in q^(1/2).

Elements are stored in the basis of q-integers [n]_q (n >= 1), so invariance
under q^(1/2) -> q^(-1/2) holds by construction.  Products are computed with
the Clebsch-Gordan rule

    [m]_q [n]_q = [m+n-1]_q + [m+n-3]_q + ... + [m-n+1]_q     (m >= n > 0)

directly on basis elements.  ``LaurentHalf`` is the plain monomial picture in
s = q^(1/2); it is kept around as an independent oracle and for evaluation.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Iterable, Mapping

__all__ = [
    "QNum",
    "LaurentHalf",
    "XWord",
    "qint",
    "add",
    "neg",
    "mul",
    "to_laurent",
    "from_laurent",
    "gamma",
    "normalize_word",
    "evaluate",
    "parse_qnum",
]


def _clean(coeffs: Mapping[int, int]) -> dict[int, int]:
    return {k: v for k, v in coeffs.items() if v != 0}


class QNum:
    """Finite integer combination sum a_n [n]_q with n >= 1."""

    __slots__ = ("_items", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        coeffs = _clean(coeffs or {})
        for n in coeffs:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"q-integer index must be a positive integer, got {n!r}")
        self._items = tuple(sorted(coeffs.items()))
        self._hash = None

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QNum({1: other})
        if not isinstance(other, QNum):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, neg(other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(other, neg(self))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"QNum({str(self)!r})"

    def __str__(self):
        if not self._items:
            return "0"
        parts = []
        for n, a in reversed(self._items):
            sym = "1" if n == 1 else f"[{n}]"
            mag = abs(a)
            if n == 1:
                body = str(mag)
            else:
                body = sym if mag == 1 else f"{mag}*{sym}"
            if not parts:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(("- " if a < 0 else "+ ") + body)
        return " ".join(parts)


def _coerce(x):
    if isinstance(x, QNum):
        return x
    if isinstance(x, int):
        return QNum({1: x})
    return NotImplemented


def qint(n: int) -> QNum:
    """The q-integer [n]_q, using [0]_q = 0 and [-n]_q = -[n]_q."""
    if n > 0:
        return QNum({n: 1})
    if n < 0:
        return QNum({-n: -1})
    return QNum()


def add(x: QNum, y: QNum) -> QNum:
    out = dict(x._items)
    for n, a in y._items:
        out[n] = out.get(n, 0) + a
    return QNum(out)


def neg(x: QNum) -> QNum:
    return QNum({n: -a for n, a in x._items})


def _cg_terms(m: int, n: int) -> range:
    # indices of [m]_q [n]_q for m >= n > 0
    return range(m - n + 1, m + n, 2)


def mul(x: QNum, y: QNum) -> QNum:
    out: dict[int, int] = defaultdict(int)
    for m, a in x._items:
        for n, b in y._items:
            hi, lo = (m, n) if m >= n else (n, m)
            c = a * b
            for k in _cg_terms(hi, lo):
                out[k] += c
    return QNum(out)


class LaurentHalf:
    """Laurent polynomial in s = q^(1/2), as {exponent of s: coefficient}."""

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._items = tuple(sorted(_clean(coeffs or {}).items()))

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._items)

    def __eq__(self, other):
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __add__(self, other):
        out = dict(self._items)
        for k, a in other._items:
            out[k] = out.get(k, 0) + a
        return LaurentHalf(out)

    def __neg__(self):
        return LaurentHalf({k: -a for k, a in self._items})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentHalf({k: a * other for k, a in self._items})
        out: dict[int, int] = defaultdict(int)
        for k, a in self._items:
            for l, b in other._items:
                out[k + l] += a * b
        return LaurentHalf(out)

    __rmul__ = __mul__

    def involution(self) -> LaurentHalf:
        return LaurentHalf({-k: a for k, a in self._items})

    def is_invariant(self) -> bool:
        return self == self.involution()

    def __repr__(self):
        if not self._items:
            return "LaurentHalf(0)"
        terms = " + ".join(f"{a}*s^{k}" for k, a in reversed(self._items))
        return f"LaurentHalf({terms})"


def to_laurent(x: QNum) -> LaurentHalf:
    out: dict[int, int] = defaultdict(int)
    for n, a in x._items:
        for k in range(1 - n, n, 2):
            out[k] += a
    return LaurentHalf(out)


def from_laurent(p: LaurentHalf) -> QNum:
    """Rewrite an invariant Laurent polynomial in the q-integer basis.

    The leading term c*s^d is matched by c*[d+1]_q, which is subtracted off;
    the degree drops by two each round.
    """
    if not p.is_invariant():
        raise ValueError("not involution-invariant")
    rest = dict(p._items)
    out = {}
    while rest:
        d = max(rest)
        c = rest[d]
        out[d + 1] = c
        for k in range(-d, d + 1, 2):
            v = rest.get(k, 0) - c
            if v:
                rest[k] = v
            else:
                rest.pop(k, None)
    return QNum(out)


def gamma(x: QNum) -> int:
    """The specialization q -> 1, sending [n]_q to n."""
    return sum(a * n for n, a in x._items)


class XWord:
    """Polynomial in formal variables x_n (n an integer).

    ``terms`` is a list of (monomial, coefficient) with monomials stored as
    sorted tuples of indices (a multiset).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Iterable[int], int]] = ()):
        acc: dict[tuple[int, ...], int] = defaultdict(int)
        for mono, c in terms:
            acc[tuple(sorted(mono))] += c
        self.terms = [(m, c) for m, c in sorted(acc.items()) if c != 0]

    @classmethod
    def var(cls, n: int) -> XWord:
        return cls([((n,), 1)])

    @classmethod
    def const(cls, c: int) -> XWord:
        return cls([((), c)])

    def __add__(self, other):
        if isinstance(other, int):
            other = XWord.const(other)
        return XWord(self.terms + other.terms)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return XWord([(m, c * other) for m, c in self.terms])
        return XWord(
            [(m1 + m2, c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms]
        )

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((len(m) for m, _ in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "XWord(0)"
        parts = []
        for m, c in self.terms:
            mono = "*".join(f"x{n}" for n in m) or "1"
            parts.append(f"{c}*{mono}")
        return "XWord(" + " + ".join(parts) + ")"


def _reduce_monomial(mono: tuple[int, ...], coeff: int) -> list[tuple[tuple[int, ...], int]] | None:
    """One rewriting step on a monomial; None when it is already linear.

    Applies x_0 -> 0, x_1 -> 1 and x_{-n} -> -x_n to every factor, then, if two
    or more factors remain, replaces the leftmost pair by its Clebsch-Gordan
    expansion.
    """
    factors = []
    for n in mono:
        if n == 0:
            return []
        if n < 0:
            coeff = -coeff
            n = -n
        if n != 1:
            factors.append(n)
    if len(factors) <= 1:
        if tuple(factors) == mono:
            return None
        return [(tuple(factors), coeff)]
    a, b = factors[0], factors[1]
    hi, lo = (a, b) if a >= b else (b, a)
    tail = factors[2:]
    return [((k,) + tuple(tail), coeff) for k in _cg_terms(hi, lo)]


def normalize_word(w: XWord) -> QNum:
    """Reduce a polynomial in the x_n to linear normal form sum a_i x_i + b.

    Each Clebsch-Gordan step lowers the total degree of a monomial by one, so
    the rewriting terminates.  The result is returned as the QNum
    sum a_i [i]_q + b [1]_q.
    """
    work = list(w.terms)
    out: dict[int, int] = defaultdict(int)
    while work:
        mono, c = work.pop()
        step = _reduce_monomial(mono, c)
        if step is None:
            if not mono:
                out[1] += c
            else:
                out[mono[0]] += c
        else:
            work.extend(step)
    return QNum(out)


def _laurent_powers(s0, lo: int, hi: int):
    """Map k -> s0**k for lo <= k <= hi, built by repeated multiplication."""
    one = s0 ** 0
    powers = {0: one}
    inv = one / s0
    cur = one
    for k in range(1, hi + 1):
        cur = cur * s0
        powers[k] = cur
    cur = one
    for k in range(-1, lo - 1, -1):
        cur = cur * inv
        powers[k] = cur
    return powers


def evaluate(x: QNum, s0):
    """Evaluate at q^(1/2) = s0.

    ``s0`` may be anything with field arithmetic: complex, Fraction or a
    cyclotomic field element.  Every [n]_q is the finite sum of powers of s0,
    so this is defined for s0 = +-1 as well.
    """
    if s0 == 0:
        raise ValueError("zero parameter")
    lp = to_laurent(x)
    if not lp._items:
        return s0 * 0
    exps = [k for k, _ in lp._items]
    powers = _laurent_powers(s0, min(exps), max(exps))
    total = s0 * 0
    for k, a in lp._items:
        total = total + a * powers[k]
    return total


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*?\s*\[\s*(-?\d+)\s*\])?\s*")


def parse_qnum(text: str) -> QNum:
    """Parse the rendering produced by ``str(QNum)``, e.g. "2*[5] - [3] + 1"."""
    s = text.strip()
    if s == "0":
        return QNum()
    if not s:
        raise ValueError("empty q-number")
    pos = 0
    total = QNum()
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse q-number {text!r}")
        sign, mag, br, idx = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        if mag is None and br is None:
            raise ValueError(f"cannot parse q-number {text!r}")
        if br is not None and mag is not None and "*" not in br:
            raise ValueError(f"missing '*' in {text!r}")
        c = int(mag) if mag is not None else 1
        if sign == "-":
            c = -c
        total = total + (c * qint(int(idx)) if br is not None else QNum({1: c}))
        pos = m.end()
        first = False
    return total
