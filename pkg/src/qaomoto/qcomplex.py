"""The q-deformed Aomoto complex in a chamber basis, and its specializations.

Given a flag decomposition, weights and degree data N (entries in {-1, 0, 1}),
the complex is

    0 -> Z --Sq--> Z^n --Tq--> Z^b -> 0,
    Sq_j  = [L(C_0, C_j)]_q,
    Tq_ij = N_ij [L(C_j, D_i)]_q,

where L is the total weight of the lines separating two chambers.  Entries are
stored in the rescaled basis (q^(1/2) - q^(-1/2))^k [C^k], so every entry is a
q-integer up to sign.
"""

from __future__ import annotations

import cmath
import json
import math
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .arrangement import Arrangement, parse_rational
from .chambers import FlagDecomposition, locate, separating_weight
from .exactlinalg import CycloElem, rank_cyclotomic, rank_float, rank_rational
from .osalg import ChainConditionError
from .qring import QNum, evaluate, gamma, qint

__all__ = [
    "DegreeError",
    "DegreeData",
    "QComplex",
    "RootOfUnity",
    "SpecReport",
    "load_degree_fixture",
    "read_degree_fixture",
    "specialized_matrix",
    "assemble",
    "verify_chain_q",
    "specialize",
    "milnor_spectrum",
    "milnor_reports",
    "parse_s0",
    "principal_root",
    "format_complex",
]


class DegreeError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeData:
    """N in decomposition order (rows D_1..D_b, columns C_1..C_n).

    ``names_d`` keeps the fixture's own row label for every decomposition row.
    """

    N: tuple[tuple[int, ...], ...]
    names_c: tuple[str, ...]
    names_d: tuple[str, ...]
    source: str = ""


def load_degree_fixture(text: str, decomp: FlagDecomposition, source: str = "") -> DegreeData:
    try:
        data = json.loads(text)
        labels_c = list(data["labels_c"])
        labels_d = list(data["labels_d"])
        N = [[int(x) for x in row] for row in data["N"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise DegreeError(f"malformed degree fixture: {exc}") from None
    n, b = len(decomp.ch1), len(decomp.ch2)
    if labels_c != decomp.labels_c or len(labels_d) != b:
        raise DegreeError("label mismatch")
    if len(N) != b or any(len(r) != n for r in N):
        raise DegreeError("label mismatch: N has the wrong shape")
    if any(x not in (-1, 0, 1) for r in N for x in r):
        raise DegreeError("entry outside {-1,0,1}")

    points = data.get("d_points")
    if points is None:
        if labels_d != decomp.labels_d:
            raise DegreeError("label mismatch")
        perm = list(range(b))
    else:
        if len(points) != b:
            raise DegreeError("label mismatch: one d_point per row required")
        index = {c.sign: k for k, c in enumerate(decomp.ch2)}
        perm = []
        for label, pt in zip(labels_d, points):
            sign = locate(decomp.arrangement, *(parse_rational(v) for v in pt))
            if sign not in index:
                raise DegreeError(f"label mismatch: point for {label} is not inside a ch2 chamber")
            perm.append(index[sign])
        if len(set(perm)) != b:
            raise DegreeError("label mismatch: two rows bound to the same chamber")
    rows: list = [None] * b
    names: list = [None] * b
    for src, dst in enumerate(perm):
        rows[dst] = tuple(N[src])
        names[dst] = labels_d[src]
    return DegreeData(tuple(rows), tuple(labels_c), tuple(names), source)


def read_degree_fixture(path, decomp: FlagDecomposition) -> DegreeData:
    return load_degree_fixture(Path(path).read_text(), decomp, source=str(path))


@dataclass(frozen=True)
class QComplex:
    Sq: tuple[QNum, ...]
    Tq: tuple[tuple[QNum, ...], ...]
    names_c: tuple[str, ...] = ()
    names_d: tuple[str, ...] = ()
    decomposition: FlagDecomposition | None = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.Sq)

    @property
    def b(self) -> int:
        return len(self.Tq)

    def product(self) -> list[QNum]:
        return [sum((t * s for t, s in zip(row, self.Sq) if t and s), QNum()) for row in self.Tq]

    def gamma_S(self) -> list[int]:
        return [gamma(x) for x in self.Sq]

    def gamma_T(self) -> list[list[int]]:
        return [[gamma(x) for x in row] for row in self.Tq]

    def rows_by_name(self) -> dict[str, tuple[QNum, ...]]:
        return dict(zip(self.names_d, self.Tq))


def verify_chain_q(qc: QComplex) -> bool:
    return all(p.is_zero() for p in qc.product())


def assemble(decomp: FlagDecomposition, weights: Sequence[int], deg: DegreeData) -> QComplex:
    n, b = len(decomp.ch1), len(decomp.ch2)
    if len(deg.N) != b or any(len(r) != n for r in deg.N):
        raise DegreeError("label mismatch: degree data does not fit the decomposition")
    if len(weights) != decomp.arrangement.n:
        raise ValueError("weight count mismatch")
    Sq = tuple(qint(separating_weight(decomp.ch0, c, weights)[1]) for c in decomp.ch1)
    Tq = tuple(
        tuple(
            qint(Nij * separating_weight(c, d, weights)[1]) if Nij else QNum()
            for Nij, c in zip(deg.N[i], decomp.ch1)
        )
        for i, d in enumerate(decomp.ch2)
    )
    qc = QComplex(Sq, Tq, tuple(decomp.labels_c), deg.names_d, decomp)
    for name, p in zip(qc.names_d, qc.product()):
        if not p.is_zero():
            raise ChainConditionError(f"q-chain condition violated: row {name} gives {p}")
    return qc


# ----------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_m^k with zeta_m = exp(2*pi*i/m)."""

    m: int
    k: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("conductor must be positive")

    def element(self) -> CycloElem:
        return CycloElem.zeta(self.m, self.k)

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.k / self.m)

    def squared(self) -> RootOfUnity:
        return RootOfUnity(self.m, 2 * self.k).reduced()

    def reduced(self) -> RootOfUnity:
        k = self.k % self.m
        g = math.gcd(self.m, k)
        return RootOfUnity(self.m // g, k // g)

    def __str__(self):
        r = self.reduced()
        if r.m == 1:
            return "1"
        if r.m == 2:
            return "-1"
        return f"zeta({self.m})" if self.k == 1 else f"zeta({self.m})^{self.k}"


def format_complex(z: complex) -> str:
    return f"{z.real:.15g}{z.imag:+.15g}i"


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_ZETA = re.compile(r"^\s*zeta\(\s*(\d+)\s*\)\s*(?:\^\s*(-?\d+))?\s*$")


def parse_s0(text: str):
    """"zeta(m)^k" -> RootOfUnity; "p/q" or integers -> Fraction; else a complex."""
    m = _ZETA.match(text)
    if m:
        return RootOfUnity(int(m.group(1)), int(m.group(2) or 1))
    t = text.strip()
    if _RATIONAL.match(t):
        return parse_rational(t)
    try:
        z = complex(t.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValueError(f"cannot parse parameter {text!r}") from None
    return z


def principal_root(q0):
    """The square root s0 of q0 with argument in (-pi/2, pi/2]."""
    if isinstance(q0, RootOfUnity):
        k = q0.k % q0.m
        if 2 * k > q0.m:
            k -= q0.m
        return RootOfUnity(2 * q0.m, k % (2 * q0.m))
    if isinstance(q0, Fraction) and q0 == -1:
        return RootOfUnity(4, 1)
    if isinstance(q0, Fraction) and q0 >= 0:
        num, den = math.isqrt(q0.numerator), math.isqrt(q0.denominator)
        if num * num == q0.numerator and den * den == q0.denominator:
            return Fraction(num, den)
    return cmath.sqrt(complex(q0))


# ----------------------------------------------------------------------------
# specialization


@dataclass(frozen=True)
class SpecReport:
    s0: str
    q0: str
    carrier: str
    rank_S: int
    rank_T: int
    dims: tuple[int, int, int]
    warning: str | None = None

    def to_json(self) -> dict:
        out = {
            "s0": self.s0,
            "q0": self.q0,
            "carrier": self.carrier,
            "ranks": {"S": self.rank_S, "T": self.rank_T},
            "dims": list(self.dims),
        }
        if self.warning:
            out["warning"] = self.warning
        return out

    @classmethod
    def from_json(cls, d: dict) -> SpecReport:
        return cls(
            d["s0"], d["q0"], d["carrier"], d["ranks"]["S"], d["ranks"]["T"],
            tuple(d["dims"]), d.get("warning"),
        )


def specialize(qc: QComplex, s0, tol: float = 1e-9) -> SpecReport:
    """Evaluate at q^(1/2) = s0 and compute (h0, h1, h2).

    Roots of unity (``RootOfUnity`` or ``CycloElem``) use exact arithmetic in
    Q(zeta_m); rationals use Q; anything else is evaluated in complex floating
    point and ranked with threshold ``tol``.
    """
    if isinstance(s0, RootOfUnity):
        value = s0.element()
        carrier = f"cyclotomic({s0.m})"
        s0_str, q0_str = str(s0), str(s0.squared())
        is_q1 = s0.squared().m == 1
        ranker = rank_cyclotomic
    elif isinstance(s0, CycloElem):
        value = s0
        carrier = f"cyclotomic({s0.m})"
        s0_str, q0_str = str(s0), str(s0 * s0)
        is_q1 = s0 * s0 == 1
        ranker = rank_cyclotomic
    elif isinstance(s0, (int, Fraction)):
        value = Fraction(s0)
        carrier = "rational"
        s0_str, q0_str = str(value), str(value * value)
        is_q1 = value * value == 1
        ranker = rank_rational
    else:
        value = complex(s0)
        carrier = "float"
        s0_str, q0_str = format_complex(value), format_complex(value * value)
        is_q1 = abs(value * value - 1) <= tol
        ranker = lambda rows: rank_float(rows, tol)
    if value == 0:
        raise ValueError("zero parameter")

    cache: dict[QNum, object] = {}

    def ev(x: QNum):
        if x not in cache:
            cache[x] = evaluate(x, value)
        return cache[x]

    S_col = [[ev(x)] for x in qc.Sq]
    T_rows = [[ev(x) for x in row] for row in qc.Tq]
    rS = ranker(S_col) if qc.n else 0
    rT = ranker(T_rows) if qc.n and qc.b else 0
    warning = None
    if is_q1:
        warning = "q0=1: reporting the cohomology of the undeformed Aomoto complex, not a local system"
        warnings.warn(warning, stacklevel=2)
    return SpecReport(s0_str, q0_str, carrier, rS, rT, (1 - rS, qc.n - rT - rS, qc.b - rT), warning)


def specialized_matrix(qc: QComplex, s0) -> list[list]:
    value = s0.element() if isinstance(s0, RootOfUnity) else s0
    return [[evaluate(x, value) for x in row] for row in qc.Tq]


def milnor_reports(arr: Arrangement, decomp: FlagDecomposition, deg: DegreeData) -> list[tuple[int, SpecReport]]:
    """Specialize the all-ones complex at q0 = zeta_{n+1}^i for i = 1..n."""
    n = arr.n
    qc = assemble(decomp, [1] * n, deg)
    return [(i, specialize(qc, RootOfUnity(2 * (n + 1), i))) for i in range(1, n + 1)]


def milnor_spectrum(arr: Arrangement, decomp: FlagDecomposition, deg: DegreeData) -> list[tuple[int, int, int, int]]:
    return [(i, *rep.dims) for i, rep in milnor_reports(arr, decomp, deg)]
