"""qaomoto command line.

Exit codes: 0 success, 2 input error, 3 mathematical inconsistency
(a chain condition failed).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import FIXTURES
from .arrangement import Arrangement, load_arrangement
from .chambers import auto_flag, decompose, enumerate_chambers, sign_string
from .exactlinalg import Matrix, is_prime
from .osalg import (
    ChainConditionError,
    aomoto_cohomology_dims,
    aomoto_matrices,
    build_os,
    check_chain,
    is_canonically_qdeformable,
    load_basis_change,
)
from .qcomplex import (
    RootOfUnity,
    assemble,
    format_complex,
    milnor_reports,
    parse_s0,
    principal_root,
    read_degree_fixture,
    specialize,
    verify_chain_q,
)

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 2, 3


@dataclass
class RunConfig:
    command: str
    arrangement: Path | None = None
    weights: tuple[int, ...] | None = None
    basis: Path | None = None
    degrees: Path | None = None
    s0: str | None = None
    q0: str | None = None
    field: str = "Q"
    tol: float = 1e-9
    fmt: str = "text"

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        cfg = cls(
            command=ns.command,
            arrangement=Path(ns.arrangement) if getattr(ns, "arrangement", None) else None,
            weights=_parse_weights(ns.weights) if getattr(ns, "weights", None) else None,
            basis=Path(ns.basis) if getattr(ns, "basis", None) else None,
            degrees=Path(ns.degrees) if getattr(ns, "degrees", None) else None,
            s0=getattr(ns, "s0", None),
            q0=getattr(ns, "q0", None),
            field=getattr(ns, "field", "Q") or "Q",
            tol=getattr(ns, "tol", 1e-9),
            fmt="json" if getattr(ns, "json", False) else "text",
        )
        cfg.validate()
        return cfg

    def validate(self):
        for p in (self.arrangement, self.basis, self.degrees):
            if p is not None and not p.exists():
                raise FileNotFoundError(f"no such file: {p}")
        f = self.field.upper()
        if f != "Q":
            if not (f.startswith("F") and f[1:].isdigit() and is_prime(int(f[1:]))):
                raise ValueError(f"field must be Q or Fp with p prime, got {self.field!r}")


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(w) for w in text.replace(" ", "").split(","))
    except ValueError:
        raise ValueError(f"weights must be comma-separated integers, got {text!r}") from None


def _load(cfg: RunConfig) -> Arrangement:
    arr = load_arrangement(cfg.arrangement)
    if cfg.weights is not None:
        arr = arr.with_weights(cfg.weights)
    return arr


def _decomposition(arr: Arrangement):
    return decompose(arr, enumerate_chambers(arr), auto_flag(arr))


def _table(row_labels, col_labels, rows, fmt=str) -> str:
    cells = [[""] + list(col_labels)] + [[r] + [fmt(x) for x in row] for r, row in zip(row_labels, rows)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _emit(cfg: RunConfig, payload: dict, text: str, out):
    out = sys.stdout if out is None else out
    if cfg.fmt == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# ----------------------------------------------------------------------------


def cmd_chambers(cfg: RunConfig, out=None) -> dict:
    arr = _load(cfg)
    dec = _decomposition(arr)
    rep = dec.report()
    lines = [
        f"sizes (ch0, ch1, ch2): {tuple(rep['sizes'])}",
        "crossing order along F1: " + ", ".join(f"H{i}" for i in rep["crossing_order"]),
        "",
        "chamber  sign" + " " * max(arr.n - 4, 0) + "  witness",
    ]
    for group in ("ch0", "ch1", "ch2"):
        for c in rep[group]:
            lines.append(f"{c['label']:<8} {c['sign']:<{max(arr.n, 4)}}  ({c['witness'][0]}, {c['witness'][1]})")
    lines += ["", "omega * 1 coefficients L(C_0, C_j): " + " ".join(map(str, rep["s_vector"])), ""]
    lines.append("separating weights L(C_j, D_i):")
    lines.append(_table(dec.labels_d, dec.labels_c, rep["L"]))
    _emit(cfg, rep, "\n".join(lines), out)
    return rep


def cmd_aomoto(cfg: RunConfig, out=None) -> dict:
    arr = _load(cfg)
    os_ = build_os(arr)
    basis = load_basis_change(cfg.basis) if cfg.basis else None
    am = aomoto_matrices(os_, arr.weights, basis)
    chain = check_chain(am)
    rep = {
        "deg2_basis": [[i + 1, j + 1] for i, j in os_.deg2_basis],
        "S": list(am.S),
        "T": [list(r) for r in am.T],
        "chain": chain,
    }
    lines = [
        "degree-2 basis: " + ", ".join(f"e{i + 1}e{j + 1}" for i, j in os_.deg2_basis),
        "S(omega) = " + " ".join(map(str, am.S)),
        "T(omega) =",
        Matrix.from_rows(am.T, am.n).render() if am.T else "(empty)",
        f"T*S = 0 over Z: {chain}",
    ]
    if not chain:
        _emit(cfg, rep, "\n".join(lines), out)
        raise ChainConditionError("T*S != 0: not a chain complex")
    ok, prod = is_canonically_qdeformable(am)
    rep["canonically_q_deformable"] = ok
    rep["q_product"] = [str(p) for p in prod]
    dims = aomoto_cohomology_dims(am, cfg.field)
    rep["field"] = cfg.field
    rep["dims"] = list(dims)
    lines.append("[T]_q [S]_q = (" + ", ".join(str(p) for p in prod) + ")")
    lines.append("canonically q-deformable" if ok else "NOT canonically q-deformable")
    lines.append(f"Aomoto cohomology over {cfg.field}: (h0, h1, h2) = {dims}")
    _emit(cfg, rep, "\n".join(lines), out)
    return rep


def _qcomplex(cfg: RunConfig, weights=None):
    arr = _load(cfg)
    if cfg.degrees is None:
        raise ValueError("--degrees is required")
    dec = _decomposition(arr)
    deg = read_degree_fixture(cfg.degrees, dec)
    qc = assemble(dec, arr.weights if weights is None else weights, deg)
    return arr, dec, deg, qc


def cmd_qcomplex(cfg: RunConfig, out=None) -> dict:
    _, dec, _, qc = _qcomplex(cfg)
    chain = verify_chain_q(qc)
    rep = {
        "labels_c": list(qc.names_c),
        "labels_d": list(qc.names_d),
        "Sq": [str(x) for x in qc.Sq],
        "Tq": [[str(x) for x in row] for row in qc.Tq],
        "chain": chain,
    }
    lines = [
        "Sq = (" + ", ".join(rep["Sq"]) + ")",
        "Tq (rows D, columns C):",
        _table(qc.names_d, qc.names_c, rep["Tq"]),
        "gamma(Tq):",
        _table(qc.names_d, qc.names_c, qc.gamma_T()),
        f"Tq * Sq = 0 in Z[q^1/2, q^-1/2]: {chain}",
    ]
    _emit(cfg, rep, "\n".join(lines), out)
    return rep


def _resolve_s0(cfg: RunConfig):
    if (cfg.s0 is None) == (cfg.q0 is None):
        raise ValueError("give exactly one of --s0 or --q0")
    if cfg.s0 is not None:
        return parse_s0(cfg.s0), None
    q0 = parse_s0(cfg.q0)
    s0 = principal_root(q0)
    shown = s0 if isinstance(s0, (RootOfUnity, Fraction)) else format_complex(s0)
    return s0, f"using the principal square root s0 = {shown} of q0 = {cfg.q0}"


def cmd_specialize(cfg: RunConfig, out=None) -> dict:
    s0, note = _resolve_s0(cfg)
    _, _, _, qc = _qcomplex(cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = specialize(qc, s0, cfg.tol)
    payload = rep.to_json()
    lines = [note] if note else []
    lines += [
        f"s0 = {rep.s0}   q0 = {rep.q0}   carrier: {rep.carrier}",
        f"rank S = {rep.rank_S}   rank T = {rep.rank_T}",
        f"(h0, h1, h2) = {rep.dims}",
    ]
    if rep.warning:
        lines.append("warning: " + rep.warning)
    _emit(cfg, payload, "\n".join(lines), out)
    return payload


def cmd_milnor(cfg: RunConfig, out=None) -> dict:
    arr = _load(cfg)
    dec = _decomposition(arr)
    deg = read_degree_fixture(cfg.degrees, dec)
    reports = milnor_reports(arr, dec, deg)
    # the finite-field side of the modular bound on b1 of the Milnor fiber, reported without
    # deciding whether its hypotheses hold
    am = aomoto_matrices(build_os(arr), [1] * arr.n)
    h1_f3 = aomoto_cohomology_dims(am, 3)[1]
    total = sum(r.dims[1] for _, r in reports)
    payload = {
        "spectrum": [{"i": i, **r.to_json()} for i, r in reports],
        "sum_h1_nontrivial": total,
        "twice_dim_F3_H1": 2 * h1_f3,
    }
    lines = [f"{'i':>3} {'q0':>14} {'h0':>3} {'h1':>3} {'h2':>3}"]
    for i, r in reports:
        lines.append(f"{i:>3} {r.q0:>14} {r.dims[0]:>3} {r.dims[1]:>3} {r.dims[2]:>3}")
    lines.append(f"sum of h1 over i = 1..n: {total}")
    lines.append(f"2 * dim_F3 H^1(A, e_1 + ... + e_n): {2 * h1_f3}")
    _emit(cfg, payload, "\n".join(lines), out)
    return payload


def verify_fixtures() -> list[tuple[str, bool]]:
    """Recompute the shipped fixture checks; returns (name, passed) pairs."""
    results = []
    b3 = load_arrangement(FIXTURES / "deleted_b3.json")
    dec = _decomposition(b3)
    deg = read_degree_fixture(FIXTURES / "deleted_b3_degrees.json", dec)
    try:
        qc = assemble(dec, b3.weights, deg)
        results.append(("deleted B3: q-chain identity", verify_chain_q(qc)))
        results.append(("deleted B3: s-vector 1 3 7 10 12 13 15", qc.gamma_S() == [1, 3, 7, 10, 12, 13, 15]))
        r4 = specialize(qc, RootOfUnity(4))
        results.append(("deleted B3: q0=-1 gives rank T 4, h1 2", (r4.rank_T, r4.dims[1]) == (4, 2)))
        r12 = specialize(qc, RootOfUnity(12))
        results.append(("deleted B3: q0=zeta_6 gives rank T 5, h1 1", (r12.rank_T, r12.dims[1]) == (5, 1)))
    except ChainConditionError:
        results.append(("deleted B3: q-chain identity", False))
    three = load_arrangement(FIXTURES / "three_lines.json")
    os_ = build_os(three)
    for name, expect in (("three_lines_basis1.json", False), ("three_lines_basis2.json", True)):
        am = aomoto_matrices(os_, three.weights, load_basis_change(FIXTURES / name))
        ok, _ = is_canonically_qdeformable(am)
        results.append((f"three lines, {name}: deformable = {expect}", ok == expect))
    return results


def cmd_verify_fixtures(cfg: RunConfig, out=None) -> dict:
    results = verify_fixtures()
    payload = {"checks": [{"name": n, "passed": ok} for n, ok in results]}
    text = "\n".join(f"{'PASS' if ok else 'FAIL'}  {n}" for n, ok in results)
    _emit(cfg, payload, text, out)
    if not all(ok for _, ok in results):
        raise ChainConditionError("fixture verification failed")
    return payload


COMMANDS = {
    "chambers": cmd_chambers,
    "aomoto": cmd_aomoto,
    "qcomplex": cmd_qcomplex,
    "specialize": cmd_specialize,
    "milnor": cmd_milnor,
    "verify-fixtures": cmd_verify_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qaomoto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degrees=False):
        p.add_argument("arrangement", help="arrangement JSON file")
        p.add_argument("--weights", help="comma-separated integer weights overriding the file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if degrees:
            p.add_argument("--degrees", required=True, help="degree data JSON file")

    common(sub.add_parser("chambers", help="chambers and flag decomposition"))
    p = sub.add_parser("aomoto", help="Aomoto matrices and the q-deformability test")
    common(p)
    p.add_argument("--basis", help="basis change JSON file")
    p.add_argument("--field", default="Q", help="Q or Fp (e.g. F3) for cohomology dimensions")
    common(sub.add_parser("qcomplex", help="assemble the q-deformed complex"), degrees=True)
    p = sub.add_parser("specialize", help="local system cohomology at one parameter")
    common(p, degrees=True)
    p.add_argument("--s0", help='square root of q0: "zeta(m)^k", an integer, "p/q" or a complex like 0.7+0.2i')
    p.add_argument("--q0", help="q0 itself; the principal square root is used")
    p.add_argument("--tol", type=float, default=1e-9, help="pivot threshold for the float carrier")
    common(sub.add_parser("milnor", help="eigenspace dimensions for q0 = zeta_(n+1)^i"), degrees=True)
    p = sub.add_parser("verify-fixtures", help="recheck the shipped fixtures")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        COMMANDS[cfg.command](cfg)
    except ChainConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
