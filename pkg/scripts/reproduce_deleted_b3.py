"""Rebuild the deleted B3 q-complex at q = -1 and q = exp(pi i / 3).

    python3 scripts/reproduce_deleted_b3.py [--json out.json]
"""

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from qaomoto import FIXTURES
from qaomoto.arrangement import load_arrangement
from qaomoto.chambers import auto_flag, decompose, enumerate_chambers
from qaomoto.qcomplex import RootOfUnity, assemble, read_degree_fixture, specialize, specialized_matrix


@dataclass
class Config:
    arrangement: Path = FIXTURES / "deleted_b3.json"
    degrees: Path = FIXTURES / "deleted_b3_degrees.json"
    conductors: tuple[int, ...] = (4, 12)
    json_out: Path | None = None


def table(names, rows, cols):
    width = max(len(str(x)) for row in rows for x in row) + 1
    width = max(width, 5)
    head = " " * 5 + "".join(c.rjust(width) for c in cols)
    body = [n.ljust(5) + "".join(str(x).rjust(width) for x in row) for n, row in zip(names, rows)]
    return "\n".join([head, *body])


def main(cfg: Config):
    arr = load_arrangement(cfg.arrangement)
    dec = decompose(arr, enumerate_chambers(arr), auto_flag(arr))
    deg = read_degree_fixture(cfg.degrees, dec)
    qc = assemble(dec, arr.weights, deg)

    order = sorted(range(qc.b), key=lambda i: int(qc.names_d[i].split("_")[1]))
    names = [qc.names_d[i] for i in order]
    print("crossing order:", " ".join(f"H{i + 1}" for i in dec.crossing_order))
    print("omega * 1 =", " + ".join(f"{s}[{c}]" for s, c in zip(qc.gamma_S(), qc.names_c)))
    print("\nq-deformed coboundary (rows D, columns C):")
    print(table(names, [[str(x) for x in qc.Tq[i]] for i in order], qc.names_c))

    results = {"config": {k: str(v) for k, v in asdict(cfg).items()}, "reports": []}
    for m in cfg.conductors:
        s0 = RootOfUnity(m)
        rep = specialize(qc, s0)
        mat = specialized_matrix(qc, s0)
        print(f"\ns0 = {rep.s0}, q0 = {rep.q0}:")
        print(table(names, [[str(x).replace(" ", "") for x in mat[i]] for i in order], qc.names_c))
        print(f"rank T = {rep.rank_T}, (h0, h1, h2) = {rep.dims}")
        results["reports"].append(rep.to_json())
    if cfg.json_out:
        cfg.json_out.write_text(json.dumps(results, indent=2))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--conductors", default="4,12", help="m for s0 = zeta(m), comma-separated")
    ap.add_argument("--json", dest="json_out", type=Path)
    ns = ap.parse_args()
    main(Config(conductors=tuple(int(m) for m in ns.conductors.split(",")), json_out=ns.json_out))
