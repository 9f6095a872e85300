"""Scan s0 over roots of unity: jump loci of h1 and exact/float agreement.

For every primitive zeta(m)^k with m <= max_m, specialize exactly and in
floating point and record the dimensions.  Prints the parameters where h1 is
positive and any disagreement between the two carriers.
"""

import argparse
import cmath
import csv
import math
import sys
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

from qaomoto import FIXTURES
from qaomoto.arrangement import load_arrangement
from qaomoto.chambers import auto_flag, decompose, enumerate_chambers
from qaomoto.qcomplex import RootOfUnity, assemble, read_degree_fixture, specialize


@dataclass
class Config:
    arrangement: Path = FIXTURES / "deleted_b3.json"
    degrees: Path = FIXTURES / "deleted_b3_degrees.json"
    max_m: int = 24
    tol: float = 1e-9
    csv_out: Path | None = None


def main(cfg: Config) -> int:
    arr = load_arrangement(cfg.arrangement)
    dec = decompose(arr, enumerate_chambers(arr), auto_flag(arr))
    qc = assemble(dec, arr.weights, read_degree_fixture(cfg.degrees, dec))
    rows, disagreements = [], 0
    t0 = time.perf_counter()
    for m in range(1, cfg.max_m + 1):
        for k in range(1, m + 1):
            if math.gcd(m, k) != 1:
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                exact = specialize(qc, RootOfUnity(m, k))
                approx = specialize(qc, cmath.exp(2j * cmath.pi * k / m), cfg.tol)
            agree = exact.dims == approx.dims
            disagreements += not agree
            rows.append((m, k, exact.q0, *exact.dims, approx.dims[1], agree))
    elapsed = time.perf_counter() - t0

    print(f"{len(rows)} parameters in {elapsed:.2f}s, {disagreements} exact/float disagreements")
    print("h1 > 0 at:")
    for m, k, q0, h0, h1, h2, _, _ in rows:
        if h1:
            print(f"  s0 = zeta({m})^{k}  q0 = {q0}  (h0, h1, h2) = ({h0}, {h1}, {h2})")
    if cfg.csv_out:
        with open(cfg.csv_out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["m", "k", "q0", "h0", "h1", "h2", "h1_float", "agree"])
            w.writerows(rows)
    return 1 if disagreements else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=24)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--csv", dest="csv_out", type=Path)
    ns = ap.parse_args()
    sys.exit(main(Config(max_m=ns.max_m, tol=ns.tol, csv_out=ns.csv_out)))
