"""Eigenspace dimensions of the Milnor fiber monodromy from the q-complex.

Uses the all-ones form and q0 = exp(2 pi i k / (n+1)) for k = 1..n.
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from qaomoto import FIXTURES
from qaomoto.arrangement import load_arrangement
from qaomoto.chambers import auto_flag, decompose, enumerate_chambers
from qaomoto.osalg import aomoto_cohomology_dims, aomoto_matrices, build_os
from qaomoto.qcomplex import milnor_reports, read_degree_fixture


@dataclass
class Config:
    arrangement: Path = FIXTURES / "deleted_b3.json"
    degrees: Path = FIXTURES / "deleted_b3_degrees.json"
    prime: int = 3


def main(cfg: Config):
    arr = load_arrangement(cfg.arrangement)
    dec = decompose(arr, enumerate_chambers(arr), auto_flag(arr))
    deg = read_degree_fixture(cfg.degrees, dec)
    print(f"{'k':>3} {'q0':>12} {'rank T':>7} {'h0':>3} {'h1':>3} {'h2':>3}")
    total = 0
    for k, rep in milnor_reports(arr, dec, deg):
        print(f"{k:>3} {rep.q0:>12} {rep.rank_T:>7} {rep.dims[0]:>3} {rep.dims[1]:>3} {rep.dims[2]:>3}")
        total += rep.dims[1]
    am = aomoto_matrices(build_os(arr), [1] * arr.n)
    hp = aomoto_cohomology_dims(am, cfg.prime)[1]
    print(f"\nnon-trivial part of b1(F): {total}")
    print(f"2 * dim over F_{cfg.prime} of H^1(A, sum e_i): {2 * hp}")
    print("(the two agree when the hypotheses of the modular bound hold; that is not checked here)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("arrangement", nargs="?", type=Path, default=Config.arrangement)
    ap.add_argument("--degrees", type=Path, default=Config.degrees)
    ap.add_argument("--prime", type=int, default=3)
    ns = ap.parse_args()
    main(Config(ns.arrangement, ns.degrees, ns.prime))
