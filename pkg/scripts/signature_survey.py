"""Compare the mod-8 signature of discriminant forms with t+ - t- on random
even lattices, and tabulate how often each residue occurs."""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from cubic_lattices.forms import discriminant_form
from cubic_lattices.lattice import IntLattice
from cubic_lattices.padic import signature_mod8
from cubic_lattices.sampling import random_even_gram


@dataclass
class Config:
    count: int = 500
    max_rank: int = 8
    max_entry: int = 12
    seed: int = 0


def run(cfg: Config) -> tuple[Counter, int]:
    rng = random.Random(cfg.seed)
    residues: Counter = Counter()
    mismatches = 0
    for _ in range(cfg.count):
        lat = IntLattice(random_even_gram(rng, cfg.max_rank, cfg.max_entry))
        s = signature_mod8(discriminant_form(lat))
        tp, tm = lat.signature
        residues[s] += 1
        mismatches += s != (tp - tm) % 8
    return residues, mismatches


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--max-rank", type=int, default=Config.max_rank)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    residues, bad = run(Config(count=a.count, max_rank=a.max_rank, seed=a.seed))
    for k in range(8):
        print(f"sign = {k} mod 8: {residues[k]}")
    print(f"mismatches: {bad}")


if __name__ == "__main__":
    main()
