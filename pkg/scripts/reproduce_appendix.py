"""Rootless lattice diag(4,4,6,8): it occurs as A0 of a cubic fourfold, yet
its genus has roots at every prime."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from cubic_lattices.classify import LocalGenusData, decide_A0, decide_local_rootless
from cubic_lattices.lattice import diagonal
from cubic_lattices.padic import congruence_solutions, represents_padically
from cubic_lattices.shortvec import roots


@dataclass
class Config:
    diagonal: tuple[int, ...] = (4, 4, 6, 8)
    primes: tuple[int, ...] = (2, 3, 5, 7)
    witness_modulus: int = 16


def run(cfg: Config) -> dict:
    s = diagonal(list(cfg.diagonal))
    half = diagonal([d // 2 for d in cfg.diagonal])  # Q(x)/2 = 2 represents 1 for the halved form
    return {
        "config": asdict(cfg),
        "roots": len(roots(s)),
        "decide_A0": decide_A0(s).to_json(),
        "represents_1": {p: represents_padically(half, 1, p) for p in cfg.primes},
        "solutions_mod_witness": len(congruence_solutions(half.gram, 1, cfg.witness_modulus)),
        "local_rootless": decide_local_rootless(LocalGenusData.from_lattice(s)).to_json(),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    res = run(Config())
    if args.json:
        print(json.dumps(res, indent=2, sort_keys=True, default=str))
        return
    print(f"roots: {res['roots']}")
    print(f"decide_A0: {res['decide_A0']['verdict']} ({res['decide_A0']['condition']})")
    for p, ok in res["represents_1"].items():
        print(f"2x^2+2y^2+3z^2+4w^2 represents 1 over Z_{p}: {ok}")
    print(f"solutions mod {Config.witness_modulus}: {res['solutions_mod_witness']}")
    loc = res["local_rootless"]
    print(f"local rootless genus: {loc['verdict']} ({loc['condition']})")


if __name__ == "__main__":
    main()
