"""Saturate Z m0 + Z h2 in the cohomology lattice for random m0 in L0 and
tabulate determinants against the root / long-root property of m0."""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from cubic_lattices.sampling import random_l0_vector, saturation_sample


@dataclass
class Config:
    count: int = 300
    seed: int = 0
    kinds: tuple[str, ...] = ("root", "long", "any")


def run(cfg: Config) -> tuple[Counter, int]:
    rng = random.Random(cfg.seed)
    table: Counter = Counter()
    failures = 0
    for k in range(cfg.count):
        s = saturation_sample(random_l0_vector(rng, cfg.kinds[k % len(cfg.kinds)]))
        label = "root" if s.is_root else "long root" if s.is_long_root else "other"
        table[(label, s.det)] += 1
        failures += ((s.det in (2, 6)) != (s.is_root or s.is_long_root)) or not s.claim_holds
    return table, failures


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    table, failures = run(Config(count=a.count, seed=a.seed))
    for (label, det), n in sorted(table.items(), key=lambda kv: (kv[0][0], abs(kv[0][1]))):
        if label != "other" or abs(det) <= 30:
            print(f"{label:9s} det {det:6d}: {n}")
    other = sum(n for (label, det), n in table.items() if label == "other" and abs(det) > 30)
    print(f"other     |det| > 30: {other}")
    print(f"failures: {failures}")


if __name__ == "__main__":
    main()
