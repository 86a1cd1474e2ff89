"""Cabello-type witness: d, N, bounds and simulated chi for the two showcase configurations.

    python3 scripts/cabello_table.py [--shots 8192] [--seed 0]
"""

import argparse
import sys
from dataclasses import dataclass

from hexcontext.cabello import chi_bounds, estimate_chi
from hexcontext.contextuality import certify_degree
from hexcontext.targets import resolve_target


@dataclass
class CabelloRun:
    targets: tuple[str, ...] = ("elliptic:YYY", "hexcomp:1162")
    shots: int | None = None  # None: exact expectations
    seed: int = 0


def table(cfg: CabelloRun) -> list[tuple]:
    rows = []
    for name in cfg.targets:
        t = resolve_target(name)
        d = certify_degree(t.config, t.predicted).upper
        rep = estimate_chi(t.config, d, shots=cfg.shots, seed=cfg.seed)
        N, hv = chi_bounds(t.config, d)
        rows.append((name, d, N, hv, rep.chi))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--shots", type=int)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    print(f"{'target':>14} {'d':>3} {'N':>4} {'N-2d':>5} {'chi':>10}")
    for name, d, N, hv, chi in table(CabelloRun(shots=a.shots, seed=a.seed)):
        print(f"{name:>14} {d:>3} {N:>4} {hv:>5} {chi:>10.5f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
