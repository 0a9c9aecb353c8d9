"""Sweep cyclic quotient types: integrality of K^2 against the T-congruence, and mu = d - 1.

    python scripts/t_singularity_sweep.py --max-r 300
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from resgraph.cli import t_sweep


@dataclass
class Config:
    max_r: int = 200


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--max-r", type=int, default=Config.max_r)
    cfg = Config(p.parse_args().max_r)
    t = time.perf_counter()
    res = t_sweep(cfg.max_r)
    dt = time.perf_counter() - t
    print(f"r <= {cfg.max_r}: {res['types_checked']} types, {res['equivalence_exceptions']} exceptions")
    print(f"T-singularities: {res['t_singularities_checked']}, mu != d-1: {res['milnor_exceptions']}")
    print(f"{dt:.2f}s")


if __name__ == "__main__":
    main()
