"""Exhaustive two-fixed-point search for an order-N automorphism with holomorphic Lefschetz number 1.

    python scripts/lefschetz_deg5.py --orders 2 3 5 7 11 13
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from resgraph.lefschetz import lefschetz_sum, solve_two_point


@dataclass
class Config:
    orders: list[int] = field(default_factory=lambda: [2, 3, 5, 7, 11, 13])


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--orders", type=int, nargs="+", default=Config().orders)
    cfg = Config(p.parse_args().orders)
    for N in cfg.orders:
        t = time.perf_counter()
        sols = sorted(solve_two_point(N))
        dt = time.perf_counter() - t
        for s in sols:
            assert lefschetz_sum(N, list(s)) == 1
        shown = ", ".join(" ".join(f"({a},{b})" for a, b in s) for s in sols) or "none"
        print(f"N={N:>2}: {(N - 1) ** 4:>6} tuples, {len(sols)} class(es): {shown}  [{dt:.3f}s]")


if __name__ == "__main__":
    main()
