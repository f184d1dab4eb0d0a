"""Tabulate word norms over Fix(R_1) u {t}: closed form against BFS.

    python3 scripts/norm_table.py --lo -2 --hi 2
"""

import argparse
import itertools
import time
from collections import Counter
from dataclasses import dataclass

from houghton.dsl import format_element
from houghton.elements import HoughtonElement, from_z, zcycle
from houghton.metrics import StabilizedFixTNorm, norm_fix_t


@dataclass
class Config:
    lo: int = -2
    hi: int = 2
    family_max: int = 10
    bfs_family_max: int = 3


def window_perms(lo, hi):
    zs = list(range(lo, hi + 1))
    for img in itertools.permutations(zs):
        if list(img) != zs:
            yield HoughtonElement.from_images(2, (0, 0), {from_z(a): from_z(b) for a, b in zip(zs, img) if a != b})


def main(cfg: Config):
    oracle = StabilizedFixTNorm(2)
    start = time.perf_counter()
    hist, widths, mismatches = Counter(), Counter(), []
    for g in window_perms(cfg.lo, cfg.hi):
        res, w = oracle.norm(g)
        hist[res.length] += 1
        widths[w] += 1
        if res.length != norm_fix_t(g):
            mismatches.append(format_element(g, zmode=True))
    print(f"window [{cfg.lo}, {cfg.hi}]: {sum(hist.values())} permutations in {time.perf_counter() - start:.1f}s")
    print("  norm histogram:", dict(sorted(hist.items())))
    print("  stabilising widths:", dict(sorted(widths.items())))
    print("  mismatches:", mismatches or "none")

    print("\n  n  |zcycle(-n,-n+1)|  bfs   |zcycle(n,n+1)|  bfs")
    for n in range(1, cfg.family_max + 1):
        a, b = zcycle(-n, -n + 1), zcycle(n, n + 1)
        ba = bb = "-"
        if n <= cfg.bfs_family_max:
            ba, bb = oracle.norm(a)[0].length, oracle.norm(b)[0].length
        print(f"{n:3d}  {norm_fix_t(a):15d}  {ba!s:>4}   {norm_fix_t(b):13d}  {bb!s:>4}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lo", type=int, default=-2)
    p.add_argument("--hi", type=int, default=2)
    p.add_argument("--family-max", type=int, default=10)
    p.add_argument("--bfs-family-max", type=int, default=3)
    a = p.parse_args()
    main(Config(a.lo, a.hi, a.family_max, a.bfs_family_max))
