"""Focal and lineal counts for H_n and H_n x| G, plus a DOT dump.

    python3 scripts/poset_demo.py --dot out.dot
"""

import argparse
from dataclasses import dataclass

from houghton.structures import PermGroup, build_poset, fixator


@dataclass
class Config:
    max_n: int = 6
    lineal_sample: int = 0
    dot: str | None = None


def main(cfg: Config):
    rows = [(f"H_{n}", build_poset(n, lineal_sample=cfg.lineal_sample)) for n in range(2, cfg.max_n + 1)]
    rows.append(("H_5 x| <(4 5)>", build_poset(5, PermGroup.parse("(4 5)", 5))))
    for n, k in [(4, 2), (5, 3), (6, 1), (3, 0)]:
        rows.append((f"H_{n} x| Fix({{1..{k}}})", build_poset(n, fixator(n, k))))
    print(f"{'group':>22}  focal  lineal  edges  axioms")
    for name, P in rows:
        c = P.counts()
        ok = "ok" if not P.order_violations() else "VIOLATED"
        print(f"{name:>22}  {c['focal']:5d}  {c['lineal']:6d}  {len(P.edges):5d}  {ok}")
    if cfg.dot:
        with open(cfg.dot, "w") as fh:
            fh.write(build_poset(4, lineal_sample=3).to_dot())
        print(f"wrote H_4 poset to {cfg.dot}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--lineal-sample", type=int, default=0)
    p.add_argument("--dot")
    a = p.parse_args()
    main(Config(a.max_n, a.lineal_sample, a.dot))
