"""Sampled confining checks for conjugation by t on subgroups of H_2.

    python3 scripts/confining_report.py --samples 500 --seed 1
"""

import argparse
from dataclasses import dataclass

from houghton.confining import Conjugation, check_confining, parse_subset
from houghton.dsl import format_element
from houghton.elements import t


@dataclass
class Config:
    samples: int = 200
    seed: int = 0
    subsets: tuple = ("fix:1", "fix:2", "syminf")


def show(g):
    return "-" if g is None else format_element(g, zmode=True)


def main(cfg: Config):
    tau = Conjugation(t(1, 2, 2))
    ambient = parse_subset("syminf", 2)
    print(f"{'subset':>10}  invariant  n0  exhausts  strict witness   counterexample")
    for name in cfg.subsets:
        Q = parse_subset(name, 2)
        rep = check_confining(Q, tau, ambient, cfg.seed, cfg.samples)
        cx = rep.invariance_counterexample or rep.exhaustion_counterexample
        assert rep.verify(Q, tau, 4, 64), f"report for {name} does not re-verify"
        print(f"{name:>10}  {rep.invariance_ok!s:>9}  {rep.n0_found!s:>2}  {rep.exhaustion_ok!s:>8}  {show(rep.strict_witness):>15}   {show(cx)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    main(Config(a.samples, a.seed))
