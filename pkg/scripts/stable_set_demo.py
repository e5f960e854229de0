"""Stable lattices for a family with residual characters 1 and 2 mod p.

The generators [[1,1],[0,2]] and [[2,0],[p^n,1]] are congruent to an
upper-triangular representation modulo p^n and no further, so the stable
set should be a segment of length n and the trace congruence should hold
exactly up to p^n.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from eiscurve.btree import MatrixRep, reducibility_index, reduction_at, segment_consistency, stable_set


@dataclass
class Config:
    p: int = 5
    n_max: int = 4
    radius_cap: int = 8
    word_cap: int = 5


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))

    psi = ({"g": 1, "h": 2}, {"g": 2, "h": 1})
    print(f"p = {cfg.p}")
    print(f"{'n':>3} {'length':>7} {'index':>6}  endpoints")
    for n in range(1, cfg.n_max + 1):
        rep = MatrixRep.of(cfg.p, [[[1, 1], [0, 2]], [[2, 0], [cfg.p ** n, 1]]], ["g", "h"])
        ss = stable_set(rep, cfg.radius_cap)
        idx = reducibility_index(rep, [psi], cfg.word_cap, cfg.n_max + 1)
        ends = ", ".join(f"{v.label()} ({reduction_at(v, rep)[1].value})" for v in ss.endpoints)
        flag = " inconsistent!" if segment_consistency(ss, rep) else ""
        print(f"{n:>3} {ss.length!s:>7} {idx:>6}  {ends}{flag}")


if __name__ == "__main__":
    main()
