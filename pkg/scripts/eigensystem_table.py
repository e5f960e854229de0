"""Hecke eigenvalues of refined weight-2 Eisenstein series.

For each (p, l) the series E_2 refined critically at p and ordinarily at l
is checked against T(q) for small primes q and U(p), U(l).
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from eiscurve.modforms import HeckeDescriptor, e2_refined, eigencheck
from eiscurve.numkernel import primes_below


@dataclass
class Config:
    pairs: list = field(default_factory=lambda: [(5, 7), (3, 11), (7, 2)])
    prec: int = 600
    t_bound: int = 30


def row(cfg: Config, p: int, ell: int) -> list[str]:
    f = e2_refined(cfg.prec, ("crit", p), ("ord", ell))
    cells = []
    for q in primes_below(cfg.t_bound + 1):
        op = HeckeDescriptor("U" if q in (p, ell) else "T", q)
        lam = eigencheck(op, f)
        cells.append(f"{op.label()}={'-' if lam is None else lam}")
    return cells


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=Config.prec)
    ap.add_argument("--t-bound", type=int, default=Config.t_bound)
    args = ap.parse_args()
    cfg = Config(prec=args.prec, t_bound=args.t_bound)

    for p, ell in cfg.pairs:
        t0 = time.perf_counter()
        cells = row(cfg, p, ell)
        print(f"E_2 crit {p}, ord {ell} (prec {cfg.prec}, {time.perf_counter() - t0:.2f}s)")
        print("   " + "  ".join(cells))


if __name__ == "__main__":
    main()
