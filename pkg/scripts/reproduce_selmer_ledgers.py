"""Print the six worked Selmer dimension counts with their term ledgers."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from eiscurve.dirichlet import DirichletCharacter, characters_mod
from eiscurve.selmer import INF, GaloisCharacter, LocalCondition as LC, SelmerProblem, selmer_dimension


@dataclass
class Config:
    p: int = 5
    ell: int = 7
    verbose: bool = False


def problems(cfg: Config):
    p, ell = cfg.p, cfg.ell
    triv = DirichletCharacter.trivial()
    w, w_inv = GaloisCharacter(triv, 1, p), GaloisCharacter(triv, -1, p)
    chi = next(c for c in characters_mod(ell) if (c * c).order > 1)
    s = (ell, p, INF)
    yield "w: full at l, crystalline at p", SelmerProblem(w, s, {ell: LC.FULL, p: LC.CRYSTALLINE})
    yield "w: full at l and p", SelmerProblem(w, s, {ell: LC.FULL, p: LC.FULL})
    yield "w^-1: full at l and p", SelmerProblem(w_inv, s, {ell: LC.FULL, p: LC.FULL})
    yield "w: crystalline at p, sigma = {p, inf}", SelmerProblem(w, (p, INF), {p: LC.CRYSTALLINE})
    yield "w^-1: full at l, crystalline at p", SelmerProblem(w_inv, s, {ell: LC.FULL, p: LC.CRYSTALLINE})
    yield "chi^2 w: full at l, crystalline at p", SelmerProblem(GaloisCharacter(chi * chi, 1, p), s, {ell: LC.FULL, p: LC.CRYSTALLINE})


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--ell", type=int, default=Config.ell)
    ap.add_argument("--verbose", action="store_true")
    cfg = Config(**vars(ap.parse_args()))

    print(f"p = {cfg.p}, l = {cfg.ell}")
    for name, prob in problems(cfg):
        r = selmer_dimension(prob)
        terms = ",".join("?" if v is None else str(v) for v in r.term_values())
        print(f"{name:<40} dim {r.symbolic():>3}   ledger {terms:<16} [{r.dual_term.reason}]")
        if cfg.verbose:
            for e in r.ledger:
                print(f"    {e.value!s:>3}  {e.label}: {e.justification}")


if __name__ == "__main__":
    main()
