"""Problem families shared by the Selmer tests and the acceptance run."""

from __future__ import annotations

import itertools

from eiscurve.dirichlet import DirichletCharacter, characters_mod, primitive_characters
from eiscurve.selmer import INF, GaloisCharacter, LocalCondition as LC, SelmerProblem

TRIV = DirichletCharacter.trivial()


def worked_cases(p: int = 5, ell: int = 7):
    """(name, problem, dimension, ledger) for the six worked dimension counts."""
    w = GaloisCharacter(TRIV, 1, p)
    w_inv = GaloisCharacter(TRIV, -1, p)
    chi = next(c for c in characters_mod(ell) if (c * c).order > 1)
    chi2_w = GaloisCharacter(chi * chi, 1, p)
    s3 = (ell, p, INF)
    return [
        ("omega, full at l, crystalline at p", SelmerProblem(w, s3, {ell: LC.FULL, p: LC.CRYSTALLINE, INF: LC.ZERO}), 1, [0, 0, -1, 1, 1, 0]),
        ("omega, full at l and p", SelmerProblem(w, s3, {ell: LC.FULL, p: LC.FULL, INF: LC.ZERO}), 2, [0, 0, -1, 1, 2, 0]),
        ("omega^-1, full at l and p", SelmerProblem(w_inv, s3, {ell: LC.FULL, p: LC.FULL, INF: LC.ZERO}), 1, [0, 0, 0, 0, 1, 0]),
        ("omega, crystalline at p only", SelmerProblem(w, (p, INF), {p: LC.CRYSTALLINE, INF: LC.ZERO}), 0, [0, 0, -1, 1, 0]),
        ("omega^-1, full at l, crystalline at p", SelmerProblem(w_inv, s3, {ell: LC.FULL, p: LC.CRYSTALLINE, INF: LC.ZERO}), 0, [0, 0, 0, 0, 0, 0]),
        ("chi^2 omega, full at l, crystalline at p", SelmerProblem(chi2_w, s3, {ell: LC.FULL, p: LC.CRYSTALLINE, INF: LC.ZERO}), 1, [0, 0, 0, 0, 1, 0]),
    ]


def conditions_at(place, p):
    if place == INF:
        return [LC.ZERO, LC.FULL]
    if place == p:
        return [LC.ZERO, LC.UNRAMIFIED, LC.CRYSTALLINE, LC.FULL]
    return [LC.ZERO, LC.UNRAMIFIED, LC.FULL]


def characters_supported_on(ell: int, bound: int = 7):
    conductors = [n for n in range(1, bound + 1) if _power_of(n, ell)]
    return [c for n in conductors for c in primitive_characters(n)]


def _power_of(n: int, ell: int) -> bool:
    while n % ell == 0:
        n //= ell
    return n == 1


def selmer_grid(primes=(3, 5), ells=(2, 7), js=range(-2, 3), bound=7):
    """Every problem chi * omega^j on sigma = {l, p, inf} with conductor <= bound supported on l."""
    for p, ell in itertools.product(primes, ells):
        sigma = (ell, p, INF)
        for chi, j in itertools.product(characters_supported_on(ell, bound), js):
            eta = GaloisCharacter(chi, j, p)
            for cs in itertools.product(*(conditions_at(v, p) for v in sigma)):
                yield SelmerProblem(eta, sigma, dict(zip(sigma, cs)))


# Zero < Unramified <= Crystalline < Full, as subspaces of local H^1
RANK = {LC.ZERO: 0, LC.UNRAMIFIED: 1, LC.CRYSTALLINE: 2, LC.FULL: 3}
