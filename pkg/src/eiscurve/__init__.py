"""Exact arithmetic for Eisenstein series, Selmer dimensions and stable lattices."""

from .dirichlet import DirichletCharacter, characters_mod, gen_bernoulli
from .modforms import QExpansion, e2_series, eisenstein_series, refine
from .numkernel import CyclotomicNumber, TruncatedSeries
from .selmer import GaloisCharacter, LocalCondition, SelmerProblem, selmer_dimension

__all__ = [
    "CyclotomicNumber",
    "DirichletCharacter",
    "GaloisCharacter",
    "LocalCondition",
    "QExpansion",
    "SelmerProblem",
    "TruncatedSeries",
    "characters_mod",
    "e2_series",
    "eisenstein_series",
    "gen_bernoulli",
    "refine",
    "selmer_dimension",
]
