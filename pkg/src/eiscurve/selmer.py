"""Selmer dimensions for one-dimensional p-adic characters ``chi * omega_p^j`` of ``G_Q``.

Everything is decided by exact predicates on the character (triviality of
``chi(v) v^j``, the exponent ``j``, the parity ``chi(-1)(-1)^j``); the
coefficient field is a symbolic ``Q_p``-line.  The Greenberg-Wiles formula

    dim H^1_L(V) = dim H^1_{L-perp}(V*(1)) + h0(Q, V) - h0(Q, V*(1))
                   + sum_v (dim L_v - h0(G_v, V))

is evaluated term by term and returned as a ledger.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Union

from .dirichlet import DirichletCharacter, char_primitive
from .numkernel import is_prime

INF = "inf"
GLOBAL = "Q"
Place = Union[int, str]


class LocalCondition(enum.Enum):
    UNRAMIFIED = "unramified"
    CRYSTALLINE = "crystalline"
    FULL = "full"
    ZERO = "zero"

    @classmethod
    def parse(cls, text: str) -> "LocalCondition":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown local condition {text!r} (expected one of {[c.value for c in cls]})"
            ) from None


def parse_place(x) -> Place:
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("inf", "infinity", "oo"):
            return INF
        try:
            x = int(s)
        except ValueError:
            raise ValueError(f"malformed place {x!r}") from None
    if isinstance(x, bool) or not isinstance(x, int) or not is_prime(x):
        raise ValueError(f"place {x!r} is neither a prime nor 'inf'")
    return x


@dataclass(frozen=True)
class GaloisCharacter:
    """``chi * omega_p^j`` with ``chi`` stored in primitive form, conductor prime to ``p``."""

    dirichlet_part: DirichletCharacter
    j: int
    p: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"working prime must be an odd prime, got {self.p}")
        cond, prim = char_primitive(self.dirichlet_part)
        if cond % self.p == 0:
            raise ValueError(f"conductor {cond} of the finite-order part is divisible by p={self.p}")
        object.__setattr__(self, "dirichlet_part", prim)

    @property
    def conductor(self) -> int:
        return self.dirichlet_part.modulus

    def is_trivial(self) -> bool:
        return self.j == 0 and self.dirichlet_part.is_trivial()

    def ramified_primes(self) -> set[int]:
        out = {q for q in range(2, self.conductor + 1) if self.conductor % q == 0 and is_prime(q)}
        if self.j != 0:
            out.add(self.p)
        return out

    def sign_at_infinity(self) -> int:
        """Eigenvalue of complex conjugation, ``chi(-1)(-1)^j``."""
        return self.dirichlet_part.parity() * (-1) ** (self.j % 2)

    def __str__(self):
        chi = "1" if self.dirichlet_part.is_trivial() else str(self.dirichlet_part)
        if self.j == 0:
            return chi
        w = "w" if self.j == 1 else f"w^{self.j}"
        return w if chi == "1" else f"{chi}*{w}"


def char_dual_twist(eta: GaloisCharacter) -> GaloisCharacter:
    """``V*(1) = eta^{-1} omega_p``."""
    return GaloisCharacter(eta.dirichlet_part.inverse(), 1 - eta.j, eta.p)


def _chi_value_is_one(chi: DirichletCharacter, v: int) -> bool:
    return chi.value_exponent(v) == 0


def local_h0(place: Place, eta: GaloisCharacter) -> int:
    """``dim H^0(G_v, eta)``; ``place="Q"`` gives the global ``H^0``."""
    if place == GLOBAL:
        return int(eta.is_trivial())
    if place == INF:
        return int(eta.sign_at_infinity() == 1)
    v = parse_place(place)
    if eta.j != 0 or eta.conductor % v == 0:
        return 0
    return int(_chi_value_is_one(eta.dirichlet_part, v))


def local_cond_dim(place: Place, cond: LocalCondition, eta: GaloisCharacter) -> int:
    if place == INF:
        if cond in (LocalCondition.ZERO, LocalCondition.FULL):
            return 0  # H^1(G_R, V) = 0 for odd p
        raise ValueError(f"condition {cond.value} is not defined at infinity")
    v = parse_place(place)
    if cond is LocalCondition.CRYSTALLINE and v != eta.p:
        raise ValueError(f"crystalline condition requested at {v} != p={eta.p}")
    h0 = local_h0(v, eta)
    if cond is LocalCondition.ZERO:
        return 0
    if cond is LocalCondition.UNRAMIFIED:
        return h0
    if cond is LocalCondition.CRYSTALLINE:
        return h0 + (1 if eta.j >= 1 else 0)
    h2 = local_h0(v, char_dual_twist(eta))
    return h0 + h2 + (1 if v == eta.p else 0)


def dual_condition(place: Place, cond: LocalCondition, eta: GaloisCharacter | None = None) -> LocalCondition:
    """Orthogonal complement under local Tate duality.

    Full and zero are exchanged; unramified and crystalline are self-dual.
    At ``p`` the unramified line is first identified with the crystalline
    line (``j = 0``) or with zero (``j != 0``, where ``V^{I_p} = 0``); this
    needs ``eta``.
    """
    if cond is LocalCondition.FULL:
        return LocalCondition.ZERO
    if cond is LocalCondition.ZERO:
        return LocalCondition.FULL
    if cond is LocalCondition.UNRAMIFIED and eta is not None and place == eta.p:
        return LocalCondition.CRYSTALLINE if eta.j == 0 else LocalCondition.FULL
    return cond


@dataclass(frozen=True)
class DualTerm:
    status: str  # "known" | "assumed" | "unknown"
    value: int | None
    reason: str

    @classmethod
    def known(cls, reason: str) -> "DualTerm":
        return cls("known", 0, reason)

    @classmethod
    def unknown(cls, reason: str) -> "DualTerm":
        return cls("unknown", None, reason)

    @property
    def is_known(self) -> bool:
        return self.status == "known"


CLASS_NUMBER = "finiteness of class numbers"
UNIT_THEOREM = "Dirichlet unit theorem"
SOULE = "Soule"


def _within_unramified_line(v: Place, cond: LocalCondition, eta: GaloisCharacter) -> bool:
    if v == INF or cond in (LocalCondition.ZERO, LocalCondition.UNRAMIFIED):
        return True
    if cond is LocalCondition.CRYSTALLINE:
        return True
    # full at v != p coincides with the unramified line when h2 vanishes
    return v != eta.p and local_h0(v, char_dual_twist(eta)) == 0


def global_vanishing_rule(eta: GaloisCharacter, conditions: Mapping[Place, LocalCondition]) -> DualTerm:
    """Decide whether ``H^1_L(Q, eta)`` vanishes for the given (dual) conditions.

    * ``j = 0``, every condition inside the unramified line: class-number finiteness.
    * ``j = 1``, ``chi`` trivial or odd, every condition inside the
      Bloch-Kato line: units of the field cut out by ``chi`` have no
      ``chi``-part.
    * ``j >= 2`` with ``chi(-1)(-1)^j = 1``: ``H^2(G_S, eta) = 0`` (Soule) and the
      global Euler characteristic force ``H^1(G_S, eta) = 0``.

    Anything else is ``unknown``.
    """
    conds = dict(conditions)
    if eta.j == 0:
        if all(_within_unramified_line(v, c, eta) for v, c in conds.items()):
            return DualTerm.known(CLASS_NUMBER)
        return DualTerm.unknown("finite-order character with a condition larger than the unramified line")
    if eta.j == 1:
        chi = eta.dirichlet_part
        if not (chi.is_trivial() or chi.parity() == -1):
            return DualTerm.unknown("even finite-order part: units may contribute")
        if all(_within_unramified_line(v, c, eta) for v, c in conds.items()):
            return DualTerm.known(UNIT_THEOREM)
        return DualTerm.unknown("twist of Q_p(1) with a condition larger than the Bloch-Kato line")
    if eta.j >= 2:
        if eta.sign_at_infinity() == 1:
            return DualTerm.known(SOULE)
        return DualTerm.unknown("weight <= -4 twist with complex conjugation acting by -1")
    return DualTerm.unknown("no vanishing rule for negative cyclotomic exponent")


@dataclass(frozen=True)
class SelmerProblem:
    character: GaloisCharacter
    sigma: tuple
    conditions: dict = field(default_factory=dict)

    def __post_init__(self):
        sigma = tuple(parse_place(v) for v in self.sigma)
        if len(set(sigma)) != len(sigma):
            raise ValueError("sigma has repeated places")
        eta = self.character
        if eta.p not in sigma or INF not in sigma:
            raise ValueError(f"sigma must contain p={eta.p} and 'inf'")
        missing = sorted(q for q in eta.ramified_primes() if q not in sigma)
        if missing:
            raise ValueError(f"sigma is missing ramified primes {missing}")
        conds = {}
        for v, c in self.conditions.items():
            v = parse_place(v)
            if v not in sigma:
                raise ValueError(f"condition given at {v}, which is not in sigma")
            conds[v] = c if isinstance(c, LocalCondition) else LocalCondition.parse(c)
        for v in sigma:
            conds.setdefault(v, LocalCondition.ZERO if v == INF else LocalCondition.UNRAMIFIED)
            # validates the (place, condition) pair
            local_cond_dim(v, conds[v], eta)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "conditions", conds)

    def dual(self) -> "SelmerProblem":
        eta = self.character
        conds = {v: dual_condition(v, c, eta) for v, c in self.conditions.items()}
        return SelmerProblem(char_dual_twist(eta), self.sigma, conds)


@dataclass(frozen=True)
class LedgerEntry:
    label: str
    value: int | None
    justification: str


@dataclass(frozen=True)
class SelmerResult:
    dimension: int | None
    ledger: tuple
    dual_term: DualTerm
    notes: tuple = ()

    @property
    def partial(self) -> int:
        """Sum of every term except the dual Selmer term."""
        return sum(e.value for e in self.ledger[1:])

    def term_values(self) -> list:
        return [e.value for e in self.ledger]

    def symbolic(self) -> str:
        if self.dimension is not None:
            return str(self.dimension)
        return f"{self.partial} + dim H^1_Lperp(Q, V*(1))"


def _local_justification(v: Place, cond: LocalCondition, eta: GaloisCharacter) -> str:
    if v == INF:
        return f"L_inf = {cond.value}: H^1(G_R, V) = 0 for odd p; h0 = {local_h0(INF, eta)} (complex conjugation acts by {eta.sign_at_infinity()})"
    h0 = local_h0(v, eta)
    if cond is LocalCondition.ZERO:
        return f"L_v = 0; h0 = {h0}"
    if cond is LocalCondition.UNRAMIFIED:
        return f"unramified: dim H^1_unr = dim H^0 = {h0}"
    if cond is LocalCondition.CRYSTALLINE:
        neg = 1 if eta.j >= 1 else 0
        return f"crystalline: dim H^1_f - h0 = number of negative Hodge-Tate weights = {neg}"
    h2 = local_h0(v, char_dual_twist(eta))
    if v == eta.p:
        return f"full H^1 at p: h0 + h2 + 1 (local Euler characteristic), h2 = dim H^0(G_p, V*(1)) = {h2}"
    return f"full H^1: h1 - h0 = h2 = dim H^0(G_v, V*(1)) = {h2} (local duality)"


def selmer_dimension(problem: SelmerProblem, assume_dual: int | None = None) -> SelmerResult:
    eta = problem.character
    dual_eta = char_dual_twist(eta)
    dual_problem = problem.dual()
    rule = global_vanishing_rule(dual_eta, dual_problem.conditions)

    if rule.is_known:
        dual = rule
        just = f"= 0 ({rule.reason}); V*(1) = {dual_eta}"
        if rule.reason == CLASS_NUMBER and eta.j == 1 and not eta.dirichlet_part.is_trivial():
            just += (
                "; note: the dual character has finite order, so the vanishing here comes from"
                " class-number finiteness rather than a weight -2 (Soule) argument for V itself"
            )
    elif assume_dual is not None:
        if assume_dual < 0:
            raise ValueError("assumed dual dimension must be >= 0")
        dual = DualTerm("assumed", assume_dual, f"assumed by caller; {rule.reason}")
        just = f"ASSUMED = {assume_dual} ({rule.reason}); V*(1) = {dual_eta}"
    else:
        dual = rule
        just = f"UNKNOWN ({rule.reason}); V*(1) = {dual_eta}"

    h0 = local_h0(GLOBAL, eta)
    h0d = local_h0(GLOBAL, dual_eta)
    ledger = [
        LedgerEntry("dim H^1_Lperp(Q, V*(1))", dual.value, just),
        LedgerEntry("dim H^0(Q, V)", h0, f"V = {eta} is {'trivial' if h0 else 'nontrivial'}"),
        LedgerEntry("-dim H^0(Q, V*(1))", -h0d, f"V*(1) = {dual_eta} is {'trivial' if h0d else 'nontrivial'}"),
    ]
    for v in problem.sigma:
        cond = problem.conditions[v]
        term = local_cond_dim(v, cond, eta) - local_h0(v, eta)
        ledger.append(
            LedgerEntry(f"v={v}: dim L_v - dim H^0(G_v, V)", term, _local_justification(v, cond, eta))
        )
    notes = ("places outside sigma: L_v unramified, so dim L_v - dim H^0(G_v, V) = 0",)

    dimension = None
    if dual.value is not None:
        dimension = sum(e.value for e in ledger)
        if dual.is_known and dimension < 0:
            raise AssertionError(f"negative Selmer dimension {dimension} for {eta}: {ledger}")
    return SelmerResult(dimension, tuple(ledger), dual, notes)
