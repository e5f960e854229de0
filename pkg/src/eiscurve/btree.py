"""Bruhat-Tits tree of GL_2(Q_p) at desk scale.

Vertices are homothety classes of Z_(p)-lattices in Q^2, each represented by
the columns of ``[[p^a, b], [0, 1]]`` with ``a`` an integer and ``b`` a
``p``-power-denominator rational in ``[0, p^a)``.  All arithmetic is exact
over ``Q``; integrality is a p-valuation test.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NoAnchorError, StabilityError
from .numkernel import is_prime, p_valuation

Matrix = tuple  # ((m11, m12), (m21, m22)) of Fraction


def mat(rows: Sequence[Sequence]) -> Matrix:
    (a, b), (c, d) = rows
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def det(x: Matrix) -> Fraction:
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def mat_inv(x: Matrix) -> Matrix:
    d = det(x)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    return ((x[1][1] / d, -x[0][1] / d), (-x[1][0] / d, x[0][0] / d))


def trace(x: Matrix) -> Fraction:
    return x[0][0] + x[1][1]


IDENTITY = mat([[1, 0], [0, 1]])


def is_integral(x: Matrix, p: int) -> bool:
    return all(p_valuation(e, p) >= 0 for row in x for e in row)


def _unit_part(x: Fraction, p: int) -> tuple[int, Fraction]:
    v = p_valuation(x, p)
    return v, x / Fraction(p) ** v


def _reduce_mod_power(b: Fraction, a: int, p: int) -> Fraction:
    """Representative of ``b mod p^a Z_(p)`` in ``Z[1/p] ∩ [0, p^a)``."""
    s = max(0, -p_valuation(b, p)) if b else 0
    if a + s <= 0:
        return Fraction(0)
    # b * p^s is p-integral: n / d' with p not dividing d'
    y = b * Fraction(p) ** s
    mod = p ** (a + s)
    n = y.numerator * pow(y.denominator, -1, mod) % mod
    return Fraction(n, p ** s)


@dataclass(frozen=True, order=True)
class LatticeVertex:
    a: int
    b: Fraction
    p: int

    @property
    def basis(self) -> Matrix:
        return mat([[Fraction(self.p) ** self.a, self.b], [0, 1]])

    def key(self) -> tuple:
        return (self.a, self.b)

    def label(self) -> str:
        return f"{self.a},{self.b}"

    def __str__(self):
        return f"[[{self.p}^{self.a}, {self.b}], [0, 1]]"


def vertex_normalize(basis: Sequence[Sequence], p: int) -> LatticeVertex:
    """Normal form of the homothety class of the lattice spanned by the columns of ``basis``."""
    m = mat(basis)
    if det(m) == 0:
        raise ValueError("lattice basis is not invertible")
    (m11, m12), (m21, m22) = m
    c1, c2 = [m11, m21], [m12, m22]
    # second column: minimal valuation in the bottom row
    if c2[1] == 0 or (c1[1] != 0 and p_valuation(c1[1], p) < p_valuation(c2[1], p)):
        c1, c2 = c2, c1
    t = c1[1] / c2[1]  # p-integral
    c1 = [c1[0] - t * c2[0], Fraction(0)]
    alpha, u1 = _unit_part(c1[0], p)
    gamma, u2 = _unit_part(c2[1], p)
    top = c2[0] / u2
    scale = Fraction(p) ** (-gamma)
    a = alpha - gamma
    return LatticeVertex(a, _reduce_mod_power(top * scale, a, p), p)


def standard_vertex(p: int) -> LatticeVertex:
    return LatticeVertex(0, Fraction(0), p)


def parse_vertex(text: str, p: int) -> LatticeVertex:
    """``"a,b"`` -> vertex ``[[p^a, b], [0, 1]]`` (normalised)."""
    try:
        a_s, b_s = text.split(",")
        a, b = int(a_s), Fraction(b_s.strip())
    except ValueError:
        raise ValueError(f"vertex {text!r} must look like 'a,b'") from None
    return vertex_normalize([[Fraction(p) ** a, b], [0, 1]], p)


def _index_p_sublattices(p: int) -> list[Matrix]:
    return [mat([[p, t], [0, 1]]) for t in range(p)] + [mat([[1, 0], [0, p]])]


def neighbors(v: LatticeVertex) -> list[LatticeVertex]:
    """The ``p + 1`` classes ``[L']`` with ``pL ⊂ L' ⊂ L``."""
    B = v.basis
    return [vertex_normalize(mat_mul(B, n), v.p) for n in _index_p_sublattices(v.p)]


def ball(p: int, radius: int) -> dict[LatticeVertex, int]:
    """Every vertex within ``radius`` of the standard vertex, with its distance."""
    dist = {standard_vertex(p): 0}
    frontier = [standard_vertex(p)]
    for r in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in neighbors(v):
                if w not in dist:
                    dist[w] = r
                    nxt.append(w)
        frontier = nxt
    return dist


# --------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class MatrixRep:
    p: int
    generators: tuple
    labels: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        gens = tuple(mat(g) for g in self.generators)
        if not gens:
            raise ValueError("a representation needs at least one generator")
        if any(det(g) == 0 for g in gens):
            raise ValueError("generators must be invertible")
        labels = tuple(self.labels) if self.labels else tuple(f"g{i + 1}" for i in range(len(gens)))
        if len(labels) != len(gens) or len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct and match the generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, p: int, generators, labels=()) -> "MatrixRep":
        return cls(p, tuple(generators), tuple(labels))


def conjugated(v: LatticeVertex, rep: MatrixRep) -> list[Matrix]:
    B = v.basis
    Bi = mat_inv(B)
    return [mat_mul(Bi, mat_mul(g, B)) for g in rep.generators]


def is_stable(v: LatticeVertex, rep: MatrixRep) -> bool:
    return all(is_integral(m, rep.p) for m in conjugated(v, rep))


class ReductionClass(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE_INDECOMPOSABLE = "reducible-indecomposable"
    SPLIT = "split"


def _residue(x: Fraction, p: int) -> int:
    return x.numerator * pow(x.denominator, -1, p) % p


def projective_line(p: int) -> list[tuple[int, int]]:
    return [(1, t) for t in range(p)] + [(0, 1)]


def stable_lines(mats_mod_p: list, p: int) -> list[tuple[int, int]]:
    """Lines of ``F_p^2`` preserved by every matrix (census over ``P^1(F_p)``)."""
    out = []
    for x, y in projective_line(p):
        ok = True
        for (a, b), (c, d) in mats_mod_p:
            u, w = (a * x + b * y) % p, (c * x + d * y) % p
            if (u * y - w * x) % p:
                ok = False
                break
        if ok:
            out.append((x, y))
    return out


def reduction_at(v: LatticeVertex, rep: MatrixRep) -> tuple[list, ReductionClass]:
    """Generators in the basis of ``v`` reduced mod ``p``, with their classification."""
    conj = conjugated(v, rep)
    p = rep.p
    if not all(is_integral(m, p) for m in conj):
        raise StabilityError(f"vertex {v.label()} is not stable")
    red = [tuple(tuple(_residue(e, p) for e in row) for row in m) for m in conj]
    lines = stable_lines(red, p)
    if not lines:
        cls = ReductionClass.IRREDUCIBLE
    elif len(lines) == 1:
        cls = ReductionClass.REDUCIBLE_INDECOMPOSABLE
    else:
        cls = ReductionClass.SPLIT
    return red, cls


def residual_characters(v: LatticeVertex, rep: MatrixRep) -> tuple[tuple, tuple] | None:
    """The two characters of the semisimplified reduction at ``v`` (values on generators).

    ``None`` when the reduction has no stable line.  Characters are
    returned as an ordered pair ``(sub, quotient)`` for a stable line.
    """
    red, cls = reduction_at(v, rep)
    if cls is ReductionClass.IRREDUCIBLE:
        return None
    p = rep.p
    x, y = stable_lines(red, p)[0]
    sub, quo = [], []
    for (a, b), (c, d) in red:
        # eigenvalue on the line (x, y); quotient character from det
        lam = (a * x + b * y) * pow(x, -1, p) % p if x else (b * x + d * y) % p
        dt = (a * d - b * c) % p
        sub.append(lam)
        quo.append(dt * pow(lam, -1, p) % p)
    return tuple(sub), tuple(quo)


# --------------------------------------------------------------------------
# stable set


class Geometry(enum.Enum):
    EMPTY = "empty"
    SEGMENT = "segment"
    NOT_A_SEGMENT = "not-a-segment"


@dataclass(frozen=True)
class StableSet:
    vertices: tuple  # sorted by (radius, normal form)
    radii: tuple
    geometry: Geometry
    endpoints: tuple
    length: int | None
    unbounded: bool

    @property
    def edges(self) -> list[tuple[LatticeVertex, LatticeVertex]]:
        vs = set(self.vertices)
        return sorted({tuple(sorted((v, w))) for v in self.vertices for w in neighbors(v) if w in vs})

    def degree(self, v: LatticeVertex) -> int:
        vs = set(self.vertices)
        return sum(w in vs for w in neighbors(v))


def _order_key(v: LatticeVertex, r: int):
    return (r, v.a, v.b)


def stable_set(rep: MatrixRep, radius_cap: int) -> StableSet:
    """Breadth-first search for the stable vertices around the standard vertex.

    Only neighbours of stable vertices are examined; the fixed set of a
    group is convex, so this finds every stable vertex within ``radius_cap``.
    """
    if radius_cap < 1:
        raise ValueError("radius_cap must be >= 1")
    anchor = standard_vertex(rep.p)
    if not is_stable(anchor, rep):
        raise NoAnchorError("standard lattice is not stable; conjugate the generators first")
    dist = {anchor: 0}
    frontier = [anchor]
    seen = {anchor}
    for r in range(1, radius_cap + 1):
        nxt = []
        for v in frontier:
            for w in neighbors(v):
                if w in seen:
                    continue
                seen.add(w)
                if is_stable(w, rep):
                    dist[w] = r
                    nxt.append(w)
        frontier = nxt
        if not frontier:
            break
    unbounded = any(r == radius_cap for r in dist.values())
    order = sorted(dist, key=lambda v: _order_key(v, dist[v]))
    vs = set(order)
    deg = {v: sum(w in vs for w in neighbors(v)) for v in order}
    if not order:
        geometry, ends, length = Geometry.EMPTY, (), None
    elif max(deg.values()) <= 2:
        # a connected subtree with degrees <= 2 is a path
        geometry = Geometry.SEGMENT
        length = len(order) - 1
        ends = tuple(sorted((v for v in order if deg[v] <= 1), key=lambda v: (v.a, v.b)))
        if len(ends) == 1:
            ends = ends * 2
    else:
        geometry, ends, length = Geometry.NOT_A_SEGMENT, (), None
    return StableSet(tuple(order), tuple(dist[v] for v in order), geometry, ends, length, unbounded)


def stable_set_oracle(rep: MatrixRep, radius: int) -> set[LatticeVertex]:
    """Exhaustive check of every vertex within ``radius``."""
    return {v for v in ball(rep.p, radius) if is_stable(v, rep)}


def segment_consistency(ss: StableSet, rep: MatrixRep) -> list[str]:
    """Violations of the neighbour-count / reduction-type correspondence.

    In a bounded stable set: no neighbour <-> irreducible, one neighbour <->
    reducible indecomposable, two neighbours <-> split with distinct characters.
    """
    problems = []
    for v in ss.vertices:
        _, cls = reduction_at(v, rep)
        d = ss.degree(v)
        want = {0: ReductionClass.IRREDUCIBLE, 1: ReductionClass.REDUCIBLE_INDECOMPOSABLE}.get(d, ReductionClass.SPLIT)
        if cls is not want:
            problems.append(f"{v.label()}: {d} neighbours but reduction {cls.value}")
        elif d == 2 and len(set(residual_characters(v, rep))) < 2:
            problems.append(f"{v.label()}: interior vertex with equal residual characters")
    return problems


# --------------------------------------------------------------------------
# trace congruences


def _parse_char_values(psi: Mapping[str, int], rep: MatrixRep, n: int) -> list[int]:
    mod = rep.p ** n
    out = []
    for lab in rep.labels:
        if lab not in psi:
            raise ValueError(f"character value missing for generator {lab!r}")
        val = psi[lab]
        if isinstance(val, bool) or not isinstance(val, int) or val % rep.p == 0:
            raise ValueError(f"character value {val!r} at {lab!r} is not an integer prime to p")
        out.append(val % mod)
    extra = set(psi) - set(rep.labels)
    if extra:
        raise ValueError(f"character values given for unknown generators {sorted(extra)}")
    return out


def words(k: int, length: int):
    """All words of length ``1..length`` in ``k`` generators and their inverses."""
    letters = [(i, s) for i in range(k) for s in (1, -1)]
    for L in range(1, length + 1):
        yield from itertools.product(letters, repeat=L)


def reducibility_index_check(
    rep: MatrixRep, psi1: Mapping[str, int], psi2: Mapping[str, int], n: int, word_cap: int
) -> bool:
    """``tr rho(w) = psi1(w) + psi2(w) mod p^n`` for every word of length ``<= word_cap``.

    A certificate over the sampled words only.
    """
    if n < 1 or word_cap < 1:
        raise ValueError("n and word_cap must be >= 1")
    mod = rep.p ** n
    v1 = _parse_char_values(psi1, rep, n)
    v2 = _parse_char_values(psi2, rep, n)
    mats = [(g, mat_inv(g)) for g in rep.generators]
    inv1 = [pow(x, -1, mod) for x in v1]
    inv2 = [pow(x, -1, mod) for x in v2]
    # depth-first over words, reusing prefix products
    stack = [(IDENTITY, 1, 1, 0)]
    while stack:
        m, c1, c2, depth = stack.pop()
        if depth:
            diff = trace(m) - (c1 + c2)
            if diff and p_valuation(diff, rep.p) < n:
                return False
        if depth == word_cap:
            continue
        for i, (g, gi) in enumerate(mats):
            stack.append((mat_mul(m, g), c1 * v1[i] % mod, c2 * v2[i] % mod, depth + 1))
            stack.append((mat_mul(m, gi), c1 * inv1[i] % mod, c2 * inv2[i] % mod, depth + 1))
    return True


def reducibility_index(
    rep: MatrixRep, candidates: Sequence[tuple[Mapping, Mapping]], word_cap: int, n_max: int
) -> int:
    """Largest ``n <= n_max`` passing :func:`reducibility_index_check` for some candidate pair."""
    best = 0
    for n in range(1, n_max + 1):
        if any(reducibility_index_check(rep, a, b, n, word_cap) for a, b in candidates):
            best = n
        else:
            break
    return best
