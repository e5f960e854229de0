"""Dirichlet characters with exact cyclotomic values and generalized Bernoulli numbers.

A character modulo ``N`` is fixed by one exponent per canonical generator of
``(Z/NZ)^*``: ``chi(g_i) = zeta_{o_i}^{e_i}`` where ``o_i`` is the order of
``g_i``.  Canonical generators are the least primitive root for odd prime
powers, ``-1`` (and ``5``) for powers of two, each lifted by CRT to be
``1`` modulo the other prime-power factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial, gcd

from .numkernel import (
    CyclotomicNumber,
    TruncatedSeries,
    exp_series,
    euler_phi,
    factorize,
    lcm,
    series_inverse,
    series_mul,
)


def _least_primitive_root(q: int, p: int) -> int:
    """Least positive generator of ``(Z/qZ)^*`` for an odd prime power ``q`` of ``p``."""
    ph = euler_phi(q)
    qs = [r for r, _ in factorize(ph)]
    for g in range(2, q):
        if g % p and all(pow(g, ph // r, q) != 1 for r in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {q}")


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    dlog: dict  # unit residue -> exponent vector

    @property
    def exponent(self) -> int:
        out = 1
        for o in self.orders:
            out = lcm(out, o)
        return out


@lru_cache(maxsize=None)
def unit_group(N: int) -> UnitGroup:
    if N < 1:
        raise ValueError("modulus must be >= 1")
    local: list[tuple[int, int, int]] = []  # (generator mod q, order, q)
    for p, e in factorize(N) if N > 1 else []:
        q = p ** e
        if p == 2:
            if e == 2:
                local.append((q - 1, 2, q))
            elif e >= 3:
                local.append((q - 1, 2, q))
                local.append((5, 2 ** (e - 2), q))
        else:
            local.append((_least_primitive_root(q, p), euler_phi(q), q))
    gens, orders = [], []
    for g, o, q in local:
        rest = N // q
        # x = g mod q, x = 1 mod rest
        x = g if rest == 1 else (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % N
        gens.append(x % N if N > 1 else 0)
        orders.append(o)
    dlog = {}
    for ks in itertools.product(*(range(o) for o in orders)):
        v = 1 % N
        for g, k in zip(gens, ks):
            v = v * pow(g, k, N) % N
        dlog[v] = ks
    if len(dlog) != euler_phi(N):
        raise ArithmeticError(f"generator set for modulus {N} is not a basis")
    return UnitGroup(N, tuple(gens), tuple(orders), dlog)


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        grp = unit_group(self.modulus)
        if len(self.exponents) != len(grp.orders):
            raise ValueError(
                f"modulus {self.modulus} needs {len(grp.orders)} exponents, got {len(self.exponents)}"
            )
        object.__setattr__(
            self, "exponents", tuple(int(e) % o for e, o in zip(self.exponents, grp.orders))
        )

    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletCharacter":
        return cls(modulus, (0,) * len(unit_group(modulus).orders))

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @cached_property
    def order(self) -> int:
        out = 1
        for e, o in zip(self.exponents, self.group.orders):
            out = lcm(out, o // gcd(e, o))
        return out

    def angle(self, n: int) -> Fraction | None:
        """``chi(n) = exp(2 pi i * angle)``; ``None`` when ``gcd(n, N) > 1``."""
        ks = self.group.dlog.get(n % self.modulus)
        if ks is None:
            return None
        t = sum((Fraction(e * k, o) for e, k, o in zip(self.exponents, ks, self.group.orders)), Fraction(0))
        return t - (t.numerator // t.denominator)

    def value_exponent(self, n: int) -> int | None:
        """``chi(n) = zeta_order^r``; returns ``r`` or ``None`` off the units."""
        t = self.angle(n)
        return None if t is None else int(t * self.order)

    def __call__(self, n: int) -> CyclotomicNumber:
        return char_eval(self, n)

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def parity(self) -> int:
        """``chi(-1)`` as ``+1`` or ``-1``."""
        return 1 if self.value_exponent(-1) == 0 else -1

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            m = lcm(self.modulus, other.modulus)
            return induce(self, m) * induce(other, m)
        return DirichletCharacter(self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def inverse(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(k * e for e in self.exponents))

    @cached_property
    def _primitive(self) -> tuple[int, "DirichletCharacter"]:
        return _compute_primitive(self)

    @property
    def conductor(self) -> int:
        return self._primitive[0]

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "exponents": list(self.exponents), "order": self.order}

    def __str__(self):
        return f"chi_{self.modulus}{list(self.exponents)}"


def characters_mod(N: int) -> list[DirichletCharacter]:
    """All ``phi(N)`` characters mod ``N``, lexicographic in exponent vectors."""
    if not isinstance(N, int) or N < 1:
        raise ValueError("characters_mod needs N >= 1")
    orders = unit_group(N).orders
    return [DirichletCharacter(N, ks) for ks in itertools.product(*(range(o) for o in orders))]


def char_eval(chi: DirichletCharacter, n: int) -> CyclotomicNumber:
    r = chi.value_exponent(n)
    if r is None:
        return CyclotomicNumber.rational(0, chi.order)
    return CyclotomicNumber.zeta(chi.order, r)


def induce(chi: DirichletCharacter, M: int) -> DirichletCharacter:
    """The character mod ``M`` (a multiple of the modulus) induced by ``chi``."""
    if M % chi.modulus:
        raise ValueError(f"{M} is not a multiple of {chi.modulus}")
    grp = unit_group(M)
    return DirichletCharacter(M, tuple(int(chi.angle(g) * o) for g, o in zip(grp.generators, grp.orders)))


def _compute_primitive(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    N = chi.modulus
    units = list(chi.group.dlog)
    for d in sorted(d for d in range(1, N + 1) if N % d == 0):
        if all(chi.angle(n) == 0 for n in units if n % d == 1 % d):
            break
    grp = unit_group(d)
    exps = []
    for g, o in zip(grp.generators, grp.orders):
        n = next(n for n in range(g, g + N * d + 1, d) if gcd(n, N) == 1)
        exps.append(int(chi.angle(n) * o))
    return d, DirichletCharacter(d, tuple(exps))


def char_primitive(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    """``(conductor, primitive character inducing chi)``."""
    return chi._primitive


def primitive_characters(conductor: int) -> list[DirichletCharacter]:
    return [c for c in characters_mod(conductor) if c.is_primitive()]


# --------------------------------------------------------------------------
# generalized Bernoulli numbers


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """``B_0 .. B_n`` with ``B_1 = -1/2``."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


def bernoulli_poly(k: int, x) -> Fraction:
    B = bernoulli_numbers(k)
    x = Fraction(x)
    return sum((comb(k, j) * B[j] * x ** (k - j) for j in range(k + 1)), Fraction(0))


@dataclass(frozen=True)
class BernoulliValue:
    k: int
    character: DirichletCharacter
    value: CyclotomicNumber

    def is_rational(self) -> bool:
        return self.value.is_rational()

    def __str__(self):
        return str(self.value)


def _settle(v: CyclotomicNumber) -> CyclotomicNumber:
    return CyclotomicNumber.rational(v.coeffs[0]) if v.is_rational() else v


def _check_primitive(psi: DirichletCharacter):
    if not psi.is_primitive():
        raise ValueError(f"{psi} is not primitive (conductor {psi.conductor})")


def gen_bernoulli(k: int, psi: DirichletCharacter) -> BernoulliValue:
    """``B_{k,psi} = R^(k-1) sum_{a=1}^{R} psi(a) B_k(a/R)`` for primitive ``psi`` mod ``R``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_primitive(psi)
    R = psi.modulus
    terms: dict[int, Fraction] = {}
    for a in range(1, R + 1):
        r = psi.value_exponent(a)
        if r is not None:
            terms[r] = terms.get(r, Fraction(0)) + bernoulli_poly(k, Fraction(a, R))
    value = CyclotomicNumber.from_exponents(psi.order, terms) * Fraction(R) ** (k - 1)
    return BernoulliValue(k, psi, _settle(value))


def gen_bernoulli_oracle(k: int, psi: DirichletCharacter) -> BernoulliValue:
    """Read ``B_{k,psi}`` off the truncated generating function.

    ``sum_a psi(a) e^{ax} * (x / (e^{Rx} - 1))`` is built to precision
    ``k + 1``; the answer is ``k!`` times the coefficient of ``x^k``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_primitive(psi)
    R = psi.modulus
    prec = k + 1
    num = TruncatedSeries.of([0] * prec, "cyclotomic")
    for a in range(1, R + 1):
        num = num + exp_series(a, prec).to_cyclotomic().scale(char_eval(psi, a))
    # (e^{Rx} - 1) / x = sum_n R^(n+1) x^n / (n+1)!
    den = TruncatedSeries.of(exp_series(R, prec + 1).coeffs[1:])
    gen = series_mul(num, series_inverse(den).to_cyclotomic())
    return BernoulliValue(k, psi, _settle(gen[k] * factorial(k)))
