"""Exact arithmetic: rationals, cyclotomic numbers, truncated power series.

Rationals are ``fractions.Fraction``.  A :class:`CyclotomicNumber` of order
``m`` is stored in the power basis ``1, z, ..., z^(phi(m)-1)`` of
``Q(z)``, ``z`` a primitive m-th root of unity, reduced modulo the m-th
cyclotomic polynomial.  Numbers of different orders are combined in the
field of order ``lcm``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainMismatchError

Rational = Fraction
Scalar = Union[int, Fraction, "CyclotomicNumber"]


# --------------------------------------------------------------------------
# rationals


def rational_to_str(x) -> str:
    """Lowest-terms ``"num/den"``; integers (and zero) print without a denominator."""
    return str(Fraction(x))


def rational_from_str(s: str) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"rational must be a string, got {type(s).__name__}")
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"malformed rational {s!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(n, d)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None


# --------------------------------------------------------------------------
# elementary number theory helpers


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of ``n >= 1`` by trial division, ascending primes."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def primes_below(n: int) -> list[int]:
    if n <= 2:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i in range(n) if sieve[i]]


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def p_valuation(x, p: int) -> float | int:
    """p-adic valuation of a rational; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


# --------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), ``den`` monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial.

    Obtained from ``x^m - 1`` by exact division by every ``Phi_d``, ``d | m``,
    ``d < m``.
    """
    if m < 1:
        raise ValueError("cyclotomic order must be >= 1")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row ``i`` holds the reduced power-basis vector of ``z^i`` for ``0 <= i < m``."""
    phi_poly = cyclotomic_poly(m)
    deg = len(phi_poly) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z: shift up, then fold z^deg = -(lower terms)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi_poly[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan_row(m: int) -> tuple[Fraction, ...]:
    """Normalised traces Tr(z^i)/phi(m) for the power basis of order ``m``."""
    ph = euler_phi(m)
    out = []
    for i in range(ph):
        g = gcd(i, m)
        out.append(Fraction(mobius(m // g) * ph // euler_phi(m // g), ph))
    return tuple(out)


# --------------------------------------------------------------------------
# cyclotomic numbers


class CyclotomicNumber:
    """Immutable element of ``Q(zeta_m)`` in the reduced power basis."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Sequence):
        if order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"order {order} needs {euler_phi(order)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def rational(cls, r, order: int = 1) -> "CyclotomicNumber":
        ph = euler_phi(order)
        return cls(order, (Fraction(r),) + (Fraction(0),) * (ph - 1))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CyclotomicNumber":
        return cls.from_exponents(order, {power: 1})

    @classmethod
    def from_exponents(cls, order: int, terms: Mapping[int, object]) -> "CyclotomicNumber":
        """``sum(c * z^e)`` with exponents taken mod ``order``."""
        table = _power_table(order)
        acc = [Fraction(0)] * euler_phi(order)
        for e, c in terms.items():
            if not c:
                continue
            row = table[e % order]
            for j, r in enumerate(row):
                if r:
                    acc[j] += r * c
        return cls(order, acc)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, order: int) -> "CyclotomicNumber":
        """Image in ``Q(zeta_order)``; ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        return CyclotomicNumber.from_exponents(
            order, {i * step: c for i, c in enumerate(self.coeffs) if c}
        )

    def normalized_trace(self) -> Fraction:
        return sum((c * t for c, t in zip(self.coeffs, _ramanujan_row(self.order))), Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"] | None:
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self, other
            m = lcm(self.order, other.order)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, _RationalABC)):
            return self, CyclotomicNumber.rational(other, self.order)
        return None

    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return CyclotomicNumber(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)):
            return CyclotomicNumber(self.order, [x * other for x in self.coeffs])
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        if b.is_rational():
            return a * b.coeffs[0]
        if a.is_rational():
            return b * a.coeffs[0]
        m = a.order
        raw: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    k = (i + j) % m
                    raw[k] = raw.get(k, 0) + x * y
        return CyclotomicNumber.from_exponents(m, raw)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CyclotomicNumber.rational(1 / self.coeffs[0], self.order)
        # solve (multiplication-by-self matrix) y = e_0
        n = len(self.coeffs)
        cols = [(self * CyclotomicNumber.zeta(self.order, i)).coeffs for i in range(n)]
        mat = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        y = _solve(mat)
        return CyclotomicNumber(self.order, y)

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            return self * (1 / Fraction(other))
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalised trace is invariant under embedding, so equal values agree
        if self._hash is None:
            h = hash(self.coeffs[0]) if self.is_rational() else hash(("cyc", self.normalized_trace()))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (f"z{self.order}" if i == 1 else f"z{self.order}^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [rational_to_str(c) for c in self.coeffs]}


def _solve(aug: list[list[Fraction]]) -> list[Fraction]:
    """Gauss-Jordan on an augmented square system with a unique solution."""
    n = len(aug)
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def cyc_normalize(order: int, raw: Iterable) -> CyclotomicNumber:
    """Canonical representative of ``sum(raw[i] * z^i)`` modulo ``Phi_order``."""
    return CyclotomicNumber.from_exponents(order, dict(enumerate(Fraction(c) for c in raw)))


def as_cyclotomic(x, order: int = 1) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    return CyclotomicNumber.rational(x, order)


# --------------------------------------------------------------------------
# truncated power series


def _domain_of(c) -> str:
    if isinstance(c, CyclotomicNumber):
        return "cyclotomic"
    if isinstance(c, (int, _RationalABC)):
        return "rational"
    raise TypeError(f"unsupported series coefficient {c!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum(coeffs[n] x^n)`` known exactly for ``n < prec``.

    All coefficients share one domain: ``"rational"`` (``Fraction``) or
    ``"cyclotomic"`` (:class:`CyclotomicNumber`).
    """

    coeffs: tuple
    domain: str

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("series precision must be >= 1")

    @classmethod
    def of(cls, coeffs: Iterable, domain: str | None = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        if domain is None:
            domain = "cyclotomic" if any(isinstance(c, CyclotomicNumber) for c in coeffs) else "rational"
        if domain == "rational":
            for c in coeffs:
                if _domain_of(c) != "rational":
                    raise DomainMismatchError("cyclotomic coefficient in a rational series")
            coeffs = [Fraction(c) for c in coeffs]
        elif domain == "cyclotomic":
            coeffs = [as_cyclotomic(c) for c in coeffs]
        else:
            raise ValueError(f"unknown coefficient domain {domain!r}")
        return cls(tuple(coeffs), domain)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient {n} outside precision {self.prec}")
        return self.coeffs[n]

    def truncate(self, prec: int) -> "TruncatedSeries":
        if not 1 <= prec <= self.prec:
            raise ValueError(f"cannot truncate precision {self.prec} to {prec}")
        return TruncatedSeries(self.coeffs[:prec], self.domain)

    def to_cyclotomic(self) -> "TruncatedSeries":
        if self.domain == "cyclotomic":
            return self
        return TruncatedSeries(tuple(CyclotomicNumber.rational(c) for c in self.coeffs), "cyclotomic")

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.domain != self.domain:
            raise DomainMismatchError(f"cannot combine {self.domain} and {other.domain} series")

    def __add__(self, other):
        self._check(other)
        n = min(self.prec, other.prec)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), self.domain)

    def __sub__(self, other):
        self._check(other)
        n = min(self.prec, other.prec)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), self.domain)

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coeffs), self.domain)

    def scale(self, c) -> "TruncatedSeries":
        if isinstance(c, CyclotomicNumber) and self.domain == "rational":
            raise DomainMismatchError("cyclotomic scalar on a rational series")
        return TruncatedSeries(tuple(c * a for a in self.coeffs), self.domain)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    def inverse(self) -> "TruncatedSeries":
        return series_inverse(self)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated to ``min(f.prec, g.prec)``."""
    f._check(g)
    n = min(f.prec, g.prec)
    a, b = f.coeffs, g.coeffs
    zero = Fraction(0) if f.domain == "rational" else CyclotomicNumber.rational(0)
    out = []
    for k in range(n):
        s = zero
        for i in range(k + 1):
            x = a[i]
            if x:
                y = b[k - i]
                if y:
                    s = s + x * y
        out.append(s)
    return TruncatedSeries(tuple(out), f.domain)


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be invertible."""
    a = f.coeffs
    if not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / a[0]
    out = [inv0]
    for k in range(1, f.prec):
        s = a[k] * out[0]
        for i in range(1, k):
            s = s + a[k - i] * out[i]
        out.append(-(s * inv0))
    return TruncatedSeries(tuple(out), f.domain)


def exp_series(c, prec: int) -> TruncatedSeries:
    """``exp(c x)`` to precision ``prec``: coefficients ``c^n / n!``."""
    if not isinstance(prec, int) or prec < 1:
        raise ValueError("exp_series needs prec >= 1")
    c = Fraction(c)
    out = [Fraction(1)]
    for n in range(1, prec):
        out.append(out[-1] * c / n)
    return TruncatedSeries(tuple(out), "rational")
