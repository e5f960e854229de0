"""Truncated q-expansions, Eisenstein series, p-stabilization and Hecke operators."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .dirichlet import DirichletCharacter, char_eval, gen_bernoulli
from .errors import DegenerateInputError, ParityError, PrecisionError
from .numkernel import CyclotomicNumber, TruncatedSeries, as_cyclotomic, is_prime, lcm, primes_below


def _settle(c):
    """Rational scalars as ``Fraction``; genuinely cyclotomic ones untouched."""
    if isinstance(c, CyclotomicNumber):
        return c.coeffs[0] if c.is_rational() else c
    return Fraction(c)


def _zero(domain: str):
    return Fraction(0) if domain == "rational" else CyclotomicNumber.rational(0)


def _series(coeffs: list, domain: str) -> TruncatedSeries:
    return TruncatedSeries(tuple(coeffs), domain)


@dataclass(frozen=True)
class QExpansion:
    coeffs: TruncatedSeries
    weight: int
    chi: DirichletCharacter = field(default_factory=DirichletCharacter.trivial)
    psi: DirichletCharacter = field(default_factory=DirichletCharacter.trivial)
    level_hint: int = 1

    def __post_init__(self):
        if self.coeffs.prec < 2:
            raise ValueError("q-expansion precision must be >= 2")
        if self.level_hint < 1:
            raise ValueError("level_hint must be positive")
        if self.chi.conductor > 1 and self.coeffs[0]:
            raise ValueError("constant term must vanish when chi has conductor > 1")

    @property
    def prec(self) -> int:
        return self.coeffs.prec

    @property
    def domain(self) -> str:
        return self.coeffs.domain

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def nebentypus(self) -> DirichletCharacter:
        return self.chi * self.psi

    def with_coeffs(self, coeffs: list, domain: str | None = None, **meta) -> "QExpansion":
        return replace(self, coeffs=_series(coeffs, domain or self.domain), **meta)

    def lifted(self, c) -> "QExpansion":
        """Same series over the cyclotomic domain if ``c`` is not rational."""
        if self.domain == "rational" and isinstance(c, CyclotomicNumber) and not c.is_rational():
            return replace(self, coeffs=self.coeffs.to_cyclotomic())
        return self


# --------------------------------------------------------------------------
# construction


def _check_primitive(chi: DirichletCharacter, name: str):
    if not chi.is_primitive():
        raise ValueError(f"{name} = {chi} is not primitive (conductor {chi.conductor})")


def eisenstein_series(k: int, chi: DirichletCharacter, psi: DirichletCharacter, prec: int) -> QExpansion:
    """``E_{k,chi,psi} = c_0 + sum_m (sum_{n|m} psi(n) chi(m/n) n^(k-1)) q^m``."""
    if k < 1:
        raise ValueError("weight must be >= 1")
    if prec < 2:
        raise ValueError("prec must be >= 2")
    _check_primitive(chi, "chi")
    _check_primitive(psi, "psi")
    if k == 2 and chi.modulus == 1 and psi.modulus == 1:
        raise ValueError("E_{2,1,1} is not covered here; use e2_series")
    if chi.parity() * psi.parity() != (-1) ** k:
        raise ParityError(f"chi(-1)psi(-1) != (-1)^{k} for chi={chi}, psi={psi}")

    M = lcm(chi.order, psi.order)
    sc, sp = M // chi.order, M // psi.order
    terms: list[dict[int, int]] = [{} for _ in range(prec)]
    for n in range(1, prec):
        rp = psi.value_exponent(n)
        if rp is None:
            continue
        w = n ** (k - 1)
        for m in range(n, prec, n):
            rc = chi.value_exponent(m // n)
            if rc is None:
                continue
            e = (rp * sp + rc * sc) % M
            d = terms[m]
            d[e] = d.get(e, 0) + w

    if M <= 2:
        domain = "rational"
        coeffs = [Fraction(sum(c if e == 0 else -c for e, c in d.items())) for d in terms]
    else:
        domain = "cyclotomic"
        coeffs = [CyclotomicNumber.from_exponents(M, d) for d in terms]

    if chi.modulus > 1:
        coeffs[0] = _zero(domain)
    else:
        c0 = -gen_bernoulli(k, psi).value / (2 * k)
        coeffs[0] = c0.to_rational() if domain == "rational" else c0
    return QExpansion(_series(coeffs, domain), k, chi, psi, chi.modulus * psi.modulus)


def e2_series(prec: int) -> QExpansion:
    """``E_2 = -1/24 + sum sigma_1(m) q^m``."""
    if prec < 2:
        raise ValueError("e2_series needs prec >= 2")
    triv = DirichletCharacter.trivial()
    coeffs = [Fraction(0)] * prec
    for n in range(1, prec):
        for m in range(n, prec, n):
            coeffs[m] += n
    coeffs[0] = -gen_bernoulli(2, triv).value.to_rational() / 4
    return QExpansion(_series(coeffs, "rational"), 2, triv, triv, 1)


# --------------------------------------------------------------------------
# stabilization


def stabilize(f: QExpansion, t: int, c) -> QExpansion:
    """``f(q) - c f(q^t)``; level hint multiplied by ``t``."""
    if t < 2:
        raise ValueError("stabilization step must be >= 2")
    if t >= f.prec:
        raise PrecisionError(f"step {t} not below precision {f.prec}")
    c = _settle(c)
    f = f.lifted(c)
    a = f.coeffs.coeffs
    out = list(a)
    if c:
        for m in range(0, f.prec, t):
            out[m] = out[m] - c * a[m // t]
    return f.with_coeffs(out, level_hint=f.level_hint * t)


def refinement_constant(f: QExpansion, p: int, mode: str):
    """``psi(p) p^(k-1)`` for the ordinary refinement, ``chi(p)`` for the critical one."""
    if mode == "ord":
        return _settle(char_eval(f.psi, p) * p ** (f.weight - 1))
    if mode == "crit":
        return _settle(char_eval(f.chi, p))
    raise ValueError(f"unknown refinement mode {mode!r} (expected 'ord' or 'crit')")


def refine(f: QExpansion, p: int, mode: str) -> QExpansion:
    if not is_prime(p):
        raise ValueError(f"refinement prime {p} is not prime")
    return stabilize(f, p, refinement_constant(f, p, mode))


def e2_refined(prec: int, *steps: tuple[str, int]) -> QExpansion:
    """``E_2`` refined successively, e.g. ``e2_refined(600, ("ord", 7), ("crit", 5))``."""
    f = e2_series(prec)
    for mode, p in steps:
        f = refine(f, p, mode)
    return f


# --------------------------------------------------------------------------
# Hecke operators


@dataclass(frozen=True)
class HeckeDescriptor:
    """``T(l)``, ``U(m)`` or ``V(t)``.

    ``weight`` and ``nebentypus`` only matter for ``T``; when left ``None``
    they are taken from the series the operator acts on.  ``level``, if set,
    must be coprime to the parameter of a ``T`` operator.
    """

    kind: str
    parameter: int
    weight: int | None = None
    nebentypus: DirichletCharacter | None = None
    level: int | None = None

    def __post_init__(self):
        if self.kind not in ("T", "U", "V"):
            raise ValueError(f"unknown Hecke operator kind {self.kind!r}")
        if self.kind == "T":
            if not is_prime(self.parameter):
                raise ValueError(f"T({self.parameter}): parameter must be prime")
            if self.level is not None and gcd(self.parameter, self.level) != 1:
                raise ValueError(f"T({self.parameter}) needs a parameter coprime to level {self.level}")
        elif self.parameter < 2:
            raise ValueError(f"{self.kind}({self.parameter}): parameter must be >= 2")

    @classmethod
    def parse(cls, text: str, **kw) -> "HeckeDescriptor":
        """``"T:7"``, ``"U:5"``, ``"V:3"``."""
        kind, sep, param = text.strip().partition(":")
        if not sep:
            raise ValueError(f"operator {text!r} must look like KIND:N")
        try:
            n = int(param)
        except ValueError:
            raise ValueError(f"operator {text!r} has a non-integer parameter") from None
        return cls(kind.strip().upper(), n, **kw)

    def label(self) -> str:
        return f"{self.kind}:{self.parameter}"

    def __str__(self):
        return f"{self.kind}({self.parameter})"


def hecke_apply(op: HeckeDescriptor, f: QExpansion) -> QExpansion:
    a = f.coeffs.coeffs
    m = op.parameter
    if op.kind == "V":
        zero = _zero(f.domain)
        out = [a[n // m] if n % m == 0 else zero for n in range(f.prec)]
        return f.with_coeffs(out, level_hint=f.level_hint * m)

    new_prec = f.prec // m
    if new_prec < 2:
        raise PrecisionError(f"{op} on precision {f.prec} leaves {new_prec} coefficients (need >= 2)")
    if op.kind == "U":
        return f.with_coeffs([a[m * n] for n in range(new_prec)])

    k = op.weight if op.weight is not None else f.weight
    neb = op.nebentypus if op.nebentypus is not None else f.nebentypus()
    eps = _settle(char_eval(neb, m) * m ** (k - 1))
    f = f.lifted(eps)
    a = f.coeffs.coeffs
    out = []
    for n in range(new_prec):
        b = a[m * n]
        if n % m == 0 and eps:
            b = b + eps * a[n // m]
        out.append(b)
    return f.with_coeffs(out)


def _div(x, y):
    if isinstance(x, CyclotomicNumber) or isinstance(y, CyclotomicNumber):
        return _settle(as_cyclotomic(x) / y)
    return Fraction(x) / y


def eigencheck(op: HeckeDescriptor, f: QExpansion):
    """Eigenvalue of ``op`` on ``f`` over the overlapping precision, else ``None``."""
    g = hecke_apply(op, f)
    n = min(f.prec, g.prec)
    pivot = next((i for i in range(n) if f[i]), None)
    if pivot is None:
        raise DegenerateInputError(f"series vanishes on the first {n} coefficients")
    lam = _div(g[pivot], f[pivot])
    for i in range(n):
        if g[i] != lam * f[i]:
            return None
    return lam


@dataclass(frozen=True)
class EigenSystem:
    entries: tuple  # of (HeckeDescriptor, expected eigenvalue)
    prime_bound: int | None = None

    def __post_init__(self):
        ops = [d for d, _ in self.entries]
        if len(set(ops)) != len(ops):
            raise ValueError("eigen-system descriptors must be pairwise distinct")


def e2_crit_ord_system(p: int, ell: int, bound: int) -> EigenSystem:
    """``{T(l) = 1 + l for l != ell, p; U(ell) = 1; U(p) = p}`` with ``l <= bound``."""
    entries = [
        (HeckeDescriptor("T", l), Fraction(1 + l))
        for l in primes_below(bound + 1)
        if l not in (p, ell)
    ]
    entries.append((HeckeDescriptor("U", ell), Fraction(1)))
    entries.append((HeckeDescriptor("U", p), Fraction(p)))
    return EigenSystem(tuple(entries), bound)


@dataclass(frozen=True)
class EigenCheckResult:
    descriptor: HeckeDescriptor
    expected: object
    found: object  # None when f is not an eigenvector
    passed: bool


@dataclass(frozen=True)
class EigenReport:
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def eigensystem_verify(f: QExpansion, system: EigenSystem) -> EigenReport:
    results = []
    for op, expected in system.entries:
        try:
            found = eigencheck(op, f)
        except PrecisionError as exc:
            raise PrecisionError(f"descriptor {op.label()}: {exc}") from exc
        passed = found is not None and found == _settle(expected)
        results.append(EigenCheckResult(op, _settle(expected), found, passed))
    return EigenReport(tuple(results))
