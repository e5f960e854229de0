"""Independent reference computations used to cross-check the package.

Nothing here calls into the code under test except for plain data types.
"""

from __future__ import annotations

import cmath
import itertools
from fractions import Fraction
from math import gcd


def sigma(k: int, m: int) -> int:
    return sum(d ** k for d in range(1, m + 1) if m % d == 0)


def cyc_to_complex(c) -> complex:
    """Evaluate a power-basis cyclotomic number at exp(2 pi i / order)."""
    z = cmath.exp(2j * cmath.pi / c.order)
    return sum(complex(float(a)) * z ** i for i, a in enumerate(c.coeffs))


def char_table(chi) -> dict[int, complex]:
    """Complex values of a character on units, from its angle map."""
    return {
        n: cmath.exp(2j * cmath.pi * float(chi.angle(n)))
        for n in range(chi.modulus)
        if gcd(n, chi.modulus) == 1
    }


def _val(x: Fraction, p: int) -> int:
    if x == 0:
        return 10 ** 9
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _inv2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def _mul2(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def same_lattice_class(b1, b2, p: int) -> bool:
    """b1 and b2 span homothetic lattices iff b1^-1 b2 is p^k times a GL2(Z_(p)) matrix."""
    b1 = tuple(tuple(Fraction(x) for x in r) for r in b1)
    b2 = tuple(tuple(Fraction(x) for x in r) for r in b2)
    m = _mul2(_inv2(b1), b2)
    v = min(_val(x, p) for r in m for x in r)
    scaled = tuple(tuple(x / Fraction(p) ** v for x in r) for r in m)
    det = scaled[0][0] * scaled[1][1] - scaled[0][1] * scaled[1][0]
    return _val(det, p) == 0


def traces_of_words(gens, length: int):
    """(trace, multi-index) for every word of length 1..length, built by explicit products."""
    letters = []
    for i, g in enumerate(gens):
        g = tuple(tuple(Fraction(x) for x in r) for r in g)
        letters.append((i, 1, g))
        letters.append((i, -1, _inv2(g)))
    for L in range(1, length + 1):
        for word in itertools.product(letters, repeat=L):
            m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
            for _, _, g in word:
                m = _mul2(m, g)
            yield m[0][0] + m[1][1], [(i, s) for i, s, _ in word]
