from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eiscurve.dirichlet import DirichletCharacter, characters_mod
from eiscurve.errors import DegenerateInputError, ParityError, PrecisionError
from eiscurve.modforms import (
    EigenSystem,
    HeckeDescriptor,
    QExpansion,
    e2_crit_ord_system,
    e2_refined,
    e2_series,
    eigencheck,
    eigensystem_verify,
    eisenstein_series,
    hecke_apply,
    refine,
    stabilize,
)
from eiscurve.numkernel import CyclotomicNumber, TruncatedSeries, primes_below
from oracles import sigma

TRIV = DirichletCharacter.trivial()
CHI3 = characters_mod(3)[1]
CHI4 = characters_mod(4)[1]
U, T, V = (lambda n: HeckeDescriptor("U", n)), (lambda n: HeckeDescriptor("T", n)), (lambda n: HeckeDescriptor("V", n))


def test_e4():
    f = eisenstein_series(4, TRIV, TRIV, 4)
    assert f.coeffs.coeffs == (Fraction(1, 240), 1, 9, 28)
    assert f.domain == "rational"


def test_e2_prefix():
    f = e2_series(5)
    assert f.coeffs.coeffs == (Fraction(-1, 24), 1, 3, 4, 7)
    with pytest.raises(ValueError):
        e2_series(1)


def test_e2_matches_divisor_sums():
    f = e2_series(200)
    assert all(f[m] == sigma(1, m) for m in range(1, 200))


def test_constant_term_vanishes_for_nontrivial_chi():
    # (2, chi3, 1) is odd, so it is rejected; admissible triples with L > 1 have a_0 = 0
    with pytest.raises(ParityError):
        eisenstein_series(2, CHI3, TRIV, 10)
    assert eisenstein_series(2, CHI3, CHI3, 10)[0] == 0
    assert eisenstein_series(3, CHI3, TRIV, 10)[0] == 0
    assert eisenstein_series(1, CHI4, TRIV, 10)[0] == 0


def test_constant_term_from_bernoulli():
    # weight 1 with chi trivial: a_0 = -B_{1,psi}/2
    assert eisenstein_series(1, TRIV, CHI3, 5)[0] == Fraction(1, 6)
    assert eisenstein_series(1, TRIV, CHI4, 5)[0] == Fraction(1, 4)


def test_errors():
    with pytest.raises(ValueError, match="e2_series"):
        eisenstein_series(2, TRIV, TRIV, 10)
    with pytest.raises(ParityError):
        eisenstein_series(3, TRIV, TRIV, 10)
    with pytest.raises(ValueError):
        eisenstein_series(2, DirichletCharacter.trivial(3), TRIV, 10)


def test_qexpansion_invariants():
    with pytest.raises(ValueError):
        QExpansion(TruncatedSeries.of([1]), 2)
    with pytest.raises(ValueError):
        QExpansion(TruncatedSeries.of([1, 1]), 3, CHI3, TRIV)


@pytest.mark.parametrize("chi,psi,k", [(TRIV, CHI3, 1), (CHI4, TRIV, 3), (TRIV, characters_mod(5)[1], 1), (characters_mod(7)[2], characters_mod(7)[4], 2)])
def test_ap_formula(chi, psi, k):
    f = eisenstein_series(k, chi, psi, 60)
    assert f[1] == 1
    for p in primes_below(60):
        assert f[p] == chi(p) + psi(p) * p ** (k - 1)


def test_cyclotomic_domain():
    chi5 = characters_mod(5)[1]  # order 4, odd
    f = eisenstein_series(1, TRIV, chi5, 20)
    assert f.domain == "cyclotomic"
    assert isinstance(f[2], CyclotomicNumber) and not f[2].is_rational()
    assert f.level_hint == 5


# -- stabilization -----------------------------------------------------------


def test_stabilize_examples():
    e2 = e2_series(50)
    crit = stabilize(e2, 5, 1)
    assert crit[0] == 0
    assert crit.level_hint == 5
    ordl = stabilize(e2, 7, 7)
    assert ordl == refine(e2, 7, "ord")
    assert stabilize(e2, 3, 0).coeffs == e2.coeffs


def test_stabilize_errors():
    e2 = e2_series(10)
    with pytest.raises(PrecisionError):
        stabilize(e2, 10, 1)
    with pytest.raises(ValueError):
        stabilize(e2, 1, 1)
    with pytest.raises(ValueError):
        refine(e2, 5, "other")
    with pytest.raises(ValueError):
        refine(e2, 4, "ord")


@pytest.mark.parametrize("t", [2, 3, 5, 7])
def test_weight_two_level_t_constant(t):
    assert stabilize(e2_series(20), t, t)[0] == Fraction(t - 1, 24)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_stabilization_kills_one_root(p):
    e2 = e2_series(500)
    # the formal relation U(p) E2 = (1 + p) E2 - p V(p) E2, checked on the valid range
    lhs = hecke_apply(U(p), e2)
    rhs = e2.coeffs.scale(1 + p) - hecke_apply(V(p), e2).coeffs.scale(p)
    assert all(lhs[n] == rhs[n] for n in range(1, lhs.prec))
    assert eigencheck(U(p), stabilize(e2, p, 1)) == p
    assert eigencheck(U(p), stabilize(e2, p, p)) == 1
    assert eigencheck(U(p), e2) is None


# -- Hecke operators -----------------------------------------------------------


def test_descriptor_parsing():
    assert HeckeDescriptor.parse("T:7") == T(7)
    assert HeckeDescriptor.parse("u:5").label() == "U:5"
    for bad in ("T7", "T:x", "T:8", "U:1", "W:3"):
        with pytest.raises(ValueError):
            HeckeDescriptor.parse(bad)
    with pytest.raises(ValueError):
        HeckeDescriptor("T", 5, level=10)


def test_u_after_v_is_identity():
    f = e2_refined(60, ("crit", 3))
    for t in (2, 3, 5):
        g = hecke_apply(U(t), hecke_apply(V(t), f))
        assert g.coeffs.coeffs == f.coeffs.coeffs[: g.prec]


def test_u5_on_critical_e2():
    f = e2_refined(100, ("crit", 5))
    g = hecke_apply(U(5), f)
    assert g.prec == 20
    assert g.coeffs == f.coeffs.truncate(20).scale(5)


def test_t7_on_ordinary_e2():
    f = e2_refined(200, ("ord", 11))
    g = hecke_apply(T(7), f)
    assert g.coeffs == f.coeffs.truncate(g.prec).scale(8)


def test_precision_error():
    with pytest.raises(PrecisionError):
        hecke_apply(U(7), e2_series(10))


def test_eigencheck_examples():
    f = e2_refined(300, ("crit", 5), ("ord", 7))
    assert eigencheck(U(5), f) == 5
    assert eigencheck(U(7), f) == 1
    with pytest.raises(DegenerateInputError):
        eigencheck(U(2), QExpansion(TruncatedSeries.of([0] * 10), 2))


def test_pivot_beyond_a1():
    # series starting at q^2: pivot is the first nonzero coefficient
    f = hecke_apply(V(2), e2_refined(80, ("crit", 3)))
    f = f.with_coeffs([0] + list(f.coeffs.coeffs[1:]))
    assert eigencheck(U(3), f) == 3


def test_eigensystem_examples():
    f = e2_refined(600, ("crit", 5), ("ord", 7))
    assert eigensystem_verify(f, e2_crit_ord_system(5, 7, 50)).passed
    assert eigensystem_verify(e2_refined(300, ("ord", 7)), EigenSystem(((U(7), 1),))).passed
    report = eigensystem_verify(f, EigenSystem(((U(5), 1),)))
    assert not report.passed and report.results[0].found == 5


def test_eigensystem_names_descriptor_on_precision_error():
    with pytest.raises(PrecisionError, match="T:7"):
        eigensystem_verify(e2_series(10), EigenSystem(((T(7), 8),)))


def test_eigensystem_rejects_duplicates():
    with pytest.raises(ValueError):
        EigenSystem(((U(5), 5), (U(5), 5)))


@given(
    st.lists(st.integers(-20, 20), min_size=200, max_size=200),
    st.sampled_from([2, 3, 5, 7]),
    st.sampled_from([2, 3, 4, 5, 9]),
    st.integers(1, 4),
)
def test_t_commutes_with_u(coeffs, l, m, k):
    if m % l == 0:
        return
    f = QExpansion(TruncatedSeries.of(coeffs), k)
    a = hecke_apply(T(l), hecke_apply(U(m), f))
    b = hecke_apply(U(m), hecke_apply(T(l), f))
    assert a.coeffs == b.coeffs


@given(st.lists(st.integers(-5, 5), min_size=60, max_size=60), st.sampled_from([2, 3]))
def test_t_commutes_with_u_nebentypus(coeffs, m):
    neb = characters_mod(5)[1]
    f = QExpansion(TruncatedSeries.of(coeffs), 1)
    op = HeckeDescriptor("T", 7, weight=1, nebentypus=neb)
    a = hecke_apply(op, hecke_apply(U(m), f))
    b = hecke_apply(U(m), hecke_apply(op, f))
    assert a.coeffs == b.coeffs
