from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from friezecount.exceptions import ModuliNotCoprime, NotAUnit
from friezecount.modring import (
    INFINITY,
    PrimePower,
    Residue,
    crt_combine,
    factorize,
    inverse,
    q_binom2,
    q_bracket,
    totient,
    units,
    valuation,
)

import oracles


@pytest.mark.parametrize(
    "n, expected",
    [(1, []), (12, [(2, 2), (3, 1)]), (5, [(5, 1)]), (360, [(2, 3), (3, 2), (5, 1)])],
)
def test_factorize(n, expected):
    assert factorize(n) == [PrimePower(p, r) for p, r in expected]


@given(st.integers(1, 10**6))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert prod(pp.p**pp.r for pp in f) == n
    assert [pp.p for pp in f] == sorted({pp.p for pp in f})


@pytest.mark.parametrize("a, p, expected", [(12, 2, 2), (0, 3, INFINITY), (7, 2, 0), (81, 3, 4)])
def test_valuation(a, p, expected):
    assert valuation(a, p) == expected


@pytest.mark.parametrize("n", range(1, 60))
def test_totient_matches_gcd_scan(n):
    assert totient(n) == sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def test_totient_examples():
    assert (totient(1), totient(5), totient(12)) == (1, 4, 4)


def test_totient_multiplicative():
    for m in range(1, 201):
        for n in range(1, 200 // m + 1):
            if gcd(m, n) == 1:
                assert totient(m * n) == totient(m) * totient(n)


def test_units():
    assert [u.value for u in units(2)] == [1]
    assert [u.value for u in units(5)] == [1, 2, 3, 4]
    assert [u.value for u in units(8)] == [1, 3, 5, 7]
    assert all(len(units(n)) == totient(n) for n in range(2, 50))


@pytest.mark.parametrize("a, n", [(1, 7), (2, 5), (3, 8), (7, 30), (11, 12)])
def test_inverse_against_search(a, n):
    assert [inverse(Residue(a, n)).value] == oracles.solve_inverse(a, n)


def test_inverse_examples():
    assert inverse(Residue(2, 5)) == Residue(3, 5)
    assert inverse(Residue(3, 8)) == Residue(3, 8)


def test_inverse_rejects_non_unit():
    with pytest.raises(NotAUnit):
        inverse(Residue(4, 6))


@pytest.mark.parametrize(
    "a1, m, a2, n, expected",
    [(0, 2, 0, 3, 0), (1, 2, 2, 3, 5), (1, 4, 4, 5, 9)],
)
def test_crt_combine_examples(a1, m, a2, n, expected):
    got = crt_combine(Residue(a1, m), Residue(a2, n))
    scan = [x for x in range(m * n) if x % m == a1 and x % n == a2]
    assert got == Residue(expected, m * n) and scan == [expected]


@pytest.mark.parametrize("m, n", [(2, 3), (4, 5), (7, 9), (8, 15), (1, 7)])
def test_crt_combine_bijective(m, n):
    image = {crt_combine(Residue(x, m), Residue(y, n)).value for x in range(m) for y in range(n)}
    assert image == set(range(m * n))


def test_crt_combine_rejects_common_factor():
    with pytest.raises(ModuliNotCoprime):
        crt_combine(Residue(1, 4), Residue(1, 6))


def test_q_bracket_examples():
    assert q_bracket(0, 5) == 0
    assert q_bracket(3, 2) == 7
    assert q_bracket(2, Fraction(1, 2)) == Fraction(3, 2)
    assert q_bracket(4, 1) == 4


@given(st.integers(0, 12), st.integers(1, 9))
def test_q_bracket_is_geometric_sum(k, q):
    assert q_bracket(k, q) == sum(q**j for j in range(k))


@given(st.integers(0, 8), st.fractions(min_value=Fraction(1, 9), max_value=9))
def test_q_bracket_rational_base(k, q):
    assert q_bracket(k, q) == sum((q**j for j in range(k)), Fraction(0))


def test_q_binom2_examples():
    assert q_binom2(2, 7) == 1
    assert q_binom2(3, 2) == 7
    assert q_binom2(1, 5) == 0
    assert q_binom2(4, 1) == 6


@given(st.integers(1, 12), st.integers(1, 11))
def test_q_binom2_pascal_recurrence(k, q):
    # binom(k+1, 2)_q = binom(k, 2)_q + q^(k-1) [k]_q
    assert isinstance(q_binom2(k, q), int)
    assert q_binom2(k + 1, q) == q_binom2(k, q) + q ** (k - 1) * q_bracket(k, q)
