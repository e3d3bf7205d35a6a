from fractions import Fraction

import pytest

from friezecount import formulas as F
from friezecount import pathcount as pc
from friezecount.exceptions import InvalidParams
from friezecount.modring import q_bracket, totient


def test_tame_examples():
    assert F.tame_count_formula(5, 6) == 2084 == totient(5) * pc.count_X(5, 6)
    assert F.tame_count_formula(2, 3) == 1
    assert F.tame_count_formula(4, 3) == 4 == totient(4) * pc.count_X(4, 3)
    assert F.tame_count_formula(1, 5) == 1


def test_tame_field_examples():
    assert F.tame_count_field(5, 6) == 2084
    assert F.tame_count_field(2, 2) == 1
    assert F.tame_count_field(3, 4) == 14 == totient(3) * pc.count_X(3, 4)


@pytest.mark.parametrize("n", range(2, 13))
def test_tame_formula_vs_paths(n):
    for m in range(2, 8):
        assert F.tame_count_formula(n, m) == totient(n) * pc.count_X(n, m)


@pytest.mark.parametrize("n", range(2, 13))
def test_regular_formula_vs_paths(n):
    for m in range(2, 8):
        assert F.regular_count_formula(n, m) * n == pc.count_Y(n, m)


def test_phi_examples():
    assert F.phi_m(2, 2, 5) == 20
    assert F.phi_m(2, 2, 4) == 4
    assert F.phi_m(2, 3, 6) == 800
    # the bracket base p^(2-k) is 1/2 there
    assert q_bracket(2, Fraction(1, 2)) == Fraction(3, 2)


def test_regular_examples():
    assert F.regular_count_formula(2, 4) == 3 == pc.count_Y(2, 4) // 2
    assert F.regular_count_formula(3, 4) == 2 == pc.count_Y(3, 4) // 3
    assert F.regular_count_formula(12, 5) == 200 == F.phi_m(2, 2, 5) * F.phi_m(3, 1, 5)
    assert pc.count_Y(12, 5) == 12 * 200
    assert F.regular_count_formula(1, 4) == 1


def test_phi_field_examples():
    assert F.phi_field(2, 4) == 3
    assert F.phi_field(5, 5) == 26
    assert F.phi_field(2, 6) == 11 == pc.count_Y(2, 6) // 2


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("m", range(2, 10))
def test_phi_field_is_phi_m_at_r1(p, m):
    assert F.phi_field(p, m) == F.phi_m(p, 1, m)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_width2_has_one_regular_frieze(p, r):
    assert F.phi_m(p, r, 2) == 1


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_z_closed_form_vs_masked_count(p, r, k):
    assert F.z_closed_form(p, r, k) == pc.count_Z(p, r, k)


def test_z_closed_form_examples():
    assert F.z_closed_form(2, 2, 2) == 24
    assert F.z_closed_form(3, 2, 2) == 135
    assert all(F.z_closed_form(p, r, 1) == p**r for p in (2, 3, 5) for r in range(1, 6))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("k", range(1, 7))
def test_bracket_sum_rewrite(p, r, k):
    lead = Fraction(p) ** ((r - 1) * (2 * k - 3))
    assert lead * q_bracket(r - 1, Fraction(p) ** (2 - k)) == F.lead_times_bracket_sum(p, r, k)


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("k", [2, 4])
def test_w_closed_form(r, k):
    assert F.w_closed_form(r, k) == pc.count_W(r, k)


@pytest.mark.parametrize("n1, n2", [(2, 3), (4, 9), (8, 5), (3, 7)])
def test_formulas_multiplicative(n1, n2):
    for m in range(2, 9):
        assert F.tame_count_formula(n1 * n2, m) == F.tame_count_formula(n1, m) * F.tame_count_formula(n2, m)
        assert F.regular_count_formula(n1 * n2, m) == F.regular_count_formula(n1, m) * F.regular_count_formula(n2, m)


@pytest.mark.parametrize("n", [2 ** 6, 3 ** 5, 2 ** 4 * 3 ** 3 * 5 ** 2])
def test_large_modulus_stays_integral(n):
    for m in range(2, 25):
        assert F.regular_count_formula(n, m) >= 0
        assert F.tame_count_formula(n, m) >= 0


def test_query_and_errors():
    assert F.FriezeCountQuery(5, 6, F.FriezeKind.TAME).formula() == 2084
    assert F.FriezeCountQuery(2, 4, F.FriezeKind.REGULAR).formula() == 3
    with pytest.raises(InvalidParams):
        F.FriezeCountQuery(5, 1, F.FriezeKind.TAME)
    with pytest.raises(InvalidParams):
        F.phi_m(4, 1, 5)
