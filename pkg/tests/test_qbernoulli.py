from fractions import Fraction
from math import comb

import pytest

from qbmeasure import (
    FieldElem,
    PoleAtOne,
    QPoint,
    carlitz_beta,
    distribution_check,
    extended_beta,
    family_table,
    qnumber,
    recurrence_residual,
    weighted_beta,
    weighted_beta_poly,
    xi,
)
from qbmeasure.errors import DegenerateEquation
from qbmeasure.exactfield import monomial
from qbmeasure.qbernoulli import poly_at_ratio, weighted_beta_poly_padic

q = FieldElem.q()


def classical_bernoulli(n_max):
    """B_0 = 1 and sum_{j<=n} C(n+1, j) B_j = 0, so B_1 = -1/2."""
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        B.append(-sum(comb(n + 1, j) * B[j] for j in range(n)) / (n + 1))
    return B


B = classical_bernoulli(10)


def test_bernoulli_oracle_values():
    assert B[:7] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]


# ---------------------------------------------------------------------------
# frozen values


@pytest.mark.parametrize(
    "value, text",
    [
        (xi(2), "(-1)/(q^2 - 1)"),
        (xi(1), "0"),
        (carlitz_beta(1), "(-1)/(q + 1)"),
        (weighted_beta(1, 1), "(-1)/(q + 1)"),
        (weighted_beta(1, 2), "(q)/(q^3 + 2*q^2 + 2*q + 1)"),
        (weighted_beta(2, 0), "1"),
        (weighted_beta(2, 1), "(-q - 2)/(q^3 + 2*q^2 + 2*q + 1)"),
        (weighted_beta(3, 1), "(-q^2 - 2*q - 3)/(q^5 + 2*q^4 + 3*q^3 + 3*q^2 + 2*q + 1)"),
    ],
)
def test_frozen_values(value, text):
    assert str(value) == text


def test_weight_two_first_number_by_hand():
    # q (q^2 B_1 + 1) - B_1 = 2/[2]_q solved directly
    expected = (FieldElem.constant(2) / qnumber(2) - q) / (q**3 - 1)
    assert weighted_beta(2, 1) == expected


def test_carlitz_limit():
    assert carlitz_beta(2).eval_at_one() == Fraction(1, 6)


def test_xi_has_pole():
    with pytest.raises(PoleAtOne):
        xi(2).eval_at_one()


@pytest.mark.parametrize("k", range(9))
def test_extended_with_h_one_is_carlitz(k):
    assert extended_beta(1, k) == carlitz_beta(k)


def test_weight_one_is_carlitz():
    for n in range(8):
        assert weighted_beta(1, n) == carlitz_beta(n)


def test_extended_seed_for_negative_h():
    assert extended_beta(-2, 0) == -2 / (-monomial(-2) * qnumber(2))


def test_extended_degenerate_equation():
    with pytest.raises(DegenerateEquation):
        extended_beta(-2, 2)
    with pytest.raises(DegenerateEquation):
        extended_beta(-1, 1)


# ---------------------------------------------------------------------------
# limits and recurrences


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_classical_limit(alpha):
    for n in range(9):
        assert weighted_beta(alpha, n).eval_at_one() == B[n]


@pytest.mark.parametrize("h", [1, 2, 3])
def test_extended_classical_limit(h):
    for n in range(6):
        assert extended_beta(h, n).eval_at_one() == B[n]


def umbral_residual(values, n, prefactor, inner, rhs1):
    """prefactor * sum_j C(n,j) inner^j B_j - B_n - rhs_n, written out term by term."""
    total = FieldElem.constant(0)
    for j in range(n + 1):
        total = total + comb(n, j) * inner**j * values[j]
    rhs = rhs1 if n == 1 else 0
    return prefactor * total - values[n] - rhs


# each family stated literally: (values, prefactor, inner scale, rhs at n = 1, seed)
FAMILY_EQUATIONS = {
    "xi": (xi, 1, q, 1, 1),
    "carlitz": (carlitz_beta, q, q, 1, 1),
    **{f"extended h={h}": (lambda k, h=h: extended_beta(h, k), q**h, q, 1, h / qnumber(h)) for h in (1, 2, 3)},
    **{f"weighted a={a}": (lambda n, a=a: weighted_beta(a, n), q, q**a, a / qnumber(a), 1) for a in (1, 2, 3)},
}


@pytest.mark.parametrize("name", sorted(FAMILY_EQUATIONS))
def test_umbral_equation_holds(name):
    fn, prefactor, inner, rhs1, seed = FAMILY_EQUATIONS[name]
    values = [fn(n) for n in range(11)]
    assert values[0] == seed
    for n in range(1, 11):
        assert umbral_residual(values, n, prefactor, inner, rhs1).is_zero()


def test_library_residual_agrees():
    for kind, param in [("xi", None), ("carlitz", None), ("extended", 2), ("weighted", 3)]:
        assert all(recurrence_residual(kind, param, n).is_zero() for n in range(1, 11))
    with pytest.raises(ValueError):
        recurrence_residual("xi", None, 0)


def test_polynomial_at_zero_is_number():
    for alpha in (1, 2):
        for n in range(5):
            assert weighted_beta_poly(alpha, n, 0) == weighted_beta(alpha, n)


def test_polynomial_limit_is_bernoulli_polynomial():
    # B_2(x) = x^2 - x + 1/6
    for x in range(4):
        assert weighted_beta_poly(2, 2, x).eval_at_one() == x * x - x + Fraction(1, 6)


def test_poly_at_ratio_integer_point():
    # c / M with M = 1 is an ordinary integer argument
    assert poly_at_ratio(2, 3, 2, 1) == weighted_beta_poly(2, 3, 2)


def test_polynomial_padic_matches_symbolic():
    Q = QPoint.of(3, 4)
    for n in range(4):
        exact = weighted_beta_poly(2, n, 2).eval_rational(4).to_fraction()
        got = weighted_beta_poly_padic(2, n, 2, Q, 20)
        assert (got - exact).eff_val >= 15


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_distribution_relation(alpha):
    for n in range(6):
        for d in range(1, 5):
            for x in range(4):
                assert distribution_check(alpha, n, d, x).is_zero()


def test_family_table_rows():
    rows = family_table("xi", None, 2)
    assert rows[2] == {"family": "xi", "param": None, "n": 2, "value": "(-1)/(q^2 - 1)", "limit": "pole"}
    rows = family_table("weighted", 1, 4)
    assert rows[1]["value"] == "(-1)/(q + 1)" and rows[1]["limit"] == "-1/2"
