from fractions import Fraction

import pytest

from qbmeasure import (
    Ball,
    FieldElem,
    NotInvertible,
    QPoint,
    additivity_check,
    character,
    chi_operator,
    enumerate_characters,
    eq22_check,
    evaluate,
    generalized_beta,
    integral_char_pX,
    integral_char_X,
    mu_ball,
    qnumber,
    regularized_integral_Xstar,
    theorem2_criterion,
    total_mass,
    weighted_beta,
)
from qbmeasure.exactfield import monomial
from qbmeasure.measure import (
    CONSTANT_SEED,
    _base_procedure,
    integral_char_scaled,
    level_sum,
    level_sum_direct,
    partial_sum_pX,
    partial_sum_X,
)

q = FieldElem.q()
CHARS_4 = enumerate_characters(4)


def test_ball_basics():
    b = Ball.of(3, 2, 1, 7)
    assert b.modulus == 6 and b.a == 1
    assert 13 in b and 14 not in b
    assert [c.a for c in b.children()] == [1, 7, 13]
    with pytest.raises(ValueError):
        Ball(3, 2, 1, 7)
    with pytest.raises(ValueError):
        Ball(3, 3, 1, 0)


def test_mu_weight_zero_is_q_haar():
    # mu_0(a + M Z_p) = q^a / [M]_q
    assert mu_ball(0, 1, Ball(3, 1, 1, 2)) == monomial(2) / qnumber(3)
    assert mu_ball(0, 2, Ball(3, 2, 1, 5)) == monomial(5) / qnumber(6)


def test_mu_frozen_value():
    # [3]_q/[3]_q * q * beta~_{1,q^3}(1/3) = q * ([1]_q/[3]_q + q * beta~_1(q^3))
    expected = monomial(1) * (1 / qnumber(3) + q * weighted_beta(1, 1).substitute(3))
    assert mu_ball(1, 1, Ball(3, 1, 1, 1)) == expected


def test_mu_padic_evaluation():
    Q = QPoint.of(3, 4)
    sym = mu_ball(2, 2, Ball(3, 1, 1, 1))
    num = mu_ball(2, 2, Ball(3, 1, 1, 1), q=Q, prec=15)
    assert (num - evaluate(sym, Q, 15)).eff_val >= 15


@pytest.mark.parametrize("p", [2, 3, 5])
def test_additivity(p):
    for d in (1, 2, 4):
        if d % p == 0:
            continue
        for N in (0, 1):
            for a in range(d * p**N):
                for k in range(5):
                    for alpha in (1, 2):
                        assert additivity_check(k, alpha, Ball(p, d, N, a)).is_zero()


def test_additivity_rejects_constant_seed():
    assert not additivity_check(1, 1, Ball(3, 1, 0, 0), CONSTANT_SEED).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_theorem2_criterion(p):
    for n in (0, 1):
        for a in range(p**n):
            for k in range(5):
                assert theorem2_criterion(k, 2, p, n, a).is_zero()


def test_constant_seed_witness():
    assert theorem2_criterion(1, 1, 2, 0, 0, CONSTANT_SEED) == q


def test_level_sum_regrouping():
    for k in range(4):
        for alpha in (1, 2):
            for M in (1, 2, 3, 4, 6, 9, 12):
                assert level_sum(k, alpha, M) == level_sum_direct(k, alpha, M)


def test_total_mass_exact():
    rep = total_mass(3, 2, 3, 2, range(4))
    assert rep.exact
    assert all(s == weighted_beta(2, 3) for _, s in rep.level_sums)


def test_total_mass_padic():
    rep = total_mass(2, 1, 3, 1, [0, 1], QPoint.of(3, 4), 10)
    assert [v for _, v in rep.level_valuations] == [10, 10]


# ---------------------------------------------------------------------------
# character integrals


@pytest.mark.parametrize("chi", enumerate_characters(4) + enumerate_characters(5), ids=lambda c: f"mod{c.modulus}-{c.index}")
def test_x_integral_matches_attached_number(chi):
    for k in range(4):
        for alpha in (1, 2):
            closed = integral_char_X(chi, k, alpha)
            assert closed == generalized_beta(chi, alpha, k)
            for N in range(3):
                assert partial_sum_X(chi, k, alpha, 3, N) == closed
                if N:
                    assert partial_sum_pX(chi, k, alpha, 3, N) == integral_char_pX(chi, k, alpha, 3)


def test_px_frozen_value():
    # chi(3) [3]^0 / [3]_q * (X-integral at q^3) for the character mod 4 at k = 0
    value = integral_char_pX(character(4, 1), 0, 1, 3)
    inner = (monomial(3) - monomial(9)) / qnumber(4).substitute(3)
    assert value == -inner / qnumber(3)


def test_coprimality_required():
    with pytest.raises(ValueError):
        partial_sum_X(character(4, 1), 1, 1, 2, 1)


def test_composition_of_operators():
    for chi in CHARS_4:
        for k in range(4):
            f = generalized_beta(chi, 2, k)
            for x in (2, 3):
                for y in (2, 5):
                    lhs = chi_operator(chi, x, k, 2, chi_operator(chi, y, k, 2, f))
                    assert lhs == chi_operator(chi, x * y, k, 2, f)


def test_operator_symbolic_and_padic_agree():
    chi = character(4, 1)
    Q = QPoint.of(3, 4)
    f = generalized_beta(chi, 1, 2)
    sym = evaluate(chi_operator(chi, 5, 2, 1, f), Q, 15)
    proc = chi_operator(chi, 5, 2, 1, _base_procedure(chi, 2, 1, 20), 20)
    assert (proc(Q) - sym).eff_val >= 15


def test_scaled_integral_errors():
    Q = QPoint.of(3, 4)
    chi = character(4, 1)
    with pytest.raises(ValueError):
        integral_char_scaled(chi, 1, 1, 1, "X", Q, 10)
    with pytest.raises(NotInvertible):
        integral_char_scaled(chi, 1, 1, 2, "X", Q, 10)
    with pytest.raises(ValueError):
        integral_char_scaled(chi, 1, 1, 5, "Y", Q, 10)


@pytest.mark.parametrize("chi", CHARS_4, ids=lambda c: f"mod4-{c.index}")
def test_final_identity(chi):
    Q = QPoint.of(3, 4)
    for k in range(4):
        for alpha in (1, 2):
            res = eq22_check(chi, k, alpha, 5, Q, 12, 10)
            assert res.working_prec == 22
            assert res.certified_valuation >= 12


def test_final_identity_other_prime_and_beta():
    res = eq22_check(character(4, 1), 2, 1, 7, QPoint.of(5, 6), 12, 10)
    assert res.passed


def test_final_identity_needs_one_over_beta_in_last_term():
    # dropping the 1/beta factor of the last term leaves a visible discrepancy
    chi, k, alpha, beta = character(4, 1), 2, 1, 5
    Q = QPoint.of(3, 4)
    prec = 22
    f = _base_procedure(chi, k, alpha, prec)
    inv = Fraction(1, beta)
    op_inv = chi_operator(chi, inv, k, alpha, f, prec)
    op_p = chi_operator(chi, 3, k, alpha, f, prec)
    op_p_inv = chi_operator(chi, 3, k, alpha, op_inv, prec)
    literal = f(Q) - op_inv(Q) * inv - op_p(Q) + op_p_inv(Q)
    lhs = regularized_integral_Xstar(chi, k, alpha, beta, Q, prec)
    assert (lhs - literal).eff_val < 12
