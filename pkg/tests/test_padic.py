import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbmeasure import FieldElem, PAdic, QPoint, evaluate, q_power, qbracket_padic, qnumber, vp
from qbmeasure.errors import DivisionByZero, NotPAdicInteger, PrecisionLoss
from qbmeasure.padic import INF, eval_field_elem

q = FieldElem.q()


def test_valuation():
    assert vp(Fraction(18, 5), 3) == 2
    assert vp(Fraction(5, 18), 3) == -2
    assert vp(0, 3) == INF


@pytest.mark.parametrize(
    "value, text",
    [
        (PAdic(3, 1, 5) + PAdic(3, 2, 5), "3 + O(3^5)"),
        (PAdic(3, 3, 4) * PAdic(3, 3, 4), "9 + O(3^5)"),
        (PAdic(3, 1, 3) / PAdic(3, 3, 3), "1/3 + O(3^1)"),
        (PAdic(3, Fraction(-1, 2), 4), "40 + O(3^4)"),
    ],
)
def test_arithmetic_examples(value, text):
    assert str(value) == text


def test_division_precision_is_sharp():
    # lifts 1 and 30 of 3 + O(3^3) give quotients 1/3 and 1/30 that differ at 3^1
    x, y = PAdic(3, 1, 3), PAdic(3, 3, 3)
    assert (x / y).prec == 1
    assert vp(Fraction(1, 3) - Fraction(1, 30), 3) == 1


def test_expansion_and_json():
    x = PAdic(3, Fraction(1, 3), 3)
    assert x.expansion() == "3^-1 + O(3^3)"
    assert PAdic(3, 7, 4).expansion() == "1 + 2*3 + O(3^4)"
    assert PAdic(3, 7, 4).to_json() == {"p": 3, "value": "7/1", "prec": 4, "digits": "1 + 2*3 + O(3^4)"}


def test_zero_divisors():
    with pytest.raises(DivisionByZero):
        PAdic(3, 1) / PAdic(3, 0)
    with pytest.raises(PrecisionLoss):
        PAdic(3, 1, 4) / PAdic(3, 9, 2)


def test_qpoint_requires_small_q_minus_one():
    QPoint.of(3, 4)
    with pytest.raises(ValueError):
        QPoint.of(3, 2)


# ---------------------------------------------------------------------------
# precision soundness: every lift of the inputs lands in the output ball


def _elements(p, max_prec):
    out = []
    for prec in range(1, max_prec + 1):
        for a in range(p**prec):
            out.append(PAdic(p, a, prec))
    return out


def _lifts(x: PAdic):
    return [x.value + t * Fraction(x.p) ** x.prec for t in range(x.p)]


def _sound(result: PAdic, exact_values) -> bool:
    return all(vp(v - result.value, result.p) >= result.prec for v in exact_values)


@pytest.mark.parametrize("p", [2, 3])
def test_precision_rules_by_enumeration(p):
    elems = _elements(p, 4)
    for x, y in itertools.product(elems, repeat=2):
        lx, ly = _lifts(x), _lifts(y)
        pairs = list(itertools.product(lx, ly))
        assert _sound(x + y, [a + b for a, b in pairs])
        assert _sound(x - y, [a - b for a, b in pairs])
        assert _sound(x * y, [a * b for a, b in pairs])
        if y.value != 0:
            assert _sound(x / y, [a / b for a, b in pairs])


@pytest.mark.parametrize("p", [2, 3])
def test_precision_rules_are_not_pessimistic_for_units(p):
    # with unit operands the output precision equals the input precision
    x, y = PAdic(p, 1, 4), PAdic(p, 1 + p, 4)
    assert (x + y).prec == (x * y).prec == (x / y).prec == 4


# ---------------------------------------------------------------------------
# powers q^t for t in Z_p


def test_hensel_square_root():
    r = q_power(QPoint.of(3, 4), Fraction(1, 2), 3)
    assert r.residue(3) == 25
    assert (25 * 25 - 4) % 27 == 0


def test_integer_power_is_direct():
    assert str(q_power(QPoint.of(3, 4), 2, 5)) == "16 + O(3^5)"


def test_fifth_root_round_trip():
    r = q_power(QPoint.of(3, 4), Fraction(1, 5), 20)
    assert (r**5 - 4).eff_val >= 20


def test_exponent_not_in_zp():
    with pytest.raises(NotPAdicInteger):
        q_power(QPoint.of(3, 4), Fraction(1, 3), 10)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(2, 5), (2, 9), (3, 4), (3, 10), (5, 6), (5, 26)]),
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
)
def test_exponent_laws(pq, s, t):
    p, qv = pq
    if s.denominator % p == 0 or t.denominator % p == 0:
        return
    Q = QPoint.of(p, qv)
    prec = 15
    lhs = q_power(Q, s + t, prec)
    rhs = q_power(Q, s, prec) * q_power(Q, t, prec)
    assert (lhs - rhs).eff_val >= min(lhs.prec, rhs.prec)
    inner = QPoint(q_power(Q, s, prec))
    nested = q_power(inner, t, prec)
    direct = q_power(Q, s * t, prec)
    assert (nested - direct).eff_val >= min(nested.prec, direct.prec) >= prec - 2


@pytest.mark.parametrize("p, qv, m", [(3, 4, 2), (3, 10, 4), (5, 6, 3), (2, 5, 3), (7, 8, 5)])
def test_roots_by_hensel(p, qv, m):
    # r = q^(1/m) is the unique root of x^m = q with r = 1 (mod p)
    r = q_power(QPoint.of(p, qv), Fraction(1, m), 12)
    assert (r**m - qv).eff_val >= 12
    assert (r - 1).eff_val >= 1


# ---------------------------------------------------------------------------
# evaluation of field elements


def test_evaluation_examples():
    Q = QPoint.of(3, 4)
    assert str(eval_field_elem(1 + q, Q, 6)) == "5 + O(3^6)"
    assert eval_field_elem(-1 / (1 + q), Q, 3).residue(3) == 16
    assert eval_field_elem(qnumber(3), Q).value == 21


def test_qbracket_padic_matches_symbolic():
    Q = QPoint.of(3, 4)
    for y in range(5):
        for c in (1, 2):
            assert qbracket_padic(Q, y, c, 20).value == Fraction(qnumber(y, c).eval_rational(4).to_fraction())


def test_evaluate_cyclotomic_coordinates():
    from qbmeasure import CycElem

    z = CycElem.zeta_power(4, 1)
    out = evaluate(q * z + 1, QPoint.of(3, 4), 8)
    assert [c.value for c in out.coords] == [1, 4]
