"""The weighted q-Bernoulli distribution on balls of X = lim Z/dp^N Z.

Symbolic results are :class:`FieldElem`; passing a :class:`QPoint` evaluates
the same exact quantity p-adically (``CycPAdic``).  Values on balls never use
fractional powers of q: an argument c/M at base q^M is rewritten through
``[c/M]_{(q^M)^a} = [c]_{q^a} / [M]_{q^a}``.

The measure is unbounded, so only finite ball sums are offered, never
integration of general continuous functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Callable

from .characters import DirichletChar, char_eval, char_eval_ratio, generalized_beta
from .errors import NotInvertible
from .exactfield import FieldElem, monomial, qnumber
from .padic import CycPAdic, QPoint, evaluate, q_power, qbracket_padic
from .qbernoulli import poly_at_ratio, scaled_poly_at_ratio, weighted_beta, weighted_beta_at

__all__ = [
    "Ball",
    "SeedFunction",
    "BETA_SEED",
    "CONSTANT_SEED",
    "residue_reduce",
    "mu_ball",
    "additivity_check",
    "theorem2_criterion",
    "MassReport",
    "total_mass",
    "level_sum",
    "level_sum_direct",
    "integral_char_X",
    "integral_char_pX",
    "partial_sum_X",
    "partial_sum_pX",
    "integral_char_scaled",
    "regularized_integral_Xstar",
    "chi_operator",
    "Eq22Result",
    "eq22_check",
]


def residue_reduce(a: int, modulus: int) -> int:
    if modulus < 1:
        raise ValueError("modulus must be positive")
    return a % modulus


@dataclass(frozen=True)
class Ball:
    """a + d p^N Z_p inside X_d."""

    p: int
    d: int
    N: int
    a: int

    def __post_init__(self):
        if gcd(self.d, self.p) != 1:
            raise ValueError(f"d = {self.d} must be coprime to p = {self.p}")
        if self.N < 0:
            raise ValueError("level must be nonnegative")
        if not 0 <= self.a < self.modulus:
            raise ValueError(f"need 0 <= a < {self.modulus}, got {self.a}")

    @classmethod
    def of(cls, p: int, d: int, N: int, a: int) -> "Ball":
        return cls(p, d, N, residue_reduce(a, d * p**N))

    @property
    def modulus(self) -> int:
        return self.d * self.p**self.N

    def children(self) -> list["Ball"]:
        return [Ball(self.p, self.d, self.N + 1, self.a + b * self.modulus) for b in range(self.p)]

    def __contains__(self, x: int) -> bool:
        return (x - self.a) % self.modulus == 0


@dataclass(frozen=True)
class SeedFunction:
    """A family f_{k, q^M}(c / M); ``func(k, alpha, M, c)`` returns a FieldElem."""

    name: str
    func: Callable[[int, int, int, int], FieldElem]

    def __call__(self, k: int, alpha: int, M: int, c: int) -> FieldElem:
        return self.func(k, alpha, M, c)


BETA_SEED = SeedFunction("beta", lambda k, alpha, M, c: poly_at_ratio(alpha, k, c, M))
CONSTANT_SEED = SeedFunction("constant", lambda k, alpha, M, c: FieldElem.constant(1))


def _maybe_eval(value: FieldElem, q: QPoint | None, prec):
    return value if q is None else evaluate(value, q, prec)


def _mu_symbolic(k: int, alpha: int, M: int, a: int, seed: SeedFunction) -> FieldElem:
    if seed is BETA_SEED:
        # [M]^k_{q^a} * beta~_{k,q^M}(a/M) is a polynomial combination; skip the division
        return monomial(a) * scaled_poly_at_ratio(alpha, k, a, M) / qnumber(M)
    return qnumber(M, alpha) ** k / qnumber(M) * monomial(a) * seed(k, alpha, M, a)


def mu_ball(k: int, alpha: int, ball: Ball, seed: SeedFunction = BETA_SEED, q: QPoint | None = None, prec=None):
    """mu_{k,q}^(alpha)(a + d p^N Z_p) = [M]^k_{q^a}/[M]_q q^a f_{k,q^M}(a/M), M = d p^N."""
    return _maybe_eval(_mu_symbolic(k, alpha, ball.modulus, ball.a, seed), q, prec)


def additivity_check(k: int, alpha: int, parent: Ball, seed: SeedFunction = BETA_SEED, q: QPoint | None = None, prec=None):
    """mu(parent) - sum of mu over its p children; zero iff additive there."""
    diff = _mu_symbolic(k, alpha, parent.modulus, parent.a, seed)
    for child in parent.children():
        diff = diff - _mu_symbolic(k, alpha, child.modulus, child.a, seed)
    return _maybe_eval(diff, q, prec)


def theorem2_criterion(k: int, alpha: int, p: int, n: int, a: int, seed: SeedFunction = BETA_SEED) -> FieldElem:
    """LHS - RHS of the compatibility condition making the seed a distribution.

    ([p]^k_{(q^{p^n})^a} / [p]_{q^{p^n}}) sum_b q^{b p^n} f_{k,(q^{p^n})^p}((a/p^n + b)/p)
    versus f_{k,q^{p^n}}(a/p^n).
    """
    pn = p**n
    ratio = qnumber(p, alpha * pn) ** k / qnumber(p, pn)
    acc = FieldElem.constant(0)
    for b in range(p):
        acc = acc + monomial(b * pn) * seed(k, alpha, pn * p, a + b * pn)
    return ratio * acc - seed(k, alpha, pn, a)


@dataclass
class MassReport:
    target: FieldElem
    level_sums: list  # (N, FieldElem)
    exact: bool
    level_valuations: list | None = None  # (N, certified valuation) for the p-adic backend


def level_sum_direct(k: int, alpha: int, M: int) -> FieldElem:
    """Sum of mu over the M balls a + M Z_p, one ball at a time."""
    acc = FieldElem.constant(0)
    for a in range(M):
        acc = acc + monomial(a) * scaled_poly_at_ratio(alpha, k, a, M)
    return acc / qnumber(M)


def level_sum(k: int, alpha: int, M: int) -> FieldElem:
    """The same sum regrouped by the index l of the polynomial expansion.

    sum_a q^a [a]^(k-l)_{q^a} q^(a l a) collapses to geometric sums: with
    j = k - l, it is (1 - q^a)^(-j) sum_i C(j,i) (-1)^i [M]_{q^(1 + a(l + i))}.
    """
    mb = qnumber(M, alpha)
    total = FieldElem.constant(0)
    for l in range(k + 1):
        j = k - l
        inner = FieldElem.constant(0)
        for i in range(j + 1):
            inner = inner + qnumber(M, 1 + alpha * (l + i)) * ((-1) ** i * comb(j, i))
        inner = inner / (1 - monomial(alpha)) ** j
        total = total + inner * mb**l * weighted_beta_at(alpha, l, M) * comb(k, l)
    return total / qnumber(M)


def total_mass(k: int, alpha: int, p: int, d: int, levels, q: QPoint | None = None, prec=None) -> MassReport:
    """Sum of mu over the d p^N balls at each level, against beta~_k."""
    target = weighted_beta(alpha, k)
    sums = [(N, level_sum(k, alpha, d * p**N)) for N in levels]
    exact = all(s == target for _, s in sums)
    vals = None
    if q is not None:
        t = evaluate(target, q, prec)
        vals = [(N, (evaluate(s, q, prec) - t).eff_val) for N, s in sums]
    return MassReport(target, sums, exact, vals)


# ---------------------------------------------------------------------------
# character integrals


def _check_coprime(chi: DirichletChar, p: int):
    if gcd(chi.modulus, p) != 1:
        raise ValueError(f"character modulus {chi.modulus} must be coprime to p = {p}")


def partial_sum_X(chi: DirichletChar, k: int, alpha: int, p: int, N: int) -> FieldElem:
    """sum_{x < d p^N} chi(x) mu(x + d p^N Z_p)."""
    _check_coprime(chi, p)
    M = chi.modulus * p**N
    total = FieldElem.constant(0).lift(chi.order)
    for x in range(M):
        c = char_eval(chi, x)
        if not c.is_zero():
            total = total + _mu_symbolic(k, alpha, M, x, BETA_SEED) * c
    return total


def partial_sum_pX(chi: DirichletChar, k: int, alpha: int, p: int, N: int) -> FieldElem:
    """sum over the balls of level N >= 1 inside pX: x = p y, y < d p^(N-1)."""
    _check_coprime(chi, p)
    if N < 1:
        raise ValueError("pX is a union of balls only from level 1 on")
    M = chi.modulus * p**N
    total = FieldElem.constant(0).lift(chi.order)
    for y in range(M // p):
        c = char_eval(chi, p * y)
        if not c.is_zero():
            total = total + _mu_symbolic(k, alpha, M, p * y, BETA_SEED) * c
    return total


def integral_char_X(chi: DirichletChar, k: int, alpha: int, q: QPoint | None = None, prec=None):
    """Closed form of the chi-integral over X: the mass of chi on the d balls a + dZ_p."""
    d = chi.modulus
    total = FieldElem.constant(0).lift(chi.order)
    for a in range(d):
        c = char_eval(chi, a)
        if not c.is_zero():
            total = total + _mu_symbolic(k, alpha, d, a, BETA_SEED) * c
    return _maybe_eval(total, q, prec)


def integral_char_pX(chi: DirichletChar, k: int, alpha: int, p: int, q: QPoint | None = None, prec=None):
    """chi(p) [p]^k_{q^a} / [p]_q * (X-integral at base q^p)."""
    _check_coprime(chi, p)
    inner = integral_char_X(chi, k, alpha).substitute(p)
    value = qnumber(p, alpha) ** k / qnumber(p) * inner * char_eval(chi, p)
    return _maybe_eval(value, q, prec)


def _base_procedure(chi: DirichletChar, k: int, alpha: int, prec):
    """Q |-> beta~_{k,chi,Q} evaluated at a p-adic base point."""
    G = generalized_beta(chi, alpha, k)
    return lambda Q: evaluate(G, Q, prec)


def _qpoint(q: QPoint, t, prec) -> QPoint:
    return QPoint(q_power(q, t, prec))


def integral_char_scaled(chi: DirichletChar, k: int, alpha: int, beta: int, region: str, q: QPoint, prec) -> CycPAdic:
    """Closed forms of the chi-integrals of mu_{k, q^(1/beta)}(beta x) over X or pX."""
    p = q.p
    _check_coprime(chi, p)
    if beta == 1:
        raise ValueError("beta must differ from 1")
    if gcd(beta, p) != 1 or gcd(beta, chi.modulus) != 1:
        raise NotInvertible(f"beta = {beta} must be a unit mod {p} and mod {chi.modulus}")
    f = _base_procedure(chi, k, alpha, prec)
    inv = Fraction(1, beta)
    if region == "X":
        return f(_qpoint(q, inv, prec)) * char_eval_ratio(chi, 1, beta)
    if region == "pX":
        ratio = qbracket_padic(q, p, alpha * inv, prec) ** k / qbracket_padic(q, p, inv, prec)
        return f(_qpoint(q, p * inv, prec)) * ratio * char_eval_ratio(chi, p, beta)
    raise ValueError(f"region must be 'X' or 'pX', got {region!r}")


def regularized_integral_Xstar(chi: DirichletChar, k: int, alpha: int, beta: int, q: QPoint, prec) -> CycPAdic:
    """chi-integral over X^* of the beta-regularized measure.

    mu_{k,beta,q}(U) = mu_{k,q}(U) - (1/beta) [1/beta]^k_{q^a}/[1/beta]_q mu_{k,q^(1/beta)}(beta U);
    assembled from the closed forms over X and pX with X^* = X minus pX.
    """
    p = q.p
    inv = Fraction(1, beta)
    G = generalized_beta(chi, alpha, k)
    over_X = evaluate(G, q, prec)
    over_pX = evaluate(integral_char_pX(chi, k, alpha, p), q, prec)
    scale = qbracket_padic(q, inv, alpha, prec) ** k / qbracket_padic(q, inv, 1, prec)
    scaled_X = integral_char_scaled(chi, k, alpha, beta, "X", q, prec)
    scaled_pX = integral_char_scaled(chi, k, alpha, beta, "pX", q, prec)
    return over_X - over_pX - (scaled_X - scaled_pX) * (scale * inv)


def chi_operator(chi: DirichletChar, y, k: int, alpha: int, f, prec=None):
    """chi^y f(q) = [y]^k_{q^a} / [y]_q * chi(y) * f(q^y).

    ``f`` is either a FieldElem (integer y, exact substitution) or a procedure
    QPoint -> CycPAdic (rational y with p-adic unit denominator); in the latter
    case a new procedure is returned.
    """
    y = Fraction(y)
    if isinstance(f, FieldElem):
        if y.denominator != 1 or y == 0:
            raise ValueError("symbolic chi^y needs a nonzero integer y")
        yi = int(y)
        return qnumber(yi, alpha) ** k / qnumber(yi) * f.substitute(yi) * char_eval(chi, yi)
    if prec is None:
        raise ValueError("p-adic chi^y needs a working precision")
    chi_y = char_eval_ratio(chi, y.numerator, y.denominator)

    def applied(Q: QPoint) -> CycPAdic:
        ratio = qbracket_padic(Q, y, alpha, prec) ** k / qbracket_padic(Q, y, 1, prec)
        return f(_qpoint(Q, y, prec)) * ratio * chi_y

    return applied


@dataclass
class Eq22Result:
    lhs: CycPAdic
    rhs: CycPAdic
    difference: CycPAdic
    certified_valuation: object
    working_prec: int

    @property
    def passed(self) -> bool:
        return self.certified_valuation >= self.target

    target: int = 12


def eq22_check(chi: DirichletChar, k: int, alpha: int, beta: int, q: QPoint, prec_target: int = 12, guard: int = 10) -> Eq22Result:
    """Compare the regularized X^* integral with (1 - chi^p)(1 - chi^(1/beta)/beta) beta~_{k,chi,q}."""
    p = q.p
    prec = prec_target + guard
    lhs = regularized_integral_Xstar(chi, k, alpha, beta, q, prec)
    inv = Fraction(1, beta)
    f = _base_procedure(chi, k, alpha, prec)
    op_inv = chi_operator(chi, inv, k, alpha, f, prec)
    op_p = chi_operator(chi, p, k, alpha, f, prec)
    op_p_inv = chi_operator(chi, p, k, alpha, op_inv, prec)
    rhs = f(q) - op_inv(q) * inv - op_p(q) + op_p_inv(q) * inv
    diff = lhs - rhs
    return Eq22Result(lhs, rhs, diff, diff.eff_val, prec, prec_target)
