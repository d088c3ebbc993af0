"""q-Bernoulli numbers and polynomials from their umbral recurrences.

All four families share one linear solver.  Expanding ``q^s (q^c B + 1)^n``
umbrally gives, for n >= 1,

    q^s * sum_{j<=n} C(n, j) q^(c j) B_j - B_n = rhs_n,

which is linear in B_n with coefficient ``q^(s + c n) - 1``:

============  =====  =====  =============  ===============
family        s      c      B_0            rhs_1
============  =====  =====  =============  ===============
xi            0      1      1              1
carlitz       1      1      1              1
extended(h)   h      1      h / [h]_q      1
weighted(a)   1      a      1              a / [a]_q
============  =====  =====  =============  ===============

rhs_n is 0 for n > 1.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DegenerateEquation, PoleAtOne
from .exactfield import FieldElem, monomial, qbracket, qnumber
from .padic import PAdic, QPoint, eval_field_elem, q_power

__all__ = [
    "FAMILIES",
    "xi",
    "carlitz_beta",
    "extended_beta",
    "weighted_beta",
    "family_value",
    "recurrence_residual",
    "weighted_beta_poly",
    "weighted_beta_at",
    "scaled_poly_at_ratio",
    "poly_at_ratio",
    "weighted_beta_poly_padic",
    "distribution_check",
    "family_table",
]

FAMILIES = ("xi", "carlitz", "extended", "weighted")

_tables: dict[tuple, list[FieldElem]] = {}
_locks: dict[tuple, threading.Lock] = {}
_registry_lock = threading.Lock()


def _recurrence(kind: str, param: int | None):
    """(prefactor exponent s, inner scale c, seed, rhs at n = 1)."""
    if kind == "xi":
        return 0, 1, FieldElem.constant(1), FieldElem.constant(1)
    if kind == "carlitz":
        return 1, 1, FieldElem.constant(1), FieldElem.constant(1)
    if kind == "extended":
        if not param:
            raise ValueError("extended family needs h != 0")
        return param, 1, param / qbracket(param), FieldElem.constant(1)
    if kind == "weighted":
        if param is None or param < 1:
            raise ValueError("weight alpha must be a positive integer")
        return 1, param, FieldElem.constant(1), param / qnumber(param)
    raise ValueError(f"unknown family {kind!r}")


def _key(kind, param):
    return (kind, param if kind in ("extended", "weighted") else None)


def _umbral_sum(entries, n, s, c) -> FieldElem:
    # q^s * sum_{j<n} C(n,j) q^(c j) B_j, with the polynomial part kept exact
    acc = FieldElem.constant(0)
    for j in range(n):
        acc = acc + entries[j] * (monomial(c * j) * comb(n, j))
    return monomial(s) * acc


def family_value(kind: str, param: int | None, n: int) -> FieldElem:
    """n-th member of a family, solving the recurrence up to n (memoized)."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    key = _key(kind, param)
    with _registry_lock:
        lock = _locks.setdefault(key, threading.Lock())
    with lock:
        entries = _tables.get(key)
        if entries is None:
            s, c, seed, _ = _recurrence(*key)
            entries = _tables[key] = [seed]
        if n < len(entries):
            return entries[n]
        s, c, _, rhs1 = _recurrence(*key)
        for k in range(len(entries), n + 1):
            if s + c * k == 0:
                raise DegenerateEquation(
                    f"{kind} family (parameter {param}): coefficient of entry {k} vanishes"
                )
            rhs = rhs1 if k == 1 else FieldElem.constant(0)
            lead = monomial(s + c * k) - 1
            entries.append((rhs - _umbral_sum(entries, k, s, c)) / lead)
        return entries[n]


def xi(k: int) -> FieldElem:
    return family_value("xi", None, k)


def carlitz_beta(k: int) -> FieldElem:
    return family_value("carlitz", None, k)


def extended_beta(h: int, k: int) -> FieldElem:
    return family_value("extended", h, k)


def weighted_beta(alpha: int, n: int) -> FieldElem:
    return family_value("weighted", alpha, n)


def recurrence_residual(kind: str, param: int | None, n: int) -> FieldElem:
    """Plug the table back into the umbral equation at index n >= 1."""
    if n < 1:
        raise ValueError("the umbral equation starts at n = 1")
    s, c, _, rhs1 = _recurrence(*_key(kind, param))
    entries = [family_value(kind, param, j) for j in range(n + 1)]
    full = FieldElem.constant(0)
    for j in range(n + 1):
        full = full + entries[j] * (monomial(c * j) * comb(n, j))
    rhs = rhs1 if n == 1 else 0
    return monomial(s) * full - entries[n] - rhs


# ---------------------------------------------------------------------------
# polynomials


def weighted_beta_poly(alpha: int, n: int, x: int) -> FieldElem:
    """beta~_n(x) = sum_l C(n,l) [x]_{q^a}^(n-l) q^(a l x) beta~_l at integer x."""
    bracket = qbracket(x, alpha)
    total = FieldElem.constant(0)
    for l in range(n + 1):
        total = total + (bracket ** (n - l)) * monomial(alpha * l * x) * weighted_beta(alpha, l) * comb(n, l)
    return total


@lru_cache(maxsize=2048)
def weighted_beta_at(alpha: int, n: int, base: int) -> FieldElem:
    """beta~_n at base q^base."""
    return weighted_beta(alpha, n).substitute(base)


@lru_cache(maxsize=8192)
def scaled_poly_at_ratio(alpha: int, n: int, c: int, M: int) -> FieldElem:
    """[M]_{q^a}^n * beta~_{n, q^M}(c / M), written without fractional powers.

    Uses [c/M]_{(q^M)^a} = [c]_{q^a} / [M]_{q^a} and (q^M)^(a l c/M) = q^(a l c).
    """
    cb = qbracket(c, alpha)
    mb = qnumber(M, alpha)
    total = FieldElem.constant(0)
    for l in range(n + 1):
        poly = (cb ** (n - l)) * (mb**l) * monomial(alpha * l * c) * comb(n, l)
        total = total + poly * weighted_beta_at(alpha, l, M)
    return total


def poly_at_ratio(alpha: int, n: int, c: int, M: int) -> FieldElem:
    """beta~_{n, q^M}(c / M)."""
    return scaled_poly_at_ratio(alpha, n, c, M) / qnumber(M, alpha) ** n


def weighted_beta_poly_padic(alpha: int, n: int, x, q: QPoint, prec) -> PAdic:
    """beta~_n(x) at a p-adic base q for x in Z_p (Fraction or PAdic)."""
    if isinstance(x, PAdic):
        # q^(t + p^M s) = q^t (1 + O(p^(M + v(q-1))))
        cap = x.prec + (q.q - 1).eff_val
        x = x.value
    else:
        cap = prec
    x = Fraction(x)
    p = q.p
    qa = q_power(q, alpha, prec)
    bracket = (1 - q_power(q, alpha * x, prec)) / (1 - qa)
    total = PAdic(p, 0)
    for l in range(n + 1):
        term = bracket ** (n - l) * q_power(q, alpha * l * x, prec)
        total = total + term * eval_field_elem(weighted_beta(alpha, l), q) * comb(n, l)
    return total.with_prec(min(prec, cap))


def distribution_check(alpha: int, n: int, d: int, x: int = 0) -> FieldElem:
    """LHS - RHS of the distribution relation at integer x; zero iff it holds."""
    lhs = weighted_beta_poly(alpha, n, x)
    acc = FieldElem.constant(0)
    for a in range(d):
        acc = acc + monomial(a) * scaled_poly_at_ratio(alpha, n, x + a, d)
    # [d]^n/[d]_q * sum q^a beta~_{n,q^d}((x+a)/d); the [d]^n is inside `scaled`
    return lhs - acc / qnumber(d)


def family_table(kind: str, param: int | None, max_n: int, x: int | None = None) -> list[dict]:
    """Rows (family, parameter, n, canonical string, limit at q -> 1)."""
    rows = []
    for n in range(max_n + 1):
        if x is None:
            value = family_value(kind, param, n)
        else:
            value = weighted_beta_poly(param, n, x)
        try:
            limit = str(value.eval_at_one())
        except PoleAtOne:
            limit = "pole"
        rows.append({"family": kind, "param": param, "n": n, "value": str(value), "limit": limit})
    return rows
