"""Finite-precision p-adic numbers with certified absolute precision.

A :class:`PAdic` is an exact rational ``value`` plus an absolute precision
``prec``: the true number lies in ``value + p^prec Z_p``.  ``prec`` may be
``math.inf`` for exactly known values.  Finite-precision values are kept in a
canonical representative ``p^v * r`` with ``0 <= r < p^(prec - v)``, which
keeps the integers small in long computations without changing the class.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, NotPAdicInteger, PrecisionLoss
from .exactfield import CycElem, FieldElem, _lift_coeffs, _reduce_power_basis, euler_phi

__all__ = [
    "vp",
    "PAdic",
    "QPoint",
    "CycPAdic",
    "padic_arith",
    "q_power",
    "qbracket_padic",
    "eval_field_elem",
    "evaluate",
]

INF = math.inf


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


class PAdic:
    __slots__ = ("p", "value", "prec")

    def __init__(self, p: int, value=0, prec=INF):
        self.p = p
        self.prec = prec
        value = Fraction(value)
        if prec == INF or value == 0:
            self.value = value
            return
        v = vp(value, p)
        if v >= prec:
            self.value = Fraction(0)
            return
        num, den = value.numerator, value.denominator
        if v >= 0:
            num //= p**v
            scale = p**v
        else:
            den //= p ** (-v)
            scale = Fraction(1, p ** (-v))
        mod = p ** (prec - v)
        self.value = Fraction((num * pow(den, -1, mod)) % mod) * scale

    # queries --------------------------------------------------------------
    @property
    def valuation(self):
        return vp(self.value, self.p)

    @property
    def eff_val(self):
        """Certified lower bound on the true valuation."""
        return min(self.valuation, self.prec)

    def is_exact(self) -> bool:
        return self.prec == INF

    def is_zero(self) -> bool:
        """True when the value is indistinguishable from zero."""
        return self.value == 0

    def with_prec(self, prec) -> "PAdic":
        if prec >= self.prec:
            return self
        return PAdic(self.p, self.value, prec)

    def residue(self, k: int | None = None) -> int:
        """Integer representative mod p^k (k defaults to prec)."""
        k = self.prec if k is None else k
        if self.valuation < 0:
            raise ValueError("value is not a p-adic integer")
        mod = self.p**k
        return (self.value.numerator * pow(self.value.denominator, -1, mod)) % mod

    def digits(self) -> list[int]:
        """Base-p digits from p^valuation up to p^(prec-1)."""
        if self.value == 0 or self.prec == INF:
            return []
        v = self.valuation
        unit = self.value / Fraction(self.p) ** v
        n = self.prec - v
        r = (unit.numerator * pow(unit.denominator, -1, self.p**n)) % self.p**n
        out = []
        for _ in range(n):
            r, d = divmod(r, self.p)
            out.append(d)
        return out

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Rational)):
            return PAdic(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PAdic(self.p, self.value + o.value, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return PAdic(self.p, -self.value, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PAdic(self.p, self.value - o.value, min(self.prec, o.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec + o.eff_val, o.prec + self.eff_val)
        return PAdic(self.p, self.value * o.value, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            if o.prec == INF:
                raise DivisionByZero("division by an exact p-adic zero")
            raise PrecisionLoss(f"divisor is zero to precision O({self.p}^{o.prec})")
        vb = o.valuation
        prec = min(self.prec - vb, o.prec + self.eff_val - 2 * vb)
        return PAdic(self.p, self.value / o.value, prec)

    def __rtruediv__(self, other):
        return PAdic(self.p, other) / self

    def __pow__(self, e: int):
        if e < 0:
            return 1 / (self**-e)
        result = PAdic(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value and self.prec == o.prec

    def __hash__(self):
        return hash((self.p, self.value, self.prec))

    def __repr__(self):
        return f"PAdic({self.p}, {self.value}, prec={self.prec})"

    def __str__(self):
        if self.prec == INF:
            return str(self.value)
        return f"{self.value} + O({self.p}^{self.prec})"

    def expansion(self) -> str:
        """Digit expansion d0 + d1*p + ... truncated at the precision."""
        if self.prec == INF:
            return str(self.value)
        tail = f"O({self.p}^{self.prec})"
        if self.value == 0:
            return tail
        v = self.valuation
        terms = []
        for i, d in enumerate(self.digits()):
            if d == 0:
                continue
            e = v + i
            mono = "" if e == 0 else (f"{self.p}" if e == 1 else f"{self.p}^{e}")
            terms.append(str(d) if not mono else (mono if d == 1 else f"{d}*{mono}"))
        return " + ".join(terms + [tail])

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "prec": None if self.prec == INF else self.prec,
            "digits": self.expansion(),
        }


def padic_arith(a: PAdic, b: PAdic, op: str) -> PAdic:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class QPoint:
    """A base point q in Q_p with |1 - q|_p < 1."""

    __slots__ = ("q",)

    def __init__(self, q: PAdic):
        if (q - 1).eff_val < 1:
            raise ValueError(f"need v_p(q - 1) >= 1, got q = {q}")
        self.q = q

    @classmethod
    def of(cls, p: int, value, prec=INF) -> "QPoint":
        return cls(PAdic(p, value, prec))

    @property
    def p(self) -> int:
        return self.q.p

    def __repr__(self):
        return f"QPoint({self.q!r})"


def q_power(q: QPoint, t, target_prec) -> PAdic:
    """q^t for t in Z_p via the binomial series in (q - 1)."""
    p = q.p
    t = Fraction(t)
    if t.denominator % p == 0:
        raise NotPAdicInteger(f"exponent {t} is not in Z_{p}")
    if t.denominator == 1 and t >= 0:
        return (q.q ** int(t)).with_prec(target_prec)
    h = q.q - 1
    if h.value == 0 and h.prec == INF:
        return PAdic(p, 1)
    v = h.eff_val
    # terms j > K have valuation >= (K + 1) v >= target
    K = max(math.ceil(target_prec / v) - 1, 0)
    total = PAdic(p, 1)
    binom = Fraction(1)
    hj = PAdic(p, 1)
    for j in range(1, K + 1):
        binom = binom * (t - j + 1) / j
        hj = hj * h
        total = total + hj * binom
    return total.with_prec(min(target_prec, total.prec))


def qbracket_padic(q: QPoint, y, c, prec) -> PAdic:
    """[y]_{q^c} = (1 - q^(c y)) / (1 - q^c) for p-adic integers y, c."""
    y, c = Fraction(y), Fraction(c)
    if y == 0:
        return PAdic(q.p, 0)
    return (1 - q_power(q, c * y, prec)) / (1 - q_power(q, c, prec))


def _horner(coeffs, x: PAdic) -> PAdic:
    acc = PAdic(x.p, 0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_coordinate(num, den, q: PAdic) -> PAdic:
    d = _horner(den, q)
    return _horner(num, q) / d


def eval_field_elem(f: FieldElem, q: QPoint, prec=None) -> PAdic:
    """Evaluate a rational function of q at a p-adic point by Horner's rule."""
    if euler_phi(f.m) != 1 and not f.is_rational():
        raise ValueError("eval_field_elem needs rational coefficients; use evaluate()")
    num, den = f.rational_parts()[0]
    out = _eval_coordinate(num, den, q.q)
    return out if prec is None else out.with_prec(prec)


class CycPAdic:
    """Element of Q_p[z]/Phi_m(z): phi(m) PAdic coordinates."""

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords):
        self.m = m
        self.coords = tuple(coords)

    @classmethod
    def from_padic(cls, x: PAdic, m: int = 1) -> "CycPAdic":
        return cls(m, [x] + [PAdic(x.p, 0)] * (euler_phi(m) - 1))

    @property
    def p(self) -> int:
        return self.coords[0].p

    @property
    def prec(self):
        return min(c.prec for c in self.coords)

    @property
    def eff_val(self):
        """Certified lower bound on the sup-norm valuation of the coordinates."""
        return min(c.eff_val for c in self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def lift(self, m_new: int) -> "CycPAdic":
        if m_new == self.m:
            return self
        zero = PAdic(self.p, 0)
        return CycPAdic(m_new, _lift_coeffs(list(self.coords), self.m, m_new, zero))

    def _coerce(self, other):
        if isinstance(other, CycPAdic):
            if other.m != self.m:
                m = self.m * other.m // math.gcd(self.m, other.m)
                return self.lift(m), other.lift(m)
            return self, other
        if isinstance(other, (PAdic, int, Rational)):
            x = other if isinstance(other, PAdic) else PAdic(self.p, other)
            return self, CycPAdic.from_padic(x, self.m)
        if isinstance(other, CycElem):
            a = self.lift(self.m * other.m // math.gcd(self.m, other.m))
            c = other.lift(a.m)
            return a, CycPAdic(a.m, [PAdic(self.p, x) for x in c.coords])
        return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycPAdic(a.m, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycPAdic(self.m, [-c for c in self.coords])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycPAdic(a.m, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (PAdic, int, Rational)):
            return CycPAdic(self.m, [c * other for c in self.coords])
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        n = len(a.coords)
        zero = PAdic(a.p, 0)
        prod = [zero] * (2 * n - 1)
        for i, x in enumerate(a.coords):
            for j, y in enumerate(b.coords):
                prod[i + j] = prod[i + j] + x * y
        return CycPAdic(a.m, _reduce_power_basis(prod, a.m, zero))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (PAdic, int, Rational)):
            return CycPAdic(self.m, [c / other for c in self.coords])
        return NotImplemented

    def with_prec(self, prec) -> "CycPAdic":
        return CycPAdic(self.m, [c.with_prec(prec) for c in self.coords])

    def __repr__(self):
        return f"CycPAdic({self.m}, {list(self.coords)!r})"

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return " + ".join(
            f"({c})" + ("" if j == 0 else ("*z" if j == 1 else f"*z^{j}"))
            for j, c in enumerate(self.coords)
        )

    def to_json(self) -> dict:
        return {"m": self.m, "coords": [c.to_json() for c in self.coords]}


def evaluate(f: FieldElem, q: QPoint, prec=None) -> CycPAdic:
    """Evaluate any element of Q(zeta_m)(q) coordinatewise at a p-adic point."""
    coords = [_eval_coordinate(num, den, q.q) for num, den in f.rational_parts()]
    if prec is not None:
        coords = [c.with_prec(prec) for c in coords]
    return CycPAdic(f.m, coords)

