"""Exact arithmetic in Q(zeta_m) and in the rational function field Q(zeta_m)(q).

Two value types live here:

* :class:`CycElem` -- an element of the cyclotomic field Q(zeta_m), stored by
  its rational coordinates in the power basis 1, z, ..., z^(phi(m)-1).
* :class:`FieldElem` -- an element of Q(zeta_m)(q).  Internally it is a vector
  of phi(m) reduced rational functions over Q (the coordinates with respect to
  the same power basis, now over Q(q)).  Each coordinate is num/den with
  gcd(num, den) = 1 and den monic, so equality is decided by comparing
  coordinates.  For m in {1, 2} this is exactly the reduced num/den form.

Polynomial arithmetic over Q is delegated to FLINT (``python-flint``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from flint import fmpq, fmpq_poly, fmpz_poly

from .errors import DivisionByZero, PoleAtOne

__all__ = [
    "CycElem",
    "FieldElem",
    "cyclotomic_coeffs",
    "euler_phi",
    "qnumber",
    "qbracket",
    "monomial",
    "substitute_q_power",
    "eval_at_one",
    "field_arith",
    "poly_str",
]

_ZERO = fmpq_poly([])
_ONE = fmpq_poly([1])


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return sum(1 for j in range(1, m + 1) if gcd(j, m) == 1)


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending."""
    return tuple(int(c) for c in fmpz_poly.cyclotomic(m).coeffs())


@lru_cache(maxsize=None)
def _cyclotomic_poly(m: int) -> fmpq_poly:
    return fmpq_poly(list(cyclotomic_coeffs(m)))


def _to_fraction(c) -> Fraction:
    if isinstance(c, fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def _fmpq(x) -> fmpq:
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _reduce_power_basis(coeffs: list, m: int, zero):
    """Reduce sum c_j z^j (any length) modulo Phi_m, returning phi(m) coordinates."""
    phi = cyclotomic_coeffs(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for top in range(len(c) - 1, deg - 1, -1):
        lead = c[top]
        if lead == 0:
            continue
        # z^deg = -sum_{i<deg} phi_i z^i
        for i in range(deg):
            if phi[i]:
                c[top - deg + i] = c[top - deg + i] - lead * phi[i]
        c[top] = zero
    c = c[:deg] + [zero] * (deg - len(c))
    return c


def _lift_coeffs(coords: list, m: int, m_new: int, zero):
    step = m_new // m
    spread = [zero] * ((len(coords) - 1) * step + 1)
    for j, c in enumerate(coords):
        spread[j * step] = c
    return _reduce_power_basis(spread, m_new, zero)


# ---------------------------------------------------------------------------
# Q(zeta_m)


class CycElem:
    """Element of Q(zeta_m) in the power basis of zeta_m.

    >>> z = CycElem.zeta_power(4, 1)
    >>> z * z == -1
    True
    """

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords):
        if m < 1:
            raise ValueError("cyclotomic order must be positive")
        coords = [Fraction(c) for c in coords]
        self.m = m
        self.coords = tuple(_reduce_power_basis(coords, m, Fraction(0))) if len(
            coords
        ) != euler_phi(m) else tuple(coords)

    @classmethod
    def rational(cls, x, m: int = 1) -> "CycElem":
        return cls(m, [Fraction(x)] + [Fraction(0)] * (euler_phi(m) - 1))

    @classmethod
    def zeta_power(cls, m: int, e: int) -> "CycElem":
        e %= m
        return cls(m, [Fraction(0)] * e + [Fraction(1)])

    def lift(self, m_new: int) -> "CycElem":
        if m_new == self.m:
            return self
        if m_new % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{m_new})")
        return CycElem(m_new, _lift_coeffs(list(self.coords), self.m, m_new, Fraction(0)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def _poly(self) -> fmpq_poly:
        return fmpq_poly([_fmpq(c) for c in self.coords])

    @staticmethod
    def _coerce(a, b):
        if not isinstance(b, CycElem):
            if isinstance(b, (int, Rational)):
                b = CycElem.rational(b, a.m)
            else:
                return None, None
        if a.m != b.m:
            m = _lcm(a.m, b.m)
            a, b = a.lift(m), b.lift(m)
        return a, b

    def __add__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return CycElem(a.m, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.m, [-x for x in self.coords])

    def __sub__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return CycElem(a.m, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        if euler_phi(a.m) == 1:
            return CycElem(a.m, [a.coords[0] * b.coords[0]])
        prod = (a._poly() * b._poly()) % _cyclotomic_poly(a.m)
        return CycElem(a.m, _pad([_to_fraction(c) for c in prod.coeffs()], a.m))

    __rmul__ = __mul__

    def inverse(self) -> "CycElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_m)")
        if euler_phi(self.m) == 1:
            return CycElem(self.m, [1 / self.coords[0]])
        g, s, _ = self._poly().xgcd(_cyclotomic_poly(self.m))
        s = s / g.coeffs()[0]
        return CycElem(self.m, _pad([_to_fraction(c) for c in s.coeffs()], self.m))

    def __truediv__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycElem.rational(1, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return a.coords == b.coords

    __hash__ = None

    def __repr__(self):
        return f"CycElem({self.m}, {self})"

    def __str__(self):
        terms = []
        for j in range(len(self.coords) - 1, -1, -1):
            c = self.coords[j]
            if c:
                terms.append((c, "z" if j == 1 else (f"z^{j}" if j else "")))
        return _join_terms(terms)


def _pad(coords: list, m: int) -> list:
    return coords + [Fraction(0)] * (euler_phi(m) - len(coords))


# ---------------------------------------------------------------------------
# Q(q)


class _RatFunc:
    """Reduced quotient of two polynomials over Q; den monic, gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: fmpq_poly, den: fmpq_poly = _ONE, reduced: bool = False):
        if not reduced:
            if den == 0:
                raise DivisionByZero("zero denominator")
            if num == 0:
                num, den = _ZERO, _ONE
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num, den = num // g, den // g
                lead = den.coeffs()[-1]
                if lead != 1:
                    inv = 1 / lead
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num == 0

    def __eq__(self, other):
        if not isinstance(other, _RatFunc):
            return self.den == 1 and self.num == other
        return self.num == other.num and self.den == other.den

    def __add__(self, other: "_RatFunc") -> "_RatFunc":
        if other.num == 0:
            return self
        if self.num == 0:
            return other
        if self.den == other.den:
            return _RatFunc(self.num + other.num, self.den)
        if other.den == 1:
            return _RatFunc(self.num + other.num * self.den, self.den, reduced=True)
        if self.den == 1:
            return _RatFunc(self.num * other.den + other.num, other.den, reduced=True)
        g = self.den.gcd(other.den)
        a = other.den // g
        b = self.den // g
        return _RatFunc(self.num * a + other.num * b, self.den * a)

    def __neg__(self):
        return _RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _RatFunc(_ZERO)
            return _RatFunc(self.num * _fmpq(other), self.den, reduced=True)
        if self.num == 0 or other.num == 0:
            return _RatFunc(_ZERO)
        a, b, c, d = self.num, self.den, other.num, other.den
        if d.degree() > 0:
            g = a.gcd(d)
            if g.degree() > 0:
                a, d = a // g, d // g
        if b.degree() > 0:
            g = c.gcd(b)
            if g.degree() > 0:
                c, b = c // g, b // g
        # a/d and c/b coprime crosswise; b, d monic up to unit factors from //
        den = b * d
        lead = den.coeffs()[-1]
        num = a * c
        if lead != 1:
            inv = 1 / lead
            num, den = num * inv, den * inv
        return _RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "_RatFunc":
        if self.num == 0:
            raise DivisionByZero("division by the zero rational function")
        return _RatFunc(self.den, self.num)

    def substitute(self, t: int) -> "_RatFunc":
        if t == 1 or self.num.degree() <= 0 and self.den.degree() <= 0:
            return self
        if t > 0:
            return _RatFunc(_spread(self.num, t), _spread(self.den, t), reduced=True)
        s = -t
        top = max(self.num.degree(), self.den.degree())
        return _RatFunc(_reverse_spread(self.num, s, top), _reverse_spread(self.den, s, top))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise DivisionByZero("denominator vanishes at the evaluation point")
        return self.num(x) / d


def _spread(f: fmpq_poly, t: int) -> fmpq_poly:
    c = f.coeffs()
    if len(c) <= 1:
        return f
    out = [0] * ((len(c) - 1) * t + 1)
    for j, cj in enumerate(c):
        out[j * t] = cj
    return fmpq_poly(out)


def _reverse_spread(f: fmpq_poly, s: int, top: int) -> fmpq_poly:
    # f(q^-s) * q^(s*top)
    c = f.coeffs()
    out = [0] * (top * s + 1)
    for j, cj in enumerate(c):
        out[(top - j) * s] = cj
    return fmpq_poly(out)


_RZERO = _RatFunc(_ZERO)
_RONE = _RatFunc(_ONE)


# ---------------------------------------------------------------------------
# Q(zeta_m)(q)


class FieldElem:
    """Element of Q(zeta_m)(q), immutable, in canonical form.

    >>> q = FieldElem.q()
    >>> (q**2 - 1) / (q - 1) == q + 1
    True
    """

    __slots__ = ("m", "_coords")

    def __init__(self, coords, m: int = 1):
        self.m = m
        self._coords = tuple(coords)

    # constructors ---------------------------------------------------------
    @classmethod
    def _from_rat(cls, r: _RatFunc, m: int = 1) -> "FieldElem":
        return cls((r,) + (_RZERO,) * (euler_phi(m) - 1), m)

    @classmethod
    def constant(cls, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, CycElem):
            return cls(tuple(_RatFunc(fmpq_poly([_fmpq(c)])) for c in x.coords), x.m)
        return cls._from_rat(_RatFunc(fmpq_poly([_fmpq(x)])))

    @classmethod
    def q(cls) -> "FieldElem":
        return cls._from_rat(_RatFunc(fmpq_poly([0, 1]), reduced=True))

    @classmethod
    def from_polys(cls, num, den=(1,)) -> "FieldElem":
        """Build num/den from ascending rational coefficient lists."""
        n = fmpq_poly([_fmpq(c) for c in num])
        d = fmpq_poly([_fmpq(c) for c in den])
        return cls._from_rat(_RatFunc(n, d))

    @classmethod
    def from_coordinates(cls, coords: list["FieldElem"], m: int) -> "FieldElem":
        """sum_j coords[j] * zeta_m^j for rational-function coordinates."""
        rats = []
        for c in coords:
            c = FieldElem.constant(c)
            if not c.is_rational():
                raise ValueError("coordinates must lie in Q(q)")
            rats.append(c._coords[0])
        return cls(_reduce_power_basis(rats, m, _RZERO), m)

    # structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coords)

    def is_rational(self) -> bool:
        """True when the value lies in Q(q)."""
        return all(c.is_zero() for c in self._coords[1:])

    def coordinates(self) -> list["FieldElem"]:
        return [FieldElem._from_rat(c) for c in self._coords]

    def rational_parts(self):
        """Coordinates as (num, den) pairs of ascending Fraction lists."""
        return [
            ([_to_fraction(c) for c in r.num.coeffs()], [_to_fraction(c) for c in r.den.coeffs()])
            for r in self._coords
        ]

    @property
    def den(self) -> fmpq_poly:
        d = _ONE
        for c in self._coords:
            if not c.is_zero() and c.den != d:
                d = d * (c.den // d.gcd(c.den))
        lead = d.coeffs()[-1]
        return d / lead if lead != 1 else d

    @property
    def num(self) -> list[CycElem]:
        """Numerator over :attr:`den` as ascending CycElem coefficients."""
        d = self.den
        parts = [
            [_to_fraction(x) for x in (c.num * (d // c.den)).coeffs()] if not c.is_zero() else []
            for c in self._coords
        ]
        length = max((len(p) for p in parts), default=0)
        return [
            CycElem(self.m, [p[i] if i < len(p) else Fraction(0) for p in parts])
            for i in range(length)
        ]

    def lift(self, m_new: int) -> "FieldElem":
        if m_new == self.m:
            return self
        if m_new % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{m_new})")
        return FieldElem(_lift_coeffs(list(self._coords), self.m, m_new, _RZERO), m_new)

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(a, b):
        if not isinstance(b, FieldElem):
            if isinstance(b, (int, Rational, CycElem)):
                b = FieldElem.constant(b)
            else:
                return None, None
        if a.m != b.m:
            m = _lcm(a.m, b.m)
            a, b = a.lift(m), b.lift(m)
        return a, b

    def __add__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return FieldElem([x + y for x, y in zip(a._coords, b._coords)], a.m)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem([-c for c in self._coords], self.m)

    def __sub__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return FieldElem([x - y for x, y in zip(a._coords, b._coords)], a.m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElem([c * other for c in self._coords], self.m)
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        if b.is_rational():
            s = b._coords[0]
            return FieldElem([c * s for c in a._coords], a.m)
        if a.is_rational():
            s = a._coords[0]
            return FieldElem([s * c for c in b._coords], a.m)
        n = len(a._coords)
        prod = [_RZERO] * (2 * n - 1)
        for i, x in enumerate(a._coords):
            if x.is_zero():
                continue
            for j, y in enumerate(b._coords):
                if not y.is_zero():
                    prod[i + j] = prod[i + j] + x * y
        return FieldElem(_reduce_power_basis(prod, a.m, _RZERO), a.m)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("division by the zero field element")
        if self.is_rational():
            return FieldElem._from_rat(self._coords[0].inverse(), self.m)
        return self._solve_inverse()

    def _solve_inverse(self) -> "FieldElem":
        # Gaussian elimination on the multiplication-by-self matrix over Q(q)
        n = len(self._coords)
        cols = []
        for j in range(n):
            basis = FieldElem._from_rat(_RONE, self.m) * FieldElem.constant(CycElem.zeta_power(self.m, j))
            cols.append(list((self * basis)._coords))
        rows = [[cols[j][i] for j in range(n)] + [_RONE if i == 0 else _RZERO] for i in range(n)]
        for col in range(n):
            pivot = next(r for r in range(col, n) if not rows[r][col].is_zero())
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inv = rows[col][col].inverse()
            rows[col] = [x * inv for x in rows[col]]
            for r in range(n):
                if r != col and not rows[r][col].is_zero():
                    f = rows[r][col]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
        return FieldElem([rows[i][n] for i in range(n)], self.m)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_rational():
            r = self._coords[0]
            return FieldElem._from_rat(_RatFunc(r.num**e, r.den**e, reduced=True), self.m)
        result = FieldElem.constant(1).lift(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        a, b = self._coerce(self, other)
        if a is None:
            return NotImplemented
        return a._coords == b._coords

    __hash__ = None

    # q-structure ----------------------------------------------------------
    def substitute(self, t: int) -> "FieldElem":
        """Replace q by q^t (t a nonzero integer)."""
        if t == 0:
            raise ValueError("substitution exponent must be nonzero")
        return FieldElem([c.substitute(t) for c in self._coords], self.m)

    def eval_at_one(self) -> CycElem:
        coords = []
        for c in self._coords:
            d = c.den(1)
            if d == 0:
                raise PoleAtOne(f"{self} has a pole at q = 1")
            coords.append(_to_fraction(c.num(1) / d))
        return CycElem(self.m, coords)

    def eval_rational(self, x) -> CycElem:
        """Exact value at a rational point q = x."""
        x = _fmpq(x)
        return CycElem(self.m, [_to_fraction(c(x)) for c in self._coords])

    def degree_bound(self) -> int:
        return max(max(c.num.degree(), c.den.degree()) for c in self._coords)

    # rendering ------------------------------------------------------------
    def __str__(self):
        den = self.den
        num = self.num
        num_s = _cyc_poly_str(num)
        if den == 1:
            return num_s
        return f"({num_s})/({poly_str([_to_fraction(c) for c in den.coeffs()])})"

    def __repr__(self):
        return f"FieldElem[m={self.m}]({self})"


# ---------------------------------------------------------------------------
# rendering helpers


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join_terms(terms) -> str:
    """terms: list of (coefficient, monomial-string) in print order."""
    if not terms:
        return "0"
    out = []
    for i, (c, mono) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_coef_str(a)}*{mono}"
        else:
            body = _coef_str(a)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def _q_mono(j: int) -> str:
    return "" if j == 0 else ("q" if j == 1 else f"q^{j}")


def poly_str(coeffs) -> str:
    """Render ascending rational coefficients in descending degree."""
    terms = [(Fraction(c), _q_mono(j)) for j, c in reversed(list(enumerate(coeffs))) if c]
    return _join_terms(terms)


def _cyc_poly_str(coeffs: list[CycElem]) -> str:
    if all(c.is_rational() for c in coeffs):
        return poly_str([c.coords[0] for c in coeffs])
    parts = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c.is_zero():
            continue
        mono = _q_mono(j)
        if c.is_rational():
            parts.append(_join_terms([(c.coords[0], mono)]))
        else:
            parts.append(f"({c})*{mono}" if mono else f"({c})")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# public operations


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Apply ``op`` in {"add", "sub", "mul", "div"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def monomial(e: int) -> FieldElem:
    """q^e for any integer e."""
    if e >= 0:
        return FieldElem._from_rat(_RatFunc(fmpq_poly([0] * e + [1]), reduced=True))
    return FieldElem._from_rat(_RatFunc(_ONE, fmpq_poly([0] * (-e) + [1]), reduced=True))


@lru_cache(maxsize=4096)
def qnumber(x: int, c: int = 1) -> FieldElem:
    """[x]_{q^c} = (1 - q^(c x)) / (1 - q^c) for x >= 0."""
    if x < 0:
        raise ValueError("qnumber needs x >= 0; use qbracket for negative x")
    if c == 0:
        raise ValueError("base exponent must be nonzero")
    if x == 0:
        return FieldElem.constant(0)
    if c > 0:
        coeffs = [0] * (c * (x - 1) + 1)
        for i in range(x):
            coeffs[c * i] = 1
        return FieldElem._from_rat(_RatFunc(fmpq_poly(coeffs), reduced=True))
    s = -c
    coeffs = [0] * (s * (x - 1) + 1)
    for i in range(x):
        coeffs[s * i] = 1
    return FieldElem._from_rat(
        _RatFunc(fmpq_poly(coeffs), fmpq_poly([0] * (s * (x - 1)) + [1]), reduced=True)
    )


def qbracket(x: int, c: int = 1) -> FieldElem:
    """[x]_{q^c} for any integer x (negative x allowed)."""
    if x >= 0:
        return qnumber(x, c)
    return -monomial(c * x) * qnumber(-x, c)


def substitute_q_power(f: FieldElem, t: int) -> FieldElem:
    return f.substitute(t)


def eval_at_one(f: FieldElem) -> CycElem:
    return f.eval_at_one()
