"""Truncated Riemann sums of the p-adic q-integral and Witt-formula convergence.

Only integrands of the form chi(x) [x + s]^n_{q^alpha} are supported.  In the
numeric backend q must be an exactly known rational, and sums are formed with
exact rationals; valuations of differences are therefore exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .characters import DirichletChar, char_eval
from .exactfield import CycElem, FieldElem, monomial, qbracket, qnumber
from .padic import INF, CycPAdic, PAdic, QPoint, vp
from .qbernoulli import weighted_beta_poly

__all__ = ["RiemannSumSpec", "riemann_sum", "riemann_sum_exact", "WittProfile", "witt_convergence"]


@dataclass(frozen=True)
class RiemannSumSpec:
    p: int
    N: int
    n: int
    alpha: int = 1
    shift: int = 0
    chi: DirichletChar | None = None
    q: QPoint | None = None

    def __post_init__(self):
        if self.N < 0 or self.n < 0:
            raise ValueError("level and power must be nonnegative")
        if self.alpha < 1:
            raise ValueError("weight must be positive")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")


def _symbolic(spec: RiemannSumSpec) -> FieldElem:
    total = FieldElem.constant(0)
    for x in range(spec.p**spec.N):
        c = CycElem.rational(1) if spec.chi is None else char_eval(spec.chi, x)
        if c.is_zero():
            continue
        total = total + qbracket(x + spec.shift, spec.alpha) ** spec.n * monomial(x) * c
    return total / qnumber(spec.p**spec.N)


def riemann_sum_exact(spec: RiemannSumSpec, q) -> CycElem:
    """The level-N sum at a rational q, as an exact element of Q(zeta_m)."""
    q = Fraction(q)
    m = 1 if spec.chi is None else spec.chi.order
    qa = q**spec.alpha
    total = CycElem.rational(0, m)
    qx = Fraction(1)
    for x in range(spec.p**spec.N):
        c = CycElem.rational(1, m) if spec.chi is None else char_eval(spec.chi, x)
        if not c.is_zero():
            bracket = (1 - qa ** (x + spec.shift)) / (1 - qa)
            total = total + c * (bracket**spec.n * qx)
        qx *= q
    size = (1 - q ** (spec.p**spec.N)) / (1 - q)
    return total * (1 / size)


def riemann_sum(spec: RiemannSumSpec, prec=INF):
    """(1/[p^N]_q) sum_{x < p^N} chi(x) [x + s]^n_{q^a} q^x.

    Returns a FieldElem when ``spec.q`` is None, otherwise a PAdic (trivial
    chi) or CycPAdic holding the exact value (optionally truncated to ``prec``).
    """
    if spec.q is None:
        return _symbolic(spec)
    if spec.q.q.prec != INF:
        raise ValueError("numeric Riemann sums need an exactly known q")
    value = riemann_sum_exact(spec, spec.q.q.value)
    coords = [PAdic(spec.p, c, prec) for c in value.coords]
    if spec.chi is None:
        return coords[0]
    return CycPAdic(value.m, coords)


@dataclass
class WittProfile:
    alpha: int
    n: int
    shift: int
    p: int
    q: Fraction
    target: FieldElem
    levels: list = field(default_factory=list)  # (N, exact valuation of S_N - target)
    floor_offset: int = 2

    @property
    def nondecreasing(self) -> bool:
        vals = [v for _, v in self.levels]
        return all(a <= b for a, b in zip(vals, vals[1:]))

    @property
    def above_floor(self) -> bool:
        return all(v >= N - self.floor_offset for N, v in self.levels)

    @property
    def passed(self) -> bool:
        return self.nondecreasing and self.above_floor


def witt_convergence(alpha: int, n: int, shift: int, p: int, q: QPoint, N_max: int, floor_offset: int = 2, levels=None) -> WittProfile:
    """Valuations v_p(S_N - beta~_n(shift)) for N = 1..N_max at a rational q.

    PASS requires the profile to be nondecreasing with v >= N - floor_offset.
    """
    if q.q.prec != INF:
        raise ValueError("Witt profiles need an exactly known q")
    qv = q.q.value
    target = weighted_beta_poly(alpha, n, shift)
    exact_target = target.eval_rational(qv).to_fraction()
    profile = WittProfile(alpha, n, shift, p, qv, target, floor_offset=floor_offset)
    for N in levels if levels is not None else range(1, N_max + 1):
        s = riemann_sum_exact(RiemannSumSpec(p, N, n, alpha, shift), qv).to_fraction()
        profile.levels.append((N, vp(s - exact_target, p)))
    return profile
