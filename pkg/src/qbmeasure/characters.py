"""Dirichlet characters with exact cyclotomic values.

Characters mod d are built from a fixed decomposition of (Z/dZ)^* into
cyclic factors, one block per prime power of d:

* odd p^e -- cyclic, generated by the least primitive root mod p^e;
* 4       -- generated by -1;
* 2^e, e >= 3 -- generated by -1 (order 2) and 5 (order 2^(e-2)).

Each generator is lifted by CRT to be 1 modulo the other prime powers.  The
characters are listed lexicographically in their exponent tuples
``(j_1, ..., j_r)`` with ``chi(g_i) = zeta_{n_i}^{j_i}``; the position in that
list is the canonical index used by ``--chi d:j`` on the command line.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .errors import NotInvertible
from .exactfield import CycElem, FieldElem, monomial, qnumber
from .padic import QPoint, evaluate
from .qbernoulli import scaled_poly_at_ratio

__all__ = [
    "DirichletChar",
    "unit_group_generators",
    "enumerate_characters",
    "character",
    "character_from_exponents",
    "char_eval",
    "char_eval_ratio",
    "generalized_beta",
    "generalized_beta_components",
]


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _mult_order(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


def _primitive_root(n: int, order: int) -> int:
    return next(g for g in range(2, n) if gcd(g, n) == 1 and _mult_order(g, n) == order)


def _crt_lift(residue: int, modulus: int, d: int) -> int:
    """Unit mod d congruent to residue mod `modulus` and to 1 mod d/modulus."""
    rest = d // modulus
    if rest == 1:
        return residue % d
    # x = residue + modulus * t, x = 1 (mod rest)
    t = ((1 - residue) * pow(modulus, -1, rest)) % rest
    return (residue + modulus * t) % d


def unit_group_generators(d: int) -> list[tuple[int, int]]:
    """Canonical generators of (Z/dZ)^* as (generator, order) pairs."""
    gens = []
    for p, e in _factor(d):
        pe = p**e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(-1, pe, d), 2))
            elif e >= 3:
                gens.append((_crt_lift(-1, pe, d), 2))
                gens.append((_crt_lift(5, pe, d), 2 ** (e - 2)))
        else:
            order = (p - 1) * p ** (e - 1)
            gens.append((_crt_lift(_primitive_root(pe, order), pe, d), order))
    return gens


def _discrete_logs(d: int, gens: list[tuple[int, int]]) -> dict[int, tuple[int, ...]]:
    logs = {}
    for exps in itertools.product(*(range(n) for _, n in gens)):
        x = 1
        for (g, _), e in zip(gens, exps):
            x = x * pow(g, e, d) % d
        logs[x % d] = exps
    return logs


@dataclass(frozen=True)
class DirichletChar:
    modulus: int
    order: int
    exps: dict = field(hash=False, compare=True)  # unit residue -> exponent mod order
    conductor: int
    index: int | None = None
    components: tuple = ()

    def __call__(self, x: int) -> CycElem:
        return char_eval(self, x)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def exponent(self, x: int) -> int | None:
        """e with chi(x) = zeta_order^e, or None when gcd(x, d) > 1."""
        return self.exps.get(x % self.modulus)

    def primitive(self) -> "DirichletChar":
        """The character mod the conductor inducing this one."""
        f = self.conductor
        exps = {}
        for a, e in self.exps.items():
            exps.setdefault(a % f, e)
        if f == 1:
            exps = {0: 0}
        return DirichletChar(f, self.order, exps, f)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "index": self.index,
            "order": self.order,
            "conductor": self.conductor,
            "primitive": self.is_primitive,
            "components": list(self.components),
            "values": {str(a): e for a, e in sorted(self.exps.items())},
        }


def _conductor(d: int, exps: dict) -> int:
    for f in sorted(k for k in range(1, d + 1) if d % k == 0):
        if all(e == 0 for a, e in exps.items() if a % f == 1 % f):
            return f
    return d


def character_from_exponents(d: int, components, index: int | None = None) -> DirichletChar:
    """Character mod d with chi(g_i) = zeta_{n_i}^{j_i} on the canonical generators."""
    if d < 1:
        raise ValueError("modulus must be positive")
    gens = unit_group_generators(d)
    components = tuple(components)
    if len(components) != len(gens):
        raise ValueError(f"modulus {d} has {len(gens)} generator(s), got {len(components)} exponent(s)")
    L = 1
    for _, n in gens:
        L = L * n // gcd(L, n)
    big = {}
    for a, logs in _discrete_logs(d, gens).items():
        big[a] = sum(j * k * (L // n) for j, k, (_, n) in zip(components, logs, gens)) % L
    order = 1
    for j, (_, n) in zip(components, gens):
        o = n // gcd(n, j % n)
        order = order * o // gcd(order, o)
    step = L // order
    exps = {a: (e // step) % order for a, e in big.items()}
    if d == 1:
        exps = {0: 0}
    return DirichletChar(d, order, exps, _conductor(d, exps), index, tuple(j % n for j, (_, n) in zip(components, gens)))


def enumerate_characters(d: int) -> list[DirichletChar]:
    gens = unit_group_generators(d)
    return [
        character_from_exponents(d, comps, i)
        for i, comps in enumerate(itertools.product(*(range(n) for _, n in gens)))
    ]


def character(d: int, index: int) -> DirichletChar:
    chars = enumerate_characters(d)
    if not 0 <= index < len(chars):
        raise ValueError(f"modulus {d} has {len(chars)} characters; index {index} out of range")
    return chars[index]


def char_eval(chi: DirichletChar, x: int) -> CycElem:
    e = chi.exponent(x)
    if e is None:
        return CycElem.rational(0, chi.order)
    return CycElem.zeta_power(chi.order, e)


def char_eval_ratio(chi: DirichletChar, y: int, beta: int) -> CycElem:
    """chi(y / beta) := chi(y) * chi(beta)^(-1)."""
    if gcd(beta, chi.modulus) != 1:
        raise NotInvertible(f"{beta} is not a unit mod {chi.modulus}")
    e_beta = chi.exponent(beta)
    e_y = chi.exponent(y)
    if e_y is None:
        return CycElem.rational(0, chi.order)
    return CycElem.zeta_power(chi.order, e_y - e_beta)


def generalized_beta_components(chi: DirichletChar, alpha: int, n: int) -> dict[int, FieldElem]:
    """Split the attached number as sum_e zeta^e * R_e with R_e in Q(q)."""
    d = chi.modulus
    parts: dict[int, FieldElem] = {}
    for a in range(d):
        e = chi.exponent(a)
        if e is None:
            continue
        term = monomial(a) * scaled_poly_at_ratio(alpha, n, a, d)
        parts[e] = parts[e] + term if e in parts else term
    base = qnumber(d)
    return {e: r / base for e, r in sorted(parts.items())}


def generalized_beta(chi: DirichletChar, alpha: int, n: int, q: QPoint | None = None, prec=None):
    """Generalized weighted q-Bernoulli number attached to chi.

    ([d]_{q^a}^n / [d]_q) * sum_{a<d} q^a chi(a) beta~_{n, q^d}(a / d).
    Symbolic (FieldElem) unless a p-adic base point is given.
    """
    total = FieldElem.constant(0).lift(chi.order)
    for e, r in generalized_beta_components(chi, alpha, n).items():
        total = total + r * CycElem.zeta_power(chi.order, e)
    if q is None:
        return total
    return evaluate(total, q, prec)
