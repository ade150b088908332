"""Multi-color free bosons acting on power-sum monomials.

A Fock state is a finite linear combination of monomials ``prod_c p^{(c)}_{mu_c}``,
one partition per color.  ``beta_{c,-n}`` multiplies by ``p^{(c)}_n`` and
``beta_{c,n}`` (``n > 0``) acts as ``n * d/dp^{(c)}_n``.  Bosons of distinct
colors commute.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .coefrings import NovikovSeries
from .partitions import Partition, enumerate_partitions, union, z_factor

# a monomial: sorted tuple of (color, partition) with nonempty partitions
StateKey = tuple[tuple[int, Partition], ...]

VACUUM: StateKey = ()


@dataclass(frozen=True)
class BosonIndex:
    color: int
    mode: int

    def __post_init__(self) -> None:
        if self.mode == 0:
            raise ValueError("beta_0 acts as zero and is excluded from words")

    def __iter__(self):
        return iter((self.color, self.mode))


Factor = tuple[BosonIndex, Any]


def word(*factors: tuple[int, int] | BosonIndex | Factor) -> tuple[Factor, ...]:
    """Build a boson word from ``(color, mode)`` pairs or ``(BosonIndex, weight)`` factors."""
    out = []
    for f in factors:
        if isinstance(f, BosonIndex):
            out.append((f, 1))
        elif isinstance(f[0], BosonIndex):
            out.append((f[0], f[1]))
        else:
            out.append((BosonIndex(*f), 1))
    return tuple(out)


def _get(key: StateKey, color: int) -> Partition:
    for c, p in key:
        if c == color:
            return p
    return ()


def _put(key: StateKey, color: int, p: Partition) -> StateKey:
    rest = [(c, q) for c, q in key if c != color]
    if p:
        rest.append((color, p))
    return tuple(sorted(rest))


def _remove_one(p: Partition, n: int) -> Partition:
    i = p.index(n)
    return p[:i] + p[i + 1:]


@dataclass(frozen=True)
class FockVector:
    """Finitely supported map from monomials to coefficients."""

    coefficients: Mapping[StateKey, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", {k: v for k, v in self.coefficients.items() if v})

    @classmethod
    def vacuum(cls, coef: Any = 1) -> "FockVector":
        return cls({VACUUM: coef})

    @classmethod
    def basis(cls, parts: Mapping[int, Partition], coef: Any = 1) -> "FockVector":
        key: StateKey = tuple(sorted((c, tuple(p)) for c, p in parts.items() if p))
        return cls({key: coef})

    def __getitem__(self, key: StateKey) -> Any:
        return self.coefficients.get(key, 0)

    def vacuum_coefficient(self) -> Any:
        return self[VACUUM]

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out[k] + v if k in out else v
        return FockVector(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, c: Any) -> "FockVector":
        return FockVector({k: v * c for k, v in self.coefficients.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        keys = set(self.coefficients) | set(other.coefficients)
        return all(self[k] == other[k] for k in keys)

    def is_zero(self) -> bool:
        return not self.coefficients


def apply_beta(idx: BosonIndex, v: FockVector) -> FockVector:
    color, n = idx
    out: dict[StateKey, Any] = {}
    if n < 0:
        for key, c in v.coefficients.items():
            nk = _put(key, color, union(_get(key, color), (-n,)))
            out[nk] = out[nk] + c if nk in out else c
    else:
        for key, c in v.coefficients.items():
            p = _get(key, color)
            m = p.count(n)
            if not m:
                continue
            nk = _put(key, color, _remove_one(p, n))
            val = c * (n * m)
            out[nk] = out[nk] + val if nk in out else val
    return FockVector(out)


def apply_word(wd: Sequence[Factor], v: FockVector) -> FockVector:
    """Apply the word to ``v``, rightmost factor first."""
    for idx, weight in reversed(wd):
        v = apply_beta(idx, v)
        if weight != 1:
            v = v.scale(weight)
        if v.is_zero():
            break
    return v


def order_abnormally(wd: Sequence[Factor]) -> tuple[Factor, ...]:
    """Stable sort by mode, descending: annihilators to the left."""
    return tuple(sorted(wd, key=lambda f: -f[0].mode))


def order_normally(wd: Sequence[Factor]) -> tuple[Factor, ...]:
    return tuple(sorted(wd, key=lambda f: f[0].mode))


def vev(wd: Sequence[Factor]) -> Any:
    """``<0| wd |0>`` by evolving the vacuum."""
    return apply_word(wd, FockVector.vacuum()).vacuum_coefficient()


def inner_product(u: FockVector, v: FockVector) -> Fraction:
    """Hermitian form with ``<p_mu, p_nu> = z_mu delta``, color by color."""
    total: Any = 0
    for k, a in u.coefficients.items():
        b = v[k]
        if b:
            z = 1
            for _, p in k:
                z *= z_factor(p)
            total += a * b * z
    return total


def _exp_of_modes(a: Mapping[int, Any], sign: int, max_size: int) -> list[tuple[Partition, Any]]:
    """Terms of ``exp(sum_{n>=1} a[sign*n] t^n / n * beta_{sign*n})`` as (partition, coefficient)."""
    out = []
    for size in range(max_size + 1):
        for mu in enumerate_partitions(size):
            c: Any = Fraction(1)
            for part in mu:
                c = c * a.get(sign * part, 0) * Fraction(1, part)
                if not c:
                    break
            if not c:
                continue
            for m in Counter(mu).values():
                c = c * Fraction(1, math.factorial(m))
            out.append((mu, c))
    return out


def vev_exponential_pair(a: Mapping[int, Any], D: int, variable: str = "t") -> NovikovSeries:
    """``<exp(sum a_n t^n/n beta_n) exp(sum a_{-n} t^n/n beta_{-n})>`` through ``t**D``."""
    left = _exp_of_modes(a, 1, D)
    right = _exp_of_modes(a, -1, D)
    terms: dict = {}
    for mu, cl in left:
        ann = tuple((BosonIndex(0, x), 1) for x in mu)
        for nu, cr in right:
            deg = sum(mu) + sum(nu)
            if deg > D:
                continue
            cre = tuple((BosonIndex(0, -x), 1) for x in nu)
            val = vev(ann + cre)
            if val:
                key = ((deg,), 0)
                contrib = cl * cr * val
                terms[key] = terms[key] + contrib if key in terms else contrib
    return NovikovSeries((variable,), D, terms)
