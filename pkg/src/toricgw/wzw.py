"""Hopf-link weights, character-sum vertex coefficients and connected amplitudes.

All q-series live in :class:`QCoefficient` with ``w**2 = q`` (root order 1)
unless a fractional framing forces a finer root.  The two-partition weight is

    W_{mu,nu}(q) = s_mu(q^rho) * s_nu(q^{mu+rho}),   q^rho = (q^{-1/2}, q^{-3/2}, ...).

``s_nu`` at the infinite point ``q^{mu+rho}`` is evaluated exactly: the first
``L`` coordinates ``w^{2 mu_i - 2i + 1}`` form a finite head, the rest is
``w^{-2L} q^rho`` and has a closed hook-length form, and
``s_nu(head, tail) = sum_eta s_{nu/eta}(head) s_eta(tail)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .characters import character
from .coefrings import QCoefficient
from .partitions import (
    Partition,
    contains,
    enumerate_partitions,
    hook_lengths,
    kappa,
    n_statistic,
    union,
    z_factor,
)

AmplitudeTable = dict[tuple[Partition, Partition], QCoefficient]


@dataclass(frozen=True)
class HopfWeight:
    mu: Partition
    nu: Partition
    value: QCoefficient


@dataclass(frozen=True)
class VertexAmplitude:
    mu_plus: Partition
    mu_minus: Partition
    tau: Fraction
    value: QCoefficient


# ---------------------------------------------------------------------------
# Schur functions at principal specializations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def schur_at_rho(eta: Partition) -> QCoefficient:
    """``s_eta(q^rho) = w^{-|eta| - 2 n(eta)} / prod_h (1 - w^{-2h})``."""
    value = QCoefficient.w_power(-sum(eta) - 2 * n_statistic(eta))
    for h in hook_lengths(eta):
        value = value / (QCoefficient.one() - QCoefficient.w_power(-2 * h))
    return value


def _horizontal_strips_below(nu: Partition, inner: Partition) -> Iterator[Partition]:
    """All ``kappa`` with ``inner <= kappa <= nu`` and ``nu/kappa`` a horizontal strip."""
    n = len(nu)
    padded = list(inner) + [0] * (n - len(inner))
    ranges = []
    for j in range(n):
        low = max(nu[j + 1] if j + 1 < n else 0, padded[j])
        if low > nu[j]:
            return
        ranges.append(range(low, nu[j] + 1))
    for choice in _product(ranges):
        yield tuple(x for x in choice if x > 0)


def _product(ranges: list[range]) -> Iterator[tuple[int, ...]]:
    if not ranges:
        yield ()
        return
    for x in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (x,) + rest


@lru_cache(maxsize=None)
def skew_schur_monomial(nu: Partition, eta: Partition, exponents: tuple[int, ...]) -> QCoefficient:
    """``s_{nu/eta}(w^{e_1}, ..., w^{e_L})`` by horizontal-strip branching."""
    if not contains(nu, eta):
        return QCoefficient.zero()
    if not exponents:
        return QCoefficient.one() if nu == eta else QCoefficient.zero()
    *head, last = exponents
    total = QCoefficient.zero()
    for kappa_ in _horizontal_strips_below(nu, eta):
        inner = skew_schur_monomial(kappa_, eta, tuple(head))
        if inner:
            total = total + inner * QCoefficient.w_power(last * (sum(nu) - sum(kappa_)))
    return total


@lru_cache(maxsize=None)
def schur_at_shifted_rho(nu: Partition, mu: Partition, head_length: int | None = None) -> QCoefficient:
    """``s_nu(q^{mu+rho})`` with an explicit head of ``head_length`` coordinates."""
    L = len(mu) if head_length is None else head_length
    if L < len(mu):
        raise ValueError(f"head length {L} shorter than l(mu) = {len(mu)}")
    padded = list(mu) + [0] * (L - len(mu))
    head = tuple(2 * padded[i] - 2 * (i + 1) + 1 for i in range(L))
    total = QCoefficient.zero()
    for size in range(sum(nu) + 1):
        for eta in enumerate_partitions(size):
            if not contains(nu, eta):
                continue
            skew = skew_schur_monomial(nu, eta, head)
            if skew:
                tail = schur_at_rho(eta) * QCoefficient.w_power(-2 * L * size)
                total = total + skew * tail
    return total


def w_hopf(mu: Partition, nu: Partition, head_length: int | None = None) -> QCoefficient:
    """``W_{mu,nu} = s_mu(q^rho) s_nu(q^{mu+rho})``; symmetric in its arguments."""
    return schur_at_rho(tuple(mu)) * schur_at_shifted_rho(tuple(nu), tuple(mu), head_length)


# ---------------------------------------------------------------------------
# vertex coefficients and their logarithm
# ---------------------------------------------------------------------------

def _check_tau(tau: Fraction | int) -> Fraction:
    tau = Fraction(tau)
    if tau == 0:
        raise ValueError("weight ratio tau must be nonzero")
    return tau


@lru_cache(maxsize=None)
def vertex_coefficient(mu_plus: Partition, mu_minus: Partition, tau: Fraction) -> QCoefficient:
    """Coefficient of ``p+_{mu+} p-_{mu-}`` in the character-sum vertex series."""
    tau = _check_tau(tau)
    total = QCoefficient.zero()
    zp, zm = z_factor(mu_plus), z_factor(mu_minus)
    for nu_p in enumerate_partitions(sum(mu_plus)):
        cp = character(nu_p, mu_plus)
        if not cp:
            continue
        for nu_m in enumerate_partitions(sum(mu_minus)):
            cm = character(nu_m, mu_minus)
            if not cm:
                continue
            framing = QCoefficient.q_power((kappa(nu_p) * tau + kappa(nu_m) / tau) / 2)
            total = total + framing * w_hopf(nu_p, nu_m) * Fraction(cp * cm, zp * zm)
    return total


def _pairs_up_to(bound: int) -> list[tuple[Partition, Partition]]:
    out = []
    for total in range(1, bound + 1):
        for a in range(total + 1):
            for p in enumerate_partitions(a):
                for m in enumerate_partitions(total - a):
                    out.append((p, m))
    return out


def _mul_tables(a: AmplitudeTable, b: AmplitudeTable, bound: int) -> AmplitudeTable:
    out: AmplitudeTable = {}
    for (p1, m1), c1 in a.items():
        s1 = sum(p1) + sum(m1)
        for (p2, m2), c2 in b.items():
            if s1 + sum(p2) + sum(m2) > bound:
                continue
            key = (union(p1, p2), union(m1, m2))
            val = c1 * c2
            out[key] = out[key] + val if key in out else val
    return out


@lru_cache(maxsize=None)
def _connected_table(tau: Fraction, bound: int) -> tuple[tuple[tuple[Partition, Partition], QCoefficient], ...]:
    x: AmplitudeTable = {pair: vertex_coefficient(pair[0], pair[1], tau) for pair in _pairs_up_to(bound)}
    result: AmplitudeTable = {}
    power: AmplitudeTable = {((), ()): QCoefficient.one()}
    for n in range(1, bound + 1):
        power = _mul_tables(power, x, bound)
        coef = Fraction(1 if n % 2 else -1, n)
        for key, c in power.items():
            val = c * coef
            result[key] = result[key] + val if key in result else val
    return tuple(sorted(result.items()))


def connected_amplitudes(tau: Fraction | int, bound: int) -> AmplitudeTable:
    """All ``G_{mu+,mu-}(tau)`` with ``0 < |mu+| + |mu-| <= bound``."""
    return dict(_connected_table(_check_tau(tau), bound))


def connected_amplitude(mu_plus: Partition, mu_minus: Partition, tau: Fraction | int, bound: int) -> QCoefficient:
    """``G_{mu+,mu-}(tau)``: the ``p+_{mu+} p-_{mu-}`` coefficient of the log."""
    tau = _check_tau(tau)
    mu_plus, mu_minus = tuple(mu_plus), tuple(mu_minus)
    size = sum(mu_plus) + sum(mu_minus)
    if size > bound:
        raise ValueError(f"|mu+| + |mu-| = {size} exceeds the bound {bound}")
    if size == 0:
        return QCoefficient.zero()
    return connected_amplitudes(tau, bound).get((mu_plus, mu_minus), QCoefficient.zero())


def vertex_weight(mu_plus: Partition, mu_minus: Partition, tau: Fraction | int, bound: int) -> QCoefficient:
    """Feynman vertex weight ``z_{mu+} z_{mu-} G_{mu+,mu-}(tau)``."""
    g = connected_amplitude(mu_plus, mu_minus, tau, bound)
    return g * (z_factor(tuple(mu_plus)) * z_factor(tuple(mu_minus)))


def hook_form(nu: Partition) -> QCoefficient:
    """``q^{kappa/4} / prod_h (q^{h/2} - q^{-h/2})``, an independent form of ``s_nu(q^rho)``."""
    value = QCoefficient.w_power(kappa(nu) // 2)
    for h in hook_lengths(nu):
        value = value / (QCoefficient.w_power(h) - QCoefficient.w_power(-h))
    return value


__all__ = [
    "HopfWeight",
    "VertexAmplitude",
    "schur_at_rho",
    "schur_at_shifted_rho",
    "skew_schur_monomial",
    "w_hopf",
    "vertex_coefficient",
    "connected_amplitude",
    "connected_amplitudes",
    "vertex_weight",
    "hook_form",
]
