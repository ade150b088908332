"""Irreducible characters of the symmetric group.

Values come from the Murnaghan--Nakayama rule on beta-sets: removing a
border strip of length ``r`` from ``nu`` moves one bead of the beta-set
down by ``r``; the sign counts the beads jumped over.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, enumerate_partitions, z_factor


def _beta_set(nu: Partition) -> tuple[int, ...]:
    n = len(nu)
    return tuple(x + n - 1 - j for j, x in enumerate(nu))


def _from_beta(beta: tuple[int, ...]) -> Partition:
    b = sorted(beta, reverse=True)
    n = len(b)
    return tuple(x for x in (b[j] - (n - 1 - j) for j in range(n)) if x > 0)


@lru_cache(maxsize=None)
def _mn(nu: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not nu else 0
    r, rest = mu[0], mu[1:]
    beta = _beta_set(nu)
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beads:
            continue
        jumped = sum(1 for x in beta if target < x < b)
        smaller = _from_beta(tuple(target if x == b else x for x in beta))
        value = _mn(smaller, rest)
        total += -value if jumped % 2 else value
    return total


def character(nu: Partition, mu: Partition) -> int:
    """``chi_nu`` evaluated on the conjugacy class of cycle type ``mu``."""
    if sum(nu) != sum(mu):
        raise ValueError(f"size mismatch: |{nu}| != |{mu}|")
    return _mn(tuple(nu), tuple(mu))


def orthogonality_defect(nu: Partition, rho: Partition) -> Fraction:
    """``sum_mu chi_nu(mu) chi_rho(mu) / z_mu - delta``; zero by orthogonality."""
    n = sum(nu)
    if n != sum(rho):
        raise ValueError(f"size mismatch: |{nu}| != |{rho}|")
    s = sum(Fraction(character(nu, mu) * character(rho, mu), z_factor(mu)) for mu in enumerate_partitions(n))
    return s - (1 if tuple(nu) == tuple(rho) else 0)
