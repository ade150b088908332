"""Integer partitions and the numerical invariants used downstream.

Partitions are plain tuples of weakly decreasing positive integers; the
empty tuple is the empty partition.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
PartitionPair = tuple[Partition, Partition]

EMPTY: Partition = ()


def partition(parts: Iterable[int]) -> Partition:
    """Normalize an iterable of positive integers into a partition."""
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if p and p[-1] < 1:
        raise ValueError(f"partition parts must be positive: {p}")
    return p


def is_partition(p: Sequence[int]) -> bool:
    return all(x >= 1 for x in p) and all(p[i] >= p[i + 1] for i in range(len(p) - 1))


def size(p: Partition) -> int:
    return sum(p)


def length(p: Partition) -> int:
    return len(p)


def _partitions(n: int, max_part: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(_partitions(n, n))


def multiplicities(p: Partition) -> Counter:
    return Counter(p)


@lru_cache(maxsize=None)
def z_factor(p: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type ``p``."""
    z = 1
    for part, m in Counter(p).items():
        z *= part**m * math.factorial(m)
    return z


def automorphism_factor(p: Partition) -> int:
    """``prod m_k!`` over the multiplicities of ``p``."""
    out = 1
    for m in Counter(p).values():
        out *= math.factorial(m)
    return out


def kappa(p: Partition) -> int:
    """Framing exponent ``sum_j p_j (p_j - 2j + 1)`` (1-based ``j``)."""
    return sum(x * (x - 2 * j + 1) for j, x in enumerate(p, start=1))


def n_statistic(p: Partition) -> int:
    """``n(p) = sum_j (j-1) p_j``."""
    return sum(j * x for j, x in enumerate(p))


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def hook_lengths(p: Partition) -> list[int]:
    pc = conjugate(p)
    return [p[i] - j + pc[j] - i - 1 for i in range(len(p)) for j in range(p[i])]


def sign(p: Partition) -> int:
    """Sign of a permutation of cycle type ``p``."""
    return -1 if (sum(p) - len(p)) % 2 else 1


def contains(outer: Partition, inner: Partition) -> bool:
    return len(inner) <= len(outer) and all(a >= b for a, b in zip(outer, inner))


def union(a: Partition, b: Partition) -> Partition:
    """Multiset union of parts."""
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def enumerate_pairs_plus(max_size: int) -> list[PartitionPair]:
    """All ``(plus, minus)`` with ``0 < |plus| + |minus| <= max_size``."""
    out = []
    for total in range(1, max_size + 1):
        for a in range(total, -1, -1):
            for plus in enumerate_partitions(a):
                for minus in enumerate_partitions(total - a):
                    out.append((plus, minus))
    return out


def to_text(p: Partition) -> str:
    return json.dumps(list(p), separators=(",", ":"))


def from_text(text: str) -> Partition:
    data = json.loads(text)
    if not isinstance(data, list) or not is_partition(data):
        raise ValueError(f"not a partition: {text!r}")
    return tuple(data)
