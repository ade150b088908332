"""Generalized vertex operators and the two evaluations of their vev.

With weights ``w_{i,(mu+,mu-)}`` put

    Y_i = sum w_{i,(mu+,mu-)} lambda^{l(mu+)-1} lambda^{l(mu-)-1}
              t_i^{|mu+|/2} t_{i-1}^{|mu-|/2}
              beta_{i,mu+}/z_{mu+} * beta_{i-1,-mu-}/z_{mu-}

and ``Z = < ; prod_i exp(Y_i) ; >``.  Wick's theorem turns ``Z`` into a sum
over Z_k-colored graphs weighted by ``prod w_v prod w_e / |A_Gamma|`` with
``|A_Gamma| = |Aut(Gamma)| prod d_e``.  Both sides are implemented here so
they can be compared exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping, Sequence

from .coefrings import NovikovSeries, QCoefficient
from .fock import BosonIndex, vev
from .graphs import enumerate_graphs
from .partitions import Partition, PartitionPair, enumerate_pairs_plus, union, z_factor

AtomKey = tuple[int, Partition, Partition]


@dataclass(frozen=True)
class WeightTable:
    """Vertex weights ``w_{i,(mu+,mu-)}`` for a cycle of length ``k``."""

    k: int
    weights: Mapping[AtomKey, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (i, plus, minus), w in self.weights.items():
            if not plus and not minus:
                raise ValueError("the empty atom carries no weight")
            if w:
                clean[(i % self.k, tuple(plus), tuple(minus))] = w
        object.__setattr__(self, "weights", clean)

    def __getitem__(self, key: AtomKey) -> Any:
        return self.weights.get(key, 0)

    def support_bound(self) -> int:
        return max((sum(p) + sum(m) for _, p, m in self.weights), default=0)

    def at_color(self, i: int) -> list[tuple[PartitionPair, Any]]:
        return [((p, m), w) for (c, p, m), w in sorted(self.weights.items()) if c == i]


@dataclass(frozen=True)
class EdgeRule:
    """Per-class scalar base ``b_i``; an edge of class ``i`` and degree ``d`` gets ``b_i**d``."""

    bases: tuple[Any, ...]

    @classmethod
    def plain(cls, k: int) -> "EdgeRule":
        return cls((1,) * k)

    @classmethod
    def signs(cls, s: Sequence[int]) -> "EdgeRule":
        return cls(tuple(-1 if x % 2 else 1 for x in s))

    def factor(self, degree: Sequence[int]) -> Any:
        out: Any = 1
        for b, d in zip(self.bases, degree):
            if d:
                out = out * b**d
        return out


def edge_variables(k: int) -> tuple[str, ...]:
    return tuple(f"t{i}" for i in range(k))


# ---------------------------------------------------------------------------
# operator side
# ---------------------------------------------------------------------------

# An expansion term: per boson color the annihilator and creator mode
# multisets, the doubled t-exponents, and the lambda exponent.
_TermKey = tuple[tuple[Partition, ...], tuple[Partition, ...], tuple[int, ...], int]


def _atom_key(k: int, i: int, plus: Partition, minus: Partition) -> _TermKey:
    ann = [()] * k
    cre = [()] * k
    ann[i] = plus
    cre[(i - 1) % k] = minus
    half = [0] * k
    half[i] += sum(plus)
    half[(i - 1) % k] += sum(minus)
    lam = (len(plus) - 1) + (len(minus) - 1)
    return tuple(ann), tuple(cre), tuple(half), lam


def _combine(a: _TermKey, b: _TermKey) -> _TermKey:
    return (
        tuple(union(x, y) for x, y in zip(a[0], b[0])),
        tuple(union(x, y) for x, y in zip(a[1], b[1])),
        tuple(x + y for x, y in zip(a[2], b[2])),
        a[3] + b[3],
    )


def _multiply(left: dict, right: dict, weights: Sequence[int], bound: int) -> dict:
    out: dict = {}
    for ka, ca in left.items():
        for kb, cb in right.items():
            half = tuple(x + y for x, y in zip(ka[2], kb[2]))
            if sum(g * h for g, h in zip(weights, half)) > bound:
                continue
            key = _combine(ka, kb)
            p = ca * cb
            out[key] = out[key] + p if key in out else p
    return {key: c for key, c in out.items() if c}


def _exp_terms(y: dict, weights: Sequence[int], bound: int, unit: Any) -> dict:
    k = len(weights)
    empty: _TermKey = (((),) * k, ((),) * k, (0,) * k, 0)
    result = {empty: unit}
    power = {empty: unit}
    n = 0
    while True:
        n += 1
        power = _multiply(power, y, weights, bound)
        if not power:
            return result
        power = {key: c * Fraction(1, n) for key, c in power.items()}
        for key, c in power.items():
            result[key] = result[key] + c if key in result else c


@lru_cache(maxsize=None)
def _abnormal_vev(ann: tuple[Partition, ...], cre: tuple[Partition, ...]) -> int:
    word = [(BosonIndex(c, x), 1) for c, p in enumerate(ann) for x in p]
    word += [(BosonIndex(c, -x), 1) for c, p in enumerate(cre) for x in p]
    return vev(word)


def _unit_for(wt: WeightTable) -> Any:
    for w in wt.weights.values():
        if isinstance(w, QCoefficient):
            return QCoefficient.one(w.root_order)
        break
    return Fraction(1)


def partition_function_vev(
    wt: WeightTable,
    er: EdgeRule,
    D: int,
    weights: Sequence[int] | None = None,
    genus_grading: bool = True,
) -> NovikovSeries:
    """``< ; prod_i exp(Y_i) ; >`` through weighted ``t``-degree ``D``."""
    k = wt.k
    g = tuple(weights) if weights is not None else (1,) * k
    bound = 2 * D
    unit = _unit_for(wt)
    terms: dict = {(((),) * k, ((),) * k, (0,) * k, 0): unit}
    for i in range(k):
        y = {}
        for (plus, minus), w in wt.at_color(i):
            key = _atom_key(k, i, plus, minus)
            y[key] = w * Fraction(1, z_factor(plus) * z_factor(minus))
        if y:
            terms = _multiply(terms, _exp_terms(y, g, bound, unit), g, bound)
    out: dict = {}
    for (ann, cre, half, lam), c in terms.items():
        v = _abnormal_vev(ann, cre)
        if not v:
            continue
        if any(h % 2 for h in half):
            raise ArithmeticError(f"unpaired half-edge exponent {half} survived the vev")
        degree = tuple(h // 2 for h in half)
        key = (degree, lam if genus_grading else 0)
        val = c * v * er.factor(degree)
        out[key] = out[key] + val if key in out else val
    return NovikovSeries(edge_variables(k), D, out, g)


# ---------------------------------------------------------------------------
# graph side
# ---------------------------------------------------------------------------

def degree_vectors(k: int, D: int, weights: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Nonzero ``d >= 0`` with ``sum weights[i] d_i <= D``."""
    g = tuple(weights) if weights is not None else (1,) * k
    ranges = [range(D // gi + 1) for gi in g]
    return [
        d for d in itertools.product(*ranges)
        if any(d) and sum(a * b for a, b in zip(g, d)) <= D
    ]


def partition_function_graphsum(
    wt: WeightTable,
    er: EdgeRule,
    D: int,
    connected_only: bool = False,
    weights: Sequence[int] | None = None,
    genus_grading: bool = True,
) -> NovikovSeries:
    """``sum_Gamma lambda^{2g-2} prod w_v prod w_e / (|Aut| prod d_e)``."""
    k = wt.k
    g = tuple(weights) if weights is not None else (1,) * k
    unit = _unit_for(wt)
    out: dict = {}
    if not connected_only:
        out[((0,) * k, 0)] = unit
    for d in degree_vectors(k, D, g):
        edge_factor = er.factor(d)
        for gr, aut in enumerate_graphs(k, d, connected_only):
            val: Any = unit
            for v in range(gr.n_vertices):
                w = wt[(gr.colors[v],) + gr.atom(v)]
                if not w:
                    val = 0
                    break
                val = val * w
            if not val:
                continue
            val = val * Fraction(1, aut * gr.edge_degree_product()) * edge_factor
            key = (d, 2 * gr.genus - 2 if genus_grading else 0)
            out[key] = out[key] + val if key in out else val
    return NovikovSeries(edge_variables(k), D, out, g)


def free_energy(Z: NovikovSeries) -> NovikovSeries:
    """``F = log Z``; the constant term of ``Z`` must be exactly 1."""
    return Z.log()


def random_weight_table(k: int, max_size: int, rng, max_num: int = 9, max_den: int = 5) -> WeightTable:
    """Seeded random nonzero rational weights on all atoms with ``|mu+|+|mu-| <= max_size``."""
    table = {}
    for i in range(k):
        for plus, minus in enumerate_pairs_plus(max_size):
            num = rng.randint(1, max_num) * rng.choice((-1, 1))
            table[(i, plus, minus)] = Fraction(num, rng.randint(1, max_den))
    return WeightTable(k, table)


__all__ = [
    "WeightTable",
    "EdgeRule",
    "edge_variables",
    "degree_vectors",
    "partition_function_vev",
    "partition_function_graphsum",
    "free_energy",
    "random_weight_table",
]
