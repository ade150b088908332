"""Z_k-colored labelled multigraphs.

Every edge joins a vertex of color ``i`` to a vertex of color ``i+1 (mod k)``
and carries a degree ``d_e >= 1``.  Edges are stored oriented as
``(tail, head, degree)`` with ``color(head) == color(tail) + 1``, so the edge
class ``[e] = e_i`` is the color of the tail.  For ``k == 2`` both
orientations are consistent with the coloring and the stored orientation is
what distinguishes ``e_0`` from ``e_1``.

At a vertex of color ``i`` the outgoing edges (class ``e_i``) give the
partition ``mu_plus`` and the incoming ones (class ``e_{i-1}``) give
``mu_minus``; the pair is the atom type of the vertex.
"""
from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .fock import BosonIndex, order_abnormally, vev
from .partitions import Partition, PartitionPair, enumerate_partitions, partition, z_factor

Edge = tuple[int, int, int]
AtomKey = tuple[int, Partition, Partition]


@dataclass(frozen=True)
class ColoredGraph:
    k: int
    colors: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        k = self.k
        if k < 2:
            raise ValueError("cycle length k must be at least 2")
        colors = tuple(int(c) for c in self.colors)
        if any(not 0 <= c < k for c in colors):
            raise ValueError(f"vertex colors must lie in Z_{k}: {colors}")
        fixed = []
        for u, v, d in self.edges:
            if not (0 <= u < len(colors) and 0 <= v < len(colors)):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
            if d < 1:
                raise ValueError(f"edge degree must be positive, got {d}")
            if colors[v] == (colors[u] + 1) % k:
                fixed.append((u, v, d))
            elif colors[u] == (colors[v] + 1) % k:
                fixed.append((v, u, d))
            else:
                raise ValueError(
                    f"malformed coloring: edge ({u}, {v}) joins colors {colors[u]} and {colors[v]}"
                )
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "edges", tuple(sorted(fixed)))

    # -- basic invariants ------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.colors)

    @property
    def genus(self) -> int:
        return 1 - len(self.colors) + len(self.edges)

    def edge_class(self, e: Edge) -> int:
        return self.colors[e[0]]

    @property
    def degree(self) -> tuple[int, ...]:
        d = [0] * self.k
        for e in self.edges:
            d[self.edge_class(e)] += e[2]
        return tuple(d)

    def valence(self, v: int) -> int:
        return sum((e[0] == v) + (e[1] == v) for e in self.edges)

    def atom(self, v: int) -> PartitionPair:
        plus = partition(d for t, h, d in self.edges if t == v)
        minus = partition(d for t, h, d in self.edges if h == v)
        return plus, minus

    def profile(self) -> "AtomProfile":
        c = Counter((self.colors[v],) + self.atom(v) for v in range(self.n_vertices))
        return AtomProfile(self.k, c)

    def edge_degree_product(self) -> int:
        return math.prod(e[2] for e in self.edges)

    def is_connected(self) -> bool:
        n = self.n_vertices
        if n == 0:
            return True
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in self.edges:
            parent[find(u)] = find(v)
        return len({find(x) for x in range(n)}) == 1

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {"k": self.k, "vertices": list(self.colors), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "ColoredGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["k"]), tuple(data["vertices"]), tuple(tuple(e) for e in data["edges"]))


@dataclass(frozen=True)
class AtomProfile:
    """Counts ``n^i_{(mu+, mu-)}`` of atoms of each color and type."""

    k: int
    counts: tuple[tuple[AtomKey, int], ...]

    def __init__(self, k: int, counts: Mapping[AtomKey, int] | Sequence[tuple[AtomKey, int]]):
        items = counts.items() if isinstance(counts, Mapping) else counts
        merged: Counter = Counter()
        for (i, plus, minus), n in items:
            if n < 0:
                raise ValueError("atom counts must be nonnegative")
            if not plus and not minus:
                raise ValueError("an atom needs at least one bond")
            merged[(i % k, tuple(plus), tuple(minus))] += n
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "counts", tuple(sorted((a, n) for a, n in merged.items() if n)))

    def as_dict(self) -> dict[AtomKey, int]:
        return dict(self.counts)

    def is_empty(self) -> bool:
        return not self.counts

    def bond_count(self) -> int:
        return sum(n * (len(p) + len(m)) for (_, p, m), n in self.counts)

    def n_edges(self) -> int:
        return self.bond_count() // 2

    def outgoing(self, color: int) -> Counter:
        out: Counter = Counter()
        for (i, p, _), n in self.counts:
            if i == color:
                for x in p:
                    out[x] += n
        return out

    def incoming(self, color: int) -> Counter:
        out: Counter = Counter()
        for (i, _, m), n in self.counts:
            if i == color:
                for x in m:
                    out[x] += n
        return out

    def is_balanced(self) -> bool:
        """Outgoing degrees at color ``i`` match incoming degrees at color ``i+1``."""
        return all(self.outgoing(i) == self.incoming((i + 1) % self.k) for i in range(self.k))

    def degree(self) -> tuple[int, ...]:
        return tuple(sum(x * n for x, n in self.outgoing(i).items()) for i in range(self.k))

    def degree_from_incoming(self) -> tuple[int, ...]:
        return tuple(sum(x * n for x, n in self.incoming((i + 1) % self.k).items()) for i in range(self.k))

    def valence_excess(self) -> int:
        """``sum n (l(mu+) + l(mu-) - 2)``, which equals ``2g - 2`` for realizing graphs."""
        return sum(n * (len(p) + len(m) - 2) for (_, p, m), n in self.counts)


def graph_invariants(g: ColoredGraph) -> tuple[int, tuple[int, ...], AtomProfile]:
    return g.genus, g.degree, g.profile()


# ---------------------------------------------------------------------------
# canonical forms and automorphisms
# ---------------------------------------------------------------------------

def _cells(g: ColoredGraph) -> list[list[int]]:
    """Vertex classes after color refinement, in canonical order."""
    n = g.n_vertices
    labels = [(g.colors[v],) + g.atom(v) for v in range(n)]
    ranks = _rank(labels)
    while True:
        sigs = []
        for v in range(n):
            out = sorted((d, ranks[h]) for t, h, d in g.edges if t == v)
            inc = sorted((d, ranks[t]) for t, h, d in g.edges if h == v)
            sigs.append((ranks[v], tuple(out), tuple(inc)))
        new = _rank(sigs)
        if len(set(new)) == len(set(ranks)):
            ranks = new
            break
        ranks = new
    cells: dict[int, list[int]] = {}
    for v, r in enumerate(ranks):
        cells.setdefault(r, []).append(v)
    return [cells[r] for r in sorted(cells)]


def _rank(labels: list) -> list[int]:
    order = {lab: i for i, lab in enumerate(sorted(set(labels)))}
    return [order[lab] for lab in labels]


def _orderings(cells: list[list[int]]) -> Iterator[tuple[int, ...]]:
    for combo in itertools.product(*(itertools.permutations(c) for c in cells)):
        yield tuple(itertools.chain.from_iterable(combo))


def canonical_form(g: ColoredGraph) -> tuple:
    """Isomorphism-invariant encoding: minimum over refined relabelings."""
    cells = _cells(g)
    best = None
    for order in _orderings(cells):
        pos = {v: i for i, v in enumerate(order)}
        enc = tuple(sorted((pos[t], pos[h], d) for t, h, d in g.edges))
        if best is None or enc < best:
            best = enc
    colors = tuple(g.colors[v] for v in itertools.chain.from_iterable(cells))
    return (g.k, colors, best)


def automorphism_order(g: ColoredGraph) -> int:
    """``|Aut|``: color- and degree-preserving vertex bijections times edge bijections."""
    cells = _cells(g)
    base = list(itertools.chain.from_iterable(cells))
    target = sorted(g.edges)
    vertex_autos = 0
    for order in _orderings(cells):
        sigma = dict(zip(base, order))
        if sorted((sigma[t], sigma[h], d) for t, h, d in g.edges) == target:
            vertex_autos += 1
    edge_swaps = math.prod(math.factorial(m) for m in Counter(g.edges).values())
    return vertex_autos * edge_swaps


def from_canonical(key: tuple) -> ColoredGraph:
    k, colors, edges = key
    return ColoredGraph(k, colors, edges)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def _labelled_graphs(k: int, edge_list: list[tuple[int, int]]) -> Iterator[ColoredGraph]:
    """All ways to glue the given (class, degree) edges into vertices."""
    per_color = []
    for c in range(k):
        halves = [("t", e) for e, (cls, _) in enumerate(edge_list) if cls == c]
        halves += [("h", e) for e, (cls, _) in enumerate(edge_list) if (cls + 1) % k == c]
        per_color.append(halves)
    for choice in itertools.product(*(_set_partitions(h) for h in per_color)):
        colors: list[int] = []
        tail: dict[int, int] = {}
        head: dict[int, int] = {}
        for c, blocks in enumerate(choice):
            for block in blocks:
                v = len(colors)
                colors.append(c)
                for kind, e in block:
                    (tail if kind == "t" else head)[e] = v
        edges = tuple((tail[e], head[e], d) for e, (_, d) in enumerate(edge_list))
        yield ColoredGraph(k, tuple(colors), edges)


def enumerate_graphs(
    k: int,
    d: Sequence[int],
    connected_only: bool = False,
    max_edges: int | None = None,
) -> list[tuple[ColoredGraph, int]]:
    """One representative per isomorphism class of degree ``d``, with ``|Aut|``."""
    return list(_enumerate_cached(k, tuple(d), connected_only, max_edges))


@lru_cache(maxsize=None)
def _enumerate_cached(k: int, d: tuple[int, ...], connected_only: bool, max_edges: int | None):
    if len(d) != k:
        raise ValueError(f"degree vector {d} has wrong length for k={k}")
    if any(x < 0 for x in d) or not any(d):
        raise ValueError(f"degree vector must be nonnegative and nonzero: {d}")
    found: dict[tuple, ColoredGraph] = {}
    for parts in itertools.product(*(enumerate_partitions(x) for x in d)):
        n_edges = sum(len(p) for p in parts)
        if max_edges is not None and n_edges > max_edges:
            continue
        edge_list = [(i, x) for i, p in enumerate(parts) for x in p]
        for g in _labelled_graphs(k, edge_list):
            if connected_only and not g.is_connected():
                continue
            key = canonical_form(g)
            if key not in found:
                found[key] = from_canonical(key)
    return tuple((found[key], automorphism_order(found[key])) for key in sorted(found))


# ---------------------------------------------------------------------------
# chemistry: atoms joined by Wick contractions
# ---------------------------------------------------------------------------

def chemistry_vev(profile: AtomProfile) -> Fraction:
    """``< ; prod (1/n!) (beta_{i,mu+}/z_{mu+} * beta_{i-1,-mu-}/z_{mu-})^n ; >``."""
    k = profile.k
    coef = Fraction(1)
    factors = []
    for (i, plus, minus), n in profile.counts:
        coef /= math.factorial(n) * (z_factor(plus) * z_factor(minus)) ** n
        for _ in range(n):
            factors += [(BosonIndex(i, x), 1) for x in plus]
            factors += [(BosonIndex((i - 1) % k, -x), 1) for x in minus]
    return coef * vev(order_abnormally(factors))


def profile_graph_sum(profile: AtomProfile) -> Fraction:
    """``sum 1/(|Aut| prod d_e)`` over graphs realizing ``profile``."""
    if profile.is_empty():
        return Fraction(1)
    if not profile.is_balanced():
        return Fraction(0)
    total = Fraction(0)
    for g, aut in enumerate_graphs(profile.k, profile.degree(), max_edges=profile.n_edges()):
        if g.profile() == profile:
            total += Fraction(1, aut * g.edge_degree_product())
    return total


# ---------------------------------------------------------------------------
# profiles without graphs
# ---------------------------------------------------------------------------

def balanced_profiles(k: int, max_bonds: int, max_degree: int) -> list[AtomProfile]:
    """Every balanced nonempty profile with at most ``max_bonds`` bonds and edge degrees ``<= max_degree``.

    Half-edges are grouped into atoms color by color; which outgoing half
    meets which incoming half is never decided, so no graph is built.
    """
    found: set[AtomProfile] = set()
    kinds = [(i, d) for i in range(k) for d in range(1, max_degree + 1)]
    for n_edges in range(1, max_bonds // 2 + 1):
        for edges in itertools.combinations_with_replacement(kinds, n_edges):
            per_color: list[list[tuple[str, int]]] = [[] for _ in range(k)]
            for cls, d in edges:
                per_color[cls].append(("+", d))
                per_color[(cls + 1) % k].append(("-", d))
            groupings = [_atom_groupings(c, halves) for c, halves in enumerate(per_color)]
            for choice in itertools.product(*groupings):
                counts: Counter = Counter()
                for atoms in choice:
                    counts.update(atoms)
                found.add(AtomProfile(k, counts))
    return sorted(found, key=lambda p: (p.bond_count(), p.counts))


def _atom_groupings(color: int, halves: list[tuple[str, int]]) -> list[tuple[AtomKey, ...]]:
    out = set()
    for blocks in _set_partitions(halves):
        atoms = tuple(sorted(
            (color, partition(d for s, d in b if s == "+"), partition(d for s, d in b if s == "-"))
            for b in blocks
        ))
        out.add(atoms)
    return sorted(out)


def degree_identities(g: ColoredGraph) -> dict[str, bool]:
    """Balance per color, the two degree formulas, and ``2g - 2`` as a valence sum."""
    prof = g.profile()
    return {
        "balance": prof.is_balanced(),
        "degree_outgoing": prof.degree() == g.degree,
        "degree_incoming": prof.degree_from_incoming() == g.degree,
        "genus_valence": 2 * g.genus - 2 == prof.valence_excess(),
        "handshake": sum(g.valence(v) for v in range(g.n_vertices)) == 2 * len(g.edges),
    }
