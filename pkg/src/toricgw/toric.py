"""Local toric Fano surfaces: presets, weight ratios and the two pipelines.

A surface is described by its cycle of torus-invariant balloons: for each
edge ``i`` (joining fixed points ``i`` and ``i+1``) the self-intersection
``s_i`` and the homology class ``c_i`` as an exponent vector over named
Novikov variables.  Series are truncated by a positive grading of the class
lattice: total degree when every ``c_i`` is effective in the chosen basis,
otherwise the anticanonical degree ``-K . beta``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Sequence

import flint

from .coefrings import NovikovSeries, QCoefficient
from .feynman import EdgeRule, WeightTable, partition_function_graphsum
from .partitions import enumerate_pairs_plus, enumerate_partitions, kappa
from .wzw import vertex_weight, w_hopf


class SurfaceError(ValueError):
    """Invalid surface description."""


class DegenerateTorusError(ValueError):
    """The chosen torus specialization makes a fixed-point weight vanish."""


@dataclass(frozen=True)
class ToricSurface:
    name: str
    k: int
    s: tuple[int, ...]
    variables: tuple[str, ...]
    class_map: tuple[tuple[int, ...], ...]
    grading: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "class_map", tuple(tuple(int(x) for x in c) for c in self.class_map))
        if self.k < 3:
            raise SurfaceError(f"a smooth complete toric surface needs k >= 3, got {self.k}")
        if len(self.s) != self.k:
            raise SurfaceError(f"expected {self.k} self-intersections, got {len(self.s)}")
        for i, x in enumerate(self.s):
            if x <= -2:
                raise SurfaceError(f"s_{i} = {x} violates s_i > -2 (surface is not Fano)")
        if len(self.class_map) != self.k:
            raise SurfaceError(f"expected {self.k} edge classes, got {len(self.class_map)}")
        for i, c in enumerate(self.class_map):
            if len(c) != len(self.variables):
                raise SurfaceError(f"class of edge {i} has {len(c)} entries for {len(self.variables)} variables")
            if not any(c):
                raise SurfaceError(f"class of edge {i} is zero")
        if _monodromy(self.s) != ((1, 0), (0, 1)):
            raise SurfaceError(f"self-intersections {self.s} do not close up around the fan")
        g = tuple(self.grading) if self.grading is not None else _default_grading(self)
        if len(g) != len(self.variables):
            raise SurfaceError("grading needs one weight per variable")
        object.__setattr__(self, "grading", g)
        for i in range(self.k):
            if self.edge_grading[i] <= 0:
                raise SurfaceError(f"edge {i} has non-positive degree {self.edge_grading[i]} in the grading")

    @property
    def edge_grading(self) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(self.grading, c)) for c in self.class_map)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "k": self.k,
            "s": list(self.s),
            "variables": list(self.variables),
            "class_map": [list(c) for c in self.class_map],
            "grading": list(self.grading),
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "ToricSurface":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(
                name=str(data.get("name", "custom")),
                k=int(data["k"]),
                s=tuple(data["s"]),
                variables=tuple(data["variables"]),
                class_map=tuple(tuple(c) for c in data["class_map"]),
                grading=tuple(data["grading"]) if data.get("grading") is not None else None,
            )
        except KeyError as exc:
            raise SurfaceError(f"surface description is missing the field {exc.args[0]!r}") from None

    @classmethod
    def load(cls, path: str | Path) -> "ToricSurface":
        return cls.from_json(Path(path).read_text())


def _monodromy(s: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Product of the step maps ``(u+, u-) -> (u- - s u+, -u+)``."""
    m = ((1, 0), (0, 1))
    for x in s:
        step = ((-x, 1), (-1, 0))
        m = tuple(
            tuple(sum(step[r][j] * m[j][c] for j in range(2)) for c in range(2)) for r in range(2)
        )
    return m


def _default_grading(surf: ToricSurface) -> tuple[int, ...]:
    if all(x >= 0 for c in surf.class_map for x in c):
        return (1,) * len(surf.variables)
    # anticanonical: f(c_i) = -K . C_i = 2 + s_i
    n = len(surf.variables)
    rows = [list(c) + [2 + x] for c, x in zip(surf.class_map, surf.s)]
    reduced, rank = flint.fmpq_mat(rows).rref()
    sol = [Fraction(0)] * n
    for r in range(rank):
        lead = next(j for j in range(n + 1) if reduced[r, j] != 0)
        if lead == n:
            raise SurfaceError("classes are inconsistent with an anticanonical grading")
        sol[lead] = Fraction(int(reduced[r, n].p), int(reduced[r, n].q))
    if rank < n or any(x.denominator != 1 or x <= 0 for x in sol):
        raise SurfaceError("no positive integral grading found; pass one explicitly")
    return tuple(int(x) for x in sol)


_PRESETS: dict[str, dict[str, Any]] = {
    "p2": dict(k=3, s=(1, 1, 1), variables=("t",), class_map=((1,), (1,), (1,))),
    "p1xp1": dict(k=4, s=(0, 0, 0, 0), variables=("tF1", "tF2"),
                  class_map=((1, 0), (0, 1), (1, 0), (0, 1))),
    "b1": dict(k=4, s=(0, -1, 0, 1), variables=("t1", "t2"),
               class_map=((1, 0), (0, 1), (1, 0), (1, 1))),
    "b2": dict(k=5, s=(0, -1, -1, -1, 0), variables=("tH", "tE1", "tE2"),
               class_map=((1, -1, 0), (0, 1, 0), (1, -1, -1), (0, 0, 1), (1, 0, -1))),
    "b3": dict(k=6, s=(-1,) * 6, variables=("tH", "tE1", "tE2", "tE3"),
               class_map=((1, -1, 0, -1), (0, 1, 0, 0), (1, -1, -1, 0),
                          (0, 0, 1, 0), (1, 0, -1, -1), (0, 0, 0, 1))),
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> ToricSurface:
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return ToricSurface(name=name, **_PRESETS[name])


def load_surface(spec: str) -> ToricSurface:
    """A preset name or a path to a JSON surface description."""
    if spec in _PRESETS:
        return preset(spec)
    try:
        return ToricSurface.load(spec)
    except FileNotFoundError:
        raise SurfaceError(f"{spec!r} is neither a preset ({', '.join(PRESET_NAMES)}) nor a readable file") from None


# ---------------------------------------------------------------------------
# fixed-point weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightRatios:
    """``tau_i = u_i^- / u_i^+`` at every fixed point."""

    tau: tuple[Fraction, ...]
    c: Fraction | None = None

    def satisfies(self, s: Sequence[int]) -> bool:
        k = len(self.tau)
        return len(s) == k and all(
            self.tau[i] + 1 / self.tau[(i + 1) % k] == s[i] for i in range(k)
        )


def derive_tau(surf: ToricSurface, c: Fraction | int | str) -> WeightRatios:
    """Tangent weight ratios for the torus specialized at ``(theta1, theta2) = (1, c)``.

    At fixed point 0 the tangent weights are ``theta1`` (towards point 1) and
    ``theta2`` (towards point ``k-1``); moving along edge ``i`` replaces
    ``(u+, u-)`` by ``(u- - s_i u+, -u+)``.
    """
    c = Fraction(c)
    plus, minus = Fraction(1), c
    taus = []
    for i in range(surf.k):
        if plus == 0 or minus == 0:
            raise DegenerateTorusError(f"torus value c = {c} makes a tangent weight vanish at vertex {i}")
        taus.append(minus / plus)
        plus, minus = minus - surf.s[i] * plus, -plus
    if (plus, minus) != (1, c):
        raise SurfaceError("tangent weights do not close up around the fan")
    ratios = WeightRatios(tuple(taus), c)
    if not ratios.satisfies(surf.s):
        raise ArithmeticError("weight ratios violate s_i = tau_i + 1/tau_{i+1}")
    return ratios


# ---------------------------------------------------------------------------
# product formula
# ---------------------------------------------------------------------------

def _class_of(surf: ToricSurface, sizes: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(n * c[j] for n, c in zip(sizes, surf.class_map)) for j in range(len(surf.variables)))


def _empty_series(surf: ToricSurface, D: int) -> NovikovSeries:
    return NovikovSeries.zero(surf.variables, D, surf.grading)


def z_product(surf: ToricSurface, D: int) -> NovikovSeries:
    """``sum_{nu_0..nu_{k-1}} prod_i q^{kappa s_i/2} W_{nu_i,nu_{i-1}} ((-1)^{s_i})^{|nu_i|} t^{class}``."""
    k, g = surf.k, surf.edge_grading
    out: dict = {}
    size_ranges = [range(D // gi + 1) for gi in g]
    for sizes in itertools.product(*size_ranges):
        if sum(a * b for a, b in zip(sizes, g)) > D:
            continue
        sign = -1 if sum(n * x for n, x in zip(sizes, surf.s)) % 2 else 1
        total = QCoefficient.zero()
        for nus in itertools.product(*(enumerate_partitions(n) for n in sizes)):
            term = QCoefficient.one()
            for i in range(k):
                term = term * w_hopf(nus[i], nus[i - 1])
                if not term:
                    break
                frame = kappa(nus[i]) * surf.s[i]
                if frame:
                    term = term * QCoefficient.q_power(Fraction(frame, 2))
            total = total + term
        if total:
            key = (_class_of(surf, sizes), 0)
            val = total * sign
            out[key] = out[key] + val if key in out else val
    return NovikovSeries(surf.variables, D, out, surf.grading)


# ---------------------------------------------------------------------------
# localization graph sum
# ---------------------------------------------------------------------------

def _vertex_bound(g: Sequence[int], D: int) -> int:
    """Largest ``|mu+| + |mu-|`` a vertex of a graph within degree ``D`` can carry."""
    k = len(g)
    best = 0
    for i in range(k):
        gi, gp = g[i], g[i - 1]
        for a in range(D // gi + 1):
            best = max(best, a + (D - a * gi) // gp)
    return best


def localization_weights(surf: ToricSurface, tau: WeightRatios, D: int) -> WeightTable:
    """Vertex weights ``z_{mu+} z_{mu-} G_{mu+,mu-}(tau_i)`` for every atom that can occur."""
    bound = _vertex_bound(surf.edge_grading, D)
    table = {}
    for i in range(surf.k):
        for plus, minus in enumerate_pairs_plus(bound):
            table[(i, plus, minus)] = vertex_weight(plus, minus, tau.tau[i], bound)
    return WeightTable(surf.k, table)


def edge_series_to_classes(surf: ToricSurface, series: NovikovSeries) -> NovikovSeries:
    """Substitute ``t_i -> t^{c_i}`` in a series over edge variables."""
    out: dict = {}
    for (d, lam), c in series.terms.items():
        key = (_class_of(surf, d), lam)
        out[key] = out[key] + c if key in out else c
    return NovikovSeries(surf.variables, series.truncation, out, surf.grading)


def z_localization(surf: ToricSurface, tau: WeightRatios, D: int) -> NovikovSeries:
    """Feynman graph sum with vertex weights ``z z G`` and edges ``((-1)^{s_i} t_i)^{d_e}``."""
    if not tau.satisfies(surf.s):
        raise ValueError("weight ratios are not compatible with the surface")
    wt = localization_weights(surf, tau, D)
    edge_sum = partition_function_graphsum(
        wt, EdgeRule.signs(surf.s), D, weights=surf.edge_grading, genus_grading=False
    )
    result = edge_series_to_classes(surf, edge_sum)
    zero = (0,) * len(surf.variables)
    return NovikovSeries(
        surf.variables, D,
        {key: (QCoefficient.one() if key == (zero, 0) else c) for key, c in result.terms.items()},
        surf.grading,
    )


# ---------------------------------------------------------------------------
# Gopakumar--Vafa resummation
# ---------------------------------------------------------------------------

class IntegralityError(ArithmeticError):
    """A BPS number came out non-integral."""


def _sine_square(m: int) -> QCoefficient:
    """``(2 sin(m lambda/2))^2 = -(w^m - w^{-m})^2`` with ``w = e^{i lambda/2}``."""
    return -((QCoefficient.w_power(m) - QCoefficient.w_power(-m)) ** 2)


def _multicover(g: int, m: int) -> QCoefficient:
    """``(1/m) (2 sin(m lambda/2))^{2g-2}``."""
    return _sine_square(m) ** (g - 1) / m


def _peel_genus(remainder: QCoefficient, cls: tuple[int, ...]) -> dict[int, int]:
    """Write ``remainder = sum_g n^g (2 sin(lambda/2))^{2g-2}`` with integer ``n^g``."""
    u = _sine_square(1)
    poly = (remainder * u).canonical()
    if poly.root_order != 1:
        raise IntegralityError(f"class {cls}: free energy needs a fractional power of q")
    if not poly.is_laurent_polynomial():
        raise IntegralityError(f"class {cls}: F times (2 sin(lambda/2))^2 is not a Laurent polynomial")
    out: dict[int, int] = {}
    while poly:
        terms = poly.numerator_terms()
        top = max(terms)
        if top % 2 or top < 0:
            raise IntegralityError(f"class {cls}: residue has top degree {top} in w")
        genus = top // 2
        # u^g has leading term (-1)^g w^{2g}
        n = terms[top] * (-1) ** genus
        if n.denominator != 1:
            raise IntegralityError(f"class {cls}, genus {genus}: non-integral invariant {n}")
        out[genus] = int(n)
        poly = poly - u**genus * int(n)
    return {g: n for g, n in out.items() if n}


def gv_extract(
    surf: ToricSurface,
    D: int,
    Z: NovikovSeries | None = None,
    signs: Sequence[int] | None = None,
) -> dict[tuple[tuple[int, ...], int], int]:
    """Integer invariants ``n^g_beta`` from ``F = log Z`` by elimination in degree.

    Solves ``F = sum n^g_beta (1/m) (2 sin(m lambda/2))^{2g-2} t^{m beta}`` with
    ``q = e^{i lambda}``.  ``signs`` optionally rescales ``t_j -> signs[j] t_j``
    before taking the logarithm.
    """
    if Z is None:
        Z = z_product(surf, D)
    if signs is not None:
        Z = Z.substitute_signs(signs)
    F = Z.log()
    coeffs: dict[tuple[int, ...], QCoefficient] = {}
    for (e, lam), c in F.terms.items():
        if lam:
            raise ValueError("free energy carries an unexpected lambda exponent")
        coeffs[e] = QCoefficient.coerce(c)
    found: dict[tuple[tuple[int, ...], int], int] = {}
    for cls in sorted(coeffs, key=lambda e: (F.degree_of(e), e)):
        remainder = coeffs[cls]
        for m in range(2, F.degree_of(cls) + 1):
            if any(x % m for x in cls):
                continue
            base = tuple(x // m for x in cls)
            for (b, genus), n in found.items():
                if b == base:
                    remainder = remainder - _multicover(genus, m) * n
        for genus, n in _peel_genus(remainder, cls).items():
            found[(cls, genus)] = n
    return dict(sorted(found.items(), key=lambda kv: (F.degree_of(kv[0][0]), kv[0])))


__all__ = [
    "ToricSurface",
    "WeightRatios",
    "SurfaceError",
    "DegenerateTorusError",
    "IntegralityError",
    "PRESET_NAMES",
    "preset",
    "load_surface",
    "derive_tau",
    "z_product",
    "z_localization",
    "localization_weights",
    "edge_series_to_classes",
    "gv_extract",
]
