"""Exact scalar and series arithmetic.

Three value types live here:

* :class:`QCoefficient` -- a rational function of a single root ``w`` of
  ``q`` (``w**(2*M) == q``), kept in lowest terms.
* :class:`NovikovSeries` -- a truncated multivariate series in Novikov
  variables with an independent integer (possibly negative) exponent of the
  genus parameter ``lambda``.
* :class:`XiSeries` -- a truncated Laurent series in ``xi`` where ``q = e**xi``.

Polynomial arithmetic is delegated to ``flint.fmpq_poly``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import flint

__all__ = [
    "QCoefficient",
    "NovikovSeries",
    "XiSeries",
    "qc_arith",
    "series_exp_log",
    "lambda_expand",
]

_Poly = flint.fmpq_poly


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _fmpq(x: Fraction | int) -> flint.fmpq:
    x = _frac(x)
    return flint.fmpq(x.numerator, x.denominator)


def _valuation(p: _Poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("valuation of zero polynomial")


def _shift_down(p: _Poly, n: int) -> _Poly:
    if n == 0:
        return p
    return _Poly(p.coeffs()[n:])


def _stretch(p: _Poly, r: int) -> _Poly:
    """p(w) -> p(w**r)."""
    if r == 1:
        return p
    cs = p.coeffs()
    out = [0] * ((len(cs) - 1) * r + 1) if cs else []
    for i, c in enumerate(cs):
        out[i * r] = c
    return _Poly(out)


def _monomial(e: int) -> _Poly:
    return _Poly([0] * e + [1])


class QCoefficient:
    """Exact element of Q(w) with the convention ``w**(2*root_order) == q``.

    The value is ``w**shift * num(w) / den(w)`` with ``den`` monic,
    ``num(0) != 0`` and ``den(0) != 0`` (unless the value is zero) and
    ``gcd(num, den) == 1``.  With this normalization equal values at equal
    root order have identical representations.
    """

    __slots__ = ("num", "den", "shift", "root_order")

    def __init__(self, num: _Poly, den: _Poly, shift: int = 0, root_order: int = 1, *, _reduced: bool = False):
        if root_order < 1:
            raise ValueError("root_order must be a positive integer")
        if not _reduced:
            num, den, shift = self._normalize(num, den, shift)
        self.num = num
        self.den = den
        self.shift = shift
        self.root_order = root_order

    @staticmethod
    def _normalize(num: _Poly, den: _Poly, shift: int) -> tuple[_Poly, _Poly, int]:
        if den == 0:
            raise ZeroDivisionError("QCoefficient with zero denominator")
        if num == 0:
            return _Poly([]), _Poly([1]), 0
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        vn = _valuation(num)
        vd = _valuation(den)
        num = _shift_down(num, vn)
        den = _shift_down(den, vd)
        shift += vn - vd
        lead = den.coeffs()[-1]
        if lead != 1:
            num = num / lead
            den = den / lead
        return num, den, shift

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, root_order: int = 1) -> "QCoefficient":
        return cls(_Poly([]), _Poly([1]), 0, root_order, _reduced=True)

    @classmethod
    def one(cls, root_order: int = 1) -> "QCoefficient":
        return cls(_Poly([1]), _Poly([1]), 0, root_order, _reduced=True)

    @classmethod
    def constant(cls, c: Fraction | int, root_order: int = 1) -> "QCoefficient":
        c = _frac(c)
        if c == 0:
            return cls.zero(root_order)
        return cls(_Poly([_fmpq(c)]), _Poly([1]), 0, root_order, _reduced=True)

    @classmethod
    def w_power(cls, e: int, root_order: int = 1, coef: Fraction | int = 1) -> "QCoefficient":
        if _frac(coef) == 0:
            return cls.zero(root_order)
        return cls(_Poly([_fmpq(coef)]), _Poly([1]), e, root_order, _reduced=True)

    @classmethod
    def q_power(cls, x: Fraction | int, root_order: int | None = None) -> "QCoefficient":
        """``q**x`` at the smallest admissible root order (or the one given)."""
        x = _frac(x)
        need = required_root_order(x)
        if root_order is None:
            root_order = need
        elif root_order % need:
            raise ValueError(f"q^{x} is not representable at root order {root_order}")
        return cls.w_power(int(2 * root_order * x), root_order)

    @classmethod
    def from_laurent(cls, num: Mapping[int, Fraction | int], den: Mapping[int, Fraction | int] | None = None,
                     root_order: int = 1) -> "QCoefficient":
        """Build ``sum num[e] w**e / sum den[e] w**e``."""
        n, sn = _laurent_to_poly(num)
        if den is None:
            d, sd = _Poly([1]), 0
        else:
            d, sd = _laurent_to_poly(den)
            if d == 0:
                raise ZeroDivisionError("zero denominator")
        return cls(n, d, sn - sd, root_order)

    @classmethod
    def coerce(cls, x: Any, root_order: int = 1) -> "QCoefficient":
        if isinstance(x, QCoefficient):
            return x
        return cls.constant(_frac(x), root_order)

    # -- structure ----------------------------------------------------
    def rescale(self, root_order: int) -> "QCoefficient":
        """Same value written in the root ``w' = w**(1/r)``, ``r = root_order/self.root_order``."""
        if root_order == self.root_order:
            return self
        if root_order % self.root_order:
            raise ValueError(f"cannot rescale root order {self.root_order} to {root_order}")
        r = root_order // self.root_order
        return QCoefficient(_stretch(self.num, r), _stretch(self.den, r), self.shift * r, root_order, _reduced=True)

    def minimal_root_order(self) -> int:
        """Smallest root order at which this value is representable."""
        if self.is_zero():
            return 1
        g = self.shift
        for p in (self.num, self.den):
            for i, c in enumerate(p.coeffs()):
                if c != 0:
                    g = math.gcd(g, i)
        r = math.gcd(g, self.root_order) if g else self.root_order
        return self.root_order // r

    def canonical(self) -> "QCoefficient":
        m = self.minimal_root_order()
        if m == self.root_order:
            return self
        r = self.root_order // m
        num = _Poly(self.num.coeffs()[::r])
        den = _Poly(self.den.coeffs()[::r])
        return QCoefficient(num, den, self.shift // r, m, _reduced=True)

    def is_zero(self) -> bool:
        return self.num == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def numerator_terms(self) -> dict[int, Fraction]:
        return {i + self.shift: _frac(c) for i, c in enumerate(self.num.coeffs()) if c != 0}

    def denominator_terms(self) -> dict[int, Fraction]:
        return {i: _frac(c) for i, c in enumerate(self.den.coeffs()) if c != 0}

    def is_laurent_polynomial(self) -> bool:
        return self.den.degree() == 0

    def as_rational(self) -> Fraction | None:
        """The value as a rational number if it is constant, else ``None``."""
        if self.is_zero():
            return Fraction(0)
        if self.shift == 0 and self.num.degree() == 0 and self.den.degree() == 0:
            return _frac(self.num.coeffs()[0])
        return None

    # -- arithmetic ---------------------------------------------------
    def _align(self, other: Any) -> tuple["QCoefficient", "QCoefficient"]:
        if not isinstance(other, QCoefficient):
            other = QCoefficient.constant(_frac(other), self.root_order)
        if other.root_order == self.root_order:
            return self, other
        m = math.lcm(self.root_order, other.root_order)
        return self.rescale(m), other.rescale(m)

    def __add__(self, other: Any) -> "QCoefficient":
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        s = min(a.shift, b.shift)
        na = a.num * _monomial(a.shift - s) if a.shift > s else a.num
        nb = b.num * _monomial(b.shift - s) if b.shift > s else b.num
        if a.den == b.den:
            return QCoefficient(na + nb, a.den, s, a.root_order)
        g = a.den.gcd(b.den)
        ca = b.den // g
        cb = a.den // g
        return QCoefficient(na * ca + nb * cb, a.den * ca, s, a.root_order)

    __radd__ = __add__

    def __neg__(self) -> "QCoefficient":
        return QCoefficient(-self.num, self.den, self.shift, self.root_order, _reduced=True)

    def __sub__(self, other: Any) -> "QCoefficient":
        return self + (-QCoefficient.coerce(other, self.root_order))

    def __rsub__(self, other: Any) -> "QCoefficient":
        return (-self) + other

    def __mul__(self, other: Any) -> "QCoefficient":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QCoefficient.zero(self.root_order)
            return QCoefficient(self.num * _fmpq(other), self.den, self.shift, self.root_order, _reduced=True)
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.is_zero() or b.is_zero():
            return QCoefficient.zero(a.root_order)
        # cross-cancel keeps the operands small
        g1 = a.num.gcd(b.den)
        g2 = b.num.gcd(a.den)
        na, db = (a.num // g1, b.den // g1) if g1.degree() > 0 else (a.num, b.den)
        nb, da = (b.num // g2, a.den // g2) if g2.degree() > 0 else (b.num, a.den)
        num = na * nb
        den = da * db
        lead = den.coeffs()[-1]
        if lead != 1:
            num = num / lead
            den = den / lead
        return QCoefficient(num, den, a.shift + b.shift, a.root_order, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "QCoefficient":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QCoefficient")
        num, den = self.den, self.num
        lead = den.coeffs()[-1]
        return QCoefficient(num / lead, den / lead, -self.shift, self.root_order, _reduced=True)

    def __truediv__(self, other: Any) -> "QCoefficient":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of QCoefficient by zero")
            return self * (1 / Fraction(other))
        return self * QCoefficient.coerce(other, self.root_order).inverse()

    def __rtruediv__(self, other: Any) -> "QCoefficient":
        return QCoefficient.coerce(other, self.root_order) * self.inverse()

    def __pow__(self, n: int) -> "QCoefficient":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return QCoefficient.one(self.root_order)
        return QCoefficient(self.num ** n, self.den ** n, self.shift * n, self.root_order, _reduced=True)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, QCoefficient):
            try:
                other = QCoefficient.constant(_frac(other), self.root_order)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.shift == b.shift and a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.shift, tuple(c.numerator_terms().items()), tuple(c.denominator_terms().items()), c.root_order))

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        """Canonical ``(num)/(den)`` form with ascending ``coef*w^e`` terms."""
        return f"({_terms_text(self.numerator_terms())})/({_terms_text(self.denominator_terms())})"

    @classmethod
    def from_text(cls, text: str, root_order: int = 1) -> "QCoefficient":
        m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
        if m is None:
            return cls.from_laurent(_parse_terms(text), None, root_order)
        return cls.from_laurent(_parse_terms(m.group(1)), _parse_terms(m.group(2)), root_order)

    def to_json(self) -> dict[str, list[str]]:
        return {
            "num": [_term_text(e, c) for e, c in sorted(self.numerator_terms().items())],
            "den": [_term_text(e, c) for e, c in sorted(self.denominator_terms().items())],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Sequence[str]], root_order: int = 1) -> "QCoefficient":
        num = _parse_terms(" + ".join(data["num"])) if data["num"] else {}
        den = _parse_terms(" + ".join(data["den"]))
        return cls.from_laurent(num, den, root_order)

    def __repr__(self) -> str:
        return f"QCoefficient({self.to_text()!r}, root_order={self.root_order})"

    __str__ = to_text


def required_root_order(x: Fraction) -> int:
    """Smallest M with ``2*M*x`` integral."""
    den = _frac(x).denominator
    return den // math.gcd(den, 2) if den > 1 else 1


def _laurent_to_poly(terms: Mapping[int, Fraction | int]) -> tuple[_Poly, int]:
    terms = {e: c for e, c in terms.items() if c != 0}
    if not terms:
        return _Poly([]), 0
    lo = min(terms)
    hi = max(terms)
    cs = [0] * (hi - lo + 1)
    for e, c in terms.items():
        cs[e - lo] = _fmpq(c)
    return _Poly(cs), lo


def _term_text(e: int, c: Fraction) -> str:
    return f"{c}*w^{e}"


def _terms_text(terms: Mapping[int, Fraction]) -> str:
    if not terms:
        return "0"
    return " + ".join(_term_text(e, c) for e, c in sorted(terms.items()))


_TERM = re.compile(r"\s*([+-]?\s*\d+(?:/\d+)?)\s*(?:\*\s*w\s*\^\s*([+-]?\d+))?\s*")


def _parse_terms(text: str) -> dict[int, Fraction]:
    text = text.strip()
    if text in ("", "0"):
        return {}
    out: dict[int, Fraction] = {}
    for chunk in text.split(" + "):
        m = _TERM.fullmatch(chunk)
        if m is None:
            raise ValueError(f"malformed coefficient term {chunk!r}")
        e = int(m.group(2)) if m.group(2) is not None else 0
        out[e] = out.get(e, Fraction(0)) + Fraction(m.group(1).replace(" ", ""))
    return out


def qc_arith(a: QCoefficient, b: QCoefficient, op: str) -> QCoefficient:
    """Binary operation ``op`` in {"add", "mul", "div"} at the common root order."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        if QCoefficient.coerce(b).is_zero():
            raise ZeroDivisionError("qc_arith: division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Novikov series
# ---------------------------------------------------------------------------

Key = tuple[tuple[int, ...], int]


def _is_zero(c: Any) -> bool:
    return not c


@dataclass(frozen=True)
class NovikovSeries:
    """Truncated series in Novikov variables with a tracked ``lambda`` exponent.

    ``terms`` maps ``(exponent vector, lambda exponent)`` to a coefficient.
    Coefficients may be any exact ring elements (``Fraction``,
    :class:`QCoefficient`, ...).  A term is kept iff its weighted degree
    ``sum(weights[j] * e[j])`` lies in ``[0, truncation]``; the zero vector
    is the only exponent of degree zero.
    """

    variables: tuple[str, ...]
    truncation: int
    terms: Mapping[Key, Any] = field(default_factory=dict)
    weights: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        w = tuple(self.weights) if self.weights is not None else (1,) * len(self.variables)
        if len(w) != len(self.variables) or any(x <= 0 for x in w):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", w)
        clean: dict[Key, Any] = {}
        for (e, lam), c in self.terms.items():
            e = tuple(e)
            if len(e) != len(self.variables):
                raise ValueError(f"exponent {e} does not match variables {self.variables}")
            if _is_zero(c):
                continue
            d = self.degree_of(e)
            if d < 0 or (d == 0 and any(e)):
                raise ValueError(f"exponent {e} has non-positive degree {d}")
            if d <= self.truncation:
                clean[(e, int(lam))] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------
    @classmethod
    def one(cls, variables: Sequence[str], truncation: int, weights: Sequence[int] | None = None, unit: Any = 1) -> "NovikovSeries":
        return cls(tuple(variables), truncation, {((0,) * len(variables), 0): unit}, weights)

    @classmethod
    def zero(cls, variables: Sequence[str], truncation: int, weights: Sequence[int] | None = None) -> "NovikovSeries":
        return cls(tuple(variables), truncation, {}, weights)

    @classmethod
    def monomial(cls, variables: Sequence[str], truncation: int, exponents: Sequence[int], coef: Any = 1,
                 lam: int = 0, weights: Sequence[int] | None = None) -> "NovikovSeries":
        return cls(tuple(variables), truncation, {(tuple(exponents), lam): coef}, weights)

    def _like(self, terms: Mapping[Key, Any]) -> "NovikovSeries":
        return NovikovSeries(self.variables, self.truncation, terms, self.weights)

    # -- inspection ---------------------------------------------------
    def degree_of(self, e: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def coefficient(self, exponents: Sequence[int], lam: int = 0) -> Any:
        return self.terms.get((tuple(exponents), lam), 0)

    def constant_part(self) -> dict[int, Any]:
        zero = (0,) * len(self.variables)
        return {lam: c for (e, lam), c in self.terms.items() if e == zero}

    def items(self) -> list[tuple[Key, Any]]:
        return sorted(self.terms.items(), key=lambda kv: (self.degree_of(kv[0][0]), kv[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "NovikovSeries") -> None:
        if self.variables != other.variables or self.weights != other.weights:
            raise ValueError("series over different variables or gradings")

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "NovikovSeries") -> "NovikovSeries":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return NovikovSeries(self.variables, min(self.truncation, other.truncation), out, self.weights)

    def __neg__(self) -> "NovikovSeries":
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "NovikovSeries") -> "NovikovSeries":
        return self + (-other)

    def scale(self, c: Any) -> "NovikovSeries":
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: Any) -> "NovikovSeries":
        if not isinstance(other, NovikovSeries):
            return self.scale(other)
        self._check(other)
        D = min(self.truncation, other.truncation)
        left = [(e, lam, self.degree_of(e), c) for (e, lam), c in self.terms.items()]
        right = [(e, lam, other.degree_of(e), c) for (e, lam), c in other.terms.items()]
        out: dict[Key, Any] = {}
        for e1, l1, d1, c1 in left:
            for e2, l2, d2, c2 in right:
                if d1 + d2 > D:
                    continue
                k = (tuple(a + b for a, b in zip(e1, e2)), l1 + l2)
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return NovikovSeries(self.variables, D, out, self.weights)

    __rmul__ = scale

    def __pow__(self, n: int) -> "NovikovSeries":
        out = NovikovSeries.one(self.variables, self.truncation, self.weights, _unit_like(self))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        if self.variables != other.variables or self.weights != other.weights:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def truncate(self, truncation: int) -> "NovikovSeries":
        return NovikovSeries(self.variables, min(truncation, self.truncation), self.terms, self.weights)

    def map_coefficients(self, f) -> "NovikovSeries":
        return self._like({k: f(c) for k, c in self.terms.items()})

    def substitute_signs(self, signs: Sequence[int]) -> "NovikovSeries":
        """Apply ``t_j -> signs[j] * t_j``."""
        out = {}
        for (e, lam), c in self.terms.items():
            s = 1
            for sj, ej in zip(signs, e):
                if sj == -1 and ej % 2:
                    s = -s
            out[(e, lam)] = c if s == 1 else -c
        return self._like(out)

    # -- exp / log ----------------------------------------------------
    def exp(self) -> "NovikovSeries":
        if any(not _is_zero(c) for c in self.constant_part().values()):
            raise ValueError("exp needs a series without constant term")
        unit = _unit_like(self)
        result = NovikovSeries.one(self.variables, self.truncation, self.weights, unit)
        power = result
        for n in range(1, self._nilpotency_bound() + 1):
            power = (power * self).scale(Fraction(1, n))
            if power.is_zero():
                break
            result = result + power
        return result

    def log(self) -> "NovikovSeries":
        const = self.constant_part()
        if set(const) != {0} or const[0] != 1:
            raise ValueError("log needs a series with constant term 1")
        zero = (0,) * len(self.variables)
        x = self._like({k: c for k, c in self.terms.items() if k != (zero, 0)})
        result = NovikovSeries.zero(self.variables, self.truncation, self.weights)
        power = NovikovSeries.one(self.variables, self.truncation, self.weights, _unit_like(self))
        for n in range(1, self._nilpotency_bound() + 1):
            power = power * x
            if power.is_zero():
                break
            sign = 1 if n % 2 else -1
            result = result + power.scale(Fraction(sign, n))
        return result

    def _nilpotency_bound(self) -> int:
        return max(self.truncation, 0)

    def __repr__(self) -> str:
        return f"NovikovSeries({self.variables}, D={self.truncation}, {len(self.terms)} terms)"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (e, lam), c in self.items():
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.variables, e) if x
            )
            if lam:
                mono = (mono + "*" if mono else "") + f"lambda^{lam}"
            ctext = c.to_text() if isinstance(c, QCoefficient) else str(c)
            parts.append(f"[{ctext}]" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _unit_like(s: NovikovSeries) -> Any:
    for c in s.terms.values():
        if isinstance(c, QCoefficient):
            return QCoefficient.one(c.root_order)
        break
    return 1


def series_exp_log(s: NovikovSeries, direction: str) -> NovikovSeries:
    """Truncated formal ``exp`` or ``log``."""
    if direction == "exp":
        return s.exp()
    if direction == "log":
        return s.log()
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# xi expansions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XiSeries:
    """Laurent series in ``xi`` known exactly through ``xi**order``."""

    order: int
    coefficients: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "coefficients",
            {e: Fraction(c) for e, c in sorted(self.coefficients.items()) if c != 0 and e <= self.order},
        )

    def __getitem__(self, e: int) -> Fraction:
        if e > self.order:
            raise KeyError(f"xi^{e} is beyond the computed order {self.order}")
        return self.coefficients.get(e, Fraction(0))

    def valuation(self) -> int | None:
        return min(self.coefficients) if self.coefficients else None

    def __str__(self) -> str:
        body = " + ".join(f"{c}*xi^{e}" for e, c in self.coefficients.items()) or "0"
        return f"{body} + O(xi^{self.order + 1})"


def _exp_series_of_poly(terms: Mapping[int, Fraction], scale: Fraction, n_terms: int) -> list[Fraction]:
    """Coefficients of ``sum_j c_j exp(j*scale*x)`` in powers of x, first n_terms."""
    out = []
    fact = 1
    for n in range(n_terms):
        if n:
            fact *= n
        s = sum(c * (e * scale) ** n for e, c in terms.items())
        out.append(Fraction(s) / fact)
    return out


def lambda_expand(c: QCoefficient | Fraction | int, order: int) -> XiSeries:
    """Expand ``c`` around ``q = 1`` via ``w = exp(xi / (2M))``, through ``xi**order``."""
    c = QCoefficient.coerce(c)
    if c.is_zero():
        return XiSeries(order, {})
    scale = Fraction(1, 2 * c.root_order)
    num = c.numerator_terms()
    den = c.denominator_terms()
    # the order of vanishing at w = 1 is at most the polynomial degree
    max_val = max(den) + 1
    dser = _exp_series_of_poly(den, scale, max_val + 1)
    vd = next((i for i, x in enumerate(dser) if x != 0), None)
    if vd is None:
        raise ValueError("denominator vanishes to all computed orders at w = 1")
    # numerator up to xi^(order + vd); den series up to the same relative length
    need = order + vd + 1
    nser = _exp_series_of_poly(num, scale, max(need, 1))
    dser = _exp_series_of_poly(den, scale, need + vd + 1)[vd:]
    # long division of power series: nser / dser, then shift by -vd
    length = need
    quot: list[Fraction] = []
    rem = list(nser) + [Fraction(0)] * max(0, length - len(nser))
    d0 = dser[0]
    for i in range(length):
        qi = rem[i] / d0
        quot.append(qi)
        if qi:
            for j in range(1, length - i):
                if j < len(dser):
                    rem[i + j] -= qi * dser[j]
    coeffs = {i - vd: v for i, v in enumerate(quot)}
    return XiSeries(order, coeffs)
