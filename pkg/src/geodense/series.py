"""Exact polynomial and truncated radial series arithmetic.

Coefficients are :class:`fractions.Fraction` throughout.  A
:class:`WeightedPoly` is a polynomial in the warp coefficients ``b_{j,i}``
where ``b_{j,i}`` carries weight ``j``; every product is truncated to a
weight budget.  A :class:`RadialSeries` is a truncated Laurent series in
the geodesic radius ``r`` whose coefficients are weighted polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import NotInvertibleError, UsageError

Rational = Fraction
Scalar = Union[int, Fraction]


class WarpVar(NamedTuple):
    """The warp coefficient ``b_{degree,direction}``."""

    direction: int
    degree: int

    @property
    def weight(self) -> int:
        return self.degree

    def __str__(self) -> str:
        return f"b_{{{self.degree},{self.direction}}}"


# A monomial is a sorted tuple of (variable, exponent) pairs; () is the unit.
Monomial = tuple


@lru_cache(maxsize=None)
def monomial_weight(mono: Monomial) -> int:
    return sum(v.degree * e for v, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def monomial_key(mono: Monomial):
    """Graded lexicographic key on (weight, direction, degree)."""
    return (monomial_weight(mono), tuple((v.direction, v.degree, e) for v, e in mono))


def render_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)


class WeightedPoly:
    """Polynomial in warp variables with rational coefficients, truncated by weight.

    Instances are immutable.  Zero coefficients are never stored and every
    stored monomial has weight at most ``budget``.
    """

    __slots__ = ("_terms", "budget")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None, budget: int = 0):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c and monomial_weight(mono) <= budget:
                    clean[mono] = Fraction(c)
        self._terms = clean
        self.budget = budget

    @classmethod
    def _raw(cls, terms: dict, budget: int) -> WeightedPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.budget = budget
        return obj

    @classmethod
    def constant(cls, value: Scalar, budget: int = 0) -> WeightedPoly:
        return cls({(): value}, budget)

    @classmethod
    def var(cls, v: WarpVar, budget: int) -> WeightedPoly:
        return cls({((v, 1),): 1}, budget)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in graded lexicographic monomial order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def weights(self) -> set[int]:
        return {monomial_weight(m) for m in self._terms}

    def variables(self) -> set[WarpVar]:
        return {v for mono in self._terms for v, _ in mono}

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightedPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"WeightedPoly({self}, budget={self.budget})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(render_monomial(mono))
            elif c == -1:
                parts.append("-" + render_monomial(mono))
            else:
                parts.append(f"{c}*{render_monomial(mono)}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> WeightedPoly:
        if isinstance(other, WeightedPoly):
            if other.budget != self.budget:
                raise UsageError(
                    f"weight budgets differ: {self.budget} vs {other.budget}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return WeightedPoly.constant(other, self.budget)
        raise TypeError(f"cannot combine WeightedPoly with {type(other).__name__}")

    def __add__(self, other) -> WeightedPoly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return WeightedPoly._raw(out, self.budget)

    __radd__ = __add__

    def __neg__(self) -> WeightedPoly:
        return WeightedPoly._raw({m: -c for m, c in self._terms.items()}, self.budget)

    def __sub__(self, other) -> WeightedPoly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> WeightedPoly:
        return (-self) + other

    def scale(self, c: Scalar) -> WeightedPoly:
        if not c:
            return WeightedPoly._raw({}, self.budget)
        c = Fraction(c)
        return WeightedPoly._raw({m: v * c for m, v in self._terms.items()}, self.budget)

    def __mul__(self, other) -> WeightedPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        budget = self.budget
        out: dict = {}
        rhs = [(m, c, monomial_weight(m)) for m, c in other._terms.items()]
        for ma, ca in self._terms.items():
            wa = monomial_weight(ma)
            for mb, cb, wb in rhs:
                if wa + wb > budget:
                    continue
                mono = _mono_mul(ma, mb)
                s = out.get(mono, 0) + ca * cb
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return WeightedPoly._raw(out, budget)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> WeightedPoly:
        if not isinstance(n, int) or n < 0:
            raise UsageError("only non-negative integer powers are supported")
        result = WeightedPoly.constant(1, self.budget)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> WeightedPoly:
        """Multiplicative inverse modulo the weight budget.

        Every warp variable has positive weight, so the non-constant part is
        nilpotent and the geometric series terminates.
        """
        c0 = self.constant_term()
        if not c0:
            raise NotInvertibleError(f"{self} has zero constant part")
        inv0 = 1 / c0
        nil = (self - c0).scale(-inv0)
        result = WeightedPoly.constant(1, self.budget)
        term = result
        while True:
            term = term * nil
            if not term:
                break
            result = result + term
        return result.scale(inv0)

    def with_budget(self, budget: int) -> WeightedPoly:
        return WeightedPoly(self._terms, budget)

    def homogeneous_part(self, weight: int) -> WeightedPoly:
        return WeightedPoly._raw(
            {m: c for m, c in self._terms.items() if monomial_weight(m) == weight},
            self.budget,
        )

    def evaluate(self, values: Mapping[WarpVar, Scalar]) -> Fraction:
        """Substitute rationals for the variables; missing variables count as zero."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                term *= Fraction(values.get(v, 0)) ** e
                if not term:
                    break
            total += term
        return total

    def relabel(self, mapping: Mapping[int, int]) -> WeightedPoly:
        """Rename directions, e.g. to copy a one-direction result onto others."""
        out = {}
        for mono, c in self._terms.items():
            new = tuple(
                sorted((WarpVar(mapping.get(v.direction, v.direction), v.degree), e)
                       for v, e in mono)
            )
            out[new] = c
        return WeightedPoly._raw(out, self.budget)


def poly_arith(a: WeightedPoly, b, op: str) -> WeightedPoly:
    """Dispatch ``add``, ``mul`` or ``scale`` (``b`` a rational) on weighted polynomials."""
    if op == "add":
        return a + a._coerce(b)
    if op == "mul":
        return a * a._coerce(b)
    if op == "scale":
        return a.scale(b)
    raise UsageError(f"unknown polynomial operation {op!r}")


class RadialSeries:
    """Truncated Laurent series ``sum_{p=low}^{order} c_p r^p``.

    Coefficients are :class:`WeightedPoly` sharing one budget.  Powers above
    ``order`` are unknown, not zero.  Products keep only the powers that the
    truncation of both operands determines exactly.
    """

    __slots__ = ("low", "coeffs", "order", "budget")

    def __init__(self, coeffs: Iterable, low: int = 0, order: int | None = None,
                 budget: int = 0):
        polys = []
        for c in coeffs:
            if isinstance(c, WeightedPoly):
                if c.budget != budget:
                    raise UsageError(f"coefficient budget {c.budget} != series budget {budget}")
                polys.append(c)
            else:
                polys.append(WeightedPoly.constant(c, budget))
        if order is None:
            order = low + len(polys) - 1
        polys = polys[: max(order - low + 1, 0)]
        zero = WeightedPoly._raw({}, budget)
        while len(polys) < order - low + 1:
            polys.append(zero)
        self.low = low
        self.coeffs = tuple(polys)
        self.order = order
        self.budget = budget

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1, budget: int = 0) -> RadialSeries:
        return cls([coeff], low=power, order=order, budget=budget)

    def coeff(self, p: int) -> WeightedPoly:
        if p > self.order:
            raise UsageError(f"r^{p} lies beyond truncation order {self.order}")
        if p < self.low:
            return WeightedPoly._raw({}, self.budget)
        return self.coeffs[p - self.low]

    def rationals(self) -> list[Fraction]:
        """Coefficients as rationals, starting at ``low``; all must be constant."""
        out = []
        for c in self.coeffs:
            if not c.is_constant():
                raise UsageError("series has symbolic coefficients")
            out.append(c.constant_term())
        return out

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        return None

    def normalized(self) -> RadialSeries:
        """Drop leading zero coefficients so ``low`` is the true valuation."""
        v = self.valuation()
        if v is None or v == self.low:
            return self
        return RadialSeries(self.coeffs[v - self.low:], low=v, order=self.order,
                            budget=self.budget)

    def truncate(self, order: int) -> RadialSeries:
        if order >= self.order:
            return self
        return RadialSeries(self.coeffs, low=self.low, order=order, budget=self.budget)

    def shift(self, power: int) -> RadialSeries:
        """Multiply by ``r**power``."""
        return RadialSeries(self.coeffs, low=self.low + power, order=self.order + power,
                            budget=self.budget)

    def value_at_zero(self) -> WeightedPoly:
        for p in range(self.low, min(0, self.order + 1)):
            if self.coeff(p):
                raise UsageError(f"series has a pole of order {-p} at r=0")
        return self.coeff(0)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadialSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        lo = min(self.low, other.low)
        return all(self.coeff(p) == other.coeff(p) for p in range(lo, self.order + 1))

    def __repr__(self) -> str:
        terms = [f"({c})*r^{self.low + i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"RadialSeries({body} + O(r^{self.order + 1}))"

    def _coerce(self, other) -> RadialSeries:
        if isinstance(other, RadialSeries):
            if other.budget != self.budget:
                raise UsageError(f"weight budgets differ: {self.budget} vs {other.budget}")
            return other
        if isinstance(other, (int, Fraction, WeightedPoly)):
            return RadialSeries([other], low=0, order=max(self.order, 0), budget=self.budget)
        raise TypeError(f"cannot combine RadialSeries with {type(other).__name__}")

    def __add__(self, other) -> RadialSeries:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        low = min(self.low, other.low)
        order = min(self.order, other.order)
        return RadialSeries(
            [self.coeff(p) + other.coeff(p) for p in range(low, order + 1)],
            low=low, order=order, budget=self.budget,
        )

    __radd__ = __add__

    def __neg__(self) -> RadialSeries:
        return RadialSeries([-c for c in self.coeffs], low=self.low, order=self.order,
                            budget=self.budget)

    def __sub__(self, other) -> RadialSeries:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RadialSeries:
        return (-self) + other

    def scale(self, c) -> RadialSeries:
        return RadialSeries([x * c for x in self.coeffs], low=self.low, order=self.order,
                            budget=self.budget)

    def __mul__(self, other) -> RadialSeries:
        if isinstance(other, (int, Fraction, WeightedPoly)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        low = a.low + b.low
        # the first unknown power of a*b is min(a.order + 1 + b.low, b.order + 1 + a.low)
        order = min(a.order + b.low, b.order + a.low)
        zero = WeightedPoly._raw({}, self.budget)
        out = [zero] * max(order - low + 1, 0)
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            for j, cb in enumerate(b.coeffs):
                if i + j >= len(out):
                    break
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return RadialSeries(out, low=low, order=order, budget=self.budget)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RadialSeries:
        if not isinstance(n, int) or n < 0:
            raise UsageError("only non-negative integer powers are supported")
        if n == 0:
            return RadialSeries([1], order=max(self.order, 0), budget=self.budget)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result


def series_arith(a: RadialSeries, b: RadialSeries, op: str) -> RadialSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown series operation {op!r}")


def series_invert(s: RadialSeries) -> RadialSeries:
    """Reciprocal of ``s = r^e * u`` with ``u(0)`` a nonzero rational (plus nilpotents).

    The result is ``r^{-e} * u^{-1}`` truncated at order ``s.order - 2e``, so
    that ``s * series_invert(s)`` is exact through ``r^{s.order - e}``.
    """
    s = s.normalized()
    e = s.valuation()
    if e is None:
        raise NotInvertibleError("cannot invert the zero series")
    lead = s.coeffs[0]
    if not lead.constant_term():
        raise NotInvertibleError(
            f"leading coefficient {lead} of r^{e} has no nonzero rational part"
        )
    n_terms = s.order - e + 1
    inv_lead = lead.inverse()
    v = [inv_lead]
    for n in range(1, n_terms):
        acc = WeightedPoly._raw({}, s.budget)
        for j in range(1, n + 1):
            if s.coeffs[j]:
                acc = acc + s.coeffs[j] * v[n - j]
        v.append(-(inv_lead * acc))
    return RadialSeries(v, low=-e, order=s.order - 2 * e, budget=s.budget)


def series_derivative(s: RadialSeries) -> RadialSeries:
    """Term-wise ``d/dr``; the truncation order drops by one."""
    coeffs = [c.scale(s.low + i) for i, c in enumerate(s.coeffs)]
    low = s.low - 1
    if s.low == 0:
        coeffs, low = coeffs[1:], 0
    return RadialSeries(coeffs, low=low, order=s.order - 1, budget=s.budget)


# -- elementary expansions ------------------------------------------------

def _taylor(coeff_of, order: int, budget: int) -> RadialSeries:
    return RadialSeries([coeff_of(p) for p in range(order + 1)], order=order, budget=budget)


def sin_series(order: int, budget: int = 0) -> RadialSeries:
    return _taylor(lambda p: Fraction((-1) ** (p // 2), factorial(p)) if p % 2 else 0,
                   order, budget)


def cos_series(order: int, budget: int = 0) -> RadialSeries:
    return _taylor(lambda p: 0 if p % 2 else Fraction((-1) ** (p // 2), factorial(p)),
                   order, budget)


def sinh_series(order: int, budget: int = 0) -> RadialSeries:
    return _taylor(lambda p: Fraction(1, factorial(p)) if p % 2 else 0, order, budget)


def cosh_series(order: int, budget: int = 0) -> RadialSeries:
    return _taylor(lambda p: 0 if p % 2 else Fraction(1, factorial(p)), order, budget)
