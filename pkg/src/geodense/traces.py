"""Trace monomials in the Jacobi operator and its radial derivatives.

A word ``Tr[i1,...,il]`` stands for ``Tr{J_{i1} ... J_{il}}`` where ``J_i``
is the i-th covariant derivative of the Jacobi operator along the radial
geodesic.  Words are stored as sorted index tuples; this identifies all
cyclic words up to total order 8, beyond which the representation is
ambiguous and rejected.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from .errors import UnsupportedOrderError, UsageError

MAX_ORDER = 8

TraceWord = tuple  # sorted tuple of non-negative ints
TraceMonomial = tuple  # sorted tuple of TraceWords (repeats allowed)


def make_word(*indices: int) -> TraceWord:
    if not indices:
        raise UsageError("a trace word needs at least one factor")
    if any(i < 0 for i in indices):
        raise UsageError(f"derivative orders must be non-negative: {indices}")
    return tuple(sorted(indices))


def word_order(word: TraceWord) -> int:
    return sum(2 + i for i in word)


def _word_key(word: TraceWord):
    return (word_order(word), len(word), word)


def make_monomial(words: Iterable[TraceWord]) -> TraceMonomial:
    return tuple(sorted((tuple(sorted(w)) for w in words), key=_word_key))


def monomial_order(mono: TraceMonomial) -> int:
    return sum(word_order(w) for w in mono)


def monomial_key(mono: TraceMonomial):
    """Deterministic ordering: single traces first, then by factor keys."""
    return (monomial_order(mono), len(mono), tuple(_word_key(w) for w in mono))


# -- rendering and parsing --------------------------------------------------

def render_word(word: TraceWord) -> str:
    return "Tr[" + ",".join(str(i) for i in word) + "]"


def render_monomial(mono: TraceMonomial) -> str:
    if not mono:
        return "1"
    parts = []
    for word, e in _grouped(mono):
        parts.append(render_word(word) + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


def _grouped(mono: TraceMonomial):
    seen: dict = {}
    for w in mono:
        seen[w] = seen.get(w, 0) + 1
    return list(seen.items())


_FACTOR = re.compile(r"Tr\[(\d+(?:,\d+)*)\](?:\^(\d+))?$")


def parse_monomial(text: str) -> TraceMonomial:
    """Inverse of :func:`render_monomial`, e.g. ``"Tr[0]^2*Tr[1,1]"``."""
    text = text.replace(" ", "")
    if text == "1":
        return ()
    words = []
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise UsageError(f"cannot parse trace factor {factor!r}")
        word = make_word(*(int(i) for i in m.group(1).split(",")))
        words.extend([word] * int(m.group(2) or 1))
    return make_monomial(words)


def _latex_word(word: TraceWord) -> str:
    body = []
    for i, e in sorted(Counter(word).items()):
        sym = r"\mathcal{J}" if i == 0 else rf"\mathcal{{J}}_{{{i}}}"
        body.append(sym + (f"^{{{e}}}" if e > 1 else ""))
    return r"\operatorname{Tr}\{" + "".join(body) + r"\}"


def latex_monomial(mono: TraceMonomial) -> str:
    parts = []
    for word, e in _grouped(mono):
        parts.append(_latex_word(word) + (f"^{{{e}}}" if e > 1 else ""))
    return " ".join(parts) if parts else "1"


# -- polynomials ------------------------------------------------------------

class TracePoly:
    """Rational linear combination of trace monomials (immutable)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if isinstance(mono, str):
                mono = parse_monomial(mono)
            else:
                mono = make_monomial(mono)
            c = Fraction(c)
            if c:
                total = clean.get(mono, 0) + c
                if total:
                    clean[mono] = total
                else:
                    clean.pop(mono, None)
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> TracePoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def word(cls, *indices: int) -> TracePoly:
        return cls._raw({(make_word(*indices),): Fraction(1)})

    @classmethod
    def one(cls) -> TracePoly:
        return cls._raw({(): Fraction(1)})

    def items(self):
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def coefficient(self, mono) -> Fraction:
        if isinstance(mono, str):
            mono = parse_monomial(mono)
        return self._terms.get(mono, Fraction(0))

    def monomials(self) -> list:
        return [m for m, _ in self.items()]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TracePoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def orders(self) -> set[int]:
        return {monomial_order(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.orders()) <= 1

    def max_order(self) -> int:
        return max(self.orders(), default=0)

    def __add__(self, other: TracePoly) -> TracePoly:
        if not isinstance(other, TracePoly):
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return TracePoly._raw(out)

    def __neg__(self) -> TracePoly:
        return self.scale(-1)

    def __sub__(self, other: TracePoly) -> TracePoly:
        return self + (-other)

    def scale(self, c) -> TracePoly:
        c = Fraction(c)
        if not c:
            return TracePoly()
        return TracePoly._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> TracePoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TracePoly):
            return NotImplemented
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = make_monomial(ma + mb)
                s = out.get(mono, 0) + ca * cb
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return TracePoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TracePoly:
        result = TracePoly.one()
        for _ in range(n):
            result = result * self
        return result

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{render_monomial(m)}" for m, c in self.items())

    __repr__ = __str__

    def to_strings(self) -> dict[str, str]:
        return {render_monomial(m): _render_rational(c) for m, c in self._terms.items()}

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mono, c in self.items():
            sign = "-" if c < 0 else "+"
            c = abs(c)
            body = latex_monomial(mono)
            if c.denominator == 1:
                coef = "" if c == 1 else f"{c.numerator}"
                out.append(f"{sign}{coef}{body}")
            else:
                num = "" if c.numerator == 1 else f"{c.numerator}"
                out.append(rf"{sign}\frac{{{num}{body}}}{{{c.denominator}}}")
        text = "".join(out)
        return text[1:] if text.startswith("+") else text


def _render_rational(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


# -- basis enumeration ------------------------------------------------------

def _check_order(order: int) -> None:
    if not isinstance(order, int) or not 2 <= order <= MAX_ORDER:
        raise UnsupportedOrderError(
            f"order {order} unsupported; trace words are canonical only for 2..{MAX_ORDER}"
        )


def _words_of_order(n: int) -> list[TraceWord]:
    """Sorted index tuples with sum(2 + i) == n."""
    out = []

    def rec(prefix: list[int], remaining: int, min_idx: int):
        if remaining == 0 and prefix:
            out.append(tuple(prefix))
            return
        for i in range(min_idx, remaining - 1):
            rec(prefix + [i], remaining - 2 - i, i)

    rec([], n, 0)
    return out


@lru_cache(maxsize=None)
def enumerate_basis(order: int) -> tuple:
    """All trace monomials of total order ``order`` in deterministic order."""
    _check_order(order)
    words = sorted((w for n in range(2, order + 1) for w in _words_of_order(n)),
                   key=_word_key)
    found = set()

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            found.add(make_monomial(acc))
            return
        for idx in range(start, len(words)):
            w = words[idx]
            if word_order(w) <= remaining:
                rec(idx, remaining - word_order(w), acc + [w])

    rec(0, order, [])
    return tuple(sorted(found, key=monomial_key))


# -- derivation along the geodesic -------------------------------------------

@lru_cache(maxsize=None)
def _derive_word(word: TraceWord) -> dict:
    out: dict = {}
    for pos in range(len(word)):
        bumped = list(word)
        bumped[pos] += 1
        w = tuple(sorted(bumped))
        out[w] = out.get(w, 0) + 1
    return out


def derive(p: TracePoly) -> TracePoly:
    """Covariant derivative along the geodesic, extended by Leibniz and linearity."""
    out: dict = {}
    for mono, c in p._terms.items():
        for pos, word in enumerate(mono):
            rest = mono[:pos] + mono[pos + 1:]
            for w, mult in _derive_word(word).items():
                new = make_monomial(rest + (w,))
                s = out.get(new, 0) + c * mult
                if s:
                    out[new] = s
                else:
                    out.pop(new, None)
    return TracePoly._raw(out)


def derive_n(p: TracePoly, n: int) -> TracePoly:
    for _ in range(n):
        p = derive(p)
    return p


# -- harmonic-space relations ----------------------------------------------

def _pivots() -> list[tuple[TraceWord, TracePoly]]:
    w = TracePoly.word
    rules = [((k,), TracePoly()) for k in range(1, MAX_ORDER - 1)]
    rules += [
        ((0, 1), TracePoly()),
        ((0, 2), -w(1, 1)),
        ((0, 3), w(1, 2).scale(-3)),
        ((0, 4), w(1, 3).scale(-4) - w(2, 2).scale(3)),
        ((0, 0, 1), w(1, 2).scale(Fraction(3, 16))),
        ((1, 3), (w(0, 1, 1).scale(32) + w(0, 0, 2).scale(16) - w(2, 2).scale(3))
         .scale(Fraction(1, 3))),
    ]
    return rules


PIVOTS = _pivots()
_PIVOT_MAP = dict(PIVOTS)


def relation_generators() -> list[TracePoly]:
    """The defining relations of a harmonic space, each as a polynomial equal to zero."""
    w = TracePoly.word
    gens = [w(k) for k in range(1, MAX_ORDER - 1)]
    for k in range(1, 5):
        rel = TracePoly()
        for mu in range(k + 1):
            rel = rel + w(mu, k - mu).scale(Fraction(factorial(k), factorial(mu) * factorial(k - mu)))
        gens.append(rel)
    gens.append(w(0, 0, 1).scale(-16) + w(1, 2).scale(3))
    gens.append(w(0, 1, 1).scale(-32) - w(0, 0, 2).scale(16) + w(2, 2).scale(3)
                + w(1, 3).scale(3))
    return gens


@lru_cache(maxsize=None)
def _reduce_monomial(mono: TraceMonomial) -> TracePoly:
    for pos, word in enumerate(mono):
        rhs = _PIVOT_MAP.get(word)
        if rhs is not None:
            rest = TracePoly._raw({mono[:pos] + mono[pos + 1:]: Fraction(1)})
            return harmonic_reduce(rest * rhs)
    return TracePoly._raw({mono: Fraction(1)})


def harmonic_reduce(p: TracePoly) -> TracePoly:
    """Normal form of ``p`` modulo the harmonic-space relations (orders up to 8)."""
    if p.max_order() > MAX_ORDER:
        raise UnsupportedOrderError(
            f"order {p.max_order()} exceeds {MAX_ORDER}; relation set is incomplete there"
        )
    out = TracePoly()
    for mono, c in p._terms.items():
        out = out + _reduce_monomial(mono).scale(c)
    return out


def vanhecke_check(k: int, formulas: Mapping[int, TracePoly]) -> tuple[TracePoly, TracePoly]:
    """Return ``(H_k, rhs)`` where rhs rebuilds odd ``H_k`` from lower coefficients.

    rhs = 1/2 * sum_{i=2}^{k-1} (-1)^i / (k-i)! * D^{k-i} H_i.
    """
    if not isinstance(k, int) or k % 2 == 0 or not 3 <= k <= 7:
        raise UsageError(f"odd order in 3..7 required, got {k}")
    missing = [i for i in range(2, k + 1) if i not in formulas]
    if missing:
        raise UsageError(f"formulas missing for orders {missing}")
    rhs = TracePoly()
    for i in range(2, k):
        term = derive_n(formulas[i], k - i).scale(Fraction((-1) ** i, factorial(k - i)))
        rhs = rhs + term
    return formulas[k], rhs.scale(Fraction(1, 2))
