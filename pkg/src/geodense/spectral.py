"""Eigenvalue identities and bounds for harmonic spaces with density Theta_eps(m,k)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .errors import InvalidProfileError, UsageError, VerificationError

if TYPE_CHECKING:
    from .models import SpaceModel


@dataclass(frozen=True)
class KRangeResult:
    m: int
    k: int
    f: int
    passed: bool
    flag: str | None


def k_range_check(m: int, k: int) -> KRangeResult:
    """``(4k + m-k-1)^2 - (m-1)(16k + m-k-1) = 9k(k-(m-1))`` must be <= 0."""
    if m < 2:
        raise UsageError("m must be at least 2")
    f = (4 * k + m - k - 1) ** 2 - (m - 1) * (16 * k + m - k - 1)
    assert f == 9 * k * (k - (m - 1))
    flag = None
    if k == 0:
        flag = "constant sectional curvature eps"
    elif k == m - 1:
        flag = "constant sectional curvature 4eps"
    passed = f <= 0
    return KRangeResult(m, k, f, passed, flag if passed else None)


def trace_sums(m: int, k: int) -> tuple[int, int]:
    """``(sum eps*lambda_i, sum lambda_i^2)`` forced by the model density."""
    return 4 * k + (m - k - 1), 16 * k + (m - k - 1)


def traces_from_coefficients(h2: Fraction, h4: Fraction) -> tuple[Fraction, Fraction]:
    """Invert ``H2 = -Tr J / 6`` and ``H4 = (Tr J)^2/72 - Tr J^2/180``."""
    tr = -6 * Fraction(h2)
    tr2 = Fraction(5, 2) * tr ** 2 - 180 * Fraction(h4)
    return tr, tr2


def trace_identities(model: SpaceModel) -> tuple[int, int]:
    """Return ``(A, B)``, checked against the route through the density expansion."""
    from .models import theta_expand

    a, b = trace_sums(model.m, model.k)
    coeffs = theta_expand(model, 4)
    tr, tr2 = traces_from_coefficients(coeffs[2], coeffs[4])
    if tr != model.eps * a or tr2 != b:
        raise VerificationError(
            f"trace identities disagree for {model}: ({tr}, {tr2}) vs ({model.eps * a}, {b})"
        )
    return a, b


@dataclass(frozen=True)
class EigenProfile:
    """Reduced Jacobi eigenvalues sorted so ``eps*lambda`` is non-increasing."""

    lambdas: tuple
    eps: int
    m: int
    k: int

    def __post_init__(self):
        from .models import parse_eps

        eps = parse_eps(self.eps)
        object.__setattr__(self, "eps", eps)
        lams = tuple(sorted((Fraction(x) for x in self.lambdas), key=lambda x: -eps * x))
        object.__setattr__(self, "lambdas", lams)
        if len(lams) != self.m - 1:
            raise UsageError(f"expected {self.m - 1} eigenvalues, got {len(lams)}")
        if not 0 <= self.k <= self.m - 1:
            raise UsageError(f"k={self.k} outside 0..{self.m - 1}")

    @property
    def signed(self) -> list[Fraction]:
        return [self.eps * x for x in self.lambdas]

    def deviations(self) -> list[Fraction]:
        return [x - (4 if i < self.k else 1) for i, x in enumerate(self.signed)]


@dataclass(frozen=True)
class EigenInterval:
    """``[center - E, center + E]`` with ``E`` kept as its exact square."""

    m: int
    k: int
    center: Fraction
    half_width_squared: Fraction

    @property
    def half_width(self) -> float:
        return math.sqrt(self.half_width_squared)

    @property
    def endpoints(self) -> tuple[float, float]:
        e = self.half_width
        c = float(self.center)
        return c - e, c + e

    def contains(self, x) -> bool:
        d = Fraction(x) - self.center
        return d * d <= self.half_width_squared

    def to_json(self) -> dict:
        lo, hi = self.endpoints
        return {
            "center": _q(self.center),
            "half_width_squared": _q(self.half_width_squared),
            "lower": f"{lo:.12g}",
            "upper": f"{hi:.12g}",
        }


def eigen_interval(m: int, k: int) -> EigenInterval:
    if m <= 2:
        raise UsageError("the eigenvalue interval needs m > 2")
    if not 0 <= k <= m - 1:
        raise UsageError(f"k={k} outside 0..{m - 1}")
    center = Fraction(m + 3 * k - 1, m - 1)
    e2 = Fraction(3 * m - 6, m - 1) ** 2 * Fraction(k * (m - 1 - k), m - 2)
    return EigenInterval(m, k, center, e2)


def lagrange_extremes(m: int, k: int) -> tuple[Fraction, Fraction, Fraction]:
    """Extremes of ``x = eps*lambda_1`` subject to both trace constraints.

    With the other eigenvalues equal, ``x^2 + (A - x)^2/(m-2) = B``, i.e.
    ``(m-1)x^2 - 2Ax + A^2 - (m-2)B = 0``.  Returns ``(a, b, d)`` for the
    roots ``(a +- sqrt(d)) / b``.
    """
    if m <= 2:
        raise UsageError("needs m > 2")
    a_sum, b_sum = trace_sums(m, k)
    quad, lin, const = m - 1, -2 * a_sum, a_sum ** 2 - (m - 2) * b_sum
    disc_quarter = Fraction(lin * lin - 4 * quad * const, 4)
    return Fraction(a_sum), Fraction(quad), disc_quarter


@dataclass
class ProfileReport:
    profile: EigenProfile
    identities: dict
    inequalities: dict
    deviations: list
    internal_identity: Fraction
    rigid: bool
    interval: EigenInterval | None
    in_interval: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "eps": "+" if self.profile.eps > 0 else "-",
            "m": self.profile.m,
            "k": self.profile.k,
            "lambdas": [_q(x) for x in self.profile.lambdas],
            "identities": self.identities,
            "inequalities": self.inequalities,
            "deviations": [_q(d) for d in self.deviations],
            "internal_identity": _q(self.internal_identity),
            "rigid": self.rigid,
            "rigid_profile": _rigid_label(self.profile) if self.rigid else None,
            "interval": None if self.interval is None else dict(
                self.interval.to_json(), all_inside=all(self.in_interval)),
        }


def _rigid_label(profile: EigenProfile) -> str:
    return f"Osserman profile (4eps x {profile.k}, eps x {profile.m - 1 - profile.k})"


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def partial_sum_check(profile: EigenProfile) -> ProfileReport:
    """Check the partial sum inequalities for an eigenvalue profile.

    The profile must first satisfy both trace identities exactly.  Equality
    in either inequality happens exactly for the Osserman profile
    ``(4eps x k, eps x (m-1-k))``.
    """
    m, k = profile.m, profile.k
    a_sum, b_sum = trace_sums(m, k)
    signed = profile.signed
    s1 = sum(signed, Fraction(0))
    s2 = sum((x * x for x in profile.lambdas), Fraction(0))
    if s1 != a_sum:
        raise InvalidProfileError(f"sum of eps*lambda is {s1}, expected {a_sum}")
    if s2 != b_sum:
        raise InvalidProfileError(f"sum of lambda^2 is {s2}, expected {b_sum}")

    delta = profile.deviations()
    assert sum(delta) == 0
    head = sum(delta[:k], Fraction(0))
    internal = 6 * head + sum((d * d for d in delta), Fraction(0))
    if internal != 0:
        raise VerificationError(f"6*sum(delta_i, i<=k) + sum(delta_i^2) = {internal} != 0")

    top = sum(signed[:k], Fraction(0))
    bottom = sum(signed[k:], Fraction(0))
    upper_ok, lower_ok = top <= 4 * k, bottom >= m - 1 - k
    upper_eq, lower_eq = top == 4 * k, bottom == m - 1 - k
    if (upper_ok, upper_eq) != (lower_ok, lower_eq):
        raise VerificationError("partial sum inequalities disagree")
    rigid = upper_eq
    if rigid != all(d == 0 for d in delta):
        raise VerificationError("equality without Osserman profile")

    interval = eigen_interval(m, k) if m > 2 else None
    inside = [interval.contains(x) for x in signed] if interval else []
    return ProfileReport(
        profile=profile,
        identities={"sum_eps_lambda": _q(s1), "sum_lambda_sq": _q(s2),
                    "expected": [a_sum, b_sum], "ok": True},
        inequalities={
            "top_k_sum": _q(top), "top_k_bound": 4 * k, "top_k_holds": upper_ok,
            "rest_sum": _q(bottom), "rest_bound": m - 1 - k, "rest_holds": lower_ok,
            "equality": rigid,
        },
        deviations=delta,
        internal_identity=internal,
        rigid=rigid,
        interval=interval,
        in_interval=inside,
    )


def osserman_profile(eps: int, m: int, k: int) -> EigenProfile:
    return EigenProfile(tuple([4 * eps] * k + [eps] * (m - 1 - k)), eps, m, k)


def profile_through(eps: int, m: int, k: int, direction: Sequence) -> EigenProfile:
    """Second intersection of a line through the Osserman profile with the constraint set.

    ``direction`` is projected onto ``sum = 0``; the resulting point again
    satisfies both trace identities and is rational.  A zero direction (or
    k in {0, m-1}, where the constraint set is a point) returns the
    Osserman profile itself.
    """
    n = m - 1
    if len(direction) != n:
        raise UsageError(f"direction needs {n} entries")
    v = [Fraction(x) for x in direction]
    mean = sum(v, Fraction(0)) / n
    v = [x - mean for x in v]
    p0 = [Fraction(4)] * k + [Fraction(1)] * (n - k)
    c = Fraction(trace_sums(m, k)[0], n)
    vv = sum((x * x for x in v), Fraction(0))
    if not vv:
        return osserman_profile(eps, m, k)
    t = -2 * sum(((p - c) * x for p, x in zip(p0, v)), Fraction(0)) / vv
    point = [p + t * x for p, x in zip(p0, v)]
    return EigenProfile(tuple(eps * x for x in point), eps, m, k)
