"""Universal warped examples and the solve for the density coefficients.

The metric ``dr^2 + sum_i Theta_i(r)^2 dtheta_i^2`` diagonalises every
radial derivative of the Jacobi operator at the base point, so each trace
monomial evaluates to a polynomial in the warp coefficients.  Matching
these against the Taylor coefficients of ``prod_i Theta_i / r`` gives an
overdetermined exact linear system for the universal constants.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    NotInvertibleError,
    RankDeficientError,
    SingularModelError,
    UsageError,
)
from .linalg import solve_exact
from .series import (
    RadialSeries,
    WarpVar,
    WeightedPoly,
    series_derivative,
    series_invert,
    sin_series,
    sinh_series,
)
from .traces import TraceMonomial, TracePoly, enumerate_basis

log = logging.getLogger(__name__)

DEFAULT_DIRECTIONS = 4


@dataclass(frozen=True)
class WarpModel:
    """Diagonal warped metric in geodesic polar coordinates.

    ``thetas[i]`` is the full warp function ``Theta_{i+1}(r)`` (valuation 1),
    known through ``r^(order+1)`` so that ``Theta_i / r`` is known through
    ``r^order``.
    """

    m: int
    thetas: tuple
    order: int

    def __post_init__(self):
        if self.m < 2:
            raise UsageError("dimension must be at least 2")
        if len(self.thetas) != self.m - 1:
            raise UsageError(f"need {self.m - 1} warp functions, got {len(self.thetas)}")
        for i, th in enumerate(self.thetas):
            v = th.valuation()
            if v is not None and v < 1:
                raise UsageError(f"Theta_{i + 1}(0) must vanish")

    @property
    def budget(self) -> int:
        return self.thetas[0].budget

    @classmethod
    def symbolic(cls, m: int, order: int) -> WarpModel:
        """Theta_i = r(1 + b_{2,i} r^2 + ... + b_{order,i} r^order) with weight budget ``order``."""
        thetas = []
        for i in range(1, m):
            coeffs = [WeightedPoly.constant(1, order), WeightedPoly(budget=order)]
            coeffs += [WeightedPoly.var(WarpVar(i, j), order) for j in range(2, order + 1)]
            thetas.append(RadialSeries(coeffs, low=1, order=order + 1, budget=order))
        return cls(m, tuple(thetas), order)

    @classmethod
    def from_series(cls, m: int, theta: RadialSeries, order: int) -> WarpModel:
        """Same warp function in every direction; ``theta`` must reach r^(order+1)."""
        theta = theta.truncate(order + 1)
        if theta.order < order + 1:
            raise UsageError(f"warp series known only through r^{theta.order}")
        return cls(m, (theta,) * (m - 1), order)

    @classmethod
    def sphere(cls, m: int, order: int) -> WarpModel:
        return cls.from_series(m, sin_series(order + 1), order)

    @classmethod
    def hyperbolic(cls, m: int, order: int) -> WarpModel:
        return cls.from_series(m, sinh_series(order + 1), order)

    @classmethod
    def flat(cls, m: int, order: int) -> WarpModel:
        return cls.from_series(m, RadialSeries.monomial(1, order + 1), order)


@dataclass(frozen=True)
class CurvatureTable:
    """``lambdas[i][k]`` is the normalised k-th radial derivative of curvature in direction i+1."""

    lambdas: tuple
    k_max: int
    _zero_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def at_zero(self, direction: int, k: int) -> WeightedPoly:
        """Jacobi eigenvalue data ``Lambda_{direction,k}(0)``; directions count from 0."""
        if k > self.k_max:
            raise UsageError(f"derivative order {k} exceeds table depth {self.k_max}")
        key = (direction, k)
        if key not in self._zero_cache:
            self._zero_cache[key] = self.lambdas[direction][k].value_at_zero()
        return self._zero_cache[key]

    @property
    def directions(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True)
class DensityExpansion:
    H: dict  # power of r -> WeightedPoly

    def __getitem__(self, k: int) -> WeightedPoly:
        return self.H[k]


def _direction_lambdas(theta: RadialSeries, k_max: int) -> tuple:
    f = theta * theta
    try:
        f_inv = series_invert(f)
    except NotInvertibleError as exc:
        raise SingularModelError(f"warp factor not invertible: {exc}") from exc
    f_r = series_derivative(f)
    f_rr = series_derivative(f_r)
    # R(d_theta, d_r, d_r, d_theta) = -f_rr/2 + f_r^2 f^{-1}/4 (index lowered once)
    t = f_rr.scale(Fraction(-1, 2)) + (f_r * f_r * f_inv).scale(Fraction(1, 4))
    two_gamma = f_r * f_inv  # 2 * Gamma_{r theta}^theta
    out = []
    for k in range(k_max + 1):
        lam = (f_inv * t).normalized()
        if lam.order < 0:
            raise UsageError(f"series too short for derivative order {k}")
        v = lam.valuation()
        if v is not None and v < 0:
            raise SingularModelError(f"Lambda_{k} keeps a pole of order {-v}")
        out.append(lam)
        if k < k_max:
            t = series_derivative(t) - two_gamma * t
    return tuple(out)


def curvature_lambda(model: WarpModel, k_max: int) -> CurvatureTable:
    """Normalised radial curvature derivatives ``Lambda_{i,k}`` for k = 0..k_max."""
    if k_max > model.order - 2:
        raise UsageError(f"k_max={k_max} needs a model of order >= {k_max + 2}")
    cache: dict = {}
    rows = []
    for theta in model.thetas:
        key = id(theta)
        if key not in cache:
            cache[key] = _direction_lambdas(theta, k_max)
        rows.append(cache[key])
    return CurvatureTable(tuple(rows), k_max)


def trace_eval(table: CurvatureTable, mono: TraceMonomial) -> WeightedPoly:
    """Value at the base point of a trace monomial on the universal example."""
    budget = table.lambdas[0][0].budget
    result = WeightedPoly.constant(1, budget)
    for word in mono:
        if max(word) > table.k_max:
            raise UsageError(f"derivative index {max(word)} exceeds table depth {table.k_max}")
        total = WeightedPoly(budget=budget)
        for i in range(table.directions):
            prod = table.at_zero(i, word[0])
            for idx in word[1:]:
                prod = prod * table.at_zero(i, idx)
            total = total + prod
        result = result * total
    return result


def trace_poly_eval(table: CurvatureTable, p: TracePoly) -> WeightedPoly:
    budget = table.lambdas[0][0].budget
    total = WeightedPoly(budget=budget)
    for mono, c in p.items():
        total = total + trace_eval(table, mono).scale(c)
    return total


def density_expand(model: WarpModel) -> DensityExpansion:
    """Coefficients of ``prod_i Theta_i / r`` through ``r^order``."""
    prod = None
    for theta in model.thetas:
        unit = theta.shift(-1)
        prod = unit if prod is None else prod * unit
    return DensityExpansion({k: prod.coeff(k) for k in range(model.order + 1)})


def _solve(order: int, directions: int) -> dict:
    model = WarpModel.symbolic(directions + 1, order)
    table = curvature_lambda(model, order - 2)
    target = density_expand(model)[order]
    basis = enumerate_basis(order)
    columns = [trace_eval(table, mono) for mono in basis]
    monos = set(target.terms)
    for col in columns:
        monos.update(col.terms)
    monos = sorted(monos, key=lambda m: (len(m), m))
    rows = [[col.coefficient(mono) for col in columns] for mono in monos]
    rhs = [target.coefficient(mono) for mono in monos]
    log.debug("order %d: %d equations, %d unknowns", order, len(rows), len(basis))
    values = solve_exact(rows, rhs)
    return dict(zip(basis, values))


@lru_cache(maxsize=None)
def _solve_cached(order: int, directions: int) -> tuple:
    return tuple(_solve(order, directions).items())


def solve_universal_constants(order: int, directions: int | None = None) -> dict:
    """Universal constants of the order-``order`` density coefficient.

    Uses ``directions`` symbolic warp families (default 4, i.e. m = 5) and
    retries once with one more direction if the system is rank deficient.
    Returns a map from each basis monomial to its rational constant.
    """
    enumerate_basis(order)  # validates the order
    if directions is not None:
        return dict(_solve_cached(order, directions))
    try:
        return dict(_solve_cached(order, DEFAULT_DIRECTIONS))
    except RankDeficientError:
        log.warning("order %d rank deficient with %d directions; retrying",
                    order, DEFAULT_DIRECTIONS)
        return dict(_solve_cached(order, DEFAULT_DIRECTIONS + 1))


def constants_to_poly(constants: dict) -> TracePoly:
    return TracePoly({m: c for m, c in constants.items() if c})


def ansatz_value(constants: dict, table: CurvatureTable) -> WeightedPoly:
    """Evaluate ``sum_I c_I * J_I`` on a universal example."""
    return trace_poly_eval(table, constants_to_poly(constants))
