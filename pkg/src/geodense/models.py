"""Model densities sin^{m-1} cos^k / sinh^{m-1} cosh^k and the rank one catalog."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import UsageError, VerificationError
from .series import RadialSeries, cos_series, cosh_series, sin_series, sinh_series
from .traces import TracePoly

MAX_VERIFIED_ORDER = 8


def parse_eps(value) -> int:
    if value in (1, "+", "+1", "pos", "positive"):
        return 1
    if value in (-1, "-", "-1", "neg", "negative"):
        return -1
    raise UsageError(f"sign must be '+' or '-', got {value!r}")


def eps_symbol(eps: int) -> str:
    return "+" if eps > 0 else "-"


@dataclass(frozen=True)
class SpaceModel:
    eps: int
    m: int
    k: int

    def __post_init__(self):
        from .spectral import k_range_check

        object.__setattr__(self, "eps", parse_eps(self.eps))
        if self.m < 2:
            raise UsageError(f"dimension m={self.m} must be at least 2")
        if not k_range_check(self.m, self.k).passed:
            raise UsageError(f"k={self.k} outside 0..{self.m - 1} for m={self.m}")


def theta_expand(model: SpaceModel, order: int) -> list[Fraction]:
    """Taylor coefficients ``[c_0, ..., c_order]`` of ``Theta_eps(m,k)(r) / r^(m-1)``."""
    if order < 2:
        raise UsageError("order must be at least 2")
    if model.eps > 0:
        s, c = sin_series(order + 1), cos_series(order)
    else:
        s, c = sinh_series(order + 1), cosh_series(order)
    unit = s.shift(-1)
    result = RadialSeries([1], order=order)
    for _ in range(model.m - 1):
        result = result * unit
    for _ in range(model.k):
        result = result * c
    return result.rationals()[: order + 1]


def rescale(coeffs: list, c, m: int | None = None) -> list[Fraction]:
    """Normalised expansion of the density after the metric is scaled by ``c^2``.

    ``Theta_c(r) = c^(1-m) Theta(c r)``, so the coefficient of ``r^j`` in
    ``Theta_c / r^(m-1)`` is ``c^j`` times the original one; ``m`` cancels.
    """
    c = Fraction(c)
    if c <= 0:
        raise UsageError(f"scale factor must be positive, got {c}")
    return [Fraction(a) * c ** j for j, a in enumerate(coeffs)]


# -- catalog ---------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """A concrete rank one symmetric space with its reduced Jacobi spectrum."""

    name: str
    m: int
    k: int
    kappa1: Fraction | None
    nu2: int
    kappa2: Fraction
    eps: int

    @property
    def nu1(self) -> int:
        return self.k

    @property
    def model(self) -> SpaceModel:
        return SpaceModel(self.eps, self.m, self.k)

    def spectrum(self) -> list[Fraction]:
        """Reduced Jacobi eigenvalues, kappa1 first."""
        return [self.kappa1] * self.nu1 + [self.kappa2] * self.nu2


@dataclass(frozen=True)
class SymmetricFamily:
    """One row of the rank one symmetric space tables, parametrised by ``n``."""

    name: str
    dim_factor: int | None  # m = dim_factor * n; None for a fixed dimension
    fixed_dim: int | None
    k: int
    kappa1: int | None
    kappa2: int
    eps: int
    min_n: int = 1

    @property
    def dim_label(self) -> str:
        if self.fixed_dim is not None:
            return str(self.fixed_dim)
        return "n" if self.dim_factor == 1 else f"{self.dim_factor}n"

    @property
    def nu2_label(self) -> str:
        if self.fixed_dim is not None:
            return str(self.fixed_dim - 1 - self.k)
        offset = 1 + self.k
        return ("n" if self.dim_factor == 1 else f"{self.dim_factor}n") + f"-{offset}"

    def entry(self, n: int | None = None) -> CatalogEntry:
        if self.fixed_dim is not None:
            m = self.fixed_dim
        else:
            if n is None or n < self.min_n:
                raise UsageError(f"{self.name} needs n >= {self.min_n}")
            m = self.dim_factor * n
        if m - 1 - self.k < 0:
            raise UsageError(f"{self.name} undefined for n={n}")
        k1 = None if self.kappa1 is None else Fraction(self.kappa1)
        return CatalogEntry(self.name, m, self.k, k1, m - 1 - self.k,
                            Fraction(self.kappa2), self.eps)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim_label,
            "k": self.k,
            "kappa1": self.kappa1,
            "nu2": self.nu2_label,
            "kappa2": self.kappa2,
            "eps": eps_symbol(self.eps),
        }


@dataclass(frozen=True)
class DamekRicciRow:
    """Dimensions of non-symmetric Damek-Ricci spaces with centre of dimension ``dim_z``.

    ``base`` and ``step`` describe ``base + step*n`` (n = 0, 1, ...); both are
    None where no family is listed.  The density is Theta_-(m, k=dim_z).
    """

    dim_z: int
    base: int | None
    step: int | None

    @property
    def dims_label(self) -> str:
        if self.base is None:
            return "none listed"
        return f"{self.base}+{self.step}n"

    def dims(self, count: int) -> list[int]:
        if self.base is None:
            return []
        return [self.base + self.step * n for n in range(count)]

    def model(self, n: int) -> SpaceModel:
        if self.base is None:
            raise UsageError(f"no non-symmetric Damek-Ricci family listed for dim z = {self.dim_z}")
        return SpaceModel(-1, self.base + self.step * n, self.dim_z)

    def to_json(self) -> dict:
        return {"name": f"Damek-Ricci dim z={self.dim_z}", "dim_z": self.dim_z,
                "dims": self.dims_label, "k": self.dim_z, "eps": "-"}


SYMMETRIC_SPACES = (
    SymmetricFamily("S^n", 1, None, 0, None, 1, +1, min_n=2),
    SymmetricFamily("CP^n", 2, None, 1, 4, 1, +1),
    SymmetricFamily("HP^n", 4, None, 3, 4, 1, +1),
    SymmetricFamily("OP^2", None, 16, 7, 4, 1, +1),
    SymmetricFamily("H^n", 1, None, 0, None, -1, -1, min_n=2),
    SymmetricFamily("CP^n dual", 2, None, 1, -4, -1, -1),
    SymmetricFamily("HP^n dual", 4, None, 3, -4, -1, -1),
    SymmetricFamily("OP^2 dual", None, 16, 7, -4, -1, -1),
)

DAMEK_RICCI = (
    DamekRicciRow(1, None, None),
    DamekRicciRow(2, 7, 4),
    DamekRicciRow(3, 12, 4),
    DamekRicciRow(4, 13, 8),
    DamekRicciRow(5, 14, 8),
    DamekRicciRow(6, 15, 8),
    DamekRicciRow(7, 24, 8),
    DamekRicciRow(8, 25, 16),
)


def catalog() -> list:
    """The eight symmetric space families followed by the Damek-Ricci dimension rows."""
    return list(SYMMETRIC_SPACES) + list(DAMEK_RICCI)


def family(name: str) -> SymmetricFamily:
    for fam in SYMMETRIC_SPACES:
        if fam.name == name:
            return fam
    raise UsageError(f"unknown symmetric space {name!r}")


def osserman_traces(entry: CatalogEntry, ell: int) -> Fraction:
    """``Tr{J^ell}`` for a space with constant reduced spectrum."""
    if ell < 1:
        raise UsageError("ell must be positive")
    total = Fraction(entry.nu2) * entry.kappa2 ** ell
    if entry.nu1:
        total += entry.nu1 * entry.kappa1 ** ell
    return total


def evaluate_on_symmetric(p: TracePoly, entry: CatalogEntry) -> Fraction:
    """Value of a trace polynomial on a space with parallel curvature."""
    total = Fraction(0)
    for mono, c in p.items():
        term = c
        for word in mono:
            if any(word):
                term = Fraction(0)
                break
            term *= osserman_traces(entry, len(word))
        total += term
    return total


@dataclass(frozen=True)
class FormulaCheck:
    order: int
    expected: Fraction
    computed: Fraction

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def verify_h_formulas(entry: CatalogEntry, formulas: Mapping[int, TracePoly] | None = None,
                      max_order: int = MAX_VERIFIED_ORDER) -> list[FormulaCheck]:
    """Check the density coefficient formulas against the closed-form density.

    ``formulas`` defaults to freshly solved constants.  Raises
    :class:`VerificationError` naming the first order that disagrees.
    """
    if formulas is None:
        from .universal import constants_to_poly, solve_universal_constants

        formulas = {k: constants_to_poly(solve_universal_constants(k))
                    for k in range(2, max_order + 1)}
    coeffs = theta_expand(entry.model, max_order)
    checks = []
    for k in range(2, max_order + 1):
        check = FormulaCheck(k, coeffs[k], evaluate_on_symmetric(formulas[k], entry))
        if not check.ok:
            raise VerificationError(
                f"{entry.name} (m={entry.m}): order {k} gives {check.computed}, "
                f"density has {check.expected}"
            )
        checks.append(check)
    return checks
