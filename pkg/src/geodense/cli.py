"""Command line interface.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 internal
error (including a rank-deficient constant solve).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import models, spectral
from .cache import ConstantCache, constants_document, dumps
from .errors import GeodenseError, UsageError
from .reference import HARMONIC
from .traces import MAX_ORDER, TracePoly, harmonic_reduce, vanhecke_check
from .universal import constants_to_poly

EMIT_CHOICES = ("json", "text", "latex")


@dataclass(frozen=True)
class RunConfig:
    command: str
    order: int | None = None
    eps: int | None = None
    m: int | None = None
    k: int | None = None
    input: Path | None = None
    emit: str = "json"
    cache: Path | None = None
    tol: float = 1e-9

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        eps = models.parse_eps(args.eps) if getattr(args, "eps", None) is not None else None
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        return cls(
            command=args.command,
            order=getattr(args, "order", None),
            eps=eps,
            m=getattr(args, "m", None),
            k=getattr(args, "k", None),
            input=getattr(args, "input", None),
            emit=args.emit,
            cache=args.cache,
            tol=args.tol,
        )


def _q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _poly_json(p: TracePoly) -> dict:
    return dict(sorted(p.to_strings().items()))


def _check_order(order: int, low: int = 2) -> None:
    if not low <= order <= MAX_ORDER:
        raise UsageError(f"order must lie in {low}..{MAX_ORDER}, got {order}")


def _formulas(cfg: RunConfig, upto: int) -> dict:
    cache = ConstantCache(cfg.cache)
    return {k: constants_to_poly(cache.get_or_derive(k)) for k in range(2, upto + 1)}


# -- commands ------------------------------------------------------------------

def cmd_derive(cfg: RunConfig):
    _check_order(cfg.order)
    constants = ConstantCache(cfg.cache).get_or_derive(cfg.order)
    doc = constants_document(cfg.order, constants)
    poly = constants_to_poly(constants)
    text = [f"H_{cfg.order}:"] + [f"  {row['monomial']:<24} {row['value']}"
                                 for row in doc["constants"]]
    latex = f"\\mathcal{{H}}_{{{cfg.order}}} = {poly.to_latex()}"
    return 0, doc, "\n".join(text), latex


def cmd_verify_harmonic(cfg: RunConfig):
    _check_order(cfg.order)
    derived = _formulas(cfg, cfg.order)[cfg.order]
    reduced = harmonic_reduce(derived)
    expected = HARMONIC[cfg.order]
    diff = reduced - expected
    ok = not diff
    doc = {
        "order": cfg.order,
        "reduced": _poly_json(reduced),
        "expected": _poly_json(expected),
        "match": ok,
        "diff": _poly_json(diff),
    }
    lines = [f"reduced H_{cfg.order} = {reduced}", f"match: {ok}"]
    if not ok:
        lines.append(f"diff: {diff}")
    latex = f"\\mathcal{{H}}_{{{cfg.order}}} = {reduced.to_latex()}"
    return (0 if ok else 1), doc, "\n".join(lines), latex


def cmd_vanhecke(cfg: RunConfig):
    if cfg.order is None or cfg.order % 2 == 0 or not 3 <= cfg.order <= 7:
        raise UsageError("vanhecke needs an odd --order in 3..7")
    lhs, rhs = vanhecke_check(cfg.order, _formulas(cfg, cfg.order))
    ok = lhs == rhs
    doc = {"order": cfg.order, "lhs": _poly_json(lhs), "rhs": _poly_json(rhs), "match": ok}
    text = f"lhs = {lhs}\nrhs = {rhs}\nmatch: {ok}"
    relation = "=" if ok else r"\neq"
    latex = f"{lhs.to_latex()} \\;{relation}\\; {rhs.to_latex()}"
    return (0 if ok else 1), doc, text, latex


def cmd_expand(cfg: RunConfig):
    if None in (cfg.eps, cfg.m, cfg.k, cfg.order):
        raise UsageError("expand needs --eps, --m, --k and --order")
    model = models.SpaceModel(cfg.eps, cfg.m, cfg.k)
    coeffs = models.theta_expand(model, cfg.order)
    doc = {"eps": models.eps_symbol(cfg.eps), "m": cfg.m, "k": cfg.k, "order": cfg.order,
           "coefficients": [_q(c) for c in coeffs]}
    text = "[" + ", ".join(str(c) for c in coeffs) + "]"
    return 0, doc, text, None


def cmd_bounds(cfg: RunConfig):
    if None in (cfg.m, cfg.k):
        raise UsageError("bounds needs --m and --k")
    rng = spectral.k_range_check(cfg.m, cfg.k)
    if not rng.passed:
        raise UsageError(f"k={cfg.k} violates 0 <= k <= m-1 (f={rng.f})")
    iv = spectral.eigen_interval(cfg.m, cfg.k)
    a, b = spectral.trace_sums(cfg.m, cfg.k)
    doc = {"m": cfg.m, "k": cfg.k, "sum_eps_lambda": a, "sum_lambda_sq": b,
           "flag": rng.flag, "interval": iv.to_json()}
    lo, hi = iv.endpoints
    text = f"eps*lambda in [{lo:.6f}, {hi:.6f}]  (center {iv.center}, E^2 = {iv.half_width_squared})"
    return 0, doc, text, None


def _load_profile(cfg: RunConfig) -> spectral.EigenProfile:
    if cfg.input is None:
        raise UsageError("check-profile needs --input PATH")
    try:
        raw = json.loads(Path(cfg.input).read_text(encoding="utf-8"))
        max_den = max(1, int(round(1 / cfg.tol)))
        lams = []
        for x in raw["lambdas"]:
            if isinstance(x, float):
                lams.append(Fraction(x).limit_denominator(max_den))
            else:
                lams.append(Fraction(x))
        return spectral.EigenProfile(tuple(lams), raw["eps"], int(raw["m"]), int(raw["k"]))
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read profile {cfg.input}: {exc}") from exc


def cmd_check_profile(cfg: RunConfig):
    report = spectral.partial_sum_check(_load_profile(cfg))
    doc = report.to_json()
    ineq = doc["inequalities"]
    text = "\n".join([
        "identities: ok",
        f"top-k sum {ineq['top_k_sum']} <= {ineq['top_k_bound']}: {ineq['top_k_holds']}",
        f"rest sum {ineq['rest_sum']} >= {ineq['rest_bound']}: {ineq['rest_holds']}",
        f"rigid: {doc['rigid_profile'] or False}",
    ])
    return 0, doc, text, None


def cmd_catalog(cfg: RunConfig):
    rows = models.catalog()
    doc = {
        "symmetric": [r.to_json() for r in rows if isinstance(r, models.SymmetricFamily)],
        "damek_ricci": [r.to_json() for r in rows if isinstance(r, models.DamekRicciRow)],
    }
    lines = [f"{r['name']:<10} m={r['dim']:<3} k={r['k']} kappa1={r['kappa1']} "
             f"nu2={r['nu2']} kappa2={r['kappa2']} eps={r['eps']}" for r in doc["symmetric"]]
    lines += [f"dim z={r['dim_z']}: {r['dims']}" for r in doc["damek_ricci"]]
    return 0, doc, "\n".join(lines), None


COMMANDS = {
    "derive": cmd_derive,
    "verify-harmonic": cmd_verify_harmonic,
    "vanhecke": cmd_vanhecke,
    "expand": cmd_expand,
    "bounds": cmd_bounds,
    "check-profile": cmd_check_profile,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=EMIT_CHOICES, default="json")
    common.add_argument("--cache", type=Path, default=None,
                        help="cache directory (default: $GEODENSE_CACHE or ~/.cache/geodense)")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="rounding tolerance for floating-point profile input")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="geodense",
        description="Exact volume density asymptotics and Jacobi eigenvalue bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[common], help="solve for the universal constants")
    p.add_argument("--order", type=int, required=True)
    p = sub.add_parser("verify-harmonic", parents=[common],
                       help="reduce a coefficient modulo the harmonic-space relations")
    p.add_argument("--order", type=int, required=True)
    p = sub.add_parser("vanhecke", parents=[common],
                       help="rebuild an odd coefficient from the lower ones")
    p.add_argument("--order", type=int, required=True)
    p = sub.add_parser("expand", parents=[common], help="expand a model density")
    p.add_argument("--eps", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p = sub.add_parser("bounds", parents=[common], help="eigenvalue interval for (m, k)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("check-profile", parents=[common],
                       help="check an eigenvalue profile given as JSON")
    p.add_argument("--input", type=Path, required=True)
    sub.add_parser("catalog", parents=[common], help="rank one symmetric spaces and Damek-Ricci rows")
    return parser


def _emit(fmt: str, doc, text: str, latex: str | None) -> str:
    if fmt == "json":
        return dumps(doc)
    if fmt == "latex" and latex is not None:
        return latex + "\n"
    return text + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.from_args(args)
        code, doc, text, latex = COMMANDS[cfg.command](cfg)
    except GeodenseError as exc:
        print(f"geodense: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(_emit(cfg.emit, doc, text, latex))
    return code


if __name__ == "__main__":
    sys.exit(main())
