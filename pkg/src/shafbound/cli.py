"""Command-line front end.

Every command prints (or writes with ``--json FILE``) one JSON document: the
result fields at top level plus a ``manifest`` with the parameters, the tool
version and a SHA-256 digest of the canonical result.  Exit codes are 0 on
success, 2 on invalid input and 3 when an internal self-check fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from . import __version__
from .bounds import (
    FieldInvariants,
    dp_point_height_bound,
    extension_invariants,
    lenstra_class_number_bound,
    lenstra_sharp_bound,
    splitting_degree_bound,
    unit_equation_height_bound,
    weyl_group_order,
)
from .delpezzo import BlowupConfig, dedup_orbits, enumerate_configs, integral_general_position
from .errors import CertificateError, DegeneracyError
from .geomkernel.forms import TernaryForm
from .geomkernel.geometry import ProjPointQ
from .quartic import (
    double_cover_from_quartic,
    good_reduction_verdict,
    quartic_discriminant,
    quartic_from_dp_config,
)
from .quartic.curves import QuarticCurve
from .quartic.macaulay import DEFAULT_SEED
from .sunit import PrimeSet, orbit_partition, solve_unit_equation
from .tower import format_ln

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3

# Flags that change how a run is executed but not what it computes.
EXECUTION_FLAGS = ("jobs", "json", "timing", "handler")


class UsageError(Exception):
    """Invalid input detected after argument parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # one-line diagnostic, exit 2
        raise UsageError(f"{self.prog}: {message}")


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(result: dict) -> str:
    return hashlib.sha256(canonical_json(result).encode("ascii")).hexdigest()


def _frac(a: Fraction) -> str:
    return f"{a.numerator}/{a.denominator}"


def _primes(text: str) -> PrimeSet:
    try:
        return PrimeSet.parse(text)
    except ValueError as exc:
        raise UsageError(f"--primes: {exc}") from None


def _invariants_for(S: PrimeSet) -> FieldInvariants:
    return FieldInvariants.rationals(tuple(S))


def _unit_bound_ln_ln(S: PrimeSet) -> str | None:
    """ln ln of the unconditional unit-equation bound over Q, or None for S empty."""
    if not len(S):
        return None
    bound = unit_equation_height_bound(1, _invariants_for(S), log_only=True)
    return format_ln(bound.ln_ln_bound())


def _dp_bound_ln_ln(degree: int, S: PrimeSet) -> str | None:
    if not len(S):
        return None
    bound = dp_point_height_bound(degree, _invariants_for(S), log_only=True)
    return format_ln(bound.ln_ln_bound())


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from None


def _load_form(path: str) -> TernaryForm:
    data = _load_json(path)
    try:
        form = TernaryForm.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: not a form: {exc}") from None
    if form.degree != 4:
        raise UsageError(f"{path}: expected a quartic, got degree {form.degree}")
    return form


def _load_config(path: str) -> BlowupConfig:
    data = _load_json(path)
    try:
        points = tuple(ProjPointQ.of(*p) for p in data["points"])
        S = PrimeSet.of(data.get("primes", []))
        return BlowupConfig(9 - len(points), S, points)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: not a configuration: {exc}") from None


# bounds


def cmd_bounds_lenstra(args) -> tuple[dict, dict]:
    inv = FieldInvariants(args.dk, args.disc, 1, 0)
    result = {
        "bound": str(lenstra_class_number_bound(inv)),
        "ln_sharp_bound": format_ln(mpmath.log(lenstra_sharp_bound(inv))),
    }
    return result, {"cap": None, "paper_bound_ln_ln": None}


def _field(args) -> FieldInvariants:
    return FieldInvariants(args.dk, args.disc, args.ns, args.s)


def cmd_bounds_unit_eq(args) -> tuple[dict, dict]:
    inv = _field(args)
    bound = unit_equation_height_bound(args.l, inv, ceiling=args.ceiling, log_only=args.log_only)
    result = bound.to_json()
    ext = extension_invariants(args.l, inv, ceiling=args.ceiling)
    result["extension"] = {
        "d_L": str(ext.d_L),
        "D_L": ext.D_L_bound.to_json(),
        "N_SL": ext.N_SL_bound.to_json(),
        "h_SL": ext.h_SL_bound.to_json(),
        "S_prime_card": ext.S_prime_card_bound.to_json(),
    }
    return result, {"cap": None, "paper_bound_ln_ln": result["ln_ln_bound"]}


def cmd_bounds_dp(args) -> tuple[dict, dict]:
    inv = _field(args)
    bound = dp_point_height_bound(args.degree, inv, ceiling=args.ceiling, log_only=args.log_only)
    result = bound.to_json()
    result["weyl_order"] = str(weyl_group_order(args.degree))
    result["splitting_degree_bound"] = str(splitting_degree_bound(args.degree))
    return result, {"cap": None, "paper_bound_ln_ln": result["ln_ln_bound"]}


# sunit


def cmd_sunit_solve(args) -> tuple[dict, dict]:
    S = _primes(args.primes)
    sols = solve_unit_equation(S, args.cap, jobs=args.jobs)
    result = {
        "primes": list(S),
        "cap": str(args.cap),
        "solutions": [
            {"num": str(a.numerator), "den": str(a.denominator), "H": str(max(abs(a.numerator), a.denominator))}
            for a in sols
        ],
        "orbits": [[_frac(a) for a in orbit] for orbit in orbit_partition(sols)],
        "paper_bound_ln_ln": _unit_bound_ln_ln(S),
    }
    return result, {"cap": str(args.cap), "paper_bound_ln_ln": result["paper_bound_ln_ln"]}


# dp


def _config_json(config: BlowupConfig) -> dict:
    cert = integral_general_position(config)
    if not cert.verdict:
        raise CertificateError(f"emitted configuration {config.key()} fails its certificate")
    out = config.to_json()
    out["minors"] = cert.to_json()
    out["verdict"] = cert.verdict
    return out


def _enumerate(args) -> tuple[PrimeSet, list[BlowupConfig]]:
    S = _primes(args.primes)
    configs = enumerate_configs(args.degree, S, args.cap, jobs=args.jobs, allow_degree_one=args.allow_degree_one)
    return S, configs


def cmd_dp_enumerate(args) -> tuple[dict, dict]:
    S, configs = _enumerate(args)
    result = {
        "degree": args.degree,
        "primes": list(S),
        "cap": str(args.cap),
        "configs": [_config_json(c) for c in configs],
        "orbits": [],
        "boundary_escapes": 0,
        "minor_policy": "lines, conics and singular cubics must all be S-units",
    }
    if args.dedup:
        part = dedup_orbits(configs)
        result["orbits"] = [o.to_json() for o in part.orbits]
        result["boundary_escapes"] = part.boundary_escapes
    ln_ln = _dp_bound_ln_ln(args.degree, S)
    return result, {"cap": str(args.cap), "paper_bound_ln_ln": ln_ln}


def cmd_catalog(args) -> tuple[dict, dict]:
    S, configs = _enumerate(args)
    part = dedup_orbits(configs)
    quartics = []
    if args.degree == 2:
        for c in configs:
            r = quartic_from_dp_config(c, seed=args.seed)
            entry = r.to_json()
            entry["points"] = [p.to_json() for p in c.points]
            quartics.append(entry)
    result = {
        "degree": args.degree,
        "primes": list(S),
        "cap": str(args.cap),
        "configs": [_config_json(c) for c in configs],
        "orbits": [o.to_json() for o in part.orbits],
        "boundary_escapes": part.boundary_escapes,
        "quartics": quartics,
        "minor_policy": "lines, conics and singular cubics must all be S-units",
        "s_prime": sorted(set(S) | {2}),
    }
    ln_ln = _dp_bound_ln_ln(args.degree, S)
    return result, {"cap": str(args.cap), "paper_bound_ln_ln": ln_ln}


# quartic


def cmd_quartic_disc(args) -> tuple[dict, dict]:
    f = _load_form(args.form)
    curve = QuarticCurve.of(f, seed=args.seed)
    result = {"form": f.to_json(), "discriminant": _frac(quartic_discriminant(f, args.seed))}
    result["bad_primes"] = list(curve.bad_primes)
    result["smooth"] = curve.smooth
    if curve.smooth:
        cover = double_cover_from_quartic(f, seed=args.seed)
        result["double_cover"] = {
            "equation": cover.equation,
            "ambient": cover.ambient,
            "bad_primes": list(cover.bad_primes),
        }
    return result, {"cap": None, "paper_bound_ln_ln": None}


def cmd_quartic_verdict(args) -> tuple[dict, dict]:
    f = _load_form(args.form)
    S = _primes(args.primes)
    result = good_reduction_verdict(f, S, seed=args.seed).to_json()
    result["primes"] = list(S)
    return result, {"cap": None, "paper_bound_ln_ln": None}


def cmd_quartic_from_points(args) -> tuple[dict, dict]:
    config = _load_config(args.config)
    if config.degree != 2:
        raise UsageError(f"{args.config}: need seven points, got {len(config.points)}")
    r = quartic_from_dp_config(config, seed=args.seed)
    result = r.to_json()
    result["points"] = [p.to_json() for p in config.points]
    result["primes"] = list(config.S)
    result["net"] = [f.to_json() for f in r.net.cubics]
    return result, {"cap": None, "paper_bound_ln_ln": None}


# parser


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for retry coordinate changes")
    common.add_argument("--json", nargs="?", const="-", default="-", metavar="FILE", help="write JSON to FILE")
    common.add_argument("--timing", action="store_true", help="record wall-clock time in the manifest")

    parser = _Parser(prog="shafbound", description="Effective bounds and S-integral del Pezzo catalogs over Q.")
    parser.add_argument("--version", action="version", version=f"shafbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bounds = sub.add_parser("bounds", help="closed-form bounds").add_subparsers(dest="which", required=True)
    p = bounds.add_parser("lenstra", parents=[common], help="class-number bound")
    p.add_argument("--dk", type=_positive, required=True)
    p.add_argument("--disc", type=_positive, required=True)
    p.set_defaults(handler=cmd_bounds_lenstra, name="bounds lenstra")

    def field_flags(q):
        q.add_argument("--dk", type=_positive, required=True)
        q.add_argument("--disc", type=_positive, required=True)
        q.add_argument("--ns", type=_positive, required=True)
        q.add_argument("--s", type=_nonnegative, required=True)
        q.add_argument("--log-only", action="store_true")
        q.add_argument("--ceiling", type=_positive, default=None, help="digit ceiling for exact arithmetic")

    p = bounds.add_parser("unit-eq", parents=[common], help="unit-equation height bound")
    p.add_argument("--l", type=_positive, required=True)
    field_flags(p)
    p.set_defaults(handler=cmd_bounds_unit_eq, name="bounds unit-eq")

    p = bounds.add_parser("dp", parents=[common], help="del Pezzo point height bound")
    p.add_argument("--degree", type=int, choices=(1, 2, 3, 4), required=True)
    field_flags(p)
    p.set_defaults(handler=cmd_bounds_dp, name="bounds dp")

    sunit = sub.add_parser("sunit", help="unit equation").add_subparsers(dest="which", required=True)
    p = sunit.add_parser("solve", parents=[common])
    p.add_argument("--primes", required=True)
    p.add_argument("--cap", type=_positive, required=True)
    p.set_defaults(handler=cmd_sunit_solve, name="sunit solve")

    def dp_flags(q):
        q.add_argument("--degree", type=int, choices=(1, 2, 3, 4), required=True)
        q.add_argument("--primes", required=True)
        q.add_argument("--cap", type=_positive, required=True)
        q.add_argument("--allow-degree-one", action="store_true")

    dp = sub.add_parser("dp", help="del Pezzo configurations").add_subparsers(dest="which", required=True)
    p = dp.add_parser("enumerate", parents=[common])
    dp_flags(p)
    p.add_argument("--dedup", action="store_true")
    p.set_defaults(handler=cmd_dp_enumerate, name="dp enumerate")

    quartic = sub.add_parser("quartic", help="plane quartics").add_subparsers(dest="which", required=True)
    p = quartic.add_parser("disc", parents=[common])
    p.add_argument("--form", required=True)
    p.set_defaults(handler=cmd_quartic_disc, name="quartic disc")
    p = quartic.add_parser("verdict", parents=[common])
    p.add_argument("--form", required=True)
    p.add_argument("--primes", required=True)
    p.set_defaults(handler=cmd_quartic_verdict, name="quartic verdict")
    p = quartic.add_parser("from-points", parents=[common])
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_quartic_from_points, name="quartic from-points")

    p = sub.add_parser("catalog", parents=[common], help="enumerate, deduplicate and attach quartics")
    dp_flags(p)
    p.set_defaults(handler=cmd_catalog, name="catalog")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    handler: Callable = args.handler
    start = time.perf_counter()
    try:
        result, extra = handler(args)
    except UsageError as exc:
        print(f"shafbound: {exc}", file=stderr)
        return EXIT_INPUT
    except (CertificateError, AssertionError) as exc:
        print(f"shafbound: internal check failed: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ValueError, DegeneracyError, OverflowError) as exc:
        print(f"shafbound: {exc}", file=stderr)
        return EXIT_INPUT
    params = {k: v for k, v in sorted(vars(args).items()) if k not in EXECUTION_FLAGS and k not in ("name",)}
    manifest = {
        "subcommand": args.name,
        "params": params,
        "version": __version__,
        "cap": extra["cap"],
        "paper_bound_ln_ln": extra["paper_bound_ln_ln"],
        "digest": digest(result),
    }
    if args.timing:
        manifest["wall_clock"] = f"{time.perf_counter() - start:.3f}"
    text = canonical_json({**result, "manifest": manifest}) + "\n"
    if args.json == "-":
        stdout.write(text)
    else:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"shafbound: cannot write {args.json}: {exc.strerror}", file=stderr)
            return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
