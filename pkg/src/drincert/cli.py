"""Command line entry point: ``certify --q 7 --g1 0 --g2 1 --max-deg 2 --pairs``."""

from __future__ import annotations

import argparse
import sys

from .algebra import GF, PolyParseError, field_with_modulus, parse_poly, prime_power
from .certify import DEFAULT_PAIR_DEGREE, ReportConfig, run_report

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="certify",
        description="Certify surjectivity evidence for phi_T = T + g1^(q-1) tau + g2^(q-1) tau^2 + T^(q-1) tau^3.",
    )
    ap.add_argument("--q", type=int, required=True, help="size of the constant field (odd prime power)")
    ap.add_argument("--ext-modulus", default=None,
                    help="monic irreducible over F_p in the variable u defining F_q (default: canonical)")
    ap.add_argument("--g1", required=True, help="polynomial in T, e.g. 'T^2 + 3*T + 1'")
    ap.add_argument("--g2", required=True, help="polynomial in T")
    ap.add_argument("--max-deg", type=int, default=2, help="certify all primes up to this degree (default 2)")
    ap.add_argument("--pair-deg", type=int, default=DEFAULT_PAIR_DEGREE, help="degree cap for pairs (default 2)")
    ap.add_argument("--pairs", action="store_true", help="also certify every pair of primes")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    ap.add_argument("--allow-small-q", action="store_true",
                    help="run for q < 7; verdicts are then reported as out-of-scope")
    return ap


def make_config(args) -> ReportConfig:
    try:
        p, e = prime_power(args.q)
    except ValueError as exc:
        raise ConfigError(f"--q: {exc}") from None
    if p == 2:
        raise ConfigError("refused: requires an odd q")
    if args.q < 7 and not args.allow_small_q:
        raise ConfigError("refused: requires q ≥ 7 (use --allow-small-q to run out of scope)")
    if args.max_deg < 1:
        raise ConfigError("--max-deg must be at least 1")
    if args.ext_modulus is not None:
        Fp = GF(p)
        try:
            m = parse_poly(args.ext_modulus, Fp, var="u")
        except PolyParseError as exc:
            raise ConfigError(f"--ext-modulus: {exc}") from None
        if m.degree != e:
            raise ConfigError(f"--ext-modulus must have degree {e}")
        try:
            F = field_with_modulus(p, m.coeffs)
        except ValueError as exc:
            raise ConfigError(f"--ext-modulus: {exc}") from None
    else:
        F = GF(args.q)
    polys = {}
    for name in ("g1", "g2"):
        try:
            polys[name] = parse_poly(getattr(args, name), F)
        except PolyParseError as exc:
            raise ConfigError(f"--{name}: {exc}") from None
    return ReportConfig(args.q, polys["g1"], polys["g2"], F, args.max_deg, args.pairs, args.pair_deg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print(f"certify: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run_report(cfg)
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.all_surjective else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
