"""Command-line front end.

Commands: chi, lifetime, reff (scalar calculators), table (corpus pipeline),
fit (least-squares reports as JSON), plot (deterministic SVG figure).

Exit codes: 0 success, 1 validation/parse/I-O error, 2 usage error.  The
env var CAVITYFIT_CONSTANT={paper|precise} selects the rate-constant mode
for every command (default: paper).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .cavity import CavityModel, RefractiveIndex, chi
from .corpus import Corpus, derive_rows, emit_table, parse_corpus, reference_corpus
from .errors import CavityFitError
from .figure import PlotSpec, render_figure
from .fit import WeightScheme, compare_models, fit_model
from .radiative import derive_reff, predicted_lifetime_ns
from .units import (
    LifetimeNs,
    RadialIntegralNm,
    RateConstant,
    WavelengthNm,
    rate_constant,
)

_MODEL_TOKENS = [m.value for m in CavityModel]
_SCHEME_TOKENS = [s.value for s in WeightScheme]


def _fmt6(v: float) -> str:
    """Six significant figures, trailing zeros kept (e.g. 1 -> '1.00000')."""
    decimals = max(0, 5 - math.floor(math.log10(abs(v))))
    return f"{v:.{decimals}f}"


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", metavar="PATH", help="corpus CSV file")
    group.add_argument(
        "--reference", action="store_true", help="use the embedded reference dataset"
    )


def _add_fit_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--scheme",
        choices=_SCHEME_TOKENS,
        default=WeightScheme.RELATIVE.value,
        help="row weighting (default: relative, w = 1/y^2)",
    )
    sub.add_argument(
        "--include-vacuum",
        action="store_true",
        help="keep n == 1 rows in the fit (excluded by default)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityfit",
        description=(
            "Local-field corrections to spontaneous-emission lifetimes: "
            "chi factors, lifetime/radial-integral conversions, corpus "
            "tables, cavity-model fits and the summary figure."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", help="print the local-field enhancement factor")
    p.add_argument("--model", choices=_MODEL_TOKENS, required=True)
    p.add_argument("--n", type=float, required=True, help="refractive index")
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("lifetime", help="predict a lifetime in ns")
    p.add_argument("--reff-nm", type=float, required=True)
    p.add_argument("--lambda-nm", type=float, required=True)
    p.add_argument("--model", choices=_MODEL_TOKENS, required=True)
    p.add_argument("--n", type=float, required=True)
    p.set_defaults(func=_cmd_lifetime)

    p = sub.add_parser("reff", help="derive the effective radial integral in nm")
    p.add_argument("--tau-ns", type=float, required=True)
    p.add_argument("--lambda-nm", type=float, required=True)
    p.add_argument("--model", choices=_MODEL_TOKENS, required=True)
    p.add_argument("--n", type=float, required=True)
    p.set_defaults(func=_cmd_reff)

    p = sub.add_parser("table", help="emit the corpus with derived columns")
    _add_input_flags(p)
    p.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("fit", help="fit r_eff^2 per cavity model, report JSON")
    _add_input_flags(p)
    _add_fit_flags(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", choices=_MODEL_TOKENS)
    group.add_argument("--compare", action="store_true", help="fit and rank both models")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("plot", help="render the measured-vs-model SVG figure")
    _add_input_flags(p)
    _add_fit_flags(p)
    p.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--x-min", type=float, default=PlotSpec.x_min)
    p.add_argument("--x-max", type=float, default=PlotSpec.x_max)
    p.add_argument("--samples", type=int, default=PlotSpec.curve_samples)
    p.add_argument("--width", type=int, default=PlotSpec.width_px)
    p.add_argument("--height", type=int, default=PlotSpec.height_px)
    p.set_defaults(func=_cmd_plot)

    return parser


def _load_corpus(args: argparse.Namespace) -> Corpus:
    if args.reference:
        return reference_corpus()
    with open(args.input, encoding="utf-8") as fh:
        return parse_corpus(fh, provenance=args.input)


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_chi(args: argparse.Namespace, constant: RateConstant) -> int:
    value = chi(CavityModel.from_token(args.model), RefractiveIndex(args.n))
    print(_fmt6(value.value))
    return 0


def _cmd_lifetime(args: argparse.Namespace, constant: RateConstant) -> int:
    tau = predicted_lifetime_ns(
        RadialIntegralNm(args.reff_nm),
        WavelengthNm(args.lambda_nm),
        CavityModel.from_token(args.model),
        RefractiveIndex(args.n),
        constant,
    )
    print(_fmt6(tau.value))
    return 0


def _cmd_reff(args: argparse.Namespace, constant: RateConstant) -> int:
    reff = derive_reff(
        LifetimeNs(args.tau_ns),
        WavelengthNm(args.lambda_nm),
        CavityModel.from_token(args.model),
        RefractiveIndex(args.n),
        constant,
    )
    print(_fmt6(reff.value))
    return 0


def _cmd_table(args: argparse.Namespace, constant: RateConstant) -> int:
    rows = derive_rows(_load_corpus(args), constant)
    _write_output(emit_table(rows, args.format), args.output)
    return 0


def _cmd_fit(args: argparse.Namespace, constant: RateConstant) -> int:
    rows = derive_rows(_load_corpus(args), constant)
    scheme = WeightScheme.from_token(args.scheme)
    if args.compare:
        report = compare_models(rows, scheme, args.include_vacuum).to_json_dict()
    else:
        report = fit_model(
            rows, CavityModel.from_token(args.model), scheme, args.include_vacuum
        ).to_json_dict()
    print(json.dumps(report, indent=2))
    return 0


def _cmd_plot(args: argparse.Namespace, constant: RateConstant) -> int:
    rows = derive_rows(_load_corpus(args), constant)
    scheme = WeightScheme.from_token(args.scheme)
    fit_v = fit_model(rows, CavityModel.VIRTUAL, scheme, args.include_vacuum)
    fit_r = fit_model(rows, CavityModel.REAL, scheme, args.include_vacuum)
    spec = PlotSpec(
        x_min=args.x_min,
        x_max=args.x_max,
        curve_samples=args.samples,
        width_px=args.width,
        height_px=args.height,
    )
    svg = render_figure(rows, fit_v, fit_r, spec, include_vacuum=args.include_vacuum)
    _write_output(svg, args.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        constant = rate_constant(os.environ.get("CAVITYFIT_CONSTANT", "paper"))
        return args.func(args, constant)
    except CavityFitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
