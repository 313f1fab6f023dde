"""Command-line front end.

Subcommands: ``bound``, ``decompose``, ``extremal``, ``verify``,
``sweep``.  Output is JSON by default; ``--format csv`` and
``--format plain`` are available where a table makes sense.  Exit
codes: 0 ok, 2 usage, 3 validation, 4 infeasible, 5 soundness
violation (an oracle beat a proven bound, i.e. a bug).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import __version__
from .bounds import TailMode, best_bound
from .decompose import (
    to_uniform_mixture,
    unimodal_to_interval_mixture,
)
from .dist_core import (
    Pmf,
    as_rational,
    make_pmf,
    mean,
    point_pmf,
    tail,
    two_sided_tail,
    uniform_pmf,
    variance,
)
from .errors import (
    InfeasibleError,
    ShapeViolationError,
    SoundnessViolationError,
    ValidationError,
)
from .extremal import (
    extremal_markov_continuous,
    extremal_markov_discrete,
    lp_max_tail_decreasing,
    verify_tightness_theorem2,
    tightness_rows_to_csv,
    tightness_rows_to_json,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_INFEASIBLE = 4
EXIT_SOUNDNESS = 5


@dataclass
class RunConfig:
    """Everything one invocation needs, parsed and validated."""

    subcommand: str
    pmf: Optional[Pmf] = None
    a: Optional[int] = None
    a_values: Optional[list[int]] = None
    mu: Optional[Fraction] = None
    mu_values: Optional[list[Fraction]] = None
    var: Optional[Fraction] = None
    N: Optional[int] = None
    epsilon: Optional[float] = None
    kind: Optional[str] = None
    mode: TailMode = TailMode.ONE_SIDED_UPPER
    output_format: str = "json"
    exact: bool = True


def parse_pmf_literal(text: str) -> Pmf:
    """Parse ``uniform:l..r``, ``point:k`` or ``weights:o;w0,w1,...``.

    Weight tokens are rationals like ``1/2``, ``3`` or ``0.25``.
    """
    kind, sep, body = text.partition(":")
    if not sep:
        raise ValidationError(
            f"pmf literal {text!r}: expected 'kind:...' (missing ':' after position 0)"
        )
    pos = len(kind) + 1
    if kind == "uniform":
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", body)
        if not m:
            raise ValidationError(
                f"pmf literal {text!r}: expected 'l..r' at position {pos}"
            )
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ValidationError(f"pmf literal {text!r}: empty range {lo}..{hi}")
        return uniform_pmf(lo, hi)
    if kind == "point":
        m = re.fullmatch(r"-?\d+", body)
        if not m:
            raise ValidationError(
                f"pmf literal {text!r}: expected an integer at position {pos}"
            )
        return point_pmf(int(body))
    if kind == "weights":
        offset_text, sep2, weights_text = body.partition(";")
        if not sep2:
            raise ValidationError(
                f"pmf literal {text!r}: expected 'offset;w0,w1,...' at position {pos}"
            )
        if not re.fullmatch(r"-?\d+", offset_text):
            raise ValidationError(
                f"pmf literal {text!r}: offset must be an integer at position {pos}"
            )
        weights = []
        cursor = pos + len(offset_text) + 1
        for token in weights_text.split(","):
            try:
                weights.append(as_rational(token.strip()))
            except ValidationError as exc:
                raise ValidationError(
                    f"pmf literal {text!r}: bad weight {token!r} at position {cursor}"
                ) from exc
            cursor += len(token) + 1
        return make_pmf(int(offset_text), weights)
    raise ValidationError(
        f"pmf literal {text!r}: unknown kind {kind!r} (want uniform|point|weights)"
    )


def _load_pmf(args: argparse.Namespace) -> Pmf:
    sources = [s for s in (args.pmf, args.input) if s is not None]
    if len(sources) != 1:
        raise ValidationError("exactly one of --pmf or --input is required")
    if args.pmf is not None:
        return parse_pmf_literal(args.pmf)
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{args.input} is not valid JSON: {exc}") from exc
    return Pmf.from_dict(obj)


def _parse_int_range(text: str) -> list[int]:
    m = re.fullmatch(r"(-?\d+)(?:\.\.(-?\d+))?", text)
    if not m:
        raise ValidationError(f"expected an integer or 'lo..hi' range, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo > hi:
        raise ValidationError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _parse_rational_list(text: str) -> list[Fraction]:
    return [as_rational(tok.strip()) for tok in text.split(",")]


def _fmt(value: Union[Fraction, float], exact: bool) -> Union[str, float]:
    if isinstance(value, Fraction):
        return str(value) if exact else float(value)
    return value


def _clamped(value: Union[Fraction, float]) -> str:
    # Presentation-side clamp for the plain format only.
    if value > 1:
        return "1 *"
    return str(value)


def _run_bound(cfg: RunConfig) -> tuple[str, int]:
    results = best_bound(cfg.pmf, cfg.a, cfg.mode)
    if cfg.mode is TailMode.ONE_SIDED_UPPER:
        exact_tail = tail(cfg.pmf, cfg.a)
        tail_label = f"P(X >= {cfg.a})"
    else:
        exact_tail = two_sided_tail(cfg.pmf, cfg.a)
        tail_label = f"P(|X - E[X]| >= {cfg.a})"
    if cfg.output_format == "json":
        payload = {
            "a": cfg.a,
            "mode": cfg.mode.value,
            "exact_tail": _fmt(exact_tail, cfg.exact),
            "mean": _fmt(mean(cfg.pmf), cfg.exact),
            "variance": _fmt(variance(cfg.pmf), cfg.exact),
            "bounds": [r.to_dict(cfg.exact) for r in results],
        }
        return json.dumps(payload, indent=2), EXIT_OK
    if cfg.output_format == "csv":
        lines = ["formula,value"]
        lines.append(f"ExactTail,{_fmt(exact_tail, cfg.exact)}")
        lines.extend(f"{r.formula.value},{_fmt(r.value, cfg.exact)}" for r in results)
        return "\n".join(lines), EXIT_OK
    lines = [f"exact tail {tail_label} = {exact_tail}"]
    width = max(len(r.formula.value) for r in results)
    for r in results:
        lines.append(f"{r.formula.value:<{width}}  {_clamped(r.value)}")
    return "\n".join(lines), EXIT_OK


def _run_decompose(cfg: RunConfig) -> tuple[str, int]:
    if cfg.kind == "interval":
        mixture = unimodal_to_interval_mixture(cfg.pmf)
    else:
        mixture = to_uniform_mixture(cfg.pmf)
    return json.dumps(mixture.to_dict(), indent=2), EXIT_OK


def _run_extremal(cfg: RunConfig) -> tuple[str, int]:
    if cfg.kind == "continuous":
        if cfg.epsilon is None:
            raise ValidationError("--epsilon is required for the continuous construction")
        spec = extremal_markov_continuous(float(cfg.a), float(cfg.mu), cfg.epsilon)
    else:
        spec = extremal_markov_discrete(cfg.a, cfg.mu)
    return json.dumps(spec.to_dict(cfg.exact), indent=2), EXIT_OK


def _run_verify(cfg: RunConfig) -> tuple[str, int]:
    rows = verify_tightness_theorem2(cfg.a_values, cfg.mu_values, cfg.N)
    if cfg.output_format == "csv":
        return tightness_rows_to_csv(rows).rstrip("\n"), EXIT_OK
    return json.dumps(tightness_rows_to_json(rows), indent=2), EXIT_OK


def _run_sweep(cfg: RunConfig) -> tuple[str, int]:
    records = []
    for a in cfg.a_values:
        if a < 1:
            continue
        if cfg.mode is TailMode.ONE_SIDED_UPPER:
            exact_tail = tail(cfg.pmf, a)
        else:
            exact_tail = two_sided_tail(cfg.pmf, a)
        for r in best_bound(cfg.pmf, a, cfg.mode):
            ratio = r.value / exact_tail if exact_tail > 0 else None
            records.append((a, exact_tail, r.formula.value, r.value, ratio))
    if cfg.output_format == "json":
        payload = [
            {
                "a": a,
                "exact_tail": _fmt(t, cfg.exact),
                "formula": f,
                "bound": _fmt(v, cfg.exact),
                "ratio": None if ratio is None else _fmt(ratio, cfg.exact),
            }
            for a, t, f, v, ratio in records
        ]
        return json.dumps(payload, indent=2), EXIT_OK
    lines = ["a,exact_tail,formula,bound,ratio"]
    for a, t, f, v, ratio in records:
        r_txt = "" if ratio is None else _fmt(ratio, cfg.exact)
        lines.append(f"{a},{_fmt(t, cfg.exact)},{f},{_fmt(v, cfg.exact)},{r_txt}")
    return "\n".join(lines), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailbounds",
        description="Tail bounds for shape-constrained discrete distributions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_pmf_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pmf", help="inline literal: uniform:l..r | point:k | weights:o;w0,w1,...")
        p.add_argument("--input", help="path to a pmf JSON file {offset, weights}")

    def add_format(p: argparse.ArgumentParser, choices=("json", "csv", "plain")) -> None:
        p.add_argument("--format", choices=choices, default="json")
        p.add_argument(
            "--float", action="store_true", dest="as_float",
            help="render rationals as decimals instead of num/den",
        )

    p = sub.add_parser("bound", help="exact tail plus every applicable bound")
    add_pmf_opts(p)
    p.add_argument("--a", required=True, type=int)
    p.add_argument("--mode", choices=["one-sided", "two-sided"], default="one-sided")
    add_format(p)

    p = sub.add_parser("decompose", help="mixture decomposition of a shaped pmf")
    add_pmf_opts(p)
    p.add_argument("--kind", choices=["uniform", "interval"], default="uniform")
    add_format(p, choices=("json",))

    p = sub.add_parser("extremal", help="construct a worst-case distribution")
    p.add_argument("--kind", choices=["discrete", "continuous"], default="discrete")
    p.add_argument("--a", required=True, type=int)
    p.add_argument("--mu", required=True)
    p.add_argument("--epsilon", type=float)
    add_format(p, choices=("json",))

    p = sub.add_parser("verify", help="tightness sweep of the sharpened Markov bound")
    p.add_argument("--a", required=True, help="integer or range lo..hi")
    p.add_argument("--mu", required=True, help="comma-separated rationals")
    p.add_argument("--N", required=True, type=int, help="support cap for the oracle")
    add_format(p, choices=("json", "csv"))

    p = sub.add_parser("sweep", help="bound-vs-exact-tail ratios across thresholds")
    add_pmf_opts(p)
    p.add_argument("--a", required=True, help="integer or range lo..hi")
    p.add_argument("--mode", choices=["one-sided", "two-sided"], default="one-sided")
    add_format(p, choices=("json", "csv"))

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    cfg.output_format = getattr(args, "format", "json")
    cfg.exact = not getattr(args, "as_float", False)
    if args.subcommand in ("bound", "decompose", "sweep"):
        cfg.pmf = _load_pmf(args)
    if args.subcommand in ("bound", "sweep"):
        mode = getattr(args, "mode", "one-sided")
        cfg.mode = TailMode.ONE_SIDED_UPPER if mode == "one-sided" else TailMode.TWO_SIDED
    if args.subcommand == "bound":
        cfg.a = args.a
    if args.subcommand == "decompose":
        cfg.kind = args.kind
    if args.subcommand == "extremal":
        cfg.kind = args.kind
        cfg.a = args.a
        cfg.mu = as_rational(args.mu)
        cfg.epsilon = args.epsilon
    if args.subcommand == "verify":
        cfg.a_values = _parse_int_range(args.a)
        cfg.mu_values = _parse_rational_list(args.mu)
        cfg.N = args.N
    if args.subcommand == "sweep":
        cfg.a_values = _parse_int_range(args.a)
    return cfg


_RUNNERS = {
    "bound": _run_bound,
    "decompose": _run_decompose,
    "extremal": _run_extremal,
    "verify": _run_verify,
    "sweep": _run_sweep,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    return _RUNNERS[cfg.subcommand](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        output, code = run(cfg)
    except (ValidationError, ShapeViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SoundnessViolationError as exc:
        print(f"soundness violation: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
