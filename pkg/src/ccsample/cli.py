"""``ccsample`` command line: gen | sample | estimate | eval | verify | pair."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chordal import triangulate
from .estimators import NotChordalSampleError, clip_and_round, estimate
from .graph import ParseError, format_edge_list, read_edge_list, write_edge_list
from .harness import ConfigError, ESTIMATOR_NAMES, build_generator, graph_summary, make_estimator, parse_config, parse_lambda, run_eval
from .lowerbounds import (
    export_pair,
    gen_chordal_pair_parity,
    gen_clique_pair,
    gen_cycle_pair,
    gen_star_pair,
    tv_bound_coupling,
    tv_bound_matching,
)
from .sampling import Bernoulli, SampleSpec, Uniform, draw
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MODEL = 2


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _recipe(tokens: list[str]) -> str:
    """``er N delta`` / ``copies K er:N:delta`` / ``named KIND k`` -> colon recipe."""
    if not tokens:
        raise ConfigError("missing generator recipe")
    kind, rest = tokens[0], tokens[1:]
    if kind == "copies" and len(rest) == 2:
        return f"copies:{rest[0]}:{rest[1]}"
    if kind in ("er", "named") and len(rest) == 2:
        return f"{kind}:{rest[0]}:{rest[1]}"
    if len(tokens) == 1 and ":" in kind:
        return kind
    raise ConfigError(f"cannot read generator recipe {' '.join(tokens)!r}")


def cmd_gen(args) -> int:
    g = build_generator(_recipe(args.recipe), args.seed)
    if args.triangulate:
        g = triangulate(g)
    summary = graph_summary(g)
    comments = [f"ccsample gen {' '.join(args.recipe)} seed={args.seed} triangulate={args.triangulate}"]
    if args.output:
        write_edge_list(g, args.output, comments)
        print(json.dumps(summary, sort_keys=True))
    else:
        sys.stdout.write(format_edge_list(g, comments))
        print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def _spec(args, n_parent: int) -> SampleSpec:
    if args.uniform_n is not None:
        if args.p is not None:
            raise ConfigError("give either --p or --uniform-n, not both")
        return SampleSpec(Uniform(args.uniform_n), args.seed)
    if args.p is None:
        raise ConfigError("one of --p or --uniform-n is required")
    return SampleSpec(Bernoulli(args.p), args.seed)


def cmd_sample(args) -> int:
    g = read_edge_list(args.graph)
    sg = draw(g, _spec(args, g.n))
    model = sg.spec.describe()
    comments = [f"sample of {args.graph}: {json.dumps(model, sort_keys=True)}", "vertices " + " ".join(map(str, sg.sampled))]
    _emit(format_edge_list(sg.graph, comments), args.output)
    return EXIT_OK


def cmd_estimate(args) -> int:
    g = read_edge_list(args.graph)
    spec = _spec(args, g.n)
    name = args.estimator or ("uniform" if isinstance(spec.model, Uniform) else "unbiased")
    kind = make_estimator(name, parse_lambda(args.lam, args.d, args.omega), args.heuristic)
    sg = draw(g, spec)
    value = estimate(sg, kind)
    value = float(value)
    if args.clip:
        value = clip_and_round(value, g.n)
    model = sg.spec.describe()
    seed = model.pop("seed")
    model["estimator"] = name
    print(json.dumps({"estimate": value, "model": model, "seed": seed}, sort_keys=True))
    return EXIT_OK


def cmd_eval(args) -> int:
    path = Path(args.config)
    cfg = parse_config(path.read_text(encoding="utf-8"), base_dir=path.parent)
    for attr in ("trials_csv", "summary_csv", "report_json"):
        value = getattr(args, attr)
        if value:
            setattr(cfg, attr, str(Path(value).resolve()))
    report = run_eval(cfg)
    if not args.quiet:
        sys.stdout.write(report.summary_csv())
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    failed = 0
    for c in checks:
        if not c.ok:
            failed += 1
        if args.verbose or not c.ok:
            print(f"{'PASS' if c.ok else 'FAIL'} {c.name} {c.detail}")
    print(f"{args.suite}: {len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_ERROR


def cmd_pair(args) -> int:
    kind, params = args.kind, args.params
    need = {"cycle": 1, "parity": 2, "clique": 1, "star": 1}
    if len(params) != need[kind]:
        raise ConfigError(f"pair {kind} takes {need[kind]} integer parameter(s)")
    if kind == "cycle":
        pair = gen_cycle_pair(*params)
    elif kind == "parity":
        pair = gen_chordal_pair_parity(*params)
    elif kind == "clique":
        pair = gen_clique_pair(*params)
    else:
        pair = gen_star_pair(*params)
    meta = pair.meta()
    if args.prefix:
        meta["files"] = [str(p) for p in export_pair(pair, args.prefix)]
    if args.tv is not None:
        from .oracle import exact_tv

        p = Fraction(args.tv).limit_denominator(10**6)
        meta["tv"] = float(exact_tv(pair.h, pair.h2, p))
        if pair.matching_order is not None:
            tail, hoeff = tv_bound_matching(pair.m, pair.matching_order, float(p))
            meta["tv_bound_binomial"], meta["tv_bound_hoeffding"] = tail, hoeff
        if pair.special_vertices:
            meta["tv_bound_coupling"] = tv_bound_coupling(len(pair.special_vertices), pair.m, float(p), shared_u=True)
    print(json.dumps(meta, indent=2, sort_keys=True))
    return EXIT_OK


def _add_sample_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("graph", help="edge-list file")
    sp.add_argument("--p", type=float, help="Bernoulli sampling probability")
    sp.add_argument("--uniform-n", type=int, help="sample exactly n vertices without replacement")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ccsample", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="generate a parent graph")
    sp.add_argument("recipe", nargs="+", help="er N DELTA | copies K er:N:DELTA | named KIND K")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--triangulate", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("sample", help="draw one induced subgraph")
    _add_sample_flags(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("estimate", help="sample once and estimate the component count")
    _add_sample_flags(sp)
    sp.add_argument("--estimator", choices=ESTIMATOR_NAMES)
    sp.add_argument("--lambda", dest="lam", default="0", help="auto | plogn | <value>")
    sp.add_argument("--d", type=int, help="degree bound for --lambda auto")
    sp.add_argument("--omega", type=int, help="clique-number bound for --lambda auto")
    sp.add_argument("--heuristic", action="store_true", help="triangulate non-chordal samples")
    sp.add_argument("--clip", action="store_true", help="round and clip to [0, N]")
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("eval", help="Monte Carlo sweep from a config file")
    sp.add_argument("config")
    sp.add_argument("--trials-csv")
    sp.add_argument("--summary-csv")
    sp.add_argument("--report", dest="report_json")
    sp.add_argument("-q", "--quiet", action="store_true")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("verify", help="run oracle-backed self-checks")
    sp.add_argument("suite", choices=[*SUITES, "all"])
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pair", help="lower-bound graph pairs")
    sp.add_argument("kind", choices=["cycle", "parity", "clique", "star"])
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--prefix", help="write <prefix>_h.txt, <prefix>_h2.txt, <prefix>_meta.json")
    sp.add_argument("--tv", type=float, help="also report exact TV and bounds at this p")
    sp.set_defaults(func=cmd_pair)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for model violations here
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NotChordalSampleError as exc:
        print(f"error: {exc} (--heuristic)", file=sys.stderr)
        return EXIT_MODEL
    except (ConfigError, ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
