"""Monte Carlo evaluation sweeps: repeated sampling of a fixed parent across a p grid."""

from __future__ import annotations

import csv
import io
import json
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .chordal import clique_number, mcs_peo, triangulate, Peo
from .estimators import (
    Auto,
    CliquesSmoothed,
    CliquesUnbiased,
    EstimatorKind,
    Forest,
    Lambda,
    NonChordalHeuristic,
    PLogN,
    SmoothedChordal,
    UnbiasedChordal,
    UniformUnbiased,
    estimate,
)
from .graph import Graph, count_components, disjoint_union, gen_er, gen_named, read_edge_list
from .sampling import Bernoulli, SampleSpec, Uniform, draw


class ConfigError(ValueError):
    pass


ESTIMATOR_NAMES = ("unbiased", "smoothed", "cliques", "cliques-smoothed", "uniform", "forest")


def parse_lambda(text: str, d: int | None = None, omega: int | None = None) -> Lambda:
    text = text.strip().lower()
    if text == "auto":
        return Auto(d=d, omega=omega)
    if text == "plogn":
        return PLogN()
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"lambda must be 'auto', 'plogn' or a number, got {text!r}") from None
    if value < 0:
        raise ConfigError("lambda must be nonnegative")
    return value


def make_estimator(name: str, lam: Lambda = 0.0, heuristic: bool = False) -> EstimatorKind:
    kinds = {
        "unbiased": UnbiasedChordal(),
        "smoothed": SmoothedChordal(lam),
        "cliques": CliquesUnbiased(),
        "cliques-smoothed": CliquesSmoothed(lam),
        "uniform": UniformUnbiased(),
        "forest": Forest(),
    }
    if name not in kinds:
        raise ConfigError(f"unknown estimator {name!r}; choose from {', '.join(ESTIMATOR_NAMES)}")
    kind = kinds[name]
    return NonChordalHeuristic(kind) if heuristic else kind


def build_generator(spec: str, seed: int) -> Graph:
    """Graph from a colon-separated recipe.

    ``er:N:delta``, ``named:KIND:k`` or ``copies:K:<recipe>``; copy ``i`` of
    a ``copies`` recipe uses seed ``seed + i``.
    """
    parts = spec.strip().split(":")
    try:
        if parts[0] == "er" and len(parts) == 3:
            return gen_er(int(parts[1]), float(parts[2]), seed)
        if parts[0] == "named" and len(parts) == 3:
            return gen_named(parts[1], int(parts[2]))
        if parts[0] == "copies" and len(parts) >= 3:
            k = int(parts[1])
            inner = ":".join(parts[2:])
            return disjoint_union([build_generator(inner, seed + i) for i in range(k)])
    except ValueError as exc:
        raise ConfigError(f"bad generator recipe {spec!r}: {exc}") from None
    raise ConfigError(f"bad generator recipe {spec!r}")


@dataclass
class EvalConfig:
    estimator: str = "unbiased"
    lam: str = "0"
    d: int | None = None
    omega: int | None = None
    heuristic: bool = False
    model: str = "bernoulli"
    graph: str | None = None
    generator: str | None = None
    gen_seed: int = 0
    triangulate_parent: bool = False
    p_grid: list[float] = field(default_factory=lambda: [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    trials: int = 20
    seed: int = 0
    trials_csv: str | None = None
    summary_csv: str | None = None
    report_json: str | None = None

    def validate(self) -> None:
        if (self.graph is None) == (self.generator is None):
            raise ConfigError("exactly one of 'graph' and 'generator' must be set")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.p_grid or any(not 0 < p <= 1 for p in self.p_grid):
            raise ConfigError("every p must lie in (0, 1]")
        if self.model not in ("bernoulli", "uniform"):
            raise ConfigError("model must be 'bernoulli' or 'uniform'")
        self.kind()

    def kind(self) -> EstimatorKind:
        return make_estimator(self.estimator, parse_lambda(self.lam, self.d, self.omega), self.heuristic)

    def base_dir(self) -> Path:
        return Path(getattr(self, "_base", "."))


_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def parse_config(text: str, base_dir: str | os.PathLike = ".") -> EvalConfig:
    """Read ``key = value`` lines (``#`` comments) into an EvalConfig."""
    cfg = EvalConfig()
    known = set(EvalConfig.__dataclass_fields__)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "lambda":
            key = "lam"
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if key in ("d", "omega", "gen_seed", "trials", "seed"):
                setattr(cfg, key, int(value))
            elif key in ("heuristic", "triangulate_parent"):
                setattr(cfg, key, _BOOL[value.lower()])
            elif key == "p_grid":
                setattr(cfg, key, [float(x) for x in value.replace(",", " ").split()])
            else:
                setattr(cfg, key, value)
        except (ValueError, KeyError):
            raise ConfigError(f"line {lineno}: bad value {value!r} for {key}") from None
    cfg._base = str(base_dir)
    cfg.validate()
    return cfg


def load_parent(cfg: EvalConfig) -> Graph:
    if cfg.graph is not None:
        path = Path(cfg.graph)
        if not path.is_absolute():
            path = cfg.base_dir() / path
        g = read_edge_list(path)
    else:
        g = build_generator(cfg.generator, cfg.gen_seed)
    if cfg.triangulate_parent:
        g = triangulate(g)
    if g.n == 0:
        raise ConfigError("parent graph has no vertices")
    return g


@dataclass
class TrialRecord:
    p: float
    trial: int
    estimate: float
    true_cc: int
    rel_error: float


@dataclass
class SummaryRow:
    p: float
    mean_rel_error: float
    sd_rel_error: float
    n_trials: int
    mean_estimate: float
    true_cc: int
    wall_time: float


@dataclass
class EvalReport:
    rows: list[SummaryRow]
    trials: list[TrialRecord]
    provenance: dict

    def trials_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "trial", "estimate", "true_cc", "rel_error"])
        for t in self.trials:
            w.writerow([repr(t.p), t.trial, repr(t.estimate), t.true_cc, repr(t.rel_error)])
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "mean_rel_error", "sd_rel_error", "n_trials"])
        for r in self.rows:
            w.writerow([repr(r.p), repr(r.mean_rel_error), repr(r.sd_rel_error), r.n_trials])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"rows": [asdict(r) for r in self.rows], "provenance": self.provenance},
            indent=2,
            sort_keys=True,
        )


def worker_count(tasks: int) -> int:
    cap = os.environ.get("CC_SAMPLE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ConfigError("CC_SAMPLE_THREADS must be an integer") from None
    return max(1, min(n, tasks))


def graph_summary(g: Graph) -> dict:
    peo = mcs_peo(g)
    return {
        "n": g.n,
        "e": g.num_edges,
        "d": g.max_degree,
        "omega": clique_number(peo) if isinstance(peo, Peo) else None,
        "chordal": isinstance(peo, Peo),
        "cc": count_components(g),
    }


def run_eval(cfg: EvalConfig, parent: Graph | None = None) -> EvalReport:
    """Run ``trials`` samples per p; trial ``i`` uses seed ``cfg.seed + i`` at every p."""
    cfg.validate()
    g = load_parent(cfg) if parent is None else parent
    kind = cfg.kind()
    true_cc = count_components(g)

    def one(p: float, i: int) -> TrialRecord:
        seed = cfg.seed + i
        if cfg.model == "uniform":
            spec = SampleSpec(Uniform(round(p * g.n)), seed)
        else:
            spec = SampleSpec(Bernoulli(p), seed)
        value = float(estimate(draw(g, spec), kind))
        return TrialRecord(p, i, value, true_cc, abs(value - true_cc) / true_cc)

    records: list[TrialRecord] = []
    rows: list[SummaryRow] = []
    with ThreadPoolExecutor(max_workers=worker_count(cfg.trials)) as pool:
        for p in cfg.p_grid:
            start = time.perf_counter()
            batch = list(pool.map(lambda i: one(p, i), range(cfg.trials)))
            elapsed = time.perf_counter() - start
            batch.sort(key=lambda t: t.trial)
            records.extend(batch)
            errs = [t.rel_error for t in batch]
            rows.append(
                SummaryRow(
                    p=p,
                    mean_rel_error=statistics.fmean(errs),
                    sd_rel_error=statistics.stdev(errs) if len(errs) > 1 else float("nan"),
                    n_trials=len(errs),
                    mean_estimate=statistics.fmean(t.estimate for t in batch),
                    true_cc=true_cc,
                    wall_time=elapsed,
                )
            )
    records.sort(key=lambda t: (t.p, t.trial))
    config_echo = {k: v for k, v in asdict(cfg).items()}
    provenance = {
        "config": config_echo,
        "trial_seeds": [cfg.seed + i for i in range(cfg.trials)],
        "version": __version__,
        "parent": graph_summary(g),
    }
    report = EvalReport(rows=rows, trials=records, provenance=provenance)
    base = cfg.base_dir()
    for attr, text in (
        ("trials_csv", report.trials_csv),
        ("summary_csv", report.summary_csv),
        ("report_json", report.to_json),
    ):
        target = getattr(cfg, attr)
        if target:
            path = Path(target)
            if not path.is_absolute():
                path = base / path
            path.write_text(text(), encoding="utf-8", newline="\n")
    return report
