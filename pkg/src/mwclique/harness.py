"""Batch experiments: seeded repeated runs, success statistics, CSV/JSON records."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from statistics import fmean
from typing import Iterable, Mapping, Sequence

from .config import Configuration, check
from .graph import VertexWeightedGraph, load_dimacs
from .search import RunResult, solve

log = logging.getLogger(__name__)

RECORD_FIELDS = ("instance", "seed", "best_weight", "time_to_best", "elapsed", "steps", "restarts", "success")


def new_sq(weight: int, time_to_best: float) -> float:
    """Configurator objective: lower is better, quality first, time as a tie-breaker."""
    return -weight + time_to_best / 1000


def par10(result: RunResult, cutoff: float) -> float:
    """Time-to-best for a successful run, ``10 * cutoff`` for a failed one."""
    if result.success is False:
        return 10 * cutoff
    return result.time_to_best


@dataclass
class BatchStats:
    runs: int
    n_success: int
    t_avg: float
    success_rate: float
    par10: list[float]
    new_sq: list[float]
    avg_par10_run: float
    avg_par10_instance: float
    per_instance: dict[str, dict[str, float]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class BatchResult:
    records: list[RunResult]
    stats: BatchStats
    errors: list[str]

    @property
    def ok(self) -> bool:
        return not self.errors


def summarize(records: Sequence[RunResult], cutoff: float) -> BatchStats:
    """Aggregate statistics; the input order does not matter."""
    records = sorted(records, key=lambda r: (r.instance, r.seed))
    n = len(records)
    pars = [par10(r, cutoff) for r in records]
    by_instance: dict[str, list[int]] = {}
    for i, r in enumerate(records):
        by_instance.setdefault(r.instance, []).append(i)
    per_instance = {}
    for name, idx in by_instance.items():
        runs = [records[i] for i in idx]
        per_instance[name] = {
            "runs": len(runs),
            "n_success": sum(r.success is True for r in runs),
            "t_avg": fmean(r.time_to_best for r in runs),
            "par10": fmean(pars[i] for i in idx),
            "best_weight": max(r.best_weight for r in runs),
        }
    n_success = sum(r.success is True for r in records)
    return BatchStats(
        runs=n,
        n_success=n_success,
        t_avg=fmean(r.time_to_best for r in records) if n else 0.0,
        success_rate=n_success / n if n else 0.0,
        par10=pars,
        new_sq=[new_sq(r.best_weight, r.time_to_best) for r in records],
        avg_par10_run=fmean(pars) if n else 0.0,
        avg_par10_instance=fmean(s["par10"] for s in per_instance.values()) if n else 0.0,
        per_instance=per_instance,
    )


# -- execution -----------------------------------------------------------------

@dataclass(frozen=True)
class _Task:
    name: str
    source: VertexWeightedGraph | str
    config: Configuration
    seed: int
    cutoff: float | None
    target: int | None
    clock: str
    max_steps: int | None
    explicit_weights: bool


_cache: dict[tuple[str, bool], VertexWeightedGraph] = {}


def _graph_of(task: _Task) -> VertexWeightedGraph:
    if isinstance(task.source, VertexWeightedGraph):
        return task.source
    key = (task.source, task.explicit_weights)
    if key not in _cache:
        _cache[key] = load_dimacs(task.source, explicit_weights=task.explicit_weights)
    return _cache[key]


def _execute(task: _Task) -> RunResult:
    result = solve(
        _graph_of(task),
        task.config,
        seed=task.seed,
        cutoff=task.cutoff,
        max_steps=task.max_steps,
        target=task.target,
        clock=task.clock,
    )
    result.instance = task.name
    return result


def run_batch(
    instances: Mapping[str, VertexWeightedGraph | str | os.PathLike] | Iterable[str | os.PathLike],
    config: Configuration,
    seeds: Iterable[int],
    cutoff: float | None,
    targets: Mapping[str, int] | None = None,
    *,
    jobs: int = 1,
    clock: str = "cpu",
    max_steps: int | None = None,
    explicit_weights: bool = True,
) -> BatchResult:
    """One run per (instance, seed).

    ``instances`` maps names to graphs or file paths; a plain iterable of
    paths uses each path as its name.  A unit that fails (unreadable file,
    parse error) is skipped and reported in ``errors``.  The statistics use
    ``cutoff`` for the PAR10 penalty.
    """
    check(config)
    if not isinstance(instances, Mapping):
        instances = {os.fspath(p): os.fspath(p) for p in instances}
    targets = targets or {}
    seeds = list(seeds)
    errors: list[str] = []
    tasks: list[_Task] = []
    for name, src in instances.items():
        if not isinstance(src, VertexWeightedGraph):
            src = os.fspath(src)
            try:
                graph = load_dimacs(src, explicit_weights=explicit_weights)
            except (OSError, ValueError) as exc:
                msg = f"{name}: {exc}"
                log.error("skipping instance %s", msg)
                errors.append(msg)
                continue
            if jobs <= 1:
                src = graph
        for seed in seeds:
            tasks.append(_Task(name, src, config, seed, cutoff, targets.get(name), clock, max_steps, explicit_weights))

    records: list[RunResult] = []
    if jobs <= 1 or len(tasks) <= 1:
        results = map(_execute_safe, tasks)
        for task, (res, err) in zip(tasks, results):
            _collect(task, res, err, records, errors)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for task, (res, err) in zip(tasks, pool.map(_execute_safe, tasks)):
                _collect(task, res, err, records, errors)
    records.sort(key=lambda r: (r.instance, r.seed))
    return BatchResult(records, summarize(records, cutoff or 0.0), errors)


def _execute_safe(task: _Task) -> tuple[RunResult | None, str | None]:
    try:
        return _execute(task), None
    except (OSError, ValueError, OverflowError) as exc:
        return None, f"{task.name} seed {task.seed}: {exc}"


def _collect(task, res, err, records, errors) -> None:
    if err is not None:
        log.error("run failed: %s", err)
        errors.append(err)
    else:
        records.append(res)


# -- record output -------------------------------------------------------------

def record_row(r: RunResult) -> dict:
    return {
        "instance": r.instance,
        "seed": r.seed,
        "best_weight": r.best_weight,
        "time_to_best": r.time_to_best,
        "elapsed": r.elapsed,
        "steps": r.steps,
        "restarts": r.restarts,
        "success": r.success,
    }


def records_to_csv(records: Iterable[RunResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        row = record_row(r)
        row["time_to_best"] = repr(r.time_to_best)
        row["elapsed"] = repr(r.elapsed)
        row["success"] = "" if r.success is None else str(r.success).lower()
        writer.writerow(row)
    return buf.getvalue()


def records_to_json(records: Iterable[RunResult], stats: BatchStats | None = None) -> str:
    doc: dict = {"records": [record_row(r) for r in records]}
    if stats is not None:
        doc["stats"] = stats.as_dict()
    return json.dumps(doc, indent=2)


def parse_csv_records(text: str) -> list[dict]:
    """Inverse of :func:`records_to_csv`, returning typed rows."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "instance": row["instance"],
            "seed": int(row["seed"]),
            "best_weight": int(row["best_weight"]),
            "time_to_best": float(row["time_to_best"]),
            "elapsed": float(row["elapsed"]),
            "steps": int(row["steps"]),
            "restarts": int(row["restarts"]),
            "success": None if row["success"] == "" else row["success"] == "true",
        })
    return rows


def write_records(path: str | os.PathLike, records: Sequence[RunResult], stats: BatchStats | None = None) -> list[str]:
    """Write ``<stem>.csv`` and ``<stem>.json`` next to ``path``; returns the paths written."""
    stem, ext = os.path.splitext(os.fspath(path))
    if ext not in (".csv", ".json"):
        stem = os.fspath(path)
    out = []
    for suffix, text in ((".csv", records_to_csv(records)), (".json", records_to_json(records, stats))):
        with open(stem + suffix, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.append(stem + suffix)
    return out
