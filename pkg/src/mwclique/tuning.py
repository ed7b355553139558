"""Random-search configurator over the exported parameter space."""

from __future__ import annotations

import random
from statistics import fmean
from typing import Sequence

from .config import SPACE, Configuration, ParameterSpace, sample_configuration
from .graph import VertexWeightedGraph
from .harness import new_sq
from .search import solve


def evaluate(
    config: Configuration,
    training: Sequence[VertexWeightedGraph],
    cutoff: float,
    *,
    seeds: Sequence[int] = (1,),
    clock: str = "cpu",
) -> float:
    """Mean NewSQ of ``config`` over every (instance, seed) pair."""
    scores = []
    for graph in training:
        for seed in seeds:
            r = solve(graph, config, seed=seed, cutoff=cutoff, clock=clock)
            scores.append(new_sq(r.best_weight, r.time_to_best))
    return fmean(scores)


def random_search_configure(
    space: ParameterSpace,
    training: Sequence[VertexWeightedGraph],
    budget: int,
    cutoff: float,
    seed: int = 0,
    *,
    run_seeds: Sequence[int] = (1,),
    clock: str = "cpu",
    history: list[tuple[Configuration, float]] | None = None,
) -> Configuration:
    """Sample ``budget`` configurations and return the one with the lowest mean NewSQ.

    Ties go to the earlier sample.  Pass a list as ``history`` to receive every
    ``(configuration, score)`` pair in sampling order.
    """
    if not training:
        raise ValueError("training set is empty")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = random.Random(seed)
    best: Configuration | None = None
    best_score = float("inf")
    for _ in range(budget):
        config = sample_configuration(rng, space)
        score = evaluate(config, training, cutoff, seeds=run_seeds, clock=clock)
        if history is not None:
            history.append((config, score))
        if best is None or score < best_score:
            best, best_score = config, score
    return best


__all__ = ["SPACE", "evaluate", "random_search_configure"]
