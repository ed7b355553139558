"""Configurable stochastic local search for the maximum vertex weight clique problem."""

from .clique_state import CliqueState
from .config import Configuration, ConfigError, export_space, preset, validate
from .graph import DimacsError, VertexWeightedGraph, apply_default_weights, load_dimacs, parse_dimacs, to_dimacs
from .harness import BatchStats, new_sq, par10, run_batch
from .oracle import exact_oracle
from .prohibition import Mode, Prohibition
from .search import RunResult, solve
from .tuning import random_search_configure

__all__ = [
    "BatchStats", "CliqueState", "ConfigError", "Configuration", "DimacsError", "Mode",
    "Prohibition", "RunResult", "VertexWeightedGraph", "apply_default_weights", "exact_oracle",
    "export_space", "load_dimacs", "new_sq", "par10", "parse_dimacs", "preset",
    "random_search_configure", "run_batch", "solve", "to_dimacs", "validate",
]
