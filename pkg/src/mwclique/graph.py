"""Vertex-weighted undirected graphs and the DIMACS ``.clq`` reader/writer.

Vertices are ``0..n-1`` internally and ``1..n`` in files.  Unweighted
instances get the usual benchmark weights ``(i mod 200) + 1`` where ``i`` is
the 1-based vertex id.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

INT64_MAX = 2**63 - 1

# non-neighbour lists are kept only while their total size stays below this
_NONNEIGHBOR_BUDGET = 4_000_000


class DimacsError(ValueError):
    """Malformed DIMACS input.  ``line`` is the 1-based line number, if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)


def default_weight(vertex_id: int) -> int:
    """Benchmark weight of the 1-based vertex ``vertex_id``."""
    return (vertex_id % 200) + 1


@dataclass(frozen=True, eq=False)
class VertexWeightedGraph:
    n: int
    m: int
    neighbors: tuple[tuple[int, ...], ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False)
    weights: tuple[int, ...] = field(repr=False)
    explicit: frozenset[int] = field(default=frozenset(), repr=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Sequence[int] | None = None,
        explicit: Iterable[int] | None = None,
    ) -> "VertexWeightedGraph":
        """Build from 0-based edges.  Self-loops and duplicates are dropped.

        Without ``weights`` every vertex gets the default rule.  ``explicit``
        marks which vertices carry a weight of their own; when omitted and
        ``weights`` is given, all vertices count as explicit.
        """
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            adj[u].add(v)
            adj[v].add(u)
        if weights is None:
            weights = [default_weight(i + 1) for i in range(n)]
            explicit_set: frozenset[int] = frozenset()
        else:
            if len(weights) != n:
                raise ValueError(f"expected {n} weights, got {len(weights)}")
            explicit_set = frozenset(range(n)) if explicit is None else frozenset(explicit)
        weights = tuple(int(w) for w in weights)
        for v, w in enumerate(weights):
            if w < 1:
                raise ValueError(f"vertex {v + 1} has non-positive weight {w}")
        if sum(weights) > INT64_MAX:
            raise OverflowError("total vertex weight exceeds the 64-bit range")
        m = sum(len(a) for a in adj) // 2
        return cls(
            n=n,
            m=m,
            neighbors=tuple(tuple(sorted(a)) for a in adj),
            adjacency=tuple(frozenset(a) for a in adj),
            weights=weights,
            explicit=explicit_set,
        )

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors[u] if u < v]

    @property
    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2 * self.m / (self.n * (self.n - 1))

    @cached_property
    def neighbor_arrays(self) -> list[np.ndarray]:
        return [np.array(nb, dtype=np.intp) for nb in self.neighbors]

    @cached_property
    def nonneighbor_arrays(self) -> list[np.ndarray] | None:
        nonadj = self.nonneighbors
        if nonadj is None:
            return None
        return [np.array(nb, dtype=np.intp) for nb in nonadj]

    @cached_property
    def nonneighbors(self) -> tuple[tuple[int, ...], ...] | None:
        """Complement adjacency lists, or ``None`` when they would be too large."""
        total = self.n * (self.n - 1) - 2 * self.m
        if total > _NONNEIGHBOR_BUDGET:
            return None
        out = []
        for v in range(self.n):
            adj = self.adjacency[v]
            out.append(tuple(u for u in range(self.n) if u != v and u not in adj))
        return tuple(out)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        for i, u in enumerate(vs):
            adj = self.adjacency[u]
            for v in vs[i + 1:]:
                if v not in adj:
                    return False
        return True

    def clique_weight(self, vertices: Iterable[int]) -> int:
        total = sum(self.weights[v] for v in vertices)
        if total > INT64_MAX:
            raise OverflowError("clique weight exceeds the 64-bit range")
        return total

    def same_as(self, other: "VertexWeightedGraph") -> bool:
        return (
            self.n == other.n
            and self.neighbors == other.neighbors
            and self.weights == other.weights
        )


def apply_default_weights(graph: VertexWeightedGraph) -> VertexWeightedGraph:
    """Give every vertex without an explicit weight the ``(i mod 200) + 1`` weight."""
    weights = tuple(
        graph.weights[v] if v in graph.explicit else default_weight(v + 1)
        for v in range(graph.n)
    )
    if weights == graph.weights:
        return graph
    return VertexWeightedGraph(
        n=graph.n,
        m=graph.m,
        neighbors=graph.neighbors,
        adjacency=graph.adjacency,
        weights=weights,
        explicit=graph.explicit,
    )


def parse_dimacs(text: bytes | str, *, explicit_weights: bool = True) -> VertexWeightedGraph:
    """Parse DIMACS ASCII clique format.

    Recognised lines: ``c`` comments, one ``p edge <n> <m>`` header (``p col``
    is accepted too), ``e <u> <v>`` edges and ``v <u> <w>`` vertex weights.
    With ``explicit_weights=False`` the ``v`` lines are validated but ignored
    and every vertex gets the default weight.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    n: int | None = None
    edges: list[tuple[int, int]] = []
    given: dict[int, int] = {}

    def vertex(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise DimacsError(f"bad vertex id {tok!r}", lineno) from None
        if n is None:
            raise DimacsError("data line before header", lineno)
        if not 1 <= v <= n:
            raise DimacsError("vertex id out of range", lineno)
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        kind = parts[0]
        if kind == "p":
            if n is not None:
                raise DimacsError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError("malformed header", lineno)
            try:
                n, _declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("malformed header", lineno) from None
            if n < 0 or _declared_m < 0:
                raise DimacsError("malformed header", lineno)
        elif kind == "e":
            if n is None:
                raise DimacsError("edge line before header", lineno)
            if len(parts) < 3:
                raise DimacsError("malformed edge line", lineno)
            edges.append((vertex(parts[1], lineno), vertex(parts[2], lineno)))
        elif kind == "v":
            if n is None:
                raise DimacsError("weight line before header", lineno)
            if len(parts) < 3:
                raise DimacsError("malformed weight line", lineno)
            v = vertex(parts[1], lineno)
            try:
                w = int(parts[2])
            except ValueError:
                raise DimacsError(f"bad weight {parts[2]!r}", lineno) from None
            if w < 1:
                raise DimacsError("non-positive weight", lineno)
            if w > INT64_MAX:
                raise DimacsError("weight exceeds the 64-bit range", lineno)
            given[v] = w
        else:
            raise DimacsError(f"unknown line type {kind!r}", lineno)

    if n is None:
        raise DimacsError("missing header")
    if not explicit_weights:
        given = {}
    weights = [given.get(v, default_weight(v + 1)) for v in range(n)]
    return VertexWeightedGraph.from_edges(n, edges, weights=weights, explicit=given.keys())


def load_dimacs(path: str | os.PathLike, *, explicit_weights: bool = True) -> VertexWeightedGraph:
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read(), explicit_weights=explicit_weights)


def to_dimacs(graph: VertexWeightedGraph, comment: str | None = None) -> str:
    """Serialize with ``v`` lines for every weight that differs from the default rule."""
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {graph.n} {graph.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    for v, w in enumerate(graph.weights):
        if w != default_weight(v + 1):
            lines.append(f"v {v + 1} {w}")
    return "\n".join(lines) + "\n"
