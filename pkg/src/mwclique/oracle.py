"""Exact maximum weight clique for small graphs, used to check the local search."""

from __future__ import annotations

from .graph import VertexWeightedGraph

ENUMERATE_LIMIT = 24
BNB_LIMIT = 80


class OracleTooLarge(ValueError):
    pass


def exact_oracle(graph: VertexWeightedGraph, method: str = "bnb") -> tuple[int, list[int]]:
    """Return ``(optimum weight, one optimal clique)``.

    ``method="enumerate"`` checks every vertex subset (n <= 24);
    ``method="bnb"`` is a depth-first branch and bound whose bound is the
    current weight plus the total weight of the remaining candidates.
    """
    if method == "enumerate":
        return _enumerate(graph)
    if method == "bnb":
        return _branch_and_bound(graph)
    raise ValueError(f"unknown method {method!r}")


def _bitsets(graph: VertexWeightedGraph) -> list[int]:
    return [sum(1 << u for u in graph.neighbors[v]) for v in range(graph.n)]


def _enumerate(graph: VertexWeightedGraph) -> tuple[int, list[int]]:
    n = graph.n
    if n > ENUMERATE_LIMIT:
        raise OracleTooLarge(f"subset enumeration supports n <= {ENUMERATE_LIMIT}, got {n}")
    adj = _bitsets(graph)
    w = graph.weights
    size = 1 << n
    # weight[mask] of clique subsets, -1 for non-cliques
    weight = [0] * size
    best, best_mask = 0, 0
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if weight[rest] < 0 or rest & ~adj[v]:
            weight[mask] = -1
            continue
        weight[mask] = weight[rest] + w[v]
        if weight[mask] > best:
            best, best_mask = weight[mask], mask
    return best, [v for v in range(n) if best_mask >> v & 1]


def _branch_and_bound(graph: VertexWeightedGraph) -> tuple[int, list[int]]:
    n = graph.n
    if n > BNB_LIMIT:
        raise OracleTooLarge(f"branch and bound supports n <= {BNB_LIMIT}, got {n}")
    w = graph.weights
    adj = graph.adjacency
    best_w = 0
    best: list[int] = []

    def expand(cand: list[int], cur: list[int], cur_w: int) -> None:
        nonlocal best_w, best
        if cur_w > best_w:
            best_w, best = cur_w, list(cur)
        remaining = sum(w[v] for v in cand)
        for i, v in enumerate(cand):
            if cur_w + remaining <= best_w:
                return
            remaining -= w[v]
            row = adj[v]
            cur.append(v)
            expand([u for u in cand[i + 1:] if u in row], cur, cur_w + w[v])
            cur.pop()

    order = sorted(range(n), key=lambda v: -w[v])
    expand(order, [], 0)
    return best_w, sorted(best)
