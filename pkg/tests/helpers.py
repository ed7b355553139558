"""Graph builders and from-scratch recomputation used as test oracles."""

from __future__ import annotations

import random

from mwclique.graph import VertexWeightedGraph


def random_graph(n: int, p: float, seed: int, weights=None) -> VertexWeightedGraph:
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return VertexWeightedGraph.from_edges(n, edges, weights=weights)


def complete_graph(n: int, weights=None) -> VertexWeightedGraph:
    return VertexWeightedGraph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)], weights=weights
    )


def from_one_based(n: int, edges, weights=None) -> VertexWeightedGraph:
    return VertexWeightedGraph.from_edges(n, [(u - 1, v - 1) for u, v in edges], weights=weights)


def cfat(n: int, c: int) -> VertexWeightedGraph:
    """c-fat graph: clusters assigned round-robin, edges within and between cyclically adjacent clusters."""
    import math

    k = int(n / (c * math.log(n)))
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (i % k - j % k) % k in (0, 1, k - 1)
    ]
    return VertexWeightedGraph.from_edges(n, edges)


def brute_sets(graph: VertexWeightedGraph, clique):
    """(V_add, V_swap as {u: partner}, V_drop) recomputed in O(n * |C|)."""
    members = set(clique)
    add, swap = set(), {}
    for u in range(graph.n):
        if u in members:
            continue
        missing = [x for x in members if not graph.adjacent(u, x)]
        if not missing:
            add.add(u)
        elif len(missing) == 1:
            swap[u] = missing[0]
    return add, swap, set(members)


class RecordingRandom:
    """Wraps ``random.Random`` and keeps every ``randrange`` result."""

    def __init__(self, seed):
        self._rng = random.Random(seed)
        self.draws = []

    def randrange(self, *args):
        x = self._rng.randrange(*args)
        self.draws.append(x)
        return x


def prohibition_trace(graph, mode, tenure, moves, seed):
    """Drive ``moves`` random legal moves through a clique state and prohibition.

    Returns ``(events, checks)``: the event log and, after each move, the
    reported forbidden flag of every vertex outside the clique.
    """
    from mwclique.clique_state import CliqueState
    from mwclique.prohibition import Prohibition

    pick = random.Random(seed)
    rec = RecordingRandom(seed + 1)
    s = CliqueState(graph)
    p = Prohibition(graph.n, mode, tenure)
    events, checks = [], []
    for _ in range(moves):
        kinds = [k for k, ok in (("add", s.add_set), ("swap", s.swap_set), ("drop", s.members)) if len(ok)]
        kind = pick.choice(kinds)
        if kind == "add":
            v = s.add_set[pick.randrange(len(s.add_set))]
            s.add(v)
            p.on_add(v, graph.neighbors[v], s.step)
            events.append(("add", s.step, v))
        elif kind == "drop":
            v = s.members[pick.randrange(len(s.members))]
            s.drop(v)
            p.on_drop(v, s.step)
            events.append(("drop", s.step, v))
        else:
            u = s.swap_set[pick.randrange(len(s.swap_set))]
            v = s.partner[u]
            size = len(s.swap_set)
            s.swap(u, v)
            before = len(rec.draws)
            p.on_swap(v, size, s.step, rec)
            draw = rec.draws[-1] if len(rec.draws) > before else 0
            events.append(("swap", s.step, u, v, size, draw))
        outside = [v for v in range(graph.n) if not s.in_clique[v]]
        checks.append((s.step, {v: p.is_forbidden(v, s.step) for v in outside}))
    return events, checks


def expected_forbidden(graph, mode, tenure, events, step, v):
    """Literal reading of the prohibition rules applied to an event log."""
    removed_at, deadline, lifted = None, 0, False
    for ev in events:
        if ev[1] > step:
            break
        kind = ev[0]
        entered = ev[2]
        left = ev[2] if kind == "drop" else (ev[3] if kind == "swap" else None)
        if left == v:
            removed_at = ev[1]
            lifted = False
            deadline = ev[1] + tenure + (ev[5] if kind == "swap" else 0)
        # only a plain add lifts neighbours; the entering vertex of a swap does not
        if kind == "add" and graph.adjacent(entered, v):
            if removed_at is not None and ev[1] >= removed_at:
                lifted = True
    if mode == 0:
        return removed_at is not None and not lifted
    if mode == 1:
        return step < deadline
    return step < deadline and not lifted


def replay_forbidden(graph, mode, tenure, events):
    """Streaming form of :func:`expected_forbidden`: the forbidden set after each event."""
    removed = {}  # vertex -> (deadline, lifted)
    for ev in events:
        kind, step = ev[0], ev[1]
        if kind == "add":
            for u in graph.neighbors[ev[2]]:
                if u in removed:
                    removed[u] = (removed[u][0], True)
        elif kind == "drop":
            removed[ev[2]] = (step + tenure, False)
        else:
            removed[ev[3]] = (step + tenure + ev[5], False)
        if mode == 0:
            yield {v for v, (_, lifted) in removed.items() if not lifted}
        elif mode == 1:
            yield {v for v, (deadline, _) in removed.items() if step < deadline}
        else:
            yield {v for v, (deadline, lifted) in removed.items() if step < deadline and not lifted}
