"""Current clique with incrementally maintained add/swap/drop candidate sets.

For a vertex ``u`` outside the clique ``C`` we keep ``connect[u] = |N(u) & C|``.
Then

* ``u`` is an add candidate  iff ``connect[u] == |C|``
* ``u`` is a swap candidate  iff ``connect[u] == |C| - 1``; its partner (the one
  member it is not adjacent to) is ``partner[u]``
* the drop candidates are the members of ``C``.

Every move costs O(deg + |V_add| + |V_swap|) plus a scan over the
non-neighbours of the leaving vertex (or a neighbourhood fallback on sparse
graphs) to pick up vertices that become swap candidates.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .graph import VertexWeightedGraph


class IndexedSet:
    """Subset of ``range(n)`` with O(1) insert, remove, membership and indexing."""

    __slots__ = ("items", "pos")

    def __init__(self, n: int, items: Iterable[int] = ()):
        self.items: list[int] = []
        self.pos = [-1] * n
        for x in items:
            self.add(x)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[int]:
        return iter(self.items)

    def __contains__(self, x: int) -> bool:
        return self.pos[x] >= 0

    def __getitem__(self, i: int) -> int:
        return self.items[i]

    def add(self, x: int) -> None:
        if self.pos[x] < 0:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def remove(self, x: int) -> None:
        i = self.pos[x]
        last = self.items.pop()
        if last != x:
            self.items[i] = last
            self.pos[last] = i
        self.pos[x] = -1

    def replace(self, items: list[int]) -> None:
        """Reset the contents to ``items`` (which must be distinct)."""
        pos = self.pos
        for x in self.items:
            pos[x] = -1
        for i, x in enumerate(items):
            pos[x] = i
        self.items = items


class CliqueState:
    """Clique ``C`` plus ``V_add``, ``V_swap`` (implicit, via partners) and ages.

    ``step`` counts moves; a swap is a single move.  Ages are stored as the
    step of each vertex's last membership change, so ``age(v) = step - last``.
    Vertices that never moved count as changed at step 0.
    """

    def __init__(self, graph: VertexWeightedGraph):
        n = graph.n
        self.graph = graph
        self.in_clique = bytearray(n)
        self.members = IndexedSet(n)
        self.weight = 0
        self.connect = np.zeros(n, dtype=np.intp)
        self.partner = [-1] * n
        self.add_set = IndexedSet(n, range(n))
        self.swap_set = IndexedSet(n)
        self.last_change = [0] * n
        self.step = 0

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.members)

    def clique(self) -> list[int]:
        return list(self.members.items)

    def swap_pairs(self) -> list[tuple[int, int]]:
        return [(u, self.partner[u]) for u in self.swap_set.items]

    def age(self, v: int) -> int:
        return self.step - self.last_change[v]

    def ascore(self, v: int) -> int:
        return self.graph.weights[v]

    def sscore(self, u: int, v: int | None = None) -> int:
        """Weight change of swapping ``u`` in for its partner ``v``."""
        if v is None:
            v = self.partner[u]
        w = self.graph.weights
        return w[u] - w[v]

    def dscore(self, v: int) -> int:
        return -self.graph.weights[v]

    # -- moves -------------------------------------------------------------

    def add(self, v: int) -> None:
        assert v in self.add_set, f"vertex {v} is not an add candidate"
        g = self.graph
        row = g.adjacency[v]
        self.add_set.remove(v)
        # swap candidates not adjacent to v now miss two members
        keep = [u for u in self.swap_set.items if u in row]
        # add candidates not adjacent to v become swap candidates with partner v
        stay = []
        partner = self.partner
        for u in self.add_set.items:
            if u in row:
                stay.append(u)
            else:
                partner[u] = v
                keep.append(u)
        self.add_set.replace(stay)
        self.swap_set.replace(keep)

        self.connect[g.neighbor_arrays[v]] += 1
        self.in_clique[v] = 1
        self.members.add(v)
        self.weight += g.weights[v]
        self._touch(v)

    def drop(self, v: int) -> None:
        assert self.in_clique[v], f"vertex {v} is not in the clique"
        g = self.graph
        self.members.remove(v)
        self.in_clique[v] = 0
        self.weight -= g.weights[v]
        connect = self.connect
        connect[g.neighbor_arrays[v]] -= 1
        k = len(self.members)

        partner = self.partner
        add_items = self.add_set.items
        keep = []
        for u in self.swap_set.items:
            if partner[u] == v:
                partner[u] = -1
                add_items.append(u)
            else:
                keep.append(u)
        add_items.append(v)
        self.add_set.replace(add_items)

        if k >= 1:
            pool = self._removal_pool(v, None)
            swap_pos = self.swap_set.pos
            for u in pool[connect[pool] == k - 1].tolist():
                if (
                    not self.in_clique[u]
                    and u != v
                    and u not in g.adjacency[v]
                    and swap_pos[u] < 0
                ):
                    partner[u] = self._missing_member(u)
                    keep.append(u)
                    swap_pos[u] = 0  # placeholder so duplicates in the pool are skipped
        self.swap_set.replace(keep)
        self._touch(v)

    def swap(self, u: int, v: int) -> None:
        """Move ``u`` in and ``v`` out, where ``(u, v)`` is a swap pair."""
        assert u in self.swap_set and self.partner[u] == v, f"({u}, {v}) is not a swap pair"
        g = self.graph
        row_u = g.adjacency[u]
        partner = self.partner
        k = len(self.members)

        add_new = []
        swap_new = []
        for x in self.add_set.items:
            if x in row_u:
                add_new.append(x)
            else:
                partner[x] = u
                swap_new.append(x)
        for x in self.swap_set.items:
            if x == u:
                continue
            if partner[x] == v:
                if x in row_u:
                    partner[x] = -1
                    add_new.append(x)
                else:
                    partner[x] = u
                    swap_new.append(x)
            elif x in row_u:
                swap_new.append(x)
        partner[u] = -1
        partner[v] = u
        swap_new.append(v)

        connect = self.connect
        connect[g.neighbor_arrays[v]] -= 1
        connect[g.neighbor_arrays[u]] += 1
        self.members.remove(v)
        self.in_clique[v] = 0
        self.members.add(u)
        self.in_clique[u] = 1
        self.weight += g.weights[u] - g.weights[v]

        self.add_set.replace(add_new)
        self.swap_set.replace(swap_new)
        swap_pos = self.swap_set.pos
        row_v = g.adjacency[v]
        pool = self._removal_pool(v, u)
        for x in pool[connect[pool] == k - 1].tolist():
            if (
                not self.in_clique[x]
                and x != v
                and x not in row_v
                and swap_pos[x] < 0
            ):
                partner[x] = self._missing_member(x)
                self.swap_set.add(x)

        self.step += 1
        self.last_change[u] = self.step
        self.last_change[v] = self.step

    # -- helpers -----------------------------------------------------------

    def _touch(self, v: int) -> None:
        self.step += 1
        self.last_change[v] = self.step

    def _missing_member(self, u: int) -> int:
        row = self.graph.adjacency[u]
        for x in self.members.items:
            if x not in row:
                return x
        raise AssertionError(f"vertex {u} is adjacent to every clique member")

    def _removal_pool(self, v: int, entered: int | None) -> np.ndarray:
        """Vertices that may have become swap candidates after ``v`` left.

        Such a vertex was non-adjacent to ``v`` and to exactly one remaining
        member, so it is adjacent to at least one of any two remaining members,
        and after a swap it must be adjacent to the entering vertex.
        """
        g = self.graph
        nonadj = g.nonneighbor_arrays
        nbrs = g.neighbor_arrays
        if entered is not None:
            pool = nbrs[entered]
            if nonadj is not None and len(nonadj[v]) < len(pool):
                return nonadj[v]
            return pool
        members = self.members.items
        if len(members) >= 2:
            a, b = nbrs[members[0]], nbrs[members[1]]
            if nonadj is not None and len(nonadj[v]) < len(a) + len(b):
                return nonadj[v]
            return np.concatenate((a, b))
        if nonadj is not None:
            return nonadj[v]
        return np.arange(g.n)
