"""Prohibition mechanisms that stop recently removed vertices from re-entering.

Three interchangeable modes share one interface:

``SCC``
    strong configuration checking: a removed vertex stays forbidden until one
    of its neighbours is added.
``TABU``
    a vertex removed by a drop is forbidden for the next ``tenure`` moves; one
    removed by a swap for ``tenure + random(|V_swap|)`` moves.
``TABU_CC``
    the tabu rule, except that adding a vertex lifts the prohibition of all its
    neighbours.

Only entering the clique is ever restricted; members are always free to leave.
"""

from __future__ import annotations

import enum
import random
from typing import Iterable


class Mode(enum.IntEnum):
    SCC = 0
    TABU = 1
    TABU_CC = 2


class Prohibition:
    """Per-vertex forbidden status.

    ``step`` arguments are the clique state's move counter: the value *after*
    the move that triggered the update, and the current value when querying.
    A vertex with ``tabu_until = s + t`` is therefore forbidden for exactly the
    next ``t`` moves.
    """

    def __init__(self, n: int, mode: Mode | int, tenure: int = 7):
        self.mode = Mode(mode)
        self.tenure = tenure
        self.tabu_until = [0] * n
        self.conf_change = bytearray(b"\x01") * n

    def is_forbidden(self, v: int, step: int) -> bool:
        if self.mode is Mode.SCC:
            return not self.conf_change[v]
        return step < self.tabu_until[v]

    def on_add(self, v: int, neighbors: Iterable[int], step: int) -> None:
        if self.mode is Mode.SCC:
            conf = self.conf_change
            for u in neighbors:
                conf[u] = 1
        elif self.mode is Mode.TABU_CC:
            until = self.tabu_until
            for u in neighbors:
                until[u] = step

    def on_drop(self, v: int, step: int) -> None:
        if self.mode is Mode.SCC:
            self.conf_change[v] = 0
        else:
            self.tabu_until[v] = step + self.tenure

    def on_swap(self, v_out: int, swap_set_size: int, step: int, rng: random.Random) -> None:
        """``swap_set_size`` is ``|V_swap|`` measured before the swap."""
        if self.mode is Mode.SCC:
            self.conf_change[v_out] = 0
        else:
            extra = rng.randrange(swap_set_size) if swap_set_size > 0 else 0
            self.tabu_until[v_out] = step + extra + self.tenure
