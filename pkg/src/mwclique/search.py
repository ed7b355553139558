"""The configurable local search: construction, random walk, intensification.

A run alternates an outer loop (build a maximal clique from scratch) with an
inner loop of single moves.  Each inner iteration either takes a random-walk
move with probability ``randomwalk_prob`` or an intensification move, and may
abandon the current trajectory with probability ``restart_prob`` when the
intensification move did not increase the clique weight.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .clique_state import CliqueState
from .config import Configuration, check
from .graph import VertexWeightedGraph
from .prohibition import Mode, Prohibition

CLOCKS = ("cpu", "wall", "steps")


@dataclass
class RunResult:
    best_weight: int
    best_clique: list[int]
    time_to_best: float
    elapsed: float
    steps: int
    restarts: int
    seed: int = 0
    instance: str = ""
    success: bool | None = None


def _clock(kind: str) -> Callable[[], float]:
    if kind == "cpu":
        return time.process_time
    if kind == "wall":
        return time.perf_counter
    raise ValueError(f"unknown clock {kind!r}")


@dataclass
class SearchContext:
    """Everything one run owns.  Not shared between runs."""

    graph: VertexWeightedGraph
    config: Configuration
    rng: random.Random
    clock: str = "cpu"
    state: CliqueState = field(init=False)
    prohibition: Prohibition = field(init=False)
    best_weight: int = field(init=False, default=0)
    best_clique: list[int] = field(init=False, default_factory=list)
    best_time: float = field(init=False, default=0.0)
    best_step: int = field(init=False, default=0)
    restarts: int = field(init=False, default=0)
    trace: list[tuple] | None = field(init=False, default=None)

    def __post_init__(self) -> None:
        self._steps_before = 0
        self._start = 0.0
        self._now = None if self.clock == "steps" else _clock(self.clock)
        self.reset()

    # -- bookkeeping -------------------------------------------------------

    @property
    def total_steps(self) -> int:
        return self._steps_before + self.state.step

    def elapsed(self) -> float:
        if self._now is None:
            return float(self.total_steps)
        return self._now() - self._start

    def start_clock(self) -> None:
        if self._now is not None:
            self._start = self._now()

    def reset(self) -> None:
        """Fresh empty clique, ages and prohibition state."""
        if hasattr(self, "state"):
            self._steps_before += self.state.step
        cfg = self.config
        self.state = CliqueState(self.graph)
        tenure = cfg.tabu_tenure if cfg.tabu_tenure is not None else 0
        self.prohibition = Prohibition(self.graph.n, Mode(cfg.tabu_type), tenure)

    def update_best(self) -> None:
        st = self.state
        if st.weight > self.best_weight:
            self.best_weight = st.weight
            self.best_clique = st.clique()
            self.best_time = self.elapsed()
            self.best_step = self.total_steps

    def _log(self, *move) -> None:
        if self.trace is not None:
            self.trace.append(move)

    # -- moves with prohibition bookkeeping -------------------------------

    def do_add(self, v: int) -> None:
        st = self.state
        st.add(v)
        self.prohibition.on_add(v, self.graph.neighbors[v], st.step)
        self._log("add", v)

    def do_drop(self, v: int) -> None:
        st = self.state
        st.drop(v)
        self.prohibition.on_drop(v, st.step)
        self._log("drop", v)

    def do_swap(self, u: int, v: int) -> None:
        st = self.state
        size = len(st.swap_set)
        st.swap(u, v)
        self.prohibition.on_swap(v, size, st.step, self.rng)
        self._log("swap", u, v)

    # -- components --------------------------------------------------------

    def construct_initial(self) -> None:
        """Reset and grow a maximal clique by the configured construction rule."""
        self.reset()
        st, rng, g = self.state, self.rng, self.graph
        if g.n == 0:
            return
        mode = self.config.init_construction
        if mode == 0:
            while st.add_set:
                st.add(st.add_set[rng.randrange(len(st.add_set))])
        else:
            key = g.weights if mode == 1 else [g.degree(v) for v in range(g.n)]
            st.add(rng.randrange(g.n))
            while st.add_set:
                best, best_key, ties = -1, -1, 0
                for v in st.add_set.items:
                    k = key[v]
                    if k > best_key:
                        best, best_key, ties = v, k, 1
                    elif k == best_key:
                        ties += 1
                        if rng.randrange(ties) == 0:
                            best = v
                st.add(best)
        self._log("construct", tuple(sorted(st.members.items)))
        self.update_best()

    def random_walk_step(self) -> None:
        st, rng = self.state, self.rng
        prob = rng.randrange(100)
        if prob < 33 and st.add_set:
            self.do_add(st.add_set[rng.randrange(len(st.add_set))])
        elif prob < 67 and st.swap_set:
            u = st.swap_set[rng.randrange(len(st.swap_set))]
            self.do_swap(u, st.partner[u])
        elif st.members:
            self.do_drop(st.members[rng.randrange(len(st.members))])
        else:
            return
        self.update_best()

    def _forbidden_test(self) -> Callable[[int], bool]:
        p = self.prohibition
        if p.mode is Mode.SCC:
            conf = p.conf_change
            return lambda v: not conf[v]
        until, step = p.tabu_until, self.state.step
        return lambda v: step < until[v]

    def _pick(self, candidates, score: Callable[[int], int], forbidden) -> int | None:
        """Highest-scoring allowed candidate, ties by the configured rule."""
        rng = self.rng
        by_age = self.config.breaking_ties == 1
        last = self.state.last_change
        best, best_score, ties = None, None, 0
        for v in candidates:
            if forbidden is not None and forbidden(v):
                continue
            s = score(v)
            if best is None or s > best_score:
                best, best_score, ties = v, s, 1
            elif s == best_score:
                if by_age:
                    if last[v] < last[best]:
                        best, ties = v, 1
                        continue
                    if last[v] > last[best]:
                        continue
                ties += 1
                if rng.randrange(ties) == 0:
                    best = v
        return best

    def select_add(self, forbidden) -> int | None:
        return self._pick(self.state.add_set.items, self.graph.weights.__getitem__, forbidden)

    def select_swap(self, forbidden) -> int | None:
        """Entering vertex of the best allowed swap pair (partner is implied)."""
        st, cfg = self.state, self.config
        w, partner = self.graph.weights, st.partner
        score = lambda u: w[u] - w[partner[u]]
        items = st.swap_set.items
        if not items:
            return None
        if cfg.perform_BMS:
            rng = self.rng
            size = len(items)
            seen: dict[int, None] = {}
            for _ in range(cfg.bms_num):
                seen[items[rng.randrange(size)]] = None
            return self._pick(seen, score, forbidden)
        return self._pick(items, score, forbidden)

    def select_drop(self) -> int:
        st, cfg, rng = self.state, self.config, self.rng
        members = st.members.items
        rule = cfg.drop_vertex
        if rule == 0 or (rule == 1 and rng.random() < cfg.randomdrop_prob):
            return members[rng.randrange(len(members))]
        w = self.graph.weights
        return self._pick(members, lambda v: -w[v], None)

    def intensification_step(self) -> None:
        st = self.state
        w = self.graph.weights
        forbidden = self._forbidden_test()
        v = self.select_add(forbidden)
        u = self.select_swap(forbidden)
        if u is not None:
            u_out = st.partner[u]
            sscore = w[u] - w[u_out]
        if v is not None:
            if u is None or w[v] > sscore:
                self.do_add(v)
            else:
                self.do_swap(u, u_out)
        elif st.members:
            if u is None or -min(w[x] for x in st.members.items) > sscore:
                self.do_drop(self.select_drop())
            else:
                self.do_swap(u, u_out)
        else:
            # empty clique with every vertex forbidden: take an unconstrained add
            self.do_add(st.add_set[self.rng.randrange(len(st.add_set))])
        self.update_best()

    # -- driver ------------------------------------------------------------

    def run(
        self,
        cutoff: float | None = None,
        *,
        max_steps: int | None = None,
        target: int | None = None,
        check_every: int = 16,
    ) -> RunResult:
        """Search until ``cutoff`` (clock units), ``max_steps`` moves, or ``target``."""
        if cutoff is None and max_steps is None and target is None:
            raise ValueError("need a cutoff, a step limit or a target")
        cfg = self.config
        rng = self.rng
        rw_prob = cfg.randomwalk_prob if cfg.perform_randomwalk else 0.0
        rs_prob = cfg.restart_prob if cfg.perform_restart else 0.0
        self.start_clock()
        steps_cutoff = self.clock == "steps"
        counter = 0

        def done() -> bool:
            if target is not None and self.best_weight >= target:
                return True
            if max_steps is not None and self.total_steps >= max_steps:
                return True
            if cutoff is not None and self.elapsed() >= cutoff:
                return True
            return False

        def done_fast() -> bool:
            nonlocal counter
            if target is not None and self.best_weight >= target:
                return True
            if max_steps is not None and self.total_steps >= max_steps:
                return True
            if cutoff is not None:
                if steps_cutoff:
                    return self.total_steps >= cutoff
                counter += 1
                if counter >= check_every:
                    counter = 0
                    return self.elapsed() >= cutoff
            return False

        if self.graph.n == 0:
            return self._result()
        while not done():
            self.construct_initial()
            while not done_fast():
                if rw_prob > 0.0 and rng.random() < rw_prob:
                    self.random_walk_step()
                    continue
                before = self.state.weight
                self.intensification_step()
                if self.state.weight <= before and rs_prob > 0.0 and rng.random() < rs_prob:
                    self.restarts += 1
                    self._log("restart")
                    break
        return self._result()

    def _result(self) -> RunResult:
        return RunResult(
            best_weight=self.best_weight,
            best_clique=sorted(self.best_clique),
            time_to_best=self.best_time,
            elapsed=self.elapsed(),
            steps=self.total_steps,
            restarts=self.restarts,
        )


def solve(
    graph: VertexWeightedGraph,
    config: Configuration,
    seed: int = 1,
    cutoff: float | None = 10.0,
    *,
    max_steps: int | None = None,
    target: int | None = None,
    clock: str = "cpu",
    trace: list | None = None,
) -> RunResult:
    """Run the local search once.

    ``cutoff`` is in seconds of the chosen ``clock`` ("cpu", "wall"), or in moves
    when ``clock="steps"``.  With ``target`` the run stops as soon as a clique
    of at least that weight is found.  Passing a list as ``trace`` records
    every move.
    """
    check(config)
    if clock not in CLOCKS:
        raise ValueError(f"unknown clock {clock!r}")
    if cutoff is not None and cutoff <= 0:
        raise ValueError("cutoff must be positive")
    ctx = SearchContext(graph, config, random.Random(seed), clock=clock)
    ctx.trace = trace
    result = ctx.run(cutoff, max_steps=max_steps, target=target)
    result.seed = seed
    if target is not None:
        result.success = result.best_weight >= target
    return result
