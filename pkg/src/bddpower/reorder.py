"""Variable-ordering strategies.

``info`` is the entropy-greedy heuristic: level by level, place the unplaced
variable that leaves the least total conditional entropy of the outputs
given everything placed so far.  ``sift``, ``window`` and ``exhaustive`` are
the node-count baselines it is compared against.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .bdd import BddError, BddManager, Node, SizeLimitError
from .information import binary_entropy
from .power import PowerConfig, total_power
from .probability import InputDistribution, UNIFORM, propagate

__all__ = [
    "LevelChoice",
    "ReorderOutcome",
    "info_r_order",
    "sift",
    "window_permute",
    "exhaustive_best",
    "reorder",
    "STRATEGIES",
    "MAX_EXHAUSTIVE_VARS",
]

MAX_EXHAUSTIVE_VARS = 10
# scores closer than this are ties, resolved by the lower variable index
TIE_TOL = 1e-12


@dataclass
class LevelChoice:
    chosen: str
    score: float
    scores: dict[str, float]


@dataclass
class ReorderOutcome:
    method: str
    order: list[str]
    node_count_before: int
    node_count_after: int
    per_level_choice: list[LevelChoice] = field(default_factory=list)
    metric: str = "node-count"
    score_table: list[tuple[tuple[str, ...], float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "order": list(self.order),
            "node_count_before": self.node_count_before,
            "node_count_after": self.node_count_after,
            "metric": self.metric,
            "per_level_choice": [
                {"chosen": c.chosen, "score": c.score, "scores": dict(c.scores)}
                for c in self.per_level_choice
            ],
            "score_table": [
                {"order": list(o), "score": s} for o, s in self.score_table
            ],
        }


def _manager_of(fs: Sequence[Node]) -> BddManager:
    if not fs:
        raise BddError("need at least one function")
    manager = fs[0].manager
    for f in fs:
        manager._check(f)
    return manager


def info_r_order(
    fs: Sequence[Node], dist: InputDistribution | None = None, apply: bool = True
) -> ReorderOutcome:
    """Entropy-greedy order for the outputs ``fs``.

    At each level every unplaced ``x`` is scored by
    ``sum_j H(f_j | S + {x})`` with ``S`` the variables already placed; the
    minimum wins, lower variable index on ties.  The order is computed from
    the functions alone and applied to the manager once at the end.
    """
    fs = list(fs)
    manager = _manager_of(fs)
    probs = (UNIFORM if dist is None else dist).resolve(manager)
    before = manager.node_count(fs)
    h_cache: dict[int, float] = {}

    def h(g: Node) -> float:
        if g.var is None:
            return 0.0
        val = h_cache.get(g.uid)
        if val is None:
            val = h_cache[g.uid] = binary_entropy(propagate(g, probs)[g.uid])
        return val

    # per output: {uid: (cofactor under the placed variables, its weight)}
    parts = [{f.uid: (f, 1.0)} for f in fs]
    unplaced = list(range(manager.nvars))
    choices = []
    order = []
    while unplaced:
        scores = {}
        for x in unplaced:
            p1 = probs[x]
            total = 0.0
            for part in parts:
                for g, w in part.values():
                    if g.var is None:
                        continue
                    total += w * (
                        (1.0 - p1) * h(manager.cofactor(g, x, 0))
                        + p1 * h(manager.cofactor(g, x, 1))
                    )
            scores[x] = total
        best = unplaced[0]
        for x in unplaced[1:]:
            if scores[x] < scores[best] - TIE_TOL:
                best = x
        choices.append(
            LevelChoice(
                manager.var_name(best),
                scores[best],
                {manager.var_name(x): s for x, s in scores.items()},
            )
        )
        order.append(best)
        unplaced.remove(best)
        p1 = probs[best]
        refined = []
        for part in parts:
            new: dict[int, tuple[Node, float]] = {}
            for g, w in part.values():
                for val, p_val in ((0, 1.0 - p1), (1, p1)):
                    if p_val == 0:
                        continue
                    c = manager.cofactor(g, best, val)
                    prev = new.get(c.uid)
                    new[c.uid] = (c, (prev[1] if prev else 0.0) + w * p_val)
            refined.append(new)
        parts = refined
    if apply:
        manager.reorder_to(order)
    return ReorderOutcome(
        "info",
        [manager.var_name(v) for v in order],
        before,
        manager.node_count(fs),
        choices,
    )


def sift(manager: BddManager, fs: Sequence[Node]) -> ReorderOutcome:
    """Rudell sifting on the shared node count of ``fs``.

    Variables are taken largest level first; each is moved through every
    level by adjacent swaps and parked where the count was smallest (its
    original position wins ties).
    """
    fs = list(fs)
    for f in fs:
        manager._check(f)
    before = manager.node_count(fs)
    n = manager.nvars
    sizes = manager.level_sizes(fs)
    by_size = sorted(range(n), key=lambda v: (-sizes[manager.level_of(v)], v))
    for var in by_size:
        level = manager.level_of(var)
        best_count, best_level = manager.node_count(fs), level
        # sift toward the nearer end first
        if level < n - 1 - level:
            path = list(range(level - 1, -1, -1)) + list(range(0, n - 1))
        else:
            path = list(range(level, n - 1)) + list(range(n - 2, -1, -1))
        for k in path:
            manager.swap_adjacent_levels(k)
            count = manager.node_count(fs)
            if count < best_count:
                best_count, best_level = count, manager.level_of(var)
        _move_var(manager, var, best_level)
    return ReorderOutcome("sift", manager.order_names, before, manager.node_count(fs))


def _move_var(manager: BddManager, var: int, target: int) -> None:
    level = manager.level_of(var)
    while level < target:
        manager.swap_adjacent_levels(level)
        level += 1
    while level > target:
        manager.swap_adjacent_levels(level - 1)
        level -= 1


def window_permute(
    manager: BddManager, fs: Sequence[Node], window_size: int = 3
) -> ReorderOutcome:
    """Try every permutation of each window of adjacent levels.

    Passes repeat until one makes no improvement.
    """
    if window_size not in (2, 3, 4):
        raise ValueError("window_size must be 2, 3 or 4")
    fs = list(fs)
    for f in fs:
        manager._check(f)
    before = manager.node_count(fs)
    n = manager.nvars
    w = min(window_size, n)
    improved = w > 1
    while improved:
        improved = False
        for start in range(n - w + 1):
            base = manager.order
            window = base[start : start + w]
            best_count, best_perm = manager.node_count(fs), tuple(window)
            for perm in itertools.permutations(window):
                manager.reorder_to(base[:start] + list(perm) + base[start + w :])
                count = manager.node_count(fs)
                if count < best_count:
                    best_count, best_perm = count, perm
            manager.reorder_to(base[:start] + list(best_perm) + base[start + w :])
            if best_perm != tuple(window):
                improved = True
    return ReorderOutcome("window", manager.order_names, before, manager.node_count(fs))


def exhaustive_best(
    fs: Sequence[Node],
    metric: str = "node-count",
    dist: InputDistribution | None = None,
    power_cfg: PowerConfig | None = None,
    apply: bool = True,
) -> ReorderOutcome:
    """Score every order in a fresh manager and keep the cheapest.

    ``metric`` is ``"node-count"`` or ``"power"`` (estimated power of the
    derived mux network).  Orders are visited lexicographically by variable
    index and the first minimum wins.
    """
    if metric not in ("node-count", "power"):
        raise ValueError(f"unknown metric {metric!r}")
    fs = list(fs)
    manager = _manager_of(fs)
    n = manager.nvars
    if n > MAX_EXHAUSTIVE_VARS:
        raise SizeLimitError(
            f"exhaustive search over {n} variables refused (limit {MAX_EXHAUSTIVE_VARS})"
        )
    names = manager.var_names
    before = manager.node_count(fs)
    table = []
    best = None
    for perm in itertools.permutations(range(n)):
        fresh = BddManager(names, order=perm)
        gs = manager.transfer(fs, fresh)
        if metric == "node-count":
            score = float(fresh.node_count(gs))
        else:
            score = total_power(gs, dist, power_cfg)
        table.append((tuple(names[v] for v in perm), score))
        if best is None or score < best[1] - TIE_TOL * max(1.0, abs(best[1])):
            best = (perm, score)
    if apply:
        manager.reorder_to(best[0])
    return ReorderOutcome(
        "exhaustive",
        [names[v] for v in best[0]],
        before,
        manager.node_count(fs) if apply else _count_in(manager, fs, best[0]),
        metric=metric,
        score_table=table,
    )


def _count_in(manager, fs, order) -> int:
    fresh = BddManager(manager.var_names, order=order)
    return fresh.node_count(manager.transfer(fs, fresh))


def reorder(
    fs: Sequence[Node],
    method: str,
    dist: InputDistribution | None = None,
    power_cfg: PowerConfig | None = None,
    metric: str = "node-count",
    window_size: int = 3,
) -> ReorderOutcome:
    """Run the strategy named ``method`` on the manager that owns ``fs``."""
    fs = list(fs)
    manager = _manager_of(fs)
    if method == "info":
        return info_r_order(fs, dist)
    if method == "sift":
        return sift(manager, fs)
    if method == "window":
        return window_permute(manager, fs, window_size)
    if method == "exhaustive":
        return exhaustive_best(fs, metric, dist, power_cfg)
    raise ValueError(f"unknown reordering method {method!r}; choose from {STRATEGIES}")


STRATEGIES = ("info", "sift", "window", "exhaustive")
