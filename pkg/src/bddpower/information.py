"""Entropy and conditional entropy of Boolean functions held as BDDs.

All quantities are in bits.  ``H(f | x)`` is computed from the entropies of
the two cofactors, weighted by the probability of each value of ``x``;
``H(f | S)`` for a set of variables sums over the distinct cofactors of
``f`` with respect to ``S`` (assignments that lead to the same cofactor are
merged, so the cost follows the BDD width rather than ``2**|S|``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bdd import BddError, Node, SizeLimitError
from .probability import (
    InputDistribution,
    UNIFORM,
    joint_probability,
    propagate,
    signal_probability,
)

__all__ = [
    "MAX_CONDITIONING_VARS",
    "EntropyReport",
    "binary_entropy",
    "entropy",
    "conditional_entropy",
    "conditional_entropy_joint",
    "joint_entropy",
    "conditional_entropy_set",
    "total_conditional_entropy",
    "cofactor_partition",
    "entropy_report",
]

MAX_CONDITIONING_VARS = 20


def _plogp(p) -> float:
    return 0.0 if p <= 0 else p * math.log2(p)


def binary_entropy(p) -> float:
    """Entropy of a Bernoulli(p) variable, with ``0·log 0 = 0``."""
    p = float(p)
    return 0.0 - _plogp(p) - _plogp(1.0 - p)


def entropy(f: Node, dist: InputDistribution | None = None) -> float:
    """``H(f)`` from the signal probability of ``f``."""
    return binary_entropy(signal_probability(f, dist))


def conditional_entropy(f: Node, var, dist: InputDistribution | None = None) -> float:
    """``H(f | var) = p(var=0)·H(f|var=0) + p(var=1)·H(f|var=1)``."""
    dist = UNIFORM if dist is None else dist
    manager = f.manager
    p1 = dist.resolve(manager)[manager.var_index(var)]
    h0 = entropy(manager.cofactor(f, var, 0), dist)
    h1 = entropy(manager.cofactor(f, var, 1), dist)
    return (1.0 - p1) * h0 + p1 * h1


def conditional_entropy_joint(f: Node, var, dist: InputDistribution | None = None) -> float:
    """``H(f | var)`` as the double sum over joint and conditional probabilities.

    Independent of :func:`conditional_entropy`: it never builds a cofactor,
    only pinned-variable traversals of ``f`` itself.
    """
    dist = UNIFORM if dist is None else dist
    manager = f.manager
    p1 = dist.resolve(manager)[manager.var_index(var)]
    total = 0.0
    for val, p_val in ((0, 1.0 - p1), (1, p1)):
        if p_val == 0:
            continue
        p_f1 = joint_probability(f, var, val, dist)
        p_f0 = p_val - p_f1
        for joint in (p_f1, p_f0):
            if joint > 0:
                total -= joint * math.log2(joint / p_val)
    return total


def joint_entropy(f: Node, var, dist: InputDistribution | None = None) -> float:
    """``H(f, var)`` over the four (f, var) outcomes."""
    dist = UNIFORM if dist is None else dist
    manager = f.manager
    p1 = dist.resolve(manager)[manager.var_index(var)]
    cells = []
    for val, p_val in ((0, 1.0 - p1), (1, p1)):
        p_f1 = joint_probability(f, var, val, dist)
        cells += [p_f1, p_val - p_f1]
    return -sum(_plogp(p) for p in cells)


def cofactor_partition(
    f: Node, variables: Sequence, probs: list
) -> dict[int, tuple[Node, float]]:
    """Distinct cofactors of ``f`` over assignments to ``variables``.

    Returns ``{uid: (cofactor, total probability of the assignments that
    produce it)}``.
    """
    manager = f.manager
    parts: dict[int, tuple[Node, float]] = {f.uid: (f, 1.0)}
    for var in variables:
        idx = manager.var_index(var)
        p1 = probs[idx]
        refined: dict[int, tuple[Node, float]] = {}
        for g, w in parts.values():
            for val, p_val in ((0, 1.0 - p1), (1, p1)):
                if p_val == 0:
                    continue
                h = manager.cofactor(g, idx, val)
                prev = refined.get(h.uid)
                refined[h.uid] = (h, (prev[1] if prev else 0.0) + w * p_val)
        parts = refined
    return parts


def _partition_entropy(parts, probs, cache=None) -> float:
    total = 0.0
    for g, w in parts.values():
        if g.var is None:
            continue
        h = None if cache is None else cache.get(g.uid)
        if h is None:
            h = binary_entropy(propagate(g, probs)[g.uid])
            if cache is not None:
                cache[g.uid] = h
        total += w * h
    return total


def conditional_entropy_set(
    f: Node, variables: Sequence, dist: InputDistribution | None = None
) -> float:
    """``H(f | S)``: expected entropy of ``f`` once every variable of ``S`` is known."""
    manager = f.manager
    idx = [manager.var_index(v) for v in variables]
    if len(set(idx)) != len(idx):
        raise BddError("conditioning variables must be distinct")
    if len(idx) > MAX_CONDITIONING_VARS:
        raise SizeLimitError(
            f"refusing to condition on {len(idx)} variables "
            f"(limit {MAX_CONDITIONING_VARS})"
        )
    probs = (UNIFORM if dist is None else dist).resolve(manager)
    return _partition_entropy(cofactor_partition(f, idx, probs), probs)


def total_conditional_entropy(
    fs: Iterable[Node], var, dist: InputDistribution | None = None
) -> float:
    """Unweighted sum of ``H(f_j | var)`` over several outputs."""
    return sum(conditional_entropy(f, var, dist) for f in fs)


@dataclass
class EntropyReport:
    """Entropy of one function and its conditional entropies per variable."""

    h_f: float
    h_f_given: dict[str, float]
    h_f_given_set: dict[tuple[str, ...], float] = field(default_factory=dict)


def entropy_report(
    f: Node,
    dist: InputDistribution | None = None,
    variables: Sequence | None = None,
    sets: Iterable[Sequence] = (),
) -> EntropyReport:
    manager = f.manager
    if variables is None:
        variables = range(manager.nvars)
    given = {manager.var_name(v): conditional_entropy(f, v, dist) for v in variables}
    by_set = {
        tuple(manager.var_name(v) for v in s): conditional_entropy_set(f, s, dist)
        for s in sets
    }
    return EntropyReport(entropy(f, dist), given, by_set)
