"""Signal, conditional and joint probabilities of BDD functions.

Probabilities are propagated bottom-up in a single memoized traversal:
a terminal carries its value, and a node testing ``x`` combines its
children as ``p(x=0)·p(lo) + p(x=1)·p(hi)``.  Inputs are independent; each
variable has its own probability of being 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .bdd import BddManager, Node

__all__ = [
    "InputDistribution",
    "propagate",
    "signal_probability",
    "conditional_probability",
    "joint_probability",
]


@dataclass(frozen=True)
class InputDistribution:
    """Independent input probabilities, ``p(x = 1)`` per variable.

    Keys of ``p1`` are variable names or indices; variables not listed get
    ``default``.
    """

    p1: Mapping = field(default_factory=dict)
    default: float = 0.5

    def __post_init__(self):
        for key, p in list(self.p1.items()) + [("<default>", self.default)]:
            if not 0 <= p <= 1:
                raise ValueError(f"probability for {key!r} must lie in [0, 1], got {p}")

    def resolve(self, manager: BddManager, exact: bool = False) -> list:
        """Per-variable probabilities indexed by ``VarIndex``."""
        probs = [self.default] * manager.nvars
        for key, p in self.p1.items():
            probs[manager.var_index(key)] = p
        if exact:
            return [Fraction(p) for p in probs]
        return [float(p) for p in probs]

    def with_value(self, var, p) -> "InputDistribution":
        p1 = dict(self.p1)
        p1[var] = p
        return InputDistribution(p1, self.default)

    @classmethod
    def from_text(cls, text: str) -> "InputDistribution":
        """Parse ``name = probability`` lines; ``default = p`` sets the default."""
        p1: dict = {}
        default = 0.5
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            name, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"line {lineno}: expected name = probability")
            name = name.strip()
            try:
                p = float(value)
            except ValueError:
                raise ValueError(f"line {lineno}: bad probability {value.strip()!r}") from None
            if name == "default":
                default = p
            else:
                p1[name] = p
        return cls(p1, default)


UNIFORM = InputDistribution()


def _dist(dist):
    return UNIFORM if dist is None else dist


def propagate(
    roots: Node | Iterable[Node],
    probs: list,
) -> dict[int, object]:
    """Probability of every node reachable from ``roots``.

    ``probs`` is indexed by ``VarIndex``.  Returns a map from node uid to
    probability, terminals included; each node is visited once.
    """
    if isinstance(roots, Node):
        roots = [roots]
    one = type(probs[0])(1) if probs else 1.0
    zero = one - one
    memo: dict[int, object] = {0: zero, 1: one}
    for root in roots:
        stack = [root]
        while stack:
            u = stack[-1]
            if u.uid in memo:
                stack.pop()
                continue
            lo, hi = u.lo, u.hi
            pending = False
            if hi.uid not in memo:
                stack.append(hi)
                pending = True
            if lo.uid not in memo:
                stack.append(lo)
                pending = True
            if pending:
                continue
            stack.pop()
            p = probs[u.var]
            memo[u.uid] = (one - p) * memo[lo.uid] + p * memo[hi.uid]
    return memo


def signal_probability(f: Node, dist: InputDistribution | None = None, exact: bool = False):
    """``p(f = 1)`` under ``dist`` (uniform ½ when omitted).

    With ``exact=True`` the result is a :class:`fractions.Fraction`.
    """
    probs = _dist(dist).resolve(f.manager, exact)
    return propagate(f, probs)[f.uid] if probs else _terminal(f, exact)


def _terminal(f, exact):
    one = Fraction(1) if exact else 1.0
    return one * f.value


def conditional_probability(
    f: Node, var, val, dist: InputDistribution | None = None, exact: bool = False
):
    """``p(f = 1 | var = val)``: the traversal with ``var`` pinned to ``val``."""
    manager = f.manager
    probs = _dist(dist).resolve(manager, exact)
    if not probs:
        return _terminal(f, exact)
    one = type(probs[0])(1)
    probs[manager.var_index(var)] = one if val else one - one
    return propagate(f, probs)[f.uid]


def joint_probability(
    f: Node, var, val, dist: InputDistribution | None = None, exact: bool = False
):
    """``p(f = 1, var = val)`` = conditional times ``p(var = val)``."""
    manager = f.manager
    p1 = _dist(dist).resolve(manager, exact)[manager.var_index(var)]
    p_val = p1 if val else 1 - p1
    return conditional_probability(f, var, val, dist, exact) * p_val
