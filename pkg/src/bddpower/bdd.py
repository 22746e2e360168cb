"""Reduced ordered binary decision diagrams.

A :class:`BddManager` owns a table of named variables, a global variable
order and a unique table of :class:`Node` objects.  Nodes are hash-consed,
so two handles denote the same Boolean function (under one manager) if and
only if they are the same Python object.  Complement edges are not used:
the two terminals are plain nodes ``manager.false`` and ``manager.true``.

The unique table holds its nodes weakly.  A node lives as long as some
parent or some caller references it, which gives garbage collection for
free and keeps adjacent-level swaps proportional to the live graph.

Reordering is done in place by :meth:`BddManager.swap_adjacent_levels`;
every handle held by a caller keeps denoting the same function afterwards.
"""
from __future__ import annotations

import itertools
import weakref
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "AND",
    "OR",
    "XOR",
    "NAND",
    "NOR",
    "XNOR",
    "BddError",
    "OrderingViolation",
    "ForeignNodeError",
    "SizeLimitError",
    "AssignmentError",
    "Node",
    "BddManager",
]

# Binary operators as 4-bit truth tables indexed by (a << 1) | b.
AND = "and"
OR = "or"
XOR = "xor"
NAND = "nand"
NOR = "nor"
XNOR = "xnor"

_CACHE_LIMIT = 1 << 18

_OPS = {
    AND: (0, 0, 0, 1),
    OR: (0, 1, 1, 1),
    XOR: (0, 1, 1, 0),
    NAND: (1, 1, 1, 0),
    NOR: (1, 0, 0, 0),
    XNOR: (1, 0, 0, 1),
}


class BddError(Exception):
    """Base class for BDD manager errors."""


class OrderingViolation(BddError):
    """A node would test a variable at or below the level of a child."""


class SizeLimitError(BddError):
    """A request exceeds a guard against exponential work."""


class ForeignNodeError(BddError):
    """A node from another manager was passed in."""


class AssignmentError(BddError, KeyError):
    """An evaluation reached a variable that the assignment leaves open."""

    def __str__(self):
        return Exception.__str__(self)


class Node:
    """Handle to a BDD node.

    Terminals have ``var is None`` and carry ``value`` 0 or 1.  Nonterminal
    nodes test variable index ``var``; ``lo`` is the child for ``var = 0``
    and ``hi`` the child for ``var = 1``.
    """

    __slots__ = ("var", "lo", "hi", "value", "uid", "manager", "__weakref__")

    def __init__(self, manager, var, lo, hi, value, uid):
        self.manager = manager
        self.var = var
        self.lo = lo
        self.hi = hi
        self.value = value
        self.uid = uid

    @property
    def is_terminal(self) -> bool:
        return self.var is None

    def __repr__(self):
        if self.var is None:
            return f"<Node T{self.value}>"
        return f"<Node #{self.uid} {self.manager.var_name(self.var)}>"

    # Boolean operator sugar; all of it goes through the manager.
    def __and__(self, other):
        return self.manager.apply(AND, self, other)

    def __or__(self, other):
        return self.manager.apply(OR, self, other)

    def __xor__(self, other):
        return self.manager.apply(XOR, self, other)

    def __invert__(self):
        return self.manager.negate(self)


class BddManager:
    """Shared ROBDD store with a single global variable order.

    ``variables`` are declared in the given sequence; their indices
    (``VarIndex``) are positions in that sequence and never change.  The
    initial order is the declaration order unless ``order`` is given.
    """

    def __init__(self, variables: Iterable[str] = (), order: Sequence | None = None):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._level: list[int] = []
        self._order: list[int] = []
        self._unique: list[weakref.WeakValueDictionary] = []
        self._uids = itertools.count(2)
        self._apply_cache: dict = {}
        self._ite_cache: dict = {}
        self._cofactor_cache: dict = {}
        self.false = Node(self, None, None, None, 0, 0)
        self.true = Node(self, None, None, None, 1, 1)
        for name in variables:
            self.add_var(name)
        if order is not None:
            self.reorder_to(order)

    # ------------------------------------------------------------------
    # variables and levels

    def add_var(self, name: str) -> int:
        """Declare ``name`` at the bottom level and return its index."""
        if not isinstance(name, str) or not name:
            raise BddError(f"variable name must be a non-empty string: {name!r}")
        if name in self._index:
            raise BddError(f"duplicate variable {name!r}")
        idx = len(self._names)
        self._names.append(name)
        self._index[name] = idx
        self._level.append(len(self._order))
        self._order.append(idx)
        self._unique.append(weakref.WeakValueDictionary())
        return idx

    @property
    def nvars(self) -> int:
        return len(self._names)

    @property
    def var_names(self) -> list[str]:
        return list(self._names)

    @property
    def order(self) -> list[int]:
        """Variable indices from the top level to the bottom level."""
        return list(self._order)

    @property
    def order_names(self) -> list[str]:
        return [self._names[i] for i in self._order]

    def var_index(self, var) -> int:
        """Resolve a variable name or index to its index."""
        if isinstance(var, (int, np.integer)) and not isinstance(var, bool):
            var = int(var)
            if not 0 <= var < len(self._names):
                raise BddError(f"variable index {var} out of range")
            return var
        try:
            return self._index[var]
        except (KeyError, TypeError):
            raise BddError(f"unknown variable {var!r}") from None

    def var_name(self, var) -> str:
        return self._names[self.var_index(var)]

    def level_of(self, var) -> int:
        return self._level[self.var_index(var)]

    def var_at_level(self, level: int) -> int:
        return self._order[level]

    def _node_level(self, node: Node) -> int:
        if node.var is None:
            return len(self._order)
        return self._level[node.var]

    # ------------------------------------------------------------------
    # node construction

    def _check(self, node):
        if not isinstance(node, Node) or node.manager is not self:
            raise ForeignNodeError(f"{node!r} does not belong to this manager")

    def mk_node(self, var, lo: Node, hi: Node) -> Node:
        """Return the canonical node ``(var, lo, hi)``.

        Applies the redundant-test rule (``lo is hi`` gives ``lo``) and the
        unique table.  Raises :class:`OrderingViolation` unless ``var`` sits
        strictly above both children.
        """
        var = self.var_index(var)
        self._check(lo)
        self._check(hi)
        level = self._level[var]
        if level >= self._node_level(lo) or level >= self._node_level(hi):
            raise OrderingViolation(
                f"{self._names[var]} (level {level}) is not above its children"
            )
        return self._mk(var, lo, hi)

    def _mk(self, var: int, lo: Node, hi: Node) -> Node:
        if lo is hi:
            return lo
        table = self._unique[var]
        key = (lo.uid, hi.uid)
        node = table.get(key)
        if node is None:
            node = Node(self, var, lo, hi, None, next(self._uids))
            table[key] = node
        return node

    def var(self, var) -> Node:
        """The BDD of the positive literal of ``var``."""
        return self._mk(self.var_index(var), self.false, self.true)

    def nvar(self, var) -> Node:
        """The BDD of the negative literal of ``var``."""
        return self._mk(self.var_index(var), self.true, self.false)

    def constant(self, value) -> Node:
        return self.true if value else self.false

    # ------------------------------------------------------------------
    # Boolean operations

    def apply(self, op: str, f: Node, g: Node) -> Node:
        """Combine ``f`` and ``g`` pointwise with a binary operator."""
        try:
            table = _OPS[op.lower()]
        except (KeyError, AttributeError):
            raise BddError(f"unknown operator {op!r}") from None
        self._check(f)
        self._check(g)
        if len(self._apply_cache) > _CACHE_LIMIT:
            self._apply_cache.clear()
        return self._apply(op.lower(), table, f, g)

    def _apply(self, op, table, f, g):
        if f.var is None and g.var is None:
            return self.true if table[(f.value << 1) | g.value] else self.false
        if op == AND:
            if f is self.false or g is self.false:
                return self.false
            if f is self.true or f is g:
                return g
            if g is self.true:
                return f
        elif op == OR:
            if f is self.true or g is self.true:
                return self.true
            if f is self.false or f is g:
                return g
            if g is self.false:
                return f
        elif op == XOR:
            if f is g:
                return self.false
            if f is self.false:
                return g
            if g is self.false:
                return f
        if f.uid > g.uid:  # every supported operator is commutative
            f, g = g, f
        key = (op, f.uid, g.uid)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit[0]
        lf = self._node_level(f)
        lg = self._node_level(g)
        level = min(lf, lg)
        var = self._order[level]
        f0, f1 = (f.lo, f.hi) if lf == level else (f, f)
        g0, g1 = (g.lo, g.hi) if lg == level else (g, g)
        r = self._mk(
            var,
            self._apply(op, table, f0, g0),
            self._apply(op, table, f1, g1),
        )
        # keep the operands alive so their uids cannot be recycled
        self._apply_cache[key] = (r, f, g)
        return r

    def negate(self, f: Node) -> Node:
        return self.apply(XOR, f, self.true)

    def ite(self, f: Node, g: Node, h: Node) -> Node:
        """If-then-else: ``f·g ∨ ¬f·h``."""
        for node in (f, g, h):
            self._check(node)
        if len(self._ite_cache) > _CACHE_LIMIT:
            self._ite_cache.clear()
        return self._ite(f, g, h)

    def _ite(self, f, g, h):
        if f is self.true:
            return g
        if f is self.false:
            return h
        if g is h:
            return g
        if g is self.true and h is self.false:
            return f
        key = (f.uid, g.uid, h.uid)
        hit = self._ite_cache.get(key)
        if hit is not None:
            return hit[0]
        level = min(self._node_level(f), self._node_level(g), self._node_level(h))
        var = self._order[level]

        def split(u):
            if self._node_level(u) == level:
                return u.lo, u.hi
            return u, u

        f0, f1 = split(f)
        g0, g1 = split(g)
        h0, h1 = split(h)
        r = self._mk(var, self._ite(f0, g0, h0), self._ite(f1, g1, h1))
        self._ite_cache[key] = (r, f, g, h)
        return r

    def cofactor(self, f: Node, var, val) -> Node:
        """Restrict ``f`` to ``var = val``."""
        self._check(f)
        var = self.var_index(var)
        if len(self._cofactor_cache) > _CACHE_LIMIT:
            self._cofactor_cache.clear()
        return self._cofactor(f, var, 1 if val else 0)

    def _cofactor(self, f, var, val):
        if f.var is None or self._level[f.var] > self._level[var]:
            return f
        if f.var == var:
            return f.hi if val else f.lo
        key = (f.uid, var, val)
        hit = self._cofactor_cache.get(key)
        if hit is not None:
            return hit[0]
        r = self._mk(
            f.var, self._cofactor(f.lo, var, val), self._cofactor(f.hi, var, val)
        )
        self._cofactor_cache[key] = (r, f)
        return r

    def restrict(self, f: Node, assignment: Mapping) -> Node:
        """Cofactor ``f`` with respect to several variables at once."""
        for var, val in assignment.items():
            f = self.cofactor(f, var, val)
        return f

    # ------------------------------------------------------------------
    # truth vectors and evaluation

    def from_truth_vector(self, bits, variables: Sequence | None = None) -> Node:
        """Build the BDD of a truth vector.

        ``bits`` is a string of ``0``/``1`` characters or a sequence of
        bits of length ``2**k``.  ``variables`` lists the ``k`` variables
        the vector ranges over, most significant first: row ``i`` is the
        assignment whose first variable equals the top bit of ``i``.  The
        default is the first ``k`` declared variables.  The result is built
        under the manager's current order, independently of ``variables``.
        """
        if isinstance(bits, str):
            bits = bits.strip()
            if set(bits) - {"0", "1"}:
                raise BddError("truth vector may only contain 0 and 1")
            arr = np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
        else:
            arr = np.asarray(bits, dtype=np.int64)
            if arr.ndim != 1 or np.any((arr != 0) & (arr != 1)):
                raise BddError("truth vector must be a flat sequence of bits")
            arr = arr.astype(np.uint8)
        size = arr.size
        if size == 0 or size & (size - 1):
            raise BddError(f"truth vector length {size} is not a power of two")
        k = size.bit_length() - 1
        if variables is None:
            if k > self.nvars:
                raise BddError(f"truth vector needs {k} variables, manager has {self.nvars}")
            variables = range(k)
        idx = [self.var_index(v) for v in variables]
        if len(idx) != k or len(set(idx)) != k:
            raise BddError(f"expected {k} distinct variables for a vector of length {size}")
        if k == 0:
            return self.constant(arr[0])
        # put the axes in level order, top level first
        cube = arr.reshape((2,) * k)
        axes = sorted(range(k), key=lambda a: self._level[idx[a]])
        cube = np.ascontiguousarray(cube.transpose(axes))
        vars_by_level = [idx[a] for a in axes]
        memo: dict[bytes, Node] = {}

        def build(sub, depth):
            if depth == k:
                return self.constant(sub.item())
            key = (depth, sub.tobytes())
            hit = memo.get(key)
            if hit is None:
                hit = self._mk(
                    vars_by_level[depth], build(sub[0], depth + 1), build(sub[1], depth + 1)
                )
                memo[key] = hit
            return hit

        root = build(cube, 0)
        memo.clear()  # the recursive closure is a cycle; don't let it pin nodes
        return root

    def _bits_of(self, assignment) -> Mapping[int, int] | Sequence[int]:
        if isinstance(assignment, Mapping):
            return {self.var_index(k): v for k, v in assignment.items()}
        return assignment

    def eval(self, f: Node, assignment) -> int:
        """Evaluate ``f`` under an assignment.

        ``assignment`` maps variable names or indices to bits, or is a
        sequence of bits indexed by variable index.
        """
        self._check(f)
        bits = self._bits_of(assignment)
        while f.var is not None:
            try:
                v = bits[f.var]
            except (KeyError, IndexError):
                raise AssignmentError(
                    f"no value for tested variable {self._names[f.var]!r}"
                ) from None
            f = f.hi if v else f.lo
        return f.value

    def truth_vector(self, f: Node, variables: Sequence | None = None) -> str:
        """Enumerate ``f`` into a truth vector (first variable is the MSB)."""
        idx = [self.var_index(v) for v in (range(self.nvars) if variables is None else variables)]
        out = []
        bits = [0] * self.nvars
        for row in range(1 << len(idx)):
            for pos, var in enumerate(idx):
                bits[var] = (row >> (len(idx) - 1 - pos)) & 1
            out.append("1" if self.eval(f, bits) else "0")
        return "".join(out)

    # ------------------------------------------------------------------
    # graph queries

    def descendants(self, roots: Node | Iterable[Node]) -> list[Node]:
        """Distinct nonterminal nodes reachable from ``roots``, parents first."""
        if isinstance(roots, Node):
            roots = [roots]
        seen: set[int] = set()
        out: list[Node] = []
        stack = []
        for r in roots:
            self._check(r)
            stack.append(r)
        while stack:
            u = stack.pop()
            if u.var is None or u.uid in seen:
                continue
            seen.add(u.uid)
            out.append(u)
            stack.append(u.hi)
            stack.append(u.lo)
        out.sort(key=lambda u: self._level[u.var])
        return out

    def node_count(self, roots: Node | Iterable[Node]) -> int:
        """Number of distinct nonterminal nodes reachable from ``roots``."""
        return len(self.descendants(roots))

    def support(self, f: Node) -> set[int]:
        return {u.var for u in self.descendants(f)}

    def level_sizes(self, roots) -> list[int]:
        sizes = [0] * self.nvars
        for u in self.descendants(roots):
            sizes[self._level[u.var]] += 1
        return sizes

    def live_nodes(self) -> int:
        """Nonterminal nodes currently held in the unique table."""
        return sum(len(t) for t in self._unique)

    def stored_nodes(self) -> list[Node]:
        return [u for t in self._unique for u in list(t.values())]

    # ------------------------------------------------------------------
    # reordering

    def clear_caches(self):
        self._apply_cache.clear()
        self._ite_cache.clear()
        self._cofactor_cache.clear()

    def swap_adjacent_levels(self, level: int) -> None:
        """Exchange the variables at ``level`` and ``level + 1`` in place."""
        if not 0 <= level < self.nvars - 1:
            raise BddError(f"cannot swap level {level} with {level + 1}")
        self.clear_caches()
        x = self._order[level]
        y = self._order[level + 1]
        xtable = self._unique[x]
        ytable = self._unique[y]
        affected = [
            u for u in list(xtable.values()) if u.lo.var == y or u.hi.var == y
        ]
        self._order[level], self._order[level + 1] = y, x
        self._level[x], self._level[y] = level + 1, level
        for u in affected:
            del xtable[(u.lo.uid, u.hi.uid)]
        for u in affected:
            f0, f1 = u.lo, u.hi
            f00, f01 = (f0.lo, f0.hi) if f0.var == y else (f0, f0)
            f10, f11 = (f1.lo, f1.hi) if f1.var == y else (f1, f1)
            lo = self._mk(x, f00, f10)
            hi = self._mk(x, f01, f11)
            u.var, u.lo, u.hi = y, lo, hi
            ytable[(lo.uid, hi.uid)] = u

    def reorder_to(self, order: Sequence) -> None:
        """Move to ``order`` (top level first) by adjacent swaps."""
        target = [self.var_index(v) for v in order]
        if sorted(target) != list(range(self.nvars)):
            raise BddError("order must be a permutation of all declared variables")
        for level, var in enumerate(target):
            # bubble the wanted variable up to its level
            for k in range(self._level[var] - 1, level - 1, -1):
                self.swap_adjacent_levels(k)

    def transfer(self, roots: Sequence[Node], target: "BddManager") -> list[Node]:
        """Rebuild ``roots`` in ``target`` (variables are matched by name)."""
        for name in self._names:
            if name not in target._index:
                target.add_var(name)
        memo: dict[int, Node] = {}

        def copy(u):
            if u.var is None:
                return target.constant(u.value)
            hit = memo.get(u.uid)
            if hit is None:
                hit = target._ite(
                    target.var(self._names[u.var]), copy(u.hi), copy(u.lo)
                )
                memo[u.uid] = hit
            return hit

        out = []
        for r in roots:
            self._check(r)
            out.append(copy(r))
        memo.clear()
        return out

    def __len__(self):
        return self.live_nodes()

    def __repr__(self):
        return f"<BddManager vars={self.nvars} order={self.order_names}>"
