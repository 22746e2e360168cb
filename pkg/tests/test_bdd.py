import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bddpower import (
    AND,
    NAND,
    NOR,
    OR,
    XOR,
    AssignmentError,
    BddError,
    BddManager,
    ForeignNodeError,
    OrderingViolation,
)

from oracles import bits_str

EX1 = "10001111"
NAMES3 = ["x1", "x2", "x3"]


def assignments(n):
    return itertools.product((0, 1), repeat=n)


def structure_ok(m):
    """No redundant node and no duplicate triple among stored nodes."""
    seen = set()
    for u in m.stored_nodes():
        assert u.lo is not u.hi
        key = (u.var, u.lo.uid, u.hi.uid)
        assert key not in seen
        seen.add(key)
        lvl = m.level_of(u.var)
        for c in (u.lo, u.hi):
            assert c.var is None or m.level_of(c.var) > lvl


class TestMkNode:
    def test_redundant_test_is_removed(self):
        m = BddManager(["x"])
        assert m.mk_node("x", m.false, m.false) is m.false

    def test_canonical_handle(self):
        m = BddManager(["x"])
        assert m.mk_node("x", m.false, m.true) is m.mk_node("x", m.false, m.true)

    def test_example1_three_nodes(self):
        m = BddManager(NAMES3)
        # build bottom-up by hand: x3' then x2'x3' then x1 + x2'x3'
        n3 = m.mk_node("x3", m.true, m.false)
        n2 = m.mk_node("x2", n3, m.false)
        f = m.mk_node("x1", n2, m.true)
        assert m.node_count(f) == 3
        assert m.truth_vector(f) == EX1

    def test_level_violation(self):
        m = BddManager(NAMES3)
        low = m.var("x1")
        with pytest.raises(OrderingViolation):
            m.mk_node("x2", low, m.true)
        with pytest.raises(OrderingViolation):
            m.mk_node("x1", low, m.false)


class TestApply:
    def test_and_identity(self, ex1):
        m, f = ex1
        assert m.apply(AND, f, m.true) is f

    def test_xor_self_inverse(self, ex1):
        m, f = ex1
        assert m.apply(XOR, f, f) is m.false

    def test_example1_vector(self):
        m = BddManager(NAMES3)
        a = m.apply(AND, m.nvar("x3"), m.nvar("x2"))
        f = m.apply(OR, a, m.var("x1"))
        assert m.truth_vector(f) == EX1

    @pytest.mark.parametrize(
        "op, table",
        [(AND, "0001"), (OR, "0111"), (XOR, "0110"), (NAND, "1110"), (NOR, "1000")],
    )
    def test_operator_tables(self, op, table):
        m = BddManager(["a", "b"])
        assert m.truth_vector(m.apply(op, m.var("a"), m.var("b"))) == table

    def test_foreign_nodes(self):
        m1, m2 = BddManager(["a"]), BddManager(["a"])
        with pytest.raises(ForeignNodeError):
            m1.apply(AND, m1.var("a"), m2.var("a"))

    def test_unknown_operator(self):
        m = BddManager(["a"])
        with pytest.raises(BddError):
            m.apply("implies", m.var("a"), m.true)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 6), st.data())
    def test_apply_pointwise(self, n, data):
        names = [f"v{i}" for i in range(n)]
        m = BddManager(names)
        va = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
        vb = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
        fa, fb = m.from_truth_vector(va), m.from_truth_vector(vb)
        ops = {AND: np.logical_and, OR: np.logical_or, XOR: np.logical_xor}
        for op, ref in ops.items():
            expect = bits_str(ref(np.array(va), np.array(vb)).astype(int))
            assert m.truth_vector(m.apply(op, fa, fb)) == expect


class TestCofactor:
    def test_x1_high_is_one(self, ex1):
        m, f = ex1
        assert m.cofactor(f, "x1", 1) is m.true

    def test_constant(self):
        m = BddManager(NAMES3)
        assert m.cofactor(m.false, "x2", 1) is m.false

    def test_x2_low(self, ex1):
        m, f = ex1
        g = m.cofactor(f, "x2", 0)
        # rows (x1, x3): 00 -> 1, 01 -> 0, 10 -> 1, 11 -> 1
        assert m.truth_vector(g, ["x1", "x3"]) == "1011"

    def test_independent_variable(self):
        m = BddManager(NAMES3)
        f = m.var("x1") & m.var("x3")
        assert m.cofactor(f, "x2", 1) is f


class TestTruthVector:
    def test_example1_row0(self, ex1):
        m, f = ex1
        assert m.eval(f, {"x1": 0, "x2": 0, "x3": 0}) == 1

    def test_all_zero(self):
        m = BddManager(NAMES3)
        assert m.from_truth_vector("0" * 8) is m.false

    def test_under_other_manager_order(self):
        # same function, manager ordered <x2, x1, x3>
        m = BddManager(NAMES3, order=["x2", "x1", "x3"])
        f = m.from_truth_vector(EX1, NAMES3)
        assert m.node_count(f) == 4
        assert m.truth_vector(f, NAMES3) == EX1

    def test_significance_follows_variables_argument(self):
        # the vector read with x2 as MSB is a different function: x2 + x1'x3'
        m = BddManager(NAMES3, order=["x2", "x1", "x3"])
        g = m.from_truth_vector(EX1, ["x2", "x1", "x3"])
        assert m.node_count(g) == 3
        assert m.truth_vector(g, ["x2", "x1", "x3"]) == EX1

    @pytest.mark.parametrize("bad", ["101", "", "10a1", [0, 1, 2, 0]])
    def test_rejects_bad_vectors(self, bad):
        with pytest.raises(BddError):
            BddManager(NAMES3).from_truth_vector(bad)


class TestEval:
    def test_row7(self, ex1):
        m, f = ex1
        assert m.eval(f, {"x1": 1, "x2": 1, "x3": 1}) == 1

    def test_row2(self, ex1):
        m, f = ex1
        assert m.eval(f, {"x1": 0, "x2": 1, "x3": 0}) == 0

    def test_terminal(self):
        m = BddManager()
        assert m.eval(m.true, {}) == 1

    def test_sequence_assignment(self, ex1):
        m, f = ex1
        assert m.eval(f, [0, 0, 1]) == 0

    def test_missing_variable(self, ex1):
        m, f = ex1
        with pytest.raises(AssignmentError):
            m.eval(f, {"x1": 0, "x2": 0})
        # a variable the path never tests need not be given
        assert m.eval(f, {"x1": 1}) == 1


class TestNodeCount:
    def test_terminal(self):
        m = BddManager()
        assert m.node_count(m.false) == 0

    def test_shared_nodes_counted_once(self):
        m = BddManager(["a", "b", "c"])
        bc = m.var("b") & m.var("c")
        f, g = m.var("a") & bc, m.var("a") | bc
        assert m.node_count([f, g]) == m.node_count(f) + m.node_count(g) - m.node_count(bc)

    @pytest.mark.parametrize(
        "order, count",
        [
            (("x1", "x2", "x3"), 3),
            (("x1", "x3", "x2"), 3),
            (("x2", "x1", "x3"), 4),
            (("x2", "x3", "x1"), 3),
            (("x3", "x1", "x2"), 4),
            (("x3", "x2", "x1"), 3),
        ],
    )
    def test_example1_all_orders(self, order, count):
        # counts taken from hand reduction of f = x1 + x2'x3'
        m = BddManager(NAMES3, order=order)
        f = m.from_truth_vector(EX1, NAMES3)
        assert m.node_count(f) == count
        assert m.truth_vector(f, NAMES3) == EX1


class TestSwap:
    def test_unrelated_function_untouched(self):
        m = BddManager(["a", "b", "c", "d"])
        f = m.var("c") ^ m.var("d")
        before = [(u.uid, u.var, u.lo.uid, u.hi.uid) for u in m.descendants(f)]
        m.swap_adjacent_levels(0)
        after = [(u.uid, u.var, u.lo.uid, u.hi.uid) for u in m.descendants(f)]
        assert before == after

    def test_involution(self, ex1):
        m, f = ex1
        order, count = m.order, m.node_count(f)
        m.swap_adjacent_levels(1)
        m.swap_adjacent_levels(1)
        assert m.order == order
        assert m.node_count(f) == count

    def test_example1_swap_top(self, ex1):
        m, f = ex1
        m.swap_adjacent_levels(0)
        assert m.order_names == ["x2", "x1", "x3"]
        assert m.node_count(f) == 4
        assert m.truth_vector(f, NAMES3) == EX1

    @pytest.mark.parametrize("level", [-1, 2, 5])
    def test_out_of_range(self, ex1, level):
        m, _ = ex1
        with pytest.raises(BddError):
            m.swap_adjacent_levels(level)

    def test_reorder_matches_rebuild(self):
        rng = np.random.default_rng(7)
        names = [f"v{i}" for i in range(6)]
        bits = bits_str(rng.integers(0, 2, 64))
        m = BddManager(names)
        f = m.from_truth_vector(bits)
        target = ["v3", "v0", "v5", "v1", "v4", "v2"]
        m.reorder_to(target)
        fresh = BddManager(names, order=target)
        g = fresh.from_truth_vector(bits)
        assert m.node_count(f) == fresh.node_count(g)
        # identical shape, level by level
        assert m.level_sizes(f) == fresh.level_sizes(g)
        structure_ok(m)


class TestInvariants:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 10), st.randoms(use_true_random=False))
    def test_canonicity_against_literal_composition(self, n, rnd):
        names = [f"v{i}" for i in range(n)]
        bits = [rnd.getrandbits(1) for _ in range(1 << n)]
        m = BddManager(names)
        f = m.from_truth_vector(bits)
        # sum of minterms built from literals with apply
        g = m.false
        for row, b in enumerate(bits):
            if not b:
                continue
            term = m.true
            for pos in range(n):
                lit = m.var(pos) if (row >> (n - 1 - pos)) & 1 else m.nvar(pos)
                term = m.apply(AND, term, lit)
            g = m.apply(OR, g, term)
        assert f is g

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 8), st.randoms(use_true_random=False), st.lists(st.integers(0, 6), max_size=15))
    def test_semantics_and_reduction_survive_swaps(self, n, rnd, swaps):
        names = [f"v{i}" for i in range(n)]
        bits = "".join(str(rnd.getrandbits(1)) for _ in range(1 << n))
        bits2 = "".join(str(rnd.getrandbits(1)) for _ in range(1 << n))
        m = BddManager(names)
        f, g = m.from_truth_vector(bits), m.from_truth_vector(bits2)
        for k in swaps:
            m.swap_adjacent_levels(k % (n - 1))
            structure_ok(m)
        assert m.truth_vector(f) == bits
        assert m.truth_vector(g) == bits2
        # operations after reordering still canonical
        assert m.apply(XOR, f, g) is m.from_truth_vector(
            "".join("1" if a != b else "0" for a, b in zip(bits, bits2))
        )

    def test_eval_order_invariant_count_order_sensitive(self):
        counts = set()
        for order in itertools.permutations(NAMES3):
            m = BddManager(NAMES3, order=order)
            f = m.from_truth_vector(EX1, NAMES3)
            for bits in assignments(3):
                row = int("".join(map(str, bits)), 2)
                assert m.eval(f, dict(zip(NAMES3, bits))) == int(EX1[row])
            counts.add(m.node_count(f))
        assert counts == {3, 4}

    def test_transfer_preserves_function(self):
        src = BddManager(["a", "b", "c"])
        f = (src.var("a") & src.var("b")) | src.nvar("c")
        dst = BddManager(["a", "b", "c"], order=["c", "b", "a"])
        (g,) = src.transfer([f], dst)
        assert dst.truth_vector(g) == src.truth_vector(f)

    def test_dead_nodes_are_collected(self):
        m = BddManager([f"v{i}" for i in range(8)])
        f = m.from_truth_vector("01" * 128)
        m.clear_caches()
        keep = m.live_nodes()
        g = m.from_truth_vector("0110" * 64)
        assert m.live_nodes() > keep
        del g
        m.clear_caches()
        assert m.live_nodes() == keep
        assert m.truth_vector(f).startswith("0101")
