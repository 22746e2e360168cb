import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bddpower import (
    BddManager,
    InputDistribution,
    SizeLimitError,
    conditional_entropy,
    conditional_entropy_joint,
    conditional_entropy_set,
    elaborate,
    entropy,
    entropy_report,
    joint_entropy,
    read_netlist,
    simulate_netlist,
    total_conditional_entropy,
)
from bddpower.information import binary_entropy

from oracles import bits_str, cond_entropy_set, h2, random_bits


def test_binary_entropy_edges():
    assert binary_entropy(0) == 0.0
    assert binary_entropy(1) == 0.0
    assert binary_entropy(0.5) == 1.0
    assert math.copysign(1.0, binary_entropy(1)) == 1.0


class TestEntropy:
    def test_constant(self):
        assert entropy(BddManager(["a"]).true) == 0.0

    def test_example1(self, ex1):
        _, f = ex1
        expected = -(5 / 8) * math.log2(5 / 8) - (3 / 8) * math.log2(3 / 8)
        assert entropy(f) == pytest.approx(expected, abs=1e-15)
        assert round(entropy(f), 4) == 0.9544
        # the worked example prints 0.96; the exact value is 0.9544
        assert abs(entropy(f) - 0.96) < 0.01

    def test_literal(self):
        m = BddManager(["x1"])
        assert entropy(m.var("x1")) == 1.0


class TestConditionalEntropy:
    def test_example1_x1(self, ex1):
        _, f = ex1
        # x1 = 0 leaves p = 1/4, x1 = 1 is constant
        assert conditional_entropy(f, "x1") == pytest.approx(0.5 * h2(0.25), abs=1e-15)
        assert round(conditional_entropy(f, "x1"), 2) == 0.41

    def test_example1_x2_decomposition(self, ex1):
        m, f = ex1
        low = 0.5 * entropy(m.cofactor(f, "x2", 0))
        high = 0.5 * entropy(m.cofactor(f, "x2", 1))
        assert round(low, 2) == 0.41
        assert high == 0.5
        assert conditional_entropy(f, "x2") == pytest.approx(low + high, abs=1e-15)
        assert round(conditional_entropy(f, "x2"), 4) == 0.9056
        assert round(conditional_entropy(f, "x3"), 4) == 0.9056

    def test_fully_determined(self):
        m = BddManager(["x1"])
        assert conditional_entropy(m.var("x1"), "x1") == 0.0


class TestConditionalEntropySet:
    def test_example1_x1_x2(self, ex1):
        _, f = ex1
        assert conditional_entropy_set(f, ["x1", "x2"]) == pytest.approx(0.25, abs=1e-15)

    def test_all_variables(self, ex1):
        _, f = ex1
        assert conditional_entropy_set(f, ["x3", "x1", "x2"]) == 0.0

    def test_example1_x1_x3(self, ex1):
        _, f = ex1
        bits = np.array([int(c) for c in "10001111"])
        assert cond_entropy_set(bits, [0, 2]) == pytest.approx(0.25)
        assert conditional_entropy_set(f, ["x1", "x3"]) == pytest.approx(0.25, abs=1e-15)

    def test_empty_set_is_entropy(self, ex1):
        _, f = ex1
        assert conditional_entropy_set(f, []) == entropy(f)

    def test_guard(self):
        m = BddManager([f"v{i}" for i in range(21)])
        with pytest.raises(SizeLimitError):
            conditional_entropy_set(m.var(0), range(21))

    def test_duplicates_rejected(self, ex1):
        _, f = ex1
        with pytest.raises(Exception):
            conditional_entropy_set(f, ["x1", "x1"])


class TestTotal:
    def test_single(self, ex1):
        _, f = ex1
        assert total_conditional_entropy([f], "x2") == conditional_entropy(f, "x2")

    def test_duplicated_output(self, ex1):
        _, f = ex1
        assert total_conditional_entropy([f, f], "x2") == 2 * conditional_entropy(f, "x2")

    def test_c17_against_enumeration(self, fixtures):
        net = read_netlist(fixtures / "c17.blif")
        fs = elaborate(net)
        n = len(net.inputs)
        # truth vectors of both outputs straight from gate simulation
        tables = np.array(
            [simulate_netlist(net, dict(zip(net.inputs, bits))) for bits in itertools.product((0, 1), repeat=n)]
        ).T
        for pos, x in enumerate(net.inputs):
            expected = sum(cond_entropy_set(t, [pos]) for t in tables)
            assert total_conditional_entropy(fs, x) == pytest.approx(expected, abs=1e-12)


def test_report(ex1):
    _, f = ex1
    rep = entropy_report(f, sets=[["x1", "x2"]])
    assert rep.h_f_given["x1"] < rep.h_f_given["x2"] <= rep.h_f
    assert rep.h_f_given_set[("x1", "x2")] == pytest.approx(0.25)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1), st.booleans())
def test_identities(n, seed, skewed):
    rng = np.random.default_rng(seed)
    bits = random_bits(rng, n)
    p1 = list(rng.uniform(0.05, 0.95, n)) if skewed else None
    dist = InputDistribution(dict(enumerate(p1))) if skewed else None
    m = BddManager([f"v{i}" for i in range(n)])
    f = m.from_truth_vector(bits_str(bits))
    h = entropy(f, dist)
    assert 0.0 <= h <= 1.0
    for x in range(n):
        cofactor_route = conditional_entropy(f, x, dist)
        assert abs(cofactor_route - conditional_entropy_joint(f, x, dist)) <= 1e-12
        hx = binary_entropy(0.5 if p1 is None else p1[x])
        assert abs(cofactor_route - (joint_entropy(f, x, dist) - hx)) <= 1e-12
        assert cofactor_route <= h + 1e-12
        assert abs(cofactor_route - cond_entropy_set(bits, [x], p1)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_set_conditioning_monotone(n, seed):
    rng = np.random.default_rng(seed)
    bits = random_bits(rng, n)
    m = BddManager([f"v{i}" for i in range(n)])
    f = m.from_truth_vector(bits_str(bits))
    perm = list(rng.permutation(n))
    prev = entropy(f)
    for k in range(1, n + 1):
        cur = conditional_entropy_set(f, perm[:k])
        assert cur <= prev + 1e-12
        assert abs(cur - cond_entropy_set(bits, perm[:k])) <= 1e-12
        prev = cur
    assert prev == 0.0
