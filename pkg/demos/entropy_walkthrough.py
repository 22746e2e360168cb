"""
Entropy of a small Boolean function, step by step
=================================================

A three-input function, its signal probability, its entropy, and the
conditional entropies that decide which variable goes on top of the BDD.
"""

from bddpower import (
    BddManager,
    conditional_entropy,
    conditional_entropy_set,
    conditional_probability,
    entropy,
    info_r_order,
    signal_probability,
)

# f = x1 + x2'x3', written as its truth vector with x1 as the leading bit
m = BddManager(["x1", "x2", "x3"])
f = m.from_truth_vector("10001111")
print("truth vector:", m.truth_vector(f))
print("nodes under <x1 x2 x3>:", m.node_count(f))

# five of the eight rows are ones
print("p(f=1)        =", signal_probability(f))
print("p(f=1 | x2=0) =", conditional_probability(f, "x2", 0))

# entropy in bits; knowing x1 removes most of the uncertainty
print(f"H(f)    = {entropy(f):.4f}")
for x in m.var_names:
    print(f"H(f|{x}) = {conditional_entropy(f, x):.4f}")
print(f"H(f|x1,x2) = {conditional_entropy_set(f, ['x1', 'x2']):.4f}")

# the greedy ordering picks the variable with the smallest remaining entropy
# at every level, conditioning on everything already placed
m.reorder_to(["x3", "x1", "x2"])
out = info_r_order([f])
for level, choice in enumerate(out.per_level_choice, 1):
    scores = "  ".join(f"{x}={s:.4f}" for x, s in choice.scores.items())
    print(f"level {level}: pick {choice.chosen}   ({scores})")
print("order:", " ".join(out.order), " nodes:", out.node_count_before, "->", out.node_count_after)
