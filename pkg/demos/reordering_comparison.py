"""
Comparing variable orderings on small circuits
==============================================

The entropy-greedy order against sifting, window permutation and the
exhaustive optimum, scored by node count and estimated power.
"""

import pathlib

from bddpower import compare, random_netlist, read_netlist
from bddpower.report import render

here = pathlib.Path(__file__).resolve().parent
c17 = read_netlist(here.parent / "tests" / "fixtures" / "c17.blif")

table = compare(c17)
print(render("compare", table.to_dict()))

# on c17 the greedy order keeps 11 nodes while the baselines reach 7:
# low conditional entropy near the root does not always mean few nodes below

# a batch of random 5-input circuits, two outputs each
wins = 0
for seed in range(10):
    net = random_netlist(5, 2, 10, seed=seed)
    t = compare(net)
    info, best = t.row("info").total_power_w, t.row("exhaustive").total_power_w
    wins += info <= best * (1 + 1e-12)
    print(f"seed {seed}: info {info * 1e6:7.3f} uW   sift {t.row('sift').total_power_w * 1e6:7.3f} uW"
          f"   optimum {best * 1e6:7.3f} uW")
print(f"info matched the optimum on {wins}/10")
