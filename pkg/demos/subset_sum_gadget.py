"""Why the problem is hard: a subset-sum instance as a routing network.

For values M and target w, the chain network has two parallel edges per
value (cost m*x to "take" it, constant m to "skip" it) and a direct
original route costing s*x + s with s = sum(M).  Under the all-or-nothing
model that accepts exactly the alternatives with cost w*x + (s - w), the
solver's overall travel time drops strictly below 6s precisely when some
subset of M sums to w.
"""
import random

import saproute as sr

for m_values, w in [([1, 2], 3), ([2, 4], 3), ([3, 5, 9, 11], 17)]:
    g = sr.build_gadget(m_values, w)
    sol = sr.solve_sap(sr.SapInstance(g.net, g.route, g.model, "sap"))
    verdict = "yes" if sol.cost < 6 * g.total else "no"
    taken = [int(g.net.edges[e].cost.slope) for e in sol.path.edge_ids
             if g.net.edges[e].cost.base == 0]
    print(f"M={m_values} w={w}: overall time {sol.cost:g} "
          f"(threshold {6 * g.total}) -> {verdict}-instance"
          + (f", chosen items {taken}" if verdict == "yes" else ""))

print()
print("cross-checking the routing answer against direct subset enumeration:")
rng = random.Random(1)
agreements = 0
for _ in range(25):
    size = rng.randint(2, 10)
    m_values = [rng.randint(1, 25) for _ in range(size)]
    w = rng.randint(1, sum(m_values))
    g = sr.build_gadget(m_values, w)
    sol = sr.solve_sap(sr.SapInstance(g.net, g.route, g.model, "sap"))
    assert (sol.cost < 6 * g.total) == sr.subsetsum_brute(m_values, w)
    agreements += 1
print(f"{agreements}/25 random instances agree with brute-force subset search")
