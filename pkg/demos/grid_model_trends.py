"""Demand sweep on a grid with a congested central corridor.

The original route follows the fast corridor across a 10x10 block grid.
As demand grows, the user equilibrium's overall travel time approaches the
system optimum while the linear model keeps over-assigning traffic to the
alternative, so its relative cost stays visibly above 1.
"""
import saproute as sr
from saproute.synthetic import corridor_instance

DEMANDS = [100, 500, 1000, 1500, 2000, 2500, 3000]
MODELS = ["so", "ue", "linear:1"]

print(f"{'demand':>7} | {'so cost/agent':>14} {'ue/so':>8} {'lin/so':>8} | "
      f"{'usage so':>9} {'usage ue':>9} {'usage lin':>10}")
for d in DEMANDS:
    net, route = corridor_instance(10, 10, float(d), seed=1)
    sols = {}
    for spec in MODELS:
        inst = sr.SapInstance(net, route, sr.parse_model(spec), "sap")
        sols[spec] = sr.solve_sap(inst)
    so = sols["so"].cost
    print(f"{d:>7} | {so / d:>14.2f} {sols['ue'].cost / so:>8.4f} "
          f"{sols['linear:1'].cost / so:>8.4f} | "
          f"{sols['so'].x / d:>9.3f} {sols['ue'].x / d:>9.3f} "
          f"{sols['linear:1'].x / d:>10.3f}")

print()
print("Below roughly 400 units the corridor still beats any detour and all")
print("models keep everyone on the original route; past that point the")
print("equilibrium tracks the optimum ever closer while the linear model's")
print("usage overshoot keeps its ratio above one.")
