"""
How the class quality terms respond to size, function count and cohesion
=========================================================================

Each term peaks at its optimum (50 NCLOC, 5 functions, LCOM4 = 1) and falls
off on either side. Run with ``python notebooks/01_quality_curves.py``.
"""

import numpy as np

from modindex import class_quality, cohesion_quality, function_quality, loc_quality

# %% Size: a linear ramp up to 50 NCLOC, then a steep power-law drop
ncloc = np.array([0, 10, 25, 50, 51, 55, 60, 80, 150])
loc_q = np.array([loc_quality(int(n)) for n in ncloc])
for n, q in zip(ncloc, loc_q):
    print(f"NCLOC {n:4d} -> LOC_Q {q:.6f}")

# %% Function count: the ramp ends at 5; note the jump down at 6
for f in range(0, 11):
    print(f"F {f:2d} -> F_Q {function_quality(f):.6f}")

# %% Cohesion: every extra disconnected method group costs a lot
for lcom4 in range(1, 6):
    print(f"LCOM4 {lcom4} -> H_Q {cohesion_quality(lcom4):.6f}")

# %% Cohesion carries half the weight, so a split class is penalized hardest.
# A well-sized class with 7 functions and two method clusters:
q = class_quality(loc_quality(50), function_quality(7), cohesion_quality(2))
print(f"\nc_Q(50 NCLOC, 7 functions, LCOM4 2) = {q:.6f}")

# %% Size alone can cost at most a quarter of class quality
sizes = np.arange(1, 200)
c_q = np.array([class_quality(loc_quality(int(n)), 1.0, 1.0) for n in sizes])
print(f"with perfect F_Q and H_Q, the lowest c_Q over NCLOC 1..199 is {c_q.min():.4f} "
      f"(NCLOC {sizes[c_q.argmin()]})")
