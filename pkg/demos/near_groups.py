"""
Near-group NIM-reps
===================

Over K(G, alpha) the group part of a NIM-rep splits into orbits G/H_i,
and the X-action is a symmetric matrix C of orbit couplings.
"""

from nimreps import (cyclic, neargroup_brute, neargroup_one_orbit, neargroup_to_nimrep,
                     neargroup_two_orbit)
from nimreps.algebra import admissible_base_points, algebra_object
from nimreps.classify import parity_law_holds

# %%
# Ising is K(Z_2, 0): a single NIM-rep, the regular one, with a free orbit and a fixed point.
for s in neargroup_one_orbit(cyclic(2), 0) + neargroup_two_orbit(cyclic(2), 0):
    n = neargroup_to_nimrep(s)
    print("Ising:", s.describe(), "dim", n.dim)
    for m0 in admissible_base_points(n):
        print("   base point", n.basis_names[m0], "algebra", algebra_object(n, m0))

# %%
# Larger groups still have closed forms for one or two orbits.
for order, alpha in [(75, 10), (175, 62)]:
    sols = neargroup_two_orbit(cyclic(order), alpha)
    print(f"K(Z_{order},{alpha}): {len(sols)} two-orbit solutions")
    for s in sols:
        print(f"   |H_i| = {[h.order for h in s.orbits]}  C = {[list(r) for r in s.C]}  dim {s.dim}")

# %%
# Brute force over up to four orbits recovers a four-orbit example for K(Z_3, 2):
# trivial group action and X sending each basis element to the sum of the others.
for s in neargroup_brute(cyclic(3), 2, 4):
    print(f"  p={s.p}  C={[list(r) for r in s.C]}  parity law (iff) holds: {parity_law_holds(s)}")

# %%
# alpha^2 + 4|G| = 16 is a square, yet p = 2 and p = 4 both occur, so only the
# direction "odd p forces a square" survives.
