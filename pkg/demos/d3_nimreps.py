"""
NIM-reps of the group ring of D_3
=================================

A NIM-rep of a group ring is a transitive permutation action, so the
classification reduces to subgroups up to conjugacy.
"""

from nimreps import (builtin_group, conjugacy_classes_of_subgroups, group_ring,
                     group_ring_nimreps, irreducible_nimreps, canonical_form)
from nimreps.nimrep import to_dot

g = builtin_group("D_3")
print(g, "elements:", g.names)

# %%
# Four conjugacy classes of subgroups: trivial, a reflection, the rotations, everything.
for h, size in conjugacy_classes_of_subgroups(g):
    print(f"  |H| = {h.order}  class size {size}  H = {h.names()}")

# %%
# Each class gives one NIM-rep on the cosets G/H.
reps = group_ring_nimreps(g)
for spec, n in reps:
    print(f"{spec.describe():>22}  dim {n.dim}")

# %%
# Nothing is missed: an exhaustive search up to dimension 6 finds the same four.
brute = irreducible_nimreps(group_ring(g), 6)
same = sorted(canonical_form(n)[0] for n in brute) == sorted(canonical_form(n)[0] for _, n in reps)
print("brute force agrees:", same)

# %%
# The three-element coset space as a graph, ready for `dot -Tsvg`.
print(to_dot(next(n for _, n in reps if n.dim == 3), "D3_on_cosets"))
