"""Fusion rings, their NIM-reps, algebra objects and modular invariants."""

from .algebra import AlgebraObject, admissible_base_points, algebra_object
from .classify import (NearGroupSolution, brute_force_nimreps, group_ring_nimreps,
                       irreducible_nimreps, neargroup_brute, neargroup_one_orbit,
                       neargroup_to_nimrep, neargroup_two_orbit, su2half_admissible)
from .fusion import (FusionRing, fp_dims, group_ring, ising_ring, near_group_ring,
                     ring_from_tensor, su2_half_ring, su2_ring)
from .groups import (FiniteGroup, Subgroup, builtin_group, conjugacy_classes_of_subgroups,
                     cyclic, dihedral, direct_product, group_from_table)
from .modular import (ModularData, catalog, conjecture_report, exponent_of_invariant,
                      exponent_of_nimrep, modular_invariants)
from .nimrep import NimRep, are_equivalent, canonical_form, is_irreducible, regular, verify

__all__ = [
    "AlgebraObject", "FiniteGroup", "FusionRing", "ModularData", "NearGroupSolution",
    "NimRep", "Subgroup", "admissible_base_points", "algebra_object", "are_equivalent",
    "brute_force_nimreps", "builtin_group", "canonical_form", "catalog",
    "conjecture_report", "conjugacy_classes_of_subgroups", "cyclic", "dihedral",
    "direct_product", "exponent_of_invariant", "exponent_of_nimrep", "fp_dims",
    "group_from_table", "group_ring", "group_ring_nimreps", "irreducible_nimreps",
    "is_irreducible", "ising_ring", "modular_invariants", "near_group_ring",
    "neargroup_brute", "neargroup_one_orbit", "neargroup_to_nimrep", "neargroup_two_orbit",
    "regular", "ring_from_tensor", "su2_half_ring", "su2_ring", "su2half_admissible", "verify",
]
