import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nimreps.groups import (NoIdentity, NotAssociative, NotLatinSquare, Subgroup, UnknownFamily,
                            actions_isomorphic, all_subgroups, builtin_group,
                            conjugacy_classes_of_subgroups, coset_action, cyclic, dihedral,
                            direct_product, group_from_table)
from oracles import conjugacy_classes_by_loops, quaternion_table, subgroups_by_subsets

SMALL = ["Z_1", "Z_2", "Z_3", "Z_4", "Z_5", "Z_6", "Z_7", "Z_8", "Z_2 x Z_2", "Z_2 x Z_4",
         "Z_2 x Z_2 x Z_2", "D_3", "D_4"]


def small_groups():
    gs = [builtin_group(s) for s in SMALL]
    gs.append(group_from_table(quaternion_table(), label="Q_8"))
    return gs


@pytest.mark.parametrize("g", small_groups(), ids=lambda g: g.label or "?")
def test_subgroups_match_subset_oracle(g):
    found = {h.elements for h in all_subgroups(g)}
    assert found == subgroups_by_subsets(g.table.tolist())


@pytest.mark.parametrize("g", small_groups(), ids=lambda g: g.label or "?")
def test_conjugacy_classes_match_oracle(g):
    ours = conjugacy_classes_of_subgroups(g)
    subs = subgroups_by_subsets(g.table.tolist())
    ref = conjugacy_classes_by_loops(g.table.tolist(), subs)
    assert len(ours) == len(ref)
    assert sorted(size for _, size in ours) == sorted(len(c) for c in ref)
    for rep, size in ours:
        cls = next(c for c in ref if rep.elements in c)
        assert rep.elements == min(cls, key=lambda e: (len(e), e))
        assert size == len(cls)


def test_known_class_counts():
    assert len(conjugacy_classes_of_subgroups(dihedral(3))) == 4
    assert len(conjugacy_classes_of_subgroups(direct_product(2, 2))) == 5
    assert len(all_subgroups(dihedral(3))) == 6


def test_dihedral_names_and_relations():
    g = dihedral(3)
    assert g.names == ("e", "a", "a^2", "x", "xa", "xa^2")
    a, x = g.index_of("a"), g.index_of("x")
    assert g.mul(x, a) == g.mul(g.inv(a), x)
    assert g.element_order(a) == 3 and g.element_order(x) == 2
    assert not g.is_abelian()


def test_builtin_specs():
    assert builtin_group("Z_6").order == 6
    assert builtin_group("Z_2 x Z_3").order == 6
    assert builtin_group("D_4").order == 8
    with pytest.raises(UnknownFamily):
        builtin_group("S_3")


def test_validation_errors():
    with pytest.raises(NotLatinSquare):
        group_from_table([[0, 1], [0, 1]])
    with pytest.raises(NoIdentity):
        group_from_table([[0, 2, 1], [2, 1, 0], [1, 0, 2]])  # x*y = -x-y mod 3
    # a Latin square with identity that is not associative (order 5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        group_from_table(loop)


def test_subgroup_validation():
    g = cyclic(4)
    with pytest.raises(ValueError):
        Subgroup(g, (0, 1))
    with pytest.raises(ValueError):
        Subgroup(g, (1, 2))


@pytest.mark.parametrize("g", small_groups(), ids=lambda g: g.label or "?")
def test_coset_actions_are_transitive_actions(g):
    for h, _ in conjugacy_classes_of_subgroups(g):
        ca = coset_action(h)
        assert ca.n_cosets == h.index
        assert ca.is_transitive()
        for x in range(g.order):
            for y in range(g.order):
                # row convention: P(x) P(y) = P(yx)
                assert np.array_equal(ca.permutation_matrix(x) @ ca.permutation_matrix(y),
                                      ca.permutation_matrix(g.mul(y, x)))
        # the stabiliser of the base coset is H
        stab = tuple(x for x in range(g.order) if ca.act[x, 0] == 0)
        assert stab == h.elements


@pytest.mark.parametrize("g", [dihedral(3), dihedral(4), direct_product(2, 2)],
                         ids=lambda g: g.label)
def test_conjugate_subgroups_give_isomorphic_actions(g):
    for h in all_subgroups(g):
        for x in range(g.order):
            assert actions_isomorphic(coset_action(h), coset_action(h.conjugate(x))) is not None
    classes = [h for h, _ in conjugacy_classes_of_subgroups(g)]
    for i, h in enumerate(classes):
        for k in classes[i + 1:]:
            assert actions_isomorphic(coset_action(h), coset_action(k)) is None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(small_groups()), st.randoms(use_true_random=False))
def test_relabelled_tables_have_same_subgroup_structure(g, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    inv = np.argsort(perm)
    # element t of the new group is element perm[t] of the old one
    table = [[int(inv[g.mul(perm[a], perm[b])]) for b in range(g.order)] for a in range(g.order)]
    h = group_from_table(table)
    assert len(all_subgroups(h)) == len(all_subgroups(g))
    assert (sorted((r.order, s) for r, s in conjugacy_classes_of_subgroups(h))
            == sorted((r.order, s) for r, s in conjugacy_classes_of_subgroups(g)))


def test_to_dict_round_trip():
    g = dihedral(3)
    d = g.to_dict()
    assert group_from_table(d["table"], d["names"]) == g
