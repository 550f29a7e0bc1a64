import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nimreps.classify import coset_nimrep, group_ring_nimreps, neargroup_two_orbit, neargroup_to_nimrep
from nimreps.fusion import group_ring, ising_ring, near_group_ring, su2_half_ring, su2_ring
from nimreps.groups import all_subgroups, cyclic, dihedral, direct_product
from nimreps.nimrep import (BadUnit, ModuleAxiomFail, RigidityFail, ZeroAction, _axiom_failure,
                            are_equivalent, canonical, canonical_form, components, dedup,
                            direct_sum, is_irreducible, nim_graph, pf_eigenvalues, regular,
                            to_dot, trivial_group_action, verify)
from oracles import equivalent_by_permutations, module_axiom_by_loops


def sample_nimreps():
    reps = [regular(ising_ring()), regular(su2_ring(3)), regular(su2_half_ring(7))]
    reps += [n for _, n in group_ring_nimreps(dihedral(3))]
    reps += [n for _, n in group_ring_nimreps(direct_product(2, 2))]
    reps += [neargroup_to_nimrep(s) for s in neargroup_two_orbit(cyclic(3), 2)]
    return reps


@pytest.mark.parametrize("n", sample_nimreps(), ids=repr)
def test_module_axiom_by_loops(n):
    assert module_axiom_by_loops(n.ring.coeffs.tolist(), n.mats.tolist())


def test_regular_is_ring_tensor():
    r = ising_ring()
    n = regular(r)
    assert np.array_equal(n.mats, r.coeffs)
    assert n.act(2, 2) == {"m_1": 1, "m_Y": 1}


def test_trivial_group_action():
    n = trivial_group_action(group_ring(cyclic(4)))
    assert n.dim == 1
    with pytest.raises(ModuleAxiomFail):
        trivial_group_action(ising_ring())


def test_verify_errors():
    r = ising_ring()
    m = r.coeffs.copy()
    m[0, 0, 0] = 0
    with pytest.raises(BadUnit):
        verify(r, m)
    m = r.coeffs.copy()
    m[1] = np.array([[0, 0, 1], [0, 0, 0], [0, 1, 0]])
    with pytest.raises(RigidityFail):
        verify(r, m)
    with pytest.raises(ZeroAction):
        verify(r, np.stack([np.eye(2, dtype=int), np.zeros((2, 2), int), np.zeros((2, 2), int)]))
    m = r.coeffs.copy()
    m[2] = np.array([[0, 0, 1], [0, 0, 1], [1, 1, 1]])
    with pytest.raises(ModuleAxiomFail):
        verify(r, m)


def test_sparse_axiom_path_agrees():
    g = cyclic(60)
    ring = group_ring(g)
    n = regular(ring)
    assert _axiom_failure(ring.coeffs, n.mats) is None
    m = n.mats.copy()
    m[1], m[2] = n.mats[2].copy(), n.mats[1].copy()
    m[59], m[58] = n.mats[58].copy(), n.mats[59].copy()
    assert _axiom_failure(ring.coeffs, m) is not None


def test_ising_graph_is_triangle_plus_loop():
    n = regular(ising_ring())
    dot = to_dot(n, "ising")
    assert dot.startswith('digraph "ising" {')
    edges = [ln for ln in dot.splitlines() if "->" in ln]
    non_loops = {tuple(sorted((ln.split()[0], ln.split()[2]))) for ln in edges
                 if ln.split()[0] != ln.split()[2]}
    assert non_loops == {("n0", "n1"), ("n0", "n2"), ("n1", "n2")}
    assert all("dir=both" in ln for ln in edges if ln.split()[0] != ln.split()[2])
    # Y fixes m_X, the only self-loop
    loops = [ln for ln in edges if ln.split()[0] == ln.split()[2]]
    assert loops == ['  n2 -> n2 [label="Y"];']
    g = nim_graph(n)
    assert len(g.nodes) == 3


def test_dot_is_deterministic_and_counts_multiplicity():
    sol = next(s for s in neargroup_two_orbit(cyclic(3), 2) if s.C == ((1, 2), (2, 1)))
    n = neargroup_to_nimrep(sol)
    dot = to_dot(n)
    assert dot == to_dot(n)
    x_edges = [ln for ln in dot.splitlines() if 'label="X"' in ln and "->" in ln]
    # one line per multiplicity unit, each unordered pair once
    m = n.mats[3]
    expected = sum(int(m[l, k]) for l in range(n.dim) for k in range(l, n.dim))
    assert len(x_edges) == expected


@pytest.mark.parametrize("n", sample_nimreps(), ids=repr)
def test_equivalence_agrees_with_permutation_oracle(n):
    rng = np.random.default_rng(7)
    perm = rng.permutation(n.dim)
    p = n.permuted(perm)
    if n.dim <= 7:
        assert equivalent_by_permutations(n.mats, p.mats)
    phi = are_equivalent(n, p)
    assert phi is not None
    for i in range(n.ring.rank):
        assert np.array_equal(p.mats[i][np.ix_(phi, phi)], n.mats[i])


def test_inequivalent_coset_reps():
    reps = [n for _, n in group_ring_nimreps(direct_product(2, 2))]
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert are_equivalent(a, b) is None
            if a.dim == b.dim:
                assert not equivalent_by_permutations(a.mats, b.mats)
                assert canonical_form(a)[0] != canonical_form(b)[0]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sample_nimreps()), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(n, rnd):
    perm = list(range(n.dim))
    rnd.shuffle(perm)
    p = n.permuted(perm)
    assert canonical_form(p)[0] == canonical_form(n)[0]
    assert canonical(p) == canonical(n)


def test_canonical_form_of_highly_symmetric_sum():
    n = regular(ising_ring())
    s = direct_sum(direct_sum(n, n), n)
    key, perm = canonical_form(s)
    assert s.permuted(perm).key() == key
    assert len(dedup([s, s.permuted(list(reversed(range(s.dim))))])) == 1


def test_conjugate_subgroups_give_equivalent_nimreps():
    g = dihedral(3)
    subs = [h for h in all_subgroups(g) if h.order == 2]
    reps = [coset_nimrep(h) for h in subs]
    assert len(dedup(reps)) == 1


def test_direct_sum_is_reducible():
    a = regular(ising_ring())
    s = direct_sum(a, a)
    assert not is_irreducible(s)
    assert components(s) == [[0, 1, 2], [3, 4, 5]]
    assert is_irreducible(a)


def test_pf_eigenvalues_of_regular_are_fp_dims():
    n = regular(su2_half_ring(5))
    lam = pf_eigenvalues(n)
    assert lam[0] == pytest.approx(1.0)
    assert sorted(lam) == pytest.approx(sorted([1.0, 1.8019377358, 2.2469796037]), abs=1e-8)


def test_equivalence_rejects_different_rings():
    assert are_equivalent(regular(ising_ring()), regular(su2_ring(2))) is None


def test_to_dict_fields():
    d = regular(ising_ring()).to_dict()
    assert set(d) == {"ring", "dim", "basis_names", "mats"}
    assert d["dim"] == 3


def test_near_group_rep_from_ring_matches_helper():
    ring = near_group_ring(cyclic(2), 0)
    n = regular(ring)
    assert n.ring == ising_ring()
