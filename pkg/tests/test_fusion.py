import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nimreps.fusion import (BadDual, BadUnit, NotAssociative, RigidityViolation,
                            _associativity_failure, fp_dims, group_ring, ising_ring, length,
                            length_order, near_group_ring, perron_frobenius, ring_from_tensor,
                            su2_coefficient, su2_half_ring, su2_ring)
from nimreps.groups import builtin_group, cyclic, dihedral, direct_product
from oracles import associative_by_loops, su2_quantum_dims, su2_verlinde


def constructor_rings():
    rings = [("ising", ising_ring())]
    for s in ["Z_2", "Z_3", "Z_4", "Z_2 x Z_2", "D_3", "D_4"]:
        rings.append((f"group {s}", group_ring(builtin_group(s))))
    for s, a in [("Z_1", 1), ("Z_2", 0), ("Z_2", 1), ("Z_3", 2), ("Z_2 x Z_2", 0), ("Z_4", 3),
                 ("D_3", 0)]:
        rings.append((f"neargroup {s} {a}", near_group_ring(builtin_group(s), a)))
    for l in range(1, 7):
        rings.append((f"su2 {l}", su2_ring(l)))
    for l in (3, 5, 7, 9):
        rings.append((f"su2half {l}", su2_half_ring(l)))
    return rings


@pytest.mark.parametrize("name,ring", constructor_rings(), ids=[n for n, _ in constructor_rings()])
def test_constructor_rings_are_associative_by_loops(name, ring):
    assert associative_by_loops(ring.coeffs.tolist())


def test_ising_rules():
    r = ising_ring()
    one, y, x = range(3)
    assert r.product(x, x) == {"1": 1, "Y": 1}
    assert r.product(y, y) == {"1": 1}
    assert r.product(x, y) == {"X": 1}
    assert np.array_equal(r.coeffs, near_group_ring(cyclic(2), 0).coeffs)


def test_near_group_rules():
    g = cyclic(3)
    r = near_group_ring(g, 2)
    x = 3
    assert r.product(x, x) == {"e": 1, "a": 1, "a^2": 1, "X": 2}
    assert all(r.product(k, x) == {"X": 1} for k in range(3))
    assert r.dual[1] == 2 and r.dual[x] == x


@pytest.mark.parametrize("l", range(1, 9))
def test_su2_coefficients_match_verlinde(l):
    assert np.array_equal(su2_ring(l).coeffs, su2_verlinde(l))
    assert su2_coefficient(l, 1, 1, 2) == (1 if l >= 2 else 0)


@pytest.mark.parametrize("l", range(1, 9))
def test_su2_fp_dims_are_quantum_dims(l):
    assert np.allclose(fp_dims(su2_ring(l)).dims, su2_quantum_dims(l), atol=1e-8)


def test_su2_half_subring_and_lengths():
    r = su2_half_ring(5)
    assert r.names == ("V0", "V2", "V4")
    assert [length(r, i) for i in range(3)] == [1, 3, 2]
    assert length_order(r) == [0, 2, 1]
    assert length_order(su2_half_ring(7)) == [0, 3, 1, 2]
    with pytest.raises(ValueError):
        su2_half_ring(4)


def test_fibonacci_dimension():
    phi = (1 + 5 ** 0.5) / 2
    assert fp_dims(su2_half_ring(3)).dims[1] == pytest.approx(phi, abs=1e-9)


@pytest.mark.parametrize("g", [cyclic(5), dihedral(3), direct_product(2, 2)], ids=lambda g: g.label)
def test_group_rings_have_unit_dimensions(g):
    assert np.allclose(fp_dims(group_ring(g)).dims, 1.0)


def test_near_group_x_dimension():
    # d^2 = |G| + alpha d
    for g, a in [(cyclic(3), 2), (cyclic(2), 0), (direct_product(2, 2), 3)]:
        d = fp_dims(near_group_ring(g, a)).dims[-1]
        assert d * d == pytest.approx(g.order + a * d, abs=1e-7)


def test_perron_frobenius_on_permutation_matrix():
    lam, v = perron_frobenius(np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))
    assert lam == pytest.approx(1.0, abs=1e-9)


def test_validation_errors():
    base = ising_ring()
    c = base.coeffs.copy()
    c[0, 1, 1] = 0
    with pytest.raises(BadUnit):
        ring_from_tensor(base.names, 0, base.dual, c)
    with pytest.raises(BadDual):
        ring_from_tensor(base.names, 0, [1, 0, 2], base.coeffs)
    c = base.coeffs.copy()
    c[1, 2, 1] = 1  # Y X containing Y breaks Frobenius reciprocity
    with pytest.raises(RigidityViolation):
        ring_from_tensor(base.names, 0, base.dual, c)


def test_non_associative_detected():
    # K(Z_2, alpha) rules with X^2 = 1 + Y + X: Frobenius-symmetric but not associative
    c = near_group_ring(cyclic(2), 1).coeffs.copy()
    c[2, 2, 1] = 2
    c[1, 2, 2] = c[2, 1, 2] = 2
    with pytest.raises((NotAssociative, RigidityViolation)):
        ring_from_tensor(["1", "Y", "X"], 0, [0, 1, 2], c)


def test_sparse_associativity_path_agrees():
    # large enough to take the sparse branch
    r = near_group_ring(cyclic(40), 3)
    assert _associativity_failure(r.coeffs) is None
    c = r.coeffs.copy()
    c[5, 40, 40] = 0
    c[5, 40, 6] = 1  # b_5 X = b_6: breaks associativity
    assert _associativity_failure(c) is not None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(constructor_rings()), st.randoms(use_true_random=False))
def test_relabelled_rings_validate(named, rnd):
    _, ring = named
    order = list(range(ring.rank))
    rest = order[1:]
    rnd.shuffle(rest)
    order = [0] + rest
    p = ring.permuted(order)
    assert np.allclose(sorted(fp_dims(p).dims), sorted(fp_dims(ring).dims), atol=1e-8)
    assert p.is_commutative() == ring.is_commutative()


def test_commutativity():
    assert not group_ring(dihedral(3)).is_commutative()
    assert su2_ring(4).is_commutative()
