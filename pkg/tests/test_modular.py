import numpy as np
import pytest

from nimreps.modular import (CommutantTooLarge, ExponentMultiset, ModularDataError,
                             ModularInvariant, RingMismatch, catalog, commutant_basis,
                             conjecture_report, exponent_of_invariant, exponent_of_nimrep, get,
                             modular_invariants, nimreps_for)
from nimreps.nimrep import are_equivalent, regular, trivial_group_action, verify
from nimreps.fusion import ising_ring
from tables import INVARIANT_COUNTS, TABLES, nim_matrices

CATALOG = catalog()
IDS = [md.name for md in CATALOG]


def test_catalog_names():
    assert IDS == ["Semion", "Fibonacci", "Z3", "Ising", "A(1,2)", "A(1,5)_1/2", "Z4", "Toric",
                   "D(4,1)", "A(1,7)_1/2"]


@pytest.mark.parametrize("md", CATALOG, ids=IDS)
def test_verlinde_matches_ring(md):
    assert np.array_equal(md.verlinde_integral(), md.ring.coeffs)


@pytest.mark.parametrize("md", CATALOG, ids=IDS)
def test_invariant_counts_and_matrices(md):
    invs = modular_invariants(md)
    assert len(invs) == INVARIANT_COUNTS[md.name]
    got = sorted(z.Z.tolist() for z in invs)
    want = sorted(row[0] for row in TABLES[md.name] if row[0] is not None)
    assert got == want
    assert any(z.is_identity() for z in invs)


@pytest.mark.parametrize("md", CATALOG, ids=IDS)
def test_table_exponents(md):
    for z, ez, nim, en in TABLES[md.name]:
        if z is not None:
            assert exponent_of_invariant(ModularInvariant(np.array(z))).mult == ez
        if nim is not None:
            n = verify(md.ring, nim_matrices(md.rank, nim))
            assert exponent_of_nimrep(md, n).mult == en


@pytest.mark.parametrize("md", CATALOG, ids=IDS)
def test_table_nimreps_are_found(md):
    ours = nimreps_for(md)
    for _, _, nim, _ in TABLES[md.name]:
        if nim is None:
            continue
        t = verify(md.ring, nim_matrices(md.rank, nim))
        assert any(are_equivalent(t, n) is not None for n in ours)


@pytest.mark.parametrize("md", CATALOG, ids=IDS)
def test_regular_exponent_is_all_ones(md):
    assert exponent_of_nimrep(md, regular(md.ring)).mult == (1,) * md.rank


def test_fibonacci_s_matrix():
    md = get("Fibonacci")
    phi = (1 + 5 ** 0.5) / 2
    want = np.array([[1, phi], [phi, -1]]) / np.sqrt(2 + phi)
    assert np.allclose(md.S, want, atol=1e-12)


def test_ising_and_a12_invariants_agree():
    a, b = get("Ising"), get("A(1,2)")
    assert [z.Z.tolist() for z in modular_invariants(a)] == [z.Z.tolist() for z in modular_invariants(b)]
    assert np.array_equal(a.ring.coeffs, b.ring.coeffs)


def test_toric_and_d41_differ():
    a = {z.Z.tobytes() for z in modular_invariants(get("Toric"))}
    b = {z.Z.tobytes() for z in modular_invariants(get("D(4,1)"))}
    assert a != b


def test_commutant_guard():
    with pytest.raises(CommutantTooLarge):
        modular_invariants(get("Toric"), max_dim=2)
    assert commutant_basis(get("Toric"))[1].shape[1] == 5


def test_entry_bound_argument():
    with pytest.raises(ValueError):
        modular_invariants(get("Z3"), entry_bound=0)
    assert len(modular_invariants(get("Toric"), entry_bound=1)) == 6


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        exponent_of_nimrep(get("Z3"), regular(ising_ring()))


def test_bad_modular_data_rejected():
    md = get("Z3")
    from nimreps.modular import ModularData
    with pytest.raises(ModularDataError):
        ModularData("bad", md.S, np.ones(3, dtype=complex), md.object_names, md.ring)


def test_exponent_multiset_format():
    e = ExponentMultiset((1, 0, 2))
    assert e.flagged
    assert e.format(["1", "X1", "X2"]) == "(1^1, X1^0, X2^2)"


def test_z4_dim_one_exponent():
    md = get("Z4")
    assert exponent_of_nimrep(md, trivial_group_action(md.ring)).mult == (1, 0, 0, 0)


@pytest.mark.parametrize("md", CATALOG, ids=IDS)
def test_conjecture_report(md):
    r = conjecture_report(md)
    if md.name == "Z4":
        assert r.orphan_invariants == ()
        assert [e.mult for _, e in r.orphan_nimreps] == [(1, 0, 0, 0)]
    elif md.name in ("Toric", "D(4,1)"):
        assert r.orphan_nimreps == ()
        assert len(r.orphan_invariants) == 1
        z, e, shared = r.orphan_invariants[0]
        assert e.mult == (1, 0, 0, 0) and shared is not None and shared.dim == 1
        # the orphan is one of the two invariants with this exponent in the table
        tied = [row[0] for row in TABLES[md.name] if row[1] == (1, 0, 0, 0)]
        assert z.Z.tolist() in tied
    elif md.name == "Semion":
        # the dimension-one NIM-rep of Z_2 has exponent (1, 0) and no invariant
        assert r.orphan_invariants == ()
        assert [e.mult for _, e in r.orphan_nimreps] == [(1, 0)]
    else:
        assert r.perfect
    assert not r.flagged
    assert r.text().startswith(md.name)
    assert r.to_dict()["schema"] == 1
