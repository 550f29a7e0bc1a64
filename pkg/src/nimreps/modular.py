"""Modular data of rank <= 4, modular invariants and exponents.

T is stored up to a global phase.  Pointed entries are built from a
quadratic form ``q`` on an abelian group::

    S[a, b] = exp(-2 pi i (q(a+b) - q(a) - q(b))) / sqrt(|G|),   T[a] = exp(2 pi i q(a))

The forms used in :func:`catalog`:

=========  =====================  ==========================================
entry      group, object order    q
=========  =====================  ==========================================
semion     Z_2: 0, 1              q(1) = 1/4
Z3         Z_3: 0, 1, 2           q(a) = a^2/3
Z4         Z_4: 0, 2, 1, 3        q(a) = a^2/8
toric      Z_2 x Z_2 (lex order)  q(x, y) = xy/2
D(4,1)     Z_2 x Z_2 (lex order)  q(x, y) = (x^2 + xy + y^2)/2
=========  =====================  ==========================================

A(1,l) data: ``S[i, j] = sqrt(2/(l+2)) sin(pi (i+1)(j+1)/(l+2))`` and
``T[j] = exp(2 pi i j(j+2) / (4(l+2)))``.  The A(1,l)_1/2 entries keep the
even labels and rescale S by sqrt(2).  Non-pointed objects are listed in
order of length (number of summands of ``b*b``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .classify import (group_ring_nimreps, irreducible_nimreps, neargroup_one_orbit,
                       neargroup_to_nimrep, neargroup_two_orbit, su2half_admissible)
from .fusion import (FusionRing, group_ring, ising_ring, length_order, near_group_ring,
                     su2_half_ring, su2_ring)
from .groups import FiniteGroup, cyclic, direct_product
from .nimrep import NimRep, canonical_form, regular

TOL = 1e-9
EIG_TOL = 1e-6


class ModularDataError(ValueError):
    pass


class CommutantTooLarge(RuntimeError):
    pass


class EigenvalueUnmatched(ValueError):
    pass


class InconsistentAcrossLabels(ValueError):
    pass


class RingMismatch(ValueError):
    pass


class BoundWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class ModularData:
    name: str
    S: np.ndarray
    T: np.ndarray
    object_names: tuple[str, ...]
    ring: FusionRing = field(repr=False)
    family: str = "group"
    group: FiniteGroup | None = field(default=None, repr=False)

    def __post_init__(self):
        S, T = self.S, self.T
        r = S.shape[0]
        if S.shape != (r, r) or T.shape != (r,) or len(self.object_names) != r:
            raise ModularDataError(f"{self.name}: inconsistent shapes")
        if not np.allclose(S, S.T, atol=TOL):
            raise ModularDataError(f"{self.name}: S not symmetric")
        if not np.allclose(S @ S.conj().T, np.eye(r), atol=TOL):
            raise ModularDataError(f"{self.name}: S not unitary")
        if not (np.abs(S[0].imag) < TOL).all() or not (S[0].real > TOL).all():
            raise ModularDataError(f"{self.name}: S row 0 not positive")
        if not np.allclose(np.abs(T), 1, atol=TOL):
            raise ModularDataError(f"{self.name}: T not a phase")
        c = self.charge_conjugation
        s2 = S @ S
        if not np.allclose(s2, c, atol=TOL):
            raise ModularDataError(f"{self.name}: S^2 not a permutation")
        st3 = np.linalg.matrix_power(S @ np.diag(T), 3)
        k = np.vdot(s2.ravel(), st3.ravel()) / np.vdot(s2.ravel(), s2.ravel())
        if abs(abs(k) - 1) > TOL or not np.allclose(st3, k * s2, atol=TOL):
            raise ModularDataError(f"{self.name}: (ST)^3 not proportional to S^2")

    @property
    def rank(self) -> int:
        return self.S.shape[0]

    @property
    def charge_conjugation(self) -> np.ndarray:
        return np.rint((self.S @ self.S).real).astype(np.int64)

    def verlinde(self) -> np.ndarray:
        """``N[i, j, k] = sum_b S[i,b] S[j,b] conj(S[k,b]) / S[0,b]`` (complex)."""
        S = self.S
        return np.einsum("ib,jb,kb->ijk", S, S, S.conj() / S[0])

    def verlinde_integral(self) -> np.ndarray:
        v = self.verlinde()
        ints = np.rint(v.real)
        if np.abs(v - ints).max() > EIG_TOL or (ints < 0).any():
            raise RingMismatch(f"{self.name}: Verlinde coefficients not non-negative integers")
        return ints.astype(np.int64)

    def to_dict(self) -> dict:
        return {"name": self.name, "object_names": list(self.object_names),
                "S": [[[z.real, z.imag] for z in row] for row in self.S],
                "T": [[z.real, z.imag] for z in self.T]}


def _pointed(name: str, g: FiniteGroup, order: Sequence[int],
             q: Callable[[int], Fraction]) -> ModularData:
    n = g.order

    def b(x, y):
        return q(g.mul(x, y)) - q(x) - q(y)

    S = np.array([[np.exp(-2j * np.pi * float(b(x, y))) for y in order] for x in order]) / np.sqrt(n)
    T = np.array([np.exp(2j * np.pi * float(q(x))) for x in order])
    ring = group_ring(g).permuted(order)
    names = ("1",) + tuple(f"X{t}" for t in range(1, n))
    return ModularData(name, _clean(S), _clean(T), names, ring, "group", g)


def _clean(z: np.ndarray) -> np.ndarray:
    # snap float noise so exact zeros and signs are exact
    re = np.where(np.abs(z.real) < 1e-15, 0.0, z.real)
    im = np.where(np.abs(z.imag) < 1e-15, 0.0, z.imag)
    return re + 1j * im


def su2_modular_data(l: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(l + 1)
    S = np.sqrt(2 / (l + 2)) * np.sin(np.pi * np.outer(idx + 1, idx + 1) / (l + 2))
    T = np.exp(2j * np.pi * idx * (idx + 2) / (4 * (l + 2)))
    return S.astype(complex), T


def _su2(name: str, l: int) -> ModularData:
    S, T = su2_modular_data(l)
    ring = su2_ring(l)
    order = length_order(ring)
    return ModularData(name, _clean(S[np.ix_(order, order)]), T[order],
                       _object_names(len(order)), ring.permuted(order), "su2")


def _su2_half(name: str, l: int) -> ModularData:
    S, T = su2_modular_data(l)
    ring = su2_half_ring(l)
    order = length_order(ring)
    labels = [2 * t for t in order]
    return ModularData(name, _clean(np.sqrt(2) * S[np.ix_(labels, labels)]), T[labels],
                       _object_names(len(order)), ring.permuted(order), "su2half")


def _object_names(r: int) -> tuple[str, ...]:
    return ("1",) + tuple(f"X{t}" for t in range(1, r))


def _ising() -> ModularData:
    r2 = np.sqrt(2)
    S = 0.5 * np.array([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]], dtype=complex)
    T = np.array([1, -1, np.exp(2j * np.pi / 16)])
    return ModularData("Ising", S, T, _object_names(3), ising_ring(), "neargroup", cyclic(2))


def catalog() -> list[ModularData]:
    """The ten unitary modular data of rank <= 4, in table order."""
    z22 = direct_product(2, 2)

    def toric_q(x):
        a, b = (int(v) for v in z22.names[x].strip("()").split(","))
        return Fraction(a * b, 2)

    def d41_q(x):
        a, b = (int(v) for v in z22.names[x].strip("()").split(","))
        return Fraction(a * a + a * b + b * b, 2)

    return [
        _pointed("Semion", cyclic(2), [0, 1], lambda a: Fraction(a * a, 4)),
        _su2_half("Fibonacci", 3),
        _pointed("Z3", cyclic(3), [0, 1, 2], lambda a: Fraction(a * a, 3)),
        _ising(),
        _su2("A(1,2)", 2),
        _su2_half("A(1,5)_1/2", 5),
        _pointed("Z4", cyclic(4), [0, 2, 1, 3], lambda a: Fraction(a * a, 8)),
        _pointed("Toric", z22, [0, 1, 2, 3], toric_q),
        _pointed("D(4,1)", z22, [0, 1, 2, 3], d41_q),
        _su2_half("A(1,7)_1/2", 7),
    ]


def get(name: str) -> ModularData:
    for md in catalog():
        if md.name.lower() == name.lower():
            return md
    raise KeyError(f"unknown modular data {name!r}; choose from "
                   + ", ".join(m.name for m in catalog()))


# --------------------------------------------------------------------------
# modular invariants

@dataclass(frozen=True, eq=False)
class ModularInvariant:
    Z: np.ndarray

    def __eq__(self, other):
        return isinstance(other, ModularInvariant) and np.array_equal(self.Z, other.Z)

    def __hash__(self):
        return hash(self.Z.tobytes())

    def is_identity(self) -> bool:
        return np.array_equal(self.Z, np.eye(len(self.Z), dtype=np.int64))

    def is_permutation(self) -> bool:
        return bool(((self.Z.sum(0) == 1) & (self.Z.sum(1) == 1)).all())

    def describe(self) -> str:
        return "Id" if self.is_identity() else str(self.Z.tolist())


def commutant_basis(md: ModularData) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Allowed entries (T_a = T_b) and a real nullspace basis of Z -> ZS - SZ."""
    r = md.rank
    allowed = [(a, b) for a in range(r) for b in range(r) if abs(md.T[a] - md.T[b]) < TOL]
    cols = []
    for a, b in allowed:
        e = np.zeros((r, r))
        e[a, b] = 1
        d = e @ md.S - md.S @ e
        cols.append(np.concatenate([d.real.ravel(), d.imag.ravel()]))
    A = np.array(cols).T
    return allowed, scipy.linalg.null_space(A, rcond=1e-10)


def modular_invariants(md: ModularData, entry_bound: int = 4,
                       max_dim: int = 16) -> list[ModularInvariant]:
    """All non-negative integer Z with entries <= entry_bound commuting with S and T, Z[0,0]=1.

    Z is determined by its values at a set of pivot entries (one per
    commutant dimension), so enumerating the pivots over [0, bound] is
    exhaustive within the bound.
    """
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    r = md.rank
    allowed, K = commutant_basis(md)
    dim = K.shape[1]
    if dim > max_dim:
        raise CommutantTooLarge(f"{md.name}: commutant dimension {dim} > {max_dim}")
    _, _, piv = scipy.linalg.qr(K.T, pivoting=True)
    piv = np.sort(piv[:dim])
    # columns of B: commutant elements with one pivot entry 1, the others 0
    B = K @ np.linalg.inv(K[piv])
    if np.abs(B).max() > entry_bound + TOL:
        warnings.warn(f"{md.name}: commutant basis entry exceeds bound {entry_bound}",
                      BoundWarning, stacklevel=2)
    grid = np.array(list(product(range(entry_bound + 1), repeat=dim)), dtype=float)
    vals = grid @ B.T
    ints = np.rint(vals)
    ok = (np.abs(vals - ints) < 1e-6).all(axis=1) & (ints >= 0).all(axis=1) \
        & (ints <= entry_bound).all(axis=1)
    zero = allowed.index((0, 0))
    ok &= ints[:, zero] == 1
    out: dict[bytes, ModularInvariant] = {}
    C = md.charge_conjugation
    D = np.diag(md.T)
    for row in ints[ok]:
        Z = np.zeros((r, r), dtype=np.int64)
        for (a, b), v in zip(allowed, row):
            Z[a, b] = int(v)
        if not np.allclose(Z @ md.S, md.S @ Z, atol=TOL) or not np.allclose(Z @ D, D @ Z, atol=TOL):
            continue
        if not np.array_equal(Z @ C, C @ Z):
            continue
        Z.setflags(write=False)
        out.setdefault(Z.tobytes(), ModularInvariant(Z))
    return sorted(out.values(), key=lambda z: tuple(z.Z.ravel()))


# --------------------------------------------------------------------------
# exponents

@dataclass(frozen=True)
class ExponentMultiset:
    mult: tuple[int, ...]

    @property
    def flagged(self) -> bool:
        return any(m > 1 for m in self.mult)

    def format(self, names: Sequence[str]) -> str:
        return "(" + ", ".join(f"{n}^{m}" for n, m in zip(names, self.mult)) + ")"


def exponent_of_invariant(z: ModularInvariant) -> ExponentMultiset:
    return ExponentMultiset(tuple(int(v) for v in np.diag(z.Z)))


def _weights(r: int) -> np.ndarray:
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    return np.sqrt(np.array(primes[:r], dtype=float))


def _match(values, targets, tol):
    """Greedy nearest-target matching; returns target index per value or raises."""
    out = []
    for v in values:
        d = np.abs(targets - v)
        b = int(np.argmin(d))
        if d[b] > tol:
            raise EigenvalueUnmatched(v)
        close = np.nonzero(d <= 2 * tol)[0]
        if len(close) > 1:
            raise EigenvalueUnmatched(f"{v} is ambiguous between targets {close.tolist()}")
        out.append(b)
    return out


def exponent_of_nimrep(md: ModularData, n: NimRep, tol: float = EIG_TOL) -> ExponentMultiset:
    """Multiplicity of each column b of S among the joint eigenvalues of the N_a.

    The N_a commute and are normal, so they share an eigenbasis on which
    N_a acts by S[a,b]/S[0,b].  A generic combination sum_a w_a N_a
    separates the columns; each label is then checked separately.
    """
    if n.ring.rank != md.rank or not np.array_equal(md.verlinde_integral(), n.ring.coeffs):
        raise RingMismatch(f"NIM-rep ring does not match {md.name}")
    ratios = md.S / md.S[0]  # ratios[a, b] = S[a,b]/S[0,b]
    w = _weights(md.rank)
    W = np.einsum("a,akl->kl", w, n.mats.astype(float))
    eig = np.linalg.eigvals(W)
    idx = _match(eig, w @ ratios, tol)
    mult = np.bincount(idx, minlength=md.rank)
    for a in range(md.rank):
        want = list(np.repeat(ratios[a], mult))
        for v in np.linalg.eigvals(n.mats[a].astype(float)):
            d = [abs(v - t) for t in want]
            k = int(np.argmin(d)) if d else -1
            if k < 0 or d[k] > tol:
                raise InconsistentAcrossLabels(
                    f"{md.object_names[a]}: eigenvalue {v} does not fit exponent {mult.tolist()}")
            want.pop(k)
    return ExponentMultiset(tuple(int(m) for m in mult))


# --------------------------------------------------------------------------
# NIM-reps per modular data and the conjecture report

def nimreps_for(md: ModularData, max_dim: int | None = None) -> list[NimRep]:
    """Family classification plus irreducible brute-force results, deduplicated."""
    ring = md.ring
    fam: list[NimRep] = []
    if md.family == "group":
        order = _group_order(md)
        for _, n in group_ring_nimreps(md.group):
            fam.append(NimRep(ring, n.mats[order], n.basis_names))
    elif md.family == "neargroup":
        sols = neargroup_one_orbit(md.group, 0) + neargroup_two_orbit(md.group, 0)
        fam += [neargroup_to_nimrep(s, ring) for s in sols]
    elif md.family == "su2half":
        l = 2 * md.rank - 1
        base = su2half_admissible(l)
        order = length_order(base.ring)
        fam.append(NimRep(ring, base.mats[order][:, order][:, :, order],
                          tuple(base.basis_names[t] for t in order)))
    else:
        fam.append(regular(ring))
    brute = irreducible_nimreps(ring, max_dim or md.rank)
    out: dict[bytes, NimRep] = {}
    for n in fam + brute:
        out.setdefault(canonical_form(n)[0], n)
    return sorted(out.values(), key=lambda n: (-n.dim, n.key()))


def _group_order(md: ModularData) -> list[int]:
    g = md.group
    for perm in _orders(g):
        if group_ring(g).permuted(perm) == md.ring:
            return perm
    raise RingMismatch(md.name)


def _orders(g):
    from itertools import permutations
    rest = [x for x in range(g.order) if x != g.identity]
    for p in permutations(rest):
        yield [g.identity, *p]


@dataclass(frozen=True)
class MatchReport:
    mtc: ModularData
    pairs: tuple[tuple[ModularInvariant, NimRep, ExponentMultiset], ...]
    orphan_invariants: tuple[tuple[ModularInvariant, ExponentMultiset, NimRep | None], ...]
    orphan_nimreps: tuple[tuple[NimRep, ExponentMultiset], ...]
    n_invariants: int
    n_nimreps: int

    @property
    def perfect(self) -> bool:
        return not self.orphan_invariants and not self.orphan_nimreps

    @property
    def flagged(self) -> bool:
        return any(e.flagged for *_, e in self.pairs) or any(e.flagged for _, e in self.orphan_nimreps)

    def text(self) -> str:
        names = self.mtc.object_names
        lines = [f"{self.mtc.name}: {self.n_invariants} invariants, {self.n_nimreps} NIM-reps"]
        for z, n, e in self.pairs:
            lines.append(f"  {z.describe():<40} {e.format(names):<28} || "
                         f"{_nim_str(n):<40} {e.format(names)}")
        for z, e, shared in self.orphan_invariants:
            note = "--" if shared is None else f"-- (shares {_nim_str(shared)})"
            lines.append(f"  {z.describe():<40} {e.format(names):<28} || {note}")
        for n, e in self.orphan_nimreps:
            lines.append(f"  {'--':<40} {'':<28} || {_nim_str(n):<40} {e.format(names)}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        def nim(n):
            return {"dim": n.dim, "mats": {self.mtc.object_names[i]: n.mats[i].tolist()
                                           for i in range(self.mtc.rank) if i != n.ring.unit}}
        return {
            "schema": 1, "mtc": self.mtc.name, "object_names": list(self.mtc.object_names),
            "n_invariants": self.n_invariants, "n_nimreps": self.n_nimreps,
            "perfect": self.perfect,
            "pairs": [{"invariant": z.Z.tolist(), "nimrep": nim(n), "exponent": list(e.mult)}
                      for z, n, e in self.pairs],
            "orphan_invariants": [{"invariant": z.Z.tolist(), "exponent": list(e.mult),
                                   "shares": None if s is None else nim(s)}
                                  for z, e, s in self.orphan_invariants],
            "orphan_nimreps": [{"nimrep": nim(n), "exponent": list(e.mult)}
                               for n, e in self.orphan_nimreps],
        }


def _nim_str(n: NimRep) -> str:
    if n.dim == 1:
        return "all -> (1)"
    return f"dim {n.dim}"


def conjecture_report(md: ModularData, invariants=None, nimreps=None) -> MatchReport:
    """Pair invariants and NIM-reps with equal exponents.

    Within one exponent class invariants are taken in descending
    lexicographic order; surplus invariants are orphans that share the
    class's NIM-rep when there is one.
    """
    invariants = modular_invariants(md) if invariants is None else list(invariants)
    nimreps = nimreps_for(md) if nimreps is None else list(nimreps)
    inv_cls: dict[tuple, list] = {}
    for z in sorted(invariants, key=lambda z: tuple(z.Z.ravel()), reverse=True):
        inv_cls.setdefault(exponent_of_invariant(z).mult, []).append(z)
    nim_cls: dict[tuple, list] = {}
    for n in nimreps:
        nim_cls.setdefault(exponent_of_nimrep(md, n).mult, []).append(n)
    pairs, orph_i, orph_n = [], [], []
    for key in sorted(set(inv_cls) | set(nim_cls), reverse=True):
        zs, ns = inv_cls.get(key, []), nim_cls.get(key, [])
        e = ExponentMultiset(key)
        k = min(len(zs), len(ns))
        pairs += [(z, n, e) for z, n in zip(zs[:k], ns[:k])]
        orph_i += [(z, e, ns[0] if ns else None) for z in zs[k:]]
        orph_n += [(n, e) for n in ns[k:]]
    return MatchReport(md, tuple(pairs), tuple(orph_i), tuple(orph_n),
                       len(invariants), len(nimreps))
