"""Fusion rings as explicit structure-constant tensors.

``coeffs[i, j, k]`` is the multiplicity of ``b_k`` in ``b_i b_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .groups import FiniteGroup


class FusionError(ValueError):
    pass


class NotAssociative(FusionError):
    pass


class BadUnit(FusionError):
    pass


class BadDual(FusionError):
    pass


class RigidityViolation(FusionError):
    pass


class NotClosed(FusionError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class FusionRing:
    names: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    coeffs: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.names)

    def left_matrix(self, i: int) -> np.ndarray:
        """``L[l, k] = c_{i l}^k``: left multiplication by ``b_i`` in row convention."""
        return self.coeffs[i]

    def product(self, i: int, j: int) -> dict[str, int]:
        return {self.names[k]: int(c) for k, c in enumerate(self.coeffs[i, j]) if c}

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.coeffs, self.coeffs.transpose(1, 0, 2)))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def permuted(self, order: Sequence[int]) -> "FusionRing":
        """Relabel so that new basis element ``t`` is old element ``order[t]``."""
        order = list(order)
        pos = {old: new for new, old in enumerate(order)}
        c = self.coeffs[np.ix_(order, order, order)]
        return ring_from_tensor([self.names[o] for o in order], pos[self.unit],
                                [pos[self.dual[o]] for o in order], c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.unit == other.unit and self.dual == other.dual
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.unit, self.dual, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"FusionRing(rank={self.rank}, names={list(self.names)})"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "names": list(self.names), "unit": self.unit,
                "dual": list(self.dual), "coeffs": self.coeffs.tolist()}


def ring_from_tensor(names: Sequence[str], unit: int, dual: Sequence[int],
                     coeffs) -> FusionRing:
    """Validate unit, duality, Frobenius reciprocity and associativity.

    Each failure reports the first offending index tuple.
    """
    c = np.asarray(coeffs, dtype=np.int64)
    n = len(names)
    if c.shape != (n, n, n):
        raise FusionError(f"coeffs must have shape {(n, n, n)}, got {c.shape}")
    if (c < 0).any():
        raise FusionError("fusion coefficients must be non-negative")
    dual = tuple(int(d) for d in dual)
    if not 0 <= unit < n:
        raise BadUnit(f"unit index {unit} out of range")
    eye = np.eye(n, dtype=np.int64)
    if not (np.array_equal(c[unit], eye) and np.array_equal(c[:, unit, :], eye)):
        bad = np.argwhere((c[unit] != eye) | (c[:, unit, :] != eye))[0]
        raise BadUnit(f"unit does not act trivially on basis element {int(bad[0])}")
    if len(dual) != n or sorted(dual) != list(range(n)):
        raise BadDual("dual must be a permutation of the basis")
    for i in range(n):
        if dual[dual[i]] != i:
            raise BadDual(f"dual is not an involution at {i}")
    if dual[unit] != unit:
        raise BadDual("unit must be self-dual")
    for i in range(n):
        for j in range(n):
            want = 1 if i == dual[j] else 0
            if c[i, j, unit] != want:
                raise RigidityViolation(
                    f"c[{names[i]},{names[j]}]^unit = {c[i, j, unit]}, expected {want}")
    d = np.array(dual)
    # c_{ij}^k = c_{i* k}^j = c_{k j*}^i
    a = c.transpose(0, 2, 1)[d]        # a[i, j, k] = c[d[i], k, j]
    b = c[:, d, :].transpose(2, 1, 0)  # b[i, j, k] = c[k, d[j], i]
    for other in (a, b):
        diff = np.argwhere(c != other)
        if len(diff):
            i, j, k = (int(x) for x in diff[0])
            raise RigidityViolation(f"Frobenius reciprocity fails at ({i},{j},{k})")
    bad = _associativity_failure(c)
    if bad is not None:
        raise NotAssociative(f"associativity fails at (i,j,k,l)={bad}")
    c.setflags(write=False)
    return FusionRing(tuple(names), int(unit), dual, c)


def _associativity_failure(c: np.ndarray):
    """First (i,j,k,l) with ((b_i b_j) b_k) and (b_i (b_j b_k)) differing at b_l, or None."""
    n = c.shape[0]
    if n ** 4 <= 2_000_000:
        lhs = np.einsum("ijm,mkl->ijkl", c, c)
        rhs = np.einsum("jkm,iml->ijkl", c, c)
        diff = np.argwhere(lhs != rhs)
        return tuple(int(x) for x in diff[0]) if len(diff) else None
    # one i at a time with sparse integer products, indices [j, (k,l)]
    after = sparse.csr_matrix(c.reshape(n, n * n))        # [m, (k,l)] = c_mk^l
    pairs = sparse.csr_matrix(c.reshape(n * n, n))        # [(j,k), m] = c_jk^m
    for i in range(n):
        ci = sparse.csr_matrix(c[i])
        lhs = ci @ after
        rhs = (pairs @ ci).tocoo().reshape((n, n * n))
        diff = (lhs - rhs).tocoo()
        diff.eliminate_zeros()
        if diff.nnz:
            j, kl = int(diff.row[0]), int(diff.col[0])
            return (i, j, kl // n, kl % n)
    return None


def group_ring(g: FiniteGroup) -> FusionRing:
    n = g.order
    c = np.zeros((n, n, n), dtype=np.int64)
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    c[i, j, g.table] = 1
    return ring_from_tensor(g.names, g.identity, g.inverses.tolist(), c)


def near_group_ring(g: FiniteGroup, alpha: int) -> FusionRing:
    """K(G, alpha): basis G plus a self-dual X with Xg = gX = X, X^2 = sum(G) + alpha X."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    n = g.order
    x = n
    c = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    c[i, j, g.table] = 1
    c[:n, x, x] = 1
    c[x, :n, x] = 1
    c[x, x, :n] = 1
    c[x, x, x] = alpha
    dual = g.inverses.tolist() + [x]
    return ring_from_tensor(list(g.names) + ["X"], g.identity, dual, c)


def ising_ring() -> FusionRing:
    """Ising rules X^2 = 1 + Y, Y^2 = 1, XY = YX = X, basis ordered (1, Y, X)."""
    c = np.zeros((3, 3, 3), dtype=np.int64)
    one, y, x = 0, 1, 2
    for a in range(3):
        c[one, a, a] = c[a, one, a] = 1
    c[y, y, one] = 1
    c[x, y, x] = c[y, x, x] = 1
    c[x, x, one] = c[x, x, y] = 1
    return ring_from_tensor(["1", "Y", "X"], one, [0, 1, 2], c)


def su2_coefficient(l: int, i: int, j: int, k: int) -> int:
    if abs(i - j) <= k <= min(i + j, 2 * l - i - j) and (i + j - k) % 2 == 0:
        return 1
    return 0


def su2_ring(l: int) -> FusionRing:
    """Level-l SU(2) fusion rules on V_0..V_l (truncated Clebsch-Gordan)."""
    if l < 1:
        raise ValueError("level must be >= 1")
    r = np.arange(l + 1)
    i, j, k = np.meshgrid(r, r, r, indexing="ij")
    c = ((np.abs(i - j) <= k) & (k <= np.minimum(i + j, 2 * l - i - j))
         & ((i + j + k) % 2 == 0)).astype(np.int64)
    return ring_from_tensor([f"V{a}" for a in r], 0, list(r), c)


def su2_half_ring(l: int) -> FusionRing:
    """Subring on the even labels V_0, V_2, ..., V_{l-1} of :func:`su2_ring` (l odd)."""
    if l < 3 or l % 2 == 0:
        raise ValueError("su2_half_ring needs odd l >= 3")
    full = su2_ring(l)
    even = list(range(0, l, 2))
    odd = list(range(1, l + 1, 2))
    sub = full.coeffs[np.ix_(even, even, odd)]
    if sub.any():
        raise NotClosed("even labels do not close under fusion")
    c = full.coeffs[np.ix_(even, even, even)]
    return ring_from_tensor([f"V{a}" for a in even], 0, list(range(len(even))), c)


def length(ring: FusionRing, i: int) -> int:
    """Number of simple summands, with multiplicity, of ``b_i * b_i``."""
    return int(ring.coeffs[i, i].sum())


def length_order(ring: FusionRing) -> list[int]:
    """Basis indices sorted by (length, index)."""
    return sorted(range(ring.rank), key=lambda i: (length(ring, i), i))


@dataclass(frozen=True, eq=False)
class FPDimVector:
    dims: np.ndarray
    tol: float

    def __getitem__(self, i):
        return self.dims[i]

    def __len__(self):
        return len(self.dims)


def perron_frobenius(m: np.ndarray, tol: float = 1e-9, max_iter: int = 100_000) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a non-negative matrix by shifted power iteration.

    Iterates on ``m + I`` so periodic (e.g. permutation) matrices converge;
    stops when the Collatz-Wielandt bounds agree to ``tol``.
    """
    a = np.asarray(m, dtype=float) + np.eye(m.shape[0])
    v = np.ones(m.shape[0])
    for _ in range(max_iter):
        w = a @ v
        pos = v > 0
        ratios = w[pos] / v[pos]
        lo, hi = ratios.min(), ratios.max()
        v = w / np.linalg.norm(w)
        if hi - lo <= tol * max(1.0, hi):
            return 0.5 * (lo + hi) - 1.0, v
    raise NoConvergence(f"power iteration did not converge in {max_iter} steps")


def fp_dims(ring: FusionRing, tol: float = 1e-9, max_iter: int = 100_000) -> FPDimVector:
    dims = np.array([perron_frobenius(ring.left_matrix(i), tol, max_iter)[0]
                     for i in range(ring.rank)])
    dims[ring.unit] = 1.0
    return FPDimVector(dims, tol)
