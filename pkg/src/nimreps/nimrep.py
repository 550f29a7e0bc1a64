"""NIM-reps: one non-negative integer matrix per fusion-ring basis element.

Matrix convention, used everywhere in this package::

    N[i][l, k] = multiplicity of m_k in b_i |> m_l

so row ``l`` of ``N[i]`` is the vector ``b_i |> m_l``.  Acting with ``b_j``
and then ``b_i`` multiplies rows by ``N[j] @ N[i]``, and the module axiom
reads ``N[j] @ N[i] == sum_k c_{ij}^k N[k]``.  Rigidity is
``N[dual(i)] == N[i].T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .fusion import FusionRing, perron_frobenius


class NimRepError(ValueError):
    pass


class ModuleAxiomFail(NimRepError):
    pass


class RigidityFail(NimRepError):
    pass


class ZeroAction(NimRepError):
    pass


class BadUnit(NimRepError):
    pass


@dataclass(frozen=True, eq=False)
class NimRep:
    ring: FusionRing
    mats: np.ndarray  # shape (rank, dim, dim)
    basis_names: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.mats.shape[1]

    def __getitem__(self, i: int) -> np.ndarray:
        return self.mats[i]

    def matrix(self, name: str) -> np.ndarray:
        return self.mats[self.ring.index(name)]

    def act(self, i: int, l: int) -> dict[str, int]:
        """``b_i |> m_l`` as a dict of basis names to multiplicities."""
        return {self.basis_names[k]: int(v) for k, v in enumerate(self.mats[i, l]) if v}

    def permuted(self, perm: Sequence[int]) -> "NimRep":
        """Reorder the basis: new element ``t`` is old element ``perm[t]``."""
        p = np.asarray(perm)
        return NimRep(self.ring, _frozen(self.mats[:, p][:, :, p]),
                      tuple(self.basis_names[t] for t in p))

    def key(self) -> bytes:
        return self.mats.astype(np.int64).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NimRep):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.mats, other.mats)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"NimRep(dim={self.dim}, rank={self.ring.rank})"

    def to_dict(self) -> dict:
        return {"ring": self.ring.to_dict(), "dim": self.dim,
                "basis_names": list(self.basis_names), "mats": self.mats.tolist()}


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def verify(ring: FusionRing, mats, basis_names: Sequence[str] | None = None) -> NimRep:
    """Check unit, rigidity, non-zero action and the module axiom."""
    m = np.asarray(mats, dtype=np.int64)
    if m.ndim != 3 or m.shape[0] != ring.rank or m.shape[1] != m.shape[2] or m.shape[1] == 0:
        raise NimRepError(f"expected shape (rank={ring.rank}, d, d), got {m.shape}")
    if (m < 0).any():
        raise NimRepError("NIM-rep matrices must be non-negative")
    d = m.shape[1]
    if not np.array_equal(m[ring.unit], np.eye(d, dtype=np.int64)):
        raise BadUnit("unit must act as the identity matrix")
    for i in range(ring.rank):
        if not np.array_equal(m[ring.dual[i]], m[i].T):
            raise RigidityFail(f"N[{ring.names[ring.dual[i]]}] != N[{ring.names[i]}]^T")
    for i in range(ring.rank):
        if not m[i].any():
            raise ZeroAction(f"{ring.names[i]} acts as zero")
    bad = _axiom_failure(ring.coeffs, m)
    if bad is not None:
        i, j = bad
        raise ModuleAxiomFail(f"b_{ring.names[i]} b_{ring.names[j]} acts incorrectly")
    if basis_names is None:
        basis_names = [f"m{t}" for t in range(d)]
    if len(basis_names) != d:
        raise NimRepError("basis_names must have one entry per basis element")
    return NimRep(ring, _frozen(m), tuple(basis_names))


def _axiom_failure(c: np.ndarray, m: np.ndarray):
    """First (i, j) with N_j N_i != sum_k c_ij^k N_k, or None."""
    r, d = m.shape[0], m.shape[1]
    if r * r * d * d <= 4_000_000:
        rhs = np.einsum("ijk,kab->ijab", c, m)
        lhs = np.einsum("jab,ibc->ijac", m, m)
        bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
        return tuple(int(x) for x in bad[0]) if len(bad) else None
    # per j: N_j [N_0 | ... | N_{r-1}] against [sum_k c_ij^k N_k]_i, all sparse
    row = sparse.csr_matrix(m.transpose(1, 0, 2).reshape(d, r * d))
    eye = sparse.identity(d, dtype=np.int64, format="csr")
    for j in range(r):
        lhs = sparse.csr_matrix(m[j]) @ row
        rhs = row @ sparse.kron(sparse.csr_matrix(c[:, j, :].T), eye, format="csr")
        diff = (lhs - rhs).tocoo()
        diff.eliminate_zeros()
        if diff.nnz:
            return (int(diff.col[0]) // d, j)
    return None


def regular(ring: FusionRing) -> NimRep:
    """The ring acting on itself; basis element ``m_l`` is ``b_l``."""
    return verify(ring, ring.coeffs, [f"m_{n}" for n in ring.names])


def trivial_group_action(ring: FusionRing) -> NimRep:
    """Dimension-one NIM-rep with every basis element acting as (1).

    Valid exactly when all basis elements are invertible.
    """
    return verify(ring, np.ones((ring.rank, 1, 1), dtype=np.int64), ["m"])


def support_graph(n: NimRep) -> np.ndarray:
    s = n.mats.sum(axis=0)
    return (s + s.T) > 0


def is_irreducible(n: NimRep) -> bool:
    ncomp, _ = connected_components(support_graph(n), directed=False)
    return ncomp == 1


def components(n: NimRep) -> list[list[int]]:
    """Basis indices of each connected component, ordered by smallest index."""
    _, lab = connected_components(support_graph(n), directed=False)
    groups: dict[int, list[int]] = {}
    for t, c in enumerate(lab):
        groups.setdefault(int(c), []).append(t)
    return sorted(groups.values())


def direct_sum(a: NimRep, b: NimRep) -> NimRep:
    if a.ring != b.ring:
        raise NimRepError("direct sum needs NIM-reps over the same ring")
    r, da, db = a.ring.rank, a.dim, b.dim
    m = np.zeros((r, da + db, da + db), dtype=np.int64)
    m[:, :da, :da] = a.mats
    m[:, da:, da:] = b.mats
    names = [f"{x}.1" for x in a.basis_names] + [f"{x}.2" for x in b.basis_names]
    return NimRep(a.ring, _frozen(m), tuple(names))


def _signatures(n: NimRep) -> list[tuple]:
    diag = np.einsum("iaa->ia", n.mats)
    rows = n.mats.sum(axis=2)
    return [tuple(diag[:, t]) + tuple(rows[:, t]) for t in range(n.dim)]


def are_equivalent(a: NimRep, b: NimRep) -> list[int] | None:
    """Basis bijection ``p`` with ``b[i][p[l], p[k]] == a[i][l, k]``, or None.

    Backtracking over images of ``a``'s basis in order, restricted to
    targets with the same per-label (self-loop, row sum) signature.
    """
    if a.ring != b.ring or a.dim != b.dim:
        return None
    d = a.dim
    sa, sb = _signatures(a), _signatures(b)
    if sorted(sa) != sorted(sb):
        return None
    A, B = a.mats, b.mats
    p = [-1] * d
    used = [False] * d

    def extend(l: int) -> bool:
        if l == d:
            return True
        for t in range(d):
            if used[t] or sb[t] != sa[l]:
                continue
            ok = True
            for k in range(l):
                if (A[:, l, k] != B[:, t, p[k]]).any() or (A[:, k, l] != B[:, p[k], t]).any():
                    ok = False
                    break
            if ok:
                p[l], used[t] = t, True
                if extend(l + 1):
                    return True
                used[t] = False
        p[l] = -1
        return False

    return list(p) if extend(0) else None


def _refine(mats: np.ndarray, colors: list) -> list[int]:
    """Colour refinement on the labelled multigraph; returns canonical ranks."""
    d = mats.shape[1]
    cur = _rank(colors)
    while True:
        sig = []
        for l in range(d):
            out = sorted((i, int(mats[i, l, k]), cur[k]) for i, k in zip(*np.nonzero(mats[:, l, :])))
            inc = sorted((i, int(mats[i, k, l]), cur[k]) for i, k in zip(*np.nonzero(mats[:, :, l])))
            sig.append((cur[l], tuple(out), tuple(inc)))
        new = _rank(sig)
        if len(set(new)) == len(set(cur)):
            return new
        cur = new


def _rank(values: list) -> list[int]:
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def canonical_form(n: NimRep) -> tuple[bytes, list[int]]:
    """Canonical key and the basis order that realises it.

    Individualise-and-refine: the key is the least matrix tuple over all
    leaves of the search tree, which is invariant under basis relabelling.
    Two NIM-reps over the same ring are equivalent iff their keys agree.
    """
    mats = n.mats
    d = n.dim
    diag = np.einsum("iaa->ai", mats)
    start = [tuple(int(x) for x in diag[t]) for t in range(d)]
    best: list = [None, None]

    def search(colors: list[int]):
        if len(set(colors)) == d:
            perm = sorted(range(d), key=lambda t: colors[t])
            key = mats[:, perm][:, :, perm].tobytes()
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, perm
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        for v in range(d):
            if colors[v] != target:
                continue
            indiv = [(c, 0 if t == v else 1) for t, c in enumerate(colors)]
            search(_refine(mats, indiv))

    search(_refine(mats, start))
    return best[0], best[1]


def canonical(n: NimRep) -> NimRep:
    return n.permuted(canonical_form(n)[1])


def dedup(reps: Sequence[NimRep]) -> list[NimRep]:
    """Keep the first representative of each equivalence class."""
    seen: set[bytes] = set()
    out = []
    for r in reps:
        k = canonical_form(r)[0]
        if k not in seen:
            seen.add(k)
            out.append(r)
    return out


def pf_eigenvalues(n: NimRep) -> np.ndarray:
    return np.array([perron_frobenius(n.mats[i])[0] for i in range(n.ring.rank)])


@dataclass(frozen=True)
class NimGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[int, int, int, int], ...]  # (source, target, label, multiplicity)


def nim_graph(n: NimRep) -> NimGraph:
    edges = []
    for i in range(n.ring.rank):
        if i == n.ring.unit:
            continue
        for l, k in zip(*np.nonzero(n.mats[i])):
            edges.append((int(l), int(k), i, int(n.mats[i, l, k])))
    return NimGraph(n.basis_names, tuple(edges))


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(n: NimRep, name: str = "nimrep") -> str:
    """Graphviz digraph of the NIM-graph.

    One edge per unit of multiplicity; unit self-loops omitted.  For a
    self-dual label the arrows l->k and k->l always come in pairs and are
    drawn as one ``dir=both`` edge.
    """
    ring = n.ring
    lines = [f"digraph {_quote(name)} {{"]
    for t, node in enumerate(n.basis_names):
        lines.append(f"  n{t} [label={_quote(node)}];")
    for i in range(ring.rank):
        if i == ring.unit:
            continue
        label = _quote(ring.names[i])
        m = n.mats[i]
        selfdual = ring.dual[i] == i
        for l in range(n.dim):
            for k in range(n.dim):
                mult = int(m[l, k])
                if not mult:
                    continue
                if selfdual and k < l:
                    continue
                attrs = f"label={label}"
                if selfdual and k != l:
                    attrs += ", dir=both"
                for _ in range(mult):
                    lines.append(f"  n{l} -> n{k} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
