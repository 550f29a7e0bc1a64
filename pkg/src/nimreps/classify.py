"""Classification of NIM-reps for group, near-group and A(1,l)_1/2 rings.

Besides the family-specific constructions this module holds a generic
exhaustive search (:func:`brute_force_nimreps`) used as an independent
oracle for all of them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import NamedTuple

import numpy as np

from .fusion import FusionRing, fp_dims, near_group_ring, su2_half_ring
from .groups import (FiniteGroup, Subgroup, conjugacy_classes_of_subgroups,
                     coset_action)
from .nimrep import (NimRep, canonical_form, direct_sum, is_irreducible,
                     regular, verify)


class VerificationFailed(RuntimeError):
    pass


class Inconsistent(RuntimeError):
    pass


class SearchExploded(RuntimeError):
    pass


class BoundTooSmall(UserWarning):
    pass


# --------------------------------------------------------------------------
# group rings

@dataclass(frozen=True)
class GroupNimSpec:
    subgroup: Subgroup

    def describe(self) -> str:
        return "M({" + ",".join(self.subgroup.names()) + "})"


def coset_nimrep(h: Subgroup, ring: FusionRing | None = None) -> NimRep:
    """M(H): the group acting on left cosets of H, one basis element per coset."""
    from .fusion import group_ring

    g = h.parent
    ring = ring or group_ring(g)
    ca = coset_action(h)
    mats = np.stack([ca.permutation_matrix(x) for x in range(g.order)])
    return verify(ring, mats, [f"m_{name}" for name in ca.coset_names()])


def group_ring_nimreps(g: FiniteGroup) -> list[tuple[GroupNimSpec, NimRep]]:
    from .fusion import group_ring

    ring = group_ring(g)
    return [(GroupNimSpec(h), coset_nimrep(h, ring))
            for h, _ in conjugacy_classes_of_subgroups(g)]


# --------------------------------------------------------------------------
# near-group rings

def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _orbit_key(h: Subgroup) -> tuple:
    return (h.order, h.elements)


@dataclass(frozen=True)
class NearGroupSolution:
    """Orbit subgroups H_1..H_p and the symmetric matrix C of X-multiplicities."""

    alpha: int
    group: FiniteGroup
    orbits: tuple[Subgroup, ...]
    C: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return len(self.orbits)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(h.index for h in self.orbits)

    @property
    def dim(self) -> int:
        return sum(self.indices)

    def c(self, i: int, j: int) -> int:
        return self.C[i][j]

    def satisfies_cbc(self) -> bool:
        """Exact integer check of ``(CB)^2 = alpha CB + |G| I``."""
        cb = np.array(self.C, dtype=object) * np.array(self.indices, dtype=object)
        lhs = cb.dot(cb)
        rhs = self.alpha * cb + self.group.order * np.eye(self.p, dtype=int).astype(object)
        return bool((lhs == rhs).all())

    def is_connected(self) -> bool:
        seen, frontier = {0}, [0]
        while frontier:
            i = frontier.pop()
            for j in range(self.p):
                if self.C[i][j] and j not in seen:
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == self.p

    def canonical(self) -> "NearGroupSolution":
        """Orbits sorted by (|H|, elements); ties broken by least flattened C."""
        keys = [_orbit_key(h) for h in self.orbits]
        best = None
        for perm in permutations(range(self.p)):
            if [keys[i] for i in perm] != sorted(keys):
                continue
            c = tuple(tuple(self.C[i][j] for j in perm) for i in perm)
            if best is None or c < best[1]:
                best = (perm, c)
        perm, c = best
        return NearGroupSolution(self.alpha, self.group,
                                 tuple(self.orbits[i] for i in perm), c)

    def key(self) -> tuple:
        return (self.alpha, tuple(h.elements for h in self.orbits), self.C)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "orbits": [list(h.elements) for h in self.orbits],
                "C": [list(r) for r in self.C]}

    def describe(self) -> str:
        names = ["{" + ",".join(h.names()) + "}" if h.order < h.parent.order
                 else h.parent.label or "G" for h in self.orbits]
        return f"p={self.p} orbits=({', '.join(names)}) C={[list(r) for r in self.C]}"


def _dedup_solutions(sols) -> list[NearGroupSolution]:
    out: dict[tuple, NearGroupSolution] = {}
    for s in sols:
        s = s.canonical()
        out.setdefault(s.key(), s)
    return sorted(out.values(), key=lambda s: (s.p, [_orbit_key(h) for h in s.orbits], s.C))


def neargroup_one_orbit(g: FiniteGroup, alpha: int) -> list[NearGroupSolution]:
    """Pairs (H, c) with alpha = c|G:H| - |H|/c, c | |H| and c^2 |G:H| >= |H|."""
    out = []
    for h, _ in conjugacy_classes_of_subgroups(g):
        for c in range(1, h.order + 1):
            if h.order % c:
                continue
            if c * h.index - h.order // c != alpha or c * c * h.index < h.order:
                continue
            out.append(NearGroupSolution(alpha, g, (h,), ((c,),)))
    return out


def neargroup_two_orbit(g: FiniteGroup, alpha: int) -> list[NearGroupSolution]:
    """Tuples (H1, H2, c11, c22) with alpha = c11|G:H1| + c22|G:H2|,
    |G| dividing |H1||H2| and |H1||H2|/|G| + c11 c22 a square (= c12^2)."""
    classes = [h for h, _ in conjugacy_classes_of_subgroups(g)]
    out = []
    for a, b in combinations_with_replacement(range(len(classes)), 2):
        h1, h2 = classes[a], classes[b]
        if (h1.order * h2.order) % g.order:
            continue
        base = h1.order * h2.order // g.order
        for c11 in range(alpha // h1.index + 1):
            rest = alpha - c11 * h1.index
            if rest % h2.index:
                continue
            c22 = rest // h2.index
            s = base + c11 * c22
            if not _is_square(s):
                continue
            c12 = math.isqrt(s)
            out.append(NearGroupSolution(alpha, g, (h1, h2), ((c11, c12), (c12, c22))))
    return _dedup_solutions(out)


def derived_entry_bound(g: FiniteGroup, alpha: int, indices) -> int:
    """ceil((alpha/2 + sqrt(alpha^2/4 + |G|)) / min index).

    The symmetric matrix B^1/2 C B^1/2 has spectral radius
    alpha/2 + sqrt(alpha^2/4 + |G|), which bounds every entry of CB.
    """
    m = min(indices)
    disc = alpha * alpha + 4 * g.order
    r = math.isqrt(disc)
    if r * r == disc:
        return math.ceil(Fraction(alpha + r, 2 * m))
    return math.ceil((alpha + math.sqrt(disc)) / (2 * m))


def _search_C(alpha: int, order_g: int, sizes, idx, bound: int):
    """All symmetric non-negative C (entries <= bound) solving the element-wise system

        |H_i| + alpha c_ii = sum_j c_ij^2 |G:H_j|
        alpha c_iq        = sum_j c_ij c_jq |G:H_j|   (q != i)

    filled row by row, checking each completed row.
    """
    p = len(sizes)
    C = [[0] * p for _ in range(p)]

    def check_row(i: int) -> bool:
        for q in range(i):
            if alpha * C[i][q] != sum(C[i][j] * C[j][q] * idx[j] for j in range(p)):
                return False
        return True

    def fill(i: int, j: int, budget: int):
        # budget = remaining value of sum_{j' >= j} c_ij'^2 idx_j' for row i
        if j == p:
            if budget == 0 and check_row(i):
                yield from row(i + 1)
            return
        if j == p - 1:
            if budget % idx[j]:
                return
            sq = budget // idx[j]
            c = math.isqrt(sq)
            if c * c != sq or c > bound:
                return
            C[i][j] = C[j][i] = c
            yield from fill(i, j + 1, 0)
            return
        cmax = min(bound, math.isqrt(budget // idx[j]))
        for c in range(cmax + 1):
            C[i][j] = C[j][i] = c
            yield from fill(i, j + 1, budget - c * c * idx[j])

    def row(i: int):
        if i == p:
            yield tuple(tuple(r) for r in C)
            return
        fixed = sum(C[i][j] ** 2 * idx[j] for j in range(i))
        for cii in range(bound + 1):
            budget = sizes[i] + alpha * cii - fixed - cii * cii * idx[i]
            if budget < 0:
                if cii * idx[i] > alpha:
                    break
                continue
            C[i][i] = cii
            if i == p - 1:
                if budget == 0 and check_row(i):
                    yield from row(i + 1)
                continue
            yield from fill(i, i + 1, budget)

    yield from row(0)


def neargroup_brute(g: FiniteGroup, alpha: int, max_orbits: int,
                    entry_bound: int | None = None) -> list[NearGroupSolution]:
    """Exhaustive search over p <= max_orbits orbit multisets and bounded C.

    Without ``entry_bound`` the derived spectral bound is used per orbit
    multiset, which makes the search complete.  An odd number of orbits
    needs alpha^2 + 4|G| to be a perfect square; other p are skipped.
    """
    if max_orbits < 1:
        raise ValueError("max_orbits must be >= 1")
    classes = [h for h, _ in conjugacy_classes_of_subgroups(g)]
    square = _is_square(alpha * alpha + 4 * g.order)
    if entry_bound is not None:
        closed = neargroup_one_orbit(g, alpha)
        if max_orbits >= 2:
            closed += neargroup_two_orbit(g, alpha)
        worst = max((max(max(r) for r in s.C) for s in closed), default=0)
        if worst > entry_bound:
            warnings.warn(f"entry bound {entry_bound} below closed-form entry {worst}; "
                          "search is incomplete", BoundTooSmall, stacklevel=2)
    out = []
    for p in range(1, max_orbits + 1):
        if p % 2 == 1 and not square:
            continue
        for combo in combinations_with_replacement(range(len(classes)), p):
            orbits = tuple(classes[k] for k in combo)
            sizes = [h.order for h in orbits]
            idx = [h.index for h in orbits]
            bound = entry_bound if entry_bound is not None else derived_entry_bound(g, alpha, idx)
            for C in _search_C(alpha, g.order, sizes, idx, bound):
                sol = NearGroupSolution(alpha, g, orbits, C)
                if sol.is_connected():
                    out.append(sol)
    return _dedup_solutions(out)


def neargroup_to_nimrep(sol: NearGroupSolution, ring: FusionRing | None = None) -> NimRep:
    """Group acts blockwise on cosets; X acts by constant blocks c_ij * ones."""
    g = sol.group
    ring = ring or near_group_ring(g, sol.alpha)
    actions = [coset_action(h) for h in sol.orbits]
    offsets = np.cumsum([0] + [a.n_cosets for a in actions])
    d = int(offsets[-1])
    mats = np.zeros((g.order + 1, d, d), dtype=np.int64)
    for a, lo in zip(actions, offsets):
        n = a.n_cosets
        for x in range(g.order):
            mats[x, lo:lo + n, lo:lo + n] = a.permutation_matrix(x)
    for i in range(sol.p):
        for j in range(sol.p):
            mats[g.order, offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = sol.C[i][j]
    names = [f"m{i + 1}_{nm}" for i, a in enumerate(actions) for nm in a.coset_names()]
    try:
        return verify(ring, mats, names)
    except ValueError as e:
        raise VerificationFailed(f"{sol.describe()}: {e}") from e


def orbit_of_basis(sol: NearGroupSolution) -> list[int]:
    """Orbit label of each basis element of :func:`neargroup_to_nimrep`."""
    return [i for i, b in enumerate(sol.indices) for _ in range(b)]


def alpha_from_solution(sol: NearGroupSolution) -> int:
    """Recompute alpha from C and the orbit indices."""
    b = sol.indices
    if sol.p == 1:
        c = sol.C[0][0]
        a = Fraction(c * b[0]) - Fraction(sol.orbits[0].order, c)
    else:
        pair = next(((i, q) for i in range(sol.p) for q in range(sol.p)
                     if i != q and sol.C[i][q] > 0), None)
        if pair is None:
            raise Inconsistent("no non-zero off-diagonal entry")
        i, q = pair
        a = sum(Fraction(sol.C[i][j] * sol.C[j][q], sol.C[i][q]) * b[j] for j in range(sol.p))
    if a != sol.alpha:
        raise Inconsistent(f"recomputed alpha {a} != {sol.alpha}")
    return int(a)


def parity_law_holds(sol: NearGroupSolution) -> bool:
    """True when ``p odd <=> alpha^2 + 4|G| is a perfect square``."""
    square = _is_square(sol.alpha ** 2 + 4 * sol.group.order)
    return (sol.p % 2 == 1) == square


def odd_orbits_need_square(sol: NearGroupSolution) -> bool:
    """True unless p is odd while alpha^2 + 4|G| is not a perfect square."""
    return sol.p % 2 == 0 or _is_square(sol.alpha ** 2 + 4 * sol.group.order)


# --------------------------------------------------------------------------
# A(1,l)_1/2

def su2half_admissible(l: int) -> NimRep:
    """The NIM-rep generated from m_0 by the fusion rules, i.e. the regular one."""
    return regular(su2_half_ring(l))


# --------------------------------------------------------------------------
# generic exhaustive search

class Found(NamedTuple):
    nimrep: NimRep
    irreducible: bool


class _IrreducibleSearch:
    """Build irreducible NIM-reps row by row from a starting basis element.

    Row ``l`` of every matrix is fixed when basis element ``l`` is
    processed; rigidity then fixes column ``l``.  Basis elements are
    introduced in order of first appearance, so every irreducible NIM-rep
    of dimension <= max_dim is reached (up to relabelling).
    """

    def __init__(self, ring: FusionRing, max_dim: int, bounds, node_cap: int):
        self.ring = ring
        self.r = ring.rank
        self.D = max_dim
        self.bounds = [int(b) for b in bounds]
        self.cap = node_cap
        self.nodes = 0
        self.c = ring.coeffs
        self.dual = ring.dual
        self.labels = [i for i in range(self.r) if i != ring.unit]
        self.M = np.zeros((self.r, max_dim, max_dim), dtype=np.int64)
        self.found: dict[bytes, NimRep] = {}
        # pairs (i, j, k-list) with c_ij^k > 0, used for axiom checks
        self.terms = [[np.nonzero(self.c[i, j])[0] for j in range(self.r)] for i in range(self.r)]
        # representatives of {i, i*}: diagonal entries agree within a pair
        self.diag_reps = sorted({min(i, self.dual[i]) for i in self.labels})

    def tick(self):
        self.nodes += 1
        if self.nodes > self.cap:
            raise SearchExploded(f"more than {self.cap} search nodes")

    def run(self) -> list[NimRep]:
        self.M[self.ring.unit] = np.eye(self.D, dtype=np.int64)
        self.process_row(0, 1)
        return list(self.found.values())

    # target value of (N_j N_i)[l, p] from the module axiom
    def axiom_rhs(self, i: int, j: int, l: int, p: int) -> int:
        ks = self.terms[i][j]
        return int((self.c[i, j, ks] * self.M[ks, l, p]).sum())

    def process_row(self, l: int, n_cur: int):
        self.tick()
        if l == n_cur:
            self.record(n_cur)
            return
        for diag in self.diag_choices(l):
            for i in self.labels:
                self.M[i, l, l] = diag[min(i, self.dual[i])]
            if not self.diag_ok(l):
                continue
            self.choose_label(l, 0, n_cur)

    def diag_choices(self, l: int):
        ranges = [range(self.bounds[i] + 1) for i in self.diag_reps]

        def rec(t, acc):
            if t == len(ranges):
                yield dict(acc)
                return
            for v in ranges[t]:
                acc[self.diag_reps[t]] = v
                yield from rec(t + 1, acc)

        yield from rec(0, {})

    def diag_ok(self, l: int) -> bool:
        # lower bound of (N_j N_i)[l,l] from the known entries k <= l
        M = self.M
        for i in self.labels:
            for j in self.labels:
                known = int((M[j, l, :l + 1] * M[self.dual[i], l, :l + 1]).sum())
                if known > self.axiom_rhs(i, j, l, l):
                    return False
        return True

    def norm_target(self, j: int, l: int) -> int:
        # (N_j N_j*)[l,l] = |row l of N_j|^2 = sum_k c_{j* j}^k N_k[l,l]
        return self.axiom_rhs(self.dual[j], j, l, l)

    def choose_label(self, l: int, pos: int, n_cur: int):
        if pos == len(self.labels):
            self.process_row(l + 1, n_cur)
            return
        j = self.labels[pos]
        M = self.M
        fixed = int((M[j, l, :l + 1] ** 2).sum())
        budget = self.norm_target(j, l) - fixed
        if budget < 0:
            return
        for tail, new_n in self.row_tails(l, n_cur, budget, self.bounds[j]):
            self.tick()
            M[j, l, l + 1:] = tail
            M[self.dual[j], l + 1:, l] = tail
            if self.row_ok(l, pos, j):
                self.choose_label(l, pos + 1, new_n)
        M[j, l, l + 1:] = 0
        M[self.dual[j], l + 1:, l] = 0

    def row_tails(self, l: int, n_cur: int, budget: int, bound: int):
        """Vectors over columns l+1..D-1 with squared norm ``budget``.

        Columns >= n_cur are fresh; they must be used contiguously with
        non-increasing values.
        """
        width = self.D - l - 1
        vec = [0] * width
        first_fresh = n_cur - (l + 1)

        def rec(t, rem, n_new, last_fresh):
            if rem == 0:
                yield np.array(vec, dtype=np.int64), n_cur + n_new
                return
            if t == width:
                return
            fresh = t >= first_fresh
            if fresh and t != first_fresh + n_new:
                return
            cmax = min(bound, math.isqrt(rem))
            if fresh:
                cmax = min(cmax, last_fresh)
            for v in range(cmax, -1, -1):
                if fresh and v == 0:
                    return
                vec[t] = v
                yield from rec(t + 1, rem - v * v, n_new + (1 if fresh else 0),
                               v if fresh else last_fresh)
            vec[t] = 0

        yield from rec(0, budget, 0, bound)

    def row_ok(self, l: int, pos: int, j: int) -> bool:
        M = self.M
        dual = self.dual
        done = set(self.labels[:pos + 1]) | {self.ring.unit}
        for i in range(self.r):
            # entries (l, p<l) of N_j N_i
            if l:
                lhs = M[dual[i], :l, :] @ M[j, l, :]
                for p in range(l):
                    if lhs[p] != self.axiom_rhs(i, j, l, p):
                        return False
            # entry (l, l) once both rows are known
            if dual[i] in done:
                for a, b in ((j, i), (dual[i], dual[j])):
                    if dual[b] in done and a in done:
                        v = int(M[a, l, :] @ M[dual[b], l, :])
                        if v != self.axiom_rhs(b, a, l, l):
                            return False
        return True

    def record(self, n: int):
        mats = self.M[:, :n, :n].copy()
        try:
            rep = verify(self.ring, mats)
        except ValueError:
            return
        key, perm = canonical_form(rep)
        if key not in self.found:
            self.found[key] = rep.permuted(perm)


def default_bounds(ring: FusionRing) -> list[int]:
    dims = fp_dims(ring).dims
    return [math.ceil(d - 1e-9) for d in dims]


def irreducible_nimreps(ring: FusionRing, max_dim: int, entry_bound=None,
                        node_cap: int = 10 ** 8) -> list[NimRep]:
    """All irreducible NIM-reps of dimension <= max_dim, one per equivalence class."""
    if entry_bound is None:
        bounds = default_bounds(ring)
    elif np.isscalar(entry_bound):
        bounds = [int(entry_bound)] * ring.rank
    else:
        bounds = list(entry_bound)
    search = _IrreducibleSearch(ring, max_dim, bounds, node_cap)
    reps = search.run()
    return sorted(reps, key=lambda r: (r.dim, r.key()))


def brute_force_nimreps(ring: FusionRing, dim: int, entry_bound=None,
                        node_cap: int = 10 ** 8) -> list[Found]:
    """Every NIM-rep of dimension ``dim`` up to basis permutation.

    Irreducibles come from the row-by-row search; reducible ones are the
    direct sums of smaller irreducibles (NIM-graph components are sub-NIM-reps
    and rigidity makes them direct summands).
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    irr = irreducible_nimreps(ring, dim, entry_bound, node_cap)
    out = [Found(r, True) for r in irr if r.dim == dim]
    by_dim: dict[int, list[NimRep]] = {}
    for r in irr:
        by_dim.setdefault(r.dim, []).append(r)
    pool = [r for r in irr if r.dim < dim]
    seen: set[bytes] = set()

    def sums(start: int, remaining: int, parts: list[NimRep]):
        if remaining == 0:
            if len(parts) >= 2:
                acc = parts[0]
                for q in parts[1:]:
                    acc = direct_sum(acc, q)
                key, perm = canonical_form(acc)
                if key not in seen:
                    seen.add(key)
                    out.append(Found(acc, False))
            return
        for t in range(start, len(pool)):
            if pool[t].dim <= remaining:
                sums(t, remaining - pool[t].dim, parts + [pool[t]])

    sums(0, dim, [])
    return out


def admissible_filter(reps) -> list[NimRep]:
    from .algebra import admissible_base_points

    out = []
    for r in reps:
        n = r.nimrep if isinstance(r, Found) else r
        if is_irreducible(n) and admissible_base_points(n):
            out.append(n)
    return out
