"""Finite groups stored as Cayley tables.

Elements are the integers ``0..order-1``; ``table[g][h]`` is the index of
``g*h``.  Subgroups are sorted tuples of element indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np


class GroupError(ValueError):
    pass


class NotAssociative(GroupError):
    pass


class NotLatinSquare(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class UnknownFamily(GroupError):
    pass


class InvalidParameter(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    names: tuple[str, ...]
    identity: int
    label: str = ""

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.table == self.identity)
        inv[rows] = cols
        return inv

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.identity == other.identity and self.names == other.names
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.names, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def to_dict(self) -> dict:
        return {"order": self.order, "names": list(self.names),
                "table": self.table.tolist()}


def group_from_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                     label: str = "") -> FiniteGroup:
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`.

    Raises :class:`NotLatinSquare`, :class:`NoIdentity` or
    :class:`NotAssociative` naming the first offending row/triple.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotLatinSquare(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise NotLatinSquare("table entries out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise NotLatinSquare(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(t[:, i]), full):
            raise NotLatinSquare(f"column {i} is not a permutation")
    ident = None
    for e in range(n):
        if np.array_equal(t[e], full) and np.array_equal(t[:, e], full):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity element")
    # (ab)c == a(bc) for all triples, vectorised over c
    for a in range(n):
        for b in range(n):
            lhs = t[t[a, b]]
            rhs = t[a, t[b]]
            if not np.array_equal(lhs, rhs):
                c = int(np.argmax(lhs != rhs))
                raise NotAssociative(f"(g{a}*g{b})*g{c} != g{a}*(g{b}*g{c})")
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n:
        raise InvalidParameter("names must have one entry per element")
    t.setflags(write=False)
    return FiniteGroup(t, tuple(names), ident, label)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"cyclic group needs n >= 1, got {n}")
    idx = np.arange(n)
    names = ["e"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    return group_from_table((idx[:, None] + idx[None, :]) % n, names, f"Z_{n}")


def direct_product(*factors: int) -> FiniteGroup:
    """Product of cyclic groups; elements are tuples in lexicographic order."""
    if not factors or any(n < 1 for n in factors):
        raise InvalidParameter(f"bad cyclic factors {factors}")
    elems = list(product(*(range(n) for n in factors)))
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[tuple((a + b) % n for a, b, n in zip(x, y, factors))] for y in elems]
             for x in elems]
    names = ["(" + ",".join(map(str, x)) + ")" for x in elems]
    return group_from_table(table, names, " x ".join(f"Z_{n}" for n in factors))


def dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n, elements x^s a^r with x^2 = a^n = e and xa = a^-1 x.

    Index of x^s a^r is ``s*n + r``; names follow ``e, a, a^2, x, xa, xa^2``.
    """
    if n < 1:
        raise InvalidParameter(f"dihedral group needs n >= 1, got {n}")

    def name(s, r):
        body = "" if r == 0 else ("a" if r == 1 else f"a^{r}")
        if s == 0:
            return body or "e"
        return "x" + body

    # (x^s a^r)(x^t a^u) = x^(s+t) a^((-1)^t r + u)
    table = [[((s + t) % 2) * n + (((-r if t else r) + u) % n)
              for t in range(2) for u in range(n)]
             for s in range(2) for r in range(n)]
    names = [name(s, r) for s in range(2) for r in range(n)]
    return group_from_table(table, names, f"D_{n}")


_SPEC_CYCLIC = re.compile(r"^Z_?(\d+)$")
_SPEC_DIHEDRAL = re.compile(r"^D_?(\d+)$")


def builtin_group(spec: str) -> FiniteGroup:
    """Parse ``"Z_n"``, ``"Z_a x Z_b [x ...]"`` or ``"D_n"``."""
    parts = [p.strip() for p in spec.split("x") if p.strip()] if " x " in spec else [spec.strip()]
    if len(parts) > 1:
        ns = []
        for p in parts:
            m = _SPEC_CYCLIC.match(p)
            if not m:
                raise UnknownFamily(f"product factors must be cyclic: {spec!r}")
            ns.append(int(m.group(1)))
        return direct_product(*ns)
    m = _SPEC_CYCLIC.match(parts[0])
    if m:
        return cyclic(int(m.group(1)))
    m = _SPEC_DIHEDRAL.match(parts[0])
    if m:
        return dihedral(int(m.group(1)))
    raise UnknownFamily(f"unknown group spec {spec!r}")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False, compare=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        g = self.parent
        els = np.array(sorted(set(self.elements)), dtype=np.int64)
        if g.identity not in self.elements:
            raise GroupError("subgroup must contain the identity")
        mask = np.zeros(g.order, dtype=bool)
        mask[els] = True
        if not mask[g.table[np.ix_(els, els)]].all():
            raise GroupError(f"elements {self.elements} not closed")
        if g.order % len(els):
            raise GroupError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def names(self) -> list[str]:
        return [self.parent.names[g] for g in self.elements]

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        gi = G.inv(g)
        return Subgroup(G, tuple(sorted(G.mul(G.mul(g, h), gi) for h in self.elements)))


def _closure(g: FiniteGroup, gens) -> frozenset[int]:
    elems = {g.identity}
    frontier = [g.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def _sort_key(elements) -> tuple:
    return (len(elements), tuple(elements))


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup once, sorted by order then by element list.

    Seeds are the cyclic subgroups; joins with cyclic subgroups are taken
    until no new subgroup appears.
    """
    cyclics = {_closure(g, [x]) for x in range(g.order)}
    found = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclics:
                if c <= h:
                    continue
                j = _closure(g, h | c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    ordered = sorted((tuple(sorted(s)) for s in found), key=_sort_key)
    return [Subgroup(g, s) for s in ordered]


def conjugacy_classes_of_subgroups(g: FiniteGroup) -> list[tuple[Subgroup, int]]:
    """Partition of :func:`all_subgroups` into conjugacy classes.

    Each class is reported as (lexicographically least member, class size).
    """
    seen: set[tuple[int, ...]] = set()
    out = []
    for h in all_subgroups(g):
        if h.elements in seen:
            continue
        cls = {h.conjugate(x).elements for x in range(g.order)}
        seen |= cls
        rep = min(cls, key=_sort_key)
        out.append((Subgroup(g, rep), len(cls)))
    return out


@dataclass(frozen=True, eq=False)
class CosetAction:
    subgroup: Subgroup
    reps: tuple[int, ...]
    act: np.ndarray  # act[g, i] = j  with  g*reps[i] in reps[j]*H

    @property
    def n_cosets(self) -> int:
        return len(self.reps)

    def permutation_matrix(self, g: int) -> np.ndarray:
        """Matrix with a 1 at (i, act[g, i]): row i is the image of coset i."""
        n = self.n_cosets
        m = np.zeros((n, n), dtype=np.int64)
        m[np.arange(n), self.act[g]] = 1
        return m

    def coset_names(self) -> list[str]:
        return [self.subgroup.parent.names[r] for r in self.reps]

    def is_transitive(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in self.act[:, i]:
                if int(j) not in seen:
                    seen.add(int(j))
                    frontier.append(int(j))
        return len(seen) == self.n_cosets


def coset_action(h: Subgroup) -> CosetAction:
    """Left translation of the parent group on the left cosets ``gH``."""
    g = h.parent
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset_of[x] >= 0:
            continue
        for y in h.elements:
            coset_of[g.mul(x, y)] = len(reps)
        reps.append(x)
    act = coset_of[g.table[:, reps]]
    act.setflags(write=False)
    return CosetAction(h, tuple(reps), act)


def actions_isomorphic(a: CosetAction, b: CosetAction) -> list[int] | None:
    """Search for a coset bijection ``phi`` with ``phi(a.act[g,i]) = b.act[g,phi(i)]``.

    Transitive actions are fixed by the image of coset 0, so at most
    ``n`` candidates are tried.
    """
    if a.n_cosets != b.n_cosets:
        return None
    n = a.n_cosets
    G = a.subgroup.parent
    # coset i of a is (reps[i] reps[0]^-1) applied to coset 0
    movers = [G.mul(r, G.inv(a.reps[0])) for r in a.reps]
    for target in range(n):
        phi = [int(b.act[m, target]) for m in movers]
        if sorted(phi) != list(range(n)):
            continue
        if all(phi[int(a.act[g, i])] == int(b.act[g, phi[i]])
               for g in range(a.act.shape[0]) for i in range(n)):
            return phi
    return None
