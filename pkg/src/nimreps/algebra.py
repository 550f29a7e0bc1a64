"""Admissible NIM-reps and the algebra objects they determine.

A basis element ``m0`` is a base point when every basis element arises as
``b_j |> m0`` for a single ``b_j``.  The algebra object is then
``A = sum_i (N_i)[m0, m0] b_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import NearGroupSolution, neargroup_to_nimrep, orbit_of_basis
from .fusion import FusionRing
from .nimrep import NimRep, is_irreducible


class NotAdmissibleAt(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraObject:
    ring: FusionRing
    multiplicities: tuple[int, ...]
    base_point: int

    def as_dict(self) -> dict[str, int]:
        return {self.ring.names[i]: m for i, m in enumerate(self.multiplicities) if m}

    def __str__(self) -> str:
        parts = [(f"{m}{n}" if m > 1 else n) for n, m in self.as_dict().items()]
        return " + ".join(parts)

    def dim(self, dims) -> float:
        return float(np.dot(self.multiplicities, dims))


def _generates(n: NimRep, m0: int) -> bool:
    rows = n.mats[:, m0, :]
    unit_rows = (rows.sum(axis=1) == 1)
    reached = set(int(np.argmax(rows[i])) for i in np.nonzero(unit_rows)[0])
    return len(reached) == n.dim


def admissible_base_points(n: NimRep) -> list[int]:
    """Base points of an irreducible NIM-rep; empty for reducible ones."""
    if not is_irreducible(n):
        return []
    return [m0 for m0 in range(n.dim) if _generates(n, m0)]


def is_admissible(n: NimRep) -> bool:
    return bool(admissible_base_points(n))


def algebra_object(n: NimRep, m0: int) -> AlgebraObject:
    if m0 not in admissible_base_points(n):
        raise NotAdmissibleAt(f"{n.basis_names[m0]} is not a base point")
    return AlgebraObject(n.ring, tuple(int(x) for x in n.mats[:, m0, m0]), m0)


@dataclass(frozen=True)
class AdmissibleEntry:
    solution: NearGroupSolution
    nimrep: NimRep
    base_points: tuple[int, ...]
    algebras: tuple[AlgebraObject, ...]

    @property
    def admissible(self) -> bool:
        return bool(self.base_points)


@dataclass(frozen=True)
class NearGroupAdmissibilityReport:
    entries: tuple[AdmissibleEntry, ...]
    violations: tuple[str, ...]

    def admissible(self) -> list[AdmissibleEntry]:
        return [e for e in self.entries if e.admissible]

    def to_dict(self) -> dict:
        return {"schema": 1, "entries": [
            {"solution": e.solution.to_dict(), "base_points": list(e.base_points),
             "algebra": e.algebras[0].as_dict() if e.algebras else None}
            for e in self.entries], "violations": list(self.violations)}

    def text(self) -> str:
        lines = []
        for e in self.entries:
            tag = "admissible" if e.admissible else "not admissible"
            lines.append(f"{e.solution.describe()}: {tag}")
            for a in sorted({str(a) for a in e.algebras}):
                lines.append(f"  A = {a}")
        lines += [f"VIOLATION {v}" for v in self.violations]
        return "\n".join(lines)


def classify_admissible_neargroup(g, alpha: int, solutions=None) -> NearGroupAdmissibilityReport:
    """Base points and algebras for each near-group NIM-rep.

    Admissible ones must have one orbit, or two orbits with a zero diagonal
    entry of C whose orbit holds every base point; anything else is reported
    as a violation.
    """
    if solutions is None:
        from .classify import neargroup_one_orbit, neargroup_two_orbit
        solutions = neargroup_one_orbit(g, alpha) + neargroup_two_orbit(g, alpha)
    entries, violations = [], []
    for sol in solutions:
        if sol.alpha != alpha or sol.group != g:
            raise ValueError("solution does not belong to K(g, alpha)")
        n = neargroup_to_nimrep(sol)
        bps = admissible_base_points(n)
        algs = tuple(algebra_object(n, m) for m in bps)
        entries.append(AdmissibleEntry(sol, n, tuple(bps), algs))
        if not bps or sol.p == 1:
            continue
        orbit = orbit_of_basis(sol)
        ok = sol.p == 2 and all(sol.C[orbit[m]][orbit[m]] == 0 for m in bps)
        if not ok:
            violations.append(f"admissible with shape {sol.describe()}")
    return NearGroupAdmissibilityReport(tuple(entries), tuple(violations))
