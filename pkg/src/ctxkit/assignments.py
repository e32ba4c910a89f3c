"""Kochen-Specker assignments (global events) of a scenario.

A KS-assignment is a 0/1 labelling of the rays such that

* (O) no two orthogonal rays are both labelled 1, and
* (C) every basis context carries exactly one label 1.

Deficient contexts automatically carry at most one label 1 by (O).  The
support of an assignment is its set of label-1 rays; supports double as
the "global event" sets used throughout the contextuality analysis.

Two independent enumerators are provided.  The default backtracks over
rays, honouring (O) and (C) along the way.  The second mirrors a
basis-product construction: choose one ray per basis context so that the
choices form an independent set of the exclusivity graph, then union with
every independent set (the empty one included) of the subgraph induced on
rays outside all basis contexts, keeping only unions that remain
independent.  Both must return identical sets; tests enforce this, plus
agreement with an exhaustive sweep over all bit strings.

Output order is lexicographic on the sorted support tuples, which keeps
assignment numbering stable across runs and matches the usual tabulation
of the bundled 13-ray scenario.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import ValidationError
from .scenario import Ray, Scenario


@dataclass(frozen=True)
class KSAssignment:
    """A 0/1 labelling of the rays, index-aligned with the scenario."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValidationError("assignment bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)


def support_labels(scenario: Scenario, assignment: KSAssignment) -> tuple[str, ...]:
    return tuple(scenario.rays[i].label for i in assignment.support)


def verify_assignment(scenario: Scenario, assignment: KSAssignment) -> bool:
    """Check conditions (O) and (C) directly; the acceptance oracle."""
    bits = assignment.bits
    if len(bits) != len(scenario.rays):
        raise ValidationError("assignment must cover every ray")
    for i, j in scenario.edges:
        if bits[i] and bits[j]:
            return False
    for context in scenario.basis_contexts():
        if sum(bits[i] for i in context.members) != 1:
            return False
    return True


def enumerate_assignments(scenario: Scenario) -> list[KSAssignment]:
    """All KS-assignments, by backtracking over rays.

    An empty result is a valid outcome and signals a KS-uncolorable set.
    """
    scenario.require_contexts()
    n = len(scenario.rays)
    bases = [c.members for c in scenario.basis_contexts()]
    basis_ones = [0] * len(bases)
    basis_open = [len(b) for b in bases]
    membership: list[list[int]] = [[] for _ in range(n)]
    for bi, members in enumerate(bases):
        for i in members:
            membership[i].append(bi)
    bits = [0] * n
    found: list[KSAssignment] = []

    def assign(i: int, value: int) -> bool:
        bits[i] = value
        ok = True
        for bi in membership[i]:
            basis_open[bi] -= 1
            basis_ones[bi] += value
            if basis_ones[bi] > 1 or (basis_open[bi] == 0 and basis_ones[bi] == 0):
                ok = False
        return ok

    def unassign(i: int, value: int):
        bits[i] = 0
        for bi in membership[i]:
            basis_open[bi] += 1
            basis_ones[bi] -= value

    def recurse(i: int):
        if i == n:
            found.append(KSAssignment(tuple(bits)))
            return
        for value in (0, 1):
            if value == 1 and any(bits[j] for j in scenario.neighbors(i) if j < i):
                continue
            feasible = assign(i, value)
            if feasible:
                recurse(i + 1)
            unassign(i, value)

    recurse(0)
    found.sort(key=lambda a: a.support)
    return found


def enumerate_assignments_by_basis_choices(scenario: Scenario) -> list[KSAssignment]:
    """Independent enumerator built from per-basis choices; cross-check oracle.

    Exhaustive over the product of basis contexts, then over independent
    sets of the residual subgraph of rays outside every basis; intended for
    small scenarios only.
    """
    scenario.require_contexts()
    n = len(scenario.rays)
    bases = [c.members for c in scenario.basis_contexts()]
    in_basis = set(i for members in bases for i in members)
    outside = [i for i in range(n) if i not in in_basis]

    def independent(rays: frozenset[int]) -> bool:
        return not any(j in rays and scenario.adjacent(i, j) for i in rays for j in rays if j > i)

    residual_sets = [frozenset(c) for r in range(len(outside) + 1) for c in combinations(outside, r)]
    residual_sets = [s for s in residual_sets if independent(s)]

    supports: set[frozenset[int]] = set()
    if bases:
        choice_lists = [list(members) for members in bases]
        for picks in product(*choice_lists):
            base_set = frozenset(picks)
            if not independent(base_set):
                continue
            for extra in residual_sets:
                candidate = base_set | extra
                if independent(candidate):
                    supports.add(candidate)
    else:
        supports.update(residual_sets)

    found = [
        KSAssignment(tuple(1 if i in s else 0 for i in range(n)))
        for s in supports
    ]
    found.sort(key=lambda a: a.support)
    return found


def events_containing(
    scenario: Scenario, assignments: list[KSAssignment], ray: "Ray | str | int"
) -> list[KSAssignment]:
    """The sub-list of assignments whose support contains ``ray``."""
    idx = scenario.ray_index(ray)
    return [a for a in assignments if a.bits[idx] == 1]
