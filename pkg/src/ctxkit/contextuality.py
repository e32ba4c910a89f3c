"""Logical (possibilistic) contextuality of quantum states on a scenario.

The possibilistic model of a state maps each ray to 1 exactly when its
Born probability is non-zero; with exact scalars this is decidable.  A
state is *logically contextual* when no 0/1 distribution over the global
events (KS-assignments) reproduces that model as marginals.  Two
equivalent decision procedures are implemented:

* :func:`is_logically_contextual` searches for a witness ray ``v`` that is
  possible under the state while every global event containing ``v`` also
  contains an impossible ray (a "blocker").  Witnesses whose global-event
  set is empty are excluded: the universal condition would hold vacuously,
  and such rays cannot start the contradiction the verdict certifies.
* :func:`noncontextuality_oracle` builds the canonical candidate
  distribution (an event is possible iff all its member rays are) and
  checks the marginal equations directly.  It must equal the negation of
  the verdict; tests enforce the agreement.

On top of the decision procedure, :func:`find_contextual_pure_states`
exhausts the logically contextual pure states of a scenario by solving
the orthogonality systems drawn from the global-event sets, and
:func:`analyze_mixed_states` records the rank/nullity bookkeeping that
rules out logically contextual mixed states whenever every zero-selection
system has solution-space dimension at most 1 and no foreign ray lies in
every event of a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .assignments import KSAssignment, enumerate_assignments
from .errors import DimensionMismatchError, ValidationError
from .exact import (
    ExactMatrix,
    ExactVector,
    canonical_ray,
    inner_product,
    nullspace,
    parse_scalar,
    rank,
    rank1_projector,
    validate_density,
)
from .scenario import Scenario, basis_membership


@dataclass(frozen=True)
class QuantumState:
    """A pure or mixed state of known dimension.

    Pure states are stored as canonical rays; density operators are
    validated (Hermitian, trace 1, PSD) at construction.
    """

    dim: int
    rho: ExactMatrix
    psi: ExactVector | None = None

    @classmethod
    def pure(cls, vector: ExactVector) -> "QuantumState":
        if vector.is_zero:
            raise ValidationError("a pure state must be a non-zero vector")
        psi = canonical_ray(vector)
        return cls(dim=psi.dim, rho=rank1_projector(psi), psi=psi)

    @classmethod
    def density(cls, matrix: ExactMatrix) -> "QuantumState":
        validate_density(matrix)
        return cls(dim=matrix.rows, rho=matrix, psi=None)

    @property
    def is_pure(self) -> bool:
        return self.psi is not None

    def probability(self, v: ExactVector) -> Fraction:
        """Exact Born probability of the event ``v`` under this state."""
        if v.dim != self.dim:
            raise DimensionMismatchError("state and event dimensions differ")
        if v.is_zero:
            raise ValidationError("events must be non-zero vectors")
        if self.psi is not None:
            return inner_product(v, self.psi).abs2() / (v.norm_sq() * self.psi.norm_sq())
        value = inner_product(v, self.rho.apply(v))
        return value.as_fraction() / v.norm_sq()

    def describe(self) -> str:
        return str(self.psi) if self.psi is not None else "density"


def parse_state(text: str, dim: int, field: str = "gaussian") -> QuantumState:
    """Parse a pure state from a coordinate list such as ``"1,1,1"``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != dim:
        raise ValidationError(f"state has {len(parts)} coordinates, expected {dim}")
    return QuantumState.pure(ExactVector(tuple(parse_scalar(p, field) for p in parts)))


def parse_density(text: str, dim: int, field: str = "gaussian") -> QuantumState:
    """Parse a density matrix file: ``dim`` lines of ``dim`` literals each."""
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entries = [parse_scalar(tok, field) for tok in line.split()]
        if len(entries) != dim:
            raise ValidationError(f"density row has {len(entries)} entries, expected {dim}")
        rows.append(entries)
    if len(rows) != dim:
        raise ValidationError(f"density matrix has {len(rows)} rows, expected {dim}")
    return QuantumState.density(ExactMatrix.from_rows(rows))


@dataclass(frozen=True)
class PossibilisticModel:
    """The 0/1 coarse-graining of Born probabilities, index-aligned."""

    values: tuple[int, ...]

    def value(self, i: int) -> int:
        return self.values[i]

    def possible(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v == 1)

    def impossible(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v == 0)


def possibilistic_model(scenario: Scenario, state: QuantumState) -> PossibilisticModel:
    """Map each ray to 1 iff its Born probability under ``state`` is non-zero."""
    if state.dim != scenario.dim:
        raise DimensionMismatchError("state dimension does not match the scenario")
    return PossibilisticModel(
        tuple(0 if state.probability(r.vector) == 0 else 1 for r in scenario.rays)
    )


@dataclass(frozen=True)
class ContextualityVerdict:
    """Outcome of the witness search, with one blocker per global event."""

    contextual: bool
    witness: int | None
    blockers: tuple[tuple[KSAssignment, int], ...]

    def __bool__(self) -> bool:
        return self.contextual


def is_logically_contextual(
    scenario: Scenario, state: QuantumState, assignments: list[KSAssignment] | None = None
) -> ContextualityVerdict:
    """Witness-based contextuality decision.

    The state is logically contextual iff some ray ``v`` has model value 1,
    a non-empty set of global events containing it, and every such event
    contains a different ray with model value 0.  The first witness in ray
    order is reported together with the first blocker of each event.
    """
    if assignments is None:
        assignments = enumerate_assignments(scenario)
    model = possibilistic_model(scenario, state)
    for k in range(len(scenario.rays)):
        if model.value(k) != 1:
            continue
        events = [a for a in assignments if a.bits[k] == 1]
        if not events:
            continue
        blockers = []
        for event in events:
            blocker = next(
                (i for i in event.support if i != k and model.value(i) == 0), None
            )
            if blocker is None:
                break
            blockers.append((event, blocker))
        else:
            return ContextualityVerdict(contextual=True, witness=k, blockers=tuple(blockers))
    return ContextualityVerdict(contextual=False, witness=None, blockers=())


def noncontextuality_oracle(
    scenario: Scenario, state: QuantumState, assignments: list[KSAssignment] | None = None
) -> bool:
    """Direct marginal check of the canonical candidate distribution.

    Assign each global event the conjunction of its members' model values
    and test that (a) some event is possible and (b) the disjunctive
    marginal over each ray's events reproduces the model.  True means the
    state is logically non-contextual.
    """
    if assignments is None:
        assignments = enumerate_assignments(scenario)
    model = possibilistic_model(scenario, state)
    weight = {
        a: 1 if all(model.value(i) == 1 for i in a.support) else 0 for a in assignments
    }
    if not any(weight.values()):
        return False
    for i in range(len(scenario.rays)):
        marginal = 1 if any(weight[a] for a in assignments if a.bits[i] == 1) else 0
        if marginal != model.value(i):
            return False
    return True


# ---------------------------------------------------------------------------
# exhausting contextual pure states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessedState:
    """A contextual pure state with the witness and zero-selection that found it."""

    witness: int
    state: ExactVector
    selection: tuple[int, ...]


@dataclass(frozen=True)
class UndeterminedFamily:
    """A zero-selection whose solution space has dimension 2 or more.

    Such families are reported, not classified: the rank argument that
    excludes mixed states does not cover them.
    """

    witness: int
    selection: tuple[int, ...]
    nullity: int


@dataclass(frozen=True)
class PureStateSearch:
    states: tuple[WitnessedState, ...]
    undetermined: tuple[UndeterminedFamily, ...]


def _selection_sets(scenario: Scenario, events: list[KSAssignment], k: int):
    """Distinct collapsed selections (one pick per event, minus the witness)."""
    pick_lists = [[i for i in e.support if i != k] for e in events]
    seen: set[tuple[int, ...]] = set()
    for picks in product(*pick_lists):
        collapsed = tuple(sorted(set(picks)))
        if collapsed in seen:
            continue
        seen.add(collapsed)
        yield collapsed


def find_contextual_pure_states(
    scenario: Scenario, assignments: list[KSAssignment] | None = None
) -> PureStateSearch:
    """Exhaust the logically contextual pure states of the scenario.

    For every ray with a non-empty global-event set, solve the
    orthogonality system of every selection of one non-witness ray per
    event (repeated picks collapse, as the selections are multisets over
    distinct rays).  One-dimensional solution rays not orthogonal to the
    witness are collected, deduplicated by canonical form and re-verified
    with :func:`is_logically_contextual`.
    """
    if assignments is None:
        assignments = enumerate_assignments(scenario)
    found: list[WitnessedState] = []
    undetermined: list[UndeterminedFamily] = []
    seen_states: set[ExactVector] = set()
    for k in range(len(scenario.rays)):
        events = [a for a in assignments if a.bits[k] == 1]
        if not events:
            continue
        witness_vector = scenario.rays[k].vector
        for selection in _selection_sets(scenario, events, k):
            basis = nullspace([scenario.rays[i].vector for i in selection], dim=scenario.dim)
            if len(basis) >= 2:
                undetermined.append(UndeterminedFamily(k, selection, len(basis)))
                continue
            if len(basis) != 1:
                continue
            psi = basis[0]
            if inner_product(witness_vector, psi).is_zero:
                continue
            if psi in seen_states:
                continue
            seen_states.add(psi)
            state = QuantumState.pure(psi)
            if not is_logically_contextual(scenario, state, assignments):
                raise AssertionError(
                    f"state {psi} emitted by the search failed the contextuality re-check"
                )
            found.append(WitnessedState(witness=k, state=psi, selection=selection))
    return PureStateSearch(states=tuple(found), undetermined=tuple(undetermined))


def check_witnesses_basis_free(scenario: Scenario, search: PureStateSearch) -> bool:
    """True iff every witness of the search lies in no basis context.

    Rays inside basis contexts always admit a fully possible global event
    once they are possible themselves, so any witness outside the
    basis-free class would be a counterexample worth flagging.
    """
    counts = basis_membership(scenario)
    return all(counts[w.witness] == 0 for w in search.states)


# ---------------------------------------------------------------------------
# mixed-state analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleAnalysis:
    """Rank/nullity record for one selection tuple of a witness candidate."""

    witness: int
    picks: tuple[int, ...]
    selection: tuple[int, ...]
    rank: int
    nullity: int


@dataclass(frozen=True)
class MixedAnalysisReport:
    """Evidence that no mixed state is logically contextual on the scenario.

    ``no_mixed_states`` holds iff every selection system has nullity at
    most 1 and no candidate witness has a foreign ray lying in all of its
    global events.  Candidates are the basis-free rays with a non-empty
    global-event set.
    """

    triples: tuple[TripleAnalysis, ...]
    common_ray_violations: tuple[tuple[int, tuple[int, ...]], ...]
    no_mixed_states: bool


def analyze_mixed_states(
    scenario: Scenario, assignments: list[KSAssignment] | None = None
) -> MixedAnalysisReport:
    if assignments is None:
        assignments = enumerate_assignments(scenario)
    counts = basis_membership(scenario)
    triples: list[TripleAnalysis] = []
    violations: list[tuple[int, tuple[int, ...]]] = []
    for k in range(len(scenario.rays)):
        if counts[k] != 0:
            continue
        events = [a for a in assignments if a.bits[k] == 1]
        if not events:
            continue
        common = set(events[0].support)
        for event in events[1:]:
            common &= set(event.support)
        common.discard(k)
        if common:
            violations.append((k, tuple(sorted(common))))
        pick_lists = [[i for i in e.support if i != k] for e in events]
        rank_cache: dict[tuple[int, ...], int] = {}
        for picks in product(*pick_lists):
            selection = tuple(sorted(set(picks)))
            if selection not in rank_cache:
                rank_cache[selection] = rank(
                    [scenario.rays[i].vector for i in selection], dim=scenario.dim
                )
            r = rank_cache[selection]
            triples.append(
                TripleAnalysis(
                    witness=k,
                    picks=picks,
                    selection=selection,
                    rank=r,
                    nullity=scenario.dim - r,
                )
            )
    ok = not violations and all(t.nullity <= 1 for t in triples)
    return MixedAnalysisReport(
        triples=tuple(triples),
        common_ray_violations=tuple(violations),
        no_mixed_states=ok,
    )
