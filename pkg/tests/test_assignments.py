"""KS-assignment enumeration and queries."""

from __future__ import annotations

from itertools import product

import pytest

from ctxkit import (
    KSAssignment,
    UnknownLabelError,
    ValidationError,
    enumerate_assignments,
    enumerate_assignments_by_basis_choices,
    enumerate_contexts,
    events_containing,
    load_scenario,
    support_labels,
    verify_assignment,
)

# the 24 supports of the bundled scenario, in enumeration order
EXPECTED_SUPPORTS = [
    ("v1", "v5", "v6"),
    ("v1", "v5", "v6", "vA"),
    ("v1", "v5", "v9"),
    ("v1", "v5", "v9", "vC"),
    ("v1", "v6", "v8"),
    ("v1", "v6", "v8", "vB"),
    ("v1", "v8", "v9"),
    ("v1", "v8", "v9", "vD"),
    ("v2", "v4", "v6"),
    ("v2", "v4", "v6", "vB"),
    ("v2", "v4", "v9"),
    ("v2", "v4", "v9", "vC"),
    ("v2", "v6", "v7"),
    ("v2", "v6", "v7", "vA"),
    ("v2", "v7", "v9"),
    ("v2", "v7", "v9", "vD"),
    ("v3", "v4", "v5"),
    ("v3", "v4", "v5", "vC"),
    ("v3", "v4", "v8"),
    ("v3", "v4", "v8", "vB"),
    ("v3", "v5", "v7"),
    ("v3", "v5", "v7", "vA"),
    ("v3", "v7", "v8"),
    ("v3", "v7", "v8", "vD"),
]

GLOBAL_EVENT_SETS = {
    "vA": [("v1", "v5", "v6", "vA"), ("v2", "v6", "v7", "vA"), ("v3", "v5", "v7", "vA")],
    "vB": [("v1", "v6", "v8", "vB"), ("v2", "v4", "v6", "vB"), ("v3", "v4", "v8", "vB")],
    "vC": [("v1", "v5", "v9", "vC"), ("v2", "v4", "v9", "vC"), ("v3", "v4", "v5", "vC")],
    "vD": [("v1", "v8", "v9", "vD"), ("v2", "v7", "v9", "vD"), ("v3", "v7", "v8", "vD")],
}


def test_yu_oh_assignment_supports(yu_oh, yu_oh_assignments):
    assert len(yu_oh_assignments) == 24
    assert [support_labels(yu_oh, a) for a in yu_oh_assignments] == EXPECTED_SUPPORTS


def test_support_sizes(yu_oh, yu_oh_assignments):
    assert {len(a.support) for a in yu_oh_assignments} == {3, 4}


def test_enumerators_agree_on_yu_oh(yu_oh, yu_oh_assignments):
    assert enumerate_assignments_by_basis_choices(yu_oh) == yu_oh_assignments


def test_exhaustive_bitstring_sweep(yu_oh, yu_oh_assignments):
    # every bit string passing the oracle is enumerated, and vice versa
    accepted = [
        bits
        for bits in product((0, 1), repeat=len(yu_oh.rays))
        if verify_assignment(yu_oh, KSAssignment(bits))
    ]
    assert sorted(accepted) == sorted(a.bits for a in yu_oh_assignments)


def test_every_enumerated_assignment_verifies(yu_oh, yu_oh_assignments):
    assert all(verify_assignment(yu_oh, a) for a in yu_oh_assignments)


def test_exactly_one_per_basis(yu_oh, yu_oh_assignments):
    for a in yu_oh_assignments:
        for context in yu_oh.basis_contexts():
            assert sum(a.bits[i] for i in context.members) == 1


def test_supports_are_independent_sets(yu_oh, yu_oh_assignments):
    for a in yu_oh_assignments:
        sup = a.support
        for i in sup:
            for j in sup:
                if i < j:
                    assert not yu_oh.adjacent(i, j)


def test_verify_assignment_examples(yu_oh):
    labels = list(yu_oh.labels)

    def assignment_for(*names):
        return KSAssignment(tuple(1 if l in names else 0 for l in labels))

    assert verify_assignment(yu_oh, assignment_for("v1", "v8", "v9", "vD"))
    assert not verify_assignment(yu_oh, assignment_for())
    assert not verify_assignment(yu_oh, assignment_for("v1", "v4"))


def test_verify_assignment_requires_full_cover(yu_oh):
    with pytest.raises(ValidationError):
        verify_assignment(yu_oh, KSAssignment((1, 0)))
    with pytest.raises(ValidationError):
        KSAssignment((1, 2, 0))


def test_events_containing(yu_oh, yu_oh_assignments):
    for label, expected in GLOBAL_EVENT_SETS.items():
        events = events_containing(yu_oh, yu_oh_assignments, label)
        assert [support_labels(yu_oh, a) for a in events] == expected
    assert len(events_containing(yu_oh, yu_oh_assignments, "v1")) == 8
    with pytest.raises(UnknownLabelError):
        events_containing(yu_oh, yu_oh_assignments, "vX")


def test_events_containing_preserves_order(yu_oh, yu_oh_assignments):
    events = events_containing(yu_oh, yu_oh_assignments, "v5")
    positions = [yu_oh_assignments.index(e) for e in events]
    assert positions == sorted(positions)


def _tiny(text):
    s = load_scenario(text)
    enumerate_contexts(s)
    return s


def test_single_basis_scenario():
    s = _tiny("scenario basis dim 3 field rational\na: 1,0,0\nb: 0,1,0\nc: 0,0,1")
    assignments = enumerate_assignments(s)
    assert [support_labels(s, a) for a in assignments] == [("a",), ("b",), ("c",)]
    assert enumerate_assignments_by_basis_choices(s) == assignments


def test_no_basis_scenario_allows_empty_support():
    # two non-orthogonal rays: no completeness constraint at all
    s = _tiny("scenario free dim 3 field rational\na: 1,0,0\nb: 1,1,0")
    assignments = enumerate_assignments(s)
    assert [a.support for a in assignments] == [(), (0,), (0, 1), (1,)]
    assert enumerate_assignments_by_basis_choices(s) == assignments


def test_enumerators_agree_on_collision_fixture():
    s = _tiny("scenario coll dim 3 field rational\na: 1,0,0\nb: 0,1,0\nc: 1,1,0\nd: 1,-1,0")
    assert enumerate_assignments(s) == enumerate_assignments_by_basis_choices(s)


def test_orthogonal_rays_outside_every_basis():
    # r and s are orthogonal to each other but lie in no basis, so the
    # residual subgraph has an edge; at most one of them joins a support
    s = _tiny(
        "scenario outer dim 3 field rational\n"
        "e1: 1,0,0\ne2: 0,1,0\ne3: 0,0,1\nr: 1,1,0\ns: 1,-1,2"
    )
    assignments = enumerate_assignments(s)
    assert [support_labels(s, a) for a in assignments] == [
        ("e1",), ("e1", "r"), ("e1", "s"),
        ("e2",), ("e2", "r"), ("e2", "s"),
        ("e3",), ("e3", "s"),
    ]
    assert enumerate_assignments_by_basis_choices(s) == assignments


def test_extension_pairs_present(yu_oh, yu_oh_assignments):
    # a size-3 support and its one-ray extension both occur
    supports = [support_labels(yu_oh, a) for a in yu_oh_assignments]
    assert ("v1", "v5", "v6") in supports
    assert ("v1", "v5", "v6", "vA") in supports
