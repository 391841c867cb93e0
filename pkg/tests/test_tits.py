import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigroup import catalog
from trigroup.diagram import all_angles, canonical_triangle, dump_diagram, relabel
from trigroup.generate import random_triangle
from trigroup.groups import are_isomorphic
from trigroup.tits import (
    LARGE,
    REJECTED,
    SMALL,
    UNDECIDED,
    AmalgamShape,
    amalgam_largeness,
    classify,
    classify_json,
    matches_canonical,
    quotient_triangle,
)
from trigroup.wallpaper import canonical_rep, translation_lattice


def test_amalgam_largeness():
    assert amalgam_largeness(AmalgamShape(1, 5)) == SMALL
    assert amalgam_largeness(AmalgamShape(2, 2)) == SMALL
    assert amalgam_largeness(AmalgamShape(2, 3)) == LARGE
    assert amalgam_largeness((3, 1)) == SMALL
    with pytest.raises(ValueError):
        amalgam_largeness((0, 2))


def test_quotient_of_trivial_base_is_the_input():
    d = canonical_triangle(2, 3, 6)
    q = quotient_triangle(d)
    for k in d.groups:
        assert are_isomorphic(q.groups[k], d.groups[k]) is not None
    assert matches_canonical(q, {(1, 2): 2, (1, 3): 3, (2, 3): 6})


def test_quotient_of_thickened_triangle_is_canonical():
    d = catalog.thickened(2, 4, 4)
    q = quotient_triangle(d)
    assert q.groups[()].order == 1
    assert matches_canonical(q, {(1, 2): 2, (1, 3): 4, (2, 3): 4})
    assert {p: a.m_hat for p, a in all_angles(q).items()} == \
        {p: a.m_hat for p, a in all_angles(d).items()}


@pytest.mark.parametrize("triple", [(3, 3, 3), (2, 4, 4), (2, 3, 6)])
def test_canonical_triangles_are_small(triple):
    v = classify(canonical_triangle(*triple))
    assert v.kind == SMALL
    rules = [s.rule for s in v.trace]
    assert rules == ["curvature", "branching", "quotient triangle", "wallpaper lattice",
                     "virtually solvable"]
    assert translation_lattice(canonical_rep(triple)).rank == 2


def test_thickened_triangle_is_small():
    assert classify(catalog.thickened(3, 3, 3)).kind == SMALL


def test_hyperbolic_triangle_is_large():
    v = classify(canonical_triangle(2, 3, 7))
    assert v.kind == LARGE
    assert v.trace[-1].rule == "hyperbolic"
    assert v.witness["explicit_pair"] is None


def test_index_branching_is_large_with_verified_pair():
    v = classify(catalog.index3_example(), verify_depth=2)
    assert v.kind == LARGE
    step = v.trace[-1]
    assert step.rule == "free pair"
    assert step.values["all_certified"] and step.values["by_length"] == {"1": 4, "2": 12}
    assert v.witness["case"] == "Index3"


def test_not_generated_branching_is_large_by_amalgam():
    v = classify(catalog.not_generated_example())
    assert v.kind == LARGE
    assert v.witness == {"kind": "amalgam", "X_index": 2, "Y_index": ">=3"}


def test_spherical_and_invalid_inputs_are_rejected():
    assert classify(canonical_triangle(2, 2, 5)).kind == REJECTED
    v = classify(catalog.broken_example())
    assert v.kind == REJECTED and v.trace[0].rule == "validation"


def test_infinite_input_is_rejected_at_ingestion():
    v = classify_json(catalog.infinite_input_json())
    assert v.kind == REJECTED
    assert v.trace[0].rule == "infinite input"
    assert "presentation" in v.trace[0].values["reason"]


@pytest.mark.parametrize("make, kind, rule", [
    (catalog.degenerate_collapsing, SMALL, "edge amalgam"),
    (catalog.degenerate_large_amalgam, LARGE, "branching amalgam"),
    (catalog.degenerate_edge_only, SMALL, "edge amalgam"),
    (catalog.degenerate_large_split, LARGE, "branching amalgam"),
    (catalog.degenerate_dihedral, SMALL, "edge amalgam"),
    (catalog.degenerate_ambiguous, UNDECIDED, "undecided"),
])
def test_degenerate_casework(make, kind, rule):
    v = classify(make())
    assert v.kind == kind
    assert v.trace[-1].rule == rule


def test_undecided_records_the_open_predicate():
    v = classify(catalog.degenerate_ambiguous())
    assert v.witness == {"predicate": "[Y:A] = 2?"}
    routes = v.trace[1:]
    assert len(routes) == 3
    for step in routes:
        assert step.values["X_index"] == 2
        assert step.values["Y_index_at_least"] == 2
        assert step.values["A_shape"] == [1, 1]


def test_edge_only_with_order_three_is_finite():
    v = classify(catalog.degenerate_edge_only(3))
    assert v.kind == SMALL


def test_traces_are_deterministic():
    d = catalog.index3_example()
    a = json.dumps(classify(d).to_json(), sort_keys=True)
    b = json.dumps(classify(d).to_json(), sort_keys=True)
    assert a == b


def test_verdict_is_invariant_under_relabelling():
    fixtures = [catalog.index3_example(), catalog.not_generated_example(),
                catalog.degenerate_large_amalgam(), catalog.degenerate_ambiguous(),
                canonical_triangle(2, 3, 6), catalog.thickened(2, 4, 4)]
    for d in fixtures:
        kind = classify(d).kind
        for perm in itertools.permutations((1, 2, 3)):
            e = relabel(d, dict(zip((1, 2, 3), perm)))
            assert classify(e).kind == kind, (dump_diagram(d), perm)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.permutations((1, 2, 3)))
def test_random_verdicts_are_invariant_under_relabelling(seed, perm):
    d = random_triangle(random.Random(seed))
    e = relabel(d, dict(zip((1, 2, 3), perm)))
    assert classify(d).kind == classify(e).kind


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_undecided_only_in_the_degenerate_gap(seed):
    v = classify(random_triangle(random.Random(seed)))
    if v.kind == UNDECIDED:
        assert v.trace[0].values["degenerate"]
        assert all(s.rule == "undecided" for s in v.trace[1:])
