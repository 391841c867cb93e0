import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigroup import catalog
from trigroup.diagram import (
    CorsonDiagram,
    GSAngle,
    ZeroAngleInfiniteLink,
    NotNonSpherical,
    NotOrdered,
    all_angles,
    angle_from_triple,
    canonical_triangle,
    classify_curvature,
    curvature_from_angles,
    diagram_from_json,
    dominate,
    dump_diagram,
    evaluate_letters,
    export_presentation,
    gs_angle,
    images_meet_beyond_base,
    link_graph,
    relabel,
    spherical_triples,
    validate,
)
from trigroup.generate import random_triangle
from trigroup.groups import cyclic, direct_product, trivial_group
from trigroup.rewriting import (
    CONJUGATE_DERIVATION,
    CONJUGATE_VIA,
    DOUBLING_RELATORS,
    Move,
    StepDoesNotApply,
    derivation_check,
)


def klein_pair():
    z2 = cyclic(2)
    return CorsonDiagram(
        (1, 2),
        {(): trivial_group(), (1,): z2, (2,): z2, (1, 2): direct_product(z2, z2)},
        {((), (1,)): (0,), ((), (2,)): (0,), ((1,), (1, 2)): (0, 1), ((2,), (1, 2)): (0, 2)})


def brute_force_m_hat(d, i, j, limit=8):
    """Shortest alternating product equal to 1, by enumerating all words."""
    ij = (i, j)
    g = d.groups[ij]
    base = set(d.base_image(ij).elements)
    side = {s: sorted({y for y in d.image((s,), ij).elements if y not in base}) for s in ij}
    for n in range(1, limit + 1):
        for first in ij:
            second = j if first == i else i
            pools = [side[first] if k % 2 == 0 else side[second] for k in range(n)]
            for word in itertools.product(*pools):
                r = g.identity
                for y in word:
                    r = g.mul[r][y]
                if r == g.identity:
                    return n
    return None


def test_canonical_244_validates():
    assert validate(canonical_triangle(2, 4, 4)).ok


def test_killing_map_is_non_injective():
    report = validate(catalog.broken_example())
    assert report.kinds() == ["NonInjectiveHom"]
    assert report.issues[0].where == ((1,), (1, 2))


def test_shared_image_gives_angle_pi():
    d = catalog.angle_pi_example()
    report = validate(d)
    assert report.kinds() == ["AnglePi"]
    assert gs_angle(d, 1, 2).m_hat == 2
    assert images_meet_beyond_base(d, 1, 2)


def test_not_commutative_is_reported():
    # G_empty = Z2 goes to the wrong factor of G_1 = Z2 x Z2
    data = catalog.thickened(2, 4, 4).to_json()
    data["homs"]["->1"] = [0, 2]
    report = validate(diagram_from_json(data))
    assert report.kinds() == ["NotCommutative", "NotCommutative"]
    assert {i.where for i in report.issues} == {(1, 2), (1, 3)}


def test_angle_of_244_pair_12():
    a = gs_angle(canonical_triangle(2, 4, 4), 1, 2)
    assert a.m_hat == 4
    assert str(a) == "pi/2"


def test_degenerate_factor_gives_zero_angle():
    d = catalog.degenerate_edge_only()
    a = gs_angle(d, 1, 2)
    assert a.is_zero and a.witness == ()


def test_klein_pair_angle_and_witness():
    d = klein_pair()
    a = gs_angle(d, 1, 2)
    assert a.m_hat == 4
    assert [str(x) for x in a.witness] == ["1:1", "2:1", "1:1", "2:1"]


def test_333_angles():
    angles = all_angles(canonical_triangle(3, 3, 3))
    assert [a.m_hat for a in angles.values()] == [6, 6, 6]


def test_spherical_triples():
    right = {(1, 2): angle_from_triple(2), (1, 3): angle_from_triple(2), (2, 3): angle_from_triple(2)}
    assert spherical_triples(right) == [(1, 2, 3)]
    flat = {(1, 2): angle_from_triple(3), (1, 3): angle_from_triple(3), (2, 3): angle_from_triple(3)}
    assert spherical_triples(flat) == []
    zero = {p: GSAngle(None) for p in right}
    assert spherical_triples(zero) == []


def test_curvature_examples():
    c = curvature_from_angles([angle_from_triple(n) for n in (2, 4, 4)])
    assert (c.kind, c.degenerate) == ("euclidean", False)
    assert curvature_from_angles([angle_from_triple(n) for n in (2, 3, 7)]).kind == "hyperbolic"
    c = curvature_from_angles([GSAngle(None), angle_from_triple(2), angle_from_triple(2)])
    assert (c.kind, c.degenerate) == ("euclidean", True)


def test_curvature_of_diagrams():
    assert classify_curvature(canonical_triangle(2, 3, 6)).kind == "euclidean"
    assert classify_curvature(canonical_triangle(2, 4, 5)).kind == "hyperbolic"
    assert classify_curvature(canonical_triangle(2, 2, 9)).kind == "spherical"


def test_link_graph_examples():
    assert link_graph(canonical_triangle(2, 4, 4), 1, 3).girth == 8
    assert link_graph(klein_pair(), 1, 2).girth == 4
    with pytest.raises(ZeroAngleInfiniteLink):
        link_graph(catalog.degenerate_edge_only(), 1, 2)


def test_single_coset_side_is_flagged():
    assert not link_graph(catalog.degenerate_collapsing(), 1, 3).degenerate
    # both vertex groups fill G_12 = Z2 here
    d = catalog.angle_pi_example()
    assert link_graph(d, 1, 2).degenerate


def _gens(text):
    return [line for line in text.splitlines() if line.startswith("gen ")]


def test_presentation_export():
    t = trivial_group()
    homs = {k: (0,) for k in canonical_triangle(2, 2, 2).homs}
    trivial = CorsonDiagram((1, 2, 3), {k: t for k in canonical_triangle(2, 2, 2).groups}, homs)
    assert _gens(export_presentation(trivial)) == []
    text = export_presentation(canonical_triangle(2, 4, 4))
    assert len(_gens(text)) == 1 + 1 + 1 + 3 + 7 + 7
    assert export_presentation(canonical_triangle(2, 4, 4)) == text
    body = text.splitlines()[len(_gens(text)):]
    assert all("=" in line for line in body)


def test_derivation_reproduces_conjugate_identity():
    assert derivation_check(DOUBLING_RELATORS, CONJUGATE_DERIVATION, "b a b^-1", "c a c^-1",
                            via=CONJUGATE_VIA)


def test_empty_derivation():
    assert derivation_check(DOUBLING_RELATORS, [], "a b", "a b")


def test_misplaced_step_is_rejected():
    with pytest.raises(StepDoesNotApply) as exc:
        derivation_check(DOUBLING_RELATORS, [[Move(0, 0, 1)]], "a b a^-1", "a")
    assert exc.value.index == 0


def test_dominate_examples():
    assert dominate(4, 5, 6) == (3, 3, 3)
    assert dominate(2, 4, 7) == (2, 4, 4)
    assert dominate(2, 3, 6) == (2, 3, 6)
    with pytest.raises(NotOrdered):
        dominate(5, 4, 6)
    with pytest.raises(NotNonSpherical):
        dominate(2, 3, 5)


def test_dominate_exhaustive():
    for k, l, m in itertools.combinations_with_replacement(range(2, 51), 3):
        if Fraction(1, k) + Fraction(1, l) + Fraction(1, m) > 1:
            continue
        out = dominate(k, l, m)
        assert sum(Fraction(1, x) for x in out) == 1
        assert all(a <= b for a, b in zip(out, (k, l, m)))


def test_json_round_trip():
    d = catalog.index3_example()
    again = diagram_from_json(json.loads(dump_diagram(d)))
    assert dump_diagram(again) == dump_diagram(d)


def test_relabel_permutes_angles():
    d = canonical_triangle(2, 3, 6)
    e = relabel(d, {1: 3, 2: 2, 3: 1})
    assert gs_angle(e, 2, 3).m_hat == gs_angle(d, 1, 2).m_hat


# -- properties --------------------------------------------------------------------------


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_angle_is_symmetric_and_even(seed):
    d = random_triangle(random.Random(seed))
    assert set(validate(d).kinds()) <= {"AnglePi"}
    for i, j in d.pairs:
        a, b = gs_angle(d, i, j), gs_angle(d, j, i)
        assert a.m_hat == b.m_hat
        if a.m_hat is not None:
            assert a.m_hat % 2 == 0
            assert len(a.witness) == a.m_hat
            sides = [w.key for w in a.witness]
            assert all(u != v for u, v in zip(sides, sides[1:]))
            assert evaluate_letters(d, (i, j), a.witness) == d.groups[(i, j)].identity


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_angle_is_minimal(seed):
    d = random_triangle(random.Random(seed))
    for i, j in d.pairs:
        m = gs_angle(d, i, j).m_hat
        expected = brute_force_m_hat(d, i, j, limit=8)
        if m is None or m <= 8:
            assert expected == m
        else:
            assert expected is None


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_angle_pi_iff_images_meet(seed):
    d = random_triangle(random.Random(seed))
    flagged = {i.where for i in validate(d).issues if i.kind == "AnglePi"}
    for i, j in d.pairs:
        assert ((i, j) in flagged) == images_meet_beyond_base(d, i, j)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_girth_matches_angle(seed):
    d = random_triangle(random.Random(seed))
    for i, j in d.pairs:
        a = gs_angle(d, i, j)
        if a.is_zero:
            continue
        assert link_graph(d, i, j).girth == a.m_hat


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_curvature_agrees_with_spherical_scan(seed):
    d = random_triangle(random.Random(seed))
    angles = all_angles(d)
    spherical = curvature_from_angles(angles.values()).kind == "spherical"
    assert spherical == (spherical_triples(angles) == [(1, 2, 3)])
