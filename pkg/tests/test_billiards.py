from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from trigroup import catalog
from trigroup.billiards import (
    EXACT,
    FLOAT,
    BilliardSequence,
    Certificate,
    DegenerateAngle,
    NoSequenceFound,
    NotEuclidean,
    PocketHit,
    PreconditionLetterInBase,
    TypedWord,
    ZeroDirection,
    adapted,
    build_triangle,
    check_sequence,
    closed_orthogonal_shot,
    is_valid,
    placement_for,
    reflect_direction,
    resimulate,
    shoot,
    to_svg,
    verify_certificate,
)
from trigroup.diagram import angle_from_triple
from trigroup.quadrat import SQRT3, QuadRat
from trigroup.unfold import certify_infinite_order, certify_nontrivial, power_certificate


def pt(x, y):
    return (QuadRat(x), QuadRat(y))


def triangle(k, l, m):
    return build_triangle([angle_from_triple(n) for n in (k, l, m)])


def test_244_placement():
    t = triangle(2, 4, 4)
    assert set(t.vertices) == {pt(0, 0), pt(1, 0), pt(0, 1)}


def test_333_placement_has_sqrt3_apex():
    t = triangle(3, 3, 3)
    assert (QuadRat(Fraction(1, 2)), SQRT3 / 2) in t.vertices


def test_236_placement():
    t = triangle(2, 3, 6)
    assert (QuadRat(0), SQRT3 / 3) in t.vertices


def test_vertex_and_edge_labels():
    t = placement_for(catalog.canonical(2, 4, 4))
    for e in t.edges:
        a, b = t.vertex_labels[e.index], t.vertex_labels[(e.index + 1) % 3]
        assert {e.label} == set(a) & set(b)


def test_non_euclidean_and_zero_angles_are_rejected():
    with pytest.raises(NotEuclidean):
        triangle(2, 3, 7)
    with pytest.raises(DegenerateAngle):
        build_triangle([angle_from_triple(None), angle_from_triple(2), angle_from_triple(2)])


def test_reflect_direction():
    hyp = (QuadRat(-1), QuadRat(1))     # direction of the line x + y = 1
    assert reflect_direction(pt(1, 0), hyp) == pt(0, -1)
    assert reflect_direction(hyp, hyp) == hyp
    d = pt(3, 7)
    assert reflect_direction(reflect_direction(d, hyp), hyp) == d


def test_shoot_in_244():
    t = triangle(2, 4, 4)
    b = shoot(t, (Fraction(1, 4), Fraction(1, 4)), (1, 0), 2)
    assert b.points[1:3] == (pt(Fraction(3, 4), Fraction(1, 4)), pt(Fraction(3, 4), 0))
    assert b.directions[1:3] == (pt(0, -1), pt(0, 1))
    assert b.labels == (t.edges[1].label, t.edges[0].label)


def test_shot_into_a_pocket_is_withdrawn():
    t = triangle(2, 4, 4)
    with pytest.raises(PocketHit):
        shoot(t, (Fraction(1, 4), Fraction(1, 4)), (-1, -1), 3)
    with pytest.raises(ZeroDirection):
        shoot(t, (Fraction(1, 4), Fraction(1, 4)), (0, 0), 3)


def test_zero_reflections_cannot_certify():
    t = triangle(2, 4, 4)
    b = shoot(t, (Fraction(1, 4), Fraction(1, 4)), (1, 0), 0)
    assert b.reflections == 0 and len(b.points) == 2
    d = catalog.canonical(2, 4, 4)
    assert not verify_certificate(d, t, Certificate(TypedWord(()), b, EXACT, "nontrivial"))


def test_adapted_examples():
    d = catalog.canonical(3, 3, 3)
    c = certify_nontrivial(d, TypedWord.parse("1:1,2:1,3:1"))
    assert c.sequence.labels == (1, 2, 3)
    assert adapted(d, c.word, c.sequence)
    assert not adapted(d, TypedWord.parse("1:0,2:1,3:1"), c.sequence)
    assert not adapted(d, TypedWord.parse("1:1,2:1"), c.sequence)


def test_certify_333_word():
    d = catalog.canonical(3, 3, 3)
    c = certify_nontrivial(d, TypedWord.parse("1:1,2:1,3:1"))
    assert c.conclusion == "nontrivial"
    assert verify_certificate(d, placement_for(d), c)
    data = c.to_json()
    assert data["labels"] == [1, 2, 3] and data["mode"] == "exact"
    assert all(len(p) == 4 for p in data["points"])


def test_certify_rejects_bad_words():
    d = catalog.canonical(3, 3, 3)
    with pytest.raises(NoSequenceFound):
        certify_nontrivial(d, TypedWord(()))
    with pytest.raises(NoSequenceFound):
        certify_nontrivial(d, TypedWord.parse("1:1,1:1"))
    with pytest.raises(PreconditionLetterInBase):
        certify_nontrivial(d, TypedWord.parse("1:0,2:1"))


def test_infinite_order_in_333():
    d = catalog.canonical(3, 3, 3)
    t = placement_for(d)
    c = certify_infinite_order(d, TypedWord.parse("1:1,2:1,3:1"), t)
    assert c.conclusion == "infinite_order" and c.period == 3
    seq = c.sequence
    assert seq.points[0] == seq.points[-1]
    assert seq.directions[0] == seq.directions[-1]
    assert seq.points[1:4] == (pt(Fraction(1, 2), 0),
                               (QuadRat(Fraction(1, 4)), SQRT3 / 4),
                               (QuadRat(Fraction(3, 4)), SQRT3 / 4))
    for n in (1, 2, 7):
        p = power_certificate(d, c, n, t)
        assert len(p.word) == 3 * n
        assert verify_certificate(d, t, p)


def test_periodic_word_in_244():
    d = catalog.canonical(2, 4, 4)
    c = certify_infinite_order(d, TypedWord.parse("1:1,3:1,2:1,3:1"))
    assert c.sequence.labels == (1, 3, 2, 3)
    assert is_valid(placement_for(d), c.sequence)


def test_float_mode_certificate_replays():
    d = catalog.canonical(2, 3, 6)
    t = placement_for(d, FLOAT)
    c = certify_nontrivial(d, TypedWord.parse("1:1,2:1,3:1,2:1"), t)
    assert c.mode == FLOAT
    assert verify_certificate(d, t, c)


@pytest.mark.parametrize("triple", [(3, 3, 3), (2, 4, 4), (2, 3, 6)])
@pytest.mark.parametrize("label", [1, 2, 3])
def test_closed_orthogonal_shots(triple, label):
    t = placement_for(catalog.canonical(*triple))
    b = closed_orthogonal_shot(t, label)
    e = t.edge_by_label(label)
    resimulate(t, b)
    assert b.points[0] == b.points[-1]
    assert b.directions[0] == e.inward_normal
    last = b.directions[-1]
    assert last[0] * e.inward_normal[1] - last[1] * e.inward_normal[0] == 0
    assert last[0] * e.inward_normal[0] + last[1] * e.inward_normal[1] < 0
    back = b.reversed()
    resimulate(t, back)
    assert back.labels == tuple(reversed(b.labels))


def test_hypotenuse_shot_in_244():
    t = triangle(2, 4, 4)
    (e,) = [e for e in t.edges
            if t.vertex_angles[e.index] == t.vertex_angles[(e.index + 1) % 3] == 4]
    assert closed_orthogonal_shot(t, e.label).reflections >= 1


def test_svg_is_deterministic():
    d = catalog.canonical(3, 3, 3)
    t = placement_for(d)
    c = certify_nontrivial(d, TypedWord.parse("1:1,2:1,3:1"), t)
    svg = to_svg(t, c.sequence)
    assert svg == to_svg(t, c.sequence)
    assert svg.startswith("<svg") and "<polyline" in svg


# -- properties --------------------------------------------------------------------------


coords = st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100)
directions = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(lambda v: v != (0, 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 3, 3), (2, 4, 4), (2, 3, 6)]), coords, coords, directions,
       st.integers(1, 8))
def test_random_shots_obey_reflection_law_and_reverse(triple, u, v, direction, n):
    t = triangle(*triple)
    a, b, c = t.vertices
    # a convex combination strictly inside
    start = tuple(a[i] + (b[i] - a[i]) * u + (c[i] - a[i]) * (1 - u) * v * Fraction(1, 2)
                  for i in range(2))
    assume(t.is_interior(start))
    try:
        seq = shoot(t, start, direction, n)
    except PocketHit:
        assume(False)
    check_sequence(t, seq)
    resimulate(t, seq)
    check_sequence(t, seq.reversed())
    assert seq.reversed().labels == tuple(reversed(seq.labels))


@settings(max_examples=30, deadline=None)
@given(coords, coords, directions, st.integers(1, 6))
def test_float_and_exact_shots_agree(u, v, direction, n):
    t = triangle(2, 4, 4)
    start = (u * (1 - v), v * (1 - u) / 2)
    assume(t.is_interior((QuadRat(start[0]), QuadRat(start[1]))))
    try:
        exact = shoot(t, start, direction, n)
    except PocketHit:
        assume(False)
    ft = t.as_float()
    approx = shoot(ft, (float(start[0]), float(start[1])),
                   (float(direction[0]), float(direction[1])), n)
    assert approx.labels == exact.labels
    for p, r in zip(approx.points, exact.points):
        assert abs(p[0] - float(r[0])) < 1e-9 and abs(p[1] - float(r[1])) < 1e-9


def test_sequence_from_wrong_labels_fails_check():
    t = triangle(2, 4, 4)
    b = shoot(t, (Fraction(1, 4), Fraction(1, 4)), (1, 0), 2)
    bad = BilliardSequence(b.points, (b.labels[1], b.labels[0]), b.directions, b.edges)
    assert not is_valid(t, bad)
