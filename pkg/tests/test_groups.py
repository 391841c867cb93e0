import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigroup.generate import pool
from trigroup.groups import (
    MissingInverse,
    NotAssociative,
    NotClosed,
    NotNormal,
    OrderCapExceeded,
    are_isomorphic,
    center,
    cyclic,
    dihedral,
    direct_product,
    group_from_function,
    index,
    is_normal,
    load_group,
    quotient_group,
    subgroup_generated,
    trivial_group,
)


def matrix_d4():
    # symmetries of the square as integer matrices, multiplied by brute force
    r = ((0, -1), (1, 0))
    s = ((1, 0), (0, -1))

    def mul(a, b):
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
                     for i in range(2))

    elems = [((1, 0), (0, 1))]
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in (r, s):
            y = mul(x, g)
            if y not in elems:
                elems.append(y)
                frontier.append(y)
    return elems, mul, r


def test_load_z2():
    g = load_group({"order": 2, "mul": [[0, 1], [1, 0]]})
    assert g.order == 2
    assert g.identity == 0
    assert g.inv == (0, 1)


def test_element_without_inverse_is_rejected():
    with pytest.raises(MissingInverse):
        load_group({"mul": [[0, 1], [1, 1]]})


def test_out_of_range_entry_is_rejected():
    with pytest.raises(NotClosed):
        load_group({"mul": [[0, 1], [1, 2]]})


def test_non_associative_table_is_rejected():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    mul = [[0, 1, 2, 3, 4],
           [1, 0, 3, 4, 2],
           [2, 4, 0, 1, 3],
           [3, 2, 4, 0, 1],
           [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        load_group({"mul": mul})


def test_identity_need_not_be_zero():
    g = load_group({"mul": [[1, 0], [0, 1]]})
    assert g.identity == 1
    assert g.inv[0] == 0


def test_d4_from_matrices_has_rotation_inverse_cubed():
    elems, mul, r = matrix_d4()
    g = group_from_function(elems, mul)
    assert g.order == 8
    ri = elems.index(r)
    assert g.inv[ri] == g.power(ri, 3)
    # library dihedral group agrees
    d4 = dihedral(4)
    assert d4.inv[1] == 3
    assert are_isomorphic(g, d4) is not None


def test_subgroup_generated_examples():
    d4 = dihedral(4)
    assert subgroup_generated(d4, []).elements == (d4.identity,)
    assert len(subgroup_generated(d4, [4])) == 2
    # s and r^2 s are reflections in perpendicular axes
    perp = d4.mul[2][4]
    assert len(subgroup_generated(d4, [4, perp])) == 4


def test_index_examples():
    d4 = dihedral(4)
    assert index(d4, subgroup_generated(d4, d4.elements)) == 1
    assert index(d4, subgroup_generated(d4, [4])) == 4
    assert index(cyclic(2), subgroup_generated(cyclic(2), [])) == 2


def test_is_normal_examples():
    d4 = dihedral(4)
    assert is_normal(d4, subgroup_generated(d4, [1]))
    assert not is_normal(d4, subgroup_generated(d4, [4]))
    assert is_normal(d4, subgroup_generated(d4, []))


def test_quotient_examples():
    d4 = dihedral(4)
    q, _ = quotient_group(d4, subgroup_generated(d4, d4.elements))
    assert q.order == 1
    z = center(d4)
    assert z.order == 2
    q, _ = quotient_group(d4, z)
    assert q.order == 4
    q, proj = quotient_group(cyclic(4), subgroup_generated(cyclic(4), [2]))
    assert are_isomorphic(q, cyclic(2)) is not None
    assert proj == (0, 1, 0, 1)
    with pytest.raises(NotNormal):
        quotient_group(d4, subgroup_generated(d4, [4]))


def test_isomorphism_examples():
    klein = direct_product(cyclic(2), cyclic(2))
    assert are_isomorphic(cyclic(4), klein) is None
    assert are_isomorphic(dihedral(2), klein) is not None
    d4 = dihedral(4)
    assert are_isomorphic(d4, d4).map == tuple(d4.elements)
    with pytest.raises(OrderCapExceeded):
        are_isomorphic(cyclic(70), cyclic(70))


def test_round_trip_json():
    g = dihedral(3)
    assert load_group(g.to_json()).mul == g.mul


groups = st.sampled_from(pool())


@given(groups)
def test_associativity_and_inverses(g):
    for x, y, z in itertools.product(g.elements, repeat=3):
        assert g.mul[g.mul[x][y]][z] == g.mul[x][g.mul[y][z]]
    for x in g.elements:
        assert g.mul[x][g.inv[x]] == g.identity


@given(groups, st.data())
def test_generation_is_idempotent_and_monotone(g, data):
    a = data.draw(st.sets(st.sampled_from(list(g.elements)), max_size=3))
    b = data.draw(st.sets(st.sampled_from(list(g.elements)), max_size=3))
    h = subgroup_generated(g, a)
    assert subgroup_generated(g, h.elements).elements == h.elements
    assert set(h.elements) <= set(subgroup_generated(g, a | b).elements)


def _restrict(g, k, h):
    """``k`` as a group of its own and ``h`` as a subgroup of it."""
    kg = group_from_function(list(k.elements), lambda x, y: g.mul[x][y])
    pos = {x: i for i, x in enumerate(k.elements)}
    return kg, subgroup_generated(kg, [pos[x] for x in h.elements])


@given(groups, st.integers(0, 10**6))
def test_index_is_multiplicative_on_chains(g, seed):
    rng = random.Random(seed)
    h = subgroup_generated(g, [rng.choice(list(g.elements))])
    k = subgroup_generated(g, list(h.elements) + [rng.choice(list(g.elements))])
    kg, hk = _restrict(g, k, h)
    assert index(g, h) == index(g, k) * index(kg, hk)


@given(groups, st.data())
def test_projection_is_multiplicative(g, data):
    z = center(g)
    x = data.draw(st.sampled_from(list(z.elements)))
    n = subgroup_generated(g, [x])
    q, proj = quotient_group(g, n)
    for a, b in itertools.product(g.elements, repeat=2):
        assert proj[g.mul[a][b]] == q.mul[proj[a]][proj[b]]


@settings(max_examples=30)
@given(groups, groups)
def test_isomorphisms_are_bijective_and_multiplicative(g1, g2):
    f = are_isomorphic(g1, g2)
    if f is None:
        assert g1 is not g2
        return
    assert sorted(f.map) == list(g2.elements)
    for a, b in itertools.product(g1.elements, repeat=2):
        assert f.map[g1.mul[a][b]] == g2.mul[f.map[a]][f.map[b]]


def test_trivial_group():
    t = trivial_group()
    assert t.order == 1 and t.identity == 0
