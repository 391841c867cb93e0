"""Ready-made diagrams used by the tests, the CLI and the README."""

from __future__ import annotations

from .diagram import CorsonDiagram, canonical_triangle, product_diagram
from .groups import cyclic, dihedral, direct_product, element_named, from_permutations, trivial_group


def canonical(k: int, l: int, m: int) -> CorsonDiagram:
    return canonical_triangle(k, l, m)


def symmetric4():
    return from_permutations([(1, 0, 2, 3), (1, 2, 3, 0)])


def index3_example() -> CorsonDiagram:
    """Euclidean (3,3,3) triangle whose vertex group G_1 = Z2 x Z2 has index 4
    over the trivial G_empty.

    G_1 maps onto the Klein subgroup {e, (01), (23), (01)(23)} of S4 in both
    edge groups; G_2 and G_3 map to the transpositions (12) and (13).  Each of
    these pairs generates S4 with alternating relator length 6, and G_23 is
    the dihedral group of order 6.
    """
    s4 = symmetric4()
    v = direct_product(cyclic(2), cyclic(2))   # element 2*x + y is (x, y)
    e = s4.identity
    p01, p23 = element_named(s4, "1023"), element_named(s4, "0132")
    klein = (e, p23, p01, s4.mul[p01][p23])
    t12, t13 = element_named(s4, "0213"), element_named(s4, "0321")
    z2 = cyclic(2)
    groups = {(): trivial_group(), (1,): v, (2,): z2, (3,): z2,
              (1, 2): s4, (1, 3): s4, (2, 3): dihedral(3)}
    homs = {((), (1,)): (0,), ((), (2,)): (0,), ((), (3,)): (0,),
            ((1,), (1, 2)): klein, ((2,), (1, 2)): (e, t12),
            ((1,), (1, 3)): klein, ((3,), (1, 3)): (e, t13),
            ((2,), (2, 3)): (0, 3), ((3,), (2, 3)): (0, 4)}
    return CorsonDiagram((1, 2, 3), groups, homs)


def not_generated_example() -> CorsonDiagram:
    """The (2,4,4) triangle with G_12 enlarged to D2 x Z2; the vertex
    images stay inside the D2 factor and generate a subgroup of index 2."""
    d = canonical_triangle(2, 4, 4)
    groups = dict(d.groups)
    groups[(1, 2)] = direct_product(dihedral(2), cyclic(2))  # (x, y) is 2*x + y
    homs = {k: f.map for k, f in d.homs.items() if not (len(k[0]) == 0 and len(k[1]) == 2)}
    homs[((1,), (1, 2))] = (0, 4)
    homs[((2,), (1, 2))] = (0, 6)
    return CorsonDiagram((1, 2, 3), groups, homs)


def thickened(k: int, l: int, m: int) -> CorsonDiagram:
    """Canonical triangle times Z2, so that G_empty = Z2 is normal everywhere."""
    return product_diagram(canonical_triangle(k, l, m), cyclic(2))


def _diagram(groups, homs) -> CorsonDiagram:
    return CorsonDiagram((1, 2, 3), groups, homs)


def degenerate_collapsing() -> CorsonDiagram:
    """Zero angles with G_23 generated by its vertex images; the colimit is
    Z2 *_{Z2} D4 = D4, which is finite."""
    t, z2 = trivial_group(), cyclic(2)
    return _diagram(
        {(): t, (1,): z2, (2,): t, (3,): z2, (1, 2): z2, (1, 3): dihedral(4), (2, 3): z2},
        {((), (1,)): (0,), ((), (2,)): (0,), ((), (3,)): (0,),
         ((1,), (1, 2)): (0, 1), ((2,), (1, 2)): (0,),
         ((1,), (1, 3)): (0, 4), ((3,), (1, 3)): (0, 5),
         ((2,), (2, 3)): (0,), ((3,), (2, 3)): (0, 1)})


def degenerate_large_amalgam() -> CorsonDiagram:
    """Zero angles; the colimit is S3 *_{Z2} (Z2 x Z2), a large amalgam."""
    t, z2 = trivial_group(), cyclic(2)
    return _diagram(
        {(): t, (1,): z2, (2,): t, (3,): t, (1, 2): dihedral(3),
         (1, 3): direct_product(z2, z2), (2, 3): t},
        {((), (1,)): (0,), ((), (2,)): (0,), ((), (3,)): (0,),
         ((1,), (1, 2)): (0, 3), ((2,), (1, 2)): (0,),
         ((1,), (1, 3)): (0, 2), ((3,), (1, 3)): (0,),
         ((2,), (2, 3)): (0,), ((3,), (2, 3)): (0,)})


def degenerate_edge_only(order: int = 2) -> CorsonDiagram:
    """Only G_23 = Z_order is nontrivial; the colimit is that cyclic group."""
    t = trivial_group()
    return _diagram(
        {(): t, (1,): t, (2,): t, (3,): t, (1, 2): t, (1, 3): t, (2, 3): cyclic(order)},
        {((), (1,)): (0,), ((), (2,)): (0,), ((), (3,)): (0,),
         ((1,), (1, 2)): (0,), ((2,), (1, 2)): (0,), ((1,), (1, 3)): (0,),
         ((3,), (1, 3)): (0,), ((2,), (2, 3)): (0,), ((3,), (2, 3)): (0,)})


def degenerate_large_split() -> CorsonDiagram:
    """G_23 = Z3 over trivial vertex images (index 3) next to G_12 = Z2."""
    t, z2 = trivial_group(), cyclic(2)
    return _diagram(
        {(): t, (1,): t, (2,): t, (3,): t, (1, 2): z2, (1, 3): t, (2, 3): cyclic(3)},
        {((), (1,)): (0,), ((), (2,)): (0,), ((), (3,)): (0,),
         ((1,), (1, 2)): (0,), ((2,), (1, 2)): (0,), ((1,), (1, 3)): (0,),
         ((3,), (1, 3)): (0,), ((2,), (2, 3)): (0,), ((3,), (2, 3)): (0,)})


def degenerate_dihedral() -> CorsonDiagram:
    """Every angle is zero and the colimit is Z2 * Z2."""
    t, z2 = trivial_group(), cyclic(2)
    return _diagram(
        {(): t, (1,): z2, (2,): t, (3,): t, (1, 2): z2, (1, 3): z2, (2, 3): z2},
        {((), (1,)): (0,), ((), (2,)): (0,), ((), (3,)): (0,),
         ((1,), (1, 2)): (0, 1), ((2,), (1, 2)): (0,), ((1,), (1, 3)): (0, 1),
         ((3,), (1, 3)): (0,), ((2,), (2, 3)): (0,), ((3,), (2, 3)): (0,)})


def angle_pi_example() -> CorsonDiagram:
    """G_12 = Z2 with both vertex groups mapping onto it."""
    d = canonical_triangle(2, 4, 4)
    groups = dict(d.groups)
    groups[(1, 2)] = cyclic(2)
    homs = {k: f.map for k, f in d.homs.items() if not (len(k[0]) == 0 and len(k[1]) == 2)}
    homs[((1,), (1, 2))] = (0, 1)
    homs[((2,), (1, 2))] = (0, 1)
    return CorsonDiagram((1, 2, 3), groups, homs)


def broken_example() -> CorsonDiagram:
    """(2,4,4) with the map G_1 -> G_12 killing the generator."""
    d = canonical_triangle(2, 4, 4)
    homs = {k: f.map for k, f in d.homs.items() if not (len(k[0]) == 0 and len(k[1]) == 2)}
    homs[((1,), (1, 2))] = (0, 0)
    return CorsonDiagram((1, 2, 3), d.groups, homs)


def infinite_input_json() -> dict:
    """A triangle whose edge groups are infinite and only given by
    presentations (a Thompson-group style input); ingestion rejects it."""
    f = {"presentation": "<A, B | [A B^-1, A^-1 B A], [A B^-1, A^-2 B A^2]>",
         "order": "infinite"}
    z2 = {"order": 2, "mul": [[0, 1], [1, 0]]}
    one = {"order": 1, "mul": [[0]]}
    return {"index_set": [1, 2, 3],
            "groups": {"": one, "1": z2, "2": z2, "3": z2, "12": f, "13": f, "23": f},
            "homs": {"->1": [0], "->2": [0], "->3": [0]}}


def degenerate_ambiguous() -> CorsonDiagram:
    """All vertex groups equal G_empty = Z3 and every edge group is Z6.

    Each zero-angle splitting has [X:A] = 2 and the finite data only bound
    [Y:A] below by 2, so the casework cannot decide.
    """
    z3, z6 = cyclic(3), cyclic(6)
    ident = (0, 1, 2)
    up = (0, 2, 4)
    groups = {(): z3, (1,): z3, (2,): z3, (3,): z3, (1, 2): z6, (1, 3): z6, (2, 3): z6}
    homs = {((), (a,)): ident for a in (1, 2, 3)}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        homs[((i,), (i, j))] = up
        homs[((j,), (i, j))] = up
    return _diagram(groups, homs)
