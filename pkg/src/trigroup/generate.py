"""Seeded random triangles of small finite groups, for property tests."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .diagram import CorsonDiagram
from .groups import (
    FiniteGroup,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    homomorphisms,
    trivial_group,
)


def quaternion() -> FiniteGroup:
    # regular representation of Q8 on its own elements
    return from_permutations([(2, 3, 1, 0, 6, 7, 5, 4), (4, 5, 7, 6, 1, 0, 2, 3)])


@lru_cache(maxsize=None)
def pool() -> tuple[FiniteGroup, ...]:
    """Every group of order at most 8, up to isomorphism."""
    z2 = cyclic(2)
    return (trivial_group(), z2, cyclic(3), cyclic(4), direct_product(z2, z2), cyclic(5),
            cyclic(6), dihedral(3), cyclic(7), cyclic(8), direct_product(z2, cyclic(4)),
            direct_product(direct_product(z2, z2), z2), dihedral(4), quaternion())


@lru_cache(maxsize=None)
def _embeddings(i: int, j: int) -> tuple[tuple[int, ...], ...]:
    g, h = pool()[i], pool()[j]
    return tuple(f.map for f in homomorphisms(g, h, injective=True))


@lru_cache(maxsize=None)
def _all_maps(i: int, j: int) -> tuple[tuple[int, ...], ...]:
    g, h = pool()[i], pool()[j]
    return tuple(f.map for f in homomorphisms(g, h))


def _pick_over(rng: random.Random, i: int) -> int:
    """A pool index of a group admitting an embedding of pool group ``i``."""
    choices = [j for j in range(len(pool())) if _embeddings(i, j)]
    return rng.choice(choices)


def _compose(f, g):
    return tuple(f[y] for y in g)


def random_triangle(rng: random.Random, *, injective: bool = True,
                    attempts: int = 50) -> CorsonDiagram:
    """Random triangle with group orders at most 8.

    With ``injective`` the maps are embeddings and each edge map from the
    second vertex is chosen to agree with the first route through
    ``G_empty`` (resampling the edge group when none does).  Otherwise maps
    are arbitrary homomorphisms and validation is expected to complain.
    """
    P = pool()
    weights = [6, 4, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1]
    e = rng.choices(range(len(P)), weights=weights)[0]
    if injective:
        e = rng.choice([0, 0, 0, 1, 1, 2, 3, 4]) if rng.random() < 0.8 else e
    verts = {a: _pick_over(rng, e) for a in (1, 2, 3)}
    maps_from = _embeddings if injective else _all_maps
    groups = {(): P[e]}
    homs = {}
    for a in (1, 2, 3):
        groups[(a,)] = P[verts[a]]
        homs[((), (a,))] = rng.choice(maps_from(e, verts[a]))
    for i, j in itertools.combinations((1, 2, 3), 2):
        for _ in range(attempts):
            c = rng.randrange(len(P))
            fi_opts = maps_from(verts[i], c)
            fj_opts = maps_from(verts[j], c)
            if not fi_opts or not fj_opts:
                continue
            fi = rng.choice(fi_opts)
            target = _compose(fi, homs[((), (i,))])
            if injective:
                good = [f for f in fj_opts if _compose(f, homs[((), (j,))]) == target]
            else:
                good = list(fj_opts)
            if good:
                groups[(i, j)] = P[c]
                homs[((i,), (i, j))] = fi
                homs[((j,), (i, j))] = rng.choice(good)
                break
        else:
            # a product always hosts both vertex groups compatibly over G_empty = 1
            return random_triangle(rng, injective=injective, attempts=attempts)
    return CorsonDiagram((1, 2, 3), groups, homs)
