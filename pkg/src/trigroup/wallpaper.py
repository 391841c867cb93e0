"""The three Euclidean triangle groups as exact groups of plane isometries.

Each generator is the reflection in one of the three lines bounding the
canonical triangle.  All entries lie in Q(sqrt 3), so identity tests are
exact equalities.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .quadrat import QuadRat, SQRT3

SUPPORTED = ((3, 3, 3), (2, 4, 4), (2, 3, 6))


class UnsupportedTriple(ValueError):
    pass


class RankDeficient(ValueError):
    def __init__(self, rank: int):
        self.rank = rank
        super().__init__(f"translation subgroup found has rank {rank}, expected 2")


def _q(x) -> QuadRat:
    return x if isinstance(x, QuadRat) else QuadRat(x)


@dataclass(frozen=True)
class Isometry:
    """``x -> linear @ x + translation``; ``linear`` is stored row by row."""
    linear: tuple[tuple[QuadRat, QuadRat], tuple[QuadRat, QuadRat]]
    translation: tuple[QuadRat, QuadRat]

    @classmethod
    def identity(cls) -> Isometry:
        one, zero = QuadRat(1), QuadRat(0)
        return cls(((one, zero), (zero, one)), (zero, zero))

    @classmethod
    def reflection(cls, p, u) -> Isometry:
        """Reflection in the line through ``p`` with direction ``u``."""
        p = (_q(p[0]), _q(p[1]))
        u = (_q(u[0]), _q(u[1]))
        n2 = u[0] * u[0] + u[1] * u[1]
        lin = ((2 * u[0] * u[0] / n2 - 1, 2 * u[0] * u[1] / n2),
               (2 * u[0] * u[1] / n2, 2 * u[1] * u[1] / n2 - 1))
        lp = (lin[0][0] * p[0] + lin[0][1] * p[1], lin[1][0] * p[0] + lin[1][1] * p[1])
        return cls(lin, (p[0] - lp[0], p[1] - lp[1]))

    def __matmul__(self, other: Isometry) -> Isometry:
        """Composition: apply ``other`` first."""
        A, B = self.linear, other.linear
        lin = tuple(tuple(A[r][0] * B[0][c] + A[r][1] * B[1][c] for c in range(2))
                    for r in range(2))
        t = other.translation
        tr = (A[0][0] * t[0] + A[0][1] * t[1] + self.translation[0],
              A[1][0] * t[0] + A[1][1] * t[1] + self.translation[1])
        return Isometry(lin, tr)

    def __call__(self, p):
        A = self.linear
        return (A[0][0] * p[0] + A[0][1] * p[1] + self.translation[0],
                A[1][0] * p[0] + A[1][1] * p[1] + self.translation[1])

    @property
    def det(self) -> QuadRat:
        A = self.linear
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]

    @property
    def trace(self) -> QuadRat:
        return self.linear[0][0] + self.linear[1][1]

    def is_identity(self) -> bool:
        return self == Isometry.identity()

    def is_translation(self) -> bool:
        return self.linear == Isometry.identity().linear

    def is_orthogonal(self) -> bool:
        (a, b), (c, d) = self.linear
        return a * a + c * c == 1 and b * b + d * d == 1 and a * b + c * d == 0

    def to_json(self) -> dict:
        return {"linear": [[x.to_json() for x in row] for row in self.linear],
                "translation": [x.to_json() for x in self.translation]}


@dataclass(frozen=True)
class WallpaperRep:
    triple: tuple[int, int, int]
    a: Isometry
    b: Isometry
    c: Isometry
    vertices: tuple   # the triangle's corners: ab-vertex, ac-vertex, bc-vertex

    @property
    def generators(self) -> dict[str, Isometry]:
        return {"a": self.a, "b": self.b, "c": self.c}


_HALF = Fraction(1, 2)


def canonical_rep(triple) -> WallpaperRep:
    """Reflections in the sides of the canonical triangle for ``triple``."""
    triple = tuple(triple)
    if triple == (2, 4, 4):
        o, p, r = (0, 0), (1, 0), (0, 1)
        a = Isometry.reflection(o, (0, 1))      # x = 0
        b = Isometry.reflection(o, (1, 0))      # y = 0
        c = Isometry.reflection(p, (-1, 1))     # x + y = 1
        verts = (o, r, p)
    elif triple == (3, 3, 3):
        o, p, r = (0, 0), (1, 0), (QuadRat(_HALF), SQRT3 / 2)
        a = Isometry.reflection(o, r)           # y = sqrt3 x
        b = Isometry.reflection(o, (1, 0))      # y = 0
        c = Isometry.reflection(p, (r[0] - 1, r[1]))
        verts = (o, r, p)
    elif triple == (2, 3, 6):
        o, p, r = (0, 0), (1, 0), (QuadRat(0), SQRT3 / 3)
        a = Isometry.reflection(o, (0, 1))      # x = 0
        b = Isometry.reflection(o, (1, 0))      # y = 0
        c = Isometry.reflection(p, (QuadRat(-1), r[1]))
        verts = (o, r, p)
    else:
        raise UnsupportedTriple(f"{triple} is not one of {SUPPORTED}")
    rep = WallpaperRep(triple, a, b, c, tuple((_q(x), _q(y)) for x, y in verts))
    _check_relators(rep)
    return rep


def _check_relators(rep: WallpaperRep) -> None:
    k, l, m = rep.triple
    for g in (rep.a, rep.b, rep.c):
        if not g.is_orthogonal() or g.det != -1:
            raise AssertionError("generator is not a reflection")
    for word in ("aa", "bb", "cc", "ab" * k, "ac" * l, "bc" * m):
        if not evaluate(rep, word).is_identity():
            raise AssertionError(f"relator {word} fails")


def evaluate(rep: WallpaperRep, word) -> Isometry:
    """Product of the letters of ``word`` (a string or sequence over a, b, c)."""
    gens = rep.generators
    out = Isometry.identity()
    for ch in word:
        out = out @ gens[ch]
    return out


TYPE_LETTER = {1: "a", 2: "b", 3: "c"}


def word_from_types(types) -> str:
    """The generator word for a sequence of vertex labels 1, 2, 3."""
    return "".join(TYPE_LETTER[t] for t in types)


def ball(rep: WallpaperRep, radius: int) -> dict[Isometry, int]:
    """Distinct elements of word length at most ``radius`` with their lengths."""
    seen = {Isometry.identity(): 0}
    frontier = deque([Isometry.identity()])
    gens = list(rep.generators.values())
    while frontier:
        g = frontier.popleft()
        n = seen[g]
        if n == radius:
            continue
        for s in gens:
            h = g @ s
            if h not in seen:
                seen[h] = n + 1
                frontier.append(h)
    return seen


@dataclass(frozen=True)
class LatticeReport:
    rank: int
    basis: tuple
    translations_found: int

    def require_rank2(self) -> LatticeReport:
        if self.rank < 2:
            raise RankDeficient(self.rank)
        return self

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "basis": [[x.to_json() for x in v] for v in self.basis],
                "translations_found": self.translations_found}


def translation_lattice(rep: WallpaperRep, max_len: int = 12) -> LatticeReport:
    """Nonzero translations among products of length at most ``max_len`` and
    the rank they span, with a shortest vector and a shortest independent one."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    elems = ball(rep, max_len)
    vecs = [g.translation for g in elems if g.is_translation() and not g.is_identity()]

    def norm2(v):
        return v[0] * v[0] + v[1] * v[1]

    vecs.sort(key=lambda v: (float(norm2(v)), str(v[0]), str(v[1])))
    basis: list = []
    for v in vecs:
        if not basis:
            basis.append(v)
        elif basis[0][0] * v[1] - basis[0][1] * v[0] != 0:
            basis.append(v)
            break
    return LatticeReport(len(basis), tuple(basis), len(vecs))


def vertex_stabilizer(rep: WallpaperRep, vertex) -> frozenset[Isometry]:
    """The finite group generated by the reflections whose lines contain ``vertex``."""
    vertex = (_q(vertex[0]), _q(vertex[1]))
    gens = [g for g in rep.generators.values() if g(vertex) == vertex]
    seen = {Isometry.identity()}
    frontier = [Isometry.identity()]
    while frontier:
        g = frontier.pop()
        for s in gens:
            h = g @ s
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return frozenset(seen)


@dataclass(frozen=True)
class IntersectionReport:
    comparisons: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.comparisons)


def intersection_check(rep: WallpaperRep) -> IntersectionReport:
    """Vertex stabilisers meet in edge stabilisers, and all three meet trivially."""
    names = ("ab", "ac", "bc")
    stabs = [vertex_stabilizer(rep, v) for v in rep.vertices]
    gens = rep.generators
    out = []
    for i in range(3):
        for j in range(i + 1, 3):
            (shared,) = set(names[i]) & set(names[j])
            expected = frozenset({Isometry.identity(), gens[shared]})
            out.append((f"stab({names[i]}) & stab({names[j]}) = <{shared}>",
                        stabs[i] & stabs[j] == expected))
    out.append(("stab(ab) & stab(ac) & stab(bc) = 1",
                stabs[0] & stabs[1] & stabs[2] == frozenset({Isometry.identity()})))
    return IntersectionReport(tuple(out))


ROTATION_TRACES = {
    (2, 3, 6): {2, 1, -1, -2},
    (2, 4, 4): {2, 0, -2},
    (3, 3, 3): {2, -1},
}
