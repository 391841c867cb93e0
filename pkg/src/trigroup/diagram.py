"""Corson diagrams of finite groups and triangles of groups.

A diagram assigns a finite group to every subset ``J`` of the index set with
``|J| <= 2`` and an injective homomorphism to every inclusion ``J1 < J2``.
Subsets are represented as sorted tuples of labels, so ``()`` is the empty
set and ``(1, 2)`` is ``{1, 2}``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .groups import (
    FiniteGroup,
    GroupError,
    Homomorphism,
    Subgroup,
    direct_product,
    dihedral,
    load_group,
    cyclic,
    trivial_group,
    DEFAULT_ORDER_CAP,
)

Key = tuple  # sorted tuple of labels


class DiagramError(ValueError):
    pass


class InfiniteInput(DiagramError):
    """Raised for groups that are not given as finite Cayley tables."""


class ZeroAngleInfiniteLink(DiagramError):
    pass


class NotOrdered(ValueError):
    pass


class NotNonSpherical(ValueError):
    pass


def key_str(key: Key) -> str:
    return "".join(str(i) for i in key)


def parse_key(text: str) -> Key:
    return tuple(sorted(int(ch) for ch in text))


def subsets_upto_two(index_set) -> list[Key]:
    labels = sorted(index_set)
    out: list[Key] = [()]
    out += [(i,) for i in labels]
    out += list(itertools.combinations(labels, 2))
    return out


def inclusions(index_set) -> list[tuple[Key, Key]]:
    """All pairs ``J1 < J2`` with ``|J2| <= 2``, in deterministic order."""
    subs = subsets_upto_two(index_set)
    return [(a, b) for b in subs for a in subs if len(a) < len(b) and set(a) <= set(b)]


@dataclass(frozen=True)
class Letter:
    """Element ``elem`` of the group indexed by ``key``."""
    key: Key
    elem: int

    def __str__(self):
        return f"{key_str(self.key)}:{self.elem}"


@dataclass(frozen=True)
class Issue:
    kind: str
    where: tuple
    witness: tuple = ()

    def __str__(self):
        return f"{self.kind}{self.where} witness={self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def kinds(self) -> list[str]:
        return [i.kind for i in self.issues]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "issues": [{"kind": i.kind, "where": [list(w) if isinstance(w, tuple) else w
                                                       for w in i.where],
                            "witness": [list(w) if isinstance(w, tuple) else
                                        (str(w) if isinstance(w, Letter) else w)
                                        for w in i.witness]}
                           for i in self.issues]}


@dataclass(frozen=True)
class GSAngle:
    """Angle ``2*pi/m_hat``; ``m_hat is None`` encodes the zero angle."""
    m_hat: int | None
    witness: tuple[Letter, ...] = field(default=(), compare=False)

    @property
    def is_zero(self) -> bool:
        return self.m_hat is None

    @property
    def over_pi(self) -> Fraction:
        return Fraction(0) if self.m_hat is None else Fraction(2, self.m_hat)

    def __str__(self):
        if self.m_hat is None:
            return "0"
        return "pi" if self.m_hat == 2 else f"pi/{self.m_hat // 2}" if self.m_hat % 2 == 0 \
            else f"2pi/{self.m_hat}"

    def to_json(self) -> dict:
        return {"m_hat": self.m_hat, "angle": str(self),
                "witness": [str(x) for x in self.witness]}


@dataclass(frozen=True)
class CurvatureClass:
    kind: str  # "spherical" | "euclidean" | "hyperbolic"
    degenerate: bool

    def to_json(self) -> dict:
        return {"kind": self.kind, "degenerate": self.degenerate}


@dataclass(frozen=True)
class LinkGraph:
    left: tuple[tuple[int, ...], ...]    # cosets of the image of G_i
    right: tuple[tuple[int, ...], ...]   # cosets of the image of G_j
    edges: tuple[tuple[int, int], ...]   # one per coset of the image of G_empty
    girth: int | None
    degenerate: bool


class CorsonDiagram:
    """Groups indexed by subsets of size at most two, with inclusion maps."""

    def __init__(self, index_set: Iterable[int], groups: Mapping[Key, FiniteGroup],
                 homs: Mapping[tuple[Key, Key], Homomorphism | tuple | list]):
        self.index_set = tuple(sorted(index_set))
        self.groups: dict[Key, FiniteGroup] = {}
        for k in subsets_upto_two(self.index_set):
            if k not in groups:
                raise DiagramError(f"missing group for subset {{{key_str(k)}}}")
            self.groups[k] = groups[k]
        self.homs: dict[tuple[Key, Key], Homomorphism] = {}
        self.supplied_direct: set[tuple[Key, Key]] = set()
        for (a, b) in inclusions(self.index_set):
            f = homs.get((a, b))
            if f is None:
                if len(a) == 0 and len(b) == 2:
                    continue
                raise DiagramError(f"missing hom {key_str(a)}->{key_str(b)}")
            if not isinstance(f, Homomorphism):
                f = Homomorphism(self.groups[a], self.groups[b], tuple(f))
            if len(f.map) != self.groups[a].order or any(
                    not 0 <= y < self.groups[b].order for y in f.map):
                raise DiagramError(f"hom {key_str(a)}->{key_str(b)} has the wrong shape")
            self.homs[(a, b)] = f
            if len(a) == 0 and len(b) == 2:
                self.supplied_direct.add((a, b))
        for (a, b) in inclusions(self.index_set):
            if (a, b) not in self.homs:
                # derive the empty-to-edge map through the smaller label
                mid = (b[0],)
                self.homs[(a, b)] = self.homs[(mid, b)].compose(self.homs[(a, mid)])

    @property
    def pairs(self) -> list[Key]:
        return list(itertools.combinations(self.index_set, 2))

    def group(self, key: Key) -> FiniteGroup:
        return self.groups[tuple(sorted(key))]

    def hom(self, a: Key, b: Key) -> Homomorphism:
        return self.homs[(tuple(sorted(a)), tuple(sorted(b)))]

    def image(self, a: Key, b: Key) -> Subgroup:
        return self.hom(a, b).image()

    def base_image(self, key: Key) -> Subgroup:
        """Image of ``G_empty`` inside ``G_key``."""
        if not key:
            g = self.groups[()]
            return Subgroup(g, tuple(g.elements))
        return self.hom((), key).image()

    def to_json(self) -> dict:
        groups = {key_str(k): g.to_json() for k, g in self.groups.items()}
        homs = {}
        for (a, b), f in self.homs.items():
            if len(a) == 0 and len(b) == 2 and (a, b) not in self.supplied_direct:
                continue
            homs[f"{key_str(a)}->{key_str(b)}"] = list(f.map)
        return {"index_set": list(self.index_set), "groups": groups, "homs": homs}

    def __repr__(self):
        orders = ", ".join(f"{key_str(k) or '{}'}:{g.order}" for k, g in self.groups.items())
        return f"CorsonDiagram({orders})"


# -- JSON ingestion -----------------------------------------------------------


def _check_finite(name: str, obj) -> None:
    if not isinstance(obj, (dict, list)):
        raise InfiniteInput(f"group {name!r} is not a Cayley table")
    if isinstance(obj, dict):
        if "presentation" in obj or "generators" in obj:
            raise InfiniteInput(
                f"group {name!r} is given by a presentation; only finite Cayley "
                "tables are accepted (infinite vertex groups are rejected)")
        if "mul" not in obj:
            raise InfiniteInput(f"group {name!r} has no multiplication table")
        order = obj.get("order", len(obj["mul"]))
        if not isinstance(order, int) or isinstance(order, bool):
            raise InfiniteInput(f"group {name!r} has non-finite order {order!r}")


def diagram_from_json(data, *, cap: int = DEFAULT_ORDER_CAP) -> CorsonDiagram:
    if not isinstance(data, dict):
        raise DiagramError("diagram must be a JSON object")
    for k in ("groups", "homs"):
        if k not in data:
            raise DiagramError(f"diagram has no {k!r} field")
    index_set = data.get("index_set", [1, 2, 3])
    groups = {}
    for name, obj in data["groups"].items():
        _check_finite(name, obj)
        try:
            groups[parse_key(name)] = load_group(obj, cap=cap)
        except GroupError as e:
            raise type(e)(f"group {{{name}}}: {e}") from None
    homs = {}
    for name, arr in data["homs"].items():
        if "->" not in name:
            raise DiagramError(f"bad hom key {name!r}")
        a, b = name.split("->")
        homs[(parse_key(a), parse_key(b))] = tuple(arr)
    return CorsonDiagram(index_set, groups, homs)


def load_diagram(path) -> CorsonDiagram:
    with open(path) as fh:
        return diagram_from_json(json.load(fh))


def dump_diagram(d: CorsonDiagram) -> str:
    return json.dumps(d.to_json(), sort_keys=True, separators=(",", ":"))


# -- validation --------------------------------------------------------------


def validate(d: CorsonDiagram) -> ValidationReport:
    issues: list[Issue] = []
    structural_ok = True
    for (a, b), f in d.homs.items():
        bad = f.defect()
        if bad is not None:
            issues.append(Issue("NotHomomorphism", (a, b), bad))
            structural_ok = False
            continue
        seen: dict[int, int] = {}
        for x, y in enumerate(f.map):
            if y in seen:
                issues.append(Issue("NonInjectiveHom", (a, b), (seen[y], x)))
                structural_ok = False
                break
            seen[y] = x
    for (i, j) in d.pairs:
        ij = (i, j)
        via_i = d.hom((i,), ij).compose(d.hom((), (i,)))
        via_j = d.hom((j,), ij).compose(d.hom((), (j,)))
        direct = d.hom((), ij)
        for x in d.groups[()].elements:
            if not (via_i.map[x] == via_j.map[x] == direct.map[x]):
                issues.append(Issue("NotCommutative", (i, j), (x,)))
                structural_ok = False
                break
    if structural_ok:
        for (i, j) in d.pairs:
            ang = gs_angle(d, i, j)
            if ang.m_hat == 2:
                issues.append(Issue("AnglePi", (i, j), ang.witness))
    return ValidationReport(tuple(issues))


def images_meet_beyond_base(d: CorsonDiagram, i: int, j: int) -> bool:
    """Whether the images of ``G_i`` and ``G_j`` meet outside the base image."""
    ij = (i, j)
    inter = set(d.image((i,), ij).elements) & set(d.image((j,), ij).elements)
    return bool(inter - set(d.base_image(ij).elements))


# -- angles -------------------------------------------------------------------


def _side_letters(d: CorsonDiagram, side: int, ij: Key) -> list[tuple[int, int]]:
    """``(element of G_side, its image)`` outside the base, lowest preimage per image."""
    f = d.hom((side,), ij)
    base = set(d.base_image(ij).elements)
    out = {}
    for x in d.groups[(side,)].elements:
        y = f.map[x]
        if y not in base and y not in out:
            out[y] = x
    return sorted(((x, y) for y, x in out.items()))


def gs_angle(d: CorsonDiagram, i: int, j: int) -> GSAngle:
    """Minimal length of an alternating product equal to 1, with a witness.

    Breadth-first search runs backwards from the identity over states
    ``(product, side of last letter)``; the witness is then read off greedily
    so that it is the lexicographically least shortest one (side ``i`` first,
    then by element index).
    """
    ij = tuple(sorted((i, j)))
    g = d.groups[ij]
    letters = {i: _side_letters(d, i, ij), j: _side_letters(d, j, ij)}
    other = {i: j, j: i}
    # dist[(p, s)]: letters still needed after a prefix with product p ending on side s
    dist: dict[tuple[int, int], int] = {(g.identity, i): 0, (g.identity, j): 0}
    queue = deque(dist)
    while queue:
        q, t = queue.popleft()
        s = other[t]
        for _, y in letters[t]:
            p = g.mul[q][g.inv[y]]
            if (p, s) not in dist:
                dist[(p, s)] = dist[(q, t)] + 1
                queue.append((p, s))
    # the state (y, t) reached after a first letter y on side t
    best = None
    for t in (i, j):
        for x, y in letters[t]:
            r = dist.get((y, t))
            if r is not None and (best is None or 1 + r < best):
                best = 1 + r
    if best is None:
        return GSAngle(None)
    word: list[Letter] = []
    p, side, need = g.identity, None, best
    while need:
        sides = (i, j) if side is None else (other[side],)
        chosen = None
        for t in sides:
            for x, y in letters[t]:
                q = g.mul[p][y]
                if dist.get((q, t)) == need - 1:
                    chosen = (t, x, q)
                    break
            if chosen:
                break
        t, x, p = chosen
        word.append(Letter((t,), x))
        side, need = t, need - 1
    if best % 2 and _homs_injective(d, ij):
        raise AssertionError(f"odd minimal kernel length {best} for pair {ij}")
    return GSAngle(best, tuple(word))


def _homs_injective(d: CorsonDiagram, ij: Key) -> bool:
    return all(d.hom(a, ij).is_injective() for a in ((), (ij[0],), (ij[1],)))


def evaluate_letters(d: CorsonDiagram, ij: Key, word: Iterable[Letter]) -> int:
    g = d.groups[ij]
    r = g.identity
    for w in word:
        y = w.elem if w.key == ij else d.hom(w.key, ij).map[w.elem]
        r = g.mul[r][y]
    return r


def all_angles(d: CorsonDiagram, *, threads: int = 1) -> dict[Key, GSAngle]:
    pairs = d.pairs
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(lambda p: gs_angle(d, *p), pairs))
    else:
        results = [gs_angle(d, *p) for p in pairs]
    return dict(zip(pairs, results))


def angle_sum_over_pi(angles: Iterable[GSAngle]) -> Fraction:
    return sum((a.over_pi for a in angles), Fraction(0))


def spherical_triples(angles: Mapping[Key, GSAngle]) -> list[tuple[int, int, int]]:
    labels = sorted({x for p in angles for x in p})
    out = []
    for t in itertools.combinations(labels, 3):
        s = angle_sum_over_pi(angles[p] for p in itertools.combinations(t, 2))
        if s > 1:
            out.append(t)
    return out


def curvature_from_angles(angles: Iterable[GSAngle]) -> CurvatureClass:
    angles = list(angles)
    s = angle_sum_over_pi(angles)
    kind = "spherical" if s > 1 else "euclidean" if s == 1 else "hyperbolic"
    return CurvatureClass(kind, any(a.is_zero for a in angles))


def classify_curvature(d: CorsonDiagram) -> CurvatureClass:
    if len(d.index_set) != 3:
        raise DiagramError("curvature is defined for triangles of groups")
    return curvature_from_angles(all_angles(d).values())


def angle_from_triple(n: int | None) -> GSAngle:
    """``pi/n`` as a GSAngle (``None`` for the zero angle)."""
    return GSAngle(None if n is None else 2 * n)


# -- link graph ----------------------------------------------------------------


def _coset_index(g: FiniteGroup, sub: Subgroup) -> tuple[list[tuple[int, ...]], list[int]]:
    cosets, where = [], [-1] * g.order
    for x in g.elements:
        if where[x] >= 0:
            continue
        c = tuple(sorted(g.mul[x][h] for h in sub.elements))
        for y in c:
            where[y] = len(cosets)
        cosets.append(c)
    return cosets, where


def multigraph_girth(n_nodes: int, edges: list[tuple[int, int]]) -> int | None:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    for e, (u, v) in enumerate(edges):
        adj[u].append((v, e))
        if u != v:
            adj[v].append((u, e))
        else:
            return 1
    best = None
    for s in range(n_nodes):
        dist = {s: 0}
        via = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, e in adj[u]:
                if e == via[u]:
                    continue
                if v not in dist:
                    dist[v] = dist[u] + 1
                    via[v] = e
                    queue.append(v)
                else:
                    c = dist[u] + dist[v] + 1
                    if best is None or c < best:
                        best = c
    return best


def link_graph(d: CorsonDiagram, i: int, j: int) -> LinkGraph:
    ij = tuple(sorted((i, j)))
    if gs_angle(d, i, j).is_zero:
        raise ZeroAngleInfiniteLink(f"angle at {{{key_str(ij)}}} is zero; the link is infinite")
    g = d.groups[ij]
    left, lwhere = _coset_index(g, d.image((i,), ij))
    right, rwhere = _coset_index(g, d.image((j,), ij))
    base, _ = _coset_index(g, d.base_image(ij))
    edges = [(lwhere[c[0]], len(left) + rwhere[c[0]]) for c in base]
    degenerate = len(left) == 1 or len(right) == 1
    girth = multigraph_girth(len(left) + len(right), edges)
    return LinkGraph(tuple(left), tuple(right), tuple(edges), girth, degenerate)


# -- presentation export -------------------------------------------------------


def generator_name(key: Key, x: int) -> str:
    return f"g{key_str(key) or 'E'}_{x}"


def export_presentation(d: CorsonDiagram) -> str:
    """Presentation of the colimit group: all non-identity elements as
    generators, every multiplication-table entry and every identification
    ``g = phi(g)`` as a relator."""
    keys = sorted(d.groups, key=lambda k: (len(k), k))
    lines = []
    for k in keys:
        g = d.groups[k]
        for x in g.elements:
            if x != g.identity:
                lines.append(f"gen {generator_name(k, x)}")

    def name(k, x):
        return "1" if x == d.groups[k].identity else generator_name(k, x)

    for k in keys:
        g = d.groups[k]
        for x in g.elements:
            if x == g.identity:
                continue
            for y in g.elements:
                if y == g.identity:
                    continue
                lines.append(f"{name(k, x)} {name(k, y)} = {name(k, g.mul[x][y])}")
    for (a, b) in sorted(d.homs, key=lambda p: ((len(p[0]), p[0]), (len(p[1]), p[1]))):
        f = d.homs[(a, b)]
        for x in d.groups[a].elements:
            if x != d.groups[a].identity:
                lines.append(f"{name(a, x)} = {name(b, f.map[x])}")
    return "\n".join(lines) + ("\n" if lines else "")


# -- constructions -------------------------------------------------------------


def dominate(k: int, l: int, m: int) -> tuple[int, int, int]:
    """A Euclidean triple bounded coordinatewise by a non-spherical one."""
    if not (2 <= k <= l <= m):
        raise NotOrdered(f"expected 2 <= k <= l <= m, got {(k, l, m)}")
    if l * m + k * m + k * l > k * l * m:     # 1/k + 1/l + 1/m > 1
        raise NotNonSpherical(f"{(k, l, m)} is spherical")
    if k >= 3:
        return (3, 3, 3)
    if l >= 4:
        return (2, 4, 4)
    return (2, 3, 6)


def canonical_triangle(k: int, l: int, m: int) -> CorsonDiagram:
    """All vertex groups Z2, trivial G_empty, and dihedral edge groups of
    orders 2k, 2l, 2m on the pairs {1,2}, {1,3}, {2,3}."""
    t = trivial_group()
    z2 = cyclic(2)
    groups = {(): t, (1,): z2, (2,): z2, (3,): z2,
              (1, 2): dihedral(k), (1, 3): dihedral(l), (2, 3): dihedral(m)}
    homs = {((), (a,)): (0,) for a in (1, 2, 3)}
    homs[((1,), (1, 2))] = (0, k)
    homs[((2,), (1, 2))] = (0, k + 1)
    homs[((1,), (1, 3))] = (0, l)
    homs[((3,), (1, 3))] = (0, l + 1)
    homs[((2,), (2, 3))] = (0, m)
    homs[((3,), (2, 3))] = (0, m + 1)
    return CorsonDiagram((1, 2, 3), groups, homs)


def product_diagram(d: CorsonDiagram, f: FiniteGroup) -> CorsonDiagram:
    """Replace every ``G_J`` by ``G_J x F`` and every map by ``phi x id``."""
    groups = {k: direct_product(g, f) for k, g in d.groups.items()}
    n = f.order
    homs = {}
    for (a, b), h in d.homs.items():
        if (a, b) in d.supplied_direct or not (len(a) == 0 and len(b) == 2):
            homs[(a, b)] = tuple(h.map[x // n] * n + x % n for x in range(groups[a].order))
    return CorsonDiagram(d.index_set, groups, homs)


def relabel(d: CorsonDiagram, perm: Mapping[int, int]) -> CorsonDiagram:
    """Rename labels by ``perm``; element indices are unchanged."""
    def rk(k):
        return tuple(sorted(perm[x] for x in k))

    groups = {rk(k): g for k, g in d.groups.items()}
    homs = {(rk(a), rk(b)): h.map for (a, b), h in d.homs.items()
            if not (len(a) == 0 and len(b) == 2) or (a, b) in d.supplied_direct}
    out = CorsonDiagram(sorted(perm[x] for x in d.index_set), groups, homs)
    # keep the same empty-to-edge maps rather than re-deriving through a new route
    for (a, b), h in d.homs.items():
        out.homs[(rk(a), rk(b))] = Homomorphism(groups[rk(a)], groups[rk(b)], h.map)
    return out
