"""Finite groups given by Cayley tables, with subgroup, coset, quotient and
isomorphism machinery.

Elements are plain integer indices ``0 .. order-1``.  The identity is not
required to be element 0; it is located when the table is loaded.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 256
ISOMORPHISM_ORDER_CAP = 64


class GroupError(ValueError):
    pass


class NotClosed(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class MissingInverse(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NotDivisible(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotHomomorphism(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    def op(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def product(self, xs: Iterable[int]) -> int:
        r = self.identity
        for x in xs:
            r = self.mul[r][x]
        return r

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inv[x], -n
        r = self.identity
        for _ in range(n):
            r = self.mul[r][x]
        return r

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            n += 1
        return n

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def to_json(self) -> dict:
        out = {"order": self.order, "mul": [list(row) for row in self.mul]}
        if self.names is not None:
            out["names"] = list(self.names)
        return out

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    @property
    def _set(self) -> frozenset[int]:
        # cached lazily on the frozen instance
        try:
            return self.__dict__["_set_cache"]
        except KeyError:
            s = frozenset(self.elements)
            object.__setattr__(self, "_set_cache", s)
            return s

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.order})"


@dataclass(frozen=True)
class Homomorphism:
    dom: FiniteGroup
    cod: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> Subgroup:
        return Subgroup(self.cod, tuple(sorted(set(self.map))))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def compose(self, inner: Homomorphism) -> Homomorphism:
        """``self o inner``."""
        return Homomorphism(inner.dom, self.cod, tuple(self.map[y] for y in inner.map))

    def defect(self) -> tuple[int, int] | None:
        """A pair ``(x, y)`` violating multiplicativity, or None."""
        d, c, f = self.dom, self.cod, self.map
        if f[d.identity] != c.identity:
            return (d.identity, d.identity)
        for x in d.elements:
            row, fx = d.mul[x], f[x]
            crow = c.mul[fx]
            for y in d.elements:
                if f[row[y]] != crow[f[y]]:
                    return (x, y)
        return None


# -- loading -----------------------------------------------------------------


def load_group(data, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from ``{"order", "mul", "names"?}`` or a bare table.

    Raises one of NotClosed, NoIdentity, MissingInverse, NotAssociative with the
    offending element(s) in the message.
    """
    names = None
    if isinstance(data, dict):
        table = data.get("mul")
        if table is None:
            raise GroupError("group object has no 'mul' table")
        order = data.get("order", len(table))
        names = data.get("names")
    else:
        table = data
        order = len(table)
    if not isinstance(order, int) or order < 1:
        raise GroupError(f"order must be a positive integer, got {order!r}")
    if order > cap:
        raise OrderCapExceeded(f"order {order} exceeds cap {cap}")
    if len(table) != order or any(len(row) != order for row in table):
        raise GroupError(f"table is not {order}x{order}")
    for x, row in enumerate(table):
        for y, z in enumerate(row):
            if not isinstance(z, int) or isinstance(z, bool) or not 0 <= z < order:
                raise NotClosed(f"mul[{x}][{y}] = {z!r} is not an element index")
    mul = tuple(tuple(row) for row in table)
    if names is not None:
        if len(names) != order:
            raise GroupError("names has the wrong length")
        names = tuple(str(n) for n in names)

    rng = tuple(range(order))
    identity = None
    for e in rng:
        if mul[e] == rng and all(mul[x][e] == x for x in rng):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")

    inv = []
    for x in rng:
        row = mul[x]
        y = next((y for y in rng if row[y] == identity and mul[y][x] == identity), None)
        if y is None:
            raise MissingInverse(f"element {x} has no inverse")
        inv.append(y)

    bad = _associativity_defect(mul)
    if bad is not None:
        x, y, z = bad
        raise NotAssociative(f"(x*y)*z != x*(y*z) for x={x}, y={y}, z={z}")
    return FiniteGroup(mul, identity, tuple(inv), names)


def _associativity_defect(mul) -> tuple[int, int, int] | None:
    m = np.asarray(mul, dtype=np.int32)
    left = m[m]          # left[x, y, z] = (x*y)*z
    right = m[:, m]      # right[x, y, z] = x*(y*z)
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def group_from_function(elements: Sequence, op, names=None) -> FiniteGroup:
    """Tabulate a group from a list of hashable elements and a product."""
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[op(x, y)] for y in elements] for x in elements]
    return load_group({"order": len(elements), "mul": table, "names": names})


def cyclic(n: int) -> FiniteGroup:
    return group_from_function(list(range(n)), lambda x, y: (x + y) % n,
                               names=[f"r{i}" if i else "e" for i in range(n)])


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon, order 2n.

    Element ``i + n*j`` is ``r^i s^j``; elements ``n .. 2n-1`` are the
    reflections.  The reflections ``n`` and ``n + 1`` generate the group and
    their product has order n.
    """
    elems = [(i, j) for j in (0, 1) for i in range(n)]

    def op(x, y):
        (i, j), (k, l) = x, y
        # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    names = [("e" if i == 0 else f"r{i}") if j == 0 else (f"sr{(-i) % n}" if i else "s")
             for (i, j) in elems]
    return group_from_function(elems, op, names=names)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Element ``x*|h| + y`` is the pair ``(x, y)``."""
    elems = [(x, y) for x in g.elements for y in h.elements]
    return group_from_function(
        elems, lambda p, q: (g.mul[p[0]][q[0]], h.mul[p[1]][q[1]]),
        names=[f"({g.name(x)},{h.name(y)})" for x, y in elems])


def from_permutations(gens: Sequence[Sequence[int]]) -> FiniteGroup:
    """The permutation group generated by ``gens`` (tuples in image form)."""
    n = len(gens[0])
    ident = tuple(range(n))
    gens = [tuple(g) for g in gens]
    seen = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[p[i]] for i in range(n))
            if q not in seen:
                seen[q] = len(elems)
                elems.append(q)
                queue.append(q)
    # x*y applies x first, then y
    return group_from_function(elems, lambda p, q: tuple(q[p[i]] for i in range(n)),
                               names=["".join(map(str, p)) for p in elems])


def element_named(g: FiniteGroup, name: str) -> int:
    if g.names is None or name not in g.names:
        raise KeyError(name)
    return g.names.index(name)


# -- subgroups and cosets ---------------------------------------------------


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = sorted(set(gens))
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        row = g.mul[x]
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(g, tuple(sorted(seen)))


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(g.elements))


def is_subgroup(g: FiniteGroup, elements: Iterable[int]) -> bool:
    s = set(elements)
    if g.identity not in s:
        return False
    return all(g.mul[x][y] in s for x in s for y in s)


def index(g: FiniteGroup, h: Subgroup) -> int:
    q, r = divmod(g.order, h.order)
    if r:
        raise NotDivisible(f"subgroup order {h.order} does not divide {g.order}")
    return q


def left_cosets(g: FiniteGroup, h: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets ``xH`` as sorted tuples, ordered by least element."""
    seen = set()
    cosets = []
    for x in g.elements:
        if x in seen:
            continue
        c = tuple(sorted(g.mul[x][y] for y in h.elements))
        seen.update(c)
        cosets.append(c)
    return cosets


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    hs = h._set
    for x in g.elements:
        xi = g.inv[x]
        row = g.mul[x]
        for y in h.elements:
            if g.mul[row[y]][xi] not in hs:
                return False
    return True


def quotient_group(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Return ``G/N`` and the projection as a plain tuple ``x -> coset index``."""
    if not is_normal(g, n):
        raise NotNormal("subgroup is not normal")
    cosets = left_cosets(g, n)
    proj = [0] * g.order
    for i, c in enumerate(cosets):
        for x in c:
            proj[x] = i
    reps = [c[0] for c in cosets]
    table = [[proj[g.mul[a][b]] for b in reps] for a in reps]
    return load_group(table), tuple(proj)


def center(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(x for x in g.elements
                             if all(g.mul[x][y] == g.mul[y][x] for y in g.elements)))


# -- homomorphism search ------------------------------------------------------


def generating_set(g: FiniteGroup) -> list[int]:
    """A small generating set, greedily preferring elements of large order."""
    order_of = {x: g.element_order(x) for x in g.elements}
    candidates = sorted(g.elements, key=lambda x: (-order_of[x], x))
    gens: list[int] = []
    current = {g.identity}
    for x in candidates:
        if len(current) == g.order:
            break
        if x not in current:
            gens.append(x)
            current = set(subgroup_generated(g, gens).elements)
    return gens


def _extend(g: FiniteGroup, h: FiniteGroup, gens, images) -> tuple[int, ...] | None:
    f = [-1] * g.order
    f[g.identity] = h.identity
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for s, t in zip(gens, images):
            y = g.mul[x][s]
            v = h.mul[fx][t]
            if f[y] == -1:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    return tuple(f)


def homomorphisms(g: FiniteGroup, h: FiniteGroup, *, injective: bool = False,
                  bijective: bool = False) -> Iterator[Homomorphism]:
    """Enumerate homomorphisms ``g -> h`` by backtracking over generator images."""
    if bijective and g.order != h.order:
        return
    if (injective or bijective) and h.order % g.order:
        return
    gens = generating_set(g)
    h_orders = {y: h.element_order(y) for y in h.elements}
    options = []
    for s in gens:
        n = g.element_order(s)
        if injective or bijective:
            opts = [y for y in h.elements if h_orders[y] == n]
        else:
            opts = [y for y in h.elements if n % h_orders[y] == 0]
        options.append(opts)
    for images in itertools.product(*options):
        f = _extend(g, h, gens, images)
        if f is None:
            continue
        if (injective or bijective) and len(set(f)) != len(f):
            continue
        yield Homomorphism(g, h, f)


def _order_profile(g: FiniteGroup) -> list[int]:
    return sorted(g.element_order(x) for x in g.elements)


def are_isomorphic(g1: FiniteGroup, g2: FiniteGroup, *,
                   cap: int = ISOMORPHISM_ORDER_CAP) -> Homomorphism | None:
    if max(g1.order, g2.order) > cap:
        raise OrderCapExceeded(f"isomorphism search is limited to order {cap}")
    if g1.order != g2.order or _order_profile(g1) != _order_profile(g2):
        return None
    return next(homomorphisms(g1, g2, bijective=True), None)


def check_homomorphism(f: Homomorphism) -> None:
    bad = f.defect()
    if bad is not None:
        x, y = bad
        raise NotHomomorphism(f"f({x}*{y}) != f({x})*f({y})")
