"""Branching of the coset complex and explicit free-subgroup witnesses.

When a vertex group ``G_a`` contains at least three cosets of the base
image, two elements ``x`` and ``y`` built from a closed orthogonal billiard
shot ``h`` off the edge ``a`` generate a free group.  ``verify_free_pair``
evidences this up to a chosen word length: every reduced word in ``x``,
``y`` is rewritten into an alternating product and matched to an explicit
billiard sequence which is replayed exactly.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .billiards import (
    EXACT,
    BilliardSequence,
    Certificate,
    DegenerateAngle,
    NotEuclidean,
    TrianglePlacement,
    TypedWord,
    adapted,
    closed_orthogonal_shot,
    placement_for,
    resimulate,
    scale,
    sub,
)
from .diagram import CorsonDiagram, all_angles, curvature_from_angles
from .groups import index, subgroup_generated


class WitnessError(ValueError):
    pass


class SphericalInput(WitnessError):
    pass


class NoBranching(WitnessError):
    pass


class CertificationGap(WitnessError):
    def __init__(self, word: str, reason: str):
        self.word = word
        super().__init__(f"word {word}: {reason}")


@dataclass(frozen=True)
class IndexAtLeast3:
    a: int
    index: int

    def to_json(self):
        return {"cause": "IndexAtLeast3", "a": self.a, "index": self.index}


@dataclass(frozen=True)
class NotGenerated:
    i: int
    j: int
    index: int   # index of the subgroup generated by the two vertex images

    def to_json(self):
        return {"cause": "NotGenerated", "pair": [self.i, self.j], "index": self.index}


@dataclass(frozen=True)
class BranchingReport:
    causes: tuple

    @property
    def branches(self) -> bool:
        return bool(self.causes)

    def to_json(self):
        return {"branches": self.branches, "causes": [c.to_json() for c in self.causes]}


def find_branching(d: CorsonDiagram) -> BranchingReport:
    if curvature_from_angles(all_angles(d).values()).kind == "spherical":
        raise SphericalInput("branching is only analysed for non-spherical triangles")
    causes: list = []
    for a in d.index_set:
        n = index(d.groups[(a,)], d.base_image((a,)))
        if n >= 3:
            causes.append(IndexAtLeast3(a, n))
    for (i, j) in d.pairs:
        g = d.groups[(i, j)]
        gens = set(d.image((i,), (i, j)).elements) | set(d.image((j,), (i, j)).elements)
        n = index(g, subgroup_generated(g, gens))
        if n > 1:
            causes.append(NotGenerated(i, j, n))
    return BranchingReport(tuple(causes))


# -- free pairs ----------------------------------------------------------------------

# A factor token is ("h", +1 | -1) for the shot word or its inverse, or
# ("a", element) for a single letter of G_a.


@dataclass(frozen=True)
class FreePair:
    case: str                       # "Index3" or "NotGenerated"
    a: int | None = None
    g_a: int | None = None
    g_tilde: int | None = None
    h: TypedWord | None = None
    x_tokens: tuple = ()
    y_tokens: tuple = ()
    x: TypedWord | None = None
    y: TypedWord | None = None
    fixture: str = ""
    cause: object = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {"case": self.case, "fixture": self.fixture}
        if self.case == "Index3":
            out.update({"a": self.a, "g_a": self.g_a, "g_tilde": self.g_tilde,
                        "h": self.h.to_json(),
                        "x": self.x.to_json(), "y": self.y.to_json(),
                        "x_factors": [list(t) for t in self.x_tokens],
                        "y_factors": [list(t) for t in self.y_tokens]})
        else:
            out["amalgam"] = self.cause.to_json() if self.cause else None
        return out


def _lowest_outside(g, excluded) -> int:
    return next(x for x in g.elements if x not in excluded)


def _expand(d: CorsonDiagram, a: int, h: TypedWord, tokens) -> TypedWord:
    out = []
    for kind, v in tokens:
        if kind == "a":
            out.append((a, v))
        elif v == 1:
            out.extend(h.letters)
        else:
            out.extend(_invert_letters(d, h.letters))
    return TypedWord(tuple(out))


def _invert_letters(d: CorsonDiagram, letters):
    return tuple((b, d.groups[(b,)].inv[x]) for b, x in reversed(letters))


def free_pair(d: CorsonDiagram) -> FreePair:
    angles = all_angles(d)
    cls = curvature_from_angles(angles.values())
    if cls.degenerate:
        raise DegenerateAngle("free pairs are built for non-degenerate triangles")
    if cls.kind != "euclidean":
        raise NotEuclidean(f"free pairs are built for Euclidean triangles, got {cls.kind}")
    report = find_branching(d)
    if not report.branches:
        raise NoBranching("the coset complex does not branch")
    t = placement_for(d)
    idx3 = [c for c in report.causes if isinstance(c, IndexAtLeast3)]
    if not idx3:
        cause = report.causes[0]
        return FreePair("NotGenerated", fixture="amalgam", cause=cause)
    cause = idx3[0]
    a = cause.a
    ga_group = d.groups[(a,)]
    base = set(d.base_image((a,)).elements)
    g_a = _lowest_outside(ga_group, base)
    coset = {ga_group.mul[g_a][z] for z in base}
    g_tilde = _lowest_outside(ga_group, base | coset)
    shot = closed_orthogonal_shot(t, a)
    letter_for = {b: _lowest_outside(d.groups[(b,)], set(d.base_image((b,)).elements))
                  for b in set(shot.labels)}
    h = TypedWord(tuple((b, letter_for[b]) for b in shot.labels))
    inv_gt = ga_group.inv[g_tilde]
    x_tokens = (("a", g_a), ("h", 1), ("a", inv_gt))
    y_tokens = (("h", 1), ("a", g_a), ("h", 1), ("a", inv_gt), ("h", -1))
    return FreePair("Index3", a, g_a, g_tilde, h, x_tokens, y_tokens,
                    _expand(d, a, h, x_tokens), _expand(d, a, h, y_tokens),
                    fixture=f"{t.triple}/edge{t.edge_by_label(a).index}", cause=cause)


# -- verification ----------------------------------------------------------------------


GENERATORS = ("x", "X", "y", "Y")   # capitals are inverses
_INVERSE = {"x": "X", "X": "x", "y": "Y", "Y": "y"}


def reduced_words(length: int):
    """Freely reduced words of exactly ``length`` letters, in lexicographic order."""
    if length == 0:
        yield ""
        return
    for w in reduced_words(length - 1):
        for s in GENERATORS:
            if not w or _INVERSE[w[-1]] != s:
                yield w + s


def _token_inverse(tokens, inv):
    out = []
    for kind, v in reversed(tokens):
        out.append(("a", inv[v]) if kind == "a" else ("h", -v))
    return tuple(out)


def normal_form(d: CorsonDiagram, pair: FreePair, word: str) -> tuple:
    """Alternating factor sequence for a word over x, X, y, Y.

    Adjacent ``h^-1 h`` (or ``h h^-1``) cancel and adjacent letters of
    ``G_a`` merge; a merged letter in the base image is a gap.
    """
    g = d.groups[(pair.a,)]
    base = set(d.base_image((pair.a,)).elements)
    pieces = {"x": pair.x_tokens, "y": pair.y_tokens,
              "X": _token_inverse(pair.x_tokens, g.inv),
              "Y": _token_inverse(pair.y_tokens, g.inv)}
    out: list = []
    for s in word:
        for tok in pieces[s]:
            if out and out[-1][0] == "h" and tok[0] == "h" and out[-1][1] == -tok[1]:
                out.pop()
            elif out and out[-1][0] == "a" and tok[0] == "a":
                merged = g.mul[out[-1][1]][tok[1]]
                if merged in base:
                    raise CertificationGap(word, "merged letter lies in the base image")
                out[-1] = ("a", merged)
            else:
                out.append(tok)
    for u, v in zip(out, out[1:]):
        if u[0] == v[0]:
            raise CertificationGap(word, "factors do not alternate")
    return tuple(out)


def _sequence_for(d: CorsonDiagram, pair: FreePair, t: TrianglePlacement,
                  shot: BilliardSequence, factors) -> tuple[TypedWord, BilliardSequence]:
    a = pair.a
    e = t.edge_by_label(a)
    n = e.inward_normal
    y0, y1 = shot.points[0], shot.points[1]
    foot = sub(scale(2, y0), y1)
    inner_pts = shot.points[1:-1]
    points, labels, dirs, edges, letters = [y0], [], [], [], []
    dirs.append(n if factors[0][0] == "h" else scale(-1, n))
    for kind, v in factors:
        if kind == "h":
            points.extend(inner_pts)
            labels.extend(shot.labels)
            dirs.extend(shot.directions[1:])
            edges.extend(shot.edges)
            letters.extend(pair.h.letters if v == 1 else _invert_letters(d, pair.h.letters))
        else:
            points.append(foot)
            labels.append(a)
            dirs.append(n)
            edges.append(e.index)
            letters.append((a, v))
    points.append(y0)
    return TypedWord(tuple(letters)), BilliardSequence(tuple(points), tuple(labels),
                                                       tuple(dirs), tuple(edges))


@dataclass(frozen=True)
class FreePairReport:
    depth: int
    words: tuple[str, ...]
    certificates: tuple[Certificate, ...] = field(repr=False)

    @property
    def all_certified(self) -> bool:
        return len(self.words) == len(self.certificates)

    def count(self, length: int) -> int:
        return sum(1 for w in self.words if len(w) == length)

    def to_json(self) -> dict:
        return {"depth": self.depth, "certified": len(self.certificates),
                "by_length": {str(k): self.count(k) for k in range(1, self.depth + 1)},
                "all_certified": self.all_certified}


def certify_word(d: CorsonDiagram, pair: FreePair, word: str,
                 t: TrianglePlacement | None = None) -> Certificate:
    t = t or placement_for(d)
    shot = closed_orthogonal_shot(t, pair.a)
    factors = normal_form(d, pair, word)
    letters, seq = _sequence_for(d, pair, t, shot, factors)
    if letters != _expand(d, pair.a, pair.h, factors):
        raise CertificationGap(word, "letters disagree with the factor expansion")
    try:
        resimulate(t, seq)
    except ValueError as exc:
        raise CertificationGap(word, f"sequence fails to replay: {exc}") from None
    if seq.reflections < 1 or not adapted(d, letters, seq):
        raise CertificationGap(word, "word is not adapted to its sequence")
    return Certificate(letters, seq, EXACT, "nontrivial")


def verify_free_pair(d: CorsonDiagram, pair: FreePair, L: int = 4, *,
                     threads: int = 1) -> FreePairReport:
    """Certify every nonempty reduced word of length at most ``L``."""
    if pair.case != "Index3":
        raise WitnessError("only index-3 pairs carry explicit words")
    t = placement_for(d)
    words = tuple(itertools.chain.from_iterable(reduced_words(n) for n in range(1, L + 1)))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            certs = tuple(ex.map(lambda w: certify_word(d, pair, w, t), words))
    else:
        certs = tuple(certify_word(d, pair, w, t) for w in words)
    return FreePairReport(L, words, certs)
