"""Large/small classification of the colimit group of a finite triangle of groups.

Every verdict carries a trace: the ordered rules applied, each with the
predicate values it used, all recomputable from the input tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .diagram import (
    CorsonDiagram,
    DiagramError,
    InfiniteInput,
    Key,
    all_angles,
    canonical_triangle,
    curvature_from_angles,
    diagram_from_json,
    gs_angle,
    relabel,
    validate,
)
from .groups import (
    Homomorphism,
    are_isomorphic,
    index,
    is_normal,
    quotient_group,
    subgroup_generated,
)
from .wallpaper import canonical_rep, translation_lattice
from .witness import IndexAtLeast3, find_branching, free_pair, verify_free_pair

LARGE, SMALL, UNDECIDED, REJECTED = "large", "small", "undecided", "rejected"


class TitsError(ValueError):
    pass


class NotNormal(TitsError):
    pass


class AngleChanged(TitsError):
    pass


@dataclass(frozen=True)
class TraceStep:
    rule: str
    ref: str
    values: dict

    def to_json(self) -> dict:
        return {"rule": self.rule, "ref": self.ref, "values": self.values}


@dataclass(frozen=True)
class Verdict:
    kind: str
    trace: tuple[TraceStep, ...]
    witness: Any = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "trace": [s.to_json() for s in self.trace]}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class AmalgamShape:
    left: int    # [U : W]
    right: int   # [V : W]


def amalgam_largeness(shape) -> str:
    """Large iff the Bass-Serre tree of ``U *_W V`` branches."""
    left, right = (shape.left, shape.right) if isinstance(shape, AmalgamShape) else shape
    if left < 1 or right < 1:
        raise ValueError("indices must be positive")
    if left == 1 or right == 1 or (left == 2 and right == 2):
        return SMALL
    return LARGE


# -- quotient triangle ---------------------------------------------------------------


def quotient_triangle(d: CorsonDiagram) -> CorsonDiagram:
    """Divide every group by the image of ``G_empty``."""
    quotients, projections, reps = {}, {}, {}
    for k, g in d.groups.items():
        n = d.base_image(k)
        if not is_normal(g, n):
            raise NotNormal(f"image of G_empty is not normal in G_{{{''.join(map(str, k))}}}")
        qg, proj = quotient_group(g, n)
        quotients[k], projections[k] = qg, proj
        first = {}
        for x, c in enumerate(proj):
            first.setdefault(c, x)
        reps[k] = [first[c] for c in range(qg.order)]
    homs = {}
    for (a, b), f in d.homs.items():
        homs[(a, b)] = Homomorphism(quotients[a], quotients[b],
                                    tuple(projections[b][f.map[x]] for x in reps[a]))
    out = CorsonDiagram(d.index_set, quotients, homs)
    for (i, j) in d.pairs:
        if gs_angle(out, i, j).m_hat != gs_angle(d, i, j).m_hat:
            raise AngleChanged(f"angle at {{{i},{j}}} changes in the quotient")
    return out


def matches_canonical(q: CorsonDiagram, triple_by_pair: dict[Key, int]) -> bool:
    """Group-by-group isomorphism with the canonical all-Z2 triangle."""
    c = canonical_triangle(triple_by_pair[(1, 2)], triple_by_pair[(1, 3)],
                           triple_by_pair[(2, 3)])
    return all(are_isomorphic(q.groups[k], c.groups[k]) is not None for k in c.groups)


# -- classification -------------------------------------------------------------------


def _mhats(angles) -> dict:
    return {"".join(map(str, p)): a.m_hat for p, a in angles.items()}


def classify(d: CorsonDiagram, *, verify_depth: int = 2, lattice_depth: int = 12,
             threads: int = 1) -> Verdict:
    trace: list[TraceStep] = []
    report = validate(d)
    if not report.ok:
        trace.append(TraceStep("validation", "diagram invariants",
                               {"issues": [str(i) for i in report.issues]}))
        return Verdict(REJECTED, tuple(trace))
    if d.index_set != (1, 2, 3):
        raise DiagramError("classification needs the index set {1, 2, 3}")
    angles = all_angles(d)
    cls = curvature_from_angles(angles.values())
    trace.append(TraceStep("curvature", "exact angle sum against pi",
                           {"m_hat": _mhats(angles), "kind": cls.kind,
                            "degenerate": cls.degenerate}))
    if cls.kind == "spherical":
        trace.append(TraceStep("spherical", "out of scope: spherical triangles", {}))
        return Verdict(REJECTED, tuple(trace))
    if cls.degenerate:
        return _classify_degenerate(d, angles, trace)
    if cls.kind == "hyperbolic":
        idx = {str(a): index(d.groups[(a,)], d.base_image((a,))) for a in d.index_set}
        trace.append(TraceStep("hyperbolic", "free subgroup in non-degenerate hyperbolic triangles",
                               {"vertex_indices": idx}))
        return Verdict(LARGE, tuple(trace), {"kind": "hyperbolic", "explicit_pair": None})
    return _classify_euclidean(d, angles, trace, verify_depth, lattice_depth, threads)


def _classify_euclidean(d, angles, trace, verify_depth, lattice_depth, threads) -> Verdict:
    branching = find_branching(d)
    trace.append(TraceStep("branching", "index at least 3 or edge group not generated",
                           branching.to_json()))
    if branching.branches:
        pair = free_pair(d)
        if pair.case == "Index3":
            rep = verify_free_pair(d, pair, verify_depth, threads=threads)
            trace.append(TraceStep("free pair", "billiard words built from a closed orthogonal shot",
                                   {"a": pair.a, "g_a": pair.g_a, "g_tilde": pair.g_tilde,
                                    "fixture": pair.fixture, **rep.to_json()}))
            if not rep.all_certified:
                raise AssertionError("free pair verification incomplete")
            return Verdict(LARGE, tuple(trace), pair.to_json())
        cause = pair.cause
        i, j = cause.i, cause.j
        (c,) = set(d.index_set) - {i, j}
        trace.append(TraceStep(
            "amalgam split", "edge group over the subgroup generated by its vertex groups",
            {"X": f"G_{i}{j}", "A": f"<G_{i}, G_{j}>", "X_index": cause.index,
             "Y": f"<G_{min(i, c)}{max(i, c)}, G_{min(j, c)}{max(j, c)}>",
             "Y_index": ">=3 (index 2 would force a zero angle)"}))
        return Verdict(LARGE, tuple(trace),
                       {"kind": "amalgam", "X_index": cause.index, "Y_index": ">=3"})
    q = quotient_triangle(d)
    by_pair = {p: a.m_hat // 2 for p, a in angles.items()}
    iso = matches_canonical(q, by_pair)
    trace.append(TraceStep("quotient triangle", "divide by the normal image of G_empty",
                           {"base_order": d.groups[()].order,
                            "isomorphic_to_canonical": iso,
                            "triple": [by_pair[(1, 2)], by_pair[(1, 3)], by_pair[(2, 3)]]}))
    if not iso:
        raise AssertionError("quotient triangle is not canonical")
    triple = tuple(sorted(by_pair.values()))
    lat = translation_lattice(canonical_rep(triple), lattice_depth).require_rank2()
    trace.append(TraceStep("wallpaper lattice", "translation subgroup of the triangle group",
                           {"triple": list(triple), "rank": lat.rank,
                            "depth": lattice_depth}))
    trace.append(TraceStep("virtually solvable", "finite-by-(virtually abelian) extension",
                           {"kernel_order": d.groups[()].order}))
    return Verdict(SMALL, tuple(trace), {"kind": "solvable chain", "triple": list(triple)})


def _classify_degenerate(d, angles, trace) -> Verdict:
    zero_pairs = [p for p, a in angles.items() if a.is_zero]
    for p, r in zero_pairs:
        (c,) = set(d.index_set) - {p, r}
        e = relabel(d, {c: 1, p: 2, r: 3})
        kind, values = _degenerate_route(e)
        values = {"zero_pair": [p, r], "relabel": {str(c): 1, str(p): 2, str(r): 3}, **values}
        trace.append(TraceStep(values.pop("rule"), values.pop("ref"), values))
        if kind != UNDECIDED:
            return Verdict(kind, tuple(trace), {"kind": "degenerate splitting",
                                               "zero_pair": [p, r]})
    return Verdict(UNDECIDED, tuple(trace), {"predicate": "[Y:A] = 2?"})


def _degenerate_route(e: CorsonDiagram) -> tuple[str, dict]:
    """Casework with ``angle_{23} = 0`` after relabelling."""
    i1 = index(e.groups[(1,)], e.base_image((1,)))
    i2 = index(e.groups[(2,)], e.base_image((2,)))
    i3 = index(e.groups[(3,)], e.base_image((3,)))
    if i2 != 1 and i3 != 1:
        raise AssertionError("zero angle between two proper vertex extensions of a finite group")
    x = e.groups[(2, 3)]
    a_sub = subgroup_generated(x, set(e.image((2,), (2, 3)).elements)
                               | set(e.image((3,), (2, 3)).elements))
    xa = index(x, a_sub)
    if xa == 1:
        shape = (index(e.groups[(1, 2)], e.image((1,), (1, 2))),
                 index(e.groups[(1, 3)], e.image((1,), (1, 3))))
        kind = amalgam_largeness(shape)
        return kind, {"rule": "edge amalgam", "ref": "colimit is G_12 amalgamated with G_13 over G_1",
                      "X_index": 1, "amalgam_indices": list(shape), "verdict": kind}
    q12 = index(e.groups[(1, 2)], e.image((2,), (1, 2)))
    q13 = index(e.groups[(1, 3)], e.image((3,), (1, 3)))
    values = {"X_index": xa, "q12": q12, "q13": q13, "i1": i1, "A_shape": [i2, i3]}
    ref = "colimit splits as X amalgamated with Y over A"
    if q12 == 1 and q13 == 1:
        return SMALL, {"rule": "Y equals A (derived via stabiliser intersections)", "ref": ref,
                       **values, "Y_index": 1}
    y_low = max(q12, q13, 2 if i1 >= 2 else 1)
    values["Y_index_at_least"] = y_low
    if xa >= 3 or y_low >= 3:
        return LARGE, {"rule": "branching amalgam", "ref": ref, **values}
    if amalgam_largeness((i2, i3)) == LARGE:
        return LARGE, {"rule": "large subgroup A", "ref": ref, **values}
    return UNDECIDED, {"rule": "undecided", "ref": ref, **values, "predicate": "[Y:A] = 2?"}


def classify_json(data, **kwargs) -> Verdict:
    """Classify raw diagram JSON; infinite inputs are rejected at ingestion."""
    try:
        d = diagram_from_json(data)
    except InfiniteInput as exc:
        return Verdict(REJECTED, (TraceStep("infinite input", "finite Cayley tables only",
                                            {"reason": str(exc)}),))
    return classify(d, **kwargs)
