"""Finding billiard sequences with a prescribed label word by unfolding.

Reflecting the triangle across the edges named by the word gives a chain
of triangles.  A straight line through the shared edges ("windows") in order
folds back to a billiard trajectory with exactly that label sequence.  Lines
are found with a small linear program (or by sampling), rounded to
rationals, and then checked exactly; every candidate is replayed by
forward simulation before a certificate is issued.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .billiards import (
    EXACT,
    BilliardError,
    BilliardSequence,
    Certificate,
    NoPeriodicSequenceFound,
    NoSequenceFound,
    TrianglePlacement,
    TypedWord,
    add,
    adapted,
    check_letters,
    cross,
    dot,
    midpoint,
    placement_for,
    q,
    resimulate,
    scale,
    shoot,
    sign,
    sub,
)
from .diagram import CorsonDiagram

PERIODS_CHECKED = 3
SAMPLES = 48
LP_EMPTY = 1e-9


def reflect_point(p, a, b):
    """Mirror image of ``p`` in the line through ``a`` and ``b``."""
    e = sub(b, a)
    w = sub(p, a)
    c = 2 * dot(w, e) / dot(e, e)
    return add(a, sub(scale(c, e), w))


def unfold(t: TrianglePlacement, types) -> tuple[list[tuple], list[tuple]]:
    """Triangles ``T_0 .. T_r`` (vertex lists matching ``t.vertices``) and the
    windows ``(L_i, R_i)``, oriented so that ``L_i`` is on the left when
    crossing from ``T_{i-1}`` into ``T_i``."""
    tris = [tuple(t.vertices)]
    windows = []
    edge_of = {e.label: e.index for e in t.edges}
    for a in types:
        cur = tris[-1]
        k = edge_of[a]
        p, r = cur[k], cur[(k + 1) % 3]
        nxt = tuple(v if n in (k, (k + 1) % 3) else reflect_point(v, p, r)
                    for n, v in enumerate(cur))
        # the opposite vertex moves to the far side of the window
        far = nxt[(k + 2) % 3]
        if sign(cross(sub(r, p), sub(far, p))) > 0:
            windows.append((p, r))
        else:
            windows.append((r, p))
        tris.append(nxt)
    return tris, windows


def _line_separates(windows, v, point) -> bool:
    for L, R in windows:
        if sign(cross(v, sub(L, point))) <= 0 or sign(cross(v, sub(R, point))) >= 0:
            return False
    return True


def _lp_line(windows):
    """Rational ``(alpha, beta, c)`` with ``alpha*x + beta*y + c`` positive at
    every ``L`` and negative at every ``R`` (or None), and the float margin."""
    pts = [(float(x), float(y)) for L, R in windows for (x, y) in (L, R)]
    big = 10.0 * (1.0 + max(max(abs(x), abs(y)) for x, y in pts))
    a_ub, b_ub = [], []
    for (L, R) in windows:
        lx, ly = float(L[0]), float(L[1])
        rx, ry = float(R[0]), float(R[1])
        a_ub.append([-lx, -ly, -1.0, 1.0])
        b_ub.append(0.0)
        a_ub.append([rx, ry, 1.0, 1.0])
        b_ub.append(0.0)
    res = linprog(c=[0, 0, 0, -1.0], A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                  bounds=[(-1, 1), (-1, 1), (-big, big), (0, 1)], method="highs")
    if res.status != 0:
        return None, 0.0
    alpha, beta, c, margin = res.x
    if margin <= 1e-12:
        return None, margin
    for den in (10 ** 4, 10 ** 6, 10 ** 9, 10 ** 12):
        cand = tuple(Fraction(v).limit_denominator(den) for v in (alpha, beta, c))
        if _coeffs_ok(windows, cand):
            return cand, margin
    return None, margin


def _coeffs_ok(windows, coeffs) -> bool:
    alpha, beta, c = coeffs
    if alpha == 0 and beta == 0:
        return False
    for L, R in windows:
        if sign(L[0] * alpha + L[1] * beta + c) <= 0:
            return False
        if sign(R[0] * alpha + R[1] * beta + c) >= 0:
            return False
    return True


def _sampled_line(windows, samples: int):
    (L1, R1), (Ln, Rn) = windows[0], windows[-1]
    for n in range(1, samples):
        for k in range(1, samples):
            p = add(L1, scale(Fraction(n, samples), sub(R1, L1)))
            r = add(Ln, scale(Fraction(k, samples), sub(Rn, Ln)))
            v = sub(r, p)
            if len(windows) == 1:
                v = (-(R1[1] - L1[1]), R1[0] - L1[0])
            if _line_separates(windows, v, p):
                return p, v
    return None


def _start_on_line(t: TrianglePlacement, point, v):
    """A point of the line strictly inside ``T_0`` before the first window."""
    # the first window is an edge of T_0; find the crossing and back up
    hits = []
    for e in t.edges:
        den = cross(v, e.vector)
        if sign(den) == 0:
            continue
        s = cross(sub(e.start, point), e.vector) / den
        u = cross(sub(e.start, point), v) / den
        if sign(u) >= 0 and sign(u - 1) <= 0:
            hits.append((s, add(point, scale(s, v))))
    hits.sort(key=lambda h: float(h[0]))
    if len(hits) < 2:
        return None
    lo, hi = hits[0][1], hits[-1][1]
    return midpoint(lo, hi)


def _fold_and_check(t, types, point, v) -> BilliardSequence | None:
    y0 = _start_on_line(t, point, v)
    if y0 is None or not t.is_interior(y0):
        return None
    try:
        b = shoot(t, y0, v, len(types))
        resimulate(t, b)
    except BilliardError:
        return None
    return b if b.labels == tuple(types) else None


def find_sequence(t: TrianglePlacement, types) -> BilliardSequence:
    """A billiard sequence whose reflection labels are exactly ``types``."""
    types = tuple(types)
    if not types:
        raise NoSequenceFound("the empty word has no reflection")
    for a, b in zip(types, types[1:]):
        if a == b:
            raise NoSequenceFound("two consecutive reflections on the same edge are impossible")
    _, windows = unfold(t, types)
    # coarse rational sampling first: it gives short coordinates
    got = _sampled_line(windows, 8)
    if got is not None:
        b = _fold_and_check(t, types, *got)
        if b is not None:
            return b
    coeffs, margin = _lp_line(windows)
    if coeffs is not None:
        alpha, beta, c = coeffs
        v = (q(beta), q(-alpha))
        # a point of the line alpha*x + beta*y + c = 0
        point = (q(-c * alpha / (alpha * alpha + beta * beta)),
                 q(-c * beta / (alpha * alpha + beta * beta)))
        b = _fold_and_check(t, types, point, v)
        if b is not None:
            return b
    if margin < LP_EMPTY:
        # no strictly separating line up to float noise: a finer grid cannot help
        raise NoSequenceFound(f"no straight chord through the unfolded windows for {types}")
    got = _sampled_line(windows, SAMPLES)
    if got is not None:
        b = _fold_and_check(t, types, *got)
        if b is not None:
            return b
    raise NoSequenceFound(f"no straight chord through the unfolded windows for {types}")


def certify_nontrivial(d: CorsonDiagram, w: TypedWord, t: TrianglePlacement | None = None
                       ) -> Certificate:
    check_letters(d, w)
    t = t or placement_for(d)
    b = find_sequence(t, w.types)
    if not adapted(d, w, b):
        raise AssertionError("found sequence is not adapted")
    return Certificate(w, b, t.mode, "nontrivial")


# -- periodic sequences -------------------------------------------------------------------


def unfolding_isometry(t: TrianglePlacement, types):
    """Linear part ``M`` (2x2 rows) and translation of the isometry taking
    ``T_0`` to ``T_r``."""
    tris, _ = unfold(t, types)
    P, Q = tris[0], tris[-1]
    u1, u2 = sub(P[1], P[0]), sub(P[2], P[0])
    w1, w2 = sub(Q[1], Q[0]), sub(Q[2], Q[0])
    det = cross(u1, u2)
    # inverse of the column matrix [u1 u2]
    inv = ((u2[1] / det, -u2[0] / det), (-u1[1] / det, u1[0] / det))
    M = tuple(tuple(w1[r] * inv[0][c] + w2[r] * inv[1][c] for c in range(2)) for r in range(2))
    tr = sub(Q[0], (M[0][0] * P[0][0] + M[0][1] * P[0][1], M[1][0] * P[0][0] + M[1][1] * P[0][1]))
    return M, tr


def _apply(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def invariant_line(t: TrianglePlacement, types):
    """Point and direction of a line through all windows which the unfolding
    isometry maps to itself, moving forward along it."""
    M, tr = unfolding_isometry(t, types)
    _, windows = unfold(t, types)
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det == 1:
        if not (M[0][0] == 1 and M[1][1] == 1 and M[0][1] == 0 and M[1][0] == 0):
            raise NoPeriodicSequenceFound("unfolding is a rotation; no invariant line")
        if tr[0] == 0 and tr[1] == 0:
            raise NoPeriodicSequenceFound("unfolding is the identity")
        v = tr
        lo = max(cross(v, R) for _, R in windows)
        hi = min(cross(v, L) for L, _ in windows)
        if lo >= hi:
            raise NoPeriodicSequenceFound("no translation-invariant line crosses every window")
        sigma = (lo + hi) / 2
        vv = dot(v, v)
        point = scale(sigma / vv, (-v[1], v[0]))
        return point, v
    v = add(_apply(M, (q(1), q(0))), (q(1), q(0)))
    if v[0] == 0 and v[1] == 0:
        v = add(_apply(M, (q(0), q(1))), (q(0), q(1)))
    par = scale(dot(tr, v) / dot(v, v), v)
    if par[0] == 0 and par[1] == 0:
        raise NoPeriodicSequenceFound("unfolding is a reflection")
    point = scale(Fraction(1, 2), sub(tr, par))
    if not _line_separates(windows, par, point):
        raise NoPeriodicSequenceFound("the glide axis misses a window")
    return point, par


def _closed_power(period: BilliardSequence, n: int) -> BilliardSequence:
    r = period.reflections
    y0 = period.points[0]
    return BilliardSequence((y0,) + period.points[1:r + 1] * n + (y0,),
                            period.labels * n,
                            period.directions[:r] * n + (period.directions[r],),
                            period.edges * n)


def periodic_sequence(t: TrianglePlacement, types) -> BilliardSequence:
    """One period of a closed trajectory with labels ``types``: it starts and
    ends at the same interior point with the same direction."""
    point, v = invariant_line(t, types)
    y0 = _start_on_line(t, point, v)
    if y0 is None or not t.is_interior(y0):
        raise NoPeriodicSequenceFound("invariant line misses the triangle")
    r = len(types)
    try:
        b = shoot(t, y0, v, r * PERIODS_CHECKED)
    except BilliardError as e:
        raise NoPeriodicSequenceFound(str(e)) from None
    if b.labels != tuple(types) * PERIODS_CHECKED:
        raise NoPeriodicSequenceFound("folded trajectory has other labels")
    for n in range(1, PERIODS_CHECKED):
        # after each period the trajectory passes through y0 heading along v
        a, c, dn = b.points[n * r], b.points[n * r + 1], b.directions[n * r]
        w0, seg = sub(y0, a), sub(c, a)
        if dn != b.directions[0] or sign(cross(seg, w0)) != 0 or sign(dot(seg, w0)) <= 0 \
                or sign(dot(seg, seg) - dot(seg, w0)) <= 0:
            raise NoPeriodicSequenceFound("trajectory does not close up after a period")
        if b.points[n * r + 1:(n + 1) * r + 1] != b.points[1:r + 1]:
            raise NoPeriodicSequenceFound("reflection points do not repeat")
    period = BilliardSequence((y0,) + b.points[1:r + 1] + (y0,), b.labels[:r],
                              b.directions[:r + 1], b.edges[:r])
    resimulate(t, _closed_power(period, PERIODS_CHECKED))
    return period


def certify_infinite_order(d: CorsonDiagram, w: TypedWord,
                           t: TrianglePlacement | None = None) -> Certificate:
    """Certify every power of ``w`` nontrivial with a periodic trajectory.

    The certificate holds one period; ``power_certificate`` unrolls it.
    """
    check_letters(d, w)
    t = t or placement_for(d)
    if not w.types:
        raise NoPeriodicSequenceFound("empty word")
    b = periodic_sequence(t, w.types)
    if not adapted(d, w, b):
        raise AssertionError("periodic sequence is not adapted")
    return Certificate(w, b, EXACT, "infinite_order", period=len(w))


def power_certificate(d: CorsonDiagram, cert: Certificate, n: int,
                      t: TrianglePlacement | None = None) -> Certificate:
    """Certificate for the ``n``-th power, replayed exactly before it is returned."""
    if cert.conclusion != "infinite_order" or n < 1:
        raise ValueError("need an infinite-order certificate and n >= 1")
    t = t or placement_for(d)
    b = _closed_power(cert.sequence, n)
    resimulate(t, b)
    word = cert.word.power(n)
    if not adapted(d, word, b):
        raise AssertionError("power sequence is not adapted")
    return Certificate(word, b, EXACT, "nontrivial")
