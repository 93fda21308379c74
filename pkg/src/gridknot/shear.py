"""Exact-arithmetic shear projection, independent of the field machinery.

This is the validation path for :func:`gridknot.diagram.build_diagram`: pick
concrete rationals 0 < a, b < 1/L, project every edge via
(x, y, z) -> (x + a*z, y + b*z), and intersect the projected segments
pairwise with exact integer predicates.  Nothing here knows about crossing
fields, crossing sides, or height comparisons; over/under comes from the z
coordinates at the intersection point and signs from the determinant of the
projected tangents, so agreement with the combinatorial path is meaningful.

All coordinates are scaled by the common denominator of a and b up front, so
every predicate is exact integer arithmetic; intersection parameters become
:class:`fractions.Fraction` only for the crossings actually found.

Degenerate incidences (tangency, collinear overlap, an endpoint in the
interior of another segment, coincident crossing points on one edge) raise
:class:`DegeneracyError` naming the offending passages.  For rationals in
(0, 1/L) these cannot occur on a valid link; the guard exists to keep the
oracle honest on out-of-convention inputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from gridknot.grid import GridLink, GridLinkError, MOVE_VECTORS, Passage, passages
from gridknot.diagram import Crossing, PlanarDiagram, crossing_type


class DegeneracyError(GridLinkError):
    """The chosen shear produced a non-generic incidence."""


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _in_box(p, a, b) -> bool:
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


class _Segment:
    __slots__ = ("passage", "p0", "p1", "z0", "z1")

    def __init__(self, passage: Passage, p0, p1, z0: int, z1: int):
        self.passage = passage
        self.p0 = p0  # projected, scaled, traversal start
        self.p1 = p1
        self.z0 = z0
        self.z1 = z1


def _project_segments(link: GridLink, a: Fraction, b: Fraction) -> list[_Segment]:
    scale = lcm(a.denominator, b.denominator)
    ai = a.numerator * (scale // a.denominator)
    bi = b.numerator * (scale // b.denominator)

    def proj(x, y, z):
        return (scale * x + ai * z, scale * y + bi * z)

    segs = []
    for p in passages(link):
        ax, ay, az = p.anchor
        if p.axis == "x":
            u, v = (ax, ay, az), (ax + 1, ay, az)
        elif p.axis == "y":
            u, v = (ax, ay, az), (ax, ay + 1, az)
        else:
            u, v = (ax, ay, az), (ax, ay, az + 1)
        if p.direction < 0:
            u, v = v, u
        segs.append(_Segment(p, proj(*u), proj(*v), u[2], v[2]))
    return segs


def _candidate_pairs(segs: list[_Segment], scale: int):
    """Index pairs whose projections share a unit cell of the scaled grid."""
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, s in enumerate(segs):
        x_cells = range(min(s.p0[0], s.p1[0]) // scale, max(s.p0[0], s.p1[0]) // scale + 1)
        y_cells = range(min(s.p0[1], s.p1[1]) // scale, max(s.p0[1], s.p1[1]) // scale + 1)
        for cx in x_cells:
            for cy in y_cells:
                buckets.setdefault((cx, cy), []).append(i)
    seen = set()
    for members in buckets.values():
        for ii in range(len(members)):
            for jj in range(ii + 1, len(members)):
                pair = (members[ii], members[jj])
                if pair not in seen:
                    seen.add(pair)
                    yield pair


def _check_incidence(s: _Segment, t: _Segment, d: tuple[int, int, int, int]) -> None:
    """Raise if a zero orientation is a real touch other than a shared corner."""
    pts = (t.p0, t.p1, s.p0, s.p1)
    boxes = ((s.p0, s.p1), (s.p0, s.p1), (t.p0, t.p1), (t.p0, t.p1))
    shared = {s.p0, s.p1} & {t.p0, t.p1}
    for di, pt, box in zip(d, pts, boxes):
        if di == 0 and _in_box(pt, *box) and pt not in shared:
            raise DegeneracyError(
                f"passages t={s.passage.t} and t={t.passage.t} touch degenerately "
                f"at scaled point {pt}"
            )


def oracle_shear_diagram(link: GridLink, a, b) -> PlanarDiagram:
    """Planar diagram from a concrete rational shear (x+a*z, y+b*z).

    Requires 0 < a < 1/L and 0 < b < 1/L.  Over that whole range the result
    is independent of a and b and matches the canonical infinitesimal
    convention, endpoint order included: a swap of two crossings sharing a
    green passage would need a*(height difference of two reds) > 1, and the
    difference is at most L (same for red passages with b), so the clusters
    near the two passage ends can never interleave.
    """
    a, b = Fraction(a), Fraction(b)
    if not (0 < a < Fraction(1, link.L) and 0 < b < Fraction(1, link.L)):
        raise ValueError(f"shear parameters must lie in (0, 1/{link.L}), got {a}, {b}")

    scale = lcm(a.denominator, b.denominator)
    segs = _project_segments(link, a, b)
    crossings = []
    per_passage: dict[int, list[tuple[Fraction, int, str]]] = {}

    for i, j in _candidate_pairs(segs, scale):
        s, t = segs[i], segs[j]
        d1 = _orient(s.p0, s.p1, t.p0)
        d2 = _orient(s.p0, s.p1, t.p1)
        d3 = _orient(t.p0, t.p1, s.p0)
        d4 = _orient(t.p0, t.p1, s.p1)
        if 0 in (d1, d2, d3, d4):
            _check_incidence(s, t, (d1, d2, d3, d4))
            continue
        if d1 == d2 or d3 == d4:
            continue
        # proper transversal crossing; exact parameters along each segment
        sv = (s.p1[0] - s.p0[0], s.p1[1] - s.p0[1])
        tv = (t.p1[0] - t.p0[0], t.p1[1] - t.p0[1])
        w = (t.p0[0] - s.p0[0], t.p0[1] - s.p0[1])
        den = sv[0] * tv[1] - sv[1] * tv[0]
        ts = Fraction(w[0] * tv[1] - w[1] * tv[0], den)
        tt = Fraction(w[0] * sv[1] - w[1] * sv[0], den)
        zs = s.z0 + (s.z1 - s.z0) * ts
        zt = t.z0 + (t.z1 - t.z0) * tt
        if zs == zt:
            raise DegeneracyError(
                f"passages t={s.passage.t} and t={t.passage.t} meet at equal height"
            )
        if zs > zt:
            over_seg, over_param, under_seg, under_param = s, ts, t, tt
        else:
            over_seg, over_param, under_seg, under_param = t, tt, s, ts
        over_p, under_p = over_seg.passage, under_seg.passage
        color = {"x": "green", "y": "red"}.get(over_p.axis)
        if color is None or under_p.axis == "z":
            raise GridLinkError(
                f"blue passage in a crossing (t={over_p.t}, t={under_p.t}); "
                "projection convention violated"
            )
        ctype = crossing_type(color, over_p.direction, under_p.direction)
        ci = len(crossings)
        crossings.append(
            Crossing(over_p, under_p, ctype, (over_param,), (under_param,), None)
        )
        per_passage.setdefault(over_p.t, []).append((over_param, ci, "over"))
        per_passage.setdefault(under_p.t, []).append((under_param, ci, "under"))

    endpoints = []
    for t in sorted(per_passage):
        items = sorted(per_passage[t])
        for k in range(1, len(items)):
            if items[k][0] == items[k - 1][0]:
                raise DegeneracyError(
                    f"two crossings coincide on passage t={t} at parameter {items[k][0]}"
                )
        endpoints.extend((ci, role) for _, ci, role in items)
    return PlanarDiagram(crossings, endpoints, len(link.components))


def _normal_form(diagram: PlanarDiagram):
    out = []
    for ci, role in diagram.endpoints:
        c = diagram.crossings[ci]
        out.append((role, c.over.t, c.under.t, c.type.sign, c.type.code))
    return out


def diagrams_equal(d1: PlanarDiagram, d2: PlanarDiagram) -> bool:
    """Same crossings, over/under assignments, signs, and endpoint order.

    Crossings are identified by their (over, under) passage pair, which is
    unique because two passages cross at most once; positions are ignored
    since the two construction routes use different position encodings.
    """
    return d1.n_components == d2.n_components and _normal_form(d1) == _normal_form(d2)
