"""Planar and Gauss diagrams of a grid link under the canonical shear.

The projection used throughout is (x, y, z) -> (x + a*z, y + b*z) for an
infinitesimal shear 0 < b << a << 1/L.  Under it a green (x) edge maps to
an exactly horizontal unit segment, a red (y) edge to an exactly vertical
one, and a blue (z) edge to a segment of length ~a that stays inside the
unit cell of its column, so blue edges never participate in crossings.

Solving the intersection constraints for integer coordinates shows that a
green edge anchored at (xg, yg, zg) and a red edge anchored at (xr, yr, zr)
cross if and only if one of two disjoint configurations holds:

  red over   xr = xg,     yr = yg - 1,  zr > zg   (crossing near the green's
                                                   west end, red's north end)
  green over xr = xg + 1, yr = yg,      zr < zg   (near the green's east end,
                                                   red's south end)

Grouping by the shared lattice column gives 2L^2 crossing fields per link:
a RedOver field at (x, y) holds greens [x, x+1] x {y} and reds {x} x [y-1, y],
a GreenOver field at (x, y) holds greens [x-1, x] x {y} and reds {x} x [y, y+1].
Every green/red passage lies in at most two fields and every crossing occurs
in exactly one, so all predicates reduce to integer height comparisons and no
numeric shear parameters appear anywhere in this module.  The exact-rational
companion in :mod:`gridknot.shear` validates the whole convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from gridknot.grid import GridLink, Passage, passages


class CrossingType(NamedTuple):
    code: str  # 'x1'..'x8'
    over_color: str  # 'green' | 'red'
    over_dir: int
    under_dir: int
    sign: int


def _det_sign(over_color: str, over_dir: int, under_dir: int) -> int:
    """Right-hand-rule sign: det of the projected (over, under) tangents."""
    if over_color == "green":
        v_over, v_under = (over_dir, 0), (0, under_dir)
    else:
        v_over, v_under = (0, over_dir), (under_dir, 0)
    det = v_over[0] * v_under[1] - v_over[1] * v_under[0]
    assert det != 0
    return 1 if det > 0 else -1


def _make_types() -> tuple[CrossingType, ...]:
    out = []
    k = 1
    for over_color in ("green", "red"):
        for over_dir in (1, -1):
            for under_dir in (1, -1):
                out.append(
                    CrossingType(
                        f"x{k}", over_color, over_dir, under_dir,
                        _det_sign(over_color, over_dir, under_dir),
                    )
                )
                k += 1
    return tuple(out)


CROSSING_TYPES: tuple[CrossingType, ...] = _make_types()
_TYPE_BY_KEY = {(t.over_color, t.over_dir, t.under_dir): t for t in CROSSING_TYPES}


def crossing_type(over_color: str, over_dir: int, under_dir: int) -> CrossingType:
    return _TYPE_BY_KEY[(over_color, over_dir, under_dir)]


def sign_table() -> dict[CrossingType, int]:
    """The fixed 8-entry crossing-sign table."""
    return {t: t.sign for t in CROSSING_TYPES}


GREEN_OVER = "green_over"
RED_OVER = "red_over"


@dataclass(frozen=True)
class CrossingField:
    """All green/red passages that can cross over one lattice column.

    ``kind`` names which color passes over in this field.  ``greens`` and
    ``reds`` are sorted by height and hold the link's passages on the field's
    two edge sets (see module docstring); either may be empty.
    """

    kind: str  # GREEN_OVER | RED_OVER
    x: int
    y: int
    greens: tuple[Passage, ...]
    reds: tuple[Passage, ...]


class Crossing(NamedTuple):
    """One transversal crossing of the projected diagram.

    ``pos_over``/``pos_under`` order the crossings along each passage: the
    canonical path stores integer pairs (side, dz) that sort in traversal
    order via (t, dir*side, dir*dz); the rational oracle stores exact
    intersection parameters in [0, 1].  Only the order is meaningful.
    ``field`` is the (kind, x, y) triple of the owning field, or None for
    oracle-produced crossings.
    """

    over: Passage
    under: Passage
    type: CrossingType
    pos_over: tuple
    pos_under: tuple
    field: tuple | None


@dataclass
class PlanarDiagram:
    """Crossings plus the total order of their 2n endpoints.

    ``endpoints`` lists (crossing index, 'over'|'under') pairs in strand
    order: components in label order, edges along each component, crossing
    points along each edge.
    """

    crossings: list
    endpoints: list
    n_components: int

    @property
    def n(self) -> int:
        return len(self.crossings)


class Arrow(NamedTuple):
    tail: int  # endpoint rank of the over strand, 1-based
    head: int  # endpoint rank of the under strand
    sign: int
    comp_over: int
    comp_under: int
    type_code: str


@dataclass
class GaussDiagram:
    arrows: list
    n_components: int


def enumerate_fields(link: GridLink) -> list[CrossingField]:
    """All 2L^2 crossing fields (including empty ones) in canonical order.

    Order is lexicographic by (kind, x, y) with GreenOver before RedOver.
    """
    greens_at: dict[tuple[int, int], list[Passage]] = {}
    reds_at: dict[tuple[int, int], list[Passage]] = {}
    for p in passages(link):
        if p.axis == "x":
            greens_at.setdefault((p.anchor.x, p.anchor.y), []).append(p)
        elif p.axis == "y":
            reds_at.setdefault((p.anchor.x, p.anchor.y), []).append(p)
    for lst in greens_at.values():
        lst.sort(key=lambda p: p.anchor.z)
    for lst in reds_at.values():
        lst.sort(key=lambda p: p.anchor.z)

    def grab(d, x, y):
        return tuple(d.get((x, y), ()))

    L = link.L
    fields = []
    for x in range(1, L + 1):
        for y in range(L):
            fields.append(
                CrossingField(GREEN_OVER, x, y, grab(greens_at, x - 1, y), grab(reds_at, x, y))
            )
    for x in range(L):
        for y in range(1, L + 1):
            fields.append(
                CrossingField(RED_OVER, x, y, grab(greens_at, x, y), grab(reds_at, x, y - 1))
            )
    return fields


def field_crossings(field: CrossingField) -> list[Crossing]:
    """All crossings of one field: strict-height green/red pairs.

    In a RedOver field the red must be strictly higher, in a GreenOver field
    the green must; equal heights are knot corners and never cross.
    """
    out = []
    red_over = field.kind == RED_OVER
    fid = (field.kind, field.x, field.y)
    for g in field.greens:
        zg = g.anchor.z
        for r in field.reds:
            zr = r.anchor.z
            if red_over:
                if not zg < zr:
                    continue
                over, under = r, g
            else:
                if not zr < zg:
                    continue
                over, under = g, r
            # side of each passage the crossing falls on, and the height gap
            # ordering crossings within that side (see module docstring)
            pos_g = (0 if red_over else 1, zr - zg)
            pos_r = (1 if red_over else 0, zg - zr)
            pos_over, pos_under = (pos_r, pos_g) if red_over else (pos_g, pos_r)
            ctype = crossing_type(
                "red" if red_over else "green", over.direction, under.direction
            )
            out.append(Crossing(over, under, ctype, pos_over, pos_under, fid))
    return out


def _endpoint_key(passage: Passage, pos: tuple):
    side, dz = pos
    return (passage.t, passage.direction * side, passage.direction * dz)


def build_diagram(link: GridLink) -> PlanarDiagram:
    """The planar diagram of the link under the canonical shear."""
    crossings: list[Crossing] = []
    for f in enumerate_fields(link):
        crossings.extend(field_crossings(f))
    endpoints = []
    for ci, c in enumerate(crossings):
        endpoints.append(((ci, "over"), _endpoint_key(c.over, c.pos_over)))
        endpoints.append(((ci, "under"), _endpoint_key(c.under, c.pos_under)))
    endpoints.sort(key=lambda e: e[1])
    return PlanarDiagram([*crossings], [e[0] for e in endpoints], len(link.components))


def _count_below(zs_low: Iterable[int], zs_high: Iterable[int]) -> int:
    """|{(a, b) : a in zs_low, b in zs_high, a < b}| for sorted inputs."""
    count = 0
    lows = 0
    i = 0
    zs_low = list(zs_low)
    for zb in zs_high:
        while i < len(zs_low) and zs_low[i] < zb:
            lows += 1
            i += 1
        count += lows
    return count


def crossing_count(link: GridLink) -> int:
    """Total crossings of build_diagram, without materializing them."""
    total = 0
    for f in enumerate_fields(link):
        gz = [p.anchor.z for p in f.greens]
        rz = [p.anchor.z for p in f.reds]
        if f.kind == RED_OVER:
            total += _count_below(gz, rz)
        else:
            total += _count_below(rz, gz)
    return total


def to_gauss(diagram: PlanarDiagram) -> GaussDiagram:
    """One arrow per crossing, tail on the over strand, head on the under.

    Endpoint ranks are 1..2n in the diagram's endpoint order; arrows are
    listed by first endpoint occurrence along the strand walk.
    """
    rank = {ep: i + 1 for i, ep in enumerate(diagram.endpoints)}
    arrows = []
    for ci, c in enumerate(diagram.crossings):
        arrows.append(
            Arrow(
                rank[(ci, "over")],
                rank[(ci, "under")],
                c.type.sign,
                c.over.comp,
                c.under.comp,
                c.type.code,
            )
        )
    arrows.sort(key=lambda a: min(a.tail, a.head))
    return GaussDiagram(arrows, diagram.n_components)


def format_gauss(gauss: GaussDiagram) -> str:
    """Text form, one `arrow <k>: ...` line per arrow."""
    lines = []
    for k, a in enumerate(gauss.arrows, start=1):
        lines.append(
            "arrow %d: tail=%d head=%d sign=%s type=%s comps=(%d,%d)"
            % (k, a.tail, a.head, "+" if a.sign > 0 else "-", a.type_code,
               a.comp_over, a.comp_under)
        )
    return "\n".join(lines) + ("\n" if lines else "")
