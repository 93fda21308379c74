"""Subdiagram counting straight from crossing fields, without the diagram.

:func:`gridknot.invariants.phi_2d` walks every subset of actual crossings,
so it pays for the full diagram.  This module computes the same count vector
from the link's crossing fields: a subdiagram is described by a shape, a
labeled template saying in which order its endpoints sit on the link, which
field/type/components each arrow uses, and which endpoints share a passage.
All realizations of one shape form a :class:`~gridknot.counting.CountingInstance`
whose slots are whole edge-set buckets, so the expensive part is a handful of
height-constrained counts instead of a walk over crossing subsets.

Shape bookkeeping, in the order the code applies it:

* endpoints on distinct passages sort by integer passage time t, so a shape
  fixes one slot per endpoint and strict t-increase recovers the order;
* endpoints sharing a passage are consecutive (all other passages differ in
  t), giving collision groups: a merged slot whose one token serves several
  arrows, admissible only when every member wants the same color, direction,
  component and edge set;
* within a group the traversal orders endpoints by (side, partner height)
  along the passage direction, so same-side neighbours add a height condition
  between their partner slots and opposite-side neighbours are a constant
  feasibility check;
* two arrows may not share both their groups: a green/red passage pair
  crosses at most once.

Signs, components and endpoint patterns accumulate into the same canonical
codes phi_2d emits, so the two routes agree entrywise.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from gridknot.counting import CountingInstance, count_with_z
from gridknot.diagram import (
    CROSSING_TYPES,
    Arrow,
    CrossingField,
    RED_OVER,
    enumerate_fields,
)
from gridknot.grid import GridLink, passages
from gridknot.invariants import PhiVector, subdiagram_code

MAX_TEMPLATE_ORDER = 4
MAX_PHI_ORDER = 3


class LabeledArrow(NamedTuple):
    tail: int  # endpoint position of the over strand, 1..2*degree
    head: int  # endpoint position of the under strand
    type_code: str
    comp_over: int
    comp_under: int


@dataclass(frozen=True)
class LabeledDiagram:
    """An abstract arrow template: positions, directions, types, components."""

    arrows: tuple

    @property
    def degree(self) -> int:
        return len(self.arrows)


def _directed_pairings(degree: int):
    """All ways to pair 0..2*degree-1 into ordered (tail, head) arrows."""
    out = []
    acc = []

    def rec(free):
        if not free:
            out.append(tuple(acc))
            return
        p = free[0]
        for i in range(1, len(free)):
            rest = free[1:i] + free[i + 1 :]
            for arrow in ((p, free[i]), (free[i], p)):
                acc.append(arrow)
                rec(rest)
                acc.pop()

    rec(list(range(2 * degree)))
    return out


def enumerate_labeled_diagrams(d: int, components: int) -> list:
    """Every labeled diagram with 1..d arrows on the given component count.

    Arrows are directed, so each degree contributes
    (2*degree)!/degree! endpoint pairings times (8 * components^2)^degree
    type/component labelings.
    """
    if not 1 <= d <= MAX_TEMPLATE_ORDER:
        raise ValueError(f"order must be in 1..{MAX_TEMPLATE_ORDER}, got {d}")
    if components < 1:
        raise ValueError(f"need at least one component, got {components}")
    comps = range(1, components + 1)
    out = []
    for degree in range(1, d + 1):
        labelings = [
            (t.code, c_over, c_under)
            for t in CROSSING_TYPES
            for c_over in comps
            for c_under in comps
        ]
        for pairing in _directed_pairings(degree):
            stack = [()]
            for tail, head in pairing:
                stack = [
                    prefix + (LabeledArrow(tail + 1, head + 1, *lab),)
                    for prefix in stack
                    for lab in labelings
                ]
            out.extend(LabeledDiagram(arrows) for arrows in stack)
    return out


_TYPE_BY_CODE = {t.code: t for t in CROSSING_TYPES}


def _field_bucket(field: CrossingField, color: str, direction: int, comp: int):
    src = field.greens if color == "green" else field.reds
    return sorted(
        (p.t, p.anchor.z) for p in src if p.direction == direction and p.comp == comp
    )


def build_instance(
    diagram: LabeledDiagram, fields, L: int | None = None
) -> CountingInstance:
    """The counting instance for realizations of ``diagram``, one field per
    arrow, with every endpoint on its own passage.

    The slot at each endpoint position holds the assigned field's passages of
    that endpoint's color, direction and component; a field whose over color
    contradicts the arrow type leaves both of that arrow's slots empty.
    Height conditions put each head (under) strictly below its tail (over).
    """
    arrows = diagram.arrows
    if len(fields) != len(arrows):
        raise ValueError(f"need one field per arrow, got {len(fields)} for {len(arrows)}")
    m = 2 * len(arrows)
    if sorted(pos for a in arrows for pos in (a.tail, a.head)) != list(range(1, m + 1)):
        raise ValueError("arrow endpoints must cover positions 1..2*degree exactly")
    slots: list = [[] for _ in range(m)]
    conds = []
    for arrow, field in zip(arrows, fields):
        ctype = _TYPE_BY_CODE[arrow.type_code]
        over_color = "red" if field.kind == RED_OVER else "green"
        conds.append((arrow.head - 1, arrow.tail - 1))
        if ctype.over_color != over_color:
            continue
        under_color = "green" if over_color == "red" else "red"
        slots[arrow.tail - 1] = _field_bucket(
            field, over_color, ctype.over_dir, arrow.comp_over
        )
        slots[arrow.head - 1] = _field_bucket(
            field, under_color, ctype.under_dir, arrow.comp_under
        )
    if L is None:
        L = max((z for slot in slots for _, z in slot), default=0)
    return CountingInstance(slots, conds, L)


class _Slot(NamedTuple):
    """One endpoint's candidate passages: an edge-set bucket plus field side."""

    color: str
    direction: int
    comp: int
    anchor: tuple
    side: int
    tokens: tuple
    ts: tuple
    z_min: int
    z_max: int

    @property
    def key(self):
        # merge identity: the side (hence field) may differ between members
        return (self.color, self.direction, self.comp, self.anchor)


class _Class(NamedTuple):
    """A crossing class: field, type and components with nonempty slots."""

    type: object
    comp_over: int
    comp_under: int
    tail: _Slot
    head: _Slot


def _crossing_classes(link: GridLink) -> list:
    raw: dict = {}
    for p in passages(link):
        if p.axis == "z":
            continue
        color = "green" if p.axis == "x" else "red"
        key = (color, p.anchor.x, p.anchor.y, p.direction, p.comp)
        raw.setdefault(key, []).append((p.t, p.anchor.z))

    cache: dict = {}

    def slot(color, ax, ay, direction, comp, side):
        k = (color, ax, ay, direction, comp, side)
        if k not in cache:
            toks = tuple(sorted(raw.get((color, ax, ay, direction, comp), ())))
            zs = [z for _, z in toks]
            cache[k] = _Slot(
                color, direction, comp, (ax, ay), side,
                toks, tuple(t for t, _ in toks),
                min(zs, default=0), max(zs, default=0),
            )
        return cache[k]

    n_comp = len(link.components)
    classes = []
    for f in enumerate_fields(link):
        if not f.greens or not f.reds:
            continue
        red_over = f.kind == RED_OVER
        gx, gy = (f.x, f.y) if red_over else (f.x - 1, f.y)
        rx, ry = (f.x, f.y - 1) if red_over else (f.x, f.y)
        g_side, r_side = (0, 1) if red_over else (1, 0)
        for ctype in CROSSING_TYPES:
            if ctype.over_color != ("red" if red_over else "green"):
                continue
            for c_over in range(1, n_comp + 1):
                for c_under in range(1, n_comp + 1):
                    if red_over:
                        tail = slot("red", rx, ry, ctype.over_dir, c_over, r_side)
                        head = slot("green", gx, gy, ctype.under_dir, c_under, g_side)
                    else:
                        tail = slot("green", gx, gy, ctype.over_dir, c_over, g_side)
                        head = slot("red", rx, ry, ctype.under_dir, c_under, r_side)
                    if not tail.tokens or not head.tokens:
                        continue
                    if head.z_min >= tail.z_max:
                        continue  # no under passage strictly below an over one
                    classes.append(_Class(ctype, c_over, c_under, tail, head))
    return classes


class _Group:
    __slots__ = ("key", "tokens", "ts", "t", "last_side", "last_pos")

    def __init__(self, slot: _Slot, t: int, pos: int):
        self.key = slot.key
        self.tokens = slot.tokens
        self.ts = slot.ts
        self.t = t
        self.last_side = slot.side
        self.last_pos = pos


def phi_3d(link: GridLink, d: int) -> PhiVector:
    """Count subdiagrams with 1..d arrows via crossing classes.

    Matches phi_2d of the built Gauss diagram entrywise; no planar diagram
    or crossing list is ever materialized.
    """
    if not 1 <= d <= MAX_PHI_ORDER:
        raise ValueError(f"order must be in 1..{MAX_PHI_ORDER}, got {d}")
    classes = _crossing_classes(link)
    counts: Counter = Counter()
    for degree in range(1, d + 1):
        for pairing in _directed_pairings(degree):
            _scan_pairing(pairing, classes, link.L, counts)
    return PhiVector(d, dict(counts))


def _scan_pairing(pairing, classes, L, counts):
    two_l = 2 * len(pairing)
    arrow_at = [0] * two_l
    is_tail = [False] * two_l
    partner = [0] * two_l
    for j, (tp, hp) in enumerate(pairing):
        arrow_at[tp] = arrow_at[hp] = j
        is_tail[tp] = True
        partner[tp], partner[hp] = hp, tp
    assigned: list = [None] * len(pairing)
    pos_group = [0] * two_l
    groups: list = []
    pending: list = []  # (earlier pos, later pos, direction) same-side neighbours

    def emit():
        seen = set()
        for tp, hp in pairing:
            pair = (pos_group[tp], pos_group[hp])
            key = pair if pair[0] < pair[1] else (pair[1], pair[0])
            if key in seen:
                return  # one passage pair cannot cross twice
            seen.add(key)
        conds = {(pos_group[hp], pos_group[tp]) for tp, hp in pairing}
        for prev_pos, cur_pos, direction in pending:
            lo, hi = pos_group[partner[prev_pos]], pos_group[partner[cur_pos]]
            conds.add((lo, hi) if direction > 0 else (hi, lo))
        inst = CountingInstance([list(g.tokens) for g in groups], sorted(conds), L)
        total = count_with_z(inst)
        if total:
            arrows = [
                Arrow(tp + 1, hp + 1, cls.type.sign, cls.comp_over, cls.comp_under,
                      cls.type.code)
                for (tp, hp), cls in zip(pairing, assigned)
            ]
            counts[subdiagram_code(arrows)] += total

    def extend(pos, prev_t):
        if pos == two_l:
            emit()
            return
        j = arrow_at[pos]
        own = assigned[j] is None
        options = classes if own else (assigned[j],)
        for cls in options:
            slot = cls.tail if is_tail[pos] else cls.head
            other = cls.head if is_tail[pos] else cls.tail
            if own:
                assigned[j] = cls
            # start a new group: greedily take the lowest usable time
            idx = bisect_right(slot.ts, prev_t)
            if idx < len(slot.ts) and (not own or other.ts[-1] > slot.ts[idx]):
                groups.append(_Group(slot, slot.ts[idx], pos))
                pos_group[pos] = len(groups) - 1
                extend(pos + 1, slot.ts[idx])
                groups.pop()
            # or share the previous group's passage
            if groups:
                g = groups[-1]
                if g.key == slot.key and (not own or other.ts[-1] > g.t):
                    same_side = g.last_side == slot.side
                    if same_side:
                        ok = True
                        pending.append((g.last_pos, pos, slot.direction))
                    elif slot.direction > 0:
                        ok = g.last_side < slot.side
                    else:
                        ok = g.last_side > slot.side
                    if ok:
                        saved = (g.last_side, g.last_pos)
                        g.last_side, g.last_pos = slot.side, pos
                        pos_group[pos] = len(groups) - 1
                        extend(pos + 1, prev_t)
                        g.last_side, g.last_pos = saved
                    if same_side:
                        pending.pop()
            if own:
                assigned[j] = None

    extend(0, -1)
