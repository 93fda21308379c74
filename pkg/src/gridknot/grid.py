"""Closed axis-aligned lattice curves in a cubical box.

A grid link is a disjoint union of closed loops whose edges are unit steps
along the coordinate axes, confined to the box [0, L]^3.  Components are
encoded as a start vertex plus a move word over the alphabet

    E = +x   W = -x   N = +y   S = -y   U = +z   D = -z

Edges parallel to the x axis are called green, edges parallel to the y axis
red, and vertical (z) edges blue; the colors drive the projection machinery
in :mod:`gridknot.diagram` but are fixed here because they are a property of
the traversal itself.

The text format is line oriented::

    # optional comments
    link L=4
    component 1 start 0 0 0
    moves EENNWWSS
    component 2 start 1 1 1
    moves E N W S

Move letters may be contiguous or space separated, and a component may carry
several ``moves`` lines which are concatenated.  Serialization normalizes the
link so the bounding box touches the origin and wraps move words at 60
letters per line; ``parse_grid_link(serialize_grid_link(x))`` is the identity
on normalized links.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence


class Point(NamedTuple):
    x: int
    y: int
    z: int


# Unit vector of each move letter, and the letter of the reverse step.
MOVE_VECTORS: dict[str, Point] = {
    "E": Point(1, 0, 0),
    "W": Point(-1, 0, 0),
    "N": Point(0, 1, 0),
    "S": Point(0, -1, 0),
    "U": Point(0, 0, 1),
    "D": Point(0, 0, -1),
}
OPPOSITE_MOVE = {"E": "W", "W": "E", "N": "S", "S": "N", "U": "D", "D": "U"}

# Moves whose edges are x-parallel (green) and y-parallel (red).
GREEN_MOVES = ("E", "W")
RED_MOVES = ("N", "S")
BLUE_MOVES = ("U", "D")


class GridLinkError(Exception):
    """Base class for grid-link domain errors."""


class ParseError(GridLinkError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class OpenCycleError(GridLinkError):
    """A component's move word does not return to its start vertex."""


class SelfIntersectionError(GridLinkError):
    """The curve visits a vertex or an edge more than once."""


class OutOfBoundsError(GridLinkError):
    """A vertex of the curve leaves the box [0, L]^3."""


class InfeasibleError(GridLinkError):
    """Requested random link cannot fit in the box."""


class Component(NamedTuple):
    start: Point
    moves: str


@dataclass(frozen=True)
class GridLink:
    """A link in the box [0, L]^3.  Components are labeled 1..C in order."""

    L: int
    components: tuple[Component, ...]

    @property
    def edge_count(self) -> int:
        return sum(len(c.moves) for c in self.components)

    def component_vertices(self, i: int) -> list[Point]:
        """Vertices of component ``i`` (0-based), one per edge, start first."""
        start, moves = self.components[i]
        out = [start]
        x, y, z = start
        for m in moves[:-1]:
            dx, dy, dz = MOVE_VECTORS[m]
            x, y, z = x + dx, y + dy, z + dz
            out.append(Point(x, y, z))
        return out

    def vertices(self) -> Iterator[Point]:
        for i in range(len(self.components)):
            yield from self.component_vertices(i)


class Passage(NamedTuple):
    """One unit edge along the global traversal.

    ``t`` is the arc index: components are concatenated in label order and
    edges numbered 0, 1, ... along the way.  ``axis`` is 'x', 'y' or 'z',
    ``direction`` is +1/-1 along that axis, and ``anchor`` is the lesser
    endpoint of the edge, so the edge height is ``anchor.z`` for green and
    red passages.
    """

    t: int
    comp: int
    axis: str
    direction: int
    anchor: Point


_MOVE_AXIS = {"E": "x", "W": "x", "N": "y", "S": "y", "U": "z", "D": "z"}
_MOVE_DIR = {"E": 1, "W": -1, "N": 1, "S": -1, "U": 1, "D": -1}


def passages(link: GridLink) -> list[Passage]:
    """All unit edges of the link in traversal order."""
    out: list[Passage] = []
    t = 0
    for ci, (start, moves) in enumerate(link.components):
        x, y, z = start
        for m in moves:
            dx, dy, dz = MOVE_VECTORS[m]
            nx, ny, nz = x + dx, y + dy, z + dz
            anchor = Point(min(x, nx), min(y, ny), min(z, nz))
            out.append(Passage(t, ci + 1, _MOVE_AXIS[m], _MOVE_DIR[m], anchor))
            x, y, z = nx, ny, nz
            t += 1
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str  # 'open_cycle' | 'vertex_collision' | 'duplicate_edge' | 'out_of_bounds' | 'empty_component'
    message: str
    where: tuple


def validate(link: GridLink) -> list[Violation]:
    """Check self-avoidance, closure and bounds; return violations as data.

    An empty list means the link is valid.  The parser runs the same checks
    and raises instead; this form exists so the CLI can report everything
    wrong with a file at once.
    """
    out: list[Violation] = []
    if link.L < 1:
        out.append(Violation("out_of_bounds", f"box size L={link.L} must be >= 1", (link.L,)))
    if not link.components:
        out.append(Violation("empty_component", "link has no components", ()))

    seen_vertices: dict[Point, tuple[int, int]] = {}
    seen_edges: dict[frozenset, tuple[int, int]] = {}
    for ci, (start, moves) in enumerate(link.components):
        if not moves:
            out.append(Violation("empty_component", f"component {ci + 1} has no moves", (ci + 1,)))
            continue
        x, y, z = start
        net = [0, 0, 0]
        for ei, m in enumerate(moves):
            v = Point(x, y, z)
            if not (0 <= x <= link.L and 0 <= y <= link.L and 0 <= z <= link.L):
                out.append(Violation("out_of_bounds", f"vertex {v} outside [0,{link.L}]^3", v))
            if v in seen_vertices:
                out.append(Violation("vertex_collision", f"vertex {v} visited twice", v))
            else:
                seen_vertices[v] = (ci, ei)
            dx, dy, dz = MOVE_VECTORS[m]
            net[0] += dx
            net[1] += dy
            net[2] += dz
            nv = Point(x + dx, y + dy, z + dz)
            e = frozenset((v, nv))
            if e in seen_edges:
                out.append(Violation("duplicate_edge", f"edge {v}-{nv} traversed twice", (v, nv)))
            else:
                seen_edges[e] = (ci, ei)
            x, y, z = nv
        if net != [0, 0, 0]:
            out.append(
                Violation(
                    "open_cycle",
                    f"component {ci + 1} ends at offset {tuple(net)} from its start",
                    (ci + 1, tuple(net)),
                )
            )
    return out


def _raise_first(link: GridLink) -> None:
    for v in validate(link):
        if v.kind == "open_cycle":
            raise OpenCycleError(v.message)
        if v.kind in ("vertex_collision", "duplicate_edge"):
            raise SelfIntersectionError(v.message)
        if v.kind == "out_of_bounds":
            raise OutOfBoundsError(v.message)
        raise GridLinkError(v.message)


# ---------------------------------------------------------------------------
# text format


def parse_grid_link(text: str, check: bool = True) -> GridLink:
    """Parse the text format.  With ``check`` the link must be valid."""
    L = None
    comps: list[tuple[Point, list[str]]] = []
    expected_label = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "link":
            if L is not None:
                raise ParseError("duplicate link header", lineno)
            if len(tokens) != 2 or not tokens[1].startswith("L="):
                raise ParseError("expected 'link L=<int>'", lineno)
            try:
                L = int(tokens[1][2:])
            except ValueError:
                raise ParseError(f"bad box size {tokens[1][2:]!r}", lineno, line.index("=") + 2)
        elif head == "component":
            if L is None:
                raise ParseError("component before link header", lineno)
            if len(tokens) != 6 or tokens[2] != "start":
                raise ParseError("expected 'component <int> start <x> <y> <z>'", lineno)
            try:
                label = int(tokens[1])
                coords = [int(v) for v in tokens[3:6]]
            except ValueError:
                raise ParseError("bad integer in component line", lineno)
            if label != expected_label:
                raise ParseError(f"component label {label}, expected {expected_label}", lineno)
            expected_label += 1
            comps.append((Point(*coords), []))
        elif head == "moves":
            if not comps:
                raise ParseError("moves before any component line", lineno)
            word = "".join(tokens[1:])
            for k, ch in enumerate(word):
                if ch not in MOVE_VECTORS:
                    col = raw.index(ch, raw.index("moves") + 5) + 1
                    raise ParseError(f"unknown move letter {ch!r}", lineno, col)
            comps[-1][1].append(word)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if L is None:
        raise ParseError("missing link header", max(1, text.count(chr(10)) + 1))
    if not comps:
        raise ParseError("link has no components", max(1, text.count(chr(10)) + 1))
    link = GridLink(L, tuple(Component(s, "".join(ws)) for s, ws in comps))
    if check:
        _raise_first(link)
    return link


def serialize_grid_link(link: GridLink) -> str:
    """Emit the text format, normalized so the bounding box touches the origin."""
    link = normalize(link)
    lines = [f"link L={link.L}"]
    for i, (start, moves) in enumerate(link.components):
        lines.append(f"component {i + 1} start {start.x} {start.y} {start.z}")
        for k in range(0, len(moves), 60):
            lines.append("moves " + moves[k : k + 60])
    return "\n".join(lines) + "\n"


def translate(link: GridLink, dx: int, dy: int, dz: int) -> GridLink:
    """Shift the whole link; the box size is kept, so bounds may be violated."""
    comps = tuple(
        Component(Point(s.x + dx, s.y + dy, s.z + dz), m) for s, m in link.components
    )
    return GridLink(link.L, comps)


def normalize(link: GridLink) -> GridLink:
    """Translate so the min corner of the bounding box is the origin."""
    vs = list(link.vertices())
    if not vs:
        return link
    mx = min(v.x for v in vs)
    my = min(v.y for v in vs)
    mz = min(v.z for v in vs)
    return translate(link, -mx, -my, -mz)


def mirror_x(link: GridLink) -> GridLink:
    """Reflect through a plane normal to x, then renormalize into the box."""
    comps = tuple(
        Component(Point(-s.x, s.y, s.z), m.translate(str.maketrans("EW", "WE")))
        for s, m in link.components
    )
    return normalize(GridLink(link.L, comps))


def reverse_orientations(link: GridLink) -> GridLink:
    """Reverse the traversal direction of every component."""
    comps = tuple(
        Component(s, "".join(OPPOSITE_MOVE[c] for c in reversed(m)))
        for s, m in link.components
    )
    return GridLink(link.L, comps)


# ---------------------------------------------------------------------------
# fixed fixtures


def make_unknot(L: int) -> GridLink:
    """A flat L-by-L square at height 0; no crossings in projection."""
    if L < 1:
        raise GridLinkError("unknot needs L >= 1")
    return GridLink(L, (Component(Point(0, 0, 0), "E" * L + "N" * L + "W" * L + "S" * L),))


def make_hopf_link() -> GridLink:
    """Two interlocked rectangles in an L=3 box with linking number +1."""
    c1 = Component(Point(0, 0, 1), "EENNWWSS")
    c2 = Component(Point(1, 1, 0), "UUNNDDSS")
    return GridLink(3, (c1, c2))


def make_torus_link(k: int) -> GridLink:
    """Two components winding around each other k times; |lk| = k.

    Component 1 is a flat rectangle at height 1; component 2 coils through
    it k times, always threading upward, and closes along the y=0 row.
    """
    if k < 1:
        raise GridLinkError("torus link needs k >= 1")
    c1 = Component(Point(0, 0, 1), "E" * (2 * k) + "NN" + "W" * (2 * k) + "SS")
    word = []
    for i in range(k):
        word.append("UUNNEDDSS")
        if i < k - 1:
            word.append("E")
    word.append("S" + "W" * (2 * k - 1) + "N")
    c2 = Component(Point(1, 1, 0), "".join(word))
    return GridLink(max(2 * k, 3), (c1, c2))


def _layer_cycle(L: int) -> list[tuple[int, int]]:
    """A long closed cycle in the (L+1)x(L+1) grid of one horizontal layer.

    For odd L the cycle is Hamiltonian; for even L it misses L-1 vertices of
    the top row (the vertex count of the layer is odd, so a perfect cycle
    does not exist).
    """
    if L == 1:
        return [(0, 0), (1, 0), (1, 1), (0, 1)]
    cyc = [(x, 0) for x in range(L + 1)]
    top = L if L % 2 == 1 else L - 1  # last serpentine row; odd, so it ends at x=1
    for y in range(1, top + 1):
        xs = range(L, 0, -1) if y % 2 == 1 else range(1, L + 1)
        cyc.extend((x, y) for x in xs)
    if L % 2 == 0:
        cyc.append((1, L))
    cyc.append((0, L))
    cyc.extend((0, y) for y in range(L - 1, 0, -1))
    return cyc


def _cycle_edges(cyc: Sequence[Point]) -> list[frozenset]:
    return [frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))]


def _dense_slab(L: int, z_lo: int, z_hi: int) -> Component:
    """One closed curve filling layers z_lo..z_hi of the L-box.

    Each layer carries a boustrophedon cycle, rows along x on even layers
    and along y (the transposed cycle) on odd ones, so every lattice column
    meets both x- and y-edges about L/2 times: crossing counts then grow
    like L^4, not just L^3.  Consecutive layers are joined by swapping one
    horizontal edge of each for a pair of vertical edges, alternating
    between two splice sites so every join has fresh edges; both sites lie
    in the bottom row, which the transposed cycle also covers (the image of
    the original's west wall).  Requires L >= 2 unless the slab is a single
    layer.
    """
    layer = _layer_cycle(L)
    transposed = [(y, x) for x, y in layer]
    edges: set[frozenset] = set()
    for z in range(z_lo, z_hi + 1):
        plane = layer if z % 2 == 0 else transposed
        cyc = [Point(x, y, z) for x, y in plane]
        edges.update(_cycle_edges(cyc))
    # splice sites in the y=0 row, distinct edges for L >= 2
    site_a = ((0, 0), (1, 0))
    site_b = ((L - 1, 0), (L, 0))
    for z in range(z_lo, z_hi):
        (ax, ay), (bx, by) = site_a if z % 2 == 0 else site_b
        lo_u, lo_v = Point(ax, ay, z), Point(bx, by, z)
        hi_u, hi_v = Point(ax, ay, z + 1), Point(bx, by, z + 1)
        edges.remove(frozenset((lo_u, lo_v)))
        edges.remove(frozenset((hi_u, hi_v)))
        edges.add(frozenset((lo_u, hi_u)))
        edges.add(frozenset((lo_v, hi_v)))
    # walk the single resulting cycle
    adj: dict[Point, list[Point]] = {}
    for e in edges:
        u, v = tuple(e)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = Point(0, 0, z_lo)
    walk = [start]
    prev, cur = None, start
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        walk.append(nxt)
        prev, cur = cur, nxt
    assert len(walk) == len(edges), "layer merge left more than one cycle"
    moves = []
    for i, v in enumerate(walk):
        w = walk[(i + 1) % len(walk)]
        d = (w.x - v.x, w.y - v.y, w.z - v.z)
        moves.append(next(m for m, vec in MOVE_VECTORS.items() if tuple(vec) == d))
    return Component(start, "".join(moves))


def make_dense_fill(L: int) -> GridLink:
    """A single closed curve visiting nearly every vertex of the box.

    The edge count is at least L^3 for every L >= 1.
    """
    if L < 1:
        raise GridLinkError("dense fill needs L >= 1")
    if L == 1:
        return GridLink(1, (Component(Point(0, 0, 0), "ENWUESWD"),))
    return GridLink(L, (_dense_slab(L, 0, L),))


def make_dense_pair(L: int) -> GridLink:
    """Two dense components in stacked slabs splitting the box at mid-height.

    The components are separated by a horizontal plane, so their linking
    number is 0, but their projections overlap everywhere; this is the
    workhorse fixture for timing two-component pipelines at density.
    """
    if L < 2:
        raise GridLinkError("dense pair needs L >= 2")
    h = (L - 1) // 2
    return GridLink(L, (_dense_slab(L, 0, h), _dense_slab(L, h + 1, L)))


def _chain_components(n: int) -> list[Component]:
    """n pairwise-disjoint rings, consecutive ones interlocked (lk = 1)."""
    comps = []
    for i in range(n):
        if i % 2 == 0:  # flat rectangle at z=1
            m = i // 2
            comps.append(Component(Point(4 * m, 0, 1), "EEENNWWWSS"))
        else:  # upright rectangle in the y=1 plane
            m = (i - 1) // 2
            comps.append(Component(Point(4 * m + 2, 1, 0), "UUEEEDDWWW"))
    return comps


# ---------------------------------------------------------------------------
# random links


def _try_insert(rng, comps, occupied, edges, L):
    ci = rng.randrange(len(comps))
    verts = comps[ci]
    n = len(verts)
    i = rng.randrange(n)
    u, v = verts[i], verts[(i + 1) % n]
    axis = next(k for k in range(3) if u[k] != v[k])
    options = []
    for k in range(3):
        if k == axis:
            continue
        for d in (-1, 1):
            vec = [0, 0, 0]
            vec[k] = d
            options.append(tuple(vec))
    w = options[rng.randrange(len(options))]
    p = Point(u.x + w[0], u.y + w[1], u.z + w[2])
    q = Point(v.x + w[0], v.y + w[1], v.z + w[2])
    for pt in (p, q):
        if not (0 <= pt.x <= L and 0 <= pt.y <= L and 0 <= pt.z <= L):
            return False
        if pt in occupied:
            return False
    edges.discard(frozenset((u, v)))
    edges.update((frozenset((u, p)), frozenset((p, q)), frozenset((q, v))))
    occupied.update((p, q))
    verts[i + 1 : i + 1] = [p, q]
    return True


def _try_remove(rng, comps, occupied, edges):
    ci = rng.randrange(len(comps))
    verts = comps[ci]
    n = len(verts)
    if n < 6:  # keep at least a unit square
        return False
    i = rng.randrange(n)
    u = verts[i - 1]
    p = verts[i]
    q = verts[(i + 1) % n]
    r = verts[(i + 2) % n]
    w = (p.x - u.x, p.y - u.y, p.z - u.z)
    if (q.x - r.x, q.y - r.y, q.z - r.z) != w:
        return False
    if frozenset((u, r)) in edges:
        return False
    edges.difference_update(
        (frozenset((u, p)), frozenset((p, q)), frozenset((q, r)))
    )
    edges.add(frozenset((u, r)))
    occupied.difference_update((p, q))
    if i + 1 < n:
        del verts[i : i + 2]
    else:  # q wrapped to the front
        del verts[i]
        del verts[0]
    return True


def _try_flip(rng, comps, occupied, edges):
    ci = rng.randrange(len(comps))
    verts = comps[ci]
    n = len(verts)
    i = rng.randrange(n)
    u = verts[i - 1]
    p = verts[i]
    q = verts[(i + 1) % n]
    m1 = (p.x - u.x, p.y - u.y, p.z - u.z)
    m2 = (q.x - p.x, q.y - p.y, q.z - p.z)
    if m1 == m2 or m1 == tuple(-c for c in m2):
        return False
    p2 = Point(u.x + m2[0], u.y + m2[1], u.z + m2[2])
    if p2 in occupied:
        return False
    edges.difference_update((frozenset((u, p)), frozenset((p, q))))
    edges.update((frozenset((u, p2)), frozenset((p2, q))))
    occupied.discard(p)
    occupied.add(p2)
    verts[i] = p2
    return True


def mix_link(link: GridLink, seed: int = 0, mix_steps: int = 1000) -> GridLink:
    """Scramble a link by random local deformations, preserving validity.

    Each step proposes one local move (unit-square detour insertion or
    removal, or an L-corner flip) and applies it only when the result stays
    a self-avoiding closed curve inside the box, so every intermediate state
    is a valid link and the link type never changes.
    """
    if mix_steps < 0:
        raise GridLinkError("mix_steps must be >= 0")
    comps = [link.component_vertices(i) for i in range(len(link.components))]
    occupied = {v for vs in comps for v in vs}
    edges = set()
    for vs in comps:
        edges.update(frozenset((vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs)))

    rng = random.Random(seed)
    for _ in range(mix_steps):
        r = rng.random()
        if r < 0.45:
            _try_insert(rng, comps, occupied, edges, link.L)
        elif r < 0.70:
            _try_remove(rng, comps, occupied, edges)
        else:
            _try_flip(rng, comps, occupied, edges)

    out = []
    for vs in comps:
        moves = []
        for i, v in enumerate(vs):
            w = vs[(i + 1) % len(vs)]
            d = (w.x - v.x, w.y - v.y, w.z - v.z)
            moves.append(next(m for m, vec in MOVE_VECTORS.items() if tuple(vec) == d))
        out.append(Component(vs[0], "".join(moves)))
    return GridLink(link.L, tuple(out))


def random_grid_link(L: int, components: int = 1, seed: int = 0, mix_steps: int = 1000) -> GridLink:
    """Seed-deterministic random link: a fixed base scrambled by mix_link.

    A single component starts from :func:`make_dense_fill`; several start
    from a chain of interlocked rings (consecutive pairs have linking
    number ±1, preserved by the mixing moves).
    """
    if L < 2:
        raise GridLinkError(f"random link needs L >= 2, got {L}")
    if components < 1:
        raise GridLinkError("components must be >= 1")
    if components == 1:
        base = make_dense_fill(L)
    else:
        if L < 2 * components + 1:
            raise InfeasibleError(
                f"{components} interlocked components need L >= {2 * components + 1}, got {L}"
            )
        base = GridLink(L, tuple(_chain_components(components)))
    return mix_link(base, seed=seed, mix_steps=mix_steps)
