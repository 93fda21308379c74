"""Linking number by two routes, and subdiagram-count vectors.

The 2D route reads a planar diagram: half the signed count of the crossings
between the two components.  The 3D route never builds the diagram; it walks
the 2L^2 crossing fields and counts strict height pairs per crossing type
with a linear merge sweep, so its cost tracks the box volume rather than the
crossing number.

phi_2d maps a Gauss diagram to the formal sum of its subdiagrams with 1..d
arrows, keyed by a canonical text code; linear functionals over those codes
then evaluate finite-type invariants (the linking number being the d=1
case, packaged as omega_lk).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from gridknot.grid import GridLink, GridLinkError
from gridknot.diagram import (
    CROSSING_TYPES,
    GaussDiagram,
    PlanarDiagram,
    RED_OVER,
    enumerate_fields,
)


class ComponentCountError(GridLinkError):
    """The operation needs a link with a specific number of components."""


class SignSumParityError(GridLinkError):
    """Mixed crossing signs summed to an odd number; the diagram is broken."""


def field_pair_count(reds: list, greens: list) -> int:
    """|{(r, g) : z(r) < z(g)}| for height-sorted lists, by one merge sweep.

    Walks the merged height order keeping rb = reds seen so far and adding
    it to cf at every green.  Equal heights never pair (the green is swept
    first, so a tied red is not yet counted).
    """
    rb = 0
    cf = 0
    i = 0
    for g in greens:
        while i < len(reds) and reds[i] < g:
            rb += 1
            i += 1
        cf += rb
    return cf


def lk_2d(diagram: PlanarDiagram) -> int:
    """Half the signed count of crossings between the two components."""
    if diagram.n_components != 2:
        raise ComponentCountError(
            f"linking number needs 2 components, got {diagram.n_components}"
        )
    total = sum(
        c.type.sign for c in diagram.crossings if c.over.comp != c.under.comp
    )
    if total % 2:
        raise SignSumParityError(f"mixed crossing signs sum to odd value {total}")
    return total // 2


def lk_3d(link: GridLink) -> int:
    """Linking number straight from the crossing fields, no diagram built.

    Per field, per crossing type matching the field's over-color, per
    ordered assignment of the two components to (over, under): count strict
    height pairs with field_pair_count, weight by the type's sign.  The
    grand total is twice the linking number.
    """
    if len(link.components) != 2:
        raise ComponentCountError(
            f"linking number needs 2 components, got {len(link.components)}"
        )
    total = 0
    for f in enumerate_fields(link):
        over_color = "red" if f.kind == RED_OVER else "green"
        by_key: dict[tuple, list] = {}
        for p in f.greens:
            by_key.setdefault(("green", p.direction, p.comp), []).append(p.anchor.z)
        for p in f.reds:
            by_key.setdefault(("red", p.direction, p.comp), []).append(p.anchor.z)
        under_color = "red" if over_color == "green" else "green"
        for t in CROSSING_TYPES:
            if t.over_color != over_color:
                continue
            for c_over, c_under in ((1, 2), (2, 1)):
                overs = by_key.get((over_color, t.over_dir, c_over))
                unders = by_key.get((under_color, t.under_dir, c_under))
                if not overs or not unders:
                    continue
                # first argument is the strictly-lower list
                total += t.sign * field_pair_count(unders, overs)
    if total % 2:
        raise SignSumParityError(f"mixed crossing signs sum to odd value {total}")
    return total // 2


# ---------------------------------------------------------------------------
# subdiagram counting


@dataclass
class PhiVector:
    """Counts of canonical subdiagram codes with 1..d arrows."""

    d: int
    entries: dict

    def mass(self) -> int:
        return sum(self.entries.values())


@dataclass
class Functional:
    """Rational weights on canonical codes with at most d arrows."""

    d: int
    weights: dict


def subdiagram_code(arrows) -> str:
    """Canonical code of a set of arrows, independent of their global ranks.

    Endpoints are walked in rank order emitting role (T[ail]/H[ead]) plus the
    arrow's index in first-occurrence numbering; after a ';', each arrow in
    that numbering contributes sign, over-component, '.', under-component.
    Example: two interleaved positive arrows of a 2-component link give
    'T1T2H1H2;+1.2,+2.1'.
    """
    points = []
    for i, a in enumerate(arrows):
        points.append((a.tail, i, "T"))
        points.append((a.head, i, "H"))
    points.sort()
    number: dict[int, int] = {}
    pattern = []
    for _, i, role in points:
        if i not in number:
            number[i] = len(number) + 1
        pattern.append(f"{role}{number[i]}")
    order = sorted(number, key=number.get)
    decor = ",".join(
        f"{'+' if arrows[i].sign > 0 else '-'}{arrows[i].comp_over}.{arrows[i].comp_under}"
        for i in order
    )
    return "".join(pattern) + ";" + decor


def phi_2d(gauss: GaussDiagram, d: int) -> PhiVector:
    """Count every subdiagram with 1..d arrows, keyed by canonical code."""
    if d < 1:
        raise ValueError(f"order must be >= 1, got {d}")
    entries: dict[str, int] = {}
    arrows = gauss.arrows
    for size in range(1, min(d, len(arrows)) + 1):
        for subset in combinations(arrows, size):
            code = subdiagram_code(subset)
            entries[code] = entries.get(code, 0) + 1
    return PhiVector(d, entries)


def apply_functional(omega: Functional, v: PhiVector) -> Fraction:
    """Pair a functional with a count vector: sum of weight * count."""
    if omega.d > v.d:
        raise ValueError(f"functional order {omega.d} exceeds vector order {v.d}")
    return sum(
        (w * v.entries[code] for code, w in omega.weights.items() if code in v.entries),
        Fraction(0),
    )


def omega_lk() -> Functional:
    """The linking number as a functional on 1-arrow codes.

    Weight +1/2 per positive mixed-component code, -1/2 per negative one,
    nothing on same-component codes.
    """
    weights = {}
    for pattern in ("T1H1", "H1T1"):
        for sign, w in (("+", Fraction(1, 2)), ("-", Fraction(-1, 2))):
            for c_over, c_under in ((1, 2), (2, 1)):
                weights[f"{pattern};{sign}{c_over}.{c_under}"] = w
    return Functional(1, weights)


def format_phi(v: PhiVector) -> str:
    """One `<code> <coefficient>` line per entry, sorted by code."""
    lines = [f"{code} {v.entries[code]}" for code in sorted(v.entries)]
    return "\n".join(lines) + ("\n" if lines else "")
