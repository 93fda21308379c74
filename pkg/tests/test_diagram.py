import math
import random
from fractions import Fraction

import pytest

from gridknot.grid import (
    Passage,
    Point,
    make_dense_fill,
    make_hopf_link,
    make_torus_link,
    make_unknot,
    random_grid_link,
)
from gridknot.diagram import (
    CROSSING_TYPES,
    CrossingField,
    GREEN_OVER,
    RED_OVER,
    build_diagram,
    crossing_count,
    crossing_type,
    enumerate_fields,
    field_crossings,
    format_gauss,
    sign_table,
    to_gauss,
)
from gridknot.shear import DegeneracyError, diagrams_equal, oracle_shear_diagram


def test_crossing_types_enumerate_all_combinations():
    keys = {(t.over_color, t.over_dir, t.under_dir) for t in CROSSING_TYPES}
    assert len(CROSSING_TYPES) == 8
    assert keys == {(c, o, u) for c in ("green", "red") for o in (1, -1) for u in (1, -1)}
    assert [t.code for t in CROSSING_TYPES] == [f"x{i}" for i in range(1, 9)]


def test_sign_table_frozen_values():
    signs = {t.code: t.sign for t in CROSSING_TYPES}
    assert signs == {
        "x1": 1, "x2": -1, "x3": -1, "x4": 1,
        "x5": -1, "x6": 1, "x7": 1, "x8": -1,
    }
    assert sign_table() == {t: t.sign for t in CROSSING_TYPES}


def test_sign_table_symmetries():
    for t in CROSSING_TYPES:
        flipped_color = "red" if t.over_color == "green" else "green"
        # flipping which color is on top negates the sign
        assert crossing_type(flipped_color, t.over_dir, t.under_dir).sign == -t.sign
        # reversing both strand directions preserves the sign
        assert crossing_type(t.over_color, -t.over_dir, -t.under_dir).sign == t.sign


def _passage(t, comp, axis, direction, anchor):
    return Passage(t, comp, axis, direction, Point(*anchor))


def _field(kind, greens_z, reds_z, x=1, y=1):
    gx = x if kind == RED_OVER else x - 1
    ry = y - 1 if kind == RED_OVER else y
    greens = tuple(
        _passage(10 + i, 1, "x", 1, (gx, y, z)) for i, z in enumerate(sorted(greens_z))
    )
    reds = tuple(
        _passage(50 + i, 1, "y", 1, (x, ry, z)) for i, z in enumerate(sorted(reds_z))
    )
    return CrossingField(kind, x, y, greens, reds)


def test_field_crossings_basic_cases():
    assert len(field_crossings(_field(RED_OVER, [1], [2]))) == 1
    c = field_crossings(_field(RED_OVER, [1], [2]))[0]
    assert c.over.axis == "y" and c.under.axis == "x"
    # same strands in a green-over field: the red is higher, so nothing crosses
    assert field_crossings(_field(GREEN_OVER, [1], [2])) == []
    # greens {2,4} over reds {1,3,5}: pairs (2>1), (4>1), (4>3)
    assert len(field_crossings(_field(GREEN_OVER, [2, 4], [1, 3, 5]))) == 3


def test_field_crossings_excludes_equal_heights():
    assert field_crossings(_field(RED_OVER, [2], [2])) == []
    assert field_crossings(_field(GREEN_OVER, [2], [2])) == []


def test_enumerate_fields_census_and_canonical_order():
    for L in (1, 2, 3, 5, 8):
        fields = enumerate_fields(make_unknot(L))
        assert len(fields) == 2 * L * L
        order = [(f.kind, f.x, f.y) for f in fields]
        assert order == sorted(order)
        for f in fields:
            assert all(f.greens[i].anchor.z < f.greens[i + 1].anchor.z
                       for i in range(len(f.greens) - 1))
            if f.kind == GREEN_OVER:
                assert 1 <= f.x <= L and 0 <= f.y <= L - 1
            else:
                assert 0 <= f.x <= L - 1 and 1 <= f.y <= L


def test_enumerate_fields_passage_assignment():
    link = make_hopf_link()
    fields = enumerate_fields(link)
    seen = {}
    for f in fields:
        for p in f.greens + f.reds:
            seen.setdefault(p.t, []).append((f.kind, f.x, f.y))
        for g in f.greens:
            if f.kind == RED_OVER:
                assert (g.anchor.x, g.anchor.y) == (f.x, f.y)
            else:
                assert (g.anchor.x, g.anchor.y) == (f.x - 1, f.y)
        for r in f.reds:
            if f.kind == RED_OVER:
                assert (r.anchor.x, r.anchor.y) == (f.x, f.y - 1)
            else:
                assert (r.anchor.x, r.anchor.y) == (f.x, f.y)
    assert all(len(v) <= 2 for v in seen.values())


def test_unknot_has_no_crossings():
    for L in (1, 2, 5):
        assert build_diagram(make_unknot(L)).n == 0


def test_hopf_diagram_frozen():
    d = build_diagram(make_hopf_link())
    assert d.n == 2
    assert d.n_components == 2
    facts = sorted((c.over.t, c.under.t, c.type.sign, c.type.code) for c in d.crossings)
    assert facts == [(5, 14, 1, "x4"), (10, 4, 1, "x6")]
    by_over = {c.over.t: i for i, c in enumerate(d.crossings)}
    assert d.endpoints == [
        (by_over[10], "under"),
        (by_over[5], "over"),
        (by_over[10], "over"),
        (by_over[5], "under"),
    ]


def test_hopf_gauss_frozen():
    g = to_gauss(build_diagram(make_hopf_link()))
    assert [(a.tail, a.head, a.sign, a.comp_over, a.comp_under, a.type_code)
            for a in g.arrows] == [(3, 1, 1, 2, 1, "x6"), (2, 4, 1, 1, 2, "x4")]
    assert format_gauss(g) == (
        "arrow 1: tail=3 head=1 sign=+ type=x6 comps=(2,1)\n"
        "arrow 2: tail=2 head=4 sign=+ type=x4 comps=(1,2)\n"
    )


def test_gauss_ranks_are_a_permutation():
    link = random_grid_link(5, seed=11, mix_steps=300)
    d = build_diagram(link)
    g = to_gauss(d)
    ranks = sorted([a.tail for a in g.arrows] + [a.head for a in g.arrows])
    assert ranks == list(range(1, 2 * d.n + 1))
    assert len(g.arrows) == d.n


def test_crossing_sum_over_fields_matches_diagram():
    link = random_grid_link(4, seed=3, mix_steps=250)
    total = sum(len(field_crossings(f)) for f in enumerate_fields(link))
    d = build_diagram(link)
    assert total == d.n == crossing_count(link)


def test_torus_link_signed_sums():
    for k in (1, 2, 3):
        d = build_diagram(make_torus_link(k))
        mixed = [c for c in d.crossings if c.over.comp != c.under.comp]
        assert sum(c.type.sign for c in mixed) == 2 * k
        assert len(mixed) == 2 * k + 2


def test_dense_fill_crossing_growth():
    pts = [(L, crossing_count(make_dense_fill(L))) for L in (4, 6, 8)]
    xs = [math.log(L) for L, _ in pts]
    ys = [math.log(n) for _, n in pts]
    xbar, ybar = sum(xs) / 3, sum(ys) / 3
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs
    )
    assert 3.0 <= slope <= 4.5


def test_oracle_unknot_and_bounds():
    assert oracle_shear_diagram(make_unknot(3), Fraction(1, 13), Fraction(1, 17)).n == 0
    with pytest.raises(ValueError):
        oracle_shear_diagram(make_unknot(3), Fraction(1, 2), Fraction(1, 17))
    with pytest.raises(ValueError):
        oracle_shear_diagram(make_unknot(3), Fraction(1, 13), Fraction(0))


def test_oracle_finds_no_blue_crossings():
    link = random_grid_link(4, seed=1, mix_steps=300)
    d = oracle_shear_diagram(link, Fraction(1, 9), Fraction(1, 23))
    for c in d.crossings:
        assert c.over.axis in ("x", "y")
        assert c.under.axis in ("x", "y")


def test_oracle_matches_diagram_on_fixtures():
    cases = [make_hopf_link(), make_torus_link(1), make_torus_link(3), make_dense_fill(3)]
    for link in cases:
        L = link.L
        d = build_diagram(link)
        for qa, qb in ((2 * L + 1, 4 * L + 1), (5 * L, 7 * L + 2), (3 * L + 2, 2 * L + 3)):
            o = oracle_shear_diagram(link, Fraction(1, qa), Fraction(1, qb))
            assert diagrams_equal(d, o)


def _random_shear(rng, L):
    """A random rational in (0, 1/L), biased to exercise the whole range."""
    q = rng.randint(L + 1, 40 * L)
    p = rng.randint(1, max(1, (q - 1) // L))
    return Fraction(p, q)


def test_oracle_matches_diagram_randomized():
    rng = random.Random(2024)
    for trial in range(12):
        L = rng.randint(2, 7)
        comps = 1 if L < 5 else rng.choice([1, 2])
        link = random_grid_link(L, components=comps, seed=trial, mix_steps=rng.randint(0, 400))
        d = build_diagram(link)
        for _ in range(3):
            a, b = _random_shear(rng, L), _random_shear(rng, L)
            o = oracle_shear_diagram(link, a, b)
            assert diagrams_equal(d, o), (trial, L, a, b)


def test_diagrams_equal_detects_differences():
    d1 = build_diagram(make_hopf_link())
    d2 = build_diagram(make_torus_link(1))
    assert not diagrams_equal(d1, d2)
    assert diagrams_equal(d1, build_diagram(make_hopf_link()))
