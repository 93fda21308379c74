import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridknot.grid import (
    Component,
    GridLink,
    InfeasibleError,
    OpenCycleError,
    ParseError,
    Point,
    SelfIntersectionError,
    make_dense_fill,
    make_hopf_link,
    make_torus_link,
    make_unknot,
    mirror_x,
    normalize,
    parse_grid_link,
    passages,
    random_grid_link,
    reverse_orientations,
    serialize_grid_link,
    validate,
)

HOPF_TEXT = """\
# two interlocked rectangles
link L=3
component 1 start 0 0 1
moves EENNWWSS
component 2 start 1 1 0
moves UU NN DD SS
"""


def test_parse_basic():
    link = parse_grid_link(HOPF_TEXT)
    assert link.L == 3
    assert len(link.components) == 2
    assert link.components[0] == Component(Point(0, 0, 1), "EENNWWSS")
    assert link.components[1].moves == "UUNNDDSS"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_grid_link("component 1 start 0 0 0\nmoves ENWS\n")
    with pytest.raises(ParseError):
        parse_grid_link("link L=x\n")
    with pytest.raises(ParseError):
        parse_grid_link("link L=2\nmoves ENWS\n")
    with pytest.raises(ParseError):
        parse_grid_link("link L=2\ncomponent 2 start 0 0 0\nmoves ENWS\n")
    with pytest.raises(ParseError) as ei:
        parse_grid_link("link L=2\ncomponent 1 start 0 0 0\nmoves ENQS\n")
    assert ei.value.line == 3
    with pytest.raises(ParseError):
        parse_grid_link("link L=2\n")


def test_parse_open_cycle():
    with pytest.raises(OpenCycleError):
        parse_grid_link("link L=2\ncomponent 1 start 0 0 0\nmoves ENW\n")


def test_parse_self_intersection():
    # EW retraces the same edge
    with pytest.raises(SelfIntersectionError):
        parse_grid_link("link L=2\ncomponent 1 start 0 0 0\nmoves EW\n")
    # figure-eight through a repeated vertex
    with pytest.raises(SelfIntersectionError):
        parse_grid_link(
            "link L=2\ncomponent 1 start 1 1 0\nmoves ENWS WSEN\n", check=True
        )


def test_validate_reports_both_edge_and_vertex_kinds():
    # doubled edge: the edge repeats but no interior vertex does
    link = parse_grid_link("link L=2\ncomponent 1 start 0 0 0\nmoves EW\n", check=False)
    assert {v.kind for v in validate(link)} == {"duplicate_edge"}
    # figure-eight: the center vertex repeats but no edge does
    link = parse_grid_link(
        "link L=2\ncomponent 1 start 1 1 0\nmoves ENWSWSEN\n", check=False
    )
    assert {v.kind for v in validate(link)} == {"vertex_collision"}


def test_validate_out_of_bounds():
    link = GridLink(1, (Component(Point(0, 0, 0), "EENNWWSS"),))
    kinds = {v.kind for v in validate(link)}
    assert "out_of_bounds" in kinds


def test_round_trip_fixture_links():
    for link in (make_unknot(3), make_hopf_link(), make_torus_link(2), make_dense_fill(3)):
        text = serialize_grid_link(link)
        again = parse_grid_link(text)
        assert serialize_grid_link(again) == text


def test_serialize_normalizes():
    from gridknot.grid import translate

    link = translate(make_unknot(2), 1, 1, 1)
    text = serialize_grid_link(link)
    assert "start 0 0 0" in text


def test_serialize_wraps_long_move_words():
    text = serialize_grid_link(make_dense_fill(5))
    for line in text.splitlines():
        assert len(line) <= 66


def test_passages_order_and_anchors():
    link = make_unknot(2)
    ps = passages(link)
    assert [p.t for p in ps] == list(range(8))
    assert all(p.comp == 1 for p in ps)
    assert ps[0] == (0, 1, "x", 1, Point(0, 0, 0))
    # W edge from (2,2,0): anchor is the lesser endpoint
    assert ps[4].axis == "x" and ps[4].direction == -1 and ps[4].anchor == Point(1, 2, 0)


def test_transforms_preserve_validity():
    link = make_torus_link(2)
    for f in (mirror_x, reverse_orientations, normalize):
        assert validate(f(link)) == []


def test_mirror_and_reverse_are_involutions():
    link = make_hopf_link()
    assert mirror_x(mirror_x(link)) == normalize(link)
    assert reverse_orientations(reverse_orientations(link)) == link


def test_fixture_validity_and_sizes():
    assert validate(make_unknot(1)) == []
    assert validate(make_hopf_link()) == []
    for k in range(1, 6):
        link = make_torus_link(k)
        assert validate(link) == []
        assert link.L == max(2 * k, 3)
    for L in range(1, 9):
        link = make_dense_fill(L)
        assert validate(link) == []
        assert len(link.components) == 1
        assert link.edge_count >= L**3


def test_random_link_chain_needs_room():
    with pytest.raises(InfeasibleError):
        random_grid_link(4, components=2, seed=0)


@settings(max_examples=30, deadline=None)
@given(
    L=st.integers(min_value=2, max_value=9),
    components=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=10_000),
    steps=st.integers(min_value=0, max_value=400),
)
def test_random_link_always_valid(L, components, seed, steps):
    if L < 2 * components + 1:
        L = 2 * components + 1
    link = random_grid_link(L, components=components, seed=seed, mix_steps=steps)
    assert validate(link) == []
    assert len(link.components) == components


def test_random_link_deterministic():
    a = random_grid_link(6, components=2, seed=42, mix_steps=300)
    b = random_grid_link(6, components=2, seed=42, mix_steps=300)
    assert a == b


def test_random_link_density_band():
    link = random_grid_link(8, components=1, seed=1, mix_steps=100_000)
    assert 0.5 * 8**3 <= link.edge_count <= 3 * 8**3


def test_random_link_fuzz_1000_tuples():
    import random as _random

    rng = _random.Random(0)
    for _ in range(1000):
        L = rng.randint(2, 5)
        components = rng.randint(1, 2)
        if L < 2 * components + 1:
            components = 1
        link = random_grid_link(
            L, components=components, seed=rng.randint(0, 10**6),
            mix_steps=rng.randint(0, 30),
        )
        assert validate(link) == []
        assert all(len(c.moves) >= 4 for c in link.components)


def test_mix_link_preserves_structure():
    from gridknot.grid import mix_link

    base = make_torus_link(2)
    mixed = mix_link(base, seed=9, mix_steps=500)
    assert validate(mixed) == []
    assert len(mixed.components) == len(base.components)
    assert mixed.L == base.L


def test_dense_pair_is_split_and_dense():
    from gridknot.grid import make_dense_pair

    for L in (2, 5, 8):
        pair = make_dense_pair(L)
        assert validate(pair) == []
        assert len(pair.components) == 2
        h = (L - 1) // 2
        v1 = pair.component_vertices(0)
        v2 = pair.component_vertices(1)
        assert max(v.z for v in v1) == h
        assert min(v.z for v in v2) == h + 1
