import random

import pytest

from gridknot.counting import (
    BRUTE_LIMIT,
    CountingInstance,
    brute_count,
    count_increasing,
    count_with_z,
    format_instance,
    parse_instance,
)

EXAMPLE = CountingInstance(
    slots=[[(1, 0), (3, 2)], [(2, 1), (4, 3)]],
    z_conditions=[(0, 1)],
    L=3,
)


def _random_instance(rng, max_m=5, max_k=12, max_d=3, max_L=31, cap=100_000):
    L = rng.randint(1, max_L)
    m = rng.randint(0, max_m)
    slots = []
    t_pool = list(range(4 * max_k * (max_m + 1)))
    for _ in range(m):
        k = rng.randint(0, min(max_k, L + 1))
        ts = rng.sample(t_pool, k)
        zs = rng.sample(range(L + 1), k)
        slots.append(list(zip(ts, zs)))
    while slots and max(len(s) for s in slots) > 1:
        size = 1
        for s in slots:
            size *= max(len(s), 1)
        if size <= cap:
            break
        max(slots, key=len).pop()
    d = rng.randint(0, max_d) if m else 0
    conds = [(rng.randrange(m), rng.randrange(m)) for _ in range(d)]
    return CountingInstance(slots, conds, L)


def test_brute_example():
    assert brute_count(EXAMPLE) == 3


def test_brute_empty_products():
    assert brute_count(CountingInstance([], [], 5)) == 1
    assert brute_count(CountingInstance([[(1, 0)], []], [], 5)) == 0


def test_brute_guard():
    inst = CountingInstance(
        [[(400 * j + i, i) for i in range(200)] for j in range(4)], [], 199
    )
    with pytest.raises(ValueError, match="exceeds"):
        brute_count(inst)
    assert BRUTE_LIMIT == 10**7


def test_check_rejects_bad_slots():
    with pytest.raises(ValueError, match="repeats a t"):
        CountingInstance([[(1, 0), (1, 2)]], [], 3).check()
    with pytest.raises(ValueError, match="repeats a z"):
        CountingInstance([[(1, 2), (3, 2)]], [], 3).check()
    with pytest.raises(ValueError, match="outside"):
        CountingInstance([[(1, 4)]], [], 3).check()
    with pytest.raises(ValueError, match="missing slot"):
        CountingInstance([[(1, 0)]], [(0, 1)], 3).check()


def test_count_increasing_single_slot():
    for k in (0, 1, 2, 7):
        assert count_increasing([list(range(k))]) == (k if k else 0)


def test_count_increasing_example():
    assert count_increasing([[1, 3], [2, 4]]) == 3
    assert count_increasing([]) == 1
    assert count_increasing([[5], []]) == 0


def test_count_increasing_descending_slots():
    assert count_increasing([[10, 20], [1, 2]]) == 0


def test_count_increasing_random_vs_brute():
    rng = random.Random(11)
    for _ in range(200):
        m = rng.randint(0, 8)
        slots = [rng.sample(range(100), rng.randint(0, 16)) for _ in range(m)]
        while slots and max(len(s) for s in slots) > 1:
            size = 1
            for s in slots:
                size *= max(len(s), 1)
            if size <= 100_000:
                break
            max(slots, key=len).pop()
        inst = CountingInstance([[(t, t) for t in s] for s in slots], [], 99)
        assert count_increasing(slots) == brute_count(inst)


def test_count_increasing_big_values():
    slots = [[10**18 + i for i in range(40)] for _ in range(12)]
    got = count_increasing(slots)
    import math

    assert got == math.comb(40, 12)


def test_count_with_z_example():
    assert count_with_z(EXAMPLE) == 3
    assert count_with_z(EXAMPLE, verify=True) == 3


def test_count_with_z_no_conditions_matches_dp():
    rng = random.Random(23)
    for _ in range(50):
        inst = _random_instance(rng, max_d=0)
        assert count_with_z(inst) == count_increasing(
            [t for t, _ in s] for s in inst.slots
        )


def test_count_with_z_height_equal_to_power_of_two():
    # z = L = 2^k needs one more bit than the heights below it
    inst = CountingInstance([[(1, 4)], [(2, 3)]], [(0, 1)], 4)
    assert count_with_z(inst, verify=True) == 0
    inst = CountingInstance([[(1, 3)], [(2, 4)]], [(0, 1)], 4)
    assert count_with_z(inst, verify=True) == 1


def test_count_with_z_self_condition_is_empty():
    inst = CountingInstance([[(1, 0), (2, 1)]], [(0, 0)], 1)
    assert count_with_z(inst, verify=True) == 0


def test_count_with_z_random_vs_brute():
    rng = random.Random(47)
    for _ in range(120):
        inst = _random_instance(rng)
        assert count_with_z(inst) == brute_count(inst)


def test_count_with_z_verify_mode_random():
    rng = random.Random(5)
    for _ in range(30):
        inst = _random_instance(rng, max_m=3, max_k=6, cap=2_000)
        count_with_z(inst, verify=True)


def test_count_with_z_monotone_in_elements():
    rng = random.Random(91)
    for _ in range(40):
        inst = _random_instance(rng, max_m=4, max_k=8)
        if not inst.slots:
            continue
        base = count_with_z(inst)
        i = rng.randrange(len(inst.slots))
        used_t = {t for t, _ in inst.slots[i]}
        used_z = {z for _, z in inst.slots[i]}
        free_z = [z for z in range(inst.L + 1) if z not in used_z]
        if not free_z:
            continue
        grown = [list(s) for s in inst.slots]
        grown[i] = grown[i] + [(max(used_t | {0}) + 1000, rng.choice(free_z))]
        bigger = count_with_z(CountingInstance(grown, inst.z_conditions, inst.L))
        assert bigger >= base


def test_count_with_z_antitone_in_conditions():
    rng = random.Random(92)
    for _ in range(40):
        inst = _random_instance(rng, max_m=4, max_k=8, max_d=2)
        if not inst.slots:
            continue
        base = count_with_z(inst)
        extra = (rng.randrange(len(inst.slots)), rng.randrange(len(inst.slots)))
        tighter = count_with_z(
            CountingInstance(inst.slots, inst.z_conditions + [extra], inst.L)
        )
        assert tighter <= base


def test_format_instance_frozen():
    assert format_instance(EXAMPLE) == (
        "instance m=2 L=3\n"
        "B1: (1,0) (3,2)\n"
        "B2: (2,1) (4,3)\n"
        "cond 1 2\n"
    )


def test_format_parse_round_trip():
    rng = random.Random(3)
    for _ in range(40):
        inst = _random_instance(rng, max_m=4, max_k=6)
        text = format_instance(inst)
        back = parse_instance(text)
        assert back.slots == inst.slots
        assert back.z_conditions == inst.z_conditions
        assert back.L == inst.L
        assert format_instance(back) == text


def test_parse_handles_comments_and_blanks():
    text = "# heights\n\ninstance m=1 L=2\nB1: (4,1)\n\n# done\n"
    inst = parse_instance(text)
    assert inst.slots == [[(4, 1)]]
    assert inst.z_conditions == []


def test_parse_errors():
    with pytest.raises(ValueError, match="missing instance header"):
        parse_instance("")
    with pytest.raises(ValueError, match="line 1"):
        parse_instance("B1: (1,0)\n")
    with pytest.raises(ValueError, match="line 2.*out of range"):
        parse_instance("instance m=1 L=2\nB2: (1,0)\n")
    with pytest.raises(ValueError, match="bad token"):
        parse_instance("instance m=1 L=2\nB1: 1,0\n")
    with pytest.raises(ValueError, match="unknown directive"):
        parse_instance("instance m=1 L=2\nB1: (1,0)\nfrobnicate 1\n")
    with pytest.raises(ValueError, match="cond before"):
        parse_instance("cond 1 2\n")
