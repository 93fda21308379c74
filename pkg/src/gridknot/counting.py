"""Counting kernels for ordered tuples with height constraints.

The central object is a :class:`CountingInstance`: ordered slots B_1..B_m of
tokens (t, z), asking how many ways to pick one token per slot so that the
t values strictly increase, subject to pairwise conditions z(lo) < z(hi)
between chosen tokens.

Two fast kernels answer it:

* :func:`count_increasing` handles the condition-free case with a prefix-sum
  DP over the sorted slots, time about max|B_i| per slot.
* :func:`count_with_z` peels one z-condition at a time by splitting on the
  longest common binary prefix of the two constrained heights: for each
  prefix sigma the lo token continues with bits sigma0..., the hi token with
  sigma1....  Cells are pairwise disjoint and cover every solution, so
  summing the recursively-counted cells is exact.  The same slot may be
  constrained repeatedly; prefix restrictions simply nest or die out.

:func:`brute_count` is the independent oracle both are tested against.
All counts are exact arbitrary-precision integers.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import product
from math import prod

BRUTE_LIMIT = 10**7


@dataclass
class CountingInstance:
    """Slots of (t, z) tokens, z conditions as 0-based (lo, hi) slot pairs."""

    slots: list
    z_conditions: list = field(default_factory=list)
    L: int = 0

    def check(self) -> None:
        if self.L < 0:
            raise ValueError(f"height bound must be >= 0, got {self.L}")
        for i, slot in enumerate(self.slots):
            ts = [t for t, _ in slot]
            zs = [z for _, z in slot]
            if len(set(ts)) != len(ts):
                raise ValueError(f"slot {i + 1} repeats a t value")
            if len(set(zs)) != len(zs):
                raise ValueError(f"slot {i + 1} repeats a z value")
            if any(z < 0 or z > self.L for z in zs):
                raise ValueError(f"slot {i + 1} has z outside [0, {self.L}]")
        m = len(self.slots)
        for lo, hi in self.z_conditions:
            if not (0 <= lo < m and 0 <= hi < m):
                raise ValueError(f"condition ({lo}, {hi}) references a missing slot")


def brute_count(inst: CountingInstance) -> int:
    """Exhaustive scan over the slot product; the oracle for both kernels."""
    inst.check()
    size = prod(len(s) for s in inst.slots)
    if size > BRUTE_LIMIT:
        raise ValueError(f"brute-force size {size} exceeds {BRUTE_LIMIT}")
    conds = inst.z_conditions
    total = 0
    for tup in product(*inst.slots):
        if all(tup[i][0] < tup[i + 1][0] for i in range(len(tup) - 1)) and all(
            tup[lo][1] < tup[hi][1] for lo, hi in conds
        ):
            total += 1
    return total


def count_increasing(slots) -> int:
    """|{(b_1..b_m) : t(b_1) < ... < t(b_m)}| for slots of t values.

    Prefix-sum DP: with each slot sorted, N[i][tau] counts chains through
    the first i slots ending at that slot's tau-th element or earlier, so
    each step needs one binary search per element.  Time is proportional to
    the total slot size, times a log factor for the sorts.
    """
    prev_n: list = []
    prev_ts: list = []
    first = True
    for slot in slots:
        cur_ts = sorted(slot)
        if not cur_ts:
            return 0
        cur_n = []
        acc = 0
        for t in cur_ts:
            if first:
                acc += 1
            else:
                k = bisect_left(prev_ts, t)
                acc += prev_n[k - 1] if k else 0
            cur_n.append(acc)
        prev_ts, prev_n, first = cur_ts, cur_n, False
    return 1 if first else prev_n[-1]


def _split_cells(zs_lo, zs_hi, p: int):
    """Realized (bit position, shared prefix) cells for one z(lo)<z(hi) split."""
    for k in range(p):
        shift = p - k
        lo_pref = {z >> shift for z in zs_lo if not (z >> (shift - 1)) & 1}
        hi_pref = {z >> shift for z in zs_hi if (z >> (shift - 1)) & 1}
        for sigma in sorted(lo_pref & hi_pref):
            yield shift - 1, sigma


def count_with_z(inst: CountingInstance, verify: bool = False) -> int:
    """Count strictly-t-increasing tuples meeting all z(lo) < z(hi) conditions.

    Dyadic decomposition: heights are read as p-bit strings with
    p = bit_length(L) (so z = L always fits); each condition splits into
    disjoint cells by the position of the first differing bit, leaving a
    plain count_increasing problem at the leaves.

    With ``verify`` every leaf is re-counted by brute force and the cell sum
    is checked against a global brute count, guarding the disjointness
    argument; only use it on small instances.
    """
    inst.check()
    p = max(1, inst.L.bit_length())

    def rec(slots, conds):
        if not conds:
            if verify:
                got = brute_count(CountingInstance([*slots], [], inst.L))
                want = count_increasing([t for t, _ in s] for s in slots)
                assert got == want, "leaf DP disagrees with brute force"
                return want
            return count_increasing([t for t, _ in s] for s in slots)
        (lo, hi), rest = conds[0], conds[1:]
        total = 0
        for shift, sigma in _split_cells(
            [z for _, z in slots[lo]], [z for _, z in slots[hi]], p
        ):
            cell = list(slots)
            cell[lo] = [tok for tok in cell[lo] if tok[1] >> shift == 2 * sigma]
            cell[hi] = [tok for tok in cell[hi] if tok[1] >> shift == 2 * sigma + 1]
            if cell[lo] and cell[hi]:
                total += rec(cell, rest)
        return total

    result = rec(inst.slots, inst.z_conditions)
    if verify:
        assert result == brute_count(inst), "cell sum disagrees with global brute force"
    return result


# ---------------------------------------------------------------------------
# debug text format


def format_instance(inst: CountingInstance) -> str:
    """Replayable text form; slots and conditions are 1-based on disk."""
    lines = [f"instance m={len(inst.slots)} L={inst.L}"]
    for i, slot in enumerate(inst.slots):
        toks = " ".join(f"({t},{z})" for t, z in slot)
        lines.append(f"B{i + 1}:" + (" " + toks if toks else ""))
    for lo, hi in inst.z_conditions:
        lines.append(f"cond {lo + 1} {hi + 1}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> CountingInstance:
    m = None
    L = 0
    slots: list = []
    conds: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("instance"):
            parts = dict(p.split("=") for p in line.split()[1:])
            m, L = int(parts["m"]), int(parts["L"])
            slots = [[] for _ in range(m)]
        elif line.startswith("B"):
            if m is None:
                raise ValueError(f"line {lineno}: slot before instance header")
            head, _, rest = line.partition(":")
            idx = int(head[1:]) - 1
            if not (0 <= idx < m):
                raise ValueError(f"line {lineno}: slot B{idx + 1} out of range")
            for tok in rest.split():
                if not (tok.startswith("(") and tok.endswith(")")):
                    raise ValueError(f"line {lineno}: bad token {tok!r}")
                t, z = tok[1:-1].split(",")
                slots[idx].append((int(t), int(z)))
        elif line.startswith("cond"):
            if m is None:
                raise ValueError(f"line {lineno}: cond before instance header")
            _, lo, hi = line.split()
            conds.append((int(lo) - 1, int(hi) - 1))
        else:
            raise ValueError(f"line {lineno}: unknown directive {line.split()[0]!r}")
    if m is None:
        raise ValueError("missing instance header")
    inst = CountingInstance(slots, conds, L)
    inst.check()
    return inst
