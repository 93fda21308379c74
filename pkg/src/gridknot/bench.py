"""Scaling measurements for the crossing-field pipelines.

Everything here exists to measure exponents, not absolute speed: cells are
timed as the median of at least five repetitions after a discarded warm-up,
single-threaded, on deterministic per-(L, seed) fixtures.  Timed results are
never trusted blind: each lk cell is cross-checked against the other route
and each diagram cell against an independent crossing recount, so a cell
that lies about its work cannot produce a row.

Dense fixtures (a mixed dense fill, or a mixed pair of stacked dense slabs
for the two-component operations) keep the box at yarn-ball density, which
is what makes crossing counts grow like L^4 while the field pipeline stays
near-linear in V = L^3.  ``count_increasing`` cells reuse the row schema
with K playing the role of L (V = K^3, edges = total slot size, n = slot
count).
"""

from __future__ import annotations

import csv
import random
import statistics
import time
from dataclasses import dataclass

import numpy as np

from gridknot.counting import count_increasing
from gridknot.diagram import build_diagram, crossing_count
from gridknot.grid import GridLink, make_dense_pair, mix_link, random_grid_link
from gridknot.invariants import lk_2d, lk_3d

OPS = ("lk_2d_pipeline", "lk_3d", "build_diagram", "count_increasing")
MIN_REPS = 5
FAILED_TIME = -1


@dataclass(frozen=True)
class ScalingRow:
    """One measured cell; time_ns is the median wall time, -1 on failure."""

    op: str
    L: int
    V: int
    edges: int
    n: int
    time_ns: int
    reps: int
    seed: int


def _dense_knot(L: int, seed: int) -> GridLink:
    return random_grid_link(L, 1, seed=seed, mix_steps=10 * L**3)


def _dense_pair(L: int, seed: int) -> GridLink:
    return mix_link(make_dense_pair(L), seed=seed, mix_steps=2 * L**3)


def _counting_slots(K: int, seed: int) -> list:
    rng = random.Random(seed)
    return [sorted(rng.sample(range(4 * K), K)) for _ in range(4)]


def _time_median(thunk, reps: int) -> tuple[int, list]:
    results = [thunk()]  # warm-up, kept only to verify determinism
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        results.append(thunk())
        t1 = time.perf_counter_ns()
        times.append(t1 - t0)
    return int(statistics.median(times)), results


def _measure_cell(op_name: str, L: int, seed: int, reps: int) -> ScalingRow:
    V = L**3
    try:
        if op_name == "count_increasing":
            slots = _counting_slots(L, seed)
            edges, n = sum(len(s) for s in slots), len(slots)
            time_ns, results = _time_median(lambda: count_increasing(slots), reps)
            assert len(set(results)) == 1
        elif op_name == "build_diagram":
            link = _dense_knot(L, seed)
            edges, n = link.edge_count, crossing_count(link)
            time_ns, results = _time_median(lambda: build_diagram(link), reps)
            assert all(d.n == n for d in results)  # n matches the recount
        else:
            link = _dense_pair(L, seed)
            edges, n = link.edge_count, crossing_count(link)
            if op_name == "lk_3d":
                time_ns, results = _time_median(lambda: lk_3d(link), reps)
                check = lk_2d(build_diagram(link))
            else:
                time_ns, results = _time_median(
                    lambda: lk_2d(build_diagram(link)), reps
                )
                check = lk_3d(link)
            assert all(r == check for r in results)  # both routes must agree
        return ScalingRow(op_name, L, V, edges, n, time_ns, reps, seed)
    except Exception:
        return ScalingRow(op_name, L, V, 0, 0, FAILED_TIME, reps, seed)


def run_scaling(op_name: str, L_list, seeds, reps: int = MIN_REPS) -> list:
    """Measure one operation over all (L, seed) cells.

    For count_increasing the entries of L_list are slot sizes K.  Failed
    cells still yield a row, marked with time_ns = -1.
    """
    if op_name not in OPS:
        raise ValueError(f"unknown operation {op_name!r}; pick one of {', '.join(OPS)}")
    if reps < MIN_REPS:
        raise ValueError(f"need at least {MIN_REPS} repetitions, got {reps}")
    sizes = list(L_list)
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise ValueError("sizes must be strictly ascending")
    return [_measure_cell(op_name, L, seed, reps) for L in sizes for seed in seeds]


def fit_loglog(rows, x_field: str, y_field: str) -> tuple[float, float]:
    """Least-squares slope and r^2 of log(y) against log(x) over the rows."""
    xs = np.array([getattr(r, x_field) for r in rows], dtype=float)
    ys = np.array([getattr(r, y_field) for r in rows], dtype=float)
    if len(rows) < 4:
        raise ValueError(f"need at least 4 rows to fit, got {len(rows)}")
    if (xs <= 0).any() or (ys <= 0).any():
        raise ValueError("log-log fit needs positive values (failed cells excluded?)")
    lx, ly = np.log(xs), np.log(ys)
    if np.ptp(lx) == 0:
        raise ValueError("degenerate x-range: all sizes equal")
    slope, intercept = np.polyfit(lx, ly, 1)
    residuals = ly - (slope * lx + intercept)
    total = ly - ly.mean()
    ss_tot = float(total @ total)
    r_squared = 1.0 if ss_tot == 0 else 1.0 - float(residuals @ residuals) / ss_tot
    return float(slope), r_squared


CSV_HEADER = ("op", "L", "V", "edges", "n", "time_ns", "reps", "seed")


def write_rows(rows, stream, fmt: str = "csv") -> None:
    if fmt not in ("csv", "tsv"):
        raise ValueError(f"format must be csv or tsv, got {fmt!r}")
    writer = csv.writer(stream, delimiter="," if fmt == "csv" else "\t",
                        lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.op, r.L, r.V, r.edges, r.n, r.time_ns, r.reps, r.seed])


# per-op figure axes: the quantity whose exponent that operation demonstrates
FIGURE_AXES = {
    "build_diagram": ("L", "n"),
    "lk_3d": ("V", "time_ns"),
    "lk_2d_pipeline": ("V", "time_ns"),
    "count_increasing": ("L", "time_ns"),
}


def render_figures(rows, out_dir) -> list:
    """One log-log scatter per operation, written as scaling_<op>.png.

    Failed cells are dropped; a fit line with slope and r^2 is drawn when at
    least four cells survive.  Returns the written paths.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from pathlib import Path

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for op in OPS:
        good = [r for r in rows if r.op == op and r.time_ns >= 0]
        if not good:
            continue
        x_field, y_field = FIGURE_AXES[op]
        xs = [getattr(r, x_field) for r in good]
        ys = [getattr(r, y_field) for r in good]
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.loglog(xs, ys, "o", label="measured")
        title = op
        if len(good) >= 4 and min(ys) > 0:
            slope, r2 = fit_loglog(good, x_field, y_field)
            grid = np.linspace(min(xs), max(xs), 64)
            scale = ys[0] / xs[0] ** slope
            ax.loglog(grid, scale * grid**slope, "-",
                      label=f"slope {slope:.2f}, r^2 {r2:.3f}")
            title = f"{op}: {y_field} ~ {x_field}^{slope:.2f}"
        ax.set_xlabel(x_field)
        ax.set_ylabel(y_field)
        ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        path = out_dir / f"scaling_{op}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
