"""Seeded end-to-end verification campaigns over random quartics."""
from __future__ import annotations

import csv
import io
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .characterization import (R_TOL, eval_k, eval_R, classify_region,
                               l1_bounds, peyser_bounds)
from .errors import RatvecError
from .quartic import DEFAULT_TOL, QuarticRoots, forward_ratio_vector, normalize_roots
from .reconstruction import reconstruct

MIN_GAP = 1e-3
RT_TOL = 1e-6

CSV_COLUMNS = ("r1", "r2", "r3", "r4", "u", "v", "w", "R_residual", "region", "k",
               "r", "s", "r_reconstructed", "s_reconstructed", "round_trip_error")


@dataclass(frozen=True)
class CampaignRow:
    index: int
    roots: Tuple[float, float, float, float]
    ratio_vector: Tuple[float, float, float]
    R_residual: float
    region: str
    k: float
    canonical: Tuple[float, float]
    reconstructed: Tuple[float, float]
    round_trip_error: float
    violations: Tuple[str, ...] = ()

    def csv_fields(self) -> list:
        nums = (*self.roots, *self.ratio_vector, self.R_residual)
        tail = (self.k, *self.canonical, *self.reconstructed, self.round_trip_error)
        return [_fmt(x) for x in nums] + [self.region] + [_fmt(x) for x in tail]


@dataclass
class CampaignSummary:
    count: int
    seed: int
    max_abs_R: float = 0.0
    max_round_trip_error: float = 0.0
    regions: dict = field(default_factory=dict)
    violations: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "max_abs_R": self.max_abs_R,
            # infinite when some row failed to reconstruct; JSON has no inf
            "max_round_trip_error": (self.max_round_trip_error
                                     if math.isfinite(self.max_round_trip_error) else None),
            "regions": dict(sorted(self.regions.items())),
            "violations": self.violations,
        }


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def row_rng(seed: int, index: int) -> random.Random:
    """Independent generator per row, so row order never changes the output."""
    return random.Random(f"ratvec-campaign:{seed}:{index}")


def sample_roots(rng: random.Random, min_gap: float = MIN_GAP) -> Tuple[float, ...]:
    """Four sorted uniforms on [-1, 1], redrawn until every gap is at least ``min_gap``."""
    while True:
        xs = sorted(rng.uniform(-1.0, 1.0) for _ in range(4))
        if all(b - a >= min_gap for a, b in zip(xs, xs[1:])):
            return tuple(xs)


def run_row(roots: Sequence[float], index: int = 0, tol: float = DEFAULT_TOL,
            R_tol: float = R_TOL, rt_tol: float = RT_TOL) -> CampaignRow:
    """Forward map, membership, bounds and reconstruction for one quartic."""
    qr = QuarticRoots.of([float(x) for x in roots])
    rv = forward_ratio_vector(qr, tol)
    u, v, w = (float(x) for x in rv)
    R_val = float(eval_R(u, v, w))
    k_val = float(eval_k(u, v, w))
    region = classify_region(u, v, w)
    canon, _ = normalize_roots(qr)
    violations = []
    if not abs(R_val) <= R_tol:
        violations.append(f"|R| = {abs(R_val):.3g} > {R_tol:g}")
    if not region.admissible:
        violations.append(f"region {region}")
    if not k_val > 0:
        violations.append(f"k = {k_val:.3g} <= 0")
    for idx, x in enumerate((u, v, w), start=1):
        lo, hi = peyser_bounds(4, idx)
        if not lo < x < hi:
            violations.append(f"Peyser bound {idx} fails")
    if not u < v < w:
        violations.append("ratios not increasing")
    for b in l1_bounds(u, v, w):
        if not b.satisfied:
            violations.append(f"bound {b.name} fails")
    rec_r = rec_s = float("nan")
    err = float("inf")
    try:
        rec = reconstruct(u, v, w, R_tol=R_tol)
        rec_r, rec_s = float(rec.r), float(rec.s)
        err = max(abs(rec_r - canon.r) / canon.r, abs(rec_s - canon.s) / canon.s)
    except RatvecError as exc:
        violations.append(f"reconstruction failed: {exc}")
    if not err <= rt_tol:
        violations.append(f"round-trip error {err:.3g} > {rt_tol:g}")
    return CampaignRow(index, tuple(qr), (u, v, w), R_val, str(region), k_val,
                       (float(canon.r), float(canon.s)), (rec_r, rec_s), err, tuple(violations))


def _campaign_row(args) -> CampaignRow:
    seed, index, fixed, tol, R_tol, rt_tol = args
    roots = fixed if fixed is not None else sample_roots(row_rng(seed, index))
    return run_row(roots, index, tol, R_tol, rt_tol)


def sample_campaign(count: int, seed: int, fixed: Optional[Sequence[float]] = None,
                    tol: float = DEFAULT_TOL, R_tol: float = R_TOL, rt_tol: float = RT_TOL,
                    workers: int = 1) -> Tuple[List[CampaignRow], CampaignSummary]:
    """Run ``count`` rows; with ``fixed`` every row uses those roots instead of sampling."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    jobs = [(seed, i, tuple(fixed) if fixed is not None else None, tol, R_tol, rt_tol)
            for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_campaign_row, jobs, chunksize=max(1, count // (8 * workers))))
    else:
        rows = [_campaign_row(job) for job in jobs]
    summary = CampaignSummary(count, seed)
    regions: Counter = Counter()
    for row in rows:
        regions[row.region] += 1
        summary.max_abs_R = max(summary.max_abs_R, abs(row.R_residual))
        summary.max_round_trip_error = max(summary.max_round_trip_error, row.round_trip_error)
        if row.violations:
            summary.violations.append({"row": row.index, "reasons": list(row.violations)})
    summary.regions = dict(regions)
    return rows, summary


def rows_to_csv(rows: Sequence[CampaignRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()
