"""Timing of normal-form arithmetic in the crossed model.

Reports mean seconds per product, per inverse and per regular norm (both
determinant routes) on seeded random elements, for each level.

    python scripts/bench_normal_form.py --levels 1 2 3 --samples 20
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import time
from dataclasses import asdict, dataclass, field

from mnring import crossed as cr
from mnring import sampling
from mnring.crossed import CrossedModel


@dataclass(frozen=True)
class BenchConfig:
    levels: tuple = (1, 2, 3)
    samples: int = 20
    max_terms: int = 4
    seed: int = 0
    bareiss_max_level: int = 2
    norm_max_level: int = 3


@dataclass
class LevelTiming:
    level: int
    dimension: int
    mul: float
    inv: float
    norm_tower: float | None = None
    norm_bareiss: float | None = None
    extra: dict = field(default_factory=dict)


def _mean_time(fn, args) -> float:
    times = []
    for a in args:
        t = time.perf_counter()
        fn(*a)
        times.append(time.perf_counter() - t)
    return statistics.fmean(times)


def bench_level(cfg: BenchConfig, m: int) -> LevelTiming:
    rng = random.Random(f"{cfg.seed}:bench:{m}")
    model = CrossedModel.first(m)
    elems = [sampling.nonzero_crossed(rng, model, max_terms=cfg.max_terms) for _ in range(2 * cfg.samples)]
    pairs = list(zip(elems[::2], elems[1::2]))
    singles = [(a,) for a in elems[: cfg.samples]]
    out = LevelTiming(
        level=m,
        dimension=model.dimension,
        mul=_mean_time(cr.crossed_mul, pairs),
        inv=_mean_time(cr.crossed_inv, singles),
    )
    if m <= cfg.norm_max_level:
        out.norm_tower = _mean_time(lambda a: cr.regular_norm(a, "tower"), singles)
    if m <= cfg.bareiss_max_level:
        out.norm_bareiss = _mean_time(lambda a: cr.regular_norm(a, "bareiss"), singles)
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--levels", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--max-terms", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    a = p.parse_args(argv)
    cfg = BenchConfig(tuple(a.levels), a.samples, a.max_terms, a.seed)
    rows = [bench_level(cfg, m) for m in cfg.levels]
    if a.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    fmt = lambda v: "-" if v is None else f"{v * 1e3:9.2f}"
    print(f"{'m':>2} {'dim':>4} {'mul ms':>9} {'inv ms':>9} {'norm ms':>9} {'bareiss ms':>10}")
    for r in rows:
        print(f"{r.level:>2} {r.dimension:>4} {fmt(r.mul)} {fmt(r.inv)} {fmt(r.norm_tower)} {fmt(r.norm_bareiss):>10}")


if __name__ == "__main__":
    main()
