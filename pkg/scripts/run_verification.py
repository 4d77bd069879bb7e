"""Run the verification suite and write the reports as JSON lines.

    python scripts/run_verification.py --seed 0 --out reports.jsonl
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from mnring.verify import VerifyConfig, run_all


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    level: Optional[int] = None
    scale: float = 1.0
    out: Optional[Path] = None


def parse_args(argv=None) -> RunConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--out", type=Path, default=None)
    a = p.parse_args(argv)
    return RunConfig(a.seed, a.level, a.scale, a.out)


def main(argv=None) -> int:
    cfg = parse_args(argv)
    started = time.perf_counter()
    reports = run_all(VerifyConfig(seed=cfg.seed, level=cfg.level, scale=cfg.scale))
    for r in reports:
        print(f"{r.line()}  [{r.seconds:.2f}s]")
    print(f"total {time.perf_counter() - started:.1f}s")
    if cfg.out is not None:
        cfg.out.write_text("".join(r.to_json() + "\n" for r in reports))
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
