"""Build the 2^r p pairs over a parameter grid and print one JSON line per point."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from circspec.construction import ConstructionParams, full_report


@dataclass
class SweepConfig:
    rs: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    ps: list[int] = field(default_factory=lambda: [3, 5, 7, 11, 13])
    max_n: int = 500


def sweep(cfg: SweepConfig):
    for r in cfg.rs:
        for p in cfg.ps:
            if 2**r * p > cfg.max_n:
                continue
            t0 = time.perf_counter()
            rep = full_report(ConstructionParams(r, p))
            yield {
                "r": r,
                "p": p,
                "n": 2**r * p,
                "violations": rep.violations(),
                "verdict": rep.verdict.reason.value,
                "seconds": round(time.perf_counter() - t0, 4),
            }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rs", type=int, nargs="+", default=SweepConfig().rs)
    ap.add_argument("--ps", type=int, nargs="+", default=SweepConfig().ps)
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    args = ap.parse_args()
    cfg = SweepConfig(args.rs, args.ps, args.max_n)
    print(json.dumps({"config": asdict(cfg)}))
    failures = 0
    for row in sweep(cfg):
        failures += bool(row["violations"])
        print(json.dumps(row))
    raise SystemExit(2 if failures else 0)


if __name__ == "__main__":
    main()
