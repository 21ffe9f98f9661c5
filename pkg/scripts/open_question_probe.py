"""Decide isomorphism of the extended pairs A + qA, B + qB for r > 2.

No general result settles these, so the verdicts are data.  Each line reports the graphs,
whether they are simple, and the search outcome with the number of nodes explored.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from circspec._arith import units
from circspec.construction import OPEN_QUESTION_BUDGET, ConstructionParams, full_report


@dataclass
class ProbeConfig:
    points: list[tuple[int, int]] = field(default_factory=lambda: [(3, 3), (3, 5), (4, 3)])
    all_units: bool = False
    budget: int = OPEN_QUESTION_BUDGET


def multipliers(n: int, all_units: bool) -> list[int]:
    if all_units:
        return [q for q in units(n) if q != 1]
    return [n - 1]


def probe(cfg: ProbeConfig):
    for r, p in cfg.points:
        n = 2**r * p
        for q in multipliers(n, cfg.all_units):
            t0 = time.perf_counter()
            rep = full_report(ConstructionParams(r, p, q), cfg.budget)
            out = rep.to_json()
            yield {
                "n": n,
                "q": q,
                "graph_x": out["graph_x"],
                "graph_y": out["graph_y"],
                "simple": out["simple"],
                "isospectral": rep.isospectral,
                "status": rep.verdict.status.value,
                "reason": rep.verdict.reason.value,
                "nodes": rep.verdict.nodes_explored,
                "seconds": round(time.perf_counter() - t0, 4),
            }


def _point(text: str) -> tuple[int, int]:
    r, p = text.split(",")
    return int(r), int(p)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=_point, nargs="+", default=ProbeConfig().points, metavar="R,P")
    ap.add_argument("--all-units", action="store_true")
    ap.add_argument("--budget", type=int, default=OPEN_QUESTION_BUDGET)
    args = ap.parse_args()
    cfg = ProbeConfig(args.points, args.all_units, args.budget)
    print(json.dumps({"config": asdict(cfg)}))
    for row in probe(cfg):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
