"""Cross-check closed forms against the Macaulay oracle on every family member that fits the budget.

    python3 scripts/oracle_hyperpath.py --budget 512 --out oracle_report.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, replace

from hypercharpoly.config import DEFAULT_LIMITS
from hypercharpoly.hypergraph import build_broom, build_hyperpath, build_hyperstar
from hypercharpoly.oracle import OracleBudgetExceeded, macaulay_dimension, oracle_compare
from hypercharpoly.reduction import broom_charpoly, hyperpath_charpoly, hyperstar_charpoly


@dataclass(frozen=True)
class Config:
    budget: int = 512
    max_k: int = 4
    max_m: int = 4
    out: str | None = None


def cases(cfg: Config):
    for k in range(2, cfg.max_k + 1):
        for m in range(1, cfg.max_m + 1):
            yield f"hyperpath m={m} k={k}", build_hyperpath(m, k), lambda m=m, k=k: hyperpath_charpoly(m, k)
        for s in (2, 3):
            yield f"hyperstar s={s} k={k}", build_hyperstar(s, k), lambda s=s, k=k: hyperstar_charpoly(s, k)
        yield f"broom m=1 s=2 k={k}", build_broom(1, 2, k), lambda k=k: broom_charpoly(1, 2, k)


def main(cfg: Config) -> list[dict]:
    limits = replace(DEFAULT_LIMITS, oracle_dim=cfg.budget)
    rows = []
    for label, h, closed in cases(cfg):
        dim = macaulay_dimension(h.n, h.k) if h.k > 2 else h.n
        if dim > cfg.budget:
            print(f"{label:24s} skipped (Macaulay dimension {dim} > {cfg.budget})")
            continue
        t0 = time.perf_counter()
        try:
            v = oracle_compare(closed(), h, limits)
        except OracleBudgetExceeded as e:
            print(f"{label:24s} refused: {e}")
            continue
        dt = time.perf_counter() - t0
        row = {"case": label, "n": h.n, "dim": dim, "seconds": round(dt, 3), **v.to_dict()}
        rows.append(row)
        print(f"{label:24s} n={h.n:2d} dim={dim:4d} degree={v.degree:4d} match={v.match} {dt:.2f}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=Config.budget)
    ap.add_argument("--max-k", type=int, default=Config.max_k)
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    ap.add_argument("--out")
    a = ap.parse_args()
    rows = main(Config(a.budget, a.max_k, a.max_m, a.out))
    raise SystemExit(0 if all(r["match"] for r in rows) else 4)
