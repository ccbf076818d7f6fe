"""Tabulate the hyperpath spectral radius against its limit 4^(1/k).

    python3 scripts/radius_convergence.py --max-m 200 --out radius.csv
"""

from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass

import mpmath

from hypercharpoly.spectra import spectral_radius


@dataclass(frozen=True)
class Config:
    ks: tuple[int, ...] = (2, 3, 4, 5, 6)
    max_m: int = 200
    digits: int = 40
    out: str | None = None


def main(cfg: Config) -> list[dict]:
    rows = []
    with mpmath.workdps(cfg.digits + 10):
        for k in cfg.ks:
            limit = mpmath.root(4, k)
            prev = None
            for m in range(1, cfg.max_m + 1):
                r = spectral_radius(m, k, cfg.digits)
                gap = limit - r.value
                rows.append({
                    "k": k,
                    "m": m,
                    "radius": mpmath.nstr(r.value, cfg.digits),
                    "exact": r.exact_str(),
                    "gap": mpmath.nstr(gap, 8),
                    # gap * (m+2)^2 tends to a constant when the approach is quadratic in 1/m
                    "scaled_gap": mpmath.nstr(gap * (m + 2) ** 2, 8),
                    "increasing": prev is None or r.value > prev,
                })
                prev = r.value
            last = rows[-1]
            print(f"k={k}: rho(P_{cfg.max_m}) = {last['radius'][:18]}  gap {last['gap']}  scaled {last['scaled_gap']}")
    bad = [r for r in rows if not r["increasing"]]
    print("strictly increasing:", not bad)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ks", type=int, nargs="+", default=list(Config.ks))
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    ap.add_argument("--digits", type=int, default=Config.digits)
    ap.add_argument("--out")
    a = ap.parse_args()
    main(Config(tuple(a.ks), a.max_m, a.digits, a.out))
