"""Scan (alpha, beta) and summarize where Bell violation and key extraction agree.

Writes one CSV per attack variant (same schema as ``bellkey scan``) and
prints region counts plus a coarse character map:

    #  CHSH violated and the key condition holds
    .  neither
    ~  boundary band (|B - 1| < 1e-9)
    !  disagreement (should never appear)

    python scripts/region_scan.py --grid 181 --outdir results/
"""

from __future__ import annotations

import argparse
import csv
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path


from bellkey.cli import ScanRecord, scan_records


@dataclass
class ScanConfig:
    grid: int = 91
    outdir: Path = Path("results")
    map_size: int = 31
    variants: tuple[str, ...] = ("one-qubit", "symmetric")


def symbol(r: ScanRecord) -> str:
    if not r.consistent:
        return "!"
    if abs(float(r.chsh) - 1) < 1e-9:
        return "~"
    return "#" if r.violates else "."


def char_map(cfg: ScanConfig, variant: str) -> list[str]:
    rows = scan_records(cfg.map_size, variant)
    n = cfg.map_size
    # beta increases upwards, alpha to the right
    return ["".join(symbol(rows[i * n + j]) for i in range(n)) for j in reversed(range(n))]


def run(cfg: ScanConfig) -> None:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    for variant in cfg.variants:
        rows = scan_records(cfg.grid, variant)
        path = cfg.outdir / f"scan_{variant}_{cfg.grid}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ScanRecord.header())
            w.writerows(asdict(r).values() for r in rows)
        counts = Counter(symbol(r) for r in rows)
        print(f"[{variant}] {len(rows)} points -> {path}")
        print(f"  violating: {counts['#']}  non-violating: {counts['.']}  boundary: {counts['~']}  inconsistent: {counts['!']}")
        entangled = sum(float(r.ppt_min) < -1e-9 for r in rows)
        print(f"  entangled (PPT < 0): {entangled}  PPT: {len(rows) - entangled}")
        print(f"  map, alpha -> right, beta -> up ({cfg.map_size}x{cfg.map_size}):")
        for line in char_map(cfg, variant):
            print("    " + line)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--grid", type=int, default=ScanConfig.grid)
    p.add_argument("--outdir", type=Path, default=ScanConfig.outdir)
    p.add_argument("--map-size", type=int, default=ScanConfig.map_size)
    args = p.parse_args()
    run(ScanConfig(grid=args.grid, outdir=args.outdir, map_size=args.map_size))


if __name__ == "__main__":
    main()
