"""Tabulate ball and sphere sizes around the identity.

Usage: python3 scripts/ball_growth.py [--max-radius 16] [--csv growth.csv]
"""

import argparse
import sys
from dataclasses import dataclass

from lamplighter import IDENTITY, ball


@dataclass(frozen=True)
class GrowthConfig:
    max_radius: int = 16
    csv: str | None = None


def growth_rows(config: GrowthConfig) -> list[tuple[int, int, int]]:
    b = ball(IDENTITY, config.max_radius)
    spheres = b.sphere_sizes()
    rows = []
    total = 0
    for r, count in enumerate(spheres):
        total += count
        rows.append((r, count, total))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-radius", type=int, default=16)
    parser.add_argument("--csv", default=None, help="Also write radius,sphere,ball CSV.")
    args = parser.parse_args()
    config = GrowthConfig(max_radius=args.max_radius, csv=args.csv)

    rows = growth_rows(config)
    print(f"{'r':>4} {'sphere':>10} {'ball':>10} {'ratio':>8}")
    prev = None
    for r, sphere, total in rows:
        ratio = f"{total / prev:.3f}" if prev else ""
        print(f"{r:>4} {sphere:>10} {total:>10} {ratio:>8}")
        prev = total
    if config.csv:
        with open(config.csv, "w") as fh:
            fh.write("radius,sphere,ball\n")
            for r, sphere, total in rows:
                fh.write(f"{r},{sphere},{total}\n")
        print(f"wrote {config.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
