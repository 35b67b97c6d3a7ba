"""Emit the distortion CSV tables for all four path families.

Writes one `M,D` profile per path plus the circle-family envelope
(`M,D,n_attaining`) into --out-dir.  The half-line and full-line tables
saturate quickly in the index limit; bumping --index-limit is a cheap
way to convince yourself of that.

Usage: python3 scripts/distortion_tables.py [--out-dir results] [--m-max 4]
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from lamplighter import circle_family_distortion, distortion_profile
from lamplighter.coarse import PathSpec


@dataclass(frozen=True)
class TablesConfig:
    out_dir: Path = Path("results")
    index_limit: int = 2000
    m_max: int = 4
    circle_scales: tuple[int, ...] = (1, 2, 3, 4, 5)


def write_tables(config: TablesConfig) -> list[Path]:
    config.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    specs = [PathSpec("N"), PathSpec("R")] + [
        PathSpec(kind, n) for kind in ("I", "C") for n in config.circle_scales[:3]
    ]
    for spec in specs:
        profile = distortion_profile(spec, config.index_limit, config.m_max)
        name = f"profile-{spec.label()}.csv"
        path = config.out_dir / name
        path.write_text(profile.csv_text())
        written.append(path)
    family = circle_family_distortion(config.circle_scales, config.m_max)
    path = config.out_dir / "circle-family.csv"
    path.write_text(family.csv_text())
    written.append(path)
    return written


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    parser.add_argument("--index-limit", type=int, default=2000)
    parser.add_argument("--m-max", type=int, default=4)
    args = parser.parse_args()
    config = TablesConfig(args.out_dir, args.index_limit, args.m_max)

    for path in write_tables(config):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
