"""Sweep the ball-local separation experiment across probe scales.

For each n, remove the chosen path (plus a K-neighborhood) from the ball
whose radius comfortably contains the scale-n probes, and report how the
ball shatters.  The interesting column is `deep`: the component depth
certifies that the probes sit n away from the obstacle on both sides.

Usage: python3 scripts/separation_sweep.py [--kind N] [--max-n 4] [--k 0]
"""

import argparse
import sys
from dataclasses import dataclass

from lamplighter import probes, separation_report
from lamplighter.coarse import PathSpec


@dataclass(frozen=True)
class SweepConfig:
    kind: str = "N"
    max_n: int = 4
    k_neighborhood: int = 0


def sweep_radius(kind: str, n: int) -> int:
    # Block probes sit at 5n-2 from the identity, interval/circle probes
    # at 5n+1; pad by the probe offset so every probe is strictly inside.
    return 5 * n + (4 if kind in ("I", "C") else 2)


def run_sweep(config: SweepConfig) -> list[dict]:
    rows = []
    for n in range(1, config.max_n + 1):
        spec = PathSpec(config.kind, n if config.kind in ("I", "C") else None)
        ps = probes(n)
        pa, pb = (ps.x_n, ps.y_n) if config.kind in ("I", "C") else (ps.a_n, ps.b_n)
        report = separation_report(
            spec, config.k_neighborhood, sweep_radius(config.kind, n), pa, pb
        )
        d = report.to_dict()
        pa_info, pb_info = d["probes"]
        rows.append(
            {
                "n": n,
                "radius": d["radius"],
                "ball": d["ball_size"],
                "obstacle": d["obstacle"]["size_in_ball"],
                "components": len(d["components"]),
                "deep": (pa_info["distance_to_obstacle"], pb_info["distance_to_obstacle"]),
                "verdict": d["verdict"],
            }
        )
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", choices=["N", "R", "I", "C"], default="N")
    parser.add_argument("--max-n", type=int, default=4)
    parser.add_argument("--k", type=int, default=0, dest="k_neighborhood",
                        help="Neighborhood width removed around the path.")
    args = parser.parse_args()
    config = SweepConfig(args.kind, args.max_n, args.k_neighborhood)

    print(f"obstacle kind {config.kind}, K={config.k_neighborhood}")
    print(f"{'n':>3} {'radius':>7} {'ball':>9} {'obstacle':>9} {'comps':>6} "
          f"{'deep':>8}  verdict")
    ok = True
    for row in run_sweep(config):
        print(f"{row['n']:>3} {row['radius']:>7} {row['ball']:>9} "
              f"{row['obstacle']:>9} {row['components']:>6} "
              f"{str(row['deep']):>8}  {row['verdict']}")
        ok = ok and row["verdict"] == "separated-in-ball"
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
