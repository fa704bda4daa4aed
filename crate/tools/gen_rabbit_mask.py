#!/usr/bin/env python3
"""Generate the bundled rabbit-silhouette raster mask (builtin example 2).

The mask is stored in the grid CSV format with node coordinates at the cell
centres; later shapes paint over earlier ones. Amplitudes: body 1.0,
head 1.5, ears and tail 0.5.

Usage: python3 tools/gen_rabbit_mask.py crates/core/data/rabbit_mask.csv
"""
import json
import math
import sys

N = 80
HALF = 2.4
H = 2 * HALF / N
LO, HI = -HALF + H / 2, HALF - H / 2


def lattice(lo, hi, i, n):
    s = i / (n - 1)
    return lo * (1.0 - s) + hi * s


def ellipse(cx, cy, a, b, tilt_deg=0.0):
    t = math.radians(tilt_deg)
    c, s = math.cos(t), math.sin(t)

    def inside(x, y):
        dx, dy = x - cx, y - cy
        u = c * dx + s * dy
        v = -s * dx + c * dy
        return (u / a) ** 2 + (v / b) ** 2 < 1.0

    return inside


SHAPES = [
    (ellipse(0.2, -0.7, 1.3, 0.95), 1.0),          # body
    (ellipse(1.55, -0.3, 0.3, 0.3), 0.5),          # tail
    (ellipse(-1.1, 0.35, 0.6, 0.6), 1.5),          # head
    (ellipse(-1.35, 1.35, 0.2, 0.65, 15.0), 0.5),  # back ear
    (ellipse(-0.85, 1.4, 0.2, 0.65, -15.0), 0.5),  # front ear
]


def main(path):
    rows = ["i,j,z1,z2,value"]
    for j in range(N):
        y = lattice(LO, HI, j, N)
        for i in range(N):
            x = lattice(LO, HI, i, N)
            v = 0.0
            for inside, amp in SHAPES:
                if inside(x, y):
                    v = amp
            rows.append(f"{i},{j},{x!r},{y!r},{v!r}")
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(rows) + "\n")
    meta = {"x_min": LO, "x_max": HI, "y_min": LO, "y_max": HI, "nx": N, "ny": N}
    with open(path + ".meta.json", "w", newline="\n") as f:
        f.write(json.dumps(meta, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
