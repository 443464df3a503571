#!/usr/bin/env python3
"""Triangulate a disk with concentric rings and write it in the ihdg mesh format.

Ring i (1..n) carries 6*i equally spaced vertices on radius R*i/n; consecutive
rings are stitched by an angular sweep, giving 6*n^2 triangles.

    python3 tools/gen_circle_mesh.py --rings 35 -o data/circle.mesh
"""

import argparse
import math
import sys


def ring(i, n, cx, cy, radius):
    if i == 0:
        return [(cx, cy)]
    r = radius * i / n
    m = 6 * i
    return [(cx + r * math.cos(2 * math.pi * j / m), cy + r * math.sin(2 * math.pi * j / m)) for j in range(m)]


def stitch(inner, outer, inner_off, outer_off):
    """Triangles between two rings, sweeping both by angle."""
    tris = []
    if len(inner) == 1:
        m = len(outer)
        for j in range(m):
            tris.append((inner_off, outer_off + j, outer_off + (j + 1) % m))
        return tris
    a, b = len(inner), len(outer)
    i = j = 0
    while i < a or j < b:
        # Compare the angle of the next vertex on each ring.
        next_inner = (i + 1) / a
        next_outer = (j + 1) / b
        if j < b and (i >= a or next_outer <= next_inner):
            tris.append((inner_off + i % a, outer_off + j % b, outer_off + (j + 1) % b))
            j += 1
        else:
            tris.append((inner_off + i % a, outer_off + j % b, inner_off + (i + 1) % a))
            i += 1
    return tris


def signed_area(p, q, r):
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))


def build(n, cx, cy, radius):
    vertices = []
    elements = []
    offsets = []
    for i in range(n + 1):
        offsets.append(len(vertices))
        vertices.extend(ring(i, n, cx, cy, radius))
    for i in range(1, n + 1):
        inner = vertices[offsets[i - 1]:offsets[i]]
        outer = vertices[offsets[i]:offsets[i] + 6 * i]
        elements.extend(stitch(inner, outer, offsets[i - 1], offsets[i]))
    oriented = []
    for t in elements:
        if signed_area(*(vertices[k] for k in t)) < 0:
            t = (t[0], t[2], t[1])
        oriented.append(t)
    return vertices, oriented


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--rings", type=int, default=35)
    ap.add_argument("--center", type=float, nargs=2, default=(0.5, 0.5))
    ap.add_argument("--radius", type=float, default=0.5)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()
    if args.rings < 1:
        ap.error("--rings must be >= 1")

    vertices, elements = build(args.rings, args.center[0], args.center[1], args.radius)
    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="ascii")
    with out:
        out.write(f"# disk center ({args.center[0]:g}, {args.center[1]:g}) radius {args.radius:g}, "
                  f"{args.rings} rings\n")
        out.write(f"{len(vertices)} {len(elements)}\n")
        for x, y in vertices:
            out.write(f"{x:.17g} {y:.17g}\n")
        for a, b, c in elements:
            out.write(f"{a} {b} {c}\n")


if __name__ == "__main__":
    main()
