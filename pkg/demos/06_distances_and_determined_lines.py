#!/usr/bin/env python3
"""Squared distances, isotropic directions, bisectors, and determined lines.

Over F_p the squared Euclidean distance can vanish between distinct points
when -1 is a square; the isotropic lines collect exactly those pairs.  The
determined-lines report partitions pair-spanned lines into dyadic richness
classes and checks the exact pair-accounting identity.
"""

from incidencelab import (
    AffinePoint,
    bisector_instance,
    determined_lines,
    distance_sets,
    isosceles_triples,
    isotropic_lines,
    minus_one_is_square,
)

for p in (5, 7, 13):
    r = AffinePoint(1, 1, p)
    iso = isotropic_lines(r)
    tag = "two isotropic lines" if iso else "no isotropic lines"
    print(f"p = {p:2d}: -1 square? {minus_one_is_square(p)!s:5} -> {tag}"
          + (f": {iso[0]}, {iso[1]}" if iso else ""))

print()
p = 13
pts = [AffinePoint(x, (x * x + 1) % p, p) for x in range(6)]
rep = distance_sets(pts)
print(f"six points on a parabola over F_{p}:")
print("  distance set:", sorted(rep.distances))
print("  best pin:", rep.pin, "with", rep.max_pinned, "pinned distances")
print("  degenerate (all-zero):", rep.degenerate)
print("  isosceles triples:", isosceles_triples(pts))

print()
print("bisector family seen from the first point:")
for line in sorted(bisector_instance(pts, pts[0]), key=lambda l: l.sort_key()):
    print("  ", line)

print()
grid = [AffinePoint(x, y, 7) for x in range(3) for y in range(3)]
beck = determined_lines(grid)
print("3 x 3 grid over F_7 determines", len(beck.lines), "lines")
print("dyadic classes:", {f"[2^{j}, 2^{j + 1})": len(ls) for j, ls in beck.classes.items()})
print("pair accounting:", beck.pair_total, "=", beck.expected_pairs, "= C(9, 2)")

print()
collinear = [AffinePoint(k, 3 * k % 11, 11) for k in range(8)]
beck = determined_lines(collinear)
print("8 collinear points determine", len(beck.lines), "line;",
      "class", {j: len(ls) for j, ls in beck.classes.items()})
