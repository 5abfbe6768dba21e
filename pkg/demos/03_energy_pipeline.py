#!/usr/bin/env python3
"""From line energy to point-plane incidences.

The energy of a scalar set A against a line family L counts six-tuples
(x, s, t, x', s', t') with xs + t = x's' + t'.  The same quantity is the
number of incidences between |A| n points and |A| n planes in three-space,
and it controls I(A x B, L) through the Cauchy-Schwarz inequality.
"""

from incidencelab import (
    AffineLine,
    cs_bridge_check,
    count_point_plane,
    energy_reduction,
    line_energy,
    max_collinear_3d,
)

p = 5
A = [0, 1]
lines = [AffineLine(0, 0, p), AffineLine(1, 0, p)]

print(f"A = {A}, lines y=0 and y=x over F_{p}")
e = line_energy(A, lines, p)
print("energy:", e.value)
print("value multiplicities:", dict(sorted(e.table.items())))

red = energy_reduction(A, lines, p)
print()
print(f"reduction: {red.r} points and {red.s} planes in F_{p}^3")
print("point-plane incidences:", count_point_plane(red), "(equals the energy)")
print("max collinear points:", max_collinear_3d(red.points, p))

print()
print("Cauchy-Schwarz bridge with B = {0, 1}:")
bridge = cs_bridge_check(A, [0, 1], lines, p)
print(f"  I(A x B, L) = {bridge.incidences}")
print(f"  I^2 = {bridge.incidences**2} <= |B| * E = {bridge.bound}: {bridge.holds}")

print()
print("a bigger random example:")
import random

rng = random.Random(11)
p = 101
A = sorted(rng.sample(range(p), 6))
lines = [AffineLine(rng.randrange(p), rng.randrange(p), p) for _ in range(25)]
e = line_energy(A, lines, p)
red = energy_reduction(A, lines, p)
print(f"  |A| = {len(A)}, n = {len(set(lines))}, energy = {e.value}")
print(f"  point-plane count = {count_point_plane(red)} (must match)")
bridge = cs_bridge_check(A, sorted(rng.sample(range(p), 9)), lines, p)
print(f"  bridge: I = {bridge.incidences}, I^2 <= |B| E: {bridge.holds}")
