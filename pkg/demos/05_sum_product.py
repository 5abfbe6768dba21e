#!/usr/bin/env python3
"""Sum-product images and expander-style reports.

Exact image-set sizes for A+A, A*A, the shifted product A*(A+1), the
three-variable forms A+BC and A(B+C), and the two-variable polynomial
x^2 + xy, with their sizes measured against the relevant main terms.
"""

from incidencelab import arithmetic_image, sumproduct_report

p = 1009
A = [3**k % p for k in range(12)]  # a geometric progression
print(f"A = 12-term geometric progression in F_{p}")
for expr in ("A+A", "A*A", "A*(A+1)"):
    img = arithmetic_image(expr, p, A=A)
    print(f"  |{expr}| = {len(img)}")

print()
rep = sumproduct_report("5.1", p, A=A)
print(f"sums vs products: M_min={rep.m_min}, M_max={rep.m_max}")
print(f"M_max / |A|^(6/5) = {rep.ratio:.3f}   (main term {rep.main_term:.1f})")
print(f"M_min^3 M_max^2 / |A|^6 = {rep.extra_ratios['min3max2_over_a6']:.3f}")
print(f"size condition {rep.condition_name}: {rep.condition_holds}")

print()
B = list(range(1, 9))
C = [5 * k % p for k in range(1, 7)]
rep = sumproduct_report("5.3", p, A=A, B=B, C=C)
print("three-variable expanders:")
for name, size in rep.images.items():
    print(f"  |{name}| = {size}")
print(f"  main term (|A||B||C|)^(1/2) = {rep.main_term:.1f}, ratio {rep.ratio:.3f}")

print()
rep = sumproduct_report("expander", p, A=B, B=C)
print(f"two-variable polynomial x^2+xy on |A|={rep.sizes['A']}, |B|={rep.sizes['B']}:")
print(f"  image size {rep.images['x^2+xy']}, main term {rep.main_term:.2f}, ratio {rep.ratio:.3f}")
print(f"  condition {rep.condition_name}: {rep.condition_holds}")

print()
print("arithmetic progressions pin the lower wall |A+A| = 2|A| - 1:")
ap = list(range(1, 21))
print(f"  |A| = {len(ap)}, |A+A| = {len(arithmetic_image('A+A', p, A=ap))}")
