from fractions import Fraction

import pytest

from conftest import random_instances
from incidencelab.constructions import SeededStream, elekes_construction, full_plane, random_instance
from incidencelab.energy import energy_reduction, line_energy
from incidencelab.field import make_modulus
from incidencelab.incidence import (
    PlaneInstance3D,
    check_hypotheses,
    count_incidences,
    count_point_plane,
    max_collinear_3d,
    reference_bound,
    richness_histograms,
    within_combinatorial_bound,
)
from incidencelab.plane import AffineLine, AffinePoint, Instance, incident

ENGINES = ("naive", "hash_join", "auto")


def brute_count(inst):
    """Definitional oracle: test every (point, line) pair."""
    return sum(1 for q in inst.points for line in inst.lines if incident(q, line))


@pytest.mark.parametrize("engine", ENGINES)
def test_count_examples(engine):
    assert count_incidences(full_plane(3), engine) == 36
    assert count_incidences(elekes_construction(2, 1, 7), engine) == 4
    mod = make_modulus(7)
    inst = Instance(mod, [AffinePoint(0, 0, 7)], [AffineLine(1, 1, 7)])
    assert count_incidences(inst, engine) == 0


def test_engines_agree_with_definitional_oracle():
    for inst in random_instances(30, seed=11, max_m=40, max_n=40):
        expected = brute_count(inst)
        for engine in ENGINES:
            assert count_incidences(inst, engine) == expected


def test_engine_equivalence_random_suite():
    for inst in random_instances(120, seed=5):
        assert count_incidences(inst, "naive") == count_incidences(inst, "hash_join")


def test_monotonicity_adding_elements():
    stream = SeededStream(99)
    for inst in random_instances(20, seed=55, max_m=50, max_n=50):
        base = count_incidences(inst)
        p = inst.p
        q = AffinePoint(stream.below(p), stream.below(p), p)
        line = AffineLine(stream.below(p), stream.below(p), p)
        assert count_incidences(inst.replace(points=inst.points + (q,))) >= base
        assert count_incidences(inst.replace(lines=inst.lines + (line,))) >= base


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_full_plane_law(p):
    assert count_incidences(full_plane(p)) == p * p * (p + 1)


def test_counts_within_combinatorial_bound():
    for inst in random_instances(40, seed=21):
        count = count_incidences(inst)
        assert within_combinatorial_bound(count, inst.m, inst.n)


def test_richness_histograms_full_plane():
    hist = richness_histograms(full_plane(5))
    assert set(hist.per_point.values()) == {6}
    assert set(hist.per_line.values()) == {5}
    assert hist.total == 150


def test_richness_histograms_elekes():
    inst = elekes_construction(2, 1, 7)
    hist = richness_histograms(inst)
    assert set(hist.per_line.values()) == {2}
    assert set(hist.per_point.values()) <= {0, 1}
    assert hist.total == 4


def test_richness_histograms_empty_lines():
    mod = make_modulus(7)
    inst = Instance(mod, [AffinePoint(1, 2, 7)], [])
    hist = richness_histograms(inst)
    assert hist.per_point == {AffinePoint(1, 2, 7): 0}
    assert hist.total == 0


def test_histogram_consistency_random():
    for inst in random_instances(25, seed=42, max_m=60, max_n=60):
        hist = richness_histograms(inst)
        assert sum(hist.per_point.values()) == sum(hist.per_line.values()) == hist.total
        assert hist.total == count_incidences(inst)


# ---------------------------------------------------------------------------
# 3D point-plane counting
# ---------------------------------------------------------------------------

def test_count_point_plane_coordinate_plane():
    points = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
    inst3 = PlaneInstance3D.build(3, points, [(0, 0, 1, 0)])
    assert count_point_plane(inst3) == 9


def test_count_point_plane_two_points():
    inst3 = PlaneInstance3D.build(5, [(0, 0, 0), (1, 1, 1)], [(0, 0, 1, 0)])
    assert count_point_plane(inst3) == 1


def test_count_point_plane_matches_energy_reduction():
    lines = [AffineLine(0, 0, 5), AffineLine(1, 0, 5)]
    inst3 = energy_reduction([0, 1], lines, 5)
    # oracle: enumerate all point-plane pairs directly
    direct = 0
    for x, y, z in inst3.points:
        for a, b, c, d in inst3.planes:
            if (a * x + b * y + c * z - d) % 5 == 0:
                direct += 1
    assert direct == 10
    assert count_point_plane(inst3) == direct == line_energy([0, 1], lines, 5).value


def brute_max_collinear(points, p):
    """Oracle: check every pair-defined line by membership testing."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return 1
    best = 1
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            base, other = pts[i], pts[j]
            d = tuple((other[k] - base[k]) % p for k in range(3))
            count = 0
            for q in pts:
                # q on the line base + t*d iff (q - base) is parallel to d
                v = tuple((q[k] - base[k]) % p for k in range(3))
                parallel = all(
                    (v[a] * d[b] - v[b] * d[a]) % p == 0
                    for a in range(3) for b in range(a + 1, 3)
                )
                if parallel:
                    count += 1
            best = max(best, count)
    return best


def test_max_collinear_examples():
    assert max_collinear_3d([(0, 0, 0), (1, 1, 1), (2, 2, 2)], 5) == 3
    assert max_collinear_3d([(3, 1, 4)], 7) == 1
    grid = [(x, s, 0) for x in (0, 1) for s in (0, 1)]
    assert brute_max_collinear(grid, 5) == 2
    assert max_collinear_3d(grid, 5) == 2


def test_max_collinear_matches_oracle_random():
    stream = SeededStream(400)
    for _ in range(25):
        p = (5, 7, 11)[stream.below(3)]
        pts = {(stream.below(p), stream.below(p), stream.below(p)) for _ in range(stream.below(12) + 2)}
        pts = sorted(pts)
        assert max_collinear_3d(pts, p) == brute_max_collinear(pts, p)


# ---------------------------------------------------------------------------
# Reference bounds
# ---------------------------------------------------------------------------

def test_reference_bound_regimes():
    label, value = reference_bound(100, 5)
    assert label == "n < m^(1/2)" and value == 100.0
    label, value = reference_bound(100, 100)
    assert label == "m^(7/8) < n < m^(8/7)"
    assert value == pytest.approx(100 ** (22 / 15), rel=1e-12)
    label, value = reference_bound(100, 50)
    assert label == "m^(1/2) < n < m^(7/8)" and value == pytest.approx(10 * 50)
    label, value = reference_bound(10, 50)
    assert label == "m^(8/7) < n < m^2" and value == pytest.approx(10 * 50**0.5)
    label, value = reference_bound(3, 500)
    assert label == "m^2 < n" and value == 500.0


def test_reference_bound_vinh_substitution():
    # m = n = q^(3/2) with q = 25 gives mn/q + sqrt(q) sqrt(mn) = 2 q^2
    q = 25
    m = n = 125
    _, value = reference_bound(m, n, q, "vinh")
    assert value == pytest.approx(2 * q * q)


def test_reference_bound_combinatorial_exact_form():
    _, value = reference_bound(16, 9, which="combinatorial")
    assert value == min(4 * 9 + 16, 16 * 3 + 9)


def test_within_combinatorial_bound_boundaries():
    # I = m^(1/2) n + m exactly is allowed, one more is not
    m, n = 16, 9
    bound = 4 * 9 + 16
    assert within_combinatorial_bound(bound, m, n)
    assert not within_combinatorial_bound(bound + 1, m, n)


# ---------------------------------------------------------------------------
# Hypothesis checks
# ---------------------------------------------------------------------------

def test_hypotheses_elekes_example():
    report = check_hypotheses("1.3", a=2, b=8, n=8, p=31)
    assert report.passed
    names = [c.name for c in report.conditions]
    assert names == ["a <= b", "a b^2 <= n^3", "a n << p^2"]


def test_hypotheses_full_plane_exact_failure():
    # the characteristic condition fails for every full plane with p >= 5:
    # n^13 > m^2 p^15 holds with exact integers
    for p in (5, 7, 11, 13):
        m, n = p * p, p * p + p
        assert n**13 > m**2 * p**15  # oracle of the exact comparison
        report = check_hypotheses("1.2", m=m, n=n, p=p)
        assert not report.passed
        by_name = {c.name: c.passed for c in report.conditions}
        assert by_name["m^(-2) n^13 << p^15"] is False
        assert by_name["m^(7/8) < n"] is True
        assert by_name["n < m^(8/7)"] is True


def test_hypotheses_a_greater_than_b_fails():
    report = check_hypotheses("1.3", a=9, b=2, n=10, p=101)
    assert not report.passed
    assert report.conditions[0].name == "a <= b" and not report.conditions[0].passed


def test_hypotheses_theorem_14():
    report = check_hypotheses("1.4", r=10, s=20, p=7)
    by_name = {c.name: c.passed for c in report.conditions}
    assert by_name["r <= s"] is True
    assert by_name["r << p^2"] is True
    report = check_hypotheses("1.4", r=50, s=60, p=7)
    assert not report.passed


def test_ll_constant_changes_verdict():
    # 10 <= c * 9 only for c >= 10/9
    fail = check_hypotheses("1.4", r=10, s=10, p=3)
    assert not fail.passed
    ok = check_hypotheses("1.4", r=10, s=10, p=3, c=Fraction(10, 9))
    assert ok.passed


def test_hash_join_numpy_fallback_agrees(monkeypatch):
    # force the pure-numpy probe path (used when numba is unavailable)
    import incidencelab.incidence as inc
    monkeypatch.setattr(inc, "_KERNELS", False)
    for inst in random_instances(25, seed=66, max_m=80, max_n=80):
        assert count_incidences(inst, "hash_join") == count_incidences(inst, "naive")
    inst = elekes_construction(3, 2, 31)
    assert count_incidences(inst, "hash_join") == 36


def test_int64_kernel_path_for_large_p(monkeypatch):
    # p above the float64-exact threshold exercises the integer kernels
    p = 2147483629
    inst = random_instance(p, 400, 400, seed=12)
    assert count_incidences(inst, "hash_join") == count_incidences(inst, "naive")
    import incidencelab.incidence as inc
    assert p > inc._FLOAT_EXACT_MAX_P


def test_engine_partition_independence():
    # the count is a sum over lines, so any split of the line set adds up
    inst = random_instance(31, 120, 150, 9)
    half1 = inst.replace(lines=inst.lines[:75])
    half2 = inst.replace(lines=inst.lines[75:])
    assert count_incidences(half1) + count_incidences(half2) == count_incidences(inst)
