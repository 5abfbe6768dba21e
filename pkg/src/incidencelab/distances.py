"""Squared Euclidean distances over F_p, pinned distance sets, isotropic
lines, perpendicular-bisector families, isosceles triples, and the
determined-lines (two-extremes) accounting with its dyadic partition.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import EmptyInputError, ModulusMismatchError, TooFewPointsError
from .field import inv_mod, minus_one_is_square, sqrt_mod
from .plane import AffineLine, AffinePoint, line_through


def distance(q: AffinePoint, r: AffinePoint) -> int:
    """Squared Euclidean distance (q_x - r_x)^2 + (q_y - r_y)^2 mod p."""
    if q.p != r.p:
        raise ModulusMismatchError(f"mixed moduli {q.p} and {r.p}")
    p = q.p
    dx = q.x - r.x
    dy = q.y - r.y
    return (dx * dx + dy * dy) % p


@dataclass(frozen=True)
class DistanceReport:
    """All squared distances of a point set and all pinned distance sets.

    pin is the point whose pinned set is largest (ties broken
    lexicographically); degenerate flags the all-zero distance set that a
    subset of one isotropic line produces.
    """

    distances: frozenset[int]
    pinned: dict
    pin: AffinePoint
    max_pinned: int
    degenerate: bool

    def __eq__(self, other):
        if not isinstance(other, DistanceReport):
            return NotImplemented
        return (self.distances, self.pinned, self.pin) == (other.distances, other.pinned, other.pin)


def distance_sets(points) -> DistanceReport:
    """Exact distance set and every pinned set Delta_q over the given points."""
    pts = sorted(set(points))
    if not pts:
        raise EmptyInputError("need at least one point")
    pinned = {}
    for q in pts:
        pinned[q] = frozenset(distance(q, r) for r in pts)
    full = frozenset().union(*pinned.values())
    # argmax by pinned-set size; pts is sorted, so ties resolve to the
    # lexicographically smallest point
    best = max(len(s) for s in pinned.values())
    pin = next(q for q in pts if len(pinned[q]) == best)
    return DistanceReport(full, pinned, pin, best, full == frozenset({0}))


def isotropic_lines(r: AffinePoint) -> tuple[AffineLine, AffineLine] | None:
    """The two lines through r on which all mutual distances vanish.

    They exist exactly when -1 is a square mod p (p = 1 mod 4); the first
    line uses the canonical (smaller) square root i of -1, the second its
    negative."""
    p = r.p
    if not minus_one_is_square(p):
        return None
    i = sqrt_mod(p - 1, p)
    first = AffineLine(i, (r.y - i * r.x) % p, p)
    second = AffineLine(p - i, (r.y + i * r.x) % p, p)
    return (first, second)


def bisector_instance(points, r: AffinePoint) -> frozenset[AffineLine]:
    """The deduplicated equal-distance lines {q : d(q, r) = d(q, s)} over all
    s in the set with d(r, s) != 0.

    With r translated to the origin the line for s' = s - r is
    2 s'_x x + 2 s'_y y = |s'|^2; it is translated back to the original
    frame.  Zero-distance pairs are excluded, so each line is well-defined.
    """
    p = r.p
    lines = set()
    for s in points:
        if s == r or distance(r, s) == 0:
            continue
        a = 2 * (s.x - r.x) % p
        b = 2 * (s.y - r.y) % p
        cc = (s.x * s.x + s.y * s.y - r.x * r.x - r.y * r.y) % p
        if b != 0:
            inv = inv_mod(b, p)
            lines.add(AffineLine((-a * inv) % p, (cc * inv) % p, p))
        else:
            inv = inv_mod(a, p)
            lines.add(AffineLine(None, cc * inv % p, p))
    return frozenset(lines)


def isosceles_triples(points) -> int:
    """Exact count of ordered triples (q, r, s), r != s, with
    d(q, r) = d(q, s) != 0."""
    pts = sorted(set(points))
    total = 0
    for q in pts:
        counts = Counter()
        for r in pts:
            d = distance(q, r)
            if d != 0:
                counts[d] += 1
        total += sum(c * (c - 1) for c in counts.values())
    return total


@dataclass(frozen=True)
class BeckReport:
    """Lines determined by a point set (at least two points each), their
    dyadic richness classes, and the exact pair accounting.

    Class j holds the lines with point count in [2^j, 2^(j+1)); classes
    start at j = 1.  Every unordered pair of distinct points lies on exactly
    one determined line, so the per-line pair counts sum to C(m, 2).
    """

    lines: tuple[AffineLine, ...]
    classes: dict
    pairs_by_class: dict
    pair_total: int
    expected_pairs: int
    m: int


def determined_lines(points) -> BeckReport:
    """All lines through at least two points of the set, with the dyadic
    partition by exact point count."""
    pts = sorted(set(points))
    m = len(pts)
    if m < 2:
        raise TooFewPointsError(f"need at least two points, got {m}")
    counts: dict[AffineLine, int] = {}
    for i in range(m):
        for j in range(i + 1, m):
            line = line_through(pts[i], pts[j])
            counts[line] = counts.get(line, 0) + 1
    # pairs on a line with k points: k*(k-1)/2; recover k from the pair count
    classes: dict[int, list[AffineLine]] = {}
    pairs_by_class: dict[int, int] = {}
    richness = {}
    for line, pair_count in counts.items():
        k = 1
        while k * (k - 1) // 2 < pair_count:
            k += 1
        richness[line] = k
        j = k.bit_length() - 1  # 2^j <= k < 2^(j+1)
        classes.setdefault(j, []).append(line)
        pairs_by_class[j] = pairs_by_class.get(j, 0) + pair_count
    ordered = tuple(sorted(counts, key=AffineLine.sort_key))
    classes = {j: tuple(sorted(ls, key=AffineLine.sort_key)) for j, ls in sorted(classes.items())}
    pairs_by_class = dict(sorted(pairs_by_class.items()))
    return BeckReport(ordered, classes, pairs_by_class, sum(counts.values()), m * (m - 1) // 2, m)
