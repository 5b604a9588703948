"""Brute-force references used to check the fast paths.

Nothing here shares code with the algorithms under test beyond the graph
container and the simple-cycle enumerator.
"""
from fractions import Fraction
from itertools import combinations

from ergopt.graph import cycle_mean, enumerate_simple_cycles

CAP = 200_000


def reachability(g):
    n = g.vertex_count
    reach = [[False] * n for _ in range(n)]
    for e in g.edges:
        reach[e.source][e.target] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    return reach


def brute_beta(g):
    return max(cycle_mean(c, g) for c in enumerate_simple_cycles(g, CAP))


def maximising_cycles(g):
    cycles = enumerate_simple_cycles(g, CAP)
    means = [cycle_mean(c, g) for c in cycles]
    best = max(means)
    return [c for c, m in zip(cycles, means) if m == best]


def brute_interval(g, direction_weights):
    vals = [cycle_mean(c, g, direction_weights) for c in maximising_cycles(g)]
    return min(vals), max(vals)


def brute_unique(g):
    return len(maximising_cycles(g)) == 1


def cycle_lines(g_f, g_g):
    """Distinct (intercept, slope) lines of all simple cycles."""
    return sorted({
        (cycle_mean(c, g_f), cycle_mean(c, g_g)) for c in enumerate_simple_cycles(g_f, CAP)
    })


def brute_envelope(g_f, g_g, lo, hi):
    """Breakpoints and segment slopes of the upper envelope over [lo, hi]."""
    lines = cycle_lines(g_f, g_g)
    points = {Fraction(lo), Fraction(hi)}
    for (a1, s1), (a2, s2) in combinations(lines, 2):
        if s1 != s2:
            x = (a2 - a1) / (s1 - s2)
            if lo < x < hi:
                points.add(x)
    points = sorted(points)
    slopes, breakpoints = [], []
    for x, y in zip(points, points[1:]):
        mid = (x + y) / 2
        top = max(a + s * mid for a, s in lines)
        slope = max(s for a, s in lines if a + s * mid == top)
        if slopes and slope != slopes[-1]:
            breakpoints.append(x)
        if not slopes or slope != slopes[-1]:
            slopes.append(slope)
    return breakpoints, slopes


def brute_envelope_value(g_f, g_g, t):
    return max(a + s * t for a, s in cycle_lines(g_f, g_g))
