"""Seeded random instances for property tests and experiments.

Everything draws from :class:`random.Random` so a seed reproduces the same
instance on every platform.
"""
import random
from fractions import Fraction

from .errors import DegenerateSystem
from .graph import TransitionGraph, recurrent_vertices
from .symbolic import Potential, SftSystem


def random_rational(rng: random.Random, lo, hi, max_den: int = 64) -> Fraction:
    """Rational in ``[lo, hi]`` on a grid with a random denominator."""
    den = rng.randint(1, max_den)
    return Fraction(lo) + (Fraction(hi) - Fraction(lo)) * Fraction(rng.randint(0, den), den)


def random_weight(rng: random.Random, scale: int = 6, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-scale * max_den, scale * max_den), rng.randint(1, max_den))


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16) -> TransitionGraph:
    """Random multigraph with at least one cycle."""
    while True:
        n = rng.randint(1, max_vertices)
        m = rng.randint(1, max_edges)
        edges = [
            (rng.randrange(n), rng.randrange(n), random_weight(rng)) for _ in range(m)
        ]
        g = TransitionGraph(n, edges)
        if recurrent_vertices(g):
            return g


def random_system(rng: random.Random, min_symbols: int = 2, max_symbols: int = 4,
                  density: float = 0.7) -> SftSystem:
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    while True:
        n = rng.randint(min_symbols, max_symbols)
        rows = tuple(tuple(int(rng.random() < density) for _ in range(n)) for _ in range(n))
        try:
            return SftSystem(tuple(alphabet[:n]), rows)
        except DegenerateSystem:
            continue


def random_potential(rng: random.Random, sys: SftSystem, window: int, scale: int = 6,
                     max_den: int = 4) -> Potential:
    return Potential(window, {
        w: random_weight(rng, scale, max_den) for w in sys.admissible_words(window)
    })


def random_fixture(seed: int):
    """``(system, f, g, (t_lo, t_hi))`` drawn from ``seed``."""
    rng = random.Random(seed)
    sys = random_system(rng)
    f = random_potential(rng, sys, rng.choice((1, 2)))
    g = random_potential(rng, sys, rng.choice((1, 2)), scale=3)
    lo = Fraction(rng.randint(-4, 0), rng.randint(1, 2))
    hi = lo + Fraction(rng.randint(1, 6), rng.randint(1, 2))
    return sys, f, g, (lo, hi)


def generic_fixture(seed: int = 2024, directions: int = 3):
    """Full-support 4-symbol system with window-2 ``f`` and random directions.

    Values have mixed denominators, so distinct cycles almost never share a
    line; used as the bundled generic instance for the line-sampling experiment.
    """
    rng = random.Random(seed)
    while True:
        sys = random_system(rng, 4, 4, density=0.75)
        if len(sys.symbols) == 4:
            break
    f = random_potential(rng, sys, 2, scale=4, max_den=12)
    gs = {f"g{i + 1}": random_potential(rng, sys, 2, scale=2, max_den=12) for i in range(directions)}
    return sys, f, gs
