"""Exact piecewise-linear convex curve ``t -> beta(f + t g)``.

Every cycle contributes a line ``mean_f(c) + t * mean_g(c)`` and the curve is
their upper envelope.  Rather than enumerating cycles (exponentially many),
the envelope is recovered by probing: at a parameter ``t`` the critical graph
gives the value and both one-sided slopes, i.e. two supporting lines.  Two
supporting lines from the ends of an interval either meet on the curve, or
their meeting point is a new probe that splits the interval.
"""
import bisect
import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .critical import critical_structure, directional_interval
from .errors import EdgeSetMismatch, InvalidInterval, OutOfDomain
from .graph import TransitionGraph, format_rational, parse_rational


def combined_graph(g_f: TransitionGraph, g_g: TransitionGraph, t) -> TransitionGraph:
    """Edge-wise ``f + t*g`` on a shared edge set."""
    t = Fraction(t)
    return g_f.with_weights([a + t * b for a, b in zip(g_f.weights, g_g.weights)])


@dataclass(frozen=True)
class Probe:
    t: Fraction
    value: Fraction
    left: Fraction  # inf of the direction's integral over maximising measures
    right: Fraction  # sup of the same


def probe(g_f: TransitionGraph, g_g: TransitionGraph, t) -> Probe:
    t = Fraction(t)
    cs = critical_structure(combined_graph(g_f, g_g, t))
    iv = directional_interval(cs, g_g)
    return Probe(t, cs.lam, iv.lower, iv.upper)


@dataclass(frozen=True)
class BetaCurve:
    domain: tuple  # (t_lo, t_hi)
    breakpoints: tuple
    segments: tuple  # ((slope, intercept), ...), one more than breakpoints

    def __post_init__(self):
        if len(self.segments) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more segment than breakpoints")

    @property
    def slopes(self) -> tuple:
        return tuple(s for s, _ in self.segments)

    @property
    def values(self) -> tuple:
        """Curve values at the breakpoints."""
        return tuple(self.evaluate(b) for b in self.breakpoints)

    def _check_closed(self, t):
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise OutOfDomain(f"t={t} outside [{lo}, {hi}]")

    def evaluate(self, t) -> Fraction:
        t = parse_rational(t)
        self._check_closed(t)
        slope, icpt = self.segments[bisect.bisect_left(self.breakpoints, t)]
        return slope * t + icpt

    def one_sided_derivatives(self, t0) -> tuple:
        t0 = parse_rational(t0)
        lo, hi = self.domain
        if not lo < t0 < hi:
            raise OutOfDomain(f"t0={t0} not inside ({lo}, {hi})")
        i = bisect.bisect_left(self.breakpoints, t0)
        if i < len(self.breakpoints) and self.breakpoints[i] == t0:
            return self.segments[i][0], self.segments[i + 1][0]
        return self.segments[i][0], self.segments[i][0]

    def is_differentiable_at(self, t0) -> bool:
        left, right = self.one_sided_derivatives(t0)
        return left == right

    def nondifferentiability_set(self) -> list:
        return list(self.breakpoints)

    def rows(self) -> list:
        """``(t, value, slope_left, slope_right)`` at the domain ends and each breakpoint.

        Slopes outside the domain are ``None``.
        """
        lo, hi = self.domain
        out = [(lo, self.evaluate(lo), None, self.segments[0][0])]
        for i, b in enumerate(self.breakpoints):
            out.append((b, self.evaluate(b), self.segments[i][0], self.segments[i + 1][0]))
        out.append((hi, self.evaluate(hi), self.segments[-1][0], None))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "value", "slope_left", "slope_right", "t_approx", "value_approx"])
        for t, v, sl, sr in self.rows():
            writer.writerow([
                format_rational(t),
                format_rational(v),
                "" if sl is None else format_rational(sl),
                "" if sr is None else format_rational(sr),
                f"{float(t):.6f}",
                f"{float(v):.6f}",
            ])
        return buf.getvalue()


def _line_through(t, value, slope):
    return slope, value - slope * t


def compute_curve(g_f: TransitionGraph, g_g: TransitionGraph, t_lo, t_hi) -> BetaCurve:
    """Upper envelope of all cycle lines over ``[t_lo, t_hi]``, exactly."""
    if not g_f.same_edge_set(g_g):
        raise EdgeSetMismatch("f and g must be weightings of the same edge set")
    t_lo, t_hi = parse_rational(t_lo), parse_rational(t_hi)
    if not t_lo < t_hi:
        raise InvalidInterval(f"need t_lo < t_hi, got [{t_lo}, {t_hi}]")

    a, b = probe(g_f, g_g, t_lo), probe(g_f, g_g, t_hi)
    cuts, lines = _resolve(g_f, g_g, a.t, a.value, a.right, b.t, b.value, b.left)
    return _merge(t_lo, t_hi, lines, cuts)


def _resolve(g_f, g_g, ta, va, sa, tb, vb, sb):
    """Envelope on ``[ta, tb]`` between supporting lines at both ends.

    Returns ``(cuts, lines)`` with ``len(lines) == len(cuts) + 1``.  Recursion
    depth is bounded by the number of distinct slopes found.
    """
    la, lb = _line_through(ta, va, sa), _line_through(tb, vb, sb)
    if sa == sb:
        return [], [la]
    if sa > sb:
        raise AssertionError("supporting slopes decrease; the curve would not be convex")
    cross = (lb[1] - la[1]) / (sa - sb)
    if cross <= ta:
        return [], [lb]
    if cross >= tb:
        return [], [la]
    mid = probe(g_f, g_g, cross)
    if mid.value == sa * cross + la[1]:
        return [cross], [la, lb]
    left_cuts, left_lines = _resolve(g_f, g_g, ta, va, sa, cross, mid.value, mid.left)
    right_cuts, right_lines = _resolve(g_f, g_g, cross, mid.value, mid.right, tb, vb, sb)
    return left_cuts + [cross] + right_cuts, left_lines + right_lines


def _merge(t_lo, t_hi, lines, cuts):
    breakpoints, segments = [], [lines[0]]
    for cut, line in zip(cuts, lines[1:]):
        if line[0] == segments[-1][0]:
            continue
        breakpoints.append(cut)
        segments.append(line)
    return BetaCurve((t_lo, t_hi), tuple(breakpoints), tuple(segments))
