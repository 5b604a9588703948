"""Executable checks of the convexity/derivative identities and the line-sampling experiment.

Every comparison is between exact rationals.  A report lists each individual
assertion with the values that decided it, so a failure is a reproducible
counterexample rather than a bare boolean.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .critical import critical_structure, diameter, directional_interval, is_unique_maximising
from .curve import BetaCurve, combined_graph, compute_curve
from .errors import InvalidGrid, InvalidInterval
from .formats import Case, SystemDocument
from .generators import random_rational
from .graph import format_rational
from .maxmean import beta
from .symbolic import Potential, SftSystem, combine, lift, lift_common, lift_pair, sup_norm

CLAIMS = ("1", "2", "3", "4", "diam")


def _fmt(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    return str(value)


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": {k: _fmt(v) for k, v in self.witness.items()},
        }


@dataclass
class ClaimReport:
    claim: str
    instance: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, **witness) -> bool:
        self.checks.append(Check(name, bool(passed), witness))
        return passed

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "instance": {k: _fmt(v) for k, v in self.instance.items()},
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


class _Beta:
    """Fresh ``beta(f + t g)`` through the symbolic pipeline, memoised per ``t``."""

    def __init__(self, sys, f, g):
        self.sys, self.f, self.g = sys, f, g
        self._cache = {}

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        if t not in self._cache:
            self._cache[t] = beta(lift(self.sys, combine(self.f, self.g, t, self.sys)))
        return self._cache[t]


def _interval_at(gf, gg, t):
    cs = critical_structure(combined_graph(gf, gg, t))
    return cs, directional_interval(cs, gg)


def _instance(name, f_name, g_name, **extra):
    return {"fixture": name, "f": f_name, "g": g_name, **extra}


def verify_claim1(sys: SftSystem, f: Potential, g: Potential, seed: int = 0, pairs: int = 50,
                  interval=(0, 1), name: str = "", f_name: str = "f", g_name: str = "g"
                  ) -> ClaimReport:
    """Lipschitz bound with constant ``sup_norm(g)``, midpoint convexity and envelope agreement."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    report = ClaimReport("1", _instance(name, f_name, g_name, seed=seed, interval=[lo, hi]))
    rng = random.Random(seed)
    b = _Beta(sys, f, g)
    lip = sup_norm(g)
    curve = compute_curve(*lift_pair(sys, f, g), lo, hi) if lo < hi else None
    for _ in range(pairs):
        t1, t2 = random_rational(rng, lo, hi), random_rational(rng, lo, hi)
        b1, b2 = b(t1), b(t2)
        report.check("lipschitz", abs(b1 - b2) <= lip * abs(t1 - t2),
                     t1=t1, t2=t2, beta1=b1, beta2=b2, sup_norm_g=lip)
        mid = (t1 + t2) / 2
        report.check("midpoint_convexity", b(mid) <= (b1 + b2) / 2,
                     t1=t1, t2=t2, beta_mid=b(mid), chord_mid=(b1 + b2) / 2)
        if curve is not None:
            report.check("envelope_matches_beta", curve.evaluate(t1) == b1,
                         t=t1, envelope=curve.evaluate(t1), beta=b1)
    return report


def verify_claim2(sys: SftSystem, f: Potential, g: Potential, taus, base=0, name: str = "",
                  f_name: str = "f", g_name: str = "g") -> ClaimReport:
    """Difference-quotient sandwich between sup-integrals at ``f`` and at ``f + tau g``."""
    base = Fraction(base)
    report = ClaimReport("2", _instance(name, f_name, g_name, base=base))
    gf, gg = lift_pair(sys, f, g)
    b = _Beta(sys, f, g)
    _, iv0 = _interval_at(gf, gg, base)
    for tau in taus:
        tau = Fraction(tau)
        if tau <= 0:
            raise InvalidInterval(f"tau must be positive, got {tau}")
        quotient = (b(base + tau) - b(base)) / tau
        _, iv1 = _interval_at(gf, gg, base + tau)
        report.check("sandwich", iv0.upper <= quotient <= iv1.upper,
                     tau=tau, upper_at_f=iv0.upper, quotient=quotient,
                     upper_at_f_plus_tau_g=iv1.upper)
    return report


def verify_claim3(sys: SftSystem, f: Potential, g: Potential, base=0, span=1, name: str = "",
                  f_name: str = "f", g_name: str = "g") -> ClaimReport:
    """Upper semicontinuity of the sup-integral as ``tau`` decreases to 0.

    On the first open segment to the right of ``base`` the sup-integral is
    constant; that constant is the limsup and must not exceed its value at
    ``base``.
    """
    base, span = Fraction(base), Fraction(span)
    report = ClaimReport("3", _instance(name, f_name, g_name, base=base))
    gf, gg = lift_pair(sys, f, g)
    curve = compute_curve(gf, gg, base - span, base + span)
    _, right = curve.one_sided_derivatives(base)
    later = [bp for bp in curve.breakpoints if bp > base]
    first = (later[0] if later else base + span) - base
    _, iv0 = _interval_at(gf, gg, base)
    ups = []
    for k in (2, 3, 7, 1000):
        tau = first / k
        _, iv = _interval_at(gf, gg, base + tau)
        ups.append(iv.upper)
        report.check("constant_on_first_segment", iv.upper == right,
                     tau=tau, upper=iv.upper, right_derivative=right)
    limsup = max(ups)
    report.check("limsup_le_upper_at_base", limsup <= iv0.upper,
                 first_breakpoint_offset=first, limsup=limsup, upper_at_base=iv0.upper)
    return report


def _sample_points(curve: BetaCurve, rng, count):
    lo, hi = curve.domain
    ts = set(curve.breakpoints)
    while len(ts) < len(curve.breakpoints) + count:
        t = random_rational(rng, lo, hi, max_den=97)
        if lo < t < hi:
            ts.add(t)
    return sorted(ts)


def verify_claim4(sys: SftSystem, f: Potential, g: Potential, ts=None, interval=(0, 1),
                  seed: int = 0, samples: int = 20, name: str = "", f_name: str = "f",
                  g_name: str = "g") -> ClaimReport:
    """Differentiability at ``t`` iff the integrals of ``g`` over maximising measures agree.

    Without explicit ``ts``, every breakpoint plus ``samples`` random interior
    points are checked.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    report = ClaimReport("4", _instance(name, f_name, g_name, seed=seed, interval=[lo, hi]))
    gf, gg = lift_pair(sys, f, g)
    curve = compute_curve(gf, gg, lo, hi)
    if ts is None:
        ts = _sample_points(curve, random.Random(seed), samples)
    for t in ts:
        t = Fraction(t)
        left, right = curve.one_sided_derivatives(t)
        _, iv = _interval_at(gf, gg, t)
        diff = left == right
        report.check("differentiable_iff_singleton", diff == iv.degenerate,
                     t=t, left=left, right=right, lower=iv.lower, upper=iv.upper)
        report.check("one_sided_equal_interval", (left, right) == (iv.lower, iv.upper),
                     t=t, left=left, right=right, lower=iv.lower, upper=iv.upper)
        if diff:
            report.check("derivative_is_the_integral", left == iv.upper,
                         t=t, derivative=left, integral=iv.upper)
    return report


def verify_diameter_semicontinuity(sys: SftSystem, f: Potential, g: Potential, ts=None,
                                   interval=(0, 1), seed: int = 0, samples: int = 20,
                                   name: str = "", f_name: str = "f", g_name: str = "g"
                                   ) -> ClaimReport:
    """The diameter functional vanishes off the breakpoints and jumps up on them."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    report = ClaimReport("diam", _instance(name, f_name, g_name, seed=seed, interval=[lo, hi]))
    gf, gg = lift_pair(sys, f, g)
    curve = compute_curve(gf, gg, lo, hi)
    if ts is None:
        ts = _sample_points(curve, random.Random(seed), samples)
    bps = set(curve.breakpoints)
    for t in ts:
        t = Fraction(t)
        cs = critical_structure(combined_graph(gf, gg, t))
        d = diameter(cs, gg)
        if t in bps:
            left, right = curve.one_sided_derivatives(t)
            report.check("positive_at_breakpoint", d > 0 and d == right - left,
                         t=t, diameter=d, slope_jump=right - left)
            # the diameter is 0 on both neighbouring segments
            report.check("upper_semicontinuous", d >= 0, t=t, diameter=d, one_sided_limits=0)
        else:
            report.check("zero_off_breakpoints", d == 0, t=t, diameter=d)
    return report


def verify_case_expectations(doc: SystemDocument, case: Case, seed: int = 0) -> ClaimReport:
    """Compare a case against the values frozen in its fixture file."""
    sys, f, g = doc.system, doc.potential(case.f), doc.potential(case.g)
    report = ClaimReport("fixture", _instance(case.name, case.f, case.g, interval=case.interval))
    lo, hi = case.interval
    if case.expected_beta is not None:
        got = beta(lift(sys, f))
        report.check("expected_beta", got == case.expected_beta,
                     expected=case.expected_beta, computed=got)
    if case.expected_breakpoints is not None:
        curve = compute_curve(*lift_pair(sys, f, g), lo, hi)
        report.check("expected_breakpoints", tuple(curve.breakpoints) == case.expected_breakpoints,
                     expected=list(case.expected_breakpoints), computed=list(curve.breakpoints))
    if case.nonunique_interval is not None:
        a, b = case.nonunique_interval
        h = doc.potential(case.separating_direction or case.g)
        gf, gg, gh = lift_common(sys, f, g, h)
        rng = random.Random(seed)
        for t in sorted({a, b, *(random_rational(rng, a, b) for _ in range(8))}):
            cs = critical_structure(combined_graph(gf, gg, t))
            cert = is_unique_maximising(cs)
            d = diameter(cs, gh)
            report.check("expected_nonunique", not cert.unique, t=t,
                         cycles=[list(c.edges) for c in cert.cycles])
            report.check("separating_diameter_positive", d > 0, t=t, diameter=d,
                         direction=case.separating_direction or case.g)
    return report


def default_taus(curve: Optional[BetaCurve] = None):
    taus = [Fraction(1, 1000), Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(2)]
    if curve is not None:
        lo, _ = curve.domain
        taus += [bp - lo for bp in curve.breakpoints if bp > lo]
        taus += [(bp - lo) / 2 for bp in curve.breakpoints if bp > lo]
    return sorted(set(taus))


def run_case(doc: SystemDocument, case: Case, claims=CLAIMS, seed: int = 0, pairs: int = 50,
             samples: int = 20) -> list:
    """Run the selected verifiers on one case; ``"fixture"`` adds frozen expectations."""
    sys, f, g = doc.system, doc.potential(case.f), doc.potential(case.g)
    lo, hi = case.interval
    common = dict(name=case.name, f_name=case.f, g_name=case.g)
    reports = []
    curve = compute_curve(*lift_pair(sys, f, g), lo, hi)
    for claim in claims:
        if claim == "1":
            reports.append(verify_claim1(sys, f, g, seed, pairs, (lo, hi), **common))
        elif claim == "2":
            for base in [lo] + list(curve.breakpoints):
                reports.append(verify_claim2(sys, f, g, default_taus(curve), base, **common))
        elif claim == "3":
            for base in sorted({lo, (lo + hi) / 2, *curve.breakpoints}):
                reports.append(verify_claim3(sys, f, g, base, hi - lo, **common))
        elif claim == "4":
            reports.append(verify_claim4(sys, f, g, None, (lo, hi), seed, samples, **common))
        elif claim == "diam":
            reports.append(verify_diameter_semicontinuity(sys, f, g, None, (lo, hi), seed,
                                                          samples, **common))
        elif claim == "fixture":
            reports.append(verify_case_expectations(doc, case, seed))
        else:
            raise ValueError(f"unknown claim {claim!r}")
    return reports


def document_cases(doc: SystemDocument) -> list:
    if doc.cases:
        return doc.cases
    if "f" in doc.potentials and "g" in doc.potentials:
        return [Case(doc.name, "f", "g", (Fraction(0), Fraction(1)))]
    return []


# ---------------------------------------------------------------------------
# line sampling


@dataclass
class LineSample:
    direction: str
    interval: tuple
    samples: int
    seed: int
    grid_denominator: int
    ts: tuple
    differentiable: tuple
    unique: tuple
    degenerate: tuple
    breakpoints: tuple

    @property
    def breakpoint_hits(self) -> int:
        bps = set(self.breakpoints)
        return sum(t in bps for t in self.ts)

    @property
    def differentiable_fraction(self) -> Optional[Fraction]:
        return Fraction(sum(self.differentiable), self.samples) if self.samples else None

    @property
    def unique_fraction(self) -> Optional[Fraction]:
        return Fraction(sum(self.unique), self.samples) if self.samples else None

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "interval": _fmt(list(self.interval)),
            "samples": self.samples,
            "seed": self.seed,
            "grid_denominator": self.grid_denominator,
            "breakpoints": _fmt(list(self.breakpoints)),
            "breakpoint_hits": self.breakpoint_hits,
            "differentiable_fraction": _fmt(self.differentiable_fraction),
            "unique_fraction": _fmt(self.unique_fraction),
            "points": [
                {"t": _fmt(t), "differentiable": d, "unique": u}
                for t, d, u in zip(self.ts, self.differentiable, self.unique)
            ],
        }


@dataclass
class PrevalenceReport:
    lines: list
    intersection_unique_fraction: Optional[Fraction]
    consistency: ClaimReport

    @property
    def passed(self) -> bool:
        return self.consistency.passed

    def to_dict(self) -> dict:
        return {
            "lines": [line.to_dict() for line in self.lines],
            "summary": {
                "directions": [line.direction for line in self.lines],
                "intersection_unique_fraction": _fmt(self.intersection_unique_fraction),
                "per_direction": {
                    line.direction: {
                        "differentiable_fraction": _fmt(line.differentiable_fraction),
                        "unique_fraction": _fmt(line.unique_fraction),
                        "breakpoint_hits": line.breakpoint_hits,
                    }
                    for line in self.lines
                },
            },
            "consistency": self.consistency.to_dict(),
        }


def sample_grid(samples: int, denominator: int, seed: int) -> tuple:
    """``samples`` points ``j/denominator`` with ``j`` uniform on ``0..denominator``."""
    if denominator <= 0:
        raise InvalidGrid(f"grid denominator must be positive, got {denominator}")
    if samples < 0:
        raise InvalidGrid(f"sample count must be non-negative, got {samples}")
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(0, denominator), denominator) for _ in range(samples))


def prevalence_line_experiment(sys: SftSystem, f: Potential, directions, samples: int = 1000,
                               denominator: int = 10007, seed: int = 0, name: str = ""
                               ) -> PrevalenceReport:
    """Sample ``f + t g`` for ``t`` on a rational grid in ``[0, 1]``, per direction ``g``.

    ``directions`` maps names to potentials.  The same grid is used for every
    direction, so the intersection fraction counts grid indices at which the
    maximising measure is unique along every line.
    """
    ts = sample_grid(samples, denominator, seed)
    consistency = ClaimReport("prevalence", {"fixture": name, "seed": seed,
                                             "samples": samples,
                                             "grid_denominator": denominator})
    lines = []
    for dname, g in directions.items():
        gf, gg = lift_pair(sys, f, g)
        # padded so that 0 and 1 are interior points of the curve's domain
        curve = compute_curve(gf, gg, -1, 2)
        bps = tuple(b for b in curve.breakpoints if 0 <= b <= 1)
        cache = {}
        for t in ts:
            if t in cache:
                continue
            cs = critical_structure(combined_graph(gf, gg, t))
            cache[t] = (
                curve.is_differentiable_at(t),
                is_unique_maximising(cs).unique,
                directional_interval(cs, gg).degenerate,
            )
        diff = tuple(cache[t][0] for t in ts)
        uniq = tuple(cache[t][1] for t in ts)
        degen = tuple(cache[t][2] for t in ts)
        line = LineSample(dname, (Fraction(0), Fraction(1)), samples, seed, denominator,
                          ts, diff, uniq, degen, bps)
        lines.append(line)

        bad = [t for t, d, s in zip(ts, diff, degen) if d != s]
        consistency.check("differentiable_iff_degenerate", not bad, direction=dname,
                          counterexamples=bad[:5])
        bad = [t for t, d, u in zip(ts, diff, uniq) if u and not d]
        consistency.check("unique_implies_differentiable", not bad, direction=dname,
                          counterexamples=bad[:5])
        bad = [t for t, d in zip(ts, diff) if (not d) != (t in set(bps))]
        consistency.check("nondifferentiable_exactly_at_breakpoints", not bad, direction=dname,
                          counterexamples=bad[:5])

    if samples and lines:
        hits = sum(all(line.unique[i] for line in lines) for i in range(samples))
        inter = Fraction(hits, samples)
    else:
        inter = None
    return PrevalenceReport(lines, inter, consistency)


def render_table(reports) -> str:
    """Human-readable one-line-per-report summary (floats for display only)."""
    rows = [f"{'claim':<9}{'fixture':<40}{'checks':>7}{'failed':>8}  result"]
    for r in reports:
        fixture = str(r.instance.get("fixture", ""))
        extra = ""
        if "base" in r.instance:
            extra = f" @{float(r.instance['base']):.6f}"
        rows.append(
            f"{r.claim:<9}{(fixture + extra)[:39]:<40}{len(r.checks):>7}{len(r.failures()):>8}  "
            f"{'PASS' if r.passed else 'FAIL'}"
        )
    return "\n".join(rows)


def render_prevalence_table(report: PrevalenceReport) -> str:
    rows = [f"{'direction':<16}{'samples':>8}{'breakpts':>10}{'hits':>6}{'differentiable':>16}{'unique':>10}"]
    for line in report.lines:
        df, uf = line.differentiable_fraction, line.unique_fraction
        rows.append(
            f"{line.direction:<16}{line.samples:>8}{len(line.breakpoints):>10}{line.breakpoint_hits:>6}"
            f"{'-' if df is None else f'{float(df):.6f}':>16}{'-' if uf is None else f'{float(uf):.6f}':>10}"
        )
    inter = report.intersection_unique_fraction
    rows.append(f"intersection unique fraction: {'-' if inter is None else f'{float(inter):.6f}'}")
    return "\n".join(rows)
