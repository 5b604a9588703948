"""Reading and writing the JSON documents consumed by the command line.

Two input kinds are recognised:

* graph documents: ``{"vertex_count": n, "edges": [[s, t, "num/den"], ...]}``
* system documents: ``alphabet``, either ``forbidden_words`` or
  ``transitions``, a ``potentials`` table and optional ``cases``.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import ErgoptError
from .graph import TransitionGraph, format_rational, parse_rational
from .symbolic import Potential, SftSystem, potential_from_dict, potential_to_dict


@dataclass
class Case:
    """One (f, g, interval) instance plus optional frozen expectations."""

    name: str
    f: str
    g: str
    interval: tuple
    expected_beta: Optional[Fraction] = None
    expected_breakpoints: Optional[tuple] = None
    nonunique_interval: Optional[tuple] = None
    separating_direction: Optional[str] = None


@dataclass
class SystemDocument:
    name: str
    system: SftSystem
    potentials: dict
    cases: list = field(default_factory=list)

    def potential(self, name: str) -> Potential:
        try:
            return self.potentials[name]
        except KeyError:
            raise ErgoptError(
                f"{self.name}: no potential named {name!r} (have {sorted(self.potentials)})"
            ) from None


def _rationals(values):
    return tuple(parse_rational(v) for v in values)


def parse_system_document(data: dict, name: str = "<document>") -> SystemDocument:
    if not isinstance(data, dict) or "alphabet" not in data:
        raise ErgoptError(f"{name}: system document needs an 'alphabet'")
    alphabet = tuple(data["alphabet"])
    if "transitions" in data:
        system = SftSystem(alphabet, tuple(tuple(r) for r in data["transitions"]))
    else:
        system = SftSystem.from_forbidden(alphabet, data.get("forbidden_words", []))
    potentials = {k: potential_from_dict(v) for k, v in data.get("potentials", {}).items()}
    for pname, p in potentials.items():
        p.check_admissible(system)
    cases = []
    for i, raw in enumerate(data.get("cases", [])):
        interval = _rationals(raw.get("interval", ["0", "1"]))
        if len(interval) != 2:
            raise ErgoptError(f"{name}: case {i} interval must have two endpoints")
        case = Case(
            name=raw.get("name", f"{name}#{i}"),
            f=raw.get("f", "f"),
            g=raw.get("g", "g"),
            interval=interval,
            expected_beta=(
                parse_rational(raw["expected_beta"]) if "expected_beta" in raw else None
            ),
            expected_breakpoints=(
                _rationals(raw["expected_breakpoints"]) if "expected_breakpoints" in raw else None
            ),
            nonunique_interval=(
                _rationals(raw["nonunique_interval"]) if "nonunique_interval" in raw else None
            ),
            separating_direction=raw.get("separating_direction"),
        )
        for pname in (case.f, case.g, case.separating_direction):
            if pname is not None and pname not in potentials:
                raise ErgoptError(f"{name}: case {case.name} names unknown potential {pname!r}")
        cases.append(case)
    return SystemDocument(name, system, potentials, cases)


def system_document_to_dict(doc: SystemDocument) -> dict:
    sys = doc.system
    out = {
        "alphabet": list(sys.alphabet),
        "transitions": [list(r) for r in sys.transitions],
        "potentials": {k: potential_to_dict(p) for k, p in sorted(doc.potentials.items())},
    }
    cases = []
    for c in doc.cases:
        row = {"name": c.name, "f": c.f, "g": c.g, "interval": [format_rational(x) for x in c.interval]}
        if c.expected_beta is not None:
            row["expected_beta"] = format_rational(c.expected_beta)
        if c.expected_breakpoints is not None:
            row["expected_breakpoints"] = [format_rational(x) for x in c.expected_breakpoints]
        if c.nonunique_interval is not None:
            row["nonunique_interval"] = [format_rational(x) for x in c.nonunique_interval]
        if c.separating_direction is not None:
            row["separating_direction"] = c.separating_direction
        cases.append(row)
    if cases:
        out["cases"] = cases
    return out


def load_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ErgoptError(f"cannot read {path}: {exc}") from exc


def load_document(path):
    """Return a :class:`TransitionGraph` or a :class:`SystemDocument`."""
    data = load_json(path)
    if isinstance(data, dict) and "vertex_count" in data:
        return TransitionGraph.from_dict(data)
    return parse_system_document(data, Path(path).stem)


def dumps(data) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def bundled_fixture_paths() -> list:
    root = Path(__file__).parent / "fixtures"
    return sorted(root.glob("*.json"))


def load_bundled_fixtures() -> list:
    return [load_document(p) for p in bundled_fixture_paths()]
