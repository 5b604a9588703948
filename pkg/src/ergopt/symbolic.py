"""One-sided subshifts of finite type and locally constant potentials.

A potential of window ``k`` assigns a rational to every admissible word of
length ``k``.  Lifting uses the ``k``-block graph: vertices are admissible
``(k-1)``-words, edges are admissible ``k``-words, and the edge weight is the
potential's value on the word.  Window-1 potentials are first refined to
window 2, so an edge ``ab`` carries the value at its source symbol ``a``.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegenerateSystem, InadmissiblePotential, InvalidWindow
from .graph import TransitionGraph, format_rational, parse_rational, recurrent_vertices


@dataclass(frozen=True)
class SftSystem:
    """Shift space given by an alphabet and a 0/1 allowed-transition matrix.

    Symbols that lie on no cycle of the transition graph have no bi-infinite
    orbit; they are dropped from :attr:`symbols`.
    """

    alphabet: tuple
    transitions: tuple

    def __post_init__(self):
        n = len(self.alphabet)
        if n == 0:
            raise DegenerateSystem("empty alphabet")
        if len(set(self.alphabet)) != n or any(
            not isinstance(a, str) or len(a) != 1 for a in self.alphabet
        ):
            raise DegenerateSystem("alphabet must be distinct single-character symbols")
        rows = tuple(tuple(int(bool(x)) for x in row) for row in self.transitions)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DegenerateSystem(f"transition matrix must be {n}x{n}")
        object.__setattr__(self, "transitions", rows)
        g = TransitionGraph(n, [(i, j, 0) for i in range(n) for j in range(n) if rows[i][j]])
        alive = recurrent_vertices(g) if g.edge_count else []
        if not alive:
            raise DegenerateSystem("no admissible bi-infinite sequence")
        object.__setattr__(self, "_alive", tuple(alive))

    @property
    def alphabet_size(self) -> int:
        return len(self.alphabet)

    @property
    def symbols(self) -> tuple:
        return tuple(self.alphabet[i] for i in self._alive)

    def allowed(self, a: str, b: str) -> bool:
        i, j = self.alphabet.index(a), self.alphabet.index(b)
        return bool(self.transitions[i][j])

    @classmethod
    def full_shift(cls, alphabet) -> "SftSystem":
        n = len(alphabet)
        return cls(tuple(alphabet), tuple((1,) * n for _ in range(n)))

    @classmethod
    def from_forbidden(cls, alphabet, forbidden_words) -> "SftSystem":
        """Forbidden words of length 2 (or 1, to ban a symbol outright)."""
        alphabet = tuple(alphabet)
        n = len(alphabet)
        rows = [[1] * n for _ in range(n)]
        for word in forbidden_words:
            if any(c not in alphabet for c in word) or not 1 <= len(word) <= 2:
                raise DegenerateSystem(
                    f"forbidden word {word!r} must have length 1 or 2 over the alphabet"
                )
            if len(word) == 1:
                i = alphabet.index(word)
                for j in range(n):
                    rows[i][j] = rows[j][i] = 0
            else:
                rows[alphabet.index(word[0])][alphabet.index(word[1])] = 0
        return cls(alphabet, tuple(tuple(r) for r in rows))

    def admissible_words(self, k: int) -> list:
        """Sorted admissible words of length ``k`` over the surviving symbols."""
        if k < 1:
            raise InvalidWindow(f"window must be positive, got {k}")
        syms = self.symbols
        words = list(syms)
        for _ in range(k - 1):
            words = [w + b for w in words for b in syms if self.allowed(w[-1], b)]
        return sorted(words, key=self._word_key)

    def _word_key(self, word):
        return tuple(self.alphabet.index(c) for c in word)


@dataclass(frozen=True)
class Potential:
    window: int
    values: Mapping[str, Fraction]

    def __post_init__(self):
        if not isinstance(self.window, int) or self.window < 1:
            raise InvalidWindow(f"window must be a positive integer, got {self.window!r}")
        vals = {}
        for word, value in dict(self.values).items():
            if len(word) != self.window:
                raise InadmissiblePotential(f"word {word!r} does not have length {self.window}")
            vals[word] = parse_rational(value)
        object.__setattr__(self, "values", dict(sorted(vals.items())))

    def __hash__(self):
        return hash((self.window, tuple(self.values.items())))

    def check_admissible(self, sys: SftSystem) -> None:
        words = sys.admissible_words(self.window)
        missing = [w for w in words if w not in self.values]
        extra = sorted(set(self.values) - set(words))
        if missing or extra:
            raise InadmissiblePotential(
                f"potential does not match admissible {self.window}-words"
                f" (missing {missing[:5]}, inadmissible {extra[:5]})"
            )

    @classmethod
    def constant(cls, sys: SftSystem, c, window: int = 1) -> "Potential":
        c = parse_rational(c)
        return cls(window, {w: c for w in sys.admissible_words(window)})

    @classmethod
    def indicator(cls, sys: SftSystem, word: str) -> "Potential":
        return cls(len(word), {w: int(w == word) for w in sys.admissible_words(len(word))})


def refine(p: Potential, k_new: int, sys: SftSystem) -> Potential:
    """Rewrite ``p`` on a longer window, each word taking its prefix's value."""
    if not isinstance(k_new, int) or k_new < p.window:
        raise InvalidWindow(f"cannot refine window {p.window} to {k_new}")
    p.check_admissible(sys)
    if k_new == p.window:
        return p
    return Potential(k_new, {w: p.values[w[: p.window]] for w in sys.admissible_words(k_new)})


def combine(f: Potential, g: Potential, t, sys: SftSystem) -> Potential:
    """The potential ``f + t*g`` on the common (larger) window."""
    t = parse_rational(t)
    k = max(f.window, g.window)
    fr, gr = refine(f, k, sys), refine(g, k, sys)
    return Potential(k, {w: fr.values[w] + t * gr.values[w] for w in fr.values})


def sup_norm(p: Potential) -> Fraction:
    return max(abs(v) for v in p.values.values())


def lift(sys: SftSystem, p: Potential) -> TransitionGraph:
    """``k``-block graph of ``sys`` weighted by ``p``; edges are labelled by their word."""
    p = refine(p, max(p.window, 2), sys)
    k = p.window
    verts = sys.admissible_words(k - 1)
    index = {w: i for i, w in enumerate(verts)}
    edges = [
        (index[w[:-1]], index[w[1:]], p.values[w], w) for w in sys.admissible_words(k)
    ]
    return TransitionGraph(len(verts), edges)


def lift_common(sys: SftSystem, *potentials) -> list:
    """Lift several potentials onto one block graph, so edge ids agree."""
    k = max(2, *(p.window for p in potentials))
    return [lift(sys, refine(p, k, sys)) for p in potentials]


def lift_pair(sys: SftSystem, f: Potential, g: Potential):
    gf, gg = lift_common(sys, f, g)
    return gf, gg


def edge_indicator_directions(sys: SftSystem, window: int) -> dict:
    """Indicator potentials of every admissible word of length ``window``."""
    return {f"1[{w}]": Potential.indicator(sys, w) for w in sys.admissible_words(window)}


def potential_to_dict(p: Potential) -> dict:
    return {"window": p.window, "values": {w: format_rational(v) for w, v in p.values.items()}}


def potential_from_dict(data: dict) -> Potential:
    try:
        return Potential(int(data["window"]), dict(data["values"]))
    except (KeyError, TypeError) as exc:
        raise InadmissiblePotential("potential needs 'window' and 'values'") from exc


def periodic_average(p: Potential, period_word: Sequence[str], sys: SftSystem) -> Fraction:
    """Ergodic average of ``p`` along the periodic orbit of ``period_word``."""
    word = "".join(period_word)
    m = len(word)
    k = p.window
    ext = word * (k // m + 2)
    total = Fraction(0)
    for i in range(m):
        block = ext[i : i + k]
        if block not in p.values:
            raise InadmissiblePotential(f"periodic orbit of {word!r} is not admissible")
        total += p.values[block]
    return total / m
