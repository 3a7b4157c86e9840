"""Named curves, the rational and pretzel witness families, and the census."""

from __future__ import annotations

from functools import lru_cache

from .core import (
    TRIVIAL,
    ProjectionMap,
    connect_sum,
    parity_ok,
    parse_word,
    realizations,
    realize_gauss_code,
    relabel,
    validate,
)

# Slots of a tangle crossing, counterclockwise: NE, NW, SW, SE.
NE, NW, SW, SE = 0, 1, 2, 3


class _Tangle:
    """Four-ended tangle built from twists; ports are the strings NW/NE/SW/SE."""

    def __init__(self, arcs):
        self.link: dict = {}
        self.n = 0
        for a, b in arcs:
            self._join(a, b)

    @classmethod
    def zero(cls):
        return cls([("NW", "NE"), ("SW", "SE")])

    @classmethod
    def infinity(cls):
        return cls([("NW", "SW"), ("NE", "SE")])

    def _join(self, a, b):
        self.link[a] = b
        self.link[b] = a

    def _detach(self, p, q):
        a, b = self.link.pop(p), self.link.pop(q)
        if a == q:
            return None
        del self.link[a], self.link[b]
        return a, b

    def _twist(self, p, q, inner_p, inner_q, outer_p, outer_q):
        k = 4 * self.n
        self.n += 1
        ends = self._detach(p, q)
        if ends is None:
            self._join(k + inner_p, k + inner_q)
        else:
            self._join(ends[0], k + inner_p)
            self._join(ends[1], k + inner_q)
        self._join(p, k + outer_p)
        self._join(q, k + outer_q)

    def horizontal(self, n: int):
        for _ in range(n):
            self._twist("NE", "SE", NW, SW, NE, SE)
        return self

    def vertical(self, n: int):
        for _ in range(n):
            self._twist("SW", "SE", NW, NE, SW, SE)
        return self

    def __add__(self, other):
        out = _Tangle([])
        off = 4 * self.n
        out.n = self.n + other.n
        for a, b in self.link.items():
            out.link[a] = b
        for a, b in other.link.items():
            out.link[a + off if isinstance(a, int) else "R" + a] = b + off if isinstance(b, int) else "R" + b
        for p, q in (("NE", "RNW"), ("SE", "RSW")):
            a, b = out.link.pop(p), out.link.pop(q)
            del out.link[a], out.link[b]
            out._join(a, b)
        for p in ("NE", "SE"):
            a = out.link.pop("R" + p)
            del out.link[a]
            out._join(p, a)
        return out

    def numerator(self) -> ProjectionMap:
        return self._close((("NW", "NE"), ("SW", "SE")))

    def denominator(self) -> ProjectionMap:
        return self._close((("NW", "SW"), ("NE", "SE")))

    def _close(self, caps) -> ProjectionMap:
        link = dict(self.link)
        for p, q in caps:
            a, b = link.pop(p), link.pop(q)
            if a == q:
                raise ValueError("closure leaves a crossingless component")
            del link[a], link[b]
            link[a], link[b] = b, a
        pair = tuple(link[d] for d in range(4 * self.n))
        m = ProjectionMap(pair)
        if not validate(m):
            raise ValueError(f"closure is not a single spherical curve: {validate(m).message}")
        return m


def two_bridge(*twists: int) -> ProjectionMap:
    """Standard closure of the rational tangle with alternating twist regions.

    Regions alternate horizontal/vertical starting from the zero tangle; the
    closure caps off the side opposite the last region.
    """
    t = _Tangle.zero()
    for i, n in enumerate(twists):
        (t.horizontal if i % 2 == 0 else t.vertical)(n)
    return t.numerator() if len(twists) % 2 else t.denominator()


def rational(a1: int, a2: int) -> ProjectionMap:
    """p(a1, a2): twist regions of a1 and a2 crossings, both even, a1 >= a2 >= 4."""
    if not (a1 >= a2 >= 4 and a1 % 2 == 0 and a2 % 2 == 0):
        raise ValueError(f"rational family needs even a1 >= a2 >= 4, got ({a1}, {a2})")
    m = two_bridge(a1, a2)
    return ProjectionMap(m.pair, name=f"p({a1},{a2})")


def pretzel(b1: int, b2: int, b3: int) -> ProjectionMap:
    """q(b1, b2, b3): three vertical twist columns, all odd, b1 >= b2 >= b3 >= 3."""
    if not (b1 >= b2 >= b3 >= 3 and b1 % 2 and b2 % 2 and b3 % 2):
        raise ValueError(f"pretzel family needs odd b1 >= b2 >= b3 >= 3, got ({b1}, {b2}, {b3})")
    cols = [_Tangle.infinity().vertical(b) for b in (b1, b2, b3)]
    m = (cols[0] + cols[1] + cols[2]).numerator()
    return ProjectionMap(m.pair, name=f"q({b1},{b2},{b3})")


def kinks(n: int) -> ProjectionMap:
    """Canonical embedding of the word 1 1 2 2 ... n n."""
    if n == 0:
        return TRIVIAL
    return realize_gauss_code(parse_word(" ".join(f"{i} {i}" for i in range(1, n + 1))))


CATALOG_NAMES = ("O", "inf", "3_1", "7_4", "rose3")


def catalog(name: str) -> ProjectionMap:
    if name == "O":
        m = TRIVIAL
    elif name == "inf":
        m = realize_gauss_code(parse_word("1 1"))
    elif name == "3_1":
        m = realize_gauss_code(parse_word("1 2 3 1 2 3"))
    elif name == "7_4":
        m = two_bridge(3, 1, 3)
    elif name == "rose3":
        m = kinks(3)
    else:
        raise KeyError(f"unknown catalog curve {name!r}")
    return ProjectionMap(m.pair, name=name)


def sum_power(base: ProjectionMap, i: int) -> ProjectionMap:
    """``i``-fold connected sum of ``base`` with itself."""
    if i < 0:
        raise ValueError("power must be nonnegative")
    m = TRIVIAL
    for _ in range(i):
        m = connect_sum(m, 0, base, 0)
    return m


# ------------------------------------------------------------ enumeration

MAX_ENUMERATION = 7


def _matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in _matchings(rest):
            yield [(a, points[i])] + m


def _word_from_matching(n, matching):
    w = [0] * n
    for lab, (a, b) in enumerate(matching, 1):
        w[a] = w[b] = lab
    return w


def _word_key(word):
    """Least relabeled form over rotations and reflections."""
    n = len(word)
    best = None
    for seq in (word, word[::-1]):
        for r in range(n):
            cand = relabel(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


def word_classes(c: int) -> list[tuple[int, ...]]:
    """Double-occurrence words with ``c`` letters up to rotation, reflection, relabeling."""
    keys = set()
    n = 2 * c
    for matching in _matchings(list(range(n))):
        w = _word_from_matching(n, matching)
        keys.add(_word_key(w))
    return sorted(keys)


@lru_cache(maxsize=None)
def _enumerate(max_c: int) -> tuple[ProjectionMap, ...]:
    found: dict[bytes, ProjectionMap] = {b"": TRIVIAL}
    for c in range(1, max_c + 1):
        for word in word_classes(c):
            if not parity_ok(word):
                continue
            for m in realizations(word):
                found.setdefault(m.canonical, m)
    return tuple(found[k] for k in sorted(found, key=lambda k: (len(k), k)))


def enumerate_projections(max_c: int) -> list[ProjectionMap]:
    """Every spherical curve with at most ``max_c`` crossings, one per canonical code."""
    if max_c > MAX_ENUMERATION:
        raise ValueError(f"enumeration bound {max_c} exceeds {MAX_ENUMERATION}")
    return list(_enumerate(max_c))


def census(max_c: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for m in enumerate_projections(max_c):
        counts[m.crossings] = counts.get(m.crossings, 0) + 1
    return counts


def corpus_lines(max_c: int) -> list[str]:
    from .invariants import report_line

    return [report_line(m) for m in enumerate_projections(max_c)]


__all__ = [
    "catalog",
    "census",
    "enumerate_projections",
    "kinks",
    "pretzel",
    "rational",
    "sum_power",
    "two_bridge",
    "word_classes",
]
