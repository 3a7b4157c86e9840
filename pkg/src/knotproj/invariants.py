"""Seifert circles, canonical genus, trivializing number and W."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .core import ProjectionMap, chord_pairs, crossing_of, format_signed, opposite, to_gauss_code


class InconsistentInvariants(AssertionError):
    pass


@dataclass(frozen=True)
class ChordDiagram:
    """``size`` cyclic positions; ``chords[k]`` is the sorted position pair of chord k."""

    size: int
    chords: tuple[tuple[int, int], ...]

    @classmethod
    def from_word(cls, word) -> ChordDiagram:
        return cls(len(word), tuple(chord_pairs(word)))

    def partner(self) -> list[int]:
        p = [0] * self.size
        for a, b in self.chords:
            p[a], p[b] = b, a
        return p


@dataclass(frozen=True)
class InterlacementGraph:
    vertices: int
    edges: frozenset[tuple[int, int]]

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.vertices)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def chord_diagram(m: ProjectionMap) -> ChordDiagram:
    return ChordDiagram.from_word(to_gauss_code(m).word)


def crosses(x: tuple[int, int], y: tuple[int, int]) -> bool:
    return (x[0] < y[0] < x[1]) != (x[0] < y[1] < x[1])


def interlacement(cd: ChordDiagram) -> InterlacementGraph:
    edges = set()
    for i, x in enumerate(cd.chords):
        for j in range(i + 1, len(cd.chords)):
            if crosses(x, cd.chords[j]):
                edges.add((i, j))
    return InterlacementGraph(len(cd.chords), frozenset(edges))


def max_noncrossing_chords(cd: ChordDiagram) -> int:
    """Largest set of pairwise non-crossing chords.

    Interval DP on the circle cut open at position 0: ``best[i][j]`` is the
    answer for chords lying inside positions ``i..j``.
    """
    n = cd.size
    if n == 0:
        return 0
    p = cd.partner()
    best = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row = best[i]
        nxt = best[i + 1]
        q = p[i]
        for j in range(i + 1, n):
            v = nxt[j]
            if i < q <= j:
                w = 1 + (best[i + 1][q - 1] if q - 1 > i else 0) + (best[q + 1][j] if q < j else 0)
                if w > v:
                    v = w
            row[j] = v
    return best[0][n - 1]


def max_noncrossing_bruteforce(cd: ChordDiagram) -> int:
    """Exhaustive subset search; exponential in the chord count."""
    k = len(cd.chords)
    conflict = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and crosses(cd.chords[i], cd.chords[j]):
                conflict[i] |= 1 << j
    best = 0
    for mask in range(1 << k):
        size = bin(mask).count("1")
        if size <= best:
            continue
        rest = mask
        ok = True
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            if conflict[i] & mask:
                ok = False
                break
            rest ^= low
        if ok:
            best = size
    return best


def seifert_circle_count(m: ProjectionMap, basepoint: int = 0, direction: int = 1) -> int:
    """Number of cycles after the oriented smoothing of every crossing.

    The curve is oriented by the traversal from ``basepoint`` in ``direction``;
    the count does not depend on that choice.
    """
    if m.is_trivial:
        return 1
    walk = m.walk(basepoint if direction >= 0 else opposite(basepoint))
    n = len(walk)
    visits: dict[int, list[int]] = {}
    for i, (a, _) in enumerate(walk):
        visits.setdefault(crossing_of(a), []).append(i)
    other = [0] * n
    for i, j in visits.values():
        other[i], other[j] = j, i
    # edge i runs from visit i to visit i+1; smoothing leaves through the other visit
    seen = [False] * n
    count = 0
    for e in range(n):
        if seen[e]:
            continue
        count += 1
        while not seen[e]:
            seen[e] = True
            e = other[(e + 1) % n]
    return count


def canonical_genus(m: ProjectionMap) -> int:
    twice = m.crossings - seifert_circle_count(m) + 1
    if twice % 2:
        raise InconsistentInvariants(f"c - s + 1 = {twice} is odd")
    return twice // 2


def trivializing_number(m: ProjectionMap) -> int:
    return m.crossings - max_noncrossing_chords(chord_diagram(m))


def w_invariant(m: ProjectionMap) -> int:
    return trivializing_number(m) + seifert_circle_count(m) - m.crossings - 1


@dataclass(frozen=True)
class InvariantReport:
    c: int
    s: int
    g: int
    tr: int
    W: int

    def check(self) -> None:
        c, s, g, tr, w = self.c, self.s, self.g, self.tr, self.W
        problems = []
        if w != tr + s - c - 1 or w != tr - 2 * g:
            problems.append("W identity")
        if c - s + 1 != 2 * g or g < 0:
            problems.append("genus")
        if w < 0 or w % 2 or tr % 2:
            problems.append("parity/sign")
        if c >= 1 and (w > c - 1 or tr > c - 1 or s > c + 1):
            problems.append("bounds")
        if problems:
            raise InconsistentInvariants(f"{self}: {', '.join(problems)}")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.c, self.s, self.g, self.tr, self.W)

    def __str__(self) -> str:
        return f"c={self.c} s={self.s} g={self.g} tr={self.tr} W={self.W}"


def invariant_report(m: ProjectionMap, check: bool = True) -> InvariantReport:
    c = m.crossings
    s = seifert_circle_count(m)
    tr = trivializing_number(m)
    twice = c - s + 1
    if twice % 2:
        raise InconsistentInvariants(f"c - s + 1 = {twice} is odd")
    rep = InvariantReport(c, s, twice // 2, tr, tr + s - c - 1)
    if check:
        rep.check()
    return rep


def report_record(m: ProjectionMap, name: str | None = None) -> dict:
    rep = invariant_report(m)
    rec = {}
    if name or m.name:
        rec["name"] = name or m.name
    rec["gauss"] = format_signed(to_gauss_code(m))
    rec.update({k.lower(): v for k, v in asdict(rep).items()})
    return rec


def report_line(m: ProjectionMap, name: str | None = None) -> str:
    return json.dumps(report_record(m, name))


class TrivialProjectionError(ValueError):
    """Primality asked of O, which is neither prime nor composite."""


def is_prime(m: ProjectionMap) -> bool:
    """No two edges whose removal splits the crossings into two nonempty parts."""
    if m.is_trivial:
        raise TrivialProjectionError("the trivial projection is neither prime nor composite")
    c = m.crossings
    edges = [(d, e) for d, e in enumerate(m.pair) if d < e]
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if not _connected_without(c, edges, i, j):
                return False
    return True


def _connected_without(c, edges, i, j) -> bool:
    adj = [[] for _ in range(c)]
    for k, (d, e) in enumerate(edges):
        if k in (i, j):
            continue
        a, b = d >> 2, e >> 2
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == c
