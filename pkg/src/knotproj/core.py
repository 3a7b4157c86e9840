"""Embedded knot projections on the sphere.

A projection with ``c`` flat crossings is stored as a fixed-point-free
involution on ``4c`` darts.  Dart ``4k + s`` is slot ``s`` of crossing ``k``;
slots are numbered counterclockwise and the curve passes straight through a
crossing, entering at slot ``s`` and leaving at slot ``s + 2 (mod 4)``.  The
empty map is the trivial projection O.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property


class ParseError(ValueError):
    """Malformed textual or structured input."""


class NotRealizable(ValueError):
    """A Gauss word with no embedding as a single curve on the sphere."""


def crossing_of(d: int) -> int:
    return d >> 2


def slot_of(d: int) -> int:
    return d & 3


def opposite(d: int) -> int:
    return (d & ~3) | ((d + 2) & 3)


def rotate(d: int, k: int = 1) -> int:
    """Dart ``k`` steps counterclockwise from ``d`` at the same crossing."""
    return (d & ~3) | ((d + k) & 3)


@dataclass(frozen=True)
class ProjectionMap:
    pair: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def crossings(self) -> int:
        return len(self.pair) // 4

    @property
    def is_trivial(self) -> bool:
        return not self.pair

    def edges(self) -> list[int]:
        """Edge identifiers: the smaller dart of each edge (``[0]`` for O)."""
        if self.is_trivial:
            return [0]
        return [d for d, e in enumerate(self.pair) if d < e]

    def walk(self, start: int = 0) -> list[tuple[int, int]]:
        """Curve traversal leaving along ``start``, as (in dart, out dart) visits."""
        if self.is_trivial:
            return []
        pair = self.pair
        visits = [(opposite(start), start)]
        d_in = pair[start]
        limit = len(pair)
        while True:
            d_out = opposite(d_in)
            if d_out == start:
                return visits
            visits.append((d_in, d_out))
            if len(visits) > limit:
                raise RuntimeError("traversal does not close")
            d_in = pair[d_out]

    @cached_property
    def _walk0(self) -> list[tuple[int, int]]:
        return self.walk(0)

    @cached_property
    def visit_of(self) -> dict[int, int]:
        """Dart -> index of the visit (in the base traversal) using it."""
        out = {}
        for i, (a, b) in enumerate(self._walk0):
            out[a] = i
            out[b] = i
        return out

    @cached_property
    def is_out(self) -> tuple[bool, ...]:
        """Whether the base traversal leaves its crossing through each dart."""
        flags = [False] * len(self.pair)
        for _, b in self._walk0:
            flags[b] = True
        return tuple(flags)

    @cached_property
    def chord_positions(self) -> dict[int, tuple[int, int]]:
        """Crossing -> its two positions along the base traversal."""
        pos: dict[int, list[int]] = {}
        for i, (a, _) in enumerate(self._walk0):
            pos.setdefault(crossing_of(a), []).append(i)
        return {k: (v[0], v[1]) for k, v in pos.items()}

    def interleaved(self, a: int, b: int) -> bool:
        a1, a2 = self.chord_positions[a]
        b1, b2 = self.chord_positions[b]
        return (a1 < b1 < a2) != (a1 < b2 < a2)

    @cached_property
    def face_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_faces(self.pair))

    @cached_property
    def face_of(self) -> dict[int, int]:
        return {d: i for i, f in enumerate(self.face_cycles) for d in f}

    @cached_property
    def canonical(self) -> bytes:
        return _canonical(self)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<ProjectionMap{label} c={self.crossings} {format_signed(to_gauss_code(self))}>"


TRIVIAL = ProjectionMap(())


def _faces(pair) -> list[tuple[int, ...]]:
    seen = [False] * len(pair)
    faces = []
    for d0 in range(len(pair)):
        if seen[d0]:
            continue
        cyc = []
        d = d0
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = rotate(pair[d])
        faces.append(tuple(cyc))
    return faces


def faces(m: ProjectionMap) -> list[tuple[int, ...]]:
    """Face boundary cycles as dart sequences.

    Each listed dart is where the boundary walk departs along an edge.  The
    trivial projection has two faces, returned as two empty cycles.
    """
    if m.is_trivial:
        return [(), ()]
    return list(m.face_cycles)


@dataclass
class ValidationReport:
    ok: bool
    checks: dict[str, bool]
    message: str = ""
    faces: int = 0

    def __bool__(self) -> bool:
        return self.ok


def validate(m: ProjectionMap) -> ValidationReport:
    checks = {"four_regular": True, "involution": True, "single_curve": True, "euler": True}
    n = len(m.pair)
    if n == 0:
        return ValidationReport(True, checks, faces=2)
    if n % 4:
        checks["four_regular"] = False
        return ValidationReport(False, checks, f"{n} darts is not a multiple of 4")
    for d, e in enumerate(m.pair):
        if not 0 <= e < n or e == d or m.pair[e] != d:
            checks["involution"] = False
            return ValidationReport(False, checks, f"involution violated at dart {d}")
    seen = 0
    d = 0
    while True:
        seen += 2
        d = opposite(m.pair[d])
        if d == 0 or seen > n:
            break
    if seen != n:
        checks["single_curve"] = False
        return ValidationReport(False, checks, f"traversal from dart 0 covers {seen} of {n} darts")
    nf = len(_faces(m.pair))
    c = n // 4
    if nf != c + 2:
        checks["euler"] = False
        return ValidationReport(False, checks, f"{nf} faces, expected {c + 2}", faces=nf)
    return ValidationReport(True, checks, faces=nf)


# ---------------------------------------------------------------- Gauss codes

@dataclass(frozen=True)
class GaussCode:
    """Double-occurrence word; ``signs[k]`` belongs to label ``k``."""

    word: tuple[int, ...]
    signs: dict[int, int] | None = field(default=None, hash=False)

    @property
    def crossings(self) -> int:
        return len(self.word) // 2

    def unsigned(self) -> GaussCode:
        return GaussCode(self.word)


def _visit_signs(walk) -> tuple[list[int], dict[int, int]]:
    labels: dict[int, int] = {}
    first_in: dict[int, int] = {}
    word = []
    signs = {}
    for a, _ in walk:
        k = crossing_of(a)
        if k not in labels:
            labels[k] = len(labels) + 1
            first_in[k] = a
        else:
            signs[labels[k]] = 1 if (a - first_in[k]) & 3 == 1 else -1
        word.append(labels[k])
    return word, signs


def to_gauss_code(m: ProjectionMap, basepoint: int = 0, direction: int = 1) -> GaussCode:
    """Signed Gauss code read from ``basepoint``.

    Direction ``+1`` departs along the basepoint dart; ``-1`` traverses the
    curve the other way, departing along the dart opposite the basepoint.
    """
    if m.is_trivial:
        return GaussCode((), {})
    start = basepoint if direction >= 0 else opposite(basepoint)
    word, signs = _visit_signs(m.walk(start))
    return GaussCode(tuple(word), signs)


def from_signed(code: GaussCode) -> ProjectionMap:
    """Build the map of a signed code; raises NotRealizable if not spherical."""
    word = code.word
    if not word:
        return TRIVIAL
    _check_double_occurrence(word)
    if code.signs is None:
        raise ParseError("signed realization needs signs")
    index: dict[int, int] = {}
    ins, outs = [], []
    for lab in word:
        if lab not in index:
            k = index[lab] = len(index)
            ins.append(4 * k)
            outs.append(4 * k + 2)
        else:
            k = index[lab]
            if code.signs[lab] > 0:
                ins.append(4 * k + 1)
                outs.append(4 * k + 3)
            else:
                ins.append(4 * k + 3)
                outs.append(4 * k + 1)
    pair = [0] * (4 * len(index))
    n = len(word)
    for i in range(n):
        a, b = outs[i], ins[(i + 1) % n]
        pair[a] = b
        pair[b] = a
    m = ProjectionMap(tuple(pair))
    if len(m.face_cycles) != len(index) + 2:
        raise NotRealizable("not realizable on the sphere")
    return m


def _check_double_occurrence(word) -> None:
    counts: dict[int, int] = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
    bad = [x for x, n in counts.items() if n != 2]
    if bad:
        raise ParseError(f"label {bad[0]} occurs {counts[bad[0]]} times, expected 2")


def relabel(word) -> tuple[int, ...]:
    """Relabel a double-occurrence word by order of first appearance."""
    index: dict = {}
    return tuple(index.setdefault(x, len(index) + 1) for x in word)


def chord_pairs(word) -> list[tuple[int, int]]:
    first: dict = {}
    out = []
    for i, x in enumerate(word):
        if x in first:
            out.append((first[x], i))
        else:
            first[x] = i
    return out


def parity_ok(word) -> bool:
    """Every chord of a spherical curve crosses an even number of chords."""
    chords = chord_pairs(word)
    for i, (a1, a2) in enumerate(chords):
        n = 0
        for j, (b1, b2) in enumerate(chords):
            if i != j and (a1 < b1 < a2) != (a1 < b2 < a2):
                n += 1
        if n % 2:
            return False
    return True


def realizations(word) -> list[ProjectionMap]:
    """All spherical embeddings of an unsigned word, one per canonical code."""
    word = relabel(word)
    if not word:
        return [TRIVIAL]
    _check_double_occurrence(word)
    c = len(word) // 2
    if not parity_ok(word):
        return []
    found: dict[bytes, ProjectionMap] = {}
    # label 1 fixed to + : the mirror of each embedding is found via canonical code
    for rest in itertools.product((1, -1), repeat=c - 1):
        signs = {1: 1, **{i + 2: s for i, s in enumerate(rest)}}
        try:
            m = from_signed(GaussCode(word, signs))
        except NotRealizable:
            continue
        found.setdefault(m.canonical, m)
    return [found[k] for k in sorted(found)]


def realize_gauss_code(code: GaussCode) -> ProjectionMap:
    """Realize a Gauss code; unsigned codes get the canonical-minimum embedding."""
    if code.signs is not None and code.word:
        return from_signed(code)
    found = realizations(code.word)
    if not found:
        raise NotRealizable("not realizable on the sphere")
    return found[0]


# ------------------------------------------------------------ canonical codes

def _encode(walk, mirror: bool) -> bytes:
    word, signs = _visit_signs(walk)
    flip = -1 if mirror else 1
    return bytes(2 * lab + (signs[lab] * flip < 0) for lab in word)


def _canonical(m: ProjectionMap) -> bytes:
    if m.is_trivial:
        return b""
    best = None
    for d in range(len(m.pair)):
        w = m.walk(d)
        for mirror in (False, True):
            code = _encode(w, mirror)
            if best is None or code < best:
                best = code
    return best


def canonical_code(m: ProjectionMap) -> bytes:
    """Lexicographically least signed traversal code over basepoints,
    directions and mirror images.  O maps to ``b""``."""
    return m.canonical


def code_to_gauss(code: bytes) -> GaussCode:
    word = tuple(b >> 1 for b in code)
    signs = {b >> 1: (-1 if b & 1 else 1) for b in code}
    return GaussCode(word, signs)


def from_canonical(code: bytes) -> ProjectionMap:
    return from_signed(code_to_gauss(code))


def reflect(m: ProjectionMap) -> ProjectionMap:
    """Mirror image: reverse the rotation at every crossing."""
    pair = [0] * len(m.pair)
    mir = [(d & ~3) | ((-d) & 3) for d in range(len(m.pair))]
    for d, e in enumerate(m.pair):
        pair[mir[d]] = mir[e]
    return ProjectionMap(tuple(pair))


def relabel_map(m: ProjectionMap, perm: list[int], shifts: list[int]) -> ProjectionMap:
    """Renumber crossing ``k`` as ``perm[k]`` and rotate its slots by ``shifts[k]``."""
    def f(d):
        return 4 * perm[d >> 2] + (((d & 3) + shifts[d >> 2]) & 3)

    pair = [0] * len(m.pair)
    for d, e in enumerate(m.pair):
        pair[f(d)] = f(e)
    return ProjectionMap(tuple(pair))


# ------------------------------------------------------------ connected sum

def connect_sum(a: ProjectionMap, edge_a: int, b: ProjectionMap, edge_b: int, flip: bool = False) -> ProjectionMap:
    """Splice ``a`` and ``b`` at interior points of the given edges.

    Edges are named by either of their darts; ``flip`` selects the second
    of the two gluing orientations.
    """
    for m, e in ((a, edge_a), (b, edge_b)):
        if m.is_trivial:
            if e != 0:
                raise ValueError(f"invalid edge {e} for the trivial projection")
        elif not 0 <= e < len(m.pair):
            raise ValueError(f"invalid edge {e}")
    if a.is_trivial:
        return ProjectionMap(b.pair)
    if b.is_trivial:
        return ProjectionMap(a.pair)
    off = len(a.pair)
    pair = list(a.pair) + [e + off for e in b.pair]
    d1, d2 = edge_a, a.pair[edge_a]
    e1, e2 = edge_b + off, b.pair[edge_b] + off
    if flip:
        e1, e2 = e2, e1
    pair[d1], pair[e1] = e1, d1
    pair[d2], pair[e2] = e2, d2
    return ProjectionMap(tuple(pair))


# ------------------------------------------------------------ text formats

def parse_word(text: str) -> GaussCode:
    """Parse ``"1 2 3 1 2 3"`` or the signed form ``"1+ 2+ 3+ 1+ 2+ 3+"``."""
    tokens = text.replace(",", " ").split()
    if not tokens or tokens in (["O"], ["o"]):
        return GaussCode((), {})
    word = []
    signs: dict[int, int] = {}
    signed = None
    for tok in tokens:
        sign = 0
        if tok[-1] in "+-":
            sign = 1 if tok[-1] == "+" else -1
            tok = tok[:-1]
        if signed is None:
            signed = sign != 0
        elif signed != (sign != 0):
            raise ParseError("mixed signed and unsigned labels")
        try:
            lab = int(tok)
        except ValueError:
            raise ParseError(f"bad label {tok!r}") from None
        if lab < 1:
            raise ParseError(f"labels must be positive, got {lab}")
        if sign:
            if signs.get(lab, sign) != sign:
                raise ParseError(f"label {lab} carries both signs")
            signs[lab] = sign
        word.append(lab)
    _check_double_occurrence(word)
    return GaussCode(tuple(word), signs if signed else None)


def format_word(code: GaussCode) -> str:
    return " ".join(str(x) for x in code.word)


def format_signed(code: GaussCode) -> str:
    if not code.word:
        return "O"
    return " ".join(f"{x}{'+' if code.signs[x] > 0 else '-'}" for x in code.word)


def format_code(code: bytes) -> str:
    return format_signed(code_to_gauss(code))


def parse_code(text: str) -> bytes:
    g = parse_word(text)
    if g.word and g.signs is None:
        raise ParseError("canonical codes are signed words")
    return canonical_code(realize_gauss_code(g)) if g.word else b""


def map_to_record(m: ProjectionMap, name: str | None = None) -> dict:
    rec = {"crossings": m.crossings, "edge_pairing": list(m.pair)}
    if name or m.name:
        rec["name"] = name or m.name
    return rec


def map_from_record(rec: dict) -> ProjectionMap:
    try:
        pair = tuple(int(x) for x in rec["edge_pairing"])
        c = int(rec.get("crossings", len(pair) // 4))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad map record: {exc}") from None
    if len(pair) != 4 * c:
        raise ParseError(f"edge_pairing has {len(pair)} darts, expected {4 * c}")
    m = ProjectionMap(pair, name=rec.get("name"))
    report = validate(m)
    if not report.ok:
        if not report.checks["euler"]:
            raise NotRealizable(report.message)
        raise ParseError(report.message)
    return m
