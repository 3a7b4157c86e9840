"""Reidemeister moves on flat spherical curves.

Sites are given in darts of the map the move is applied to.  A face is
addressed by any dart on its boundary walk; R1 inserts put a kink into the
face of the given dart, R2 inserts push one boundary edge of a face across
another.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .core import TRIVIAL, ProjectionMap, crossing_of


class MoveKind(str, enum.Enum):
    R1_INSERT = "R1_INSERT"
    R1_DELETE = "R1_DELETE"
    R2S_INSERT = "R2S_INSERT"
    R2S_DELETE = "R2S_DELETE"
    R2W_INSERT = "R2W_INSERT"
    R2W_DELETE = "R2W_DELETE"
    R3S = "R3S"
    R3W = "R3W"

    def __str__(self) -> str:
        return self.value

    @property
    def delta_c(self) -> int:
        return {"R1_INSERT": 1, "R1_DELETE": -1, "R3S": 0, "R3W": 0}.get(self.value, 2 if self.value.endswith("INSERT") else -2)

    @property
    def inverse(self) -> MoveKind:
        v = self.value
        if v.endswith("_INSERT"):
            return MoveKind(v.replace("_INSERT", "_DELETE"))
        if v.endswith("_DELETE"):
            return MoveKind(v.replace("_DELETE", "_INSERT"))
        return self


K = MoveKind

GROUPS = {
    "1": frozenset({K.R1_INSERT, K.R1_DELETE}),
    "s2": frozenset({K.R2S_INSERT, K.R2S_DELETE}),
    "w2": frozenset({K.R2W_INSERT, K.R2W_DELETE}),
    "s3": frozenset({K.R3S}),
    "w3": frozenset({K.R3W}),
}

PRESETS = {
    "all": ("1", "s2", "w2", "s3", "w3"),
    "strong123": ("1", "s2", "s3"),
    "weak123": ("1", "w2", "w3"),
    "sw": ("1", "s2", "w3"),
    "ws": ("1", "w2", "s3"),
}

ALL_KINDS = frozenset(MoveKind)
DELETES_AND_FLIPS = frozenset({K.R1_DELETE, K.R2S_DELETE, K.R2W_DELETE, K.R3S, K.R3W})


def moveset(spec) -> frozenset[MoveKind]:
    """Resolve a preset name, a comma list of groups/kinds, or an iterable."""
    if isinstance(spec, (set, frozenset, list, tuple)):
        out = frozenset(MoveKind(k) for k in spec)
    else:
        spec = spec.strip()
        parts = PRESETS.get(spec, tuple(p.strip() for p in spec.strip("{}").split(",") if p.strip()))
        out = set()
        for p in parts:
            if p in GROUPS:
                out |= GROUPS[p]
            elif p in PRESETS:
                out |= moveset(p)
            else:
                try:
                    out.add(MoveKind(p.upper()))
                except ValueError:
                    raise ValueError(f"unknown move group {p!r}") from None
        out = frozenset(out)
    if not out:
        raise ValueError("empty move set")
    return out


WEAK123 = moveset("weak123")


class MoveError(ValueError):
    """Stale site or a kind that does not match the site's class."""


@dataclass(frozen=True)
class MoveInstance:
    kind: MoveKind
    site: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}@{','.join(map(str, self.site))}"


# ------------------------------------------------------------ classification

def _face(m: ProjectionMap, dart: int) -> tuple[int, ...]:
    if not 0 <= dart < len(m.pair):
        raise MoveError(f"dart {dart} is not in the map")
    return m.face_cycles[m.face_of[dart]]


def _bigon_crossings(m: ProjectionMap, face) -> tuple[int, int]:
    if len(face) != 2:
        raise MoveError(f"face of length {len(face)} is not a bigon")
    a, b = (crossing_of(d) for d in face)
    if a == b:
        raise MoveError("degenerate bigon")
    return a, b


def classify_bigon(m: ProjectionMap, face_dart: int) -> str:
    """``"weak"`` when the two crossings' chords interleave, else ``"strong"``."""
    a, b = _bigon_crossings(m, _face(m, face_dart))
    return "weak" if m.interleaved(a, b) else "strong"


def _trigon_crossings(face) -> tuple[int, int, int]:
    if len(face) != 3:
        raise MoveError(f"face of length {len(face)} is not a trigon")
    ks = tuple(crossing_of(d) for d in face)
    if len(set(ks)) != 3:
        raise MoveError("degenerate trigon")
    return ks


def trigon_coherent(m: ProjectionMap, face_dart: int) -> bool:
    """All three sides run the same way around the face."""
    face = _face(m, face_dart)
    _trigon_crossings(face)
    flags = {m.is_out[d] for d in face}
    return len(flags) == 1


def trigon_chord_pattern(m: ProjectionMap, face_dart: int) -> int:
    """Number of crossing pairs among the trigon's three chords."""
    x, y, z = _trigon_crossings(_face(m, face_dart))
    return m.interleaved(x, y) + m.interleaved(y, z) + m.interleaved(x, z)


def classify_triangle(m: ProjectionMap, face_dart: int) -> str:
    return "strong" if trigon_coherent(m, face_dart) else "weak"


def classify_r2_insert(m: ProjectionMap, dx: int, dy: int) -> str:
    # Same travel direction along the boundary walk gives nested chords.
    return "strong" if m.is_out[dx] == m.is_out[dy] else "weak"


# ------------------------------------------------------------ enumeration

def enumerate_moves(m: ProjectionMap, kinds=ALL_KINDS) -> list[MoveInstance]:
    kinds = frozenset(kinds)
    out: list[MoveInstance] = []
    if m.is_trivial:
        if K.R1_INSERT in kinds:
            out += [MoveInstance(K.R1_INSERT, (0,)), MoveInstance(K.R1_INSERT, (1,))]
        if K.R2S_INSERT in kinds:
            out += [MoveInstance(K.R2S_INSERT, (0,)), MoveInstance(K.R2S_INSERT, (1,))]
        return out
    want_r2i = kinds & {K.R2S_INSERT, K.R2W_INSERT}
    for face in m.face_cycles:
        n = len(face)
        if n == 1 and K.R1_DELETE in kinds:
            out.append(MoveInstance(K.R1_DELETE, face))
        elif n == 2 and kinds & {K.R2S_DELETE, K.R2W_DELETE}:
            a, b = (crossing_of(d) for d in face)
            if a != b:
                kind = K.R2W_DELETE if m.interleaved(a, b) else K.R2S_DELETE
                if kind in kinds:
                    out.append(MoveInstance(kind, face))
        elif n == 3 and kinds & {K.R3S, K.R3W}:
            if len({crossing_of(d) for d in face}) == 3:
                kind = K.R3S if len({m.is_out[d] for d in face}) == 1 else K.R3W
                if kind in kinds:
                    out.append(MoveInstance(kind, face))
        if want_r2i:
            if K.R2S_INSERT in kinds:
                out += [MoveInstance(K.R2S_INSERT, (d, d)) for d in face]
            for i in range(n):
                di = face[i]
                ei = min(di, m.pair[di])
                for j in range(i + 1, n):
                    dj = face[j]
                    if min(dj, m.pair[dj]) == ei:
                        continue
                    kind = K.R2S_INSERT if m.is_out[di] == m.is_out[dj] else K.R2W_INSERT
                    if kind in kinds:
                        out.append(MoveInstance(kind, (di, dj)))
    if K.R1_INSERT in kinds:
        out += [MoveInstance(K.R1_INSERT, (d,)) for d in range(len(m.pair))]
    return out


# ------------------------------------------------------------ surgery

def _compact(pair: dict) -> ProjectionMap:
    """Build a map from a dart dict keyed by (crossing id, slot)."""
    if not pair:
        return TRIVIAL
    ids = sorted({k for k, _ in pair})
    index = {k: i for i, k in enumerate(ids)}
    out = [0] * (4 * len(ids))
    for (k, s), (k2, s2) in pair.items():
        out[4 * index[k] + s] = 4 * index[k2] + s2
    return ProjectionMap(tuple(out))


def _as_dict(m: ProjectionMap) -> dict:
    return {(d >> 2, d & 3): (e >> 2, e & 3) for d, e in enumerate(m.pair)}


def _key(d: int) -> tuple[int, int]:
    return (d >> 2, d & 3)


def _join(pair: dict, a, b) -> None:
    pair[a] = b
    pair[b] = a


def remove_crossings(m: ProjectionMap, doomed) -> ProjectionMap:
    """Delete crossings and splice the curve straight through them."""
    doomed = set(doomed)
    old = _as_dict(m)
    pair = {}
    for a, b in old.items():
        if a[0] in doomed:
            continue
        while b[0] in doomed:
            b = old[(b[0], (b[1] + 2) & 3)]
        pair[a] = b
    return _compact(pair)


def _r1_insert(m: ProjectionMap, d1: int) -> ProjectionMap:
    if m.is_trivial:
        return ProjectionMap((1, 0, 3, 2))
    pair = _as_dict(m)
    n = m.crossings
    a, b = _key(d1), _key(m.pair[d1])
    _join(pair, a, (n, 0))
    _join(pair, (n, 2), (n, 1))
    _join(pair, (n, 3), b)
    return _compact(pair)


# A strong bigon pushed through O: crossings 0 and 1 sharing a bigon face.
_O_BIGON = ProjectionMap((1, 0, 4, 7, 2, 6, 5, 3))


def _r2_insert(m: ProjectionMap, dx: int, dy: int) -> ProjectionMap:
    if m.is_trivial:
        return _O_BIGON
    pair = _as_dict(m)
    n = m.crossings
    A, B = n, n + 1
    if dx == dy:
        # one stretch of the edge pushed across a later stretch of itself
        _join(pair, _key(dx), (A, 0))
        _join(pair, (A, 1), _key(m.pair[dx]))
        _join(pair, (A, 2), (B, 0))
        _join(pair, (B, 2), (B, 1))
        _join(pair, (B, 3), (A, 3))
        return _compact(pair)
    ex, ey = _key(m.pair[dx]), _key(m.pair[dy])
    _join(pair, _key(dx), (A, 0))
    _join(pair, (A, 2), (B, 0))
    _join(pair, (B, 2), ex)
    _join(pair, _key(dy), (B, 1))
    _join(pair, (B, 3), (A, 3))
    _join(pair, (A, 1), ey)
    return _compact(pair)


def _r3_flip(m: ProjectionMap, face) -> ProjectionMap:
    tri = {crossing_of(d) for d in face}
    walk = m.walk(0)
    n = len(walk)
    side_edges = {min(d, m.pair[d]) for d in face}
    strands = []  # (in dart at first crossing, out dart at second, first crossing, second crossing)
    for i in range(n):
        out_d = walk[i][1]
        if min(out_d, m.pair[out_d]) in side_edges:
            j = (i + 1) % n
            strands.append((walk[i][0], walk[j][1], crossing_of(out_d), crossing_of(walk[j][0]), walk[i][0], walk[j][0]))
    assert len(strands) == 3
    # crossing sense between strands j < k: does strand k enter one slot ccw after strand j?
    in_dart: dict[tuple[int, int], int] = {}
    for s_idx, st in enumerate(strands):
        in_dart[(s_idx, st[2])] = st[4]
        in_dart[(s_idx, st[3])] = st[5]
    meeting = {}
    for j in range(3):
        for k in range(j + 1, 3):
            (x,) = {strands[j][2], strands[j][3]} & {strands[k][2], strands[k][3]}
            sense = (in_dart[(k, x)] - in_dart[(j, x)]) & 3 == 1
            meeting[(j, k)] = (x, sense)
    base = max(m.crossings, 1) + 10
    new_id = {jk: base + i for i, jk in enumerate(sorted(meeting))}
    slots: dict[tuple[int, int], tuple[int, int]] = {}  # (strand, new crossing) -> (in slot, out slot)
    for (j, k), (_, sense) in meeting.items():
        x = new_id[(j, k)]
        slots[(j, x)] = (0, 2)
        slots[(k, x)] = (1, 3) if sense else (3, 1)
    old = _as_dict(m)
    replace = {}
    links = []
    for s_idx, (a_in, b_out, first, second, _, _) in enumerate(strands):
        other_first = [jk for jk, v in meeting.items() if v[0] == first and s_idx in jk][0]
        other_second = [jk for jk, v in meeting.items() if v[0] == second and s_idx in jk][0]
        # after the flip the strand meets the second crossing's partner first
        n1, n2 = new_id[other_second], new_id[other_first]
        replace[_key(a_in)] = (n1, slots[(s_idx, n1)][0])
        replace[_key(b_out)] = (n2, slots[(s_idx, n2)][1])
        links.append(((n1, slots[(s_idx, n1)][1]), (n2, slots[(s_idx, n2)][0])))
    pair = {}
    for a, b in old.items():
        if a[0] in tri:
            continue
        pair[a] = replace.get(b, b)
    for old_d, new_d in replace.items():
        partner = old[old_d]
        pair[new_d] = replace.get(partner, partner)
    for a, b in links:
        _join(pair, a, b)
    return _compact(pair)


def apply_move(m: ProjectionMap, move: MoveInstance) -> ProjectionMap:
    kind, site = move.kind, move.site
    if m.is_trivial:
        if kind in (K.R1_INSERT, K.R2S_INSERT) and site in ((0,), (1,)):
            return _r1_insert(m, 0) if kind == K.R1_INSERT else _r2_insert(m, 0, 0)
        raise MoveError(f"{move} is not applicable to the trivial projection")
    for d in site:
        if not 0 <= d < len(m.pair):
            raise MoveError(f"stale site {move}")
    if kind == K.R1_INSERT:
        return _r1_insert(m, site[0])
    if kind in (K.R2S_INSERT, K.R2W_INSERT):
        dx, dy = site
        if dx == dy:
            if kind != K.R2S_INSERT:
                raise MoveError(f"{move}: pushing an edge across itself is strong")
            return _r2_insert(m, dx, dx)
        if m.face_of[dx] != m.face_of[dy] or min(dx, m.pair[dx]) == min(dy, m.pair[dy]):
            raise MoveError(f"stale site {move}")
        face = m.face_cycles[m.face_of[dx]]
        if face.index(dx) > face.index(dy):
            dx, dy = dy, dx
        want = "strong" if kind == K.R2S_INSERT else "weak"
        if classify_r2_insert(m, dx, dy) != want:
            raise MoveError(f"{move}: site is {classify_r2_insert(m, dx, dy)}")
        return _r2_insert(m, dx, dy)
    face = _face(m, site[0])
    if set(face) != set(site):
        raise MoveError(f"stale site {move}")
    if kind == K.R1_DELETE:
        if len(face) != 1:
            raise MoveError(f"{move}: face is not a monogon")
        return remove_crossings(m, {crossing_of(face[0])})
    if kind in (K.R2S_DELETE, K.R2W_DELETE):
        a, b = _bigon_crossings(m, face)
        want = "weak" if kind == K.R2W_DELETE else "strong"
        got = "weak" if m.interleaved(a, b) else "strong"
        if got != want:
            raise MoveError(f"{move}: bigon is {got}")
        return remove_crossings(m, {a, b})
    if kind in (K.R3S, K.R3W):
        _trigon_crossings(face)
        want = "strong" if kind == K.R3S else "weak"
        got = classify_triangle(m, face[0])
        if got != want:
            raise MoveError(f"{move}: trigon is {got}")
        return _r3_flip(m, face)
    raise MoveError(f"unknown move kind {kind}")


def inverse_move(m: ProjectionMap, move: MoveInstance, result: ProjectionMap | None = None) -> MoveInstance:
    """A move on ``apply_move(m, move)`` that leads back to ``m`` up to canonical code."""
    if result is None:
        result = apply_move(m, move)
    found = find_move_to(result, m.canonical, {move.kind.inverse})
    if found is None:
        raise MoveError(f"no inverse found for {move}")
    return found


def find_move_to(m: ProjectionMap, target: bytes, kinds) -> MoveInstance | None:
    for mv in enumerate_moves(m, kinds):
        if apply_move(m, mv).canonical == target:
            return mv
    return None


# ------------------------------------------------------------ tokens

def site_labels(m: ProjectionMap, move: MoveInstance) -> tuple[int, ...]:
    if m.is_trivial:
        return ()
    if move.kind in (K.R1_INSERT, K.R2S_INSERT, K.R2W_INSERT):
        darts = m.face_cycles[m.face_of[move.site[0]]]
    else:
        darts = move.site
    return tuple(sorted({crossing_of(d) for d in darts}))


def move_token(m: ProjectionMap, move: MoveInstance) -> str:
    """``kind@labels#index``: face crossing labels plus a disambiguating index."""
    labels = site_labels(m, move)
    same = [mv for mv in enumerate_moves(m, {move.kind}) if site_labels(m, mv) == labels]
    key = _site_key(m, move)
    idx = next(i for i, mv in enumerate(same) if _site_key(m, mv) == key)
    return f"{move.kind}@{'.'.join(map(str, labels))}#{idx}"


def _site_key(m: ProjectionMap, move: MoveInstance):
    if move.kind in (K.R1_INSERT,) or m.is_trivial:
        return move.site
    if move.kind in (K.R2S_INSERT, K.R2W_INSERT):
        return tuple(sorted(move.site))
    return frozenset(move.site)


_TOKEN = re.compile(r"^([A-Z0-9_]+)@([0-9.]*)#(\d+)$")


def parse_token(m: ProjectionMap, token: str) -> MoveInstance:
    match = _TOKEN.match(token.strip())
    if not match:
        raise ValueError(f"bad move token {token!r}")
    kind = MoveKind(match.group(1))
    labels = tuple(int(x) for x in match.group(2).split(".") if x)
    idx = int(match.group(3))
    same = [mv for mv in enumerate_moves(m, {kind}) if site_labels(m, mv) == labels]
    if idx >= len(same):
        raise MoveError(f"stale site {token}")
    return same[idx]
