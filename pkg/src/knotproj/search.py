"""Bounded homotopy search with replayable certificates."""

from __future__ import annotations

import heapq
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import ProjectionMap, format_code, from_canonical, parse_code
from .invariants import w_invariant
from .moves import (
    WEAK123,
    MoveError,
    MoveKind,
    apply_move,
    enumerate_moves,
    find_move_to,
    move_token,
    moveset,
    parse_token,
)


@dataclass
class SearchConfig:
    """``crossing_cap`` is absolute; ``cap_slack`` is used when it is None."""

    crossing_cap: int | None = None
    cap_slack: int = 4
    node_budget: int = 1_000_000
    depth_cap: int = 10_000
    seed: int = 0
    workers: int = 1
    time_limit: float | None = None

    def cap_for(self, m: ProjectionMap) -> int:
        cap = self.crossing_cap if self.crossing_cap is not None else m.crossings + self.cap_slack
        if cap < m.crossings:
            raise ValueError(f"crossing cap {cap} is below c = {m.crossings}")
        if self.node_budget <= 0 or self.depth_cap <= 0:
            raise ValueError("budgets must be positive")
        return cap


@dataclass
class ReductionCertificate:
    start: bytes
    moves: list[str]
    end: bytes
    moveset: frozenset[MoveKind] | None = None
    crossing_cap: int | None = None

    def to_json(self) -> str:
        rec = {"start": format_code(self.start), "end": format_code(self.end), "moves": self.moves}
        if self.moveset is not None:
            rec["moveset"] = sorted(k.value for k in self.moveset)
        if self.crossing_cap is not None:
            rec["crossing_cap"] = self.crossing_cap
        return json.dumps(rec, indent=1)

    @classmethod
    def from_json(cls, text: str) -> ReductionCertificate:
        rec = json.loads(text)
        kinds = moveset(rec["moveset"]) if "moveset" in rec else None
        return cls(parse_code(rec["start"]), list(rec["moves"]), parse_code(rec["end"]), kinds, rec.get("crossing_cap"))

    def __len__(self) -> int:
        return len(self.moves)


@dataclass
class Exhausted:
    nodes: int
    frontier: int
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass
class Equivalent:
    certificate: ReductionCertificate


@dataclass
class ProvablyDistinct:
    w_a: int
    w_b: int

    def __str__(self) -> str:
        return f"PROVABLY_DISTINCT W={self.w_a} vs W={self.w_b}"


@dataclass
class Unknown:
    nodes: int
    reason: str = ""


@dataclass
class VerifyResult:
    ok: bool
    failed_step: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


# ------------------------------------------------------------ search core

def _expand(args):
    pair, kinds, cap = args
    m = ProjectionMap(pair)
    out = []
    for mv in enumerate_moves(m, kinds):
        if m.crossings + mv.kind.delta_c > cap:
            continue
        child = apply_move(m, mv)
        out.append((mv, child.pair, child.canonical))
    return out


@dataclass
class _Node:
    map: ProjectionMap
    parent: bytes | None
    move: object
    depth: int


@dataclass
class _Frontier:
    """Best-first frontier ordered by (crossings, depth, canonical code)."""

    root: ProjectionMap
    kinds: frozenset
    cap: int
    depth_cap: int
    rng: random.Random | None = None
    nodes: dict = field(default_factory=dict)
    heap: list = field(default_factory=list)

    def __post_init__(self):
        code = self.root.canonical
        self.nodes[code] = _Node(self.root, None, None, 0)
        heapq.heappush(self.heap, (self.root.crossings, 0, code))

    def pop(self, n: int = 1) -> list[bytes]:
        out = []
        while self.heap and len(out) < n:
            _, depth, code = heapq.heappop(self.heap)
            if depth < self.depth_cap:
                out.append(code)
        return out

    def absorb(self, code: bytes, children) -> list[bytes]:
        parent = self.nodes[code]
        if self.rng is not None:
            children = list(children)
            self.rng.shuffle(children)
        new = []
        for mv, pair, ccode in children:
            if ccode in self.nodes:
                continue
            child = ProjectionMap(pair)
            child.__dict__["canonical"] = ccode
            self.nodes[ccode] = _Node(child, code, mv, parent.depth + 1)
            heapq.heappush(self.heap, (child.crossings, parent.depth + 1, ccode))
            new.append(ccode)
        return new

    def path(self, code: bytes) -> list[tuple[ProjectionMap, object]]:
        """(map before, move) pairs from the root to ``code``."""
        steps = []
        node = self.nodes[code]
        while node.parent is not None:
            prev = self.nodes[node.parent]
            steps.append((prev.map, node.move))
            node = prev
        return steps[::-1]


def _run(frontiers, config: SearchConfig, stop):
    """Alternate expansion over the frontiers until ``stop`` fires or budgets run out."""
    t0 = time.monotonic()
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        turn = 0
        while True:
            total = sum(len(f.nodes) for f in frontiers)
            if total >= config.node_budget:
                return None, "node budget exhausted"
            if config.time_limit is not None and time.monotonic() - t0 > config.time_limit:
                return None, "time limit reached"
            live = [f for f in frontiers if f.heap]
            if not live:
                return None, "state space within caps exhausted"
            f = frontiers[turn % len(frontiers)] if frontiers[turn % len(frontiers)].heap else live[0]
            turn += 1
            batch = f.pop(max(1, 2 * config.workers) if pool else 1)
            if not batch:
                continue
            jobs = [(f.nodes[c].map.pair, f.kinds, f.cap) for c in batch]
            results = pool.map(_expand, jobs) if pool else map(_expand, jobs)
            for code, children in zip(batch, results):
                for new in f.absorb(code, children):
                    hit = stop(f, new)
                    if hit is not None:
                        return hit, ""
    finally:
        if pool:
            pool.shutdown()


def _cert_from_path(start: ProjectionMap, steps, end: bytes, kinds, cap) -> ReductionCertificate:
    tokens = [move_token(m, mv) for m, mv in steps]
    return ReductionCertificate(start.canonical, tokens, end, kinds, cap)


def reduce_to_trivial(m: ProjectionMap, kinds="strong123", config: SearchConfig | None = None):
    """Search for a move sequence from ``m`` to O.

    Crossing caps are deepened from c(m) up to the configured cap; within a
    cap the search is best-first on crossing number, so decreasing moves are
    tried first.
    """
    config = config or SearchConfig()
    kinds = moveset(kinds)
    cap = config.cap_for(m)
    start = from_canonical(m.canonical)
    if start.is_trivial:
        return ReductionCertificate(b"", [], b"", kinds, cap)
    used = 0
    last = None
    for level in range(start.crossings, cap + 1):
        sub = SearchConfig(level, config.cap_slack, config.node_budget - used, config.depth_cap,
                           config.seed, config.workers, config.time_limit)
        rng = random.Random(config.seed) if config.seed else None
        f = _Frontier(start, kinds, level, config.depth_cap, rng)
        hit, reason = _run([f], sub, lambda fr, code: code if code == b"" else None)
        used += len(f.nodes)
        if hit is not None:
            return _cert_from_path(start, f.path(hit), b"", kinds, cap)
        last = Exhausted(used, len(f.heap), reason)
        if reason != "state space within caps exhausted":
            break
    return last


def decide(a: ProjectionMap, b: ProjectionMap, kinds="weak123", config: SearchConfig | None = None):
    """Equivalent with a certificate, ProvablyDistinct by W, or Unknown."""
    config = config or SearchConfig()
    kinds = moveset(kinds)
    if a.canonical == b.canonical:
        return Equivalent(ReductionCertificate(a.canonical, [], b.canonical, kinds, None))
    if kinds <= WEAK123:
        wa, wb = w_invariant(a), w_invariant(b)
        if wa != wb:
            return ProvablyDistinct(wa, wb)
    cap = max(config.cap_for(a), config.cap_for(b))
    sa, sb = from_canonical(a.canonical), from_canonical(b.canonical)
    rng = random.Random(config.seed) if config.seed else None
    fa = _Frontier(sa, kinds, cap, config.depth_cap, rng)
    fb = _Frontier(sb, kinds, cap, config.depth_cap, rng)

    def meet(f, code):
        other = fb if f is fa else fa
        return code if code in other.nodes else None

    hit, reason = _run([fa, fb], config, meet)
    if hit is None:
        return Unknown(len(fa.nodes) + len(fb.nodes), reason)
    steps = fa.path(hit)
    tokens = [move_token(m, mv) for m, mv in steps]
    cur = fa.nodes[hit].map
    back = fb.path(hit)
    for prev, mv in reversed(back):
        inv = find_move_to(cur, prev.canonical, {mv.kind.inverse})
        if inv is None:
            raise MoveError(f"could not invert {mv}")
        tokens.append(move_token(cur, inv))
        cur = apply_move(cur, inv)
    return Equivalent(ReductionCertificate(sa.canonical, tokens, sb.canonical, kinds, cap))


def verify_certificate(cert: ReductionCertificate, kinds=None, crossing_cap: int | None = None) -> VerifyResult:
    """Replay every move with fresh site classification."""
    kinds = moveset(kinds) if kinds is not None else cert.moveset
    cap = crossing_cap if crossing_cap is not None else cert.crossing_cap
    try:
        m = from_canonical(cert.start)
    except ValueError as exc:
        return VerifyResult(False, None, f"bad start code: {exc}")
    for i, tok in enumerate(cert.moves):
        try:
            mv = parse_token(m, tok)
        except ValueError as exc:
            return VerifyResult(False, i, str(exc))
        if kinds is not None and mv.kind not in kinds:
            return VerifyResult(False, i, f"{mv.kind} not in move set")
        try:
            m = apply_move(m, mv)
        except MoveError as exc:
            return VerifyResult(False, i, str(exc))
        if cap is not None and m.crossings > cap:
            return VerifyResult(False, i, f"{m.crossings} crossings exceeds cap {cap}")
    if m.canonical != cert.end:
        return VerifyResult(False, len(cert.moves), "end code mismatch")
    return VerifyResult(True)


def replay(cert: ReductionCertificate) -> list[ProjectionMap]:
    """All states along a certificate, start included."""
    m = from_canonical(cert.start)
    states = [m]
    for tok in cert.moves:
        m = apply_move(m, parse_token(m, tok))
        states.append(m)
    return states


def search_composite(m: ProjectionMap, target: bytes, kinds, max_len: int = 4):
    """Shortest sequence (length <= max_len) over ``kinds`` from ``m`` to ``target``.

    Meet-in-the-middle over breadth-first layers; the kinds must be closed
    under inversion.  Returns a certificate or None.
    """
    kinds = moveset(kinds)
    start = from_canonical(m.canonical)
    if start.canonical == target:
        return ReductionCertificate(start.canonical, [], target, kinds)
    end = from_canonical(target)
    fwd = {start.canonical: (None, None, start)}
    bwd = {end.canonical: (None, None, end)}
    layers_f, layers_b = [start.canonical], [end.canonical]
    for step in range(max_len):
        grow_fwd = len(fwd) <= len(bwd)
        seen, layer = (fwd, layers_f) if grow_fwd else (bwd, layers_b)
        nxt = []
        meet = None
        for code in layer:
            cur = seen[code][2]
            for mv in enumerate_moves(cur, kinds):
                child = apply_move(cur, mv)
                cc = child.canonical
                if cc in seen:
                    continue
                seen[cc] = (code, mv, child)
                nxt.append(cc)
                if cc in (bwd if grow_fwd else fwd):
                    meet = cc
                    break
            if meet:
                break
        if grow_fwd:
            layers_f = nxt
        else:
            layers_b = nxt
        if meet:
            return _join_paths(start, fwd, bwd, meet, end.canonical, kinds)
    return None


def _join_paths(start, fwd, bwd, meet, end, kinds):
    chain = []
    code = meet
    while fwd[code][0] is not None:
        parent, mv, _ = fwd[code]
        chain.append((fwd[parent][2], mv))
        code = parent
    chain.reverse()
    tokens = [move_token(m, mv) for m, mv in chain]
    cur = fwd[meet][2]
    code = meet
    while bwd[code][0] is not None:
        parent, mv, _ = bwd[code]
        inv = find_move_to(cur, parent, {mv.kind.inverse})
        tokens.append(move_token(cur, inv))
        cur = apply_move(cur, inv)
        code = parent
    return ReductionCertificate(start.canonical, tokens, end, kinds)


def random_walk(m: ProjectionMap, kinds, steps: int, cap: int, rng: random.Random):
    """Yield (move, state) for ``steps`` uniformly chosen moves within the cap."""
    kinds = moveset(kinds)
    cur = m
    for _ in range(steps):
        options = [mv for mv in enumerate_moves(cur, kinds) if cur.crossings + mv.kind.delta_c <= cap]
        if not options:
            return
        mv = rng.choice(options)
        cur = apply_move(cur, mv)
        yield mv, cur
