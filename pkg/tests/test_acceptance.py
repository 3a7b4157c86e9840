"""Acceptance gate: twelve criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import random
import time
from collections import Counter

import pytest

from knotproj.cli import run
from knotproj.core import (
    NotRealizable,
    canonical_code,
    connect_sum,
    faces,
    parity_ok,
    parse_word,
    realizations,
    realize_gauss_code,
    to_gauss_code,
)
from knotproj.families import catalog, enumerate_projections, pretzel, rational, sum_power
from knotproj.invariants import (
    ChordDiagram,
    chord_diagram,
    invariant_report,
    max_noncrossing_bruteforce,
    max_noncrossing_chords,
)
from knotproj.moves import (
    MoveKind as K,
    apply_move,
    enumerate_moves,
    moveset,
    trigon_chord_pattern,
    trigon_coherent,
)
from knotproj.search import (
    ProvablyDistinct,
    ReductionCertificate,
    SearchConfig,
    decide,
    random_walk,
    reduce_to_trivial,
    search_composite,
    verify_certificate,
)

RESULTS: dict[str, str] = {}


def corpus(max_c=6):
    return enumerate_projections(max_c)


def ac1():
    t = time.perf_counter()
    got = {}
    for name in ("3_1", "7_4"):
        r = invariant_report(catalog(name))
        got[name] = (r.c, r.s, r.tr, r.W)
    dt = time.perf_counter() - t
    ok = got == {"3_1": (3, 2, 2, 0), "7_4": (7, 6, 4, 2)} and dt < 1
    return ok, f"3_1={got['3_1']} 7_4={got['7_4']} in {dt:.3f}s"


def ac2():
    t = time.perf_counter()
    kinds = moveset("weak123")
    bad = []
    steps = 0
    for i, m in enumerate(corpus(6)):
        w = invariant_report(m).W
        rng = random.Random(1000 + i)
        for _, state in random_walk(m, kinds, 200, m.crossings + 4, rng):
            steps += 1
            if invariant_report(state).W != w:
                bad.append(i)
                break
    dt = time.perf_counter() - t
    return not bad and dt < 120, f"{steps} steps over {len(corpus(6))} curves, {len(bad)} W changes, {dt:.1f}s"


def ac3():
    rng = random.Random(3)
    pool = corpus(6)
    kinds = moveset("weak123")
    expected = {
        "R1": {(0, 1, 1), (0, -1, 1), (0, 1, -1), (0, -1, -1)},
        "R2W": {(2, 0, 2), (-2, 0, 2), (2, 0, -2), (-2, 0, -2)},
        "R3W": {(0, 0, 0)},
    }
    seen, bad = Counter(), []
    while sum(seen.values()) < 3000:
        m = rng.choice(pool)
        mvs = enumerate_moves(m, kinds)
        # give the rarer weak R3 sites a fair share of the sample
        r3 = [mv for mv in mvs if mv.kind == K.R3W]
        mv = rng.choice(r3 if r3 and rng.random() < 0.3 else mvs)
        a, b = invariant_report(m), invariant_report(apply_move(m, mv))
        d = (b.tr - a.tr, b.s - a.s, b.c - a.c)
        group = mv.kind.value.split("_")[0]
        seen[group] += 1
        if d not in expected[group]:
            bad.append((mv, d))
    ok = not bad and all(seen[g] > 0 for g in expected)
    return ok, f"{sum(seen.values())} applications {dict(seen)}, {len(bad)} off-table"


def ac4():
    bad = []
    for m in corpus(6):
        r = invariant_report(m)
        if r.W % 2 or r.W < 0:
            bad.append(m)
        elif r.c >= 1 and (r.W > r.c - 1 or (r.W == r.c - 1 and r.c != 1)):
            bad.append(m)
    return not bad, f"{len(corpus(6))} curves, {len(bad)} violations"


def ac5():
    rng = random.Random(5)
    pool = corpus(6)
    bad = 0
    for _ in range(50):
        a, b = rng.choice(pool), rng.choice(pool)
        ea = rng.choice(a.edges()) if a.crossings else 0
        eb = rng.choice(b.edges()) if b.crossings else 0
        s = connect_sum(a, ea, b, eb, rng.random() < 0.5)
        ra, rb, rs = invariant_report(a), invariant_report(b), invariant_report(s)
        if (rs.W, rs.tr, rs.s) != (ra.W + rb.W, ra.tr + rb.tr, ra.s + rb.s - 1):
            bad += 1
    return bad == 0, f"50 pairs, {bad} failures"


def ac6():
    bad = []
    for a1, a2 in [(4, 4), (6, 4), (6, 6), (8, 6)]:
        r = invariant_report(rational(a1, a2))
        if (r.tr, r.s, r.W) != (a2, a1 + a2 - 1, a2 - 2):
            bad.append(f"p({a1},{a2})")
    for b1, b2, b3 in [(3, 3, 3), (5, 3, 3), (5, 5, 3), (5, 5, 5)]:
        r = invariant_report(pretzel(b1, b2, b3))
        if (r.tr, r.W) != (b2 + b3, b2 + b3 - 2):
            bad.append(f"q({b1},{b2},{b3})")
    return not bad, "8 family members" + (f", mismatched {bad}" if bad else " match")


def _reduce_all(kinds):
    targets = list(corpus(5)) + [catalog("7_4")]
    worst, failures = 0.0, []
    for m in targets:
        t = time.perf_counter()
        cert = reduce_to_trivial(m, kinds, SearchConfig(cap_slack=4, node_budget=1_000_000))
        dt = time.perf_counter() - t
        worst = max(worst, dt)
        ok = (isinstance(cert, ReductionCertificate)
              and verify_certificate(cert, kinds, m.crossings + 4).ok and dt < 60)
        if not ok:
            failures.append(m)
    return failures, worst, len(targets)


def ac7():
    failures, worst, n = _reduce_all("strong123")
    return not failures, f"strong123: {n - len(failures)}/{n} verified, slowest {worst:.2f}s"


def ac8():
    parts, ok = [], True
    for name, kinds in (("{1,s2,w3}", "sw"), ("{1,w2,s3}", "ws")):
        failures, worst, n = _reduce_all(kinds)
        ok = ok and not failures
        parts.append(f"{name}: {n - len(failures)}/{n} slowest {worst:.2f}s")
    return ok, "; ".join(parts)


def ac9():
    t = time.perf_counter()
    powers = [sum_power(catalog("7_4"), i) for i in range(4)]
    bad = []
    for i in range(4):
        for j in range(i + 1, 4):
            res = decide(powers[i], powers[j], "weak123")
            if not (isinstance(res, ProvablyDistinct) and (res.w_a, res.w_b) == (2 * i, 2 * j)):
                bad.append((i, j))
    dt = time.perf_counter() - t
    return not bad and dt < 10, f"6 pairs, {len(bad)} wrong, {dt:.2f}s"


def ac10():
    t = time.perf_counter()
    checked, bad = 0, 0
    for m in corpus(6):
        cd = chord_diagram(m)
        if len(cd.chords) <= 12:
            checked += 1
            bad += max_noncrossing_chords(cd) != max_noncrossing_bruteforce(cd)
    rng = random.Random(10)
    for _ in range(100):
        c = rng.randint(1, 14)
        word = [k for k in range(1, c + 1) for _ in range(2)]
        rng.shuffle(word)
        cd = ChordDiagram.from_word(word)
        checked += 1
        bad += max_noncrossing_chords(cd) != max_noncrossing_bruteforce(cd)
    dt = time.perf_counter() - t
    return bad == 0 and dt < 120, f"{checked} diagrams, {bad} mismatches, {dt:.1f}s"


def ac11():
    problems = Counter()
    trigons = 0
    for m in corpus(6):
        if realize_gauss_code(to_gauss_code(m)).canonical != m.canonical:
            problems["round trip"] += 1
        if m.crossings and realize_gauss_code(parse_word(" ".join(map(str, to_gauss_code(m).word)))).canonical \
                not in _realization_codes(m):
            problems["unsigned realize"] += 1
        if len(faces(m)) != m.crossings + 2:
            problems["euler"] += 1
        for f in m.face_cycles:
            if len(f) == 3 and len({d >> 2 for d in f}) == 3:
                trigons += 1
                if trigon_coherent(m, f[0]) != (trigon_chord_pattern(m, f[0]) in (0, 3)):
                    problems["trigon"] += 1
    if parity_ok((1, 2, 1, 2)):
        problems["parity"] += 1
    try:
        realize_gauss_code(parse_word("1 2 1 2"))
        problems["parity"] += 1
    except NotRealizable:
        pass
    return not problems, f"{len(corpus(6))} curves, {trigons} trigons, problems={dict(problems) or 'none'}"


def _realization_codes(m):
    return {r.canonical for r in realizations(to_gauss_code(m).word)}


def ac12():
    rng = random.Random(12)
    pool = corpus(5)
    w3 = [(m, mv) for m in pool for mv in enumerate_moves(m, {K.R3W})]
    s2 = [(m, mv) for m in pool for mv in enumerate_moves(m, {K.R2S_DELETE})]
    strong_only = {K.R2S_INSERT, K.R2S_DELETE, K.R3S}
    lengths, ok = [], True
    for m, mv in rng.sample(w3, 3):
        cert = search_composite(m, apply_move(m, mv).canonical, strong_only, 4)
        good = cert is not None and len(cert) <= 4 and verify_certificate(cert, strong_only).ok
        ok = ok and good
        lengths.append(len(cert) if cert else None)
    m, mv = rng.choice(s2)
    ws = moveset("ws")
    cert = search_composite(m, apply_move(m, mv).canonical, ws, 4)
    good = cert is not None and len(cert) <= 4 and verify_certificate(cert, ws).ok
    ok = ok and good
    return ok, f"weak R3 via strong moves: lengths {lengths}; strong R2 via {{1,w2,s3}}: {len(cert) if cert else None}"


CRITERIA = [
    ("AC1", "invariants of 3_1 and 7_4", ac1),
    ("AC2", "W constant along weak random walks", ac2),
    ("AC3", "per-move deltas", ac3),
    ("AC4", "W parity and bounds on corpus", ac4),
    ("AC5", "additivity under connected sum", ac5),
    ("AC6", "rational and pretzel family formulas", ac6),
    ("AC7", "strong123 reduces corpus c<=5 and 7_4", ac7),
    ("AC8", "sw and ws reduce the same set", ac8),
    ("AC9", "sum powers of 7_4 separated", ac9),
    ("AC10", "chord DP matches brute force", ac10),
    ("AC11", "structural suites", ac11),
    ("AC12", "composite move sequences", ac12),
]


def evaluate(key, label, fn):
    ok, detail = fn()
    line = f"{key:<5} {'PASS' if ok else 'FAIL'}  {label}: {detail}"
    RESULTS[key] = line
    return ok, line


@pytest.mark.parametrize("key,label,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(key, label, fn):
    ok, line = evaluate(key, label, fn)
    assert ok, line


def test_cli_example(capsys):
    assert run(["invariants", "--gauss", "1 2 3 1 2 3"]) == 0
    assert capsys.readouterr().out.strip() == "c=3 s=2 g=1 tr=2 W=0"
    assert canonical_code(catalog("3_1")) == realize_gauss_code(parse_word("1 2 3 1 2 3")).canonical


if __name__ == "__main__":
    failed = 0
    for key, label, fn in CRITERIA:
        ok, line = evaluate(key, label, fn)
        print(line, flush=True)
        failed += not ok
    raise SystemExit(1 if failed else 0)
