"""
Acceptance criteria 1-8. Each test prints one line "criterion N: PASS|FAIL ..."
and the lines are repeated in the pytest terminal summary.
"""
from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time

from platlab import curves, labyrinth as lab, oracle, plat, render
from platlab.plat import PlatSpec

RESULTS: list[str] = []


def report(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def alternating(b, mags):
    h = 2 * b - 4
    it = iter(mags)
    return PlatSpec(b, h, tuple(tuple(plat.row_sign(r) * next(it) for _ in range(plat.row_width(b, r)))
                                for r in range(1, h)))


def region_count(b):
    return sum(plat.row_width(b, r) for r in range(1, 2 * b - 4))


def test_criterion_1_distance_formula():
    cases = {(6, 5): 1, (12, 5): 2, (2, 3): 1, (4, 4): 1, (8, 4): 2}
    got = {hb: plat.bridge_distance(*hb) for hb in cases}
    report(1, "bridge distance formula", got == cases, f"{got}")


def test_criterion_2_component_corollary():
    t0 = time.perf_counter()
    bad = []
    for b in (3, 4, 5, 6):
        for k in range(1, b + 1):
            spec = plat.family_for_k(b, k)
            if not plat.validate(spec).ok or plat.component_count(spec) != k:
                bad.append((b, k))
    rng = random.Random(2024)
    flips = 0
    for _ in range(200):
        b = rng.randint(3, 6)
        spec = plat.family_for_k(b, rng.randint(1, b), rng.randint(2, 5))
        rows = [list(r) for r in spec.twists]
        r = rng.randrange(len(rows))
        c = rng.randrange(len(rows[r]))
        rows[r][c] += 2 if rows[r][c] > 0 else -2
        if plat.component_count(PlatSpec(b, spec.h, tuple(map(tuple, rows)))) != plat.component_count(spec):
            flips += 1
    elapsed = time.perf_counter() - t0
    report(2, "k-component family and parity invariance", not bad and not flips and elapsed < 1,
           f"bad={bad}, flips={flips}, {elapsed:.2f}s")


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    bad = []
    checked = 0
    # every strict grid with entries in {2, 3}, which contains the uniform ones
    for b in (3, 4):
        for mags in itertools.product((2, 3), repeat=region_count(b)):
            spec = alternating(b, mags)
            c = lab.propagate(spec)
            oc = lab.oracle_propagate(spec)
            if c.coords != oracle.extract_coords(oc):
                bad.append((spec.spec_id(), "coords"))
            counts = oracle.line_intersections(oc)
            for i in range(2, b + 1):
                arc = curves.beta(i)
                if curves.intersection_number(c, arc) != counts[arc.piece]:
                    bad.append((spec.spec_id(), str(arc)))
            if lab.chain_recurrence(spec).N != oracle.parallel_family_census(oc, b, spec.h):
                bad.append((spec.spec_id(), "census"))
            checked += 1
    elapsed = time.perf_counter() - t0
    report(3, "engine and oracle agree (coords, beta counts, N-vectors)", not bad and elapsed < 120,
           f"{checked} specs, mismatches={bad}, {elapsed:.2f}s")


def test_criterion_4_n_inequalities():
    t0 = time.perf_counter()
    bad = []
    for b in (3, 4, 5, 6):
        for t in (2, 3):
            spec = plat.uniform_square(b, t)
            if not lab.verify_N_inequalities(lab.chain_recurrence(spec), spec.spec_id()):
                bad.append(spec.spec_id())
    rng = random.Random(4)
    for _ in range(100):
        b = rng.randint(3, 6)
        spec = alternating(b, [rng.randint(2, 5) for _ in range(region_count(b))])
        if not lab.verify_N_inequalities(lab.chain_recurrence(spec), spec.spec_id()):
            bad.append(spec.spec_id())
    elapsed = time.perf_counter() - t0
    report(4, "N-inequalities on uniform and 100 random alternating grids", not bad and elapsed < 10,
           f"failures={bad}, {elapsed:.2f}s")


def test_criterion_5_flower():
    t0 = time.perf_counter()
    got = {}
    for b in (3, 4):
        for t in (2, 3):
            got[b, t] = lab.flower_census(plat.uniform_square(b, t)).kinds()
    ok = all(kinds == lab.flower_expected(2 * b - 4) for (b, _), kinds in got.items())
    elapsed = time.perf_counter() - t0
    report(5, "flower decomposition h-1 / 1 / 1", ok and elapsed < 60, f"{got}, {elapsed:.2f}s")


def test_criterion_6_signatures():
    injective = all(lab.verify_signatures(b).passed for b in range(4, 51))
    anchors = all(
        (lab.track_signature(1, b).first, lab.track_signature(1, b).second) == (3, 2)
        and (lab.track_signature(2, b).first, lab.track_signature(2, b).second) == (3, 4)
        and (lab.track_signature(2 * b - 6, b).first, lab.track_signature(2 * b - 6, b).second) == (b - 1, b)
        for b in range(4, 51))
    report(6, "signature table injective with anchors", injective and anchors,
           f"injective={injective}, anchors={anchors}")


def test_criterion_7_group_action_and_reduction():
    t0 = time.perf_counter()
    rng = random.Random(7)
    bad_laws = 0
    for _ in range(1000):
        n = rng.randint(5, 10)
        c = curves.random_coords(n, rng, bound=8)
        i = rng.randint(1, n - 1)
        j = rng.choice([k for k in range(1, n) if abs(k - i) >= 2])
        if curves.apply_generator(curves.apply_generator(c, i, 1), i, -1) != c:
            bad_laws += 1
        if curves.apply_generator(curves.apply_generator(c, i, -1), i, 1) != c:
            bad_laws += 1
        if (curves.apply_generator(curves.apply_generator(c, i, 1), j, -1)
                != curves.apply_generator(curves.apply_generator(c, j, -1), i, 1)):
            bad_laws += 1
    bad_reduce = 0
    for _ in range(500):
        n = rng.randint(4, 8)
        a = rng.randint(1, n - 2)
        oc = oracle.around(n, a, rng.randint(a + 1, min(n - (a == 1), a + 3)))
        for _ in range(rng.randint(0, 5)):
            oc = oracle.oracle_twist(oc, rng.randint(1, n - 1), rng.choice([-2, -1, 1, 2]))
        for _ in range(rng.randint(0, 4)):
            oc = oracle.insert_zigzag(oc, rng.choice(oc.points))
        trace = []
        r = oracle.reduce(oc, trace)
        steps = [oc.crossing_count()] + trace
        r2 = oracle.reduce(r)
        descent = all(x > y for x, y in zip(steps, steps[1:]))
        idempotent = (r2.line, r2.upper, r2.lower) == (r.line, r.upper, r.lower)
        if not (descent and idempotent and oracle.is_reduced(r)):
            bad_reduce += 1
    elapsed = time.perf_counter() - t0
    report(7, "group-action laws (1000) and reduction (500)", not bad_laws and not bad_reduce and elapsed < 60,
           f"law failures={bad_laws}, reduction failures={bad_reduce}, {elapsed:.2f}s")


SVG_SCRIPT = """
from platlab import plat, render
spec = plat.family_for_k(5, 2)
import sys
sys.stdout.write(render.render(spec, render.RenderPlan("plat")) + render.render(spec, render.RenderPlan("labyrinth")))
"""


def test_criterion_8_determinism():
    specs = [plat.family_for_k(b, k, t) for b in (3, 5, 6) for k in (1, b) for t in (2, 3)]
    specs.append(PlatSpec(4, 3, ((2, -1, 0), (5, -7))))
    roundtrip = all(plat.dumps(plat.loads(plat.dumps(s))) == plat.dumps(s) and plat.loads(plat.dumps(s)) == s
                    for s in specs)
    spec = plat.family_for_k(5, 2)
    local = render.render(spec, render.RenderPlan("plat")) + render.render(spec, render.RenderPlan("labyrinth"))
    runs = {subprocess.run([sys.executable, "-c", SVG_SCRIPT], capture_output=True, check=True).stdout
            for _ in range(2)}
    same = len(runs) == 1 and runs.pop() == local.encode()
    report(8, "serializer round-trip and byte-identical SVG", roundtrip and same,
           f"roundtrip={roundtrip}, svg identical={same}")


if __name__ == "__main__":
    import pytest
    sys.exit(pytest.main([__file__, "-q"]))
