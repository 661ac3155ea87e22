"""Acceptance criteria, each checked at its stated tolerance and time budget.

Every test records one ``PASS``/``FAIL`` line, printed in the terminal
summary (and immediately with ``-s``).
"""

import random
import time
from contextlib import contextmanager

from conftest import ACCEPTANCE_LINES

from _transforms import NINE_CLASSES, random_conformal, rng
from extschottky.assembly import nested_discs, verify_ping_pong
from extschottky.census import (
    _max_alpha,
    count_Ng_alpha,
    count_Ng_alpha_bruteforce,
    count_Xg,
    enumerate_Xg,
)
from extschottky.fixed_locus import genus_from_orbifold
from extschottky.fixtures import SIX_TUPLES, realized, reproduce_examples
from extschottky.moebius import classify, conjugate
from extschottky.render import initial_discs, points_outside
from extschottky.signatures import (
    closed_form_rank,
    enumerate_signatures,
    find_epimorphism,
    is_admissible,
    n2_signatures_up_to,
    random_odd_signature,
    rank,
)

IDENTITY_FLOOR = 1e-6
RESIDUAL_TOL = 1e-9


@contextmanager
def criterion(number, title, budget):
    """Time the block; record a line and fail on any problem or overrun."""
    problems = []
    start = time.perf_counter()
    try:
        yield problems
    except Exception as exc:
        problems.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        problems.append(f"took {elapsed:.2f} s, budget {budget:g} s")
    ok = not problems
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({elapsed:.2f} s / {budget:g} s)"
    if not ok:
        line += " :: " + "; ".join(problems[:5]) + (f" (+{len(problems) - 5} more)" if len(problems) > 5 else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_census_ground_truth():
    with criterion(1, "census ground truth", 1.0) as problems:
        if count_Xg(1) != 3:
            problems.append(f"count_Xg(1) = {count_Xg(1)}")
        if count_Xg(2) != 1:
            problems.append(f"count_Xg(2) = {count_Xg(2)}")
        expected = {SIX_TUPLES["K1"], SIX_TUPLES["K2"], SIX_TUPLES["K3"]}
        got = enumerate_Xg(1)
        if len(got) != 3 or set(got) != expected:
            problems.append(f"enumerate_Xg(1) = {got}")


def test_2_closed_form_validation():
    with criterion(2, "N_g closed form vs brute force, g <= 200", 30.0) as problems:
        for g in range(1, 201):
            for alpha in range(_max_alpha(g) + 1):
                cf, bf = count_Ng_alpha(g, alpha), count_Ng_alpha_bruteforce(g, alpha)
                if cf != bf:
                    problems.append(f"g={g} alpha={alpha}: closed form {cf}, brute force {bf}")
        for g in range(1, 201):
            listed = len(enumerate_Xg(g))
            if count_Xg(g) != listed:
                problems.append(f"g={g}: count_Xg {count_Xg(g)}, |enumerate_Xg| {listed}")


def test_3_rank_cross_validation():
    with criterion(3, "rank: Euler characteristic vs closed forms", 30.0) as problems:
        n2 = n2_signatures_up_to(20)
        assert n2
        for s in n2:
            if rank(s) != closed_form_rank(s):
                problems.append(f"{s.six_tuple()}: rank {rank(s)}, closed form {closed_form_rank(s)}")
        r = random.Random(20240611)
        for k in range(500):
            s = random_odd_signature(r, (3, 5, 7)[k % 3])
            values = rank(s), closed_form_rank(s), genus_from_orbifold(s)
            if len(set(values)) != 1:
                problems.append(f"{s}: rank, genus formula, orbifold cover = {values}")


def test_4_admissibility_iff_epimorphism():
    with criterion(4, "admissible <=> epimorphism exists, n <= 6, <= 5 factors", 120.0) as problems:
        total = 0
        for n in range(1, 7):
            for s in enumerate_signatures(n, 5):
                total += 1
                admissible, reason = is_admissible(s)
                found = find_epimorphism(s) is not None
                if admissible != found:
                    problems.append(f"{s}: admissible={admissible} ({reason}), epimorphism={found}")
        assert total > 40000


REQUIRED_CLAIMS = (
    ("K1", "is a glide-reflection", "GlideReflection"),
    ("K3", "pseudo-elliptic of order 4", "PseudoElliptic(4)"),
    ("rank-2", "is an imaginary reflection", "ImaginaryReflection"),
    ("K3", "B^-1 A B A = I", "residual"),
    ("K2", "B A^2 is loxodromic", "Loxodromic"),
)


def test_5_fixtures():
    with criterion(5, "worked examples reproduce", 1.0) as problems:
        rows = reproduce_examples()
        problems += [r.line() for r in rows if not r.ok]
        for example, claim, detail in REQUIRED_CLAIMS:
            hits = [r for r in rows if r.example == example and claim in r.claim and detail in r.detail]
            if not hits:
                problems.append(f"missing row {example}: {claim}")
        (res,) = [r for r in rows if r.example == "K3" and "B^-1 A B A" in r.claim]
        if not float(res.detail.split()[-1]) <= RESIDUAL_TOL:
            problems.append(f"K3 residual {res.detail}")


def test_6_ping_pong_and_freeness():
    with criterion(6, "ping-pong, freeness, limit points, nesting", 120.0) as problems:
        for name in ("K1", "K2", "K3", "rank-2"):
            group = realized(name)
            report = verify_ping_pong(group, 8)
            if not report.passed:
                problems.append(f"{name}: {report.first_failure()}")
            if not report.min_identity_distance > IDENTITY_FLOOR:
                problems.append(f"{name}: min ||W - I|| = {report.min_identity_distance}")
            shallow = nested_discs(group, 6)
            stray = points_outside(shallow.points, initial_discs(group))
            if stray or not shallow.points:
                problems.append(f"{name}: {len(stray)} of {len(shallow.points)} depth-6 points outside")
            if not shallow.passed or shallow.unresolved:
                problems.append(f"{name} depth 6: {shallow.containment_failures} containment, "
                                f"{shallow.diameter_failures} diameter, {shallow.unresolved} unresolved")
            deep = nested_discs(group, 8)
            if not deep.passed:
                problems.append(f"{name} depth 8: {deep.containment_failures} containment, "
                                f"{deep.diameter_failures} diameter failures")


def test_7_classification_invariance():
    with criterion(7, "conformal conjugation preserves class tags", 1.0) as problems:
        r = rng(7)
        for k in range(200):
            g = random_conformal(r)
            for tag, t in NINE_CLASSES.items():
                got = classify(conjugate(g, t)).tag
                if got is not tag:
                    problems.append(f"conjugation {k}: {tag} became {got}")
