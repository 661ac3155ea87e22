import random

import pytest

from extschottky.errors import InvalidOrder, NotAdmissible, ParityConstraintViolated, RegimeMismatch
from extschottky.fixed_locus import (
    OrbifoldSignature,
    conformal_locus_report,
    genus_from_orbifold,
    locus_report,
    quotient_orbifold_signatures,
    report_json,
)
from extschottky.signatures import Signature, T8Data, enumerate_signatures, random_odd_signature, rank


def six(*t):
    return Signature.from_six_tuple(t)


def summary(s):
    return [(c.shape, c.count, c.fixed_by) for c in locus_report(s)]


def test_free_action():
    assert locus_report(six(1, 0, 0, 0, 0, 0)) == []
    assert locus_report(Signature(3, a0=2, a1=1)) == []


def test_t6_loops():
    assert summary(six(0, 0, 0, 0, 0, 1)) == [("loop", 2, 2)]


def test_t2_arcs():
    assert summary(Signature(3, a1=1, t2=(3,))) == [("arc", 2, 2)]


def test_t3_rules():
    # order 2 for n odd: n isolated points of tau^n (the T1 factor adds nothing)
    assert summary(Signature(3, a1=1, t3=(2,))) == [("isolated point", 3, 3)]
    # order 2d = 6 for n = 3: d = 3, n/d = 1 arcs and points
    assert summary(Signature(3, t3=(6,))) == [("arc", 1, 2), ("isolated point", 1, 1)]
    # d = 2 for n = 6: n/d = 3 arcs of tau^3 and 3 isolated points of tau^3
    assert summary(Signature(6, a1=1, t3=(4,))) == [("arc", 3, 6), ("isolated point", 3, 3)]


def test_t5_t7_t8_rules():
    assert summary(Signature(3, a1=1, t5=(2,))) == [("isolated point", 6, 3)]
    comps = locus_report(six(0, 0, 0, 0, 1, 0))
    assert comps[0].shape == "loop" and "recorded as loops" in comps[0].note
    assert summary(Signature(3, a1=1, a7=1)) == [("disc", 3, 3)]
    assert summary(Signature(3, t8=(T8Data((3,), 1),))) == [("bordered surface", 3, 3)]


def test_rank2_example_square_fixes_three_arcs():
    comps = locus_report(six(0, 1, 1, 0, 0, 0))
    assert sum(c.count for c in comps if c.shape == "arc" and c.fixed_by == 2) == 3


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        locus_report(six(0, 1, 0, 0, 0, 0))


def test_component_invariants_over_a_sweep():
    for n in (2, 3, 5, 6):
        for s in enumerate_signatures(n, 2):
            try:
                comps = locus_report(s)
            except (NotAdmissible, ParityConstraintViolated):
                continue
            for c in comps:
                assert c.count > 0
                assert (2 * n) % c.fixed_by == 0 and c.fixed_by < 2 * n
            only_free = all(kind in ("T0", "T1") for kind, _ in s.factors())
            assert (comps == []) == only_free


def test_conformal_examples():
    comps, genus = conformal_locus_report(0, [], [4], 4)
    assert [(c.shape, c.count) for c in comps] == [("loop", 1)] and genus == 1
    comps, genus = conformal_locus_report(0, [2, 2], [], 2)
    assert [(c.shape, c.count) for c in comps] == [("arc", 1), ("arc", 1)] and genus == 2
    comps, _ = conformal_locus_report(1, [3], [2], 6)
    assert sum(c.count for c in comps if c.shape == "arc") == 2
    assert sum(c.count for c in comps if c.shape == "loop") == 3
    with pytest.raises(InvalidOrder):
        conformal_locus_report(0, [4], [], 6)


def test_orbifold_signatures():
    full, plus = quotient_orbifold_signatures(Signature(3, a0=1, t2=(3,), t3=(2,)))
    assert str(full) == "(3; -; 3,3)"
    assert str(plus) == "(2; +; 3,3,3,3)"
    full, _ = quotient_orbifold_signatures(Signature(3, a1=1))
    assert str(full) == "(2; -; -)"
    with pytest.raises(RegimeMismatch):
        quotient_orbifold_signatures(six(1, 0, 0, 0, 0, 0))
    assert OrbifoldSignature(1, "+", (5, 1, 3)).orders == (3, 5)


def test_genus_formula_examples():
    assert genus_from_orbifold(Signature(3, a0=1, t2=(3,), t3=(2,))) == 8
    assert genus_from_orbifold(Signature(5, t3=(10,))) == 0
    assert genus_from_orbifold(Signature(3, a0=2, a1=0, t3=(2,))) == rank(Signature(3, a0=2, t3=(2,)))


def test_genus_formula_matches_rank():
    rng = random.Random(11)
    for _ in range(100):
        s = random_odd_signature(rng, rng.choice((3, 5, 7)))
        assert genus_from_orbifold(s) == rank(s)


def test_report_json():
    data = report_json(Signature(3, a0=1, t2=(3,), t3=(2,)))
    assert data["genus"] == 8 and data["orbifold"] == "(3; -; 3,3)"
    assert data["components"][0]["shape"] == "arc"
    assert "genus" not in report_json(six(0, 0, 0, 0, 0, 1))
