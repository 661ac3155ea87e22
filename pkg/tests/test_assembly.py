import itertools

import numpy as np
import pytest

from extschottky.assembly import (
    KINDS,
    GroupAssembly,
    count_reduced_words,
    enumerate_reduced_words,
    free_product,
    hnn_extend,
    make_basic,
    nested_discs,
    sample_limit_set,
    validate_generators,
    verify_ping_pong,
)
from extschottky.assembly.basic import BasicGroupSpec, Pairing, relation_residuals
from extschottky.assembly.words import identity_distance, walk_words
from extschottky.circles import INF, GeneralizedCircle, is_inf
from extschottky.errors import (
    DepthExplosion,
    EmptyFactorList,
    HostOverlap,
    InvalidOrder,
    PairingGeometryFailure,
    ParityViolation,
    PingPongFailure,
    RelationFailure,
    WrongTransformClass,
)
from extschottky.moebius import (
    ExtendedMoebius,
    Tag,
    classify,
    compose,
    dilation,
    evaluate,
    inverse,
    power,
)


def disc(c, r, interior=True):
    return GeneralizedCircle.from_center_radius(c, r, interior)


# basic groups


def test_t1_model_is_lambda_conj():
    spec = make_basic("T1", 2, lam=2.0)
    a = spec.generator("A")
    assert evaluate(a, 1 + 1j) == pytest.approx(2 - 2j)
    assert classify(a).tag is Tag.GLIDE_REFLECTION


def test_t5_model_relation():
    spec = make_basic("T5", 2, d=2, lam=2.0)
    a, b = spec.generator("A"), spec.generator("B")
    assert evaluate(a, 1) == pytest.approx(2)
    assert evaluate(b, 2) == pytest.approx(0.5j)
    assert relation_residuals(spec)["B^-1ABA=I"] <= 1e-9


def test_t6_model_commutes():
    spec = make_basic("T6", 2)
    b = spec.generator("B")
    assert evaluate(b, 1 + 2j) == pytest.approx(-1 - 2j)
    assert relation_residuals(spec)["AB=BA"] <= 1e-12


@pytest.mark.parametrize("kind,n,kw", [
    ("T0", 2, {}), ("T1", 2, {}), ("T2", 2, {"d": 2}), ("T3", 2, {"d": 2}),
    ("T4", 4, {"d": 4}), ("T5", 3, {"d": 3}), ("T6", 2, {}), ("T7", 3, {}),
    ("T8", 3, {"orders": (3,), "loxodromic": 1}), ("T3", 3, {"d": 1}),
])
def test_every_kind_passes_ping_pong(kind, n, kw):
    spec = make_basic(kind, n, placement=disc(2 + 1j, 0.7), **kw)
    report = verify_ping_pong(free_product([spec]), 5)
    assert report.passed, report.first_failure()


def test_order_constraints():
    with pytest.raises(InvalidOrder):
        make_basic("T3", 2, d=1)  # order 2 divides n = 2
    with pytest.raises(InvalidOrder):
        make_basic("T2", 4, d=3)
    with pytest.raises(InvalidOrder):
        make_basic("T5", 4, d=2)  # order 4 divides n
    with pytest.raises(InvalidOrder):
        make_basic("T8", 3, orders=(2,))
    with pytest.raises(ParityViolation):
        make_basic("T6", 3)
    with pytest.raises(ParityViolation):
        make_basic("T7", 2)
    with pytest.raises(ValueError):
        make_basic("T0", 2, lam=1.0)
    assert set(KINDS) == {f"T{k}" for k in range(9)}


def test_validate_generators():
    a = dilation(2)
    b = ExtendedMoebius.from_coefficients(0, 1j, 1, 0, True)
    res = validate_generators("T5", {"A": a, "B": b}, 2, d=2)
    assert max(res.values()) <= 1e-12
    with pytest.raises(WrongTransformClass):
        validate_generators("T0", {"A": b}, 2)
    # a translate of B is still pseudo-elliptic of order 4 but breaks B^-1 A B A = I
    shift = ExtendedMoebius.from_coefficients(1, 1, 0, 1)
    bad = compose(compose(shift, b), inverse(shift))
    with pytest.raises(RelationFailure):
        validate_generators("T5", {"A": a, "B": bad}, 2, d=2)


# free products and HNN extensions


def test_free_product_examples():
    t3 = make_basic("T3", 2, d=2, placement=disc(5, 1))
    t2 = make_basic("T2", 2, d=2, placement=disc(-5, 1))
    g = free_product([t3, t2])
    assert len(g.factors) == 2
    one = free_product([make_basic("T1", 2, placement=disc(0, 1))])
    assert len(one.factors) == 1
    with pytest.raises(HostOverlap) as exc:
        free_product([t3, make_basic("T2", 2, d=2, placement=disc(5.5, 1))])
    assert exc.value.code == "HostOverlap"
    with pytest.raises(EmptyFactorList):
        free_product([])


def test_free_product_flattens_assemblies():
    a = free_product([make_basic("T0", 2, placement=disc(0, 1))])
    b = free_product([a, make_basic("T1", 2, placement=disc(4, 1))])
    assert [f.kind for f in b.factors] == ["T0", "T1"]


def _reflection_base():
    # the reflection factor sits in the annulus 1/3 < |z| < 3 swapped by 9z
    return free_product([make_basic("T7", 3, placement=disc(1.5, 0.5))])


def test_hnn_extend_valid():
    base = _reflection_base()
    d1, d2 = disc(0, 1 / 3), disc(0, 3, interior=False)
    t = dilation(9)
    g = hnn_extend(base, d1, d2, t)
    assert [f.kind for f in g.factors] == ["T7", "HNN"]
    assert verify_ping_pong(g, 5).passed


def test_hnn_extend_rejects_elliptic_and_reversed_pairing():
    base = _reflection_base()
    with pytest.raises(WrongTransformClass):
        hnn_extend(base, disc(0, 1 / 3), disc(0, 3, False), ExtendedMoebius.from_coefficients(1j, 0, 0, -1j))
    far = free_product([make_basic("T7", 3, placement=disc(-3, 1))])
    with pytest.raises(PairingGeometryFailure):
        # 4z carries the disc |z - 1| <= 1/4 onto |z - 4| <= 1, interior to interior
        hnn_extend(far, disc(1, 0.25), disc(4, 1), dilation(4))
    with pytest.raises(PairingGeometryFailure):
        hnn_extend(base, disc(0, 1.2), disc(0, 3, False), dilation(9))


# words


def test_single_loxodromic_word_count():
    g = free_product([make_basic("T0", 2)])
    words = list(enumerate_reduced_words(g, 3))
    assert len(words) == 6
    assert sorted(w.label for w, _ in words) == sorted(
        f"0:{x}" for x in ("A", "A^2", "A^3", "A^-1", "A^-2", "A^-3"))


def test_two_loxodromic_word_count():
    # length counts |k| per letter, so A^2 and B^2 have length 2
    g = free_product([make_basic("T0", 2, placement=disc(0, 1)),
                      make_basic("T0", 2, placement=disc(4, 1))])
    assert count_reduced_words(g, 2) == 16
    assert len(list(enumerate_reduced_words(g, 2))) == 16


def test_empty_assembly_and_depth_zero():
    assert list(enumerate_reduced_words(GroupAssembly(()), 4)) == []
    g = free_product([make_basic("T1", 2)])
    assert list(enumerate_reduced_words(g, 0)) == []
    report = verify_ping_pong(g, 0)
    assert report.passed and report.words_checked == 0


def _brute_force_words(group, depth):
    """Every alternating letter sequence, built without the DP or the walker."""
    elems = [f.elements(depth) for f in group.factors]
    out = set()
    frontier = [((), 0, None)]
    while frontier:
        nxt = []
        for word, length, last in frontier:
            for k, es in enumerate(elems):
                if k == last:
                    continue
                for e in es:
                    if length + e.length <= depth:
                        w = word + ((k, e.label),)
                        out.add(w)
                        nxt.append((w, length + e.length, k))
        frontier = nxt
    return out


@pytest.mark.parametrize("kinds", [("T0", "T2"), ("T3", "T2", "T1"), ("T5",), ("T4", "T6")])
def test_word_enumeration_matches_brute_force(kinds):
    opts = {"T2": {"d": 2}, "T3": {"d": 2}, "T4": {"d": 2}, "T5": {"d": 2}}
    specs = [make_basic(k, 2 if k != "T5" else 2, placement=disc(3 * j, 1), **opts.get(k, {}))
             for j, k in enumerate(kinds)]
    g = free_product(specs)
    depth = 4
    walked = [w.letters for w, _ in enumerate_reduced_words(g, depth)]
    assert len(walked) == len(set(walked))
    assert set(walked) == _brute_force_words(g, depth)
    assert count_reduced_words(g, depth) == len(walked)


def test_word_transforms_are_products():
    g = free_product([make_basic("T0", 2, placement=disc(0, 1)),
                      make_basic("T2", 2, d=2, placement=disc(3, 1))])
    gens = {f"{k}": f for k, f in enumerate(g.factors)}
    for word, t in enumerate_reduced_words(g, 3):
        expected = ExtendedMoebius.identity()
        for k, label in word.letters:
            e = next(x for x in gens[str(k)].elements(3) if x.label == label)
            expected = compose(expected, e.transform)
        assert t.isclose(expected, 1e-8)


def test_enumeration_is_deterministic():
    g = free_product([make_basic("T3", 2, d=2, placement=disc(0, 1)),
                      make_basic("T2", 2, d=2, placement=disc(3, 1))])
    a = [w.label for w, _ in enumerate_reduced_words(g, 5)]
    b = [w.label for w, _ in enumerate_reduced_words(g, 5)]
    assert a == b


def test_depth_explosion():
    specs = [make_basic("T0", 2, placement=disc(3 * j, 1)) for j in range(4)]
    with pytest.raises(DepthExplosion):
        list(enumerate_reduced_words(free_product(specs), 12, cap=10 ** 5))


def test_identity_distance_of_raw_tuples():
    assert identity_distance((1, 0, 0, 1, False)) == 0
    assert identity_distance((-1, 0, 0, -1, False)) == 0
    assert identity_distance((1, 0, 0, 1, True)) == float("inf")


# verification and limit sets


def test_overlapping_pairing_discs_fail():
    a = dilation(4)
    bad = BasicGroupSpec("T0", 2, (("A", a),), {"lam": 4.0},
                         free_disc=disc(1.5, 0.1),
                         pairing=Pairing(disc(0, 1.5), disc(0, 1.0, False), "A"))
    report = verify_ping_pong(free_product([bad]), 3)
    assert not report.passed
    assert any("disjoint" in f.check and not f.ok for f in report.findings)


def test_cyclic_limit_set_goes_to_zero_and_infinity():
    g = free_product([make_basic("T0", 2, lam=4.0)])
    pts = [p for _, p in sample_limit_set(g, 6)]
    finite = [p for p in pts if not is_inf(p)]
    assert any(is_inf(p) or abs(p) > 1e3 for p in pts)
    assert any(abs(p) < 1e-3 for p in finite)


def test_nesting_on_a_product():
    g = free_product([make_basic("T3", 2, d=2, placement=disc(0, 1)),
                      make_basic("T2", 2, d=2, placement=disc(3, 1))])
    report = nested_discs(g, 6)
    assert report.passed and report.unresolved == 0
    hosts = g.hosts
    for p in report.points:
        assert any(h.contains(p, 1e-9) for h in hosts)


def test_sample_limit_set_rejects_failing_assembly():
    a = dilation(4)
    bad = BasicGroupSpec("T0", 2, (("A", a),), {"lam": 4.0}, free_disc=disc(1.5, 0.1),
                         pairing=Pairing(disc(0, 1.5), disc(0, 1.0, False), "A"))
    with pytest.raises(PingPongFailure):
        sample_limit_set(free_product([bad]), 3)


def test_t8_relations_and_host_invariance():
    spec = make_basic("T8", 5, orders=(5,), loxodromic=1, placement=disc(0, 1))
    assert max(relation_residuals(spec).values()) <= 1e-9
    report = verify_ping_pong(free_product([spec]), 5)
    assert report.passed, report.first_failure()


def test_conjugation_moves_everything():
    spec = make_basic("T4", 2, d=2)
    placed = spec.placed(disc(7, 0.5))
    assert placed.hosts[0].same_disc(disc(7, 0.5), 1e-9)
    for (n1, t1), (n2, t2) in zip(spec.generators, placed.generators):
        assert n1 == n2 and classify(t1).tag is classify(t2).tag
