import math

import pytest

from extschottky.circles import INF, GeneralizedCircle, chordal_distance, is_inf
from extschottky.errors import DegenerateCircle


def disc(c, r, interior=True):
    return GeneralizedCircle.from_center_radius(c, r, interior)


def test_center_radius_round_trip():
    c = disc(2 - 1j, 0.5)
    assert c.center == pytest.approx(2 - 1j)
    assert c.radius == pytest.approx(0.5)
    assert c.bounded


def test_contains_and_flip():
    c = disc(0, 1)
    assert c.contains(0.5j)
    assert not c.contains(2)
    assert c.flipped().contains(2)
    assert c.flipped().contains(INF)
    assert not c.contains(INF)


def test_separation_of_far_discs():
    a, b = disc(0, 1), disc(5, 1)
    assert a.disjoint(b, 1e-6)
    assert a.separation(b) > 0
    assert not a.disjoint(disc(1.5, 1))


def test_inside():
    assert disc(0, 0.2).inside(disc(0, 1))
    assert not disc(0.9, 0.2).inside(disc(0, 1))


def test_line_through_points():
    line = GeneralizedCircle.through(0, 1, 2)
    assert line.is_line


def test_degenerate_radius():
    with pytest.raises(DegenerateCircle):
        disc(0, 0)


def test_samples_lie_on_circle():
    c = disc(1 + 1j, 2)
    for z in c.sample(12):
        assert abs(abs(z - c.center) - 2) < 1e-12


def test_same_disc_distinguishes_sides():
    c = disc(0, 1)
    assert c.same_circle(c.flipped())
    assert not c.same_disc(c.flipped())


def test_chordal_distance():
    assert chordal_distance(0, INF) == pytest.approx(2.0)
    assert chordal_distance(1, 1) == 0
    assert is_inf(INF) and not is_inf(3)
    assert math.isclose(chordal_distance(1, -1), 2.0)
