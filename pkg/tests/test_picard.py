import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sncgeom import picard


def test_triangle_surface():
    s = picard.triangle_surface()
    s.validate()
    assert s.length == 3
    assert s.self_intersections() == (1, 1, 1)
    assert picard.dot(s.canonical, s.canonical) == 9


def test_corner_blowup_updates_cycle():
    s = picard.blowup_corner(picard.triangle_surface(), 0)
    s.validate()
    assert s.length == 4
    assert s.self_intersections() == (0, -1, 0, 1)


def test_interior_blowup_preserves_cycle_length():
    s = picard.blowup_on_curve(picard.triangle_surface(), 1)
    s.validate()
    assert s.length == 3
    assert s.self_intersections() == (1, 0, 1)


def test_standard_schedule():
    s = picard.standard_schedule()
    s.validate()
    assert s.length == 9
    assert all(c2 == -2 for c2 in s.self_intersections())


def test_cycle_surface_lengths():
    for m in (3, 5, 9, 12, 15):
        s = picard.cycle_surface(m)
        s.validate()
        assert s.length == m
        assert all(c2 <= -2 for c2 in s.self_intersections())


def test_cycle_surface_rejects_short():
    with pytest.raises(ValueError):
        picard.cycle_surface(2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_fuzzed_blowups_preserve_anticanonical_sum(seed):
    rng = random.Random(seed)
    s = picard.triangle_surface()
    for _ in range(rng.randint(0, 20)):
        j = rng.randrange(s.length)
        if rng.random() < 0.7:
            s = picard.blowup_corner(s, j)
        else:
            s = picard.blowup_on_curve(s, j)
    s.validate()  # includes sum C_j = -K and the adjacency pattern


def test_json_roundtrip():
    s = picard.standard_schedule()
    assert picard.CycleSurface.from_json(s.to_json()) == s


def test_is_negative_definite():
    s = picard.standard_schedule()
    for j in range(s.length):
        assert picard.is_negative_definite(s, j)
    assert not picard.is_negative_definite(picard.triangle_surface(), 0)


def test_uniform_degree_seed():
    s = picard.standard_schedule()
    seed = picard.uniform_degree_seed(s)
    assert picard.dot(seed, seed) > 0
    mult = {picard.dot(seed, c) for c in s.cycle}
    assert len(mult) == 1 and next(iter(mult)) > 0


def test_degree_one_polarization_standard():
    s = picard.standard_schedule()
    h = picard.degree_one_polarization(s, picard.uniform_degree_seed(s))
    assert all(picard.dot(h, c) == 1 for c in s.cycle)
    assert picard.dot(h, h) > 0


def test_degree_one_polarization_larger_cycles():
    for m in (12, 15, 18):
        s = picard.cycle_surface(m)
        h = picard.degree_one_polarization(s, picard.uniform_degree_seed(s))
        assert all(picard.dot(h, c) == 1 for c in s.cycle)
        assert picard.dot(h, h) > 0


def test_polarization_requires_minus_two_curves():
    with pytest.raises(picard.NegativeDefiniteViolation):
        picard.degree_one_polarization(picard.triangle_surface(),
                                       (1, ))


def test_clear_denominators():
    cls, mult = picard.clear_denominators((Fraction(1, 2), Fraction(2, 3)))
    assert cls == (3, 4) and mult == 6
