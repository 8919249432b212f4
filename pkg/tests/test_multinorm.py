import math
import random
from fractions import Fraction

import pytest

from torsorlab.abelian import FGAbelianGroup
from torsorlab.errors import InputError
from torsorlab.multinorm import (
    GeometricShape,
    MultiNormSpec,
    NotOnVariety,
    divisor_matrix_multinorm,
    geometric_shape,
    pic_multinorm,
    smooth_point_check,
    torsion_free_criterion,
    torsor_character_map,
    units_check,
)


def random_spec(rng):
    degrees_K = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
    degrees_L = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 2)))
    exponents = tuple(rng.randint(1, 4) for _ in degrees_L)
    return MultiNormSpec(degrees_K, degrees_L, exponents)


def test_spec_validation():
    with pytest.raises(InputError):
        MultiNormSpec((), (1,), (1,))
    with pytest.raises(InputError):
        MultiNormSpec((2,), (1,), (1, 1))
    with pytest.raises(InputError):
        MultiNormSpec((2,), (0,), (1,))
    with pytest.raises(InputError):
        MultiNormSpec((2,), (1,), (0,))
    with pytest.raises(InputError):
        MultiNormSpec((2,), (1,), (1,), 0)
    with pytest.raises(InputError):
        GeometricShape(0, (1,))


def test_geometric_shape_examples():
    assert geometric_shape(MultiNormSpec((2,), (1,), (2,))) == GeometricShape(2, (2,))
    assert geometric_shape(MultiNormSpec((1,), (1,), (1,))) == GeometricShape(1, (1,))
    assert geometric_shape(MultiNormSpec((2, 3), (2,), (3,))) == GeometricShape(5, (3, 3))


def test_divisor_matrix_patterns():
    assert divisor_matrix_multinorm(GeometricShape(2, (2,))).to_lists() == [
        [2, 0, 1],
        [0, 2, 1],
    ]
    assert divisor_matrix_multinorm(GeometricShape(1, (1,))).to_lists() == [[1, 1]]
    assert divisor_matrix_multinorm(GeometricShape(2, (1, 1))).to_lists() == [
        [1, 0, 1, 0],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 0, 1],
    ]


def test_units_check_examples_and_random():
    assert units_check(GeometricShape(2, (2,)))
    assert units_check(GeometricShape(1, (1,)))
    rng = random.Random(41)
    for _ in range(40):
        m = rng.randint(1, 4)
        r = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        assert units_check(GeometricShape(m, r))


def test_pic_product_square_family():
    for n in range(2, 6):
        pic = pic_multinorm(GeometricShape(n, (2,)))
        assert pic == FGAbelianGroup(0, (2,) * (n - 1))
    assert pic_multinorm(GeometricShape(1, (1,))).is_trivial


def test_pic_rank_formula():
    rng = random.Random(43)
    for _ in range(30):
        m = rng.randint(1, 4)
        r = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        shape = GeometricShape(m, r)
        pic = pic_multinorm(shape)
        n = shape.n_prime
        assert pic.free_rank == m * n - (m + n - 1)


def test_torsion_free_criterion_examples():
    got = torsion_free_criterion(MultiNormSpec((2,), (1, 1), (2, 3)))
    assert got == (True, True)
    got = torsion_free_criterion(MultiNormSpec((2,), (1,), (2,)))
    assert got == (False, False)
    got = torsion_free_criterion(MultiNormSpec((1,), (1,), (1,)))
    assert got == (True, True)


def test_gcd_one_implies_torsion_free_random():
    rng = random.Random(47)
    for _ in range(60):
        spec = random_spec(rng)
        crit = torsion_free_criterion(spec)
        assert crit.gcd_is_one == (math.gcd(*spec.exponents) == 1)
        if crit.gcd_is_one:
            assert crit.pic_torsion_free


def test_torsor_character_map_examples():
    assert torsor_character_map(MultiNormSpec((1,), (1,), (1,))).to_lists() == [[1, 1]]
    assert torsor_character_map(MultiNormSpec((2,), (1,), (2,))).to_lists() == [
        [2, 0, 1],
        [0, 2, 1],
    ]
    four = torsor_character_map(MultiNormSpec((2,), (2,), (1,)))
    assert four.shape == (4, 4)


def test_torsor_character_map_random_agreement():
    # the map itself asserts row-by-row agreement with the divisor matrix
    rng = random.Random(53)
    for _ in range(25):
        spec = random_spec(rng)
        mat = torsor_character_map(spec)
        shape = geometric_shape(spec)
        assert mat.shape == divisor_matrix_multinorm(shape).shape


def test_smooth_point_examples():
    family = GeometricShape(2, (2,))
    assert smooth_point_check(family, (1, 1, 1), 1).smooth
    origin = smooth_point_check(family, (0, 0, 0), 1)
    assert not origin.smooth and origin.in_W
    assert bool(origin) is False
    edge = smooth_point_check(family, (0, 1, 0), 1)
    assert edge.smooth and not edge.in_W


def test_smooth_point_validation():
    family = GeometricShape(2, (2,))
    with pytest.raises(NotOnVariety):
        smooth_point_check(family, (1, 2, 3), 1)
    with pytest.raises(InputError):
        smooth_point_check(family, (1, 1), 1)
    with pytest.raises(InputError):
        smooth_point_check(family, (1, 1, 1), 0)


def test_smooth_point_fractional():
    family = GeometricShape(2, (2,))
    pt = (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert smooth_point_check(family, pt, 1).smooth
    scaled = smooth_point_check(family, (Fraction(9, 2), 2, 3), 1)
    assert scaled.smooth
