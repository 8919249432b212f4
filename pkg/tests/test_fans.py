"""Fan parsing, class groups, Cox data, and Galois ray actions."""

import math
import random

import pytest

from torsorlab.abelian import (
    FGAbelianGroup,
    NonInjectiveDiv,
    brute_force_cokernel_oracle,
    certified_oracle_bound,
)
from torsorlab.errors import InputError
from torsorlab.fans import (
    BadGaloisAction,
    DependentConeRays,
    Fan,
    FanDoesNotSpan,
    GaloisFanAction,
    MissingGaloisAction,
    NonPrimitiveRay,
    ParseError,
    class_group,
    cox_construction,
    divisor_map,
    galois_intertwining_holds,
    is_smooth_fan,
    orbit_permutation_structure,
    parse_fan,
    spans_ambient,
    split_divisor_lattice,
)
from torsorlab.intmat import IntegerMatrix, is_unimodular, kernel_basis, rank, snf_diagonal

P2_TEXT = """
# projective plane
rank 2
ray 1 0
ray 0 1
ray -1 -1
cone 0 1
cone 1 2
cone 2 0
"""


def p2_fan():
    return parse_fan(P2_TEXT)


def test_parse_p2():
    fan = p2_fan()
    assert fan.rank == 2
    assert fan.rays == ((1, 0), (0, 1), (-1, -1))
    assert len(fan.cones) == 3


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_fan("ray 1 0\nrank 2\n")
    with pytest.raises(ParseError):
        parse_fan("rank 2\nray 1\n")
    with pytest.raises(ParseError):
        parse_fan("rank 2\nray 1 x\n")
    with pytest.raises(ParseError):
        parse_fan("rank 2\nrank 2\n")
    with pytest.raises(ParseError):
        parse_fan("rank 2\nwedge 0 1\n")
    with pytest.raises(ParseError):
        parse_fan("# only comments\n")


def test_validation_errors():
    with pytest.raises(NonPrimitiveRay):
        parse_fan("rank 2\nray 2 0\ncone 0\n")
    with pytest.raises(DependentConeRays):
        parse_fan("rank 2\nray 1 0\nray -1 0\ncone 0 1\n")
    # every listed ray must sit in some cone
    with pytest.raises(InputError):
        parse_fan("rank 2\nray 1 0\n")
    # a fan with no rays at all is the zero cone alone, and is fine
    assert parse_fan("rank 2\n").rays == ()


def test_span_and_smoothness():
    fan = p2_fan()
    assert spans_ambient(fan)
    assert is_smooth_fan(fan)
    line = parse_fan("rank 2\nray 1 0\nray -1 0\ncone 0\ncone 1\n")
    assert not spans_ambient(line)
    singular = parse_fan("rank 2\nray 1 0\nray 1 2\ncone 0 1\n")
    assert spans_ambient(singular)
    assert not is_smooth_fan(singular)
    assert is_smooth_fan(parse_fan("rank 3\n"))


def test_divisor_map_rows_are_rays():
    fan = p2_fan()
    assert divisor_map(fan).to_lists() == [[1, 0], [0, 1], [-1, -1]]


def test_class_group_examples():
    assert class_group(p2_fan()) == FGAbelianGroup(1)
    blowup = parse_fan("rank 2\nray 1 0\nray 0 1\nray 1 1\ncone 0 2\ncone 2 1\n")
    assert class_group(blowup) == FGAbelianGroup(1)
    with pytest.raises(FanDoesNotSpan):
        class_group(parse_fan("rank 2\nray 1 0\ncone 0\n"))


def test_class_group_cross_checked_by_oracle():
    fan = parse_fan("rank 2\nray 1 0\nray 0 1\nray -1 -2\ncone 0 1\ncone 1 2\ncone 2 0\n")
    mat = divisor_map(fan)
    bound = certified_oracle_bound(mat)
    assert class_group(fan) == brute_force_cokernel_oracle(mat, bound)


def test_cox_construction():
    data = cox_construction(p2_fan())
    assert data.tilde_rank == 3
    assert data.g_tilde.to_lists() == [[1, 0, -1], [0, 1, -1]]
    assert all(data.ray_image_certificate)
    assert data.subfan_C_prime.rank == 3
    assert len(data.subfan_C_prime.cones) == 3

    rank1 = parse_fan("rank 1\nray 1\nray -1\ncone 0\ncone 1\n")
    data1 = cox_construction(rank1)
    assert data1.g_tilde.to_lists() == [[1, -1]]
    assert all(data1.ray_image_certificate)

    with pytest.raises(FanDoesNotSpan):
        cox_construction(parse_fan("rank 2\nray 1 0\ncone 0\n"))


def test_split_divisor_lattice():
    m1, m2, d, finite = split_divisor_lattice(divisor_map(p2_fan()))
    assert m1.cols == 2 and m2.cols == 1
    assert finite
    # the two bases assemble to a basis of the whole divisor lattice
    assert is_unimodular(m1.hstack(m2))

    square = IntegerMatrix([[1, 1], [0, 1]])
    _, m2s, ds, finite_s = split_divisor_lattice(square)
    assert m2s.cols == 0
    assert is_unimodular(ds)
    assert finite_s

    multi = IntegerMatrix([[2, 0], [0, 2], [1, 1]])
    _, _, dm, finite_m = split_divisor_lattice(multi)
    prod = 1
    for x in snf_diagonal(dm):
        prod *= x
    assert finite_m and prod == 2

    with pytest.raises(NonInjectiveDiv):
        split_divisor_lattice(IntegerMatrix([[1, 1], [1, 1]]))


def test_galois_actions():
    text = P2_TEXT + "action 0 -1 1 -1\n"
    fan = parse_fan(text)
    assert fan.galois is not None
    ((mat, perm),) = fan.galois.generators
    assert perm == (1, 2, 0)
    assert galois_intertwining_holds(fan)
    assert orbit_permutation_structure(fan) == [3]

    swap = parse_fan("rank 2\nray 1 0\nray 0 1\ncone 0 1\naction 0 1 1 0\n")
    assert orbit_permutation_structure(swap) == [2]

    trivial = parse_fan(P2_TEXT + "action 1 0 0 1\n")
    assert orbit_permutation_structure(trivial) == [1, 1, 1]

    with pytest.raises(MissingGaloisAction):
        orbit_permutation_structure(p2_fan())

    with pytest.raises(BadGaloisAction):
        parse_fan(P2_TEXT + "action 1 0 0 -1\n")
    with pytest.raises(BadGaloisAction):
        GaloisFanAction.from_matrices(
            ((1, 0), (0, 1)), [IntegerMatrix([[2, 0], [0, 1]])]
        )


def random_fan(rng, spanning):
    dim = rng.randint(1, 3)
    target = rng.randint(dim, dim + 2)
    rays = []
    seen = set()
    for _ in range(60):
        if len(rays) == target:
            break
        vec = [rng.randint(-3, 3) for _ in range(dim)]
        if not spanning and dim > 1:
            vec[-1] = 0
        g = math.gcd(*vec)
        if g == 0:
            continue
        u = tuple(x // g for x in vec)
        if u in seen:
            continue
        seen.add(u)
        rays.append(u)
    cones = tuple((i,) for i in range(len(rays)))
    return Fan(dim, tuple(rays), cones)


def test_span_criterion_matches_kernel_triviality():
    rng = random.Random(31)
    for case in range(40):
        fan = random_fan(rng, spanning=bool(case % 2))
        expected = kernel_basis(divisor_map(fan)).cols == 0
        assert spans_ambient(fan) == expected
        if spans_ambient(fan):
            assert class_group(fan).free_rank == len(fan.rays) - fan.rank
