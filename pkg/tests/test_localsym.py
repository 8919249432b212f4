import random
from dataclasses import dataclass
from fractions import Fraction

import pytest

from torsorlab.errors import InputError
from torsorlab.localsym import (
    EvenPrimeUnsupported,
    NoSeedApplies,
    NotOddPrime,
    NotQuarticEligible,
    PadicPoint,
    Place,
    PrecisionLimit,
    RealPointWitness,
    hensel_point,
    hilbert_symbol,
    is_prime,
    legendre_symbol,
    product_formula_check,
    quartic_residue_symbol,
    sqrt_mod_prime_power,
)


@dataclass(frozen=True)
class FakeInstance:
    p: int
    q: int
    precision: int = 20


def test_is_prime_small_and_carmichael():
    primes = [2, 3, 5, 7, 11, 97, 2**31 - 1]
    composites = [0, 1, 4, 561, 1105, 25326001, 3215031751]
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(c) for c in composites)
    with pytest.raises(InputError):
        is_prime(2**64)


def test_place_construction():
    assert str(Place.real()) == "real"
    assert str(Place.prime(17)) == "17"
    with pytest.raises(InputError):
        Place.prime(15)
    with pytest.raises(InputError):
        Place("prime")
    with pytest.raises(InputError):
        Place("real", 3)


def test_legendre_pinned_values():
    assert legendre_symbol(19, 17) == 1
    assert legendre_symbol(-17, 19) == -1
    assert legendre_symbol(34, 17) == 0
    with pytest.raises(NotOddPrime):
        legendre_symbol(3, 2)
    with pytest.raises(NotOddPrime):
        legendre_symbol(3, 15)


def test_legendre_multiplicative():
    rng = random.Random(5)
    for _ in range(200):
        p = rng.choice([3, 5, 7, 11, 13, 17, 19, 23])
        a, b = rng.randint(-40, 40), rng.randint(-40, 40)
        assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)


def test_quadratic_reciprocity_spot():
    assert legendre_symbol(17, 19) * legendre_symbol(19, 17) == 1


def test_quartic_symbol():
    assert quartic_residue_symbol(19, 17) == -1
    assert quartic_residue_symbol(1, 17) == 1
    assert quartic_residue_symbol(16, 17) == 1
    with pytest.raises(NotQuarticEligible):
        quartic_residue_symbol(3, 19)
    with pytest.raises(NotQuarticEligible):
        quartic_residue_symbol(3, 17)


def test_quartic_squares_to_one_on_residues():
    for a in range(1, 17):
        if legendre_symbol(a, 17) == 1:
            assert quartic_residue_symbol(a, 17) in (-1, 1)


def test_sqrt_mod_prime_power():
    assert sqrt_mod_prime_power(4, 7, 1) == 2
    assert sqrt_mod_prime_power(3, 7, 1) is None
    r = sqrt_mod_prime_power(2, 7, 5)
    assert r * r % 7**5 == 2
    assert r < 7**5 / 2
    with pytest.raises(EvenPrimeUnsupported):
        sqrt_mod_prime_power(1, 2, 3)
    with pytest.raises(InputError):
        sqrt_mod_prime_power(14, 7, 2)


def test_sqrt_random_roundtrip():
    rng = random.Random(9)
    for _ in range(60):
        p = rng.choice([3, 5, 7, 11, 13, 10007])
        k = rng.randint(1, 6)
        x = rng.randint(1, p - 1)
        a = x * x % p**k
        r = sqrt_mod_prime_power(a, p, k)
        assert r is not None and r * r % p**k == a % p**k


def test_hilbert_real_place():
    assert hilbert_symbol(-1, -1, "real") == -1
    assert hilbert_symbol(-1, 2, "real") == 1
    assert hilbert_symbol(Fraction(-1, 3), Fraction(-2, 5), "real") == -1


def test_hilbert_one_is_square():
    rng = random.Random(13)
    for _ in range(50):
        b = rng.choice([x for x in range(-30, 31) if x])
        v = rng.choice(["real", 2, 3, 17])
        assert hilbert_symbol(1, b, v) == 1


def test_hilbert_odd_unit_case():
    for u in (1, 2, 3, 5, 13):
        assert hilbert_symbol(u, 17, 17) == legendre_symbol(u, 17)


def test_hilbert_known_at_two():
    # z^2 = -x^2 - y^2 has only the trivial 2-adic solution
    assert hilbert_symbol(-1, -1, 2) == -1
    # 2 is a square times unit with u = 1; (2,2)_2 = (-1)^omega(1)... direct: +1
    assert hilbert_symbol(2, 2, 2) == 1
    assert hilbert_symbol(2, 3, 2) == -1
    assert hilbert_symbol(-1, 3, 2) == -1


def test_hilbert_fraction_arguments():
    # (a, b) is unchanged by multiplying either side by a square
    assert hilbert_symbol(Fraction(1, 17), 19, 17) == hilbert_symbol(17, 19, 17)
    assert hilbert_symbol(Fraction(3, 4), 5, 2) == hilbert_symbol(3, 5, 2)


def test_hilbert_symmetry_and_bimultiplicativity():
    rng = random.Random(21)
    nonzero = [x for x in range(-25, 26) if x]
    places = ["real", 2, 3, 5, 17, 19]
    for _ in range(150):
        a, b, c = (rng.choice(nonzero) for _ in range(3))
        v = rng.choice(places)
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        assert hilbert_symbol(a * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v)


def test_product_formula():
    assert product_formula_check(-1, -1)
    assert product_formula_check(1, 30)
    rng = random.Random(33)
    nonzero = [x for x in range(-50, 51) if x]
    for _ in range(100):
        assert product_formula_check(rng.choice(nonzero), rng.choice(nonzero))


def test_product_formula_fractions():
    assert product_formula_check(Fraction(3, 7), Fraction(-14, 5))


def test_hensel_point_away_from_pq():
    inst = FakeInstance(19, 17)
    pt = hensel_point(inst, 3, 10)
    assert isinstance(pt, PadicPoint)
    assert pt.coords[1] == 1 and pt.unit_flags[1]
    f = inst.p * (inst.q * pt.coords[0] + pt.coords[1]) * pt.coords[1] + inst.q * pt.coords[2] ** 2
    assert f % 3**10 == 1


def test_hensel_point_at_two():
    inst = FakeInstance(19, 17)
    pt = hensel_point(inst, 2, 8)
    f = inst.p * (inst.q * pt.coords[0] + pt.coords[1]) * pt.coords[1] + inst.q * pt.coords[2] ** 2
    assert f % 2**8 == 1
    with pytest.raises(NoSeedApplies):
        hensel_point(FakeInstance(19, 5), 2, 8)


def test_hensel_point_at_p_and_q():
    inst = FakeInstance(19, 17)
    pt_p = hensel_point(inst, 19, 10)
    assert pt_p.coords[0] == 0 and pt_p.coords[1] == 0
    assert 17 * pt_p.coords[2] ** 2 % 19**10 == 1
    pt_q = hensel_point(inst, 17, 10)
    assert pt_q.coords[0] == 0 and pt_q.coords[2] == 0
    assert 19 * pt_q.coords[1] ** 2 % 17**10 == 1


def test_hensel_point_real():
    inst = FakeInstance(19, 17)
    wit = hensel_point(inst, "real")
    assert isinstance(wit, RealPointWitness)
    x, y, z = wit.coords
    assert inst.p * (inst.q * x + y) * y + inst.q * z * z == 1
    assert wit.value == 1


def test_hensel_precision_guards():
    inst = FakeInstance(19, 17)
    with pytest.raises(InputError):
        hensel_point(inst, 3, 0)
    with pytest.raises(PrecisionLimit):
        hensel_point(inst, 3, 10**6)
