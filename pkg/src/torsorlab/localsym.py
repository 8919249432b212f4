"""Residue symbols, Hilbert symbols over Q, and p-adic point lifting.

Everything is exact integer arithmetic: primality is deterministic
Miller-Rabin (valid below 2**64), square roots are Tonelli-Shanks plus
Hensel refinement, and Hilbert symbols come from the classical unit
formulas at each place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, LimitError

MAX_CERTIFIED = 1 << 64
MAX_PRECISION = 10_000

# strong-pseudoprime bases covering every composite below 2**64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NotOddPrime(InputError):
    pass


class NotQuarticEligible(InputError):
    pass


class EvenPrimeUnsupported(InputError):
    pass


class NoSeedApplies(InputError):
    pass


class PrecisionLimit(LimitError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; only certified below 2**64."""
    if n >= MAX_CERTIFIED:
        raise InputError(f"primality only certified below 2**64, got {n}")
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Place:
    """A place of Q: the real place or a finite prime."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "real":
            if self.p is not None:
                raise InputError("real place carries no prime")
        elif self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise InputError(f"{self.p} is not prime")
        else:
            raise InputError(f"unknown place kind {self.kind!r}")

    @classmethod
    def real(cls) -> "Place":
        return cls("real")

    @classmethod
    def prime(cls, p: int) -> "Place":
        return cls("prime", p)

    def __str__(self) -> str:
        return "real" if self.kind == "real" else str(self.p)


def _coerce_place(v) -> Place:
    if isinstance(v, Place):
        return v
    if v == "real":
        return Place.real()
    if isinstance(v, int):
        return Place.prime(v)
    raise InputError(f"cannot interpret {v!r} as a place")


def legendre_symbol(a: int, p: int) -> int:
    """Euler criterion a^((p-1)/2) mod p, mapped into {-1, 0, 1}."""
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def quartic_residue_symbol(a: int, q: int) -> int:
    """a^((q-1)/4) mod q on quadratic residues, as +1 or -1."""
    if q % 4 != 1 or not is_prime(q):
        raise NotQuarticEligible(f"{q} is not a prime congruent to 1 mod 4")
    if legendre_symbol(a, q) != 1:
        raise NotQuarticEligible(f"{a} is not a quadratic residue mod {q}")
    e = pow(a % q, (q - 1) // 4, q)
    return 1 if e == 1 else -1


def sqrt_mod_prime_power(a: int, p: int, k: int) -> int | None:
    """A root of r*r = a mod p**k, or None when a is a non-residue.

    Tonelli-Shanks finds the root mod p; Hensel doubling lifts it.  Of
    the two roots the one below p**k / 2 is returned.
    """
    if p == 2:
        raise EvenPrimeUnsupported("p = 2 has no odd-prime square root routine")
    if not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    if k < 1:
        raise InputError("precision must be at least 1")
    if a % p == 0:
        raise InputError(f"{a} is divisible by {p}")
    if legendre_symbol(a, p) == -1:
        return None
    r = _tonelli_shanks(a % p, p)
    mod = p
    while mod < p**k:
        # Newton step for r^2 - a, valid since 2r is a unit
        mod = min(mod * mod, p**k)
        inv = pow(2 * r % mod, -1, mod)
        r = (r - (r * r - a) * inv) % mod
    mod = p**k
    r %= mod
    return min(r, mod - r)


def _tonelli_shanks(a: int, p: int) -> int:
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    s, q = 0, p - 1
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _split_valuation(x: Fraction, p: int) -> tuple[int, Fraction]:
    num, den = x.numerator, x.denominator
    alpha = 0
    while num % p == 0:
        num //= p
        alpha += 1
    while den % p == 0:
        den //= p
        alpha -= 1
    return alpha, Fraction(num, den)


def _unit_symbol(u: Fraction, p: int) -> int:
    return legendre_symbol(u.numerator, p) * legendre_symbol(u.denominator, p)


def _unit_mod8(u: Fraction) -> int:
    return u.numerator * pow(u.denominator, -1, 8) % 8


def hilbert_symbol(a, b, v) -> int:
    """The Hilbert symbol (a, b)_v on nonzero rationals.

    Real place: -1 exactly when both arguments are negative.  Odd p, with
    a = p^alpha u and b = p^beta w:

        (-1)^(alpha beta eps(p)) (u/p)^beta (w/p)^alpha,  eps(p) = (p-1)/2.

    p = 2, with eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 taken mod 2 on
    the odd parts:

        (-1)^(eps(u) eps(w) + alpha omega(w) + beta omega(u)).
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InputError("Hilbert symbol needs nonzero arguments")
    place = _coerce_place(v)
    if place.kind == "real":
        return -1 if a < 0 and b < 0 else 1
    p = place.p
    alpha, u = _split_valuation(a, p)
    beta, w = _split_valuation(b, p)
    if p != 2:
        eps = (p - 1) // 2
        sign = -1 if (alpha * beta * eps) % 2 else 1
        # valuations may be negative; only their parity matters for a +-1 base
        return sign * _unit_symbol(u, p) ** (beta % 2) * _unit_symbol(w, p) ** (alpha % 2)
    u8, w8 = _unit_mod8(u), _unit_mod8(w)
    eps_u, eps_w = (u8 - 1) // 2 % 2, (w8 - 1) // 2 % 2
    omega_u, omega_w = (u8 * u8 - 1) // 8 % 2, (w8 * w8 - 1) // 8 % 2
    expo = eps_u * eps_w + alpha * omega_w + beta * omega_u
    return -1 if expo % 2 else 1


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out: set[int] = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return out


def product_formula_check(a, b) -> bool:
    """Hilbert reciprocity: the symbols over real and 2ab-primes multiply to 1."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InputError("nonzero rationals required")
    primes = {2}
    for x in (a, b):
        primes |= _prime_factors(x.numerator)
        primes |= _prime_factors(x.denominator)
    product = hilbert_symbol(a, b, "real")
    for p in sorted(primes):
        product *= hilbert_symbol(a, b, p)
    return product == 1


@dataclass(frozen=True)
class PadicPoint:
    """A point with coordinates mod prime**precision and unit flags."""

    prime: int
    precision: int
    coords: tuple[int, int, int]
    unit_flags: tuple[bool, bool, bool]

    def modulus(self) -> int:
        return self.prime**self.precision


@dataclass(frozen=True)
class RealPointWitness:
    """An exact rational point, recorded with its f-value (always 1)."""

    coords: tuple[Fraction, Fraction, Fraction]
    value: Fraction


def _f_value(instance, x, y, z):
    return instance.p * (instance.q * x + y) * y + instance.q * z * z


def hensel_point(instance, v, precision: int | None = None):
    """A local point of f = 1 at the place v, to the requested precision.

    Three seed shapes cover every place: an exact rational point with
    y = 1 away from p and q (which also serves the real place and 2,
    where q = 1 mod 8 keeps it integral), and square-root points on the
    z- and y-axes at p and q themselves.
    """
    p, q = instance.p, instance.q
    place = _coerce_place(v)
    k = precision if precision is not None else getattr(instance, "precision", 20)
    if k < 1:
        raise InputError("precision must be at least 1")
    if k > MAX_PRECISION:
        raise PrecisionLimit(f"precision {k} exceeds {MAX_PRECISION}")
    x_seed = Fraction(1, p * q) - Fraction(1, q)
    if place.kind == "real":
        coords = (x_seed, Fraction(1), Fraction(0))
        value = _f_value(instance, *coords)
        if value != 1:
            raise InputError("real seed failed its defining equation")
        return RealPointWitness(coords, value)
    l = place.p
    mod = l**k
    if l == p:
        inv_q = pow(q % mod, -1, mod)
        z = sqrt_mod_prime_power(inv_q, p, k)
        if z is None:
            raise NoSeedApplies(f"q is not a square mod {p}")
        coords, flags = (0, 0, z), (False, False, True)
    elif l == q:
        inv_p = pow(p % mod, -1, mod)
        y = sqrt_mod_prime_power(inv_p, q, k)
        if y is None:
            raise NoSeedApplies(f"p is not a square mod {q}")
        coords, flags = (0, y, 0), (False, True, False)
    else:
        if l == 2 and q % 8 != 1:
            raise NoSeedApplies("the 2-adic seed needs q = 1 mod 8")
        x = x_seed.numerator * pow(x_seed.denominator, -1, mod) % mod
        coords, flags = (x, 1, 0), (x % l != 0, True, False)
    if _f_value(instance, *coords) % mod != 1 % mod:
        raise InputError(f"lifted point fails f = 1 mod {l}^{k}")
    return PadicPoint(l, k, coords, flags)
