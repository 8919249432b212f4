"""The affine surface f(x,y,z) = p(qx+y)y + qz**2 and its obstruction.

For parameter pairs passing a short list of congruence and residue
conditions, the surface has points everywhere locally but the quaternion
invariants (y, q)_l multiply to -1, so the f = 1 locus has no integral
point.  This module assembles the local-invariant table from lifted
points, runs the box search that confirms emptiness at desk scale, and
computes the Picard group of the complement of the branch conic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian import FGAbelianGroup, cokernel
from .errors import InputError
from .intmat import IntegerMatrix, kernel_basis
from .localsym import (
    PadicPoint,
    Place,
    RealPointWitness,
    hensel_point,
    hilbert_symbol,
    is_prime,
    legendre_symbol,
    quartic_residue_symbol,
)


class ConditionFailed(InputError):
    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"condition failed: {condition}" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class ExampleInstance:
    p: int
    q: int
    search_bound: int = 100
    prime_bound: int = 100
    precision: int = 20

    def f(self, x, y, z):
        return self.p * (self.q * x + y) * y + self.q * z * z


@dataclass(frozen=True)
class InvariantEntry:
    place: Place
    point: PadicPoint | RealPointWitness
    symbol: int
    case_label: str
    confirmed: bool


@dataclass(frozen=True)
class LocalInvariantReport:
    entries: tuple[InvariantEntry, ...]
    product: int


def validate_parameters(
    p: int,
    q: int,
    *,
    search_bound: int = 100,
    prime_bound: int = 100,
    precision: int = 20,
) -> ExampleInstance:
    """Check the defining conditions on (p, q), reporting the first failure."""
    if not is_prime(p):
        raise ConditionFailed("p is prime", f"p = {p}")
    if not is_prime(q):
        raise ConditionFailed("q is prime", f"q = {q}")
    if p % 4 != 3:
        raise ConditionFailed("p = 3 mod 4", f"p = {p}")
    if q % 8 != 1:
        raise ConditionFailed("q = 1 mod 8", f"q = {q}")
    if legendre_symbol(p, q) != 1:
        raise ConditionFailed("(p/q) = 1", f"symbol is {legendre_symbol(p, q)}")
    if quartic_residue_symbol(p, q) != -1:
        raise ConditionFailed("(p/q)_4 = -1")
    if legendre_symbol(-q, p) != -1:
        raise ConditionFailed("(-q/p) = -1")
    return ExampleInstance(p, q, search_bound, prime_bound, precision)


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, int(n**0.5) + 1):
        if sieve[d]:
            sieve[d * d :: d] = False
    return [int(v) for v in np.nonzero(sieve)[0]]


def invariant_table(instance: ExampleInstance, precision: int | None = None) -> LocalInvariantReport:
    """Local invariants of (y, q) on lifted points at every relevant place.

    Away from p and q the lifted point has y = 1, making the symbol 1 on
    the nose; the structural reason (squareness of q, or y being a unit)
    is still checked and recorded per entry.  At p the algebra is split
    because q is a square there; at q the symbol is a genuine Legendre
    value and carries the obstruction.
    """
    k = precision if precision is not None else instance.precision
    p, q = instance.p, instance.q
    entries: list[InvariantEntry] = []

    real_pt = hensel_point(instance, "real", k)
    sym = hilbert_symbol(real_pt.coords[1], q, "real")
    entries.append(InvariantEntry(Place.real(), real_pt, sym, "real place, q > 0", sym == 1 and q > 0))

    finite = [l for l in _primes_up_to(instance.prime_bound) if l not in (p, q)]
    for l in sorted(set(finite) | {p, q}):
        if l == p:
            pt = hensel_point(instance, l, k)
            confirmed = legendre_symbol(q, p) == 1 and all(
                hilbert_symbol(u, q, p) == 1 for u in (1, 2, 3, p)
            )
            entries.append(InvariantEntry(Place.prime(l), pt, 1, "l = p: q is a square in Q_p", confirmed))
        elif l == q:
            pt = hensel_point(instance, l, k)
            sym = hilbert_symbol(pt.coords[1], q, l)
            quartic = quartic_residue_symbol(p, q)
            entries.append(
                InvariantEntry(Place.prime(l), pt, sym, "l = q: (y/q) = (p/q)_4^-1", sym == quartic)
            )
        elif l == 2:
            pt = hensel_point(instance, l, k)
            sym = hilbert_symbol(pt.coords[1], q, l)
            entries.append(InvariantEntry(Place.prime(l), pt, sym, "l = 2: q = 1 mod 8", q % 8 == 1))
        else:
            pt = hensel_point(instance, l, k)
            sym = hilbert_symbol(pt.coords[1], q, l)
            if legendre_symbol(q, l) == 1:
                label = "l odd: q is a square mod l"
                confirmed = sym == 1
            else:
                label = "l odd: y is a unit"
                confirmed = pt.unit_flags[1] and sym == 1
            entries.append(InvariantEntry(Place.prime(l), pt, sym, label, confirmed))

    product = 1
    for e in entries:
        product *= e.symbol
    return LocalInvariantReport(tuple(entries), product)


def integral_search(instance: ExampleInstance) -> list[tuple[int, int, int]]:
    """All integer points of |f| = 1 in the centered box, in lex order.

    Scanned one x-slice at a time to keep the arrays small; each slice
    is a broadcast evaluation over the (y, z) grid.
    """
    B = instance.search_bound
    if B < 0:
        raise InputError("search bound must be nonnegative")
    p, q = instance.p, instance.q
    span = np.arange(-B, B + 1, dtype=np.int64)
    y = span[:, None]
    z = span[None, :]
    qzz = q * z * z
    out: list[tuple[int, int, int]] = []
    for x in range(-B, B + 1):
        f = p * (q * x + y) * y + qzz
        hit_y, hit_z = np.nonzero(np.abs(f) == 1)
        for iy, iz in zip(hit_y.tolist(), hit_z.tolist()):
            out.append((x, int(span[iy]), int(span[iz])))
    out.sort()
    return out


def minus_one_mod_p_insolvable(instance: ExampleInstance) -> bool:
    """Certificate that f = -1 already fails mod p.

    Mod p the equation reads q z**2 = -1, needing -q to be a square;
    the validated parameters force (-q/p) = -1.
    """
    return legendre_symbol(-instance.q, instance.p) == -1


def pic_of_complement(degree: int = 2) -> FGAbelianGroup:
    """Picard group of the plane minus a degree-d curve: Z/d.

    Realized as the cokernel of multiplication by d on Z, with the
    kernel checked to vanish (constants are the only global units).
    """
    if degree < 1:
        raise InputError("degree must be positive")
    mult = IntegerMatrix([[degree]])
    if kernel_basis(mult).cols != 0:
        raise InputError("multiplication by a positive degree cannot have a kernel")
    return cokernel(mult)
