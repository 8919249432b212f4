"""Multi-norm equations ∏ N(w_i) = c ∏ N(z_j)^{s_j} over a split closure.

Field extensions are carried only through their degrees: over the
closure each w-factor of degree m contributes m coordinates and the
defining equation becomes a single monomial identity
w_1 ... w_{m'} = c z_1^{r_1} ... z_{n'}^{r_{n'}}.  Units, Picard
groups, and the torsor character map are all exact lattice
computations on the resulting divisor matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .abelian import FGAbelianGroup, cokernel
from .errors import InputError
from .intmat import IntegerMatrix, kernel_basis, smith_normal_form, solve_columns


class NotOnVariety(InputError):
    pass


@dataclass(frozen=True)
class MultiNormSpec:
    degrees_K: tuple[int, ...]
    degrees_L: tuple[int, ...]
    exponents: tuple[int, ...]
    c: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "degrees_K", tuple(self.degrees_K))
        object.__setattr__(self, "degrees_L", tuple(self.degrees_L))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        object.__setattr__(self, "c", Fraction(self.c))
        if not self.degrees_K or not self.degrees_L:
            raise InputError("at least one field on each side is required")
        if len(self.exponents) != len(self.degrees_L):
            raise InputError("one exponent per L-field required")
        if any(m < 1 for m in self.degrees_K) or any(d < 1 for d in self.degrees_L):
            raise InputError("field degrees must be at least 1")
        if any(s < 1 for s in self.exponents):
            raise InputError("exponents must be at least 1")
        if self.c == 0:
            raise InputError("the constant must be nonzero")


@dataclass(frozen=True)
class GeometricShape:
    m_prime: int
    r_list: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r_list", tuple(self.r_list))
        if self.m_prime < 1:
            raise InputError("need at least one w-coordinate")
        if not self.r_list or any(r < 1 for r in self.r_list):
            raise InputError("z-exponents must be positive")

    @property
    def n_prime(self) -> int:
        return len(self.r_list)


def geometric_shape(spec: MultiNormSpec) -> GeometricShape:
    r_list = []
    for d, s in zip(spec.degrees_L, spec.exponents):
        r_list.extend([s] * d)
    return GeometricShape(sum(spec.degrees_K), tuple(r_list))


def divisor_matrix_multinorm(shape: GeometricShape) -> IntegerMatrix:
    """Divisors of the coordinate functions on the (i, j) orbit strata.

    Row (i, j) records div over the stratum D_ij: each w_i vanishes to
    order r_j there and each z_j to order 1.
    """
    m, n = shape.m_prime, shape.n_prime
    rows = []
    for i in range(m):
        for j in range(n):
            row = [0] * (m + n)
            row[i] = shape.r_list[j]
            row[m + j] = 1
            rows.append(row)
    return IntegerMatrix(rows)


def _relation_vector(shape: GeometricShape) -> list[int]:
    return [1] * shape.m_prime + [-r for r in shape.r_list]


def units_check(shape: GeometricShape) -> bool:
    """True when the only unit monomials are powers of w...z^-r itself."""
    ker = kernel_basis(divisor_matrix_multinorm(shape))
    if ker.cols != 1:
        return False
    col = ker.column_tuple(0)
    rel = tuple(_relation_vector(shape))
    return col == rel or col == tuple(-v for v in rel)


def pic_multinorm(shape: GeometricShape) -> FGAbelianGroup:
    """Cokernel of the character lattice mapping into the divisor lattice.

    The relation vector is primitive, so the quotient by it is free; the
    divisor matrix descends to that quotient and must be injective there
    (that is the units statement), which the construction verifies.
    """
    div = divisor_matrix_multinorm(shape)
    rel = IntegerMatrix.column(_relation_vector(shape))
    dec = smith_normal_form(rel)
    if dec.diagonal != (1,):
        raise InputError("relation vector is not primitive")
    size = shape.m_prime + shape.n_prime
    lift = solve_columns(dec.U, IntegerMatrix.identity(size))
    induced = div @ lift.take_columns(1, size)
    if kernel_basis(induced).cols != 0:
        raise InputError("descended divisor map is not injective")
    return cokernel(induced)


class TorsionFreeCriterion(NamedTuple):
    gcd_is_one: bool
    pic_torsion_free: bool


def torsion_free_criterion(spec: MultiNormSpec) -> TorsionFreeCriterion:
    gcd_is_one = math.gcd(*spec.exponents) == 1
    pic = pic_multinorm(geometric_shape(spec))
    return TorsionFreeCriterion(gcd_is_one, not pic.invariant_factors)


def torsor_character_map(spec: MultiNormSpec) -> IntegerMatrix:
    """Characters of the torsor coordinates u_{ijab} in terms of w and z.

    The w-side norm products contribute exponent s_j on every u in the
    (i, j) block sharing the w-coordinate; the z-side contributes 1.
    After identifying u-rows with (w, z) index pairs this is exactly the
    divisor matrix, and that agreement is asserted before returning.
    """
    shape = geometric_shape(spec)
    m_off = [0]
    for m in spec.degrees_K:
        m_off.append(m_off[-1] + m)
    d_off = [0]
    for d in spec.degrees_L:
        d_off.append(d_off[-1] + d)
    m_prime, n_prime = shape.m_prime, shape.n_prime
    rows = []
    pair_of_row = []
    for i, m in enumerate(spec.degrees_K):
        for j, d in enumerate(spec.degrees_L):
            s = spec.exponents[j]
            for a in range(m):
                for b in range(d):
                    row = [0] * (m_prime + n_prime)
                    row[m_off[i] + a] = s
                    row[m_prime + d_off[j] + b] = 1
                    rows.append(row)
                    pair_of_row.append((m_off[i] + a, d_off[j] + b))
    blocked = IntegerMatrix(rows)
    div = divisor_matrix_multinorm(shape)
    for k, (gi, gj) in enumerate(pair_of_row):
        if blocked.row(k) != div.row(gi * n_prime + gj):
            raise InputError("torsor characters disagree with the divisor matrix")
    if sorted(pair_of_row) != [(i, j) for i in range(m_prime) for j in range(n_prime)]:
        raise InputError("torsor blocks fail to cover the index pairs")
    return blocked


@dataclass(frozen=True)
class SmoothPointReport:
    smooth: bool
    in_W: bool

    def __bool__(self) -> bool:
        return self.smooth


def smooth_point_check(shape: GeometricShape, point, c) -> SmoothPointReport:
    """Exact Jacobian test for F = w_1...w_{m'} - c z^r at a given point.

    Also reports membership in the locus W where two or more w's vanish,
    which is where all singularities live.
    """
    c = Fraction(c)
    if c == 0:
        raise InputError("the constant must be nonzero")
    m, n = shape.m_prime, shape.n_prime
    coords = [Fraction(v) for v in point]
    if len(coords) != m + n:
        raise InputError(f"expected {m + n} coordinates, got {len(coords)}")
    w = coords[:m]
    z = coords[m:]
    w_prod = math.prod(w, start=Fraction(1))
    z_prod = math.prod(
        (zi**r for zi, r in zip(z, shape.r_list)), start=Fraction(1)
    )
    if w_prod != c * z_prod:
        raise NotOnVariety(f"point violates the equation: {w_prod} != {c * z_prod}")
    gradient = []
    for i in range(m):
        gradient.append(math.prod((w[k] for k in range(m) if k != i), start=Fraction(1)))
    for j in range(n):
        r = shape.r_list[j]
        rest = math.prod(
            (z[l] ** shape.r_list[l] for l in range(n) if l != j), start=Fraction(1)
        )
        gradient.append(-c * r * z[j] ** (r - 1) * rest)
    smooth = any(g != 0 for g in gradient)
    in_w = sum(1 for v in w if v == 0) >= 2
    return SmoothPointReport(smooth, in_w)
