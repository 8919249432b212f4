"""Finitely generated abelian groups and lattice quotient operations.

Groups are stored structurally: free rank plus the chain of invariant
factors (each >= 2, each dividing the next).  Factors equal to 1 are
dropped at construction so equality of the dataclass is equality of
groups.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import InputError, LimitError
from .intmat import (
    IntegerMatrix,
    kernel_basis,
    smith_normal_form,
    snf_diagonal,
    solve_columns,
)


class NonInjectiveDiv(InputError):
    """The divisor map has a kernel, i.e. the units condition fails."""


class OracleTooLarge(LimitError):
    """Brute-force coset enumeration would exceed the configured cell cap."""


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FGAbelianGroup:
    free_rank: int
    invariant_factors: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError("negative free rank")
        factors = tuple(int(d) for d in self.invariant_factors if d != 1)
        for d in factors:
            if d < 2:
                raise InputError(f"invariant factor {d} out of range")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InputError(f"broken divisibility chain {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_cyclic_orders(cls, orders, free_rank: int = 0) -> "FGAbelianGroup":
        """Canonical form of (+) Z/o for o in orders, plus a free part."""
        primary: dict[int, list[int]] = {}
        for o in orders:
            if o < 1:
                raise InputError(f"bad cyclic order {o}")
            for p, e in _factorize(o).items():
                primary.setdefault(p, []).append(e)
        for exps in primary.values():
            exps.sort(reverse=True)
        width = max((len(v) for v in primary.values()), default=0)
        chain = []
        for k in range(width):
            d = 1
            for p, exps in primary.items():
                if k < len(exps):
                    d *= p ** exps[k]
            chain.append(d)
        chain.reverse()
        return cls(free_rank, tuple(chain))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite:
            raise InputError("infinite group has no order")
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def exponent(self) -> int:
        if not self.is_finite:
            raise InputError("infinite group has no exponent")
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "invariant_factors": sorted(self.invariant_factors),
        }


def tensor_finite(a: FGAbelianGroup, b: FGAbelianGroup) -> FGAbelianGroup:
    """Tensor product of two finite groups: (+) Z/gcd(d, e) over factor pairs."""
    if not (a.is_finite and b.is_finite):
        raise InputError("tensor_finite expects finite groups")
    orders = [
        math.gcd(d, e)
        for d in a.invariant_factors
        for e in b.invariant_factors
    ]
    return FGAbelianGroup.from_cyclic_orders(o for o in orders if o > 1)


# -- quotient operations ---------------------------------------------


def cokernel(A: IntegerMatrix) -> FGAbelianGroup:
    """Structure of Z^rows / column-span(A)."""
    diag = snf_diagonal(A)
    return FGAbelianGroup(A.rows - len(diag), tuple(d for d in diag if d > 1))


def cokernel_from_diagonal(rows: int, diag) -> FGAbelianGroup:
    return FGAbelianGroup(rows - len(diag), tuple(d for d in diag if d > 1))


def saturation(A: IntegerMatrix) -> IntegerMatrix:
    """Basis of the smallest saturated sublattice containing colspan(A).

    With U @ A @ V = D, a vector is in the saturation exactly when its
    image under the rows of U past the rank vanishes.
    """
    dec = smith_normal_form(A)
    r = dec.rank
    return kernel_basis(dec.U.take_rows(r, A.rows))


@dataclass(frozen=True)
class TorsionDescentData:
    pic: FGAbelianGroup
    s_hat: FGAbelianGroup
    m_hat: IntegerMatrix
    check: bool


def torsion_descent_data(div: IntegerMatrix) -> TorsionDescentData:
    """Split the cokernel of an injective map into torsion and free data.

    pic is the full cokernel, s_hat its torsion part, m_hat a basis of
    the saturation of the image.  The check flag verifies that
    m_hat / im(div) is isomorphic to s_hat and that the ambient quotient
    by m_hat is torsion free.
    """
    if kernel_basis(div).cols != 0:
        raise NonInjectiveDiv(f"map {div.shape} has nontrivial kernel")
    pic = cokernel(div)
    s_hat = FGAbelianGroup(0, pic.invariant_factors)
    m_hat = saturation(div)
    coords = solve_columns(m_hat, div)
    check = False
    if coords is not None:
        inner = cokernel(coords)
        outer = cokernel(m_hat)
        check = inner == s_hat and not outer.invariant_factors
    return TorsionDescentData(pic=pic, s_hat=s_hat, m_hat=m_hat, check=check)


# -- brute-force oracle ----------------------------------------------

DEFAULT_ORACLE_CELL_CAP = 250_000


def _minor_rank(data: list[list[int]], m: int, n: int) -> tuple[int, int]:
    """(rank, |first nonzero maximal minor|) by determinant enumeration.

    Intentionally independent of the Smith machinery; only usable at
    tiny sizes.
    """

    def det(rows_idx, cols_idx):
        k = len(rows_idx)
        if k == 1:
            return data[rows_idx[0]][cols_idx[0]]
        if k == 2:
            (a, b), (c, d) = (
                (data[rows_idx[0]][cols_idx[0]], data[rows_idx[0]][cols_idx[1]]),
                (data[rows_idx[1]][cols_idx[0]], data[rows_idx[1]][cols_idx[1]]),
            )
            return a * d - b * c
        total = 0
        sign = 1
        for pos, r in enumerate(rows_idx):
            total += sign * data[r][cols_idx[0]] * det(
                tuple(x for x in rows_idx if x != r), cols_idx[1:]
            )
            sign = -sign
        return total

    for k in range(min(m, n), 0, -1):
        for rows_idx in itertools.combinations(range(m), k):
            for cols_idx in itertools.combinations(range(n), k):
                d = det(rows_idx, cols_idx)
                if d:
                    return k, abs(d)
    return 0, 1


def brute_force_cokernel_oracle(
    A: IntegerMatrix, bound: int, *, cell_cap: int = DEFAULT_ORACLE_CELL_CAP
) -> FGAbelianGroup:
    """Cokernel structure by explicit coset enumeration modulo bound.

    bound must be a multiple of the torsion exponent (any nonzero
    maximal minor works).  Free rank comes from minor enumeration and the
    torsion factors from p-power torsion counts in (Z/bound)^rows, so no
    step shares code with the Smith reduction being checked.
    """
    m, n = A.shape
    if m > 3 or n > 3:
        raise InputError("oracle is restricted to dims <= 3")
    data = A.to_lists()
    if any(abs(x) > 3 for row in data for x in row):
        raise InputError("oracle is restricted to entries with |entry| <= 3")
    if bound < 1:
        raise InputError("bound must be positive")
    if m == 0:
        return FGAbelianGroup(0)
    cells = bound**m
    if cells > cell_cap:
        raise OracleTooLarge(f"{cells} cells exceeds cap {cell_cap}")

    r, _ = _minor_rank(data, m, n)
    free = m - r

    gens = [tuple(data[i][j] % bound for i in range(m)) for j in range(n)]
    zero = (0,) * m
    H = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % bound for a, b in zip(x, g))
            if y not in H:
                H.add(y)
                frontier.append(y)

    orders: list[int] = []
    for p, vmax in _factorize(bound).items():
        # s_k = sum_i min(k, e_i) from p^k-torsion counts
        s = [0]
        for k in range(1, vmax + 1):
            d = p**k
            hits = 0
            for x in itertools.product(range(bound), repeat=m):
                if tuple((d * a) % bound for a in x) in H:
                    hits += 1
            torsion_count = hits // len(H)
            c_k = 0
            while torsion_count % p == 0 and torsion_count > 1:
                torsion_count //= p
                c_k += 1
            s.append(c_k - k * free)
        for k in range(1, vmax + 1):
            ge_k = s[k] - s[k - 1]
            ge_next = s[k + 1] - s[k] if k < vmax else 0
            orders.extend([p**k] * (ge_k - ge_next))
    return FGAbelianGroup.from_cyclic_orders(orders, free_rank=free)


def certified_oracle_bound(A: IntegerMatrix) -> int:
    """A multiple of the torsion exponent: |first nonzero maximal minor|.

    The product of the invariant factors divides every nonzero maximal
    minor, so in particular the exponent does.
    """
    m, n = A.shape
    if m == 0 or n == 0:
        return 1
    _, minor = _minor_rank(A.to_lists(), m, n)
    return minor
