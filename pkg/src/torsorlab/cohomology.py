"""Group cohomology of integral modules, degrees 0 through 3.

The workhorse is the normalized bar resolution: cochains are functions
on tuples of non-identity elements, so C^n has dimension (|G|-1)^n times
the module rank.  H^n needs two coboundary matrices.  Torsion comes from
the exact Smith form of the incoming one; the free rank needs only the
rank of the outgoing one, which for large matrices is found modulo a
big prime and certified against the exact complex bookkeeping, since
kernels of integer matrices are saturated.

A 2-periodic resolution for cyclic groups provides an independent oracle
sharing no code with the bar side.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .abelian import FGAbelianGroup, cokernel, tensor_finite
from .errors import InputError, LimitError
from .groups import (
    FiniteGroup,
    GModule,
    abelianization,
    check_subgroup,
    direct_product,
    direct_sum,
    factor_subgroup_ids,
    induced_module,
    quotient_module,
    subgroup_as_group,
    trivial_module,
)
from .intmat import IntegerMatrix, kernel_basis, snf_diagonal, solve_columns
from .limits import DEFAULT_COCHAIN_DIM_CAP

# cells of the larger coboundary matrix we are willing to materialize,
# and the threshold below which its rank is taken from an exact Smith form
MATRIX_CELL_CAP = 25_000_000
EXACT_RANK_CELL_CAP = 400_000

_RANK_PRIMES = (2147483647, 2147483629, 2147483587)


class NotCyclic(InputError):
    """The oracle only speaks cyclic groups in power numbering."""


class SizeLimitExceeded(LimitError):
    """A cochain space or coboundary matrix above the configured cap."""


@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    group: FGAbelianGroup
    method: str


def _tuple_index(s: tuple[int, ...], q: int) -> int:
    idx = 0
    for a in s:
        idx = idx * q + (a - 1)
    return idx


def coboundary_matrix(G: FiniteGroup, M: GModule, n: int) -> np.ndarray:
    """The map C^n -> C^{n+1} on normalized bar cochains, as int64 rows.

    Row index runs over (tuple of n+1 non-identity elements, coordinate);
    the alternating-sum terms whose merged entry hits the identity are
    dropped, which is exactly the normalization.
    """
    if n < 0:
        raise InputError("negative degree")
    order, r = G.order, M.rank
    q = order - 1
    rows = (q ** (n + 1)) * r
    cols = (q**n) * r
    if rows * cols > MATRIX_CELL_CAP:
        raise SizeLimitExceeded(
            f"coboundary matrix {rows} x {cols} exceeds {MATRIX_CELL_CAP} cells"
        )
    mat = np.zeros((rows, cols), dtype=np.int64)
    if q == 0:
        return mat
    acts = [M.action[g].to_lists() for g in range(order)]
    for u in itertools.product(range(1, order), repeat=n + 1):
        row_base = _tuple_index(u, q) * r
        act = acts[u[0]]
        tail_base = _tuple_index(u[1:], q) * r
        for tt in range(r):
            row = mat[row_base + tt]
            arow = act[tt]
            for t in range(r):
                if arow[t]:
                    row[tail_base + t] += arow[t]
        sign = 1
        for i in range(1, n + 1):
            sign = -sign
            merged = G.mul(u[i - 1], u[i])
            if merged == 0:
                continue
            s = u[: i - 1] + (merged,) + u[i + 1 :]
            col_base = _tuple_index(s, q) * r
            for t in range(r):
                mat[row_base + t, col_base + t] += sign
        sign = -sign
        head_base = _tuple_index(u[:-1], q) * r
        for t in range(r):
            mat[row_base + t, head_base + t] += sign
    return mat


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    A = np.mod(mat, p)
    m, n = A.shape
    r = 0
    for col in range(n):
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, col]), p - 2, p)
        A[r, col:] = (A[r, col:] * inv) % p
        below = np.nonzero(A[r + 1 :, col])[0] + r + 1
        if below.size:
            factors = A[below, col][:, None]
            A[below, col:] = (A[below, col:] - factors * A[r, col:][None, :]) % p
        r += 1
        if r == m:
            break
    return r


def _certified_rank(mat: np.ndarray, upper: int) -> int:
    """Exact rank of an integer matrix known (from d d = 0 bookkeeping) to
    be at most `upper`.

    A modular rank never exceeds the rational one, so hitting the upper
    bound certifies it.  Small matrices go straight to the Smith form.
    """
    if mat.size <= EXACT_RANK_CELL_CAP:
        return len(snf_diagonal(mat))
    for p in _RANK_PRIMES:
        if _rank_mod_p(mat, p) == upper:
            return upper
    return len(snf_diagonal(mat))


def bar_cohomology(
    G: FiniteGroup, M: GModule, n: int, *, cochain_cap: int = DEFAULT_COCHAIN_DIM_CAP
) -> CohomologyResult:
    """H^n(G, M) for n in 0..3 from the normalized bar resolution."""
    if not 0 <= n <= 3:
        raise InputError(f"degree {n} out of the supported range 0..3")
    if M.group != G:
        raise InputError("module is over a different group")
    if G.order**n * M.rank > cochain_cap:
        raise SizeLimitExceeded(
            f"cochain dimension {G.order ** n * M.rank} exceeds cap {cochain_cap}"
        )
    r = M.rank
    q = G.order - 1
    if n == 0:
        d0 = coboundary_matrix(G, M, 0)
        free = r - len(snf_diagonal(d0))
        return CohomologyResult(0, FGAbelianGroup(free), "bar")
    d_in = coboundary_matrix(G, M, n - 1)
    d_out = coboundary_matrix(G, M, n)
    if not np.array_equal(d_out @ d_in, np.zeros((d_out.shape[0], d_in.shape[1]), dtype=np.int64)):
        raise InputError("coboundary composition is nonzero; module action inconsistent")
    diag_in = snf_diagonal(d_in)
    rank_in = len(diag_in)
    c_n = (q**n) * r
    rank_out = _certified_rank(d_out, c_n - rank_in)
    free = c_n - rank_out - rank_in
    torsion = tuple(d for d in diag_in if d > 1)
    group = FGAbelianGroup(free, torsion)
    if group.free_rank == 0 and group.invariant_factors and G.order % group.exponent():
        raise InputError("cohomology exponent fails to divide the group order")
    return CohomologyResult(n, group, "bar")


def cyclic_cohomology_oracle(m: int, M: GModule, n: int) -> CohomologyResult:
    """H^n over cyclic:m from the 2-periodic resolution.

    Independent of the bar machinery: only kernels, solves, and
    cokernels of the norm and augmentation maps appear.
    """
    if not 0 <= n <= 3:
        raise InputError(f"degree {n} out of the supported range 0..3")
    G = M.group
    if G.order != m:
        raise NotCyclic(f"module group has order {G.order}, not {m}")
    for k in range(m):
        if G.mul(1 % m, k) != (k + 1) % m:
            raise NotCyclic("group is not cyclic in power numbering")
    r = M.rank
    if m == 1:
        group = FGAbelianGroup(r) if n == 0 else FGAbelianGroup(0)
        return CohomologyResult(n, group, "cyclic-periodic")
    t = M.action[1]
    eye = IntegerMatrix.identity(r)
    t_minus_1 = t - eye
    norm_rows = [[0] * r for _ in range(r)]
    for g in range(m):
        mat = M.action[g]
        for i in range(r):
            for j in range(r):
                norm_rows[i][j] += mat[i, j]
    norm = IntegerMatrix(norm_rows)
    if n == 0:
        fixed = kernel_basis(t_minus_1)
        return CohomologyResult(0, FGAbelianGroup(fixed.cols), "cyclic-periodic")
    if n % 2 == 0:
        lattice = kernel_basis(t_minus_1)
        image = norm
    else:
        lattice = kernel_basis(norm)
        image = t_minus_1
    coords = solve_columns(lattice, image)
    if coords is None:
        raise InputError("periodic resolution image escapes its kernel lattice")
    group = cokernel(coords)
    return CohomologyResult(n, group, "cyclic-periodic")


def restrict_module(M: GModule, H_ids) -> GModule:
    """The same lattice viewed over the subgroup on the given ids."""
    ids = check_subgroup(M.group, H_ids)
    H = subgroup_as_group(M.group, ids)
    return GModule(H, M.rank, tuple(M.action[g] for g in ids))


def restriction_cochain_matrix(G: FiniteGroup, H_ids, M: GModule, n: int) -> IntegerMatrix:
    """Cochain restriction C^n(G, M) -> C^n(H, M), a chain map.

    Rows are H-side basis vectors; each picks out the G-side cochain
    value on the same element tuple.
    """
    ids = check_subgroup(G, H_ids)
    r = M.rank
    qG = G.order - 1
    ne_H = [g for g in ids if g != 0]
    qH = len(ne_H)
    rows = (qH**n) * r
    cols = (qG**n) * r
    mat = [[0] * cols for _ in range(rows)]
    for s_h in itertools.product(range(1, qH + 1), repeat=n):
        g_tuple = tuple(ne_H[a - 1] for a in s_h)
        row_base = _tuple_index(s_h, qH) * r
        col_base = _tuple_index(g_tuple, qG) * r
        for t in range(r):
            mat[row_base + t][col_base + t] = 1
    return IntegerMatrix(mat)


def shapiro_check(G: FiniteGroup, H_ids, i: int, *, cochain_cap: int = DEFAULT_COCHAIN_DIM_CAP) -> bool:
    """Compare H^i(G, Z[G/H]) with H^i(H, Z) as abstract groups."""
    ids = check_subgroup(G, H_ids)
    induced = induced_module(G, ids)
    H = subgroup_as_group(G, ids)
    left = bar_cohomology(G, induced, i, cochain_cap=cochain_cap)
    right = bar_cohomology(H, trivial_module(H), i, cochain_cap=cochain_cap)
    return left.group == right.group


@dataclass(frozen=True)
class BinormReport:
    h2: FGAbelianGroup
    vanishing_predicted: bool
    kunneth_prediction: FGAbelianGroup
    agree: bool
    h3_product_law: bool | None = None


def binorm_brauer_quotient(
    G1: FiniteGroup,
    G2: FiniteGroup,
    *,
    group_cap: int = 24,
    cochain_cap: int = DEFAULT_COCHAIN_DIM_CAP,
    check_degree3: bool = False,
) -> BinormReport:
    """The Brauer quotient of a product of two norm-one tori.

    Builds the character module as the quotient of Z[G1] (+) Z[G2] by the
    diagonal line, takes H^2 of the product group, and compares with the
    tensor prediction from the abelianizations.  Vanishing is predicted
    exactly when the abelianization orders are coprime.
    """
    G = direct_product(G1, G2, cap=group_cap)
    f1_ids, f2_ids = factor_subgroup_ids(G1, G2)
    div = direct_sum(induced_module(G, f2_ids), induced_module(G, f1_ids))
    ones = IntegerMatrix.column([1] * div.rank)
    t_hat, _ = quotient_module(div, ones)
    h2 = bar_cohomology(G, t_hat, 2, cochain_cap=cochain_cap).group
    ab1 = abelianization(G1)
    ab2 = abelianization(G2)
    predicted = math.gcd(ab1.order(), ab2.order()) == 1
    kunneth = tensor_finite(ab1, ab2)
    agree = h2 == kunneth
    h3_law = None
    if check_degree3:
        h3 = bar_cohomology(G, trivial_module(G), 3, cochain_cap=cochain_cap).group
        h3_1 = bar_cohomology(G1, trivial_module(G1), 3, cochain_cap=cochain_cap).group
        h3_2 = bar_cohomology(G2, trivial_module(G2), 3, cochain_cap=cochain_cap).group
        h3_law = h3.order() == h3_1.order() * h3_2.order() * kunneth.order()
    return BinormReport(h2, predicted, kunneth, agree, h3_law)
