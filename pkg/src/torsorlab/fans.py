"""Simplicial fans, ray/divisor lattices, and the Cox quotient data.

A fan is stored combinatorially: primitive ray vectors plus the ray
index sets of its maximal cones.  The geometry enters through three
matrices: the ray matrix (characters to divisors), its Smith reduction
(class group and the saturation splitting), and the Cox map sending the
coordinate ray of each divisor back to the ray it covers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import FGAbelianGroup, NonInjectiveDiv, cokernel, saturation
from .errors import InputError
from .intmat import (
    IntegerMatrix,
    is_unimodular,
    kernel_basis,
    rank,
    smith_normal_form,
    snf_diagonal,
    solve_columns,
)


class ParseError(InputError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonPrimitiveRay(InputError):
    """A ray vector whose coordinates have gcd != 1."""


class DependentConeRays(InputError):
    """A cone whose ray vectors are linearly dependent."""


class BadGaloisAction(InputError):
    """A lattice matrix that fails to permute the rays."""


class FanDoesNotSpan(InputError):
    """Rays do not span the ambient space, so the class group sequence breaks."""


class MissingGaloisAction(InputError):
    """The operation needs Galois data the fan does not carry."""


def _permutation_matrix(perm: tuple[int, ...]) -> IntegerMatrix:
    n = len(perm)
    cols = []
    for j in range(n):
        col = [0] * n
        col[perm[j]] = 1
        cols.append(col)
    return IntegerMatrix.from_columns(cols, rows=n)


@dataclass(frozen=True)
class GaloisFanAction:
    """Unimodular lattice matrices together with the ray permutations they induce."""

    generators: tuple[tuple[IntegerMatrix, tuple[int, ...]], ...]

    @classmethod
    def from_matrices(cls, rays, matrices) -> "GaloisFanAction":
        ray_index = {tuple(u): i for i, u in enumerate(rays)}
        gens = []
        for mat in matrices:
            if not is_unimodular(mat):
                raise BadGaloisAction(f"lattice matrix {mat.to_lists()} is not unimodular")
            perm = []
            for i, u in enumerate(rays):
                image = tuple((mat @ IntegerMatrix.column(u)).column_tuple(0))
                if image not in ray_index:
                    raise BadGaloisAction(f"ray {i} maps to {image}, not a ray")
                perm.append(ray_index[image])
            gens.append((mat, tuple(perm)))
        return cls(tuple(gens))


@dataclass(frozen=True)
class Fan:
    """Fan given by primitive rays and simplicial maximal cones.

    Face closure and completeness are taken on trust; primitivity, cone
    independence, and ray coverage are enforced.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    cones: tuple[tuple[int, ...], ...]
    galois: GaloisFanAction | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"ambient rank {self.rank} out of range")
        covered = set()
        for u in self.rays:
            if len(u) != self.rank:
                raise InputError(f"ray {u} has wrong length for rank {self.rank}")
            if math.gcd(*u) != 1:
                raise NonPrimitiveRay(f"ray {u} is not primitive")
        for cone in self.cones:
            for i in cone:
                if not 0 <= i < len(self.rays):
                    raise InputError(f"cone {cone} references missing ray {i}")
                covered.add(i)
            mat = IntegerMatrix([list(self.rays[i]) for i in cone])
            if rank(mat) != len(cone):
                raise DependentConeRays(f"cone {cone} has dependent rays")
        missing = sorted(set(range(len(self.rays))) - covered)
        if missing:
            raise InputError(f"rays {missing} belong to no cone")


def parse_fan(text: str) -> Fan:
    """Read the line-oriented fan format.

    `rank n` first, then `ray ...` / `cone ...` / optional `action ...`
    lines; '#' starts a comment.
    """
    rank_val = None
    rays: list[tuple[int, ...]] = []
    cones: list[tuple[int, ...]] = []
    action_mats: list[IntegerMatrix] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword, args = fields[0], fields[1:]
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise ParseError(lineno, f"non-integer argument in {raw.strip()!r}")
        if keyword == "rank":
            if rank_val is not None:
                raise ParseError(lineno, "duplicate rank line")
            if rays or cones or action_mats:
                raise ParseError(lineno, "rank must come first")
            if len(values) != 1:
                raise ParseError(lineno, "rank takes one integer")
            rank_val = values[0]
            continue
        if rank_val is None:
            raise ParseError(lineno, "rank line must come first")
        if keyword == "ray":
            if len(values) != rank_val:
                raise ParseError(lineno, f"expected {rank_val} coordinates")
            rays.append(tuple(values))
        elif keyword == "cone":
            if not values:
                raise ParseError(lineno, "empty cone line")
            cones.append(tuple(sorted(values)))
        elif keyword == "action":
            if len(values) != rank_val * rank_val:
                raise ParseError(lineno, f"expected {rank_val * rank_val} matrix entries")
            rows = [values[i * rank_val : (i + 1) * rank_val] for i in range(rank_val)]
            action_mats.append(IntegerMatrix(rows))
        else:
            raise ParseError(lineno, f"unknown directive {keyword!r}")
    if rank_val is None:
        raise ParseError(1, "missing rank line")
    galois = GaloisFanAction.from_matrices(rays, action_mats) if action_mats else None
    return Fan(rank_val, tuple(rays), tuple(cones), galois)


def ray_matrix(fan: Fan) -> IntegerMatrix:
    return IntegerMatrix([list(u) for u in fan.rays])


def divisor_map(fan: Fan) -> IntegerMatrix:
    """The (#rays x rank) matrix of the character-to-divisor map; row p is u_p."""
    return ray_matrix(fan)


def spans_ambient(fan: Fan) -> bool:
    return rank(ray_matrix(fan)) == fan.rank


def is_smooth_fan(fan: Fan) -> bool:
    """Every cone's rays extend to a basis: all invariant factors are 1."""
    for cone in fan.cones:
        mat = IntegerMatrix([list(fan.rays[i]) for i in cone])
        if any(d != 1 for d in snf_diagonal(mat)):
            return False
    return True


def class_group(fan: Fan) -> FGAbelianGroup:
    if not spans_ambient(fan):
        raise FanDoesNotSpan("rays do not span the ambient space")
    return cokernel(divisor_map(fan))


@dataclass(frozen=True)
class CoxData:
    tilde_rank: int
    g_tilde: IntegerMatrix
    subfan_C_prime: Fan
    ray_image_certificate: tuple[bool, ...]


def cox_construction(fan: Fan) -> CoxData:
    """Coordinate-ray data of the quotient presentation.

    g_tilde sends the coordinate ray attached to each divisor to the ray
    it sits over; the certificate re-checks that each image is exactly
    the primitive generator.
    """
    if not spans_ambient(fan):
        raise FanDoesNotSpan("rays do not span the ambient space")
    n = len(fan.rays)
    g_tilde = ray_matrix(fan).transpose()
    coordinate_rays = tuple(
        tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
    )
    subfan = Fan(n, coordinate_rays, tuple((i,) for i in range(n)))
    certificate = []
    for i in range(n):
        image = tuple(g_tilde[r, i] for r in range(fan.rank))
        certificate.append(image == fan.rays[i] and math.gcd(*image) == 1)
    return CoxData(n, g_tilde, subfan, tuple(certificate))


def split_divisor_lattice(
    div: IntegerMatrix,
) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix, bool]:
    """Split the divisor lattice along the saturation of the character image.

    Returns (M1_basis, M2_basis, d, finite_cokernel): M1 is the
    saturation of the image, M2 a complement, and d the character map in
    M1 coordinates; its cokernel is the torsion of the class group.
    """
    if kernel_basis(div).cols != 0:
        raise NonInjectiveDiv(f"divisor map {div.shape} has a kernel")
    dec = smith_normal_form(div)
    r = dec.rank
    m1 = saturation(div)
    m2 = kernel_basis(dec.U.take_rows(0, r))
    d = solve_columns(m1, div)
    if d is None:
        raise InputError("image does not lie in its saturation")
    finite = rank(d) == div.cols
    return m1, m2, d, finite


def orbit_permutation_structure(fan: Fan) -> list[int]:
    """Ray orbit sizes under the Galois permutations, ordered by least ray index."""
    if fan.galois is None:
        raise MissingGaloisAction("fan carries no Galois action")
    n = len(fan.rays)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, perm in fan.galois.generators:
        for i in range(n):
            a, b = find(i), find(perm[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for i in range(n):
        orbits.setdefault(find(i), []).append(i)
    return [len(orbits[root]) for root in sorted(orbits)]


def galois_intertwining_holds(fan: Fan) -> bool:
    """Entrywise check that each lattice matrix permutes ray columns as claimed."""
    if fan.galois is None:
        raise MissingGaloisAction("fan carries no Galois action")
    cols = ray_matrix(fan).transpose()
    for mat, perm in fan.galois.generators:
        if mat @ cols != cols @ _permutation_matrix(perm):
            return False
    return True
