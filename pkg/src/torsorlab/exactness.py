"""Presented abelian groups, maps between them, and diagram chases.

A group is presented as Z^ngens modulo the column span of a relation
matrix; a map is a matrix on generators that must carry relations into
relations.  This is enough calculus to state and verify exactness and to
run the six-term kernel/cokernel chase of a commuting ladder.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FGAbelianGroup, cokernel
from .errors import InputError
from .intmat import (
    IntegerMatrix,
    kernel_basis,
    lattice_contains,
    same_column_span,
    solve_columns,
)


class MapNotWellDefined(InputError):
    """The matrix does not send relations into relations."""


class NotExactRow(InputError):
    """A row of the input ladder is not short exact."""


class NonCommutingSquare(InputError):
    """A square of the input ladder fails to commute."""


@dataclass(frozen=True)
class PresentedGroup:
    """Z^ngens modulo the column span of ``relations`` (ngens x k)."""

    ngens: int
    relations: IntegerMatrix

    def __post_init__(self):
        if self.relations.rows != self.ngens:
            raise InputError(
                f"relation matrix has {self.relations.rows} rows for {self.ngens} generators"
            )

    @classmethod
    def free(cls, n: int) -> "PresentedGroup":
        return cls(n, IntegerMatrix.zeros(n, 0))

    def structure(self) -> FGAbelianGroup:
        return cokernel(self.relations)

    def is_trivial(self) -> bool:
        return self.structure().is_trivial


def preimage_generators(M: IntegerMatrix, R: IntegerMatrix) -> IntegerMatrix:
    """Generators of the lattice {x : M x lies in colspan(R)}.

    Computed as the x-block of a kernel basis of [M | R]; the projection
    of a basis generates the projected lattice.
    """
    K = kernel_basis(M.hstack(R))
    return K.take_rows(0, M.cols)


@dataclass(frozen=True)
class GroupHom:
    dom: PresentedGroup
    cod: PresentedGroup
    matrix: IntegerMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.cod.ngens, self.dom.ngens):
            raise InputError(
                f"hom matrix {self.matrix.shape} does not match "
                f"{self.cod.ngens} x {self.dom.ngens}"
            )
        image_of_relations = self.matrix @ self.dom.relations
        if solve_columns(self.cod.relations, image_of_relations) is None:
            raise MapNotWellDefined("matrix does not preserve relations")

    def compose(self, inner: "GroupHom") -> "GroupHom":
        if inner.cod != self.dom:
            raise InputError("homs not composable")
        return GroupHom(inner.dom, self.cod, self.matrix @ inner.matrix)

    def equals(self, other: "GroupHom") -> bool:
        if self.dom != other.dom or self.cod != other.cod:
            return False
        return solve_columns(self.cod.relations, self.matrix - other.matrix) is not None

    # -- derived objects ---------------------------------------------

    def kernel(self) -> tuple[PresentedGroup, "GroupHom"]:
        """The kernel with its inclusion into the domain."""
        gens = preimage_generators(self.matrix, self.cod.relations)
        rels = preimage_generators(gens, self.dom.relations)
        grp = PresentedGroup(gens.cols, rels)
        return grp, GroupHom(grp, self.dom, gens)

    def cokernel_group(self) -> tuple[PresentedGroup, "GroupHom"]:
        """The cokernel with the projection from the codomain."""
        grp = PresentedGroup(self.cod.ngens, self.matrix.hstack(self.cod.relations))
        proj = GroupHom(self.cod, grp, IntegerMatrix.identity(self.cod.ngens))
        return grp, proj

    def is_injective(self) -> bool:
        grp, _ = self.kernel()
        return grp.is_trivial()

    def is_surjective(self) -> bool:
        grp, _ = self.cokernel_group()
        return grp.is_trivial()


def is_exact_pair(f: GroupHom, g: GroupHom) -> bool:
    """Exactness at the middle of dom(f) -> cod(f) = dom(g) -> cod(g)."""
    if f.cod != g.dom:
        raise InputError("maps do not share a middle term")
    image_lattice = f.matrix.hstack(g.dom.relations)
    kernel_lattice = preimage_generators(g.matrix, g.cod.relations)
    return same_column_span(image_lattice, kernel_lattice)


def short_exact_row(M: IntegerMatrix) -> tuple[GroupHom, GroupHom]:
    """The row 0 -> Z^cols -> Z^rows -> coker(M) -> 0 for injective M."""
    A = PresentedGroup.free(M.cols)
    B = PresentedGroup.free(M.rows)
    C = PresentedGroup(M.rows, M)
    f = GroupHom(A, B, M)
    g = GroupHom(B, C, IntegerMatrix.identity(M.rows))
    if not f.is_injective():
        raise NotExactRow("injection map has a kernel")
    return f, g


@dataclass(frozen=True)
class ExactSequenceReport:
    """Six-term output of a snake chase.

    terms are [ker a, ker b, ker c, coker a, coker b, coker c]; maps are
    the five connecting matrices on the presentations used internally;
    exact_at records exactness of 0 -> terms... -> 0 at each term.
    """

    terms: tuple[FGAbelianGroup, ...]
    maps: tuple[IntegerMatrix, ...]
    exact_at: tuple[bool, ...]

    @property
    def all_exact(self) -> bool:
        return all(self.exact_at)


def _check_row(f: GroupHom, g: GroupHom, which: str) -> None:
    if f.cod != g.dom:
        raise NotExactRow(f"{which} row maps do not compose")
    if not f.is_injective():
        raise NotExactRow(f"{which} row is not exact on the left")
    if not is_exact_pair(f, g):
        raise NotExactRow(f"{which} row is not exact in the middle")
    if not g.is_surjective():
        raise NotExactRow(f"{which} row is not exact on the right")


def snake_sequence(
    top: tuple[GroupHom, GroupHom],
    bottom: tuple[GroupHom, GroupHom],
    vertical: tuple[GroupHom, GroupHom, GroupHom],
) -> ExactSequenceReport:
    """Kernel/cokernel six-term sequence of a two-row commuting ladder.

    Rows must be short exact; the three vertical maps must make both
    squares commute.  Exactness of the resulting sequence is verified,
    not assumed, and reported per term.
    """
    f1, g1 = top
    f2, g2 = bottom
    a, b, c = vertical
    _check_row(f1, g1, "top")
    _check_row(f2, g2, "bottom")
    if a.dom != f1.dom or a.cod != f2.dom:
        raise InputError("left vertical map endpoints do not match the rows")
    if b.dom != f1.cod or b.cod != f2.cod:
        raise InputError("middle vertical map endpoints do not match the rows")
    if c.dom != g1.cod or c.cod != g2.cod:
        raise InputError("right vertical map endpoints do not match the rows")
    if not b.compose(f1).equals(f2.compose(a)):
        raise NonCommutingSquare("left square does not commute")
    if not c.compose(g1).equals(g2.compose(b)):
        raise NonCommutingSquare("right square does not commute")

    ker_a, inc_a = a.kernel()
    ker_b, inc_b = b.kernel()
    ker_c, inc_c = c.kernel()
    cok_a, _ = a.cokernel_group()
    cok_b, _ = b.cokernel_group()
    cok_c, _ = c.cokernel_group()

    # induced maps on kernels
    X1 = solve_columns(inc_b.matrix, f1.matrix @ inc_a.matrix)
    X2 = solve_columns(inc_c.matrix, g1.matrix @ inc_b.matrix)
    if X1 is None or X2 is None:
        raise InputError("kernel images failed to land in the next kernel")
    m1 = GroupHom(ker_a, ker_b, X1)
    m2 = GroupHom(ker_b, ker_c, X2)

    # connecting map: lift along g1, push through b, pull back along f2
    lift_domain = g1.matrix.hstack(g1.cod.relations)
    pull_domain = f2.matrix.hstack(f2.cod.relations)
    lifts = solve_columns(lift_domain, inc_c.matrix)
    if lifts is None:
        raise InputError("failed to lift kernel generators along the top row")
    lifted = lifts.take_rows(0, g1.dom.ngens)
    pushed = b.matrix @ lifted
    pulled = solve_columns(pull_domain, pushed)
    if pulled is None:
        raise InputError("failed to pull the connecting image back along the bottom row")
    delta = GroupHom(ker_c, cok_a, pulled.take_rows(0, f2.dom.ngens))

    m4 = GroupHom(cok_a, cok_b, f2.matrix)
    m5 = GroupHom(cok_b, cok_c, g2.matrix)

    exact_at = (
        m1.is_injective(),
        is_exact_pair(m1, m2),
        is_exact_pair(m2, delta),
        is_exact_pair(delta, m4),
        is_exact_pair(m4, m5),
        m5.is_surjective(),
    )
    terms = (
        ker_a.structure(),
        ker_b.structure(),
        ker_c.structure(),
        cok_a.structure(),
        cok_b.structure(),
        cok_c.structure(),
    )
    return ExactSequenceReport(
        terms=terms,
        maps=(m1.matrix, m2.matrix, delta.matrix, m4.matrix, m5.matrix),
        exact_at=exact_at,
    )
