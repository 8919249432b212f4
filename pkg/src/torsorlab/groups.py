"""Finite groups with deterministic numbering, and integral modules over them.

Groups are realized as permutation groups, closed from generators, with
elements numbered by lexicographic order of their permutation tuples.
The identity permutation is lexicographically least among permutations
fixing nothing smaller, so it always receives id 0.  Products act on the
disjoint union of the factors' points, which makes the product numbering
the pair-lexicographic one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import FGAbelianGroup, cokernel
from .errors import InputError, LimitError
from .intmat import IntegerMatrix, is_unimodular


class BadGroupSpec(InputError):
    """Unparseable or malformed group description."""


class OrderLimitExceeded(LimitError):
    """The described group is larger than the configured cap."""


class NotASubgroup(InputError):
    """An element-id set that is not closed under the group operations."""


class NotGStable(InputError):
    """A sublattice not preserved by the module action."""


class TorsionQuotient(InputError):
    """A quotient that would not be a free lattice."""


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication table group; element 0 is the identity."""

    order: int
    mul_table: tuple[tuple[int, ...], ...]
    generator_ids: tuple[int, ...] = ()
    perms: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.mul_table) != n or any(len(r) != n for r in self.mul_table):
            raise InputError("malformed multiplication table")
        t = self.mul_table
        for i in range(n):
            if t[0][i] != i or t[i][0] != i:
                raise InputError("element 0 is not an identity")
        for i in range(n):
            if 0 not in t[i]:
                raise InputError(f"element {i} has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[t[i][j]][k] != t[i][t[j][k]]:
                        raise InputError("multiplication is not associative")

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.mul_table[i].index(0)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.mul_table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(self.order))


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[x] for x in b)


def _close_permutations(gens: list[tuple[int, ...]], cap: int) -> list[tuple[int, ...]]:
    npoints = len(gens[0])
    identity = tuple(range(npoints))
    elems = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = _compose(g, x)
            if y not in elems:
                if len(elems) >= cap:
                    raise OrderLimitExceeded(f"group order exceeds cap {cap}")
                elems.add(y)
                frontier.append(y)
    return sorted(elems)


def group_from_permutations(gens: list[tuple[int, ...]], cap: int = 24) -> FiniteGroup:
    for g in gens:
        if sorted(g) != list(range(len(g))):
            raise BadGroupSpec(f"{g} is not a permutation")
        if len(g) != len(gens[0]):
            raise BadGroupSpec("generators act on different point sets")
    elems = _close_permutations(gens, cap)
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(
        tuple(index[_compose(a, b)] for b in elems) for a in elems
    )
    gen_ids = tuple(sorted({index[g] for g in gens}))
    return FiniteGroup(len(elems), table, gen_ids, tuple(elems))


def _split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def group_from_spec(spec: str, cap: int = 24) -> FiniteGroup:
    """Build a group from `cyclic:m`, `sym:n`, `product:a,b`, or `perm:...`.

    `trivial` abbreviates `cyclic:1`.  Permutation generators are given
    as semicolon-separated image lists like `perm:[1,0,2];[0,2,1]`.
    """
    spec = spec.strip()
    if spec == "trivial":
        return group_from_spec("cyclic:1", cap)
    head, sep, rest = spec.partition(":")
    if not sep:
        raise BadGroupSpec(f"bad group spec {spec!r}")
    if head == "cyclic":
        try:
            m = int(rest)
        except ValueError:
            raise BadGroupSpec(f"bad cyclic order {rest!r}")
        if m < 1:
            raise BadGroupSpec(f"bad cyclic order {m}")
        if m > cap:
            raise OrderLimitExceeded(f"order {m} exceeds cap {cap}")
        if m == 1:
            return group_from_permutations([(0,)], cap)
        cycle = tuple((i + 1) % m for i in range(m))
        return group_from_permutations([cycle], cap)
    if head == "sym":
        try:
            n = int(rest)
        except ValueError:
            raise BadGroupSpec(f"bad symmetric degree {rest!r}")
        if not 1 <= n <= 4:
            raise BadGroupSpec(f"symmetric degree {n} out of range")
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        if fact > cap:
            raise OrderLimitExceeded(f"order {fact} exceeds cap {cap}")
        if n == 1:
            return group_from_permutations([(0,)], cap)
        swap = (1, 0) + tuple(range(2, n))
        cycle = tuple((i + 1) % n for i in range(n))
        return group_from_permutations([swap, cycle], cap)
    if head == "product":
        parts = _split_top_level(rest, ",")
        # the second factor may itself be a product, so commas past the
        # first rejoin into it
        if len(parts) < 2:
            raise BadGroupSpec("product needs two factors")
        g1 = group_from_spec(parts[0], cap)
        g2 = group_from_spec(",".join(parts[1:]), cap)
        if g1.order * g2.order > cap:
            raise OrderLimitExceeded(
                f"order {g1.order * g2.order} exceeds cap {cap}"
            )
        return direct_product(g1, g2, cap)
    if head == "perm":
        gens = []
        for chunk in rest.split(";"):
            chunk = chunk.strip()
            if not (chunk.startswith("[") and chunk.endswith("]")):
                raise BadGroupSpec(f"bad permutation chunk {chunk!r}")
            body = chunk[1:-1].strip()
            try:
                images = tuple(int(x) for x in body.split(",")) if body else ()
            except ValueError:
                raise BadGroupSpec(f"bad permutation chunk {chunk!r}")
            if not images:
                raise BadGroupSpec("empty permutation")
            gens.append(images)
        return group_from_permutations(gens, cap)
    raise BadGroupSpec(f"unknown group kind {head!r}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup, cap: int = 24) -> FiniteGroup:
    """Product with pair-lexicographic numbering (i1, i2) -> i1*|G2| + i2."""
    o1, o2 = g1.order, g2.order
    if o1 * o2 > cap:
        raise OrderLimitExceeded(f"order {o1 * o2} exceeds cap {cap}")
    order = o1 * o2
    table = tuple(
        tuple(
            g1.mul(a // o2, b // o2) * o2 + g2.mul(a % o2, b % o2)
            for b in range(order)
        )
        for a in range(order)
    )
    gens = tuple(sorted({i * o2 for i in g1.generator_ids} | set(g2.generator_ids)))
    return FiniteGroup(order, table, gens)


def factor_subgroup_ids(g1: FiniteGroup, g2: FiniteGroup) -> tuple[list[int], list[int]]:
    """Ids of G1 x {e} and {e} x G2 inside the product numbering."""
    return [i * g2.order for i in range(g1.order)], list(range(g2.order))


def check_subgroup(G: FiniteGroup, ids) -> list[int]:
    seen = sorted(set(ids))
    if not seen or seen[0] != 0:
        raise NotASubgroup("subgroup must contain the identity 0")
    members = set(seen)
    for a in seen:
        if not 0 <= a < G.order:
            raise NotASubgroup(f"element id {a} out of range")
        if G.inv(a) not in members:
            raise NotASubgroup(f"inverse of {a} missing")
        for b in seen:
            if G.mul(a, b) not in members:
                raise NotASubgroup(f"product {a}*{b} escapes the set")
    return seen


def subgroup_as_group(G: FiniteGroup, ids) -> FiniteGroup:
    """The subgroup on the given ids, renumbered by increasing id."""
    seen = check_subgroup(G, ids)
    index = {a: i for i, a in enumerate(seen)}
    table = tuple(tuple(index[G.mul(a, b)] for b in seen) for a in seen)
    return FiniteGroup(len(seen), table)


def commutator_subgroup(G: FiniteGroup) -> list[int]:
    """Ids of the derived subgroup, closed from all commutators."""
    comms = set()
    for a in range(G.order):
        for b in range(G.order):
            c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
            comms.add(c)
    members = set(comms) | {0}
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for y in list(comms):
            z = G.mul(x, y)
            if z not in members:
                members.add(z)
                frontier.append(z)
    return sorted(members)


def abelianization(G: FiniteGroup) -> FGAbelianGroup:
    """G made abelian, as the cokernel of the relation matrix x_a + x_b - x_ab."""
    n = G.order
    cols = []
    for a in range(n):
        for b in range(n):
            col = [0] * n
            col[a] += 1
            col[b] += 1
            col[G.mul(a, b)] -= 1
            cols.append(col)
    return cokernel(IntegerMatrix.from_columns(cols, rows=n))


# -- modules ---------------------------------------------------------


@dataclass(frozen=True)
class GModule:
    """Free Z-module with a G-action by unimodular matrices."""

    group: FiniteGroup
    rank: int
    action: tuple[IntegerMatrix, ...]

    def __post_init__(self):
        G = self.group
        if len(self.action) != G.order:
            raise InputError("one action matrix per group element required")
        for mat in self.action:
            if mat.shape != (self.rank, self.rank):
                raise InputError("action matrix has wrong shape")
            if not is_unimodular(mat):
                raise InputError("action matrix is not unimodular")
        if self.action[0] != IntegerMatrix.identity(self.rank):
            raise InputError("identity must act trivially")
        for a in range(G.order):
            for b in range(G.order):
                if self.action[a] @ self.action[b] != self.action[G.mul(a, b)]:
                    raise InputError(f"action fails to be a homomorphism at ({a},{b})")

    def act(self, g: int) -> IntegerMatrix:
        return self.action[g]


def trivial_module(G: FiniteGroup, rank: int = 1) -> GModule:
    eye = IntegerMatrix.identity(rank)
    return GModule(G, rank, tuple(eye for _ in range(G.order)))


def one_dim_module(G: FiniteGroup, values) -> GModule:
    """Rank-1 module where element i acts by values[i] in {1, -1}."""
    vals = list(values)
    if len(vals) != G.order or any(v not in (1, -1) for v in vals):
        raise InputError("need one value in {1,-1} per element")
    return GModule(G, 1, tuple(IntegerMatrix([[v]]) for v in vals))


def induced_module(G: FiniteGroup, H_ids) -> GModule:
    """The coset permutation module Z[G/H]; rank is the index of H."""
    H = check_subgroup(G, H_ids)
    assigned: dict[int, int] = {}
    cosets: list[list[int]] = []
    for g in range(G.order):
        if g in assigned:
            continue
        coset = sorted(G.mul(g, h) for h in H)
        idx = len(cosets)
        cosets.append(coset)
        for x in coset:
            assigned[x] = idx
    r = len(cosets)
    mats = []
    for g in range(G.order):
        cols = []
        for c in range(r):
            target = assigned[G.mul(g, cosets[c][0])]
            col = [0] * r
            col[target] = 1
            cols.append(col)
        mats.append(IntegerMatrix.from_columns(cols, rows=r))
    return GModule(G, r, tuple(mats))


def direct_sum(p: GModule, q: GModule) -> GModule:
    if p.group != q.group:
        raise InputError("modules over different groups")
    r = p.rank + q.rank
    mats = []
    for g in range(p.group.order):
        a, b = p.action[g], q.action[g]
        rows = []
        for i in range(p.rank):
            rows.append(list(a.row(i)) + [0] * q.rank)
        for i in range(q.rank):
            rows.append([0] * p.rank + list(b.row(i)))
        mats.append(IntegerMatrix(rows))
    return GModule(p.group, r, tuple(mats))


def quotient_module(B: GModule, A: IntegerMatrix) -> tuple[GModule, IntegerMatrix]:
    """Quotient of B by the G-stable sublattice spanned by the columns of A.

    Returns the quotient module on a complement basis together with the
    projection matrix from B coordinates to quotient coordinates.
    """
    from .intmat import lattice_contains, smith_normal_form, solve_columns

    if A.rows != B.rank:
        raise InputError(f"sublattice basis has {A.rows} rows, expected {B.rank}")
    for g in range(B.group.order):
        if not lattice_contains(A, B.action[g] @ A):
            raise NotGStable(f"element {g} moves the sublattice")
    dec = smith_normal_form(A)
    r = dec.rank
    if any(d != 1 for d in dec.diagonal[:r]):
        raise TorsionQuotient(f"invariant factors {dec.diagonal[:r]} leave torsion")
    proj = dec.U.take_rows(r, B.rank)
    uinv = solve_columns(dec.U, IntegerMatrix.identity(B.rank))
    lift = uinv.take_columns(r, B.rank)
    mats = tuple(proj @ B.action[g] @ lift for g in range(B.group.order))
    quotient = GModule(B.group, B.rank - r, mats)
    return quotient, proj
