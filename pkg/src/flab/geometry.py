"""Linear and affine geometry in F_q^n: RREF, subspaces, flats, counting.

Subspaces are kept canonical as reduced-row-echelon bases, flats as a
direction subspace plus the unique coset representative with zeros in the
pivot coordinates.  All enumeration orders are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BadRange, BudgetExceeded, DimensionMismatch, EmptyInput

DEFAULT_BUDGET = 10_000_000

Point = tuple[int, ...]


def qbinomial(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient, exact product formula."""
    if k < 0 or k > n:
        raise BadRange(f"k = {k} outside [0, {n}]")
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref(F, rows: Iterable[Sequence[int]]) -> tuple[tuple[Point, ...], int]:
    """Reduced row echelon form over the field F; returns (rows, rank).

    Zero rows are dropped from the result.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return (), 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = F.inv(mat[rank][col])
        if inv != 1:
            mat[rank] = [F.mul(inv, x) for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [F.sub(x, F.mul(c, y))
                          for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return tuple(tuple(r) for r in mat[:rank]), rank


def pivot_columns(basis: Sequence[Point]) -> tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(row) if x != 0) for row in basis)


@dataclass(frozen=True)
class Subspace:
    """Rank-k subspace of F_q^n with an RREF basis (canonical)."""

    n: int
    k: int
    basis: tuple[Point, ...]

    @classmethod
    def from_vectors(cls, F, n: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        b, r = rref(F, vectors)
        return cls(n=n, k=r, basis=b)

    def pivots(self) -> tuple[int, ...]:
        return pivot_columns(self.basis)

    def contains(self, F, v: Sequence[int]) -> bool:
        return all(x == 0 for x in reduce_mod_subspace(F, v, self))


def reduce_mod_subspace(F, v: Sequence[int], sub: Subspace) -> Point:
    """Canonical coset representative of v modulo sub (pivot coords zeroed)."""
    w = list(v)
    for row, piv in zip(sub.basis, sub.pivots()):
        c = w[piv]
        if c != 0:
            w = [F.sub(x, F.mul(c, y)) for x, y in zip(w, row)]
    return tuple(w)


@dataclass(frozen=True)
class Flat:
    """k-flat: translate of a rank-k subspace, canonical shift."""

    direction: Subspace
    shift: Point

    @classmethod
    def through(cls, F, direction: Subspace, point: Sequence[int]) -> "Flat":
        return cls(direction, reduce_mod_subspace(F, point, direction))

    def contains(self, F, p: Sequence[int]) -> bool:
        diff = tuple(F.sub(a, b) for a, b in zip(p, self.shift))
        return self.direction.contains(F, diff)


def flat_contains_flat(F, inner: Flat, outer: Flat) -> bool:
    """inner ⊆ outer: direction containment plus shift congruence."""
    if inner.direction.k > outer.direction.k:
        return False
    for row in inner.direction.basis:
        if not outer.direction.contains(F, row):
            return False
    diff = tuple(F.sub(a, b) for a, b in zip(inner.shift, outer.shift))
    return outer.direction.contains(F, diff)


def subspace_intersection(F, a: Subspace, b: Subspace) -> Subspace:
    """Intersection via kernel of the stacked dual description.

    Computed as the null space of the matrix whose rows span the duals;
    equivalently: solve for coefficient vectors (x, y) with x·A = y·B.
    """
    n = a.n
    if b.n != n:
        raise DimensionMismatch("ambient dimensions differ")
    # Zassenhaus-style: row reduce [A|A; B|0]; rows with zero left block give
    # the intersection in the right block.
    rows = [list(r) + list(r) for r in a.basis]
    rows += [list(r) + [0] * n for r in b.basis]
    red, _ = rref(F, rows)
    inter = [r[n:] for r in red if all(x == 0 for x in r[:n])]
    return Subspace.from_vectors(F, n, inter)


def enumerate_subspaces(F, n: int, k: int,
                        budget: int = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """All rank-k subspaces, one per RREF basis, deterministic order.

    Order: lexicographic on the pivot-column set, then on the free entries.
    """
    if k < 0 or k > n:
        raise BadRange(f"k = {k} outside [0, {n}]")
    total = qbinomial(n, k, F.q)
    if total > budget:
        raise BudgetExceeded(f"{total} subspaces exceed budget {budget}")
    if k == 0:
        yield Subspace(n=n, k=0, basis=())
        return
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n)
                if j not in pivots]
        for vals in itertools.product(F.elements(), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield Subspace(n=n, k=k, basis=tuple(tuple(r) for r in rows))


def enumerate_cosets(F, sub: Subspace,
                     budget: int = DEFAULT_BUDGET) -> Iterator[Point]:
    """Canonical shifts of all cosets of sub (zeros in pivot columns)."""
    n = sub.n
    pivots = set(sub.pivots())
    freecols = [j for j in range(n) if j not in pivots]
    if F.q ** len(freecols) > budget:
        raise BudgetExceeded("coset enumeration exceeds budget")
    for vals in itertools.product(F.elements(), repeat=len(freecols)):
        shift = [0] * n
        for j, v in zip(freecols, vals):
            shift[j] = v
        yield tuple(shift)


def enumerate_flats(F, n: int, k: int,
                    budget: int = DEFAULT_BUDGET) -> Iterator[Flat]:
    total = q_flat_count(F.q, n, k)
    if total > budget:
        raise BudgetExceeded(f"{total} flats exceed budget {budget}")
    for sub in enumerate_subspaces(F, n, k, budget=budget):
        for shift in enumerate_cosets(F, sub, budget=budget):
            yield Flat(sub, shift)


def q_flat_count(q: int, n: int, k: int) -> int:
    return q ** (n - k) * qbinomial(n, k, q)


def span(F, points: Iterable[Sequence[int]]) -> Flat:
    """Affine span: the smallest flat containing the given points."""
    pts = sorted(tuple(p) for p in points)
    if not pts:
        raise EmptyInput("span of the empty set")
    p0 = pts[0]
    diffs = [[F.sub(a, b) for a, b in zip(p, p0)] for p in pts[1:]]
    direction = Subspace.from_vectors(F, len(p0), diffs)
    return Flat.through(F, direction, p0)


def flat_points(F, flat: Flat, budget: int = DEFAULT_BUDGET) -> list[Point]:
    """All q^k points of the flat, deterministic order."""
    k = flat.direction.k
    if F.q ** k > budget:
        raise BudgetExceeded("flat point expansion exceeds budget")
    out = []
    for coeffs in itertools.product(F.elements(), repeat=k):
        p = list(flat.shift)
        for c, row in zip(coeffs, flat.direction.basis):
            if c:
                p = [F.add(x, F.mul(c, y)) for x, y in zip(p, row)]
        out.append(tuple(p))
    return out


def all_points(F, n: int) -> list[Point]:
    """All points of F_q^n in lexicographic order."""
    return list(itertools.product(F.elements(), repeat=n))


@dataclass(frozen=True)
class PointSet:
    """Deduplicated point set with its ambient (field, dimension)."""

    field: object
    n: int
    points: frozenset[Point]

    @classmethod
    def of(cls, F, n: int, pts: Iterable[Sequence[int]]) -> "PointSet":
        frozen = frozenset(tuple(p) for p in pts)
        for p in frozen:
            if len(p) != n:
                raise DimensionMismatch(f"point {p} is not {n}-dimensional")
        return cls(field=F, n=n, points=frozen)

    def __len__(self) -> int:
        return len(self.points)

    def sorted(self) -> list[Point]:
        return sorted(self.points)
