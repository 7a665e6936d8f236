"""Sparse multivariate polynomials over F_q with Hasse derivatives.

Supports multiplicity queries, line restrictions, homogeneous parts, the
Schwartz-Zippel multiplicity audit, and interpolation of polynomials that
vanish with prescribed multiplicities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ZeroDirection, ZeroPolynomial
from .geometry import rref

Expo = tuple[int, ...]

INFINITE = math.inf


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in n variables; terms maps exponent tuple -> nonzero coeff."""

    field: object
    n: int
    terms: Mapping[Expo, int]

    @classmethod
    def make(cls, F, n: int, terms: Mapping[Expo, int]) -> "Polynomial":
        clean = {tuple(e): c for e, c in terms.items() if c != 0}
        return cls(field=F, n=n, terms=clean)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and other.n == self.n
                and dict(other.terms) == dict(self.terms)
                and other.field == self.field)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))


def poly_add(P: Polynomial, Q: Polynomial) -> Polynomial:
    F = P.field
    out = dict(P.terms)
    for e, c in Q.terms.items():
        s = F.add(out.get(e, 0), c)
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return Polynomial(P.field, P.n, out)


def poly_scale(P: Polynomial, c: int) -> Polynomial:
    F = P.field
    if c == 0:
        return Polynomial(F, P.n, {})
    return Polynomial(F, P.n, {e: F.mul(c, v) for e, v in P.terms.items()})


def poly_mul(P: Polynomial, Q: Polynomial) -> Polynomial:
    F = P.field
    out: dict[Expo, int] = {}
    for e1, c1 in P.terms.items():
        for e2, c2 in Q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = F.add(out.get(e, 0), F.mul(c1, c2))
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return Polynomial(F, P.n, out)


def evaluate(P: Polynomial, point: Sequence[int]) -> int:
    F = P.field
    acc = 0
    for e, c in P.terms.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = F.mul(v, F.pow(x, k))
        acc = F.add(acc, v)
    return acc


def hasse_derivative(P: Polynomial, i: Sequence[int]) -> Polynomial:
    """The i-th Hasse derivative: x^a contributes binom(a,i) x^{a-i}."""
    F = P.field
    i = tuple(i)
    p = F.p
    out: dict[Expo, int] = {}
    for a, c in P.terms.items():
        if any(aj < ij for aj, ij in zip(a, i)):
            continue
        scalar = 1
        for aj, ij in zip(a, i):
            scalar = scalar * math.comb(aj, ij) % p
        if scalar == 0:
            continue
        e = tuple(aj - ij for aj, ij in zip(a, i))
        s = F.add(out.get(e, 0), F.mul(c, F.from_int(scalar)))
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return Polynomial(F, P.n, out)


def exponents_of_weight(n: int, w: int) -> Iterator[Expo]:
    """All length-n exponent tuples summing to w, lexicographic order."""
    if n == 1:
        yield (w,)
        return
    for first in range(w + 1):
        for rest in exponents_of_weight(n - 1, w - first):
            yield (first,) + rest


def multiplicity(P: Polynomial, a: Sequence[int]):
    """Largest N with all Hasse derivatives of weight < N vanishing at a.

    Returns math.inf for the zero polynomial.  A nonzero polynomial always
    has multiplicity at most its degree.
    """
    if P.is_zero():
        return INFINITE
    d = P.degree
    for w in range(d + 1):
        for i in exponents_of_weight(P.n, w):
            if evaluate(hasse_derivative(P, i), a) != 0:
                return w
    raise AssertionError("nonzero polynomial with multiplicity beyond degree")


def restrict_to_line(P: Polynomial, a: Sequence[int],
                     b: Sequence[int]) -> Polynomial:
    """The univariate composition t -> P(a + b t)."""
    F = P.field
    if all(x == 0 for x in b):
        raise ZeroDirection("line direction must be nonzero")
    # univariate dense coefficient lists, index = degree in t
    out: dict[Expo, int] = {}
    for e, c in P.terms.items():
        factor = [c]
        for aj, bj, kj in zip(a, b, e):
            for _ in range(kj):
                # multiply by (aj + bj t)
                nxt = [0] * (len(factor) + 1)
                for d, v in enumerate(factor):
                    if v == 0:
                        continue
                    nxt[d] = F.add(nxt[d], F.mul(v, aj))
                    nxt[d + 1] = F.add(nxt[d + 1], F.mul(v, bj))
                factor = nxt
        for d, v in enumerate(factor):
            if v == 0:
                continue
            s = F.add(out.get((d,), 0), v)
            if s == 0:
                out.pop((d,), None)
            else:
                out[(d,)] = s
    return Polynomial(F, 1, out)


def homogeneous_part(P: Polynomial) -> Polynomial:
    """Top-degree homogeneous component."""
    if P.is_zero():
        raise ZeroPolynomial("zero polynomial has no homogeneous part")
    d = P.degree
    return Polynomial(P.field, P.n,
                      {e: c for e, c in P.terms.items() if sum(e) == d})


@dataclass(frozen=True)
class SzAudit:
    sum: int
    bound: int
    ok: bool


def sz_mult_audit(P: Polynomial, U: Sequence[int]) -> SzAudit:
    """Sum of multiplicities over U^n versus the degree bound d |U|^{n-1}."""
    if P.is_zero():
        raise ZeroPolynomial("audit requires a nonzero polynomial")
    total = 0
    for a in itertools.product(U, repeat=P.n):
        total += multiplicity(P, a)
    bound = P.degree * len(U) ** (P.n - 1)
    return SzAudit(sum=total, bound=bound, ok=total <= bound)


def monomials_upto(n: int, d: int) -> list[Expo]:
    """Exponent tuples of weight <= d in graded lexicographic order."""
    out: list[Expo] = []
    for w in range(d + 1):
        out.extend(exponents_of_weight(n, w))
    return out


def vanishing_hypothesis_holds(targets: Mapping[Expo, int], n: int,
                               d: int) -> bool:
    """Dimension-count hypothesis guaranteeing a nonzero interpolant."""
    lhs = sum(math.comb(N + n - 1, n) for N in targets.values())
    return lhs < math.comb(d + n, n)


@dataclass(frozen=True)
class NoSolutionCertificate:
    n: int
    degree: int
    equations: int
    unknowns: int
    rank: int


def find_vanishing_poly(F, n: int, targets: Mapping[Sequence[int], int],
                        d: int):
    """Nonzero polynomial of degree <= d vanishing with given multiplicities.

    Solves the homogeneous linear system of Hasse-derivative vanishing
    conditions; returns the canonical kernel element (first free coefficient
    set to 1 under graded lex order) or a NoSolutionCertificate when the
    system has full column rank.
    """
    monos = monomials_upto(n, d)
    col = {e: j for j, e in enumerate(monos)}
    p = F.p
    rows: list[list[int]] = []
    for x in sorted(tuple(pt) for pt in targets):
        Nx = targets[tuple(x)]
        for w in range(Nx):
            for i in exponents_of_weight(n, w):
                row = [0] * len(monos)
                for a in monos:
                    if any(aj < ij for aj, ij in zip(a, i)):
                        continue
                    scalar = 1
                    for aj, ij in zip(a, i):
                        scalar = scalar * math.comb(aj, ij) % p
                    if scalar == 0:
                        continue
                    v = F.from_int(scalar)
                    for xj, kj in zip(x, (aj - ij for aj, ij in zip(a, i))):
                        if kj:
                            v = F.mul(v, F.pow(xj, kj))
                    row[col[a]] = v
                if any(row):
                    rows.append(row)
    reduced, rank = rref(F, rows)
    pivots = [next(j for j, v in enumerate(r) if v != 0) for r in reduced]
    free = [j for j in range(len(monos)) if j not in pivots]
    if not free:
        return NoSolutionCertificate(n=n, degree=d, equations=len(rows),
                                     unknowns=len(monos), rank=rank)
    j0 = free[0]
    coeffs = [0] * len(monos)
    coeffs[j0] = 1
    for r, pc in zip(reduced, pivots):
        coeffs[pc] = F.neg(r[j0])
    return Polynomial(F, n, {monos[j]: c
                             for j, c in enumerate(coeffs) if c != 0})
