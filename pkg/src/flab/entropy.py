"""Exact q-ary min-entropy over F_q^n and the entropic Furstenberg checks.

Probabilities are integer weights over a common total, so every entropy
inequality is decided by clearing logs and denominators into integer
comparisons; no floating point is involved anywhere.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BadRange, DimensionMismatch, EmptyInput
from .geometry import (DEFAULT_BUDGET, Point, Subspace, enumerate_subspaces,
                       reduce_mod_subspace)


@dataclass(frozen=True)
class RationalDistribution:
    """Pr[R = x] = weights[x] / total with positive integer weights."""

    field: object
    n: int
    weights: Mapping[Point, int]
    total: int

    @classmethod
    def of(cls, F, n: int, weights: Mapping[Sequence[int], int]) -> "RationalDistribution":
        clean = {tuple(x): w for x, w in weights.items() if w}
        if not clean:
            raise EmptyInput("distribution needs nonempty support")
        if any(w < 0 for w in clean.values()):
            raise BadRange("weights must be positive")
        for x in clean:
            if len(x) != n:
                raise DimensionMismatch(f"point {x} not {n}-dimensional")
        return cls(field=F, n=n, weights=clean, total=sum(clean.values()))

    @classmethod
    def uniform_on(cls, F, n: int, points: Iterable[Sequence[int]]) -> "RationalDistribution":
        return cls.of(F, n, {tuple(p): 1 for p in points})


@dataclass(frozen=True)
class EntropyValue:
    """H = -log_q(max_weight / total), stored as the exact integer pair."""

    max_weight: int
    total: int

    def prob(self) -> Fraction:
        return Fraction(self.max_weight, self.total)

    # higher entropy <=> smaller mode probability
    def __le__(self, other: "EntropyValue") -> bool:
        return self.max_weight * other.total >= other.max_weight * self.total

    def __lt__(self, other: "EntropyValue") -> bool:
        return self.max_weight * other.total > other.max_weight * self.total

    def equals_log(self, q: int, k: int) -> bool:
        """True iff the entropy equals exactly k (an integer), i.e. prob = q^-k."""
        return self.max_weight * q ** k == self.total


@dataclass(frozen=True)
class OntoLinearMap:
    """Surjective linear map F_q^n -> F_q^{n-k}; kernel cached."""

    matrix: tuple[Point, ...]
    kernel: Subspace


@dataclass(frozen=True)
class EntropicWitness:
    map: OntoLinearMap
    shift_value: Point
    attained: EntropyValue


def min_entropy(dist: RationalDistribution) -> EntropyValue:
    return EntropyValue(max_weight=max(dist.weights.values()),
                        total=dist.total)


def map_from_kernel(F, kernel: Subspace) -> OntoLinearMap:
    """Canonical onto map whose kernel is the given subspace.

    Rows are indexed by the non-pivot columns c of the kernel basis:
    row_c = e_c - sum_i basis_i[c] e_{pivot_i}; the image coordinates are the
    free coordinates of the canonical coset representative.
    """
    n = kernel.n
    pivots = kernel.pivots()
    rows = []
    for c in range(n):
        if c in pivots:
            continue
        row = [0] * n
        row[c] = 1
        for b, piv in zip(kernel.basis, pivots):
            if b[c]:
                row[piv] = F.neg(b[c])
        rows.append(tuple(row))
    return OntoLinearMap(matrix=tuple(rows), kernel=kernel)


def apply_map(F, m: OntoLinearMap, x: Sequence[int]) -> Point:
    out = []
    for row in m.matrix:
        acc = 0
        for r, v in zip(row, x):
            if r and v:
                acc = F.add(acc, F.mul(r, v))
        out.append(acc)
    return tuple(out)


def pushforward(dist: RationalDistribution,
                m: OntoLinearMap) -> RationalDistribution:
    F = dist.field
    if m.kernel.n != dist.n:
        raise DimensionMismatch("map and distribution ambient dims differ")
    weights: Counter[Point] = Counter()
    for x, w in dist.weights.items():
        weights[apply_map(F, m, x)] += w
    return RationalDistribution(field=F, n=dist.n - m.kernel.k,
                                weights=dict(weights), total=dist.total)


def best_projection(dist: RationalDistribution, k: int,
                    budget: int = DEFAULT_BUDGET) -> tuple[EntropicWitness, EntropyValue]:
    """Exhaustive max of min-entropy over one map per rank-k kernel.

    The pushforward entropy depends on the kernel only, so one canonical
    map per kernel suffices; ties broken by kernel enumeration order.
    """
    F = dist.field
    n = dist.n
    if not 1 <= k < n:
        raise BadRange(f"k = {k} outside [1, {n})")
    best: EntropicWitness | None = None
    for kernel in enumerate_subspaces(F, n, k, budget=budget):
        m = map_from_kernel(F, kernel)
        pushed = pushforward(dist, m)
        ev = min_entropy(pushed)
        if best is None or best.attained.max_weight > ev.max_weight:
            mode = min(y for y, w in pushed.weights.items()
                       if w == ev.max_weight)
            best = EntropicWitness(map=m, shift_value=mode, attained=ev)
    assert best is not None
    return best, best.attained


@dataclass(frozen=True)
class EntropicBoundReport:
    ok: bool
    witness: EntropicWitness
    lhs: int            # g^n q^{nk}
    rhs: int            # f(v)^{n-k} S^k (2q-1)^{nk}
    margin: int         # rhs - lhs


def entropic_inequality_sides(q: int, n: int, k: int, g: int, fv: int,
                              total: int) -> tuple[int, int]:
    """Integer form of H(phi(R)) >= ((n-k)/n) H(R) - k log_q(2 - 1/q)."""
    lhs = g ** n * q ** (n * k)
    rhs = fv ** (n - k) * total ** k * (2 * q - 1) ** (n * k)
    return lhs, rhs


def check_entropic_bound(dist: RationalDistribution, k: int,
                         budget: int = DEFAULT_BUDGET) -> EntropicBoundReport:
    F = dist.field
    witness, attained = best_projection(dist, k, budget=budget)
    fv = max(dist.weights.values())
    lhs, rhs = entropic_inequality_sides(F.q, dist.n, k,
                                         attained.max_weight, fv, dist.total)
    return EntropicBoundReport(ok=lhs <= rhs, witness=witness,
                               lhs=lhs, rhs=rhs, margin=rhs - lhs)


@dataclass(frozen=True)
class RecursionReport:
    composed: EntropyValue
    direct: EntropyValue
    composed_le_direct: bool
    composed_ok: bool
    direct_ok: bool
    steps: tuple[EntropicWitness, ...]


def check_recursion(dist: RationalDistribution, k: int,
                    budget: int = DEFAULT_BUDGET) -> RecursionReport:
    """Greedy k-step chain of best codimension-1 projections vs direct rank-k."""
    F = dist.field
    n = dist.n
    if not 1 <= k < n:
        raise BadRange(f"k = {k} outside [1, {n})")
    cur = dist
    steps = []
    for _ in range(k):
        wit, _ = best_projection(cur, 1, budget=budget)
        steps.append(wit)
        cur = pushforward(cur, wit.map)
    composed = min_entropy(cur)
    _, direct = best_projection(dist, k, budget=budget)
    fv = max(dist.weights.values())
    c_lhs, c_rhs = entropic_inequality_sides(F.q, n, k, composed.max_weight,
                                             fv, dist.total)
    d_lhs, d_rhs = entropic_inequality_sides(F.q, n, k, direct.max_weight,
                                             fv, dist.total)
    return RecursionReport(composed=composed, direct=direct,
                           composed_le_direct=composed <= direct,
                           composed_ok=c_lhs <= c_rhs,
                           direct_ok=d_lhs <= d_rhs,
                           steps=tuple(steps))


@dataclass(frozen=True)
class NormBoundReport:
    hypothesis_ok: bool
    failing_direction: Subspace | None
    power_sum: int      # sum |f(x)|^n
    lhs: int            # (2q-1)^n sum |f|^n
    rhs: int            # r^n q^n
    ok: bool


def norm_bound_check(F, n: int, values: Mapping[Sequence[int], int],
                     r: int, budget: int = DEFAULT_BUDGET) -> NormBoundReport:
    """Power-sum lower bound for functions with an r-heavy line per direction.

    values is an integer-valued function on F_q^n (zeros allowed, absolute
    values taken).  The hypothesis check scans all rank-1 directions.
    """
    absvals = {tuple(x): abs(v) for x, v in values.items() if v}
    hypothesis_ok = True
    failing = None
    for direction in enumerate_subspaces(F, n, 1, budget=budget):
        buckets: Counter[Point] = Counter()
        for x, v in absvals.items():
            buckets[reduce_mod_subspace(F, x, direction)] += v
        heaviest = max(buckets.values(), default=0)
        if heaviest < r:
            hypothesis_ok = False
            failing = direction
            break
    power_sum = sum(v ** n for v in absvals.values())
    q = F.q
    lhs = (2 * q - 1) ** n * power_sum
    rhs = r ** n * q ** n
    return NormBoundReport(hypothesis_ok=hypothesis_ok,
                           failing_direction=failing,
                           power_sum=power_sum, lhs=lhs, rhs=rhs,
                           ok=lhs >= rhs)


@dataclass(frozen=True)
class QExponent:
    """A real number alpha + beta log_q(2) with exact rational alpha, beta.

    Used as the exponent t in C = q^{-t}; closed under the rational scaling
    the A(n,k) <-> B(n,k) constant transforms perform.  When q is a power of
    two the log term folds into the rational part, so 2^{-n} and q^{-t}
    representations compare exactly.
    """

    q: int
    alpha: Fraction
    beta: Fraction

    @classmethod
    def make(cls, q: int, alpha, beta=0) -> "QExponent":
        alpha = Fraction(alpha)
        beta = Fraction(beta)
        s = _power_of_two_exponent(q)
        if s is not None and beta:
            alpha += beta / s
            beta = Fraction(0)
        return cls(q=q, alpha=alpha, beta=beta)

    def scaled(self, factor: Fraction) -> "QExponent":
        return QExponent.make(self.q, self.alpha * factor, self.beta * factor)

    def sign(self) -> int:
        """Exact sign of alpha + beta log_q(2)."""
        a, b = self.alpha, self.beta
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: compare q^{-a} with 2^{b} by clearing denominators
        L = a.denominator * b.denominator
        left = self.q ** int(-a * L) if a < 0 else 1
        right = 2 ** int(b * L) if b > 0 else 1
        if a < 0 and b > 0:  # -a > 0, b > 0: sign of b log 2 - (-a) log q
            if right == left:
                return 0
            return 1 if right > left else -1
        # a > 0, b < 0: positive iff q^{aL} > 2^{-bL}
        left = self.q ** int(a * L)
        right = 2 ** int(-b * L)
        if left == right:
            return 0
        return 1 if left > right else -1

    def to_float(self) -> float:
        import math
        return float(self.alpha) + float(self.beta) * math.log(2, self.q)


def _power_of_two_exponent(q: int) -> int | None:
    s = q.bit_length() - 1
    return s if q == 1 << s else None


def ab_constants(direction: str, value: QExponent | Fraction | int,
                 n: int, k: int, q: int) -> QExponent:
    """Exact transform between the set-bound constant C and entropy loss D.

    C is carried as the exponent t with C = q^{-t}; D as a plain real in the
    same alpha + beta log_q(2) representation.  AtoB: D = (k/n) t.
    BtoA: t = (n/k) D.
    """
    if not 1 <= k < n:
        raise BadRange(f"k = {k} outside [1, {n})")
    if not isinstance(value, QExponent):
        value = QExponent.make(q, Fraction(value))
    elif value.q != q:
        raise BadRange("exponent base mismatch")
    if direction == "AtoB":
        if value.sign() < 0:
            raise BadRange("AtoB needs C <= 1, i.e. exponent t >= 0")
        return value.scaled(Fraction(k, n))
    if direction == "BtoA":
        if value.sign() < 0:
            raise BadRange("BtoA needs D >= 0")
        return value.scaled(Fraction(n, k))
    raise BadRange(f"unknown direction {direction!r}")
