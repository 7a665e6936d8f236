"""Point-flat incidence counting and the incidence-lemma census checks.

All inequalities with square roots are decided with integer square roots on
cleared radicands, so an "ok" verdict is conservative: it can only confirm
the lemma, never falsely accuse it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (BadDelta, BadRange, DimensionMismatch,
                     NotADirectionFamily)
from .furstenberg import FurstenbergInstance, search_extremal
from .geometry import (DEFAULT_BUDGET, Flat, Point, PointSet, Subspace,
                       enumerate_flats, enumerate_subspaces,
                       flat_contains_flat, q_flat_count, qbinomial,
                       reduce_mod_subspace)


@dataclass(frozen=True)
class FlatFamily:
    """Deduplicated set of flats of a common rank."""

    field: object
    n: int
    rank: int
    flats: tuple[Flat, ...]

    @classmethod
    def of(cls, F, n: int, flats: Iterable[Flat]) -> "FlatFamily":
        uniq = sorted(set(flats),
                      key=lambda f: (f.direction.basis, f.shift))
        ranks = {f.direction.k for f in uniq}
        if len(ranks) > 1:
            raise DimensionMismatch(f"mixed flat ranks {sorted(ranks)}")
        rank = ranks.pop() if ranks else 0
        for f in uniq:
            if f.direction.n != n:
                raise DimensionMismatch("ambient dimension mismatch")
        return cls(field=F, n=n, rank=rank, flats=tuple(uniq))

    def __len__(self) -> int:
        return len(self.flats)


def count_incidences(S: PointSet, L: FlatFamily) -> int:
    """I(S, L) by coset-membership testing (no point expansion)."""
    if S.field != L.field or S.n != L.n:
        raise DimensionMismatch("point set and flats in different ambients")
    F = S.field
    total = 0
    for f in L.flats:
        for p in S.points:
            if f.contains(F, p):
                total += 1
    return total


def _ceil_isqrt(x: int) -> int:
    s = math.isqrt(x)
    return s if s * s == x else s + 1


@dataclass(frozen=True)
class IncidenceReport:
    incidences: int
    lhs: Fraction
    rhs: Fraction
    radicand: int
    ok: bool
    extra: Mapping[str, object] | None = None


def haemers_check(S: PointSet, L: FlatFamily) -> IncidenceReport:
    """I(S,L) <= q^{k-n}|S||L| + sqrt(q^k binom(n-1,k)_q |S||L|)."""
    F = S.field
    q, n, k = F.q, S.n, L.rank
    I = count_incidences(S, L)
    term1 = Fraction(len(S) * len(L), q ** (n - k))
    radicand = q ** k * qbinomial(n - 1, k, q) * len(S) * len(L)
    rhs = term1 + _ceil_isqrt(radicand)
    return IncidenceReport(incidences=I, lhs=Fraction(I), rhs=rhs,
                           radicand=radicand, ok=Fraction(I) <= rhs)


def poor_flat_census(S: PointSet, l: int, delta: Fraction,
                     budget: int = DEFAULT_BUDGET) -> IncidenceReport:
    """Count of (S, delta m q^{l-k} + 1)-poor l-flats in F_q^k vs the bound.

    S lives in the whole ambient F_q^k (the spec's k is the ambient
    dimension here); poor means strictly fewer points than the threshold.
    """
    F = S.field
    k = S.n
    q = F.q
    if not 1 <= l <= k - 1:
        raise BadRange(f"l = {l} outside [1, {k - 1}]")
    if not 0 < delta < 1:
        raise BadDelta(f"delta = {delta} outside (0,1)")
    m = len(S)
    threshold = delta * m * Fraction(q ** l, q ** k) + 1
    poor = 0
    for f in enumerate_flats(F, k, l, budget=budget):
        cnt = sum(1 for p in S.points if f.contains(F, p))
        if Fraction(cnt) < threshold:
            poor += 1
    bound = Fraction(q ** (k - l) * qbinomial(k, l, q), 1) \
        / (1 + m * Fraction(q ** l, q ** k) * (1 - delta) ** 2)
    return IncidenceReport(incidences=poor, lhs=Fraction(poor), rhs=bound,
                           radicand=0, ok=Fraction(poor) <= bound,
                           extra={"threshold": threshold, "m": m})


def contained_subflats(Ffam: FlatFamily, l: int,
                       budget: int = DEFAULT_BUDGET) -> IncidenceReport:
    """Count of l-flats inside a one-per-direction family of k-flats.

    Lower bound K(q, n-l, k-l, q^{k-l}) * binom(n,l)_q; the K factor is
    exact when the reduced instance fits the exhaustive search, otherwise
    the general m^{n/k}-style lower-bound formula is used.
    """
    F = Ffam.field
    n, k, q = Ffam.n, Ffam.rank, F.q
    if not 0 < l < k:
        raise BadRange(f"l = {l} outside (0, {k})")
    directions = Counter(f.direction for f in Ffam.flats)
    expected = qbinomial(n, k, q)
    if len(directions) != expected or any(c != 1 for c in directions.values()):
        raise NotADirectionFamily(
            f"need exactly one flat per rank-{k} direction")
    count = 0
    for g in enumerate_flats(F, n, l, budget=budget):
        if any(flat_contains_flat(F, g, f) for f in Ffam.flats):
            count += 1
    sub = FurstenbergInstance(field=F, n=n - l, k=k - l, m=q ** (k - l))
    if q ** (n - l) <= 16:
        kfac = search_extremal(sub, budget=budget).exact
    else:
        res = search_extremal(sub, budget=budget)
        kfac = res.lower
    bound = kfac * qbinomial(n, l, q)
    return IncidenceReport(incidences=count, lhs=Fraction(count),
                           rhs=Fraction(bound), radicand=0,
                           ok=count >= bound,
                           extra={"k_factor": kfac})


def kakeya_becks_census(S: PointSet, k: int, delta: Fraction,
                        budget: int = DEFAULT_BUDGET) -> IncidenceReport:
    """Census of rich (k-1)-flats for a Furstenberg set.

    m is the largest value for which S is (k,m)-Furstenberg (the minimum
    over directions of the best coset count).  The largeness hypothesis on
    m rarely holds at desk scale, so hypothesis_met is reported separately
    and the census is returned either way.
    """
    F = S.field
    n, q = S.n, F.q
    if not 0 < delta < 1:
        raise BadDelta(f"delta = {delta} outside (0,1)")
    m = None
    for direction in enumerate_subspaces(F, n, k, budget=budget):
        counts: Counter[Point] = Counter()
        for p in S.points:
            counts[reduce_mod_subspace(F, p, direction)] += 1
        best = max(counts.values(), default=0)
        m = best if m is None else min(m, best)
    m = m or 0
    threshold = delta * m * Fraction(1, q) + 1
    census = 0
    for f in enumerate_flats(F, n, k - 1, budget=budget):
        cnt = sum(1 for p in S.points if f.contains(F, p))
        if Fraction(cnt) >= threshold:
            census += 1
    bound = Fraction(q ** (n - k + 1) * qbinomial(n, k - 1, q),
                     2 ** (n + 2 - k))
    hypothesis_met = Fraction(m) >= Fraction(2 ** (n + 3 - k) * q) \
        / (1 - delta) ** 2
    return IncidenceReport(incidences=census, lhs=Fraction(census),
                           rhs=bound, radicand=0,
                           ok=Fraction(census) > bound,
                           extra={"m": m, "hypothesis_met": hypothesis_met,
                                  "threshold": threshold})


@dataclass(frozen=True)
class HeavyFlatsBound:
    rational_part: Fraction     # delta kappa/(kappa+1) q^n
    radicand: Fraction          # delta (1-delta) / kappa
    lower_value: Fraction       # rational_part - (ceil-sqrt of radicand) q^n
    approx: float


def heavy_flats_lower_bound(delta: Fraction, gamma: Fraction, l: int,
                            n: int, q: int) -> HeavyFlatsBound:
    """RHS of the covering bound for flats that each hold delta q^l points.

    lower_value uses an upper estimate of the square root, so it is a valid
    lower bound for the exact expression (one-ulp-of-integer-sqrt slack).
    """
    delta = Fraction(delta)
    gamma = Fraction(gamma)
    if delta <= 0 or gamma <= 0:
        raise BadRange("delta and gamma must be positive")
    kappa = gamma * q ** l
    rational_part = delta * kappa / (kappa + 1) * q ** n
    radicand = delta * (1 - delta) / kappa
    if radicand < 0:
        raise BadRange("delta > 1 makes the radicand negative")
    # sqrt(a/b) <= (isqrt(a b)+1)/b
    a, b = radicand.numerator, radicand.denominator
    sqrt_up = Fraction(math.isqrt(a * b) + 1, b) if a else Fraction(0)
    lower_value = rational_part - sqrt_up * q ** n
    approx = float(rational_part) - math.sqrt(float(radicand)) * q ** n
    return HeavyFlatsBound(rational_part=rational_part, radicand=radicand,
                           lower_value=lower_value, approx=approx)


def pure_incidence_bound(q: int, n: int, k: int, m: int) -> HeavyFlatsBound:
    """Specialization delta = m q^{-k}, gamma = 1, l = k of the heavy-flats
    covering bound; matches the incidence-only Furstenberg lower bound."""
    return heavy_flats_lower_bound(Fraction(m, q ** k), Fraction(1), k, n, q)
