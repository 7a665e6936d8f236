import itertools
import random
from fractions import Fraction

import pytest

from flab.errors import (BadDelta, BadRange, DimensionMismatch,
                         NotADirectionFamily)
from flab.geometry import (Flat, PointSet, all_points, enumerate_flats,
                           enumerate_subspaces, qbinomial, span)
from flab.gf import field_build
from flab.incidence import (FlatFamily, count_incidences, haemers_check,
                            contained_subflats, heavy_flats_lower_bound,
                            kakeya_becks_census, poor_flat_census,
                            pure_incidence_bound)


def all_lines(F, n):
    return list(enumerate_flats(F, n, 1))


def test_count_incidences_full_plane(F2):
    S = PointSet.of(F2, 2, all_points(F2, 2))
    L = FlatFamily.of(F2, 2, all_lines(F2, 2))
    assert len(L) == 6
    assert count_incidences(S, L) == 12     # 6 lines x 2 points each


def test_count_incidences_single_line(F3):
    line = span(F3, [(0, 0), (1, 1)])
    S = PointSet.of(F3, 2, [(0, 0), (1, 1), (2, 2), (1, 0)])
    L = FlatFamily.of(F3, 2, [line])
    assert count_incidences(S, L) == 3


def test_flat_family_validation(F2):
    line = span(F2, [(0, 0), (1, 0)])
    plane = span(F2, [(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    with pytest.raises(DimensionMismatch):
        FlatFamily.of(F2, 3, [plane,
                              span(F2, [(0, 0, 0), (1, 0, 0)])])
    with pytest.raises(DimensionMismatch):
        FlatFamily.of(F2, 3, [line])
    # duplicates collapse
    fam = FlatFamily.of(F2, 2, [line, line])
    assert len(fam) == 1


def test_count_incidences_ambient_mismatch(F2, F3):
    S = PointSet.of(F3, 2, [(0, 0)])
    L = FlatFamily.of(F2, 2, all_lines(F2, 2))
    with pytest.raises(DimensionMismatch):
        count_incidences(S, L)


# -- first-moment incidence bound -------------------------------------------


def test_haemers_full_plane_tight_first_term(F2):
    S = PointSet.of(F2, 2, all_points(F2, 2))
    L = FlatFamily.of(F2, 2, all_lines(F2, 2))
    r = haemers_check(S, L)
    assert r.incidences == 12
    # first term |S||L| q^{k-n} = 4*6/2 = 12 is already met exactly
    assert r.ok and r.rhs >= 12


def test_haemers_exhaustive_f2_plane(F2):
    pts = all_points(F2, 2)
    lines = all_lines(F2, 2)
    cases = 0
    for spts in itertools.chain.from_iterable(
            itertools.combinations(pts, r) for r in range(1, 5)):
        S = PointSet.of(F2, 2, spts)
        for lr in range(1, 7):
            for lsub in itertools.combinations(lines, lr):
                r = haemers_check(S, FlatFamily.of(F2, 2, lsub))
                assert r.ok
                cases += 1
    assert cases == 15 * 63


def test_haemers_random_f3_plane(F3):
    rng = random.Random(42)
    pts = all_points(F3, 2)
    lines = all_lines(F3, 2)
    for _ in range(200):
        S = PointSet.of(F3, 2,
                        rng.sample(pts, rng.randint(1, len(pts))))
        L = FlatFamily.of(F3, 2,
                          rng.sample(lines, rng.randint(1, len(lines))))
        assert haemers_check(S, L).ok


def test_haemers_random_f2_cube_planes(F2):
    rng = random.Random(7)
    pts = all_points(F2, 3)
    planes = list(enumerate_flats(F2, 3, 2))
    for _ in range(100):
        S = PointSet.of(F2, 3, rng.sample(pts, rng.randint(1, len(pts))))
        L = FlatFamily.of(F2, 3,
                          rng.sample(planes, rng.randint(1, len(planes))))
        assert haemers_check(S, L).ok


# -- poor-flat census --------------------------------------------------------


def test_poor_flat_census_full_space(F3):
    S = PointSet.of(F3, 2, all_points(F3, 2))
    r = poor_flat_census(S, 1, Fraction(1, 2))
    # every line holds 3 >= threshold 5/2 points, so no line is poor
    assert r.incidences == 0 and r.ok
    assert r.extra["threshold"] == Fraction(5, 2)


def test_poor_flat_census_exhaustive_f2_plane(F2):
    # the census counts against the "fewer than delta m q^{l-k} + 1"
    # threshold; its count must agree with a direct recount, and the same
    # bound with the un-shifted threshold delta m q^{l-k} always holds
    pts = all_points(F2, 2)
    lines = all_lines(F2, 2)
    for r in range(1, 5):
        for spts in itertools.combinations(pts, r):
            S = PointSet.of(F2, 2, spts)
            for delta in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                rep = poor_flat_census(S, 1, delta)
                counts = [sum(1 for p in spts if f.contains(F2, p))
                          for f in lines]
                mu = Fraction(len(spts), 2)
                assert rep.incidences == sum(
                    1 for c in counts if c < delta * mu + 1)
                assert rep.ok == (rep.lhs <= rep.rhs)
                unshifted = sum(1 for c in counts if c < delta * mu)
                assert unshifted <= rep.rhs


def test_poor_flat_census_plus_one_threshold_counterexamples(F2):
    # the shifted threshold admits flats holding exactly one point, and the
    # census then exceeds the stated bound; the report says so honestly
    single = poor_flat_census(PointSet.of(F2, 2, [(0, 0)]),
                              1, Fraction(1, 2))
    assert single.incidences == 6
    assert single.rhs == Fraction(16, 3)
    assert not single.ok
    S = PointSet.of(F2, 3, [(1, 0, 1), (1, 1, 0), (1, 0, 0),
                            (0, 0, 1), (1, 1, 1)])
    r = poor_flat_census(S, 1, Fraction(1, 4))
    assert r.incidences == 18
    assert r.rhs == Fraction(1792, 109)
    assert not r.ok


def test_poor_flat_census_validation(F3):
    S = PointSet.of(F3, 2, [(0, 0)])
    with pytest.raises(BadRange):
        poor_flat_census(S, 2, Fraction(1, 2))
    with pytest.raises(BadDelta):
        poor_flat_census(S, 1, Fraction(3, 2))


# -- contained sub-flats -----------------------------------------------------


def _direction_family(F, n, k, pick):
    """One flat per rank-k direction; pick(i, cosets) chooses the shift."""
    flats = []
    for i, d in enumerate(enumerate_subspaces(F, n, k)):
        shifts = sorted({f.shift for f in enumerate_flats(F, n, k)
                         if f.direction == d})
        flats.append(Flat(d, pick(i, shifts)))
    return FlatFamily.of(F, n, flats)


def test_contained_subflats_through_origin(F2):
    fam = _direction_family(F2, 3, 2, lambda i, s: s[0])
    r = contained_subflats(fam, 1)
    assert r.extra["k_factor"] == 3
    assert r.rhs == 21                     # 3 * binom(3,1)_2
    assert r.incidences >= 21 and r.ok


def test_contained_subflats_all_128_families(F2):
    subs = list(enumerate_subspaces(F2, 3, 2))
    assert len(subs) == 7
    cosets = [sorted({f.shift for f in enumerate_flats(F2, 3, 2)
                      if f.direction == d}) for d in subs]
    assert all(len(c) == 2 for c in cosets)
    for mask in range(128):
        flats = [Flat(d, c[(mask >> i) & 1])
                 for i, (d, c) in enumerate(zip(subs, cosets))]
        r = contained_subflats(FlatFamily.of(F2, 3, flats), 1)
        assert r.ok and r.rhs == 21


def test_contained_subflats_requires_direction_family(F2):
    planes = list(enumerate_flats(F2, 3, 2))
    with pytest.raises(NotADirectionFamily):
        contained_subflats(FlatFamily.of(F2, 3, planes[:3]), 1)
    fam = _direction_family(F2, 3, 2, lambda i, s: s[0])
    with pytest.raises(BadRange):
        contained_subflats(fam, 2)


# -- rich-flat census --------------------------------------------------------


def test_becks_census_full_cube(F2):
    S = PointSet.of(F2, 3, all_points(F2, 3))
    r = kakeya_becks_census(S, 2, Fraction(1, 2))
    assert r.extra["m"] == 4
    assert r.extra["threshold"] == 2
    assert r.incidences == 28              # every line holds 2 points
    assert r.rhs == Fraction(28, 8)
    assert r.ok
    # largeness hypothesis needs m >= 2^4 * 2 / (1/2)^2 = 128
    assert not r.extra["hypothesis_met"]


def test_becks_census_delta_validation(F2):
    S = PointSet.of(F2, 3, [(0, 0, 0)])
    with pytest.raises(BadDelta):
        kakeya_becks_census(S, 2, Fraction(0))


# -- heavy-flats covering bound ----------------------------------------------


def test_heavy_flats_delta_one_exact(F3):
    b = heavy_flats_lower_bound(Fraction(1), Fraction(1), 1, 2, 3)
    assert b.radicand == 0
    # kappa = 3: bound is exactly (3/4) q^n with no sqrt loss
    assert b.lower_value == b.rational_part == Fraction(3, 4) * 9


def test_heavy_flats_lower_value_below_float(F3):
    b = heavy_flats_lower_bound(Fraction(1, 2), Fraction(1, 3), 1, 3, 3)
    assert float(b.lower_value) <= b.approx + 1e-9


def test_heavy_flats_validation():
    with pytest.raises(BadRange):
        heavy_flats_lower_bound(Fraction(0), Fraction(1), 1, 2, 3)
    with pytest.raises(BadRange):
        heavy_flats_lower_bound(Fraction(1, 2), Fraction(0), 1, 2, 3)
    with pytest.raises(BadRange):
        heavy_flats_lower_bound(Fraction(3, 2), Fraction(1), 1, 2, 3)


def test_pure_incidence_specializes_heavy_flats():
    q, n, k, m = 3, 3, 2, 9
    a = pure_incidence_bound(q, n, k, m)
    b = heavy_flats_lower_bound(Fraction(m, q ** k), Fraction(1), k, n, q)
    assert a == b
    assert a.rational_part == Fraction(9, 10) * 27
