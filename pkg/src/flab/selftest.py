"""Condensed invariant battery behind the `flab selftest` command.

A quick cross-section of the full pytest suite: field axioms on small
fields, q-binomial identities, enumeration counts, tiny extremal values,
entropic and incidence checks.  Prints one line per group.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .entropy import RationalDistribution, check_entropic_bound
from .furstenberg import FurstenbergInstance, is_furstenberg, search_extremal
from .geometry import (PointSet, all_points, enumerate_flats,
                       enumerate_subspaces, q_flat_count, qbinomial)
from .gf import field_build
from .incidence import FlatFamily, haemers_check


def _field_axioms(F) -> bool:
    els = list(F.elements())
    for a in els:
        for b in els:
            if F.add(a, b) != F.add(b, a) or F.mul(a, b) != F.mul(b, a):
                return False
            for c in els:
                if F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)):
                    return False
                if F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)):
                    return False
        if a and F.mul(a, F.inv(a)) != 1:
            return False
    return True


def run_selftest(out) -> bool:
    ok_all = True

    def report(name: str, ok: bool):
        nonlocal ok_all
        ok_all = ok_all and ok
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")

    report("field axioms (F_2, F_3, F_4, F_5, F_8, F_9)",
           all(_field_axioms(field_build(p, e))
               for p, e in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)]))

    ok = True
    for q in (2, 3, 4, 5):
        for n in range(1, 7):
            for k in range(n + 1):
                b = qbinomial(n, k, q)
                if k >= 1 and n >= 1:
                    ok &= b == (q ** k * qbinomial(n - 1, k, q)
                                if k <= n - 1 else 0) + qbinomial(n - 1, k - 1, q)
                ok &= b == qbinomial(n, n - k, q)
    report("q-binomial identities", ok)

    F2 = field_build(2, 1)
    ok = True
    for n, k in [(2, 1), (3, 1), (3, 2), (4, 2)]:
        ok &= sum(1 for _ in enumerate_subspaces(F2, n, k)) == qbinomial(n, k, 2)
        ok &= sum(1 for _ in enumerate_flats(F2, n, k)) == q_flat_count(2, n, k)
    report("enumeration counts over F_2", ok)

    inst = FurstenbergInstance(field=F2, n=2, k=1, m=2)
    report("K(2,2,1,2) = 3", search_extremal(inst).exact == 3)

    S = PointSet.of(F2, 2, [(0, 0), (1, 0), (0, 1)])
    ok, _ = is_furstenberg(S, 1, 2)
    report("3-point Kakeya set in F_2^2 verifies", ok)

    ok = True
    for r in range(1, 4):
        pts = all_points(F2, 2)[:r + 1]
        d = RationalDistribution.uniform_on(F2, 2, pts)
        ok &= check_entropic_bound(d, 1).ok
    report("entropic bound on small F_2^2 distributions", ok)

    lines = FlatFamily.of(F2, 2, list(enumerate_flats(F2, 2, 1)))
    full = PointSet.of(F2, 2, all_points(F2, 2))
    report("Haemers bound on (F_2^2, all lines)", haemers_check(full, lines).ok)

    out.write("selftest: " + ("all groups passed\n" if ok_all
                              else "FAILURES present\n"))
    return ok_all
