"""Exact extremal search at desk scale.

Computes K(q, n, k, m) exhaustively for every instance with q^n small
enough, prints a witness for each, and confirms every exact value against
the applicable lower-bound rows and the trivial construction.

Usage:
    python3 scripts/extremal_search_demo.py
"""

from flab.furstenberg import (EXACT_SEARCH_LIMIT, FurstenbergInstance,
                              bound_table, is_furstenberg, search_extremal)
from flab.gf import field_build


def main() -> int:
    configs = []
    for q in (2, 3):
        F = field_build(q, 1)
        for n in (2, 3, 4):
            if q ** n > EXACT_SEARCH_LIMIT:
                continue
            for k in range(1, n):
                for m in range(1, q ** k + 1):
                    configs.append((F, n, k, m))

    for F, n, k, m in configs:
        inst = FurstenbergInstance(field=F, n=n, k=k, m=m)
        res = search_extremal(inst)
        ok, _ = is_furstenberg(res.witness, k, m)
        assert ok
        report = bound_table(inst)
        for row in report.lower_rows():
            assert row.satisfied_by(res.exact), row.source
        pts = " ".join(str(p) for p in res.witness.sorted())
        print(f"K({F.q},{n},{k},{m}) = {res.exact}   "
              f"lower {res.lower}  trivial {m * F.q ** (n - k)}   "
              f"witness {pts}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
