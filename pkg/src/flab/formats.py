"""Normative text formats for CLI round-trips.

Point sets: header ``p e n``, optional modulus line when e > 1, then one
point per line with each coordinate written as e space-separated base-p
digits (low digit first) and coordinates separated by ``|``.  Distributions
append one extra ``|``-separated field holding the integer weight.
"""

from __future__ import annotations

from typing import Sequence

from .entropy import RationalDistribution
from .errors import UnsupportedFormat
from .geometry import Flat, PointSet, Subspace
from .gf import field_build
from .polymethod import Polynomial


def _coord_str(F, a: int) -> str:
    return " ".join(str(d) for d in F.coeffs(a))


def _coord_parse(F, tok: str) -> int:
    digits = [int(t) for t in tok.split()]
    if len(digits) != F.e:
        raise UnsupportedFormat(f"expected {F.e} digits, got {tok!r}")
    return F.from_coeffs(digits)


def _point_str(F, p: Sequence[int]) -> str:
    return " | ".join(_coord_str(F, a) for a in p)


def _point_parse(F, line: str) -> tuple[int, ...]:
    return tuple(_coord_parse(F, tok) for tok in line.split("|"))


def _header_lines(F, n: int) -> list[str]:
    lines = [f"{F.p} {F.e} {n}"]
    if F.e > 1:
        lines.append(" ".join(str(c) for c in F.modulus))
    return lines


def _parse_header(lines: list[str]):
    p, e, n = (int(t) for t in lines[0].split())
    F = field_build(p, e)
    body = 1
    if e > 1:
        given = tuple(int(t) for t in lines[1].split())
        if given != F.modulus:
            raise UnsupportedFormat("modulus differs from the canonical one")
        body = 2
    return F, n, lines[body:]


def serialize_pointset(S: PointSet) -> str:
    lines = _header_lines(S.field, S.n)
    lines += [_point_str(S.field, p) for p in S.sorted()]
    return "\n".join(lines) + "\n"


def parse_pointset(text: str) -> PointSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    F, n, body = _parse_header(lines)
    return PointSet.of(F, n, [_point_parse(F, ln) for ln in body])


def serialize_distribution(dist: RationalDistribution) -> str:
    F = dist.field
    lines = _header_lines(F, dist.n)
    for p in sorted(dist.weights):
        lines.append(f"{_point_str(F, p)} | {dist.weights[p]}")
    return "\n".join(lines) + "\n"


def parse_distribution(text: str) -> RationalDistribution:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    F, n, body = _parse_header(lines)
    weights = {}
    for ln in body:
        toks = ln.split("|")
        if len(toks) != n + 1:
            raise UnsupportedFormat(f"expected {n} coords + weight: {ln!r}")
        pt = tuple(_coord_parse(F, t) for t in toks[:n])
        weights[pt] = int(toks[n])
    return RationalDistribution.of(F, n, weights)


def serialize_polynomial(P: Polynomial) -> str:
    """One term per line: ``coeff : e1 e2 ... en`` in graded lex order."""
    F = P.field
    lines = []
    for e in sorted(P.terms, key=lambda t: (sum(t), t)):
        lines.append(f"{_coord_str(F, P.terms[e])} : "
                     + " ".join(str(x) for x in e))
    return "\n".join(lines) + "\n"


def parse_polynomial(F, n: int, text: str) -> Polynomial:
    terms = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        try:
            coeff_s, expo_s = ln.split(":")
        except ValueError:
            raise UnsupportedFormat(f"bad term line {ln!r}")
        expo = tuple(int(t) for t in expo_s.split())
        if len(expo) != n:
            raise UnsupportedFormat(f"expected {n} exponents: {ln!r}")
        terms[expo] = _coord_parse(F, coeff_s.strip())
    return Polynomial.make(F, n, terms)


def serialize_flat(F, flat: Flat) -> str:
    rows = " , ".join(_point_str(F, r) for r in flat.direction.basis)
    return f"{rows} ; {_point_str(F, flat.shift)}"


def parse_flat(F, n: int, line: str) -> Flat:
    rows_s, shift_s = line.split(";")
    rows = [_point_parse(F, r) for r in rows_s.split(",")] \
        if rows_s.strip() else []
    direction = Subspace.from_vectors(F, n, rows)
    return Flat.through(F, direction, _point_parse(F, shift_s))


def serialize_flat_family(fam) -> str:
    lines = _header_lines(fam.field, fam.n)
    lines += [serialize_flat(fam.field, f) for f in fam.flats]
    return "\n".join(lines) + "\n"


def parse_flat_family(text: str):
    from .incidence import FlatFamily
    lines = [ln for ln in text.splitlines() if ln.strip()]
    F, n, body = _parse_header(lines)
    return FlatFamily.of(F, n, [parse_flat(F, n, ln) for ln in body])


def serialize_targets(F, n: int, targets: dict) -> str:
    """Multiplicity targets: point format plus trailing integer, like
    distributions."""
    lines = _header_lines(F, n)
    for p in sorted(targets):
        lines.append(f"{_point_str(F, p)} | {targets[p]}")
    return "\n".join(lines) + "\n"


def parse_targets(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    F, n, body = _parse_header(lines)
    targets = {}
    for ln in body:
        toks = ln.split("|")
        pt = tuple(_coord_parse(F, t) for t in toks[:n])
        targets[pt] = int(toks[n])
    return F, n, targets
