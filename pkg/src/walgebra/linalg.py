"""Exact sparse linear algebra over the rationals.

Rows are gcd-normalized integer tuples; forward elimination is fraction-free
(cross-multiplication, divisions deferred), run independently on the connected
components of the row/column incidence graph, and finished by back-substitution
into the unique reduced echelon form.  Because the reduced form is unique, the
pivoting and processing order are observationally irrelevant: identical inputs
always produce identical output, entry for entry.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

RowTuple = tuple[tuple[int, int], ...]


def normalize_int_row(entries: Mapping[int, int]) -> RowTuple | None:
    """Sort, drop zeros, divide by the gcd, make the leading entry positive."""
    items = [(c, v) for c, v in entries.items() if v]
    if not items:
        return None
    items.sort()
    g = 0
    for _, v in items:
        g = gcd(g, v)
    if items[0][1] < 0:
        g = -g
    return tuple((c, v // g) for c, v in items)


def normalize_fraction_row(entries: Mapping[int, Fraction]) -> RowTuple | None:
    """Clear denominators, then normalize as an integer row."""
    items = {c: v for c, v in entries.items() if v}
    if not items:
        return None
    lcm = 1
    for v in items.values():
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    return normalize_int_row({c: int(v * lcm) for c, v in items.items()})


def _gcd_reduce(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


class _Echelon:
    """Incremental integer echelon form keyed by leading column."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def add(self, row: dict[int, int]) -> bool:
        pivots = self.pivots
        while row:
            j = min(row)
            p = pivots.get(j)
            if p is None:
                _gcd_reduce(row)
                if row[j] < 0:
                    for k in row:
                        row[k] = -row[k]
                pivots[j] = row
                return True
            a, b = p[j], row[j]
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = new
            if row:
                _gcd_reduce(row)
        return False


def _reduced_rows(pivots: dict[int, dict[int, int]]) -> dict[int, dict[int, Fraction]]:
    """Back-substitute to the reduced form: pivot entry 1, no other pivot columns."""
    reduced: dict[int, dict[int, Fraction]] = {}
    for j in sorted(pivots, reverse=True):
        raw = pivots[j]
        lead = Fraction(raw[j])
        row = {k: Fraction(v) / lead for k, v in raw.items()}
        for k in [k for k in row if k != j and k in reduced]:
            coef = row.pop(k)
            if not coef:
                continue
            for k2, v2 in reduced[k].items():
                if k2 == k:
                    continue
                nv = row.get(k2, 0) - coef * v2
                if nv:
                    row[k2] = nv
                else:
                    row.pop(k2, None)
        reduced[j] = row
    return reduced


def _components(rows: list[RowTuple]) -> list[list[int]]:
    """Group row indices by connected component of the shared-column graph."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in rows:
        cols = [c for c, _ in row]
        for c in cols:
            parent.setdefault(c, c)
        first = find(cols[0])
        for c in cols[1:]:
            parent[find(c)] = first
    groups: dict[int, list[int]] = {}
    for i, row in enumerate(rows):
        root = find(row[0][0])
        groups.setdefault(root, []).append(i)
    return [groups[r] for r in sorted(groups, key=lambda r: min(c for c, _ in rows[groups[r][0]]))]


def nullspace_basis(n_cols: int, rows: Iterable[RowTuple]) -> list[dict[int, Fraction]]:
    """Canonical nullspace basis (reduced echelon form of the solution span).

    Columns never touched by a row are free and contribute indicator vectors.
    """
    rows = [r for r in rows if r]
    touched: set[int] = set()
    for row in rows:
        touched.update(c for c, _ in row)
    vectors: list[dict[int, Fraction]] = []
    for comp in _components(rows):
        ech = _Echelon()
        for i in sorted(comp, key=lambda i: (len(rows[i]), rows[i])):
            ech.add(dict(rows[i]))
        reduced = _reduced_rows(ech.pivots)
        comp_cols = sorted({c for i in comp for c, _ in rows[i]})
        pivot_cols = set(reduced)
        for f in comp_cols:
            if f in pivot_cols:
                continue
            vec = {f: Fraction(1)}
            for j, row in reduced.items():
                coef = row.get(f)
                if coef:
                    vec[j] = -coef
            vectors.append(vec)
    for f in range(n_cols):
        if f not in touched:
            vectors.append({f: Fraction(1)})
    return canonical_span_basis(vectors)


def canonical_span_basis(vectors: Iterable[Mapping[int, Fraction]]) -> list[dict[int, Fraction]]:
    """Reduced echelon basis of the span of the given vectors."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for v in vectors:
        row = {k: Fraction(c) for k, c in v.items() if c}
        while row:
            j = min(row)
            p = pivots.get(j)
            if p is None:
                lead = row[j]
                pivots[j] = {k: c / lead for k, c in row.items()}
                break
            coef = row.pop(j)
            for k, c in p.items():
                if k == j:
                    continue
                nv = row.get(k, 0) - coef * c
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    reduced = _reduced_rows_fraction(pivots)
    return [reduced[j] for j in sorted(reduced)]


def _reduced_rows_fraction(pivots: dict[int, dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    reduced: dict[int, dict[int, Fraction]] = {}
    for j in sorted(pivots, reverse=True):
        row = dict(pivots[j])
        for k in [k for k in row if k != j and k in reduced]:
            coef = row.pop(k)
            if not coef:
                continue
            for k2, v2 in reduced[k].items():
                if k2 == k:
                    continue
                nv = row.get(k2, 0) - coef * v2
                if nv:
                    row[k2] = nv
                else:
                    row.pop(k2, None)
        reduced[j] = row
    return reduced


def rank_of(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    return len(canonical_span_basis(vectors))


def reduce_against(vec: Mapping[int, Fraction], basis: list[dict[int, Fraction]]) -> dict[int, Fraction]:
    """Reduce vec modulo a canonical (reduced echelon) basis; zero iff in the span."""
    row = {k: Fraction(c) for k, c in vec.items() if c}
    by_pivot = {min(b): b for b in basis if b}
    for j in sorted(by_pivot):
        coef = row.get(j)
        if not coef:
            continue
        for k, c in by_pivot[j].items():
            nv = row.get(k, 0) - coef * c
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return row


def in_span(vec: Mapping[int, Fraction], basis: list[dict[int, Fraction]]) -> bool:
    return not reduce_against(vec, basis)
