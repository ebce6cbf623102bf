"""Assembly of defining identities as exact sparse linear systems over the
unknown coefficients of a windowed map, nullspace computation, core
projection, and classification against the closed-form families.

Unknowns are the coefficients of f(e_i, e_j) (or phi(e_i)) on a value support
of radius M plus c; one row group is generated per basis tuple and identity,
and a tuple contributes only when every map argument appearing in the fully
expanded identity stays inside the window.  Under-constraining near the
boundary is accepted and cleaned up by projecting solutions to a smaller core;
silently truncated (wrong) rows are never emitted.

Every coefficient of an assembled row is a single structure constant, so rows
are scaled by 12 once and kept in exact integers end to end.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import (
    ALGEBRAS,
    AlgebraSpec,
    BasisSymbol,
    C,
    Element,
    bracket,
    center_basis,
    fraction_to_str,
    omega,
    project_elements_to_core,
    window_symbols,
)
from .errors import InvalidCore, NotInClassifiedFamily, WindowTooSmall
from .maps import (
    BilinearMapWindow,
    LinearMapWindow,
    h_scaling_map,
    map_to_json,
    run_verification,
)

PROBLEMS = ("biderivation", "derivation", "commuting", "symmetric-biderivation")

_FAM_L, _FAM_H, _FAM_C = 0, 1, 2
_FAM_NAMES = {_FAM_L: "L", _FAM_H: "H", _FAM_C: "c"}


def _key(sym: BasisSymbol) -> tuple[int, int]:
    if sym.family == "c":
        return (_FAM_C, 0)
    return (_FAM_L if sym.family == "L" else _FAM_H, sym.index)


def _sym(key: tuple[int, int]) -> BasisSymbol:
    fam, deg = key
    if fam == _FAM_C:
        return C
    return BasisSymbol(_FAM_NAMES[fam], deg)


def _bracket12(ka, kb, has_center) -> tuple:
    """12 * [a, b] on basis keys, as ((key, integer coefficient), ...)."""
    fa, da = ka
    fb, db = kb
    if fa == _FAM_C or fb == _FAM_C or (fa == _FAM_H and fb == _FAM_H):
        return ()
    out = []
    s = da + db
    if da != db:
        fam = _FAM_L if (fa == _FAM_L and fb == _FAM_L) else _FAM_H
        out.append(((fam, s), 12 * (da - db)))
    if s == 0 and has_center:
        cc = da**3 - da if fa == _FAM_L else db - db**3
        if cc:
            out.append(((_FAM_C, 0), cc))
    return tuple(out)


@dataclass(frozen=True)
class UnknownIndex:
    """One scalar unknown: the coefficient of `out` in the map value at `args`."""

    args: tuple[BasisSymbol, ...]
    out: BasisSymbol

    def sort_key(self):
        return tuple(a.sort_key() for a in self.args) + (self.out.sort_key(),)

    def __str__(self):
        inside = ", ".join(str(a) for a in self.args)
        return f"f({inside})->{self.out}"


class _Tables:
    """Precomputed structure-constant tables for one (algebra, N, M) problem."""

    def __init__(self, algebra: AlgebraSpec, N: int, M: int):
        self.algebra = algebra
        self.N, self.M = N, M
        self.arg_syms = window_symbols(algebra, N)
        self.out_syms = window_symbols(algebra, M)
        self.arg_keys = [_key(s) for s in self.arg_syms]
        self.out_keys = [_key(s) for s in self.out_syms]
        self.A = len(self.arg_keys)
        self.O = len(self.out_keys)
        win = set(self.arg_keys)
        arg_id = {k: i for i, k in enumerate(self.arg_keys)}
        hc = algebra.has_center
        A = self.A
        # bracket of two window symbols, expressed over window ids; None when
        # the support leaves the window (the tuple is then inadmissible)
        self.br_args: list[list] = []
        for ka in self.arg_keys:
            row = []
            for kb in self.arg_keys:
                br = _bracket12(ka, kb, hc)
                if all(k in win for k, _ in br):
                    row.append(tuple((arg_id[k], v) for k, v in br))
                else:
                    row.append(None)
            self.br_args.append(row)
        # brackets of a window symbol with each value-support symbol
        self.br_left = [
            [_bracket12(ka, ko, hc) for ko in self.out_keys] for ka in self.arg_keys
        ]
        self.br_right = [
            [_bracket12(ko, kb, hc) for ko in self.out_keys] for kb in self.arg_keys
        ]


@dataclass
class ConstraintSystem:
    """Sparse homogeneous system over indexed unknowns, rows gcd-normalized.

    Column order is the lexicographic order of UnknownIndex in canonical
    symbol order; it is what makes every downstream basis canonical.
    """

    algebra: AlgebraSpec
    kind: str
    N: int
    M: int
    arity: int
    arg_symbols: list[BasisSymbol]
    out_symbols: list[BasisSymbol]
    rows: list[tuple]
    provenance: list[tuple]

    @property
    def n_columns(self) -> int:
        return len(self.arg_symbols) ** self.arity * len(self.out_symbols)

    def unknown(self, col: int) -> UnknownIndex:
        O = len(self.out_symbols)
        col, io = divmod(col, O)
        if self.arity == 1:
            return UnknownIndex((self.arg_symbols[col],), self.out_symbols[io])
        ia, ib = divmod(col, len(self.arg_symbols))
        return UnknownIndex(
            (self.arg_symbols[ia], self.arg_symbols[ib]), self.out_symbols[io]
        )

    def columns(self) -> list[UnknownIndex]:
        return [self.unknown(i) for i in range(self.n_columns)]

    def describe_row(self, i: int) -> str:
        tag = self.provenance[i]
        name = tag[0]
        syms = ", ".join(str(self.arg_symbols[j]) for j in tag[1:-1])
        return f"{name}({syms}) @ {_sym(tag[-1])}"


def _gen_bilinear(tables: _Tables, t_lo: int, t_hi: int, out):
    """Row groups for both biderivation axioms, triples t_lo <= t < t_hi."""
    A, O = tables.A, tables.O
    out_keys = tables.out_keys
    br_args, br_left, br_right = tables.br_args, tables.br_left, tables.br_right
    rng_O = range(O)
    for t in range(t_lo, t_hi):
        i3 = t % A
        i1, i2 = divmod(t // A, A)
        # first-slot axiom on (a, b, z) = (s1, s2, s3)
        br = br_args[i1][i2]
        if br is not None:
            rows: dict = {}
            for iw, c12 in br:
                base = (iw * A + i3) * O
                for io in rng_O:
                    key = out_keys[io]
                    d = rows.get(key)
                    if d is None:
                        d = rows[key] = {}
                    col = base + io
                    d[col] = d.get(col, 0) + c12
            bl = br_left[i1]
            base_b = (i2 * A + i3) * O
            for io in rng_O:
                for wkey, s in bl[io]:
                    d = rows.get(wkey)
                    if d is None:
                        d = rows[wkey] = {}
                    col = base_b + io
                    d[col] = d.get(col, 0) - s
            brr = br_right[i2]
            base_a = (i1 * A + i3) * O
            for io in rng_O:
                for wkey, s in brr[io]:
                    d = rows.get(wkey)
                    if d is None:
                        d = rows[wkey] = {}
                    col = base_a + io
                    d[col] = d.get(col, 0) - s
            for wkey, d in rows.items():
                row = linalg.normalize_int_row(d)
                if row is not None:
                    out.append((("first-slot", i1, i2, i3, wkey), row))
        # second-slot axiom on (x, y, z) = (s1, s2, s3)
        br = br_args[i2][i3]
        if br is not None:
            rows = {}
            for iw, c12 in br:
                base = (i1 * A + iw) * O
                for io in rng_O:
                    key = out_keys[io]
                    d = rows.get(key)
                    if d is None:
                        d = rows[key] = {}
                    col = base + io
                    d[col] = d.get(col, 0) + c12
            brr = br_right[i3]
            base_xy = (i1 * A + i2) * O
            for io in rng_O:
                for wkey, s in brr[io]:
                    d = rows.get(wkey)
                    if d is None:
                        d = rows[wkey] = {}
                    col = base_xy + io
                    d[col] = d.get(col, 0) - s
            bl = br_left[i2]
            base_xz = (i1 * A + i3) * O
            for io in rng_O:
                for wkey, s in bl[io]:
                    d = rows.get(wkey)
                    if d is None:
                        d = rows[wkey] = {}
                    col = base_xz + io
                    d[col] = d.get(col, 0) - s
            for wkey, d in rows.items():
                row = linalg.normalize_int_row(d)
                if row is not None:
                    out.append((("second-slot", i1, i2, i3, wkey), row))
    return out


def _gen_linear(tables: _Tables, kind: str, out):
    A, O = tables.A, tables.O
    out_keys = tables.out_keys
    br_args, br_left, br_right = tables.br_args, tables.br_left, tables.br_right
    rng_O = range(O)
    for ia in range(A):
        b_lo = ia if kind == "commuting" else 0
        for ib in range(b_lo, A):
            rows: dict = {}
            if kind == "derivation":
                br = br_args[ia][ib]
                if br is None:
                    continue
                for iw, c12 in br:
                    base = iw * O
                    for io in rng_O:
                        key = out_keys[io]
                        d = rows.get(key)
                        if d is None:
                            d = rows[key] = {}
                        col = base + io
                        d[col] = d.get(col, 0) + c12
                base_a, base_b = ia * O, ib * O
                brr = br_right[ib]
                bl = br_left[ia]
                for io in rng_O:
                    for wkey, s in brr[io]:
                        d = rows.get(wkey)
                        if d is None:
                            d = rows[wkey] = {}
                        col = base_a + io
                        d[col] = d.get(col, 0) - s
                    for wkey, s in bl[io]:
                        d = rows.get(wkey)
                        if d is None:
                            d = rows[wkey] = {}
                        col = base_b + io
                        d[col] = d.get(col, 0) - s
            else:  # commuting: [phi(a), b] + [phi(b), a] = 0
                base_a, base_b = ia * O, ib * O
                brr_b = br_right[ib]
                brr_a = br_right[ia]
                for io in rng_O:
                    for wkey, s in brr_b[io]:
                        d = rows.get(wkey)
                        if d is None:
                            d = rows[wkey] = {}
                        col = base_a + io
                        d[col] = d.get(col, 0) + s
                    for wkey, s in brr_a[io]:
                        d = rows.get(wkey)
                        if d is None:
                            d = rows[wkey] = {}
                        col = base_b + io
                        d[col] = d.get(col, 0) + s
            for wkey, d in rows.items():
                row = linalg.normalize_int_row(d)
                if row is not None:
                    out.append(((kind, ia, ib, wkey), row))
    return out


def _dedupe(tagged_rows) -> tuple[list, list]:
    seen = set()
    rows, prov = [], []
    for tag, row in tagged_rows:
        if row in seen:
            continue
        seen.add(row)
        rows.append(row)
        prov.append(tag)
    return rows, prov


def _check_window(N: int, M: int) -> None:
    if N < 1:
        raise WindowTooSmall("window radius must be >= 1")
    if M < 2 * N:
        raise WindowTooSmall(
            f"value-support radius {M} is smaller than the bracket reach 2*{N}"
        )


def _assemble_bilinear(
    algebra: AlgebraSpec, N: int, M: int, symmetric: bool, workers: int = 1
) -> ConstraintSystem:
    _check_window(N, M)
    tables = _Tables(algebra, N, M)
    A, O = tables.A, tables.O
    total = A * A * A
    if workers > 1:
        bounds = [(total * i) // workers for i in range(workers + 1)]
        chunks = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda c: _gen_bilinear(tables, c[0], c[1], []), chunks)
            )
        tagged = [tr for part in parts for tr in part]
    else:
        tagged = _gen_bilinear(tables, 0, total, [])
    if symmetric:
        for ia in range(A):
            for ib in range(ia + 1, A):
                ab = (ia * A + ib) * O
                ba = (ib * A + ia) * O
                for io in range(O):
                    tagged.append(
                        (
                            ("symmetry", ia, ib, tables.out_keys[io]),
                            ((ab + io, 1), (ba + io, -1)),
                        )
                    )
    rows, prov = _dedupe(tagged)
    if not rows:
        raise WindowTooSmall("no admissible tuples on this window")
    return ConstraintSystem(
        algebra,
        "symmetric-biderivation" if symmetric else "biderivation",
        N,
        M,
        2,
        tables.arg_syms,
        tables.out_syms,
        rows,
        prov,
    )


def assemble_biderivation_system(algebra: AlgebraSpec, N: int, M: int, workers: int = 1) -> ConstraintSystem:
    """Both biderivation axioms on every admissible window triple."""
    return _assemble_bilinear(algebra, N, M, symmetric=False, workers=workers)


def assemble_symmetric_biderivation_system(algebra: AlgebraSpec, N: int, M: int, workers: int = 1) -> ConstraintSystem:
    """Biderivation rows plus the symmetry rows f(a,b) = f(b,a)."""
    return _assemble_bilinear(algebra, N, M, symmetric=True, workers=workers)


def assemble_derivation_system(algebra: AlgebraSpec, N: int, M: int) -> ConstraintSystem:
    """The derivation identity on every admissible window pair."""
    _check_window(N, M)
    tables = _Tables(algebra, N, M)
    rows, prov = _dedupe(_gen_linear(tables, "derivation", []))
    if not rows:
        raise WindowTooSmall("no admissible pairs on this window")
    return ConstraintSystem(
        algebra, "derivation", N, M, 1, tables.arg_syms, tables.out_syms, rows, prov
    )


def assemble_commuting_system(algebra: AlgebraSpec, N: int, M: int) -> ConstraintSystem:
    """The polarized commuting identity on every window pair."""
    _check_window(N, M)
    tables = _Tables(algebra, N, M)
    rows, prov = _dedupe(_gen_linear(tables, "commuting", []))
    if not rows:
        raise WindowTooSmall("no admissible pairs on this window")
    return ConstraintSystem(
        algebra, "commuting", N, M, 1, tables.arg_syms, tables.out_syms, rows, prov
    )


_ASSEMBLERS = {
    "biderivation": assemble_biderivation_system,
    "symmetric-biderivation": assemble_symmetric_biderivation_system,
    "derivation": lambda alg, N, M, workers=1: assemble_derivation_system(alg, N, M),
    "commuting": lambda alg, N, M, workers=1: assemble_commuting_system(alg, N, M),
}


@dataclass
class SolutionSpace:
    """A canonical (reduced echelon) basis of map-coefficient vectors."""

    algebra: AlgebraSpec
    kind: str
    window_radius: int
    value_radius: int
    arity: int
    columns: list[UnknownIndex]
    basis: list[dict[int, Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def nullspace(system: ConstraintSystem) -> SolutionSpace:
    """Canonical nullspace basis of an assembled system."""
    basis = linalg.nullspace_basis(system.n_columns, system.rows)
    return SolutionSpace(
        system.algebra,
        system.kind,
        system.N,
        system.M,
        system.arity,
        system.columns(),
        basis,
    )


def project_to_core(space: SolutionSpace, core_radius: int) -> SolutionSpace:
    """Restrict to unknowns whose arguments all lie within the core radius
    (c allowed), then re-reduce to a canonical basis."""
    if core_radius > space.window_radius or core_radius < 0:
        raise InvalidCore(
            f"core radius {core_radius} must be between 0 and the window radius "
            f"{space.window_radius}"
        )
    keep = [
        i
        for i, unk in enumerate(space.columns)
        if all(abs(a.degree) <= core_radius for a in unk.args)
    ]
    remap = {old: new for new, old in enumerate(keep)}
    projected = []
    for vec in space.basis:
        small = {remap[c]: v for c, v in vec.items() if c in remap}
        if small:
            projected.append(small)
    return SolutionSpace(
        space.algebra,
        space.kind,
        core_radius,
        space.value_radius,
        space.arity,
        [space.columns[i] for i in keep],
        linalg.canonical_span_basis(projected),
    )


def solution_to_map(space: SolutionSpace, index: int):
    """Materialize basis vector `index` as a window map table."""
    vec = space.basis[index]
    syms = window_symbols(space.algebra, space.window_radius)
    if space.arity == 1:
        values = {s: {} for s in syms}
        for col, coeff in vec.items():
            unk = space.columns[col]
            values[unk.args[0]][unk.out] = coeff
        return LinearMapWindow(
            space.algebra,
            space.window_radius,
            {s: Element(v) for s, v in values.items()},
        )
    pair_values = {(a, b): {} for a in syms for b in syms}
    for col, coeff in vec.items():
        unk = space.columns[col]
        pair_values[unk.args][unk.out] = coeff
    return BilinearMapWindow(
        space.algebra,
        space.window_radius,
        {p: Element(v) for p, v in pair_values.items()},
        value_radius=space.value_radius,
    )


def vector_from_map(columns: list[UnknownIndex], m) -> dict[int, Fraction] | None:
    """Encode a map table over a column list; None if it does not fit."""
    lookup: dict[tuple, dict[BasisSymbol, int]] = {}
    for pos, unk in enumerate(columns):
        lookup.setdefault(unk.args, {})[unk.out] = pos
    vec: dict[int, Fraction] = {}
    if m.kind == "linear":
        items = [((s,), v) for s, v in m.values.items()]
    else:
        items = list(m.values.items())
    for args, value in items:
        if value.is_zero:
            continue
        outs = lookup.get(args)
        if outs is None:
            return None
        for sym, coeff in value.items():
            pos = outs.get(sym)
            if pos is None:
                return None
            vec[pos] = coeff
    return vec


def extract_parameters(f: BilinearMapWindow) -> tuple[Fraction, Fraction]:
    """Recover (lambda, mu) with f = lambda*[.,.] + mu*[omega(.),.], exactly.

    lambda and mu are read off f(L(1), L(-1)) = 2*lambda*L(0) + 2*mu*H(0);
    the closed form is then re-verified on every window pair and a failure
    raises NotInClassifiedFamily carrying the first bad pair.
    """
    algebra = f.algebra
    if f.radius < 1:
        raise InvalidCore("parameter extraction needs a window radius >= 1")
    probe = f.entry(BasisSymbol("L", 1), BasisSymbol("L", -1))
    lam = probe.coeff(BasisSymbol("L", 0)) / 2
    mu = probe.coeff(BasisSymbol("H", 0)) / 2 if algebra.has_h else Fraction(0)
    for (a, b), value in f.values.items():
        ea, eb = Element.basis(a), Element.basis(b)
        expected = bracket(ea, eb, algebra).scaled(lam)
        if algebra.has_h:
            expected = expected + bracket(omega(ea, algebra), eb, algebra).scaled(mu)
        diff = value - expected
        if not diff.is_zero:
            raise NotInClassifiedFamily(
                f"value at ({a}, {b}) differs from the closed form by {diff}",
                pair=(a, b),
                residual=diff,
            )
    return lam, mu


# ---------------------------------------------------------------------------
# classification pipeline


def _residual_check(space: SolutionSpace, check: str) -> str | dict:
    for i in range(space.dimension):
        m = solution_to_map(space, i)
        result = run_verification(m, check, max_failures=1)
        if result["status"] != "pass":
            fail = dict(result["failures"][0]) if result["failures"] else {}
            fail["vector"] = i
            return {"fail": fail}
    return "pass"


def _is_graded(space: SolutionSpace) -> bool:
    for vec in space.basis:
        for col in vec:
            unk = space.columns[col]
            if unk.out.degree != sum(a.degree for a in unk.args):
                return False
    return True


def _central_args_zero(space: SolutionSpace) -> bool:
    for vec in space.basis:
        for col in vec:
            if any(a.is_central for a in space.columns[col].args):
                return False
    return True


def _bilinear_analysis(space: SolutionSpace) -> tuple[list, dict]:
    params = []
    for i in range(space.dimension):
        lam, mu = extract_parameters(solution_to_map(space, i))
        params.append({"lambda": fraction_to_str(lam), "mu": fraction_to_str(mu)})
    analysis = {"graded": _is_graded(space)}
    if space.algebra.has_center:
        analysis["central_argument_values_zero"] = _central_args_zero(space)
    return params, analysis


def _linear_posmap(space: SolutionSpace) -> dict[tuple[BasisSymbol, BasisSymbol], int]:
    return {(unk.args[0], unk.out): pos for pos, unk in enumerate(space.columns)}


def _derivation_analysis(space: SolutionSpace) -> dict:
    """Compare core solutions against the span of core-restricted inner
    derivations; for the W(2,2) variants, test the H-scaling map as the
    outer representative."""
    algebra = space.algebra
    K, M = space.window_radius, space.value_radius
    posmap = _linear_posmap(space)
    core_syms = window_symbols(algebra, K)
    inner_vecs = []
    for fam in ("L", "H") if algebra.has_h else ("L",):
        for j in range(-(M - K), M - K + 1):
            x = Element.basis(BasisSymbol(fam, j))
            vec: dict[int, Fraction] = {}
            for a in core_syms:
                for sym, coeff in bracket(x, Element.basis(a), algebra).items():
                    vec[posmap[(a, sym)]] = coeff
            if vec:
                inner_vecs.append(vec)
    inner_basis = linalg.canonical_span_basis(inner_vecs)
    joint_basis = linalg.canonical_span_basis(inner_basis + space.basis)
    analysis = {
        "inner_rank": len(inner_basis),
        "joint_rank": len(joint_basis),
        "quotient_dimension_mod_inner": len(joint_basis) - len(inner_basis),
        "solutions_inside_inner_span": len(joint_basis) == len(inner_basis),
    }
    if algebra.has_h:
        d_map = h_scaling_map(algebra, K)
        d_vec = vector_from_map(space.columns, d_map)
        analysis["h_scaling_is_outer_representative"] = bool(
            d_vec
            and linalg.in_span(d_vec, joint_basis)
            and not linalg.in_span(d_vec, inner_basis)
        )
    return analysis


def _commuting_analysis(space: SolutionSpace) -> dict:
    """Decompose each core solution as lambda*id + mu*omega + (c-valued map)."""
    algebra = space.algebra
    posmap = _linear_posmap(space)
    core_syms = window_symbols(algebra, space.window_radius)
    per_vector = []
    param_rows = []
    all_decomposed = True
    l1 = BasisSymbol("L", 1)
    for vec in space.basis:
        lam = vec.get(posmap[(l1, l1)], Fraction(0))
        mu = (
            vec.get(posmap[(l1, BasisSymbol("H", 1))], Fraction(0))
            if algebra.has_h
            else Fraction(0)
        )
        rest = dict(vec)
        for a in core_syms:
            expected = Element.basis(a).scaled(lam)
            if algebra.has_h:
                expected = expected + omega(Element.basis(a), algebra).scaled(mu)
            for sym, coeff in expected.items():
                pos = posmap.get((a, sym))
                if pos is None:
                    continue
                nv = rest.get(pos, Fraction(0)) - coeff
                if nv:
                    rest[pos] = nv
                else:
                    rest.pop(pos, None)
        c_valued = all(space.columns[pos].out.is_central for pos in rest)
        all_decomposed = all_decomposed and c_valued
        per_vector.append(
            {
                "lambda": fraction_to_str(lam),
                "mu": fraction_to_str(mu),
                "remainder_c_valued": c_valued,
            }
        )
        if lam or mu:
            param_rows.append({0: lam, 1: mu})
    return {
        "per_vector": per_vector,
        "all_decomposed": all_decomposed,
        "quotient_dimension_mod_c_maps": linalg.rank_of(param_rows),
    }


def classify(
    problem: str,
    algebra: AlgebraSpec,
    N: int = 5,
    M: int | None = None,
    K: int = 2,
    workers: int = 1,
) -> dict:
    """Assemble -> nullspace -> core projection -> closed-form matching.

    Returns the full report as a plain dict; serialize with report_json.
    """
    if problem not in PROBLEMS:
        raise WindowTooSmall(f"unknown problem {problem!r}; expected one of {PROBLEMS}")
    if M is None:
        M = 2 * N
    if K < 1:
        raise InvalidCore("classification needs a core radius >= 1")
    if K > N:
        raise InvalidCore(f"core radius {K} exceeds the window radius {N}")
    t0 = time.perf_counter()
    system = _ASSEMBLERS[problem](algebra, N, M, workers=workers)
    t1 = time.perf_counter()
    window_space = nullspace(system)
    t2 = time.perf_counter()
    core = project_to_core(window_space, K)
    t3 = time.perf_counter()
    report = {
        "algebra": algebra.name,
        "problem": problem,
        "N": N,
        "M": M,
        "K": K,
        "raw_dimension": window_space.dimension,
        "core_dimension": core.dimension,
        "core_basis": [map_to_json(solution_to_map(core, i)) for i in range(core.dimension)],
    }
    if problem in ("biderivation", "symmetric-biderivation"):
        params, analysis = _bilinear_analysis(core)
        report["parameters"] = params
        report["analysis"] = analysis
    elif problem == "derivation":
        report["analysis"] = _derivation_analysis(core)
    else:
        report["analysis"] = _commuting_analysis(core)
    report["residual_check"] = _residual_check(core, problem)
    t4 = time.perf_counter()
    report["timings_ms"] = {
        "assemble": round((t1 - t0) * 1000, 3),
        "solve": round((t2 - t1) * 1000, 3),
        "project": round((t3 - t2) * 1000, 3),
        "analyze": round((t4 - t3) * 1000, 3),
        "total": round((t4 - t0) * 1000, 3),
    }
    return report


def center_report(algebra: AlgebraSpec, N: int, K: int | None = None) -> dict:
    """Window center basis plus its core projection."""
    if K is None:
        K = max(N - 2, 0)
    basis = center_basis(algebra, N)
    core = project_elements_to_core(basis, K)
    return {
        "algebra": algebra.name,
        "problem": "center",
        "N": N,
        "K": K,
        "window_dimension": len(basis),
        "window_basis": [el.to_json() for el in basis],
        "core_dimension": len(core),
        "core_basis": [el.to_json() for el in core],
        "core_basis_text": [str(el) for el in core],
    }


def report_json(report: dict, strip_timings: bool = False) -> str:
    """Deterministic serialization; timings are excluded from comparisons."""
    if strip_timings:
        report = {k: v for k, v in report.items() if k != "timings_ms"}
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
