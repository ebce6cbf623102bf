"""Degree-window tables for linear and bilinear maps, and residual checkers
for the identities that classify them (derivation, biderivation, commuting
map, commutative post-Lie product).

A map is total on its window: every window symbol (or ordered pair of them)
must have an entry, possibly zero.  Missing or duplicate entries are
construction errors, never implicit zeros.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .algebra import (
    AlgebraSpec,
    BasisSymbol,
    C,
    Element,
    algebra_by_name,
    bracket,
    ensure_valid,
    omega,
    window_symbols,
)
from .errors import InvalidSymbol, MapFormatError, OutOfWindow, UnsupportedAlgebra


def _check_value(value: Element, algebra: AlgebraSpec, bound: int | None) -> None:
    ensure_valid(value, algebra)
    if bound is not None:
        for sym in value.support():
            if abs(sym.degree) > bound:
                raise InvalidSymbol(
                    f"map value contains {sym}, beyond the allowed degree bound {bound}"
                )


class LinearMapWindow:
    """A linear map given by its values on every basis symbol of a window."""

    __slots__ = ("algebra", "radius", "values")

    def __init__(self, algebra: AlgebraSpec, radius: int, values: dict[BasisSymbol, Element]):
        expected = window_symbols(algebra, radius)
        missing = [s for s in expected if s not in values]
        if missing:
            raise InvalidSymbol(f"map table is missing an entry for {missing[0]}")
        extra = [s for s in values if s not in set(expected)]
        if extra:
            raise InvalidSymbol(f"map table has an entry for {extra[0]} outside the window")
        for v in values.values():
            _check_value(v, algebra, None)
        self.algebra = algebra
        self.radius = radius
        self.values = dict(values)

    @property
    def kind(self) -> str:
        return "linear"

    def window(self) -> list[BasisSymbol]:
        return window_symbols(self.algebra, self.radius)

    def entry(self, sym: BasisSymbol) -> Element:
        try:
            return self.values[sym]
        except KeyError:
            raise OutOfWindow(f"symbol {sym} is outside the map window (radius {self.radius})") from None

    def apply(self, x: Element) -> Element:
        out = Element.zero()
        for sym, coeff in x.items():
            out = out + self.entry(sym).scaled(coeff)
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearMapWindow):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.radius == other.radius
            and self.values == other.values
        )


class BilinearMapWindow:
    """A bilinear map given by its values on every ordered pair of window symbols.

    Values are supported on degrees of magnitude <= value_radius (2*radius by
    default: the bracket of two window elements reaches exactly that far) plus c.
    """

    __slots__ = ("algebra", "radius", "value_radius", "values")

    def __init__(
        self,
        algebra: AlgebraSpec,
        radius: int,
        values: dict[tuple[BasisSymbol, BasisSymbol], Element],
        value_radius: int | None = None,
    ):
        self.value_radius = 2 * radius if value_radius is None else value_radius
        expected = window_symbols(algebra, radius)
        pairs = [(a, b) for a in expected for b in expected]
        missing = [p for p in pairs if p not in values]
        if missing:
            a, b = missing[0]
            raise InvalidSymbol(f"map table is missing an entry for ({a}, {b})")
        if len(values) != len(pairs):
            extra = [p for p in values if p not in set(pairs)]
            a, b = extra[0]
            raise InvalidSymbol(f"map table has an entry for ({a}, {b}) outside the window")
        for v in values.values():
            _check_value(v, algebra, self.value_radius)
        self.algebra = algebra
        self.radius = radius
        self.values = dict(values)

    @property
    def kind(self) -> str:
        return "bilinear"

    def window(self) -> list[BasisSymbol]:
        return window_symbols(self.algebra, self.radius)

    def entry(self, a: BasisSymbol, b: BasisSymbol) -> Element:
        try:
            return self.values[(a, b)]
        except KeyError:
            raise OutOfWindow(
                f"pair ({a}, {b}) is outside the map window (radius {self.radius})"
            ) from None

    def apply(self, x: Element, y: Element) -> Element:
        out = Element.zero()
        for a, ca in x.items():
            for b, cb in y.items():
                out = out + self.entry(a, b).scaled(ca * cb)
        return out

    def __eq__(self, other):
        if not isinstance(other, BilinearMapWindow):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.radius == other.radius
            and self.values == other.values
        )


# ---------------------------------------------------------------------------
# named map constructors


def identity_map(algebra: AlgebraSpec, radius: int) -> LinearMapWindow:
    return LinearMapWindow(
        algebra, radius, {s: Element.basis(s) for s in window_symbols(algebra, radius)}
    )

def zero_linear_map(algebra: AlgebraSpec, radius: int) -> LinearMapWindow:
    return LinearMapWindow(
        algebra, radius, {s: Element.zero() for s in window_symbols(algebra, radius)}
    )


def l_to_h_map(algebra: AlgebraSpec, radius: int) -> LinearMapWindow:
    """Window table of the map L(n) -> H(n), H(n) -> 0, c -> 0."""
    if not algebra.has_h:
        raise UnsupportedAlgebra(f"the L->H map is not defined on algebra {algebra.name!r}")
    return LinearMapWindow(
        algebra,
        radius,
        {s: omega(Element.basis(s), algebra) for s in window_symbols(algebra, radius)},
    )


def h_scaling_map(algebra: AlgebraSpec, radius: int) -> LinearMapWindow:
    """The outer derivation of the W(2,2) variants: zero on L(n) and c, identity on H(n).

    Its value on c is pinned to 0: the derivation identity applied to
    c = 2[L(2), L(-2)] - 8 L(0) forces the c entry to vanish.
    """
    if not algebra.has_h:
        raise UnsupportedAlgebra(
            f"the H-scaling derivation is not defined on algebra {algebra.name!r}"
        )
    values = {}
    for s in window_symbols(algebra, radius):
        values[s] = Element.basis(s) if s.family == "H" else Element.zero()
    return LinearMapWindow(algebra, radius, values)


def inner_derivation(x: Element, algebra: AlgebraSpec, radius: int) -> LinearMapWindow:
    """The table e -> [x, e] on the window."""
    ensure_valid(x, algebra)
    return LinearMapWindow(
        algebra,
        radius,
        {s: bracket(x, Element.basis(s), algebra) for s in window_symbols(algebra, radius)},
    )


def inner_biderivation(coeff, algebra: AlgebraSpec, radius: int) -> BilinearMapWindow:
    """(x, y) -> coeff * [x, y] on the window."""
    coeff = Fraction(coeff)
    syms = window_symbols(algebra, radius)
    values = {
        (a, b): bracket(Element.basis(a), Element.basis(b), algebra).scaled(coeff)
        for a in syms
        for b in syms
    }
    return BilinearMapWindow(algebra, radius, values)


def l_to_h_biderivation(coeff, algebra: AlgebraSpec, radius: int) -> BilinearMapWindow:
    """(x, y) -> coeff * [omega(x), y] where omega is the L->H map."""
    if not algebra.has_h:
        raise UnsupportedAlgebra(
            f"the twisted-bracket biderivation is not defined on algebra {algebra.name!r}"
        )
    coeff = Fraction(coeff)
    syms = window_symbols(algebra, radius)
    values = {
        (a, b): bracket(omega(Element.basis(a), algebra), Element.basis(b), algebra).scaled(coeff)
        for a in syms
        for b in syms
    }
    return BilinearMapWindow(algebra, radius, values)


def combine_bilinear(f: BilinearMapWindow, g: BilinearMapWindow, cf=1, cg=1) -> BilinearMapWindow:
    if f.algebra != g.algebra or f.radius != g.radius:
        raise InvalidSymbol("cannot combine bilinear maps over different windows")
    values = {
        pair: f.values[pair].scaled(cf) + g.values[pair].scaled(cg) for pair in f.values
    }
    return BilinearMapWindow(
        f.algebra, f.radius, values, max(f.value_radius, g.value_radius)
    )


# ---------------------------------------------------------------------------
# residuals


def derivation_residual(phi: LinearMapWindow, x: Element, y: Element) -> Element:
    """phi([x,y]) - [phi(x), y] - [x, phi(y)]."""
    alg = phi.algebra
    b = bracket(x, y, alg)
    return phi.apply(b) - bracket(phi.apply(x), y, alg) - bracket(x, phi.apply(y), alg)


def commuting_residual(phi: LinearMapWindow, x: Element, y: Element) -> Element:
    """[phi(x), y] + [phi(y), x]; the polarized form of [phi(x), x] = 0."""
    alg = phi.algebra
    return bracket(phi.apply(x), y, alg) + bracket(phi.apply(y), x, alg)


def _bider_first_slot(f: BilinearMapWindow, x, y, z) -> Element:
    alg = f.algebra
    return f.apply(bracket(x, y, alg), z) - bracket(x, f.apply(y, z), alg) - bracket(
        f.apply(x, z), y, alg
    )


def _bider_second_slot(f: BilinearMapWindow, x, y, z) -> Element:
    alg = f.algebra
    return f.apply(x, bracket(y, z, alg)) - bracket(f.apply(x, y), z, alg) - bracket(
        y, f.apply(x, z), alg
    )


def biderivation_residuals(
    f: BilinearMapWindow, x: Element, y: Element, z: Element
) -> tuple[Element, Element]:
    """Left-minus-right residuals of the two biderivation axioms."""
    return _bider_first_slot(f, x, y, z), _bider_second_slot(f, x, y, z)


def postlie_residuals(
    f: BilinearMapWindow, x: Element, y: Element, z: Element
) -> tuple[Element, Element, Element]:
    """Residuals of commutativity and the two post-Lie axioms.

    The middle axiom nests the product, so it is only checkable where the
    inner value's support stays inside the window; OutOfWindow propagates.
    """
    alg = f.algebra
    sym = f.apply(x, y) - f.apply(y, x)
    mid = f.apply(bracket(x, y, alg), z) - f.apply(x, f.apply(y, z)) + f.apply(
        y, f.apply(x, z)
    )
    right = _bider_second_slot(f, x, y, z)
    return sym, mid, right


# ---------------------------------------------------------------------------
# tuple enumeration and verification

def element_in_window(el: Element, algebra: AlgebraSpec, radius: int) -> bool:
    window = set(window_symbols(algebra, radius))
    return all(s in window for s in el.support())


def bracket_in_window(a: BasisSymbol, b: BasisSymbol, algebra: AlgebraSpec, radius: int) -> bool:
    return element_in_window(bracket(Element.basis(a), Element.basis(b), algebra), algebra, radius)


VERIFY_CHECKS = {
    "derivation": "linear",
    "commuting": "linear",
    "biderivation": "bilinear",
    "symmetric-biderivation": "bilinear",
    "postlie": "bilinear",
}


def _iter_failures(m, check: str) -> Iterator[tuple[tuple, str, Element]]:
    """Yield (tuple, identity label, residual) for every nonzero residual."""
    alg, radius = m.algebra, m.radius
    syms = window_symbols(alg, radius)
    basis = {s: Element.basis(s) for s in syms}
    if check == "derivation":
        for a in syms:
            for b in syms:
                if not bracket_in_window(a, b, alg, radius):
                    continue
                r = derivation_residual(m, basis[a], basis[b])
                if not r.is_zero:
                    yield (a, b), "derivation", r
    elif check == "commuting":
        for i, a in enumerate(syms):
            for b in syms[i:]:
                r = commuting_residual(m, basis[a], basis[b])
                if not r.is_zero:
                    yield (a, b), "commuting", r
    elif check in ("biderivation", "symmetric-biderivation"):
        if check == "symmetric-biderivation":
            for i, a in enumerate(syms):
                for b in syms[i + 1 :]:
                    r = m.entry(a, b) - m.entry(b, a)
                    if not r.is_zero:
                        yield (a, b), "symmetry", r
        for a in syms:
            for b in syms:
                first_ok = bracket_in_window(a, b, alg, radius)
                for z in syms:
                    if first_ok:
                        r = _bider_first_slot(m, basis[a], basis[b], basis[z])
                        if not r.is_zero:
                            yield (a, b, z), "first-slot", r
                    if bracket_in_window(b, z, alg, radius):
                        r = _bider_second_slot(m, basis[a], basis[b], basis[z])
                        if not r.is_zero:
                            yield (a, b, z), "second-slot", r
    elif check == "postlie":
        for i, a in enumerate(syms):
            for b in syms[i + 1 :]:
                r = m.entry(a, b) - m.entry(b, a)
                if not r.is_zero:
                    yield (a, b), "symmetry", r
        for a in syms:
            for b in syms:
                first_ok = bracket_in_window(a, b, alg, radius)
                for z in syms:
                    if first_ok:
                        try:
                            r = m.apply(
                                bracket(basis[a], basis[b], alg), basis[z]
                            ) - m.apply(basis[a], m.entry(b, z)) + m.apply(
                                basis[b], m.entry(a, z)
                            )
                        except OutOfWindow:
                            yield (a, b, z), "nested-out-of-window", None
                        else:
                            if not r.is_zero:
                                yield (a, b, z), "bracket-action", r
                    if bracket_in_window(b, z, alg, radius):
                        r = _bider_second_slot(m, basis[a], basis[b], basis[z])
                        if not r.is_zero:
                            yield (a, b, z), "product-rule", r
    else:
        raise MapFormatError(f"unknown verification check {check!r}")


def run_verification(m, check: str, max_failures: int = 10) -> dict:
    """Evaluate every admissible residual of the chosen identity on the map's window."""
    expected_kind = VERIFY_CHECKS.get(check)
    if expected_kind is None:
        raise MapFormatError(f"unknown verification check {check!r}")
    if m.kind != expected_kind:
        raise MapFormatError(
            f"check {check!r} needs a {expected_kind} map, got a {m.kind} one"
        )
    failures = []
    skipped = []
    checked = 0
    for tup, label, residual in _iter_failures(m, check):
        if residual is None:
            skipped.append({"tuple": [str(s) for s in tup], "identity": label})
            continue
        if len(failures) < max_failures:
            failures.append(
                {
                    "tuple": [str(s) for s in tup],
                    "identity": label,
                    "residual": residual.to_json(),
                    "residual_text": str(residual),
                }
            )
        checked += 1
    report = {
        "algebra": m.algebra.name,
        "window": m.radius,
        "kind": m.kind,
        "check": check,
        "failure_count": checked,
        "failures": failures,
        "status": "pass" if checked == 0 else "fail",
    }
    if skipped:
        report["nested_out_of_window"] = skipped[:max_failures]
        report["nested_out_of_window_count"] = len(skipped)
    return report


# ---------------------------------------------------------------------------
# map file format


def map_to_json(m) -> dict:
    entries = []
    if m.kind == "linear":
        for s in m.window():
            entries.append({"arg": s.to_json(), "value": m.values[s].to_json()})
    else:
        syms = m.window()
        for a in syms:
            for b in syms:
                entries.append(
                    {"arg": [a.to_json(), b.to_json()], "value": m.values[(a, b)].to_json()}
                )
    return {"algebra": m.algebra.name, "window": m.radius, "kind": m.kind, "entries": entries}


def map_from_json(obj) -> LinearMapWindow | BilinearMapWindow:
    if not isinstance(obj, dict):
        raise MapFormatError("map file must be a JSON object")
    for key in ("algebra", "window", "kind", "entries"):
        if key not in obj:
            raise MapFormatError(f"map file is missing the {key!r} field")
    try:
        algebra = algebra_by_name(obj["algebra"])
    except InvalidSymbol as e:
        raise MapFormatError(str(e)) from None
    radius = obj["window"]
    if not isinstance(radius, int) or isinstance(radius, bool) or radius < 0:
        raise MapFormatError(f"bad window radius {radius!r}")
    kind = obj["kind"]
    if kind not in ("linear", "bilinear"):
        raise MapFormatError(f"bad map kind {kind!r}")
    entries = obj["entries"]
    if not isinstance(entries, list):
        raise MapFormatError("entries must be a list")
    try:
        if kind == "linear":
            values: dict = {}
            for entry in entries:
                sym = BasisSymbol.from_json(entry["arg"])
                if sym in values:
                    raise MapFormatError(f"duplicate entry for {sym}")
                values[sym] = Element.from_json(entry["value"])
            return LinearMapWindow(algebra, radius, values)
        pair_values: dict = {}
        for entry in entries:
            arg = entry["arg"]
            if not isinstance(arg, list) or len(arg) != 2:
                raise MapFormatError(f"bilinear entry arg must be a pair, got {arg!r}")
            pair = (BasisSymbol.from_json(arg[0]), BasisSymbol.from_json(arg[1]))
            if pair in pair_values:
                raise MapFormatError(f"duplicate entry for ({pair[0]}, {pair[1]})")
            pair_values[pair] = Element.from_json(entry["value"])
        return BilinearMapWindow(algebra, radius, pair_values)
    except MapFormatError:
        raise
    except (InvalidSymbol, KeyError, TypeError) as e:
        raise MapFormatError(f"bad map entry: {e}") from None
