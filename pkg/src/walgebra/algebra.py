"""Exact models of the Virasoro, Witt and W(2,2) Lie algebras over the rationals.

Basis symbols are L(n) and H(n) for signed integer n, plus a central element c.
An Element is a finitely supported rational linear combination of basis symbols
kept in canonical form: no zero coefficients, terms ordered by (family, index).
Every operation here is a pure function on immutable values, so concurrent
reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import InvalidSymbol, UnsupportedAlgebra, WindowTooSmall

# Degree indices must stay representable as 64-bit ints downstream; brackets
# double degrees, so the limit is checked on every constructed symbol.
INDEX_LIMIT = 2**31 - 1

_FAMILY_RANK = {"L": 0, "H": 1, "c": 2}


@dataclass(frozen=True)
class BasisSymbol:
    """A basis label: L(n), H(n) or the central element c.

    The index is ignored for c and normalized to 0 so that equality and
    hashing behave; the degree of L(n) and H(n) is n, the degree of c is 0.
    """

    family: str
    index: int = 0

    def __post_init__(self):
        if self.family not in _FAMILY_RANK:
            raise InvalidSymbol(f"unknown symbol family {self.family!r}")
        if not isinstance(self.index, int) or isinstance(self.index, bool):
            raise InvalidSymbol(f"symbol index must be an int, got {self.index!r}")
        if self.family == "c" and self.index != 0:
            object.__setattr__(self, "index", 0)
        if abs(self.index) > INDEX_LIMIT:
            raise InvalidSymbol(
                f"symbol index {self.index} exceeds the +/-{INDEX_LIMIT} limit"
            )

    @property
    def degree(self) -> int:
        return 0 if self.family == "c" else self.index

    @property
    def is_central(self) -> bool:
        return self.family == "c"

    def sort_key(self) -> tuple[int, int]:
        return (_FAMILY_RANK[self.family], self.index)

    def __str__(self) -> str:
        if self.family == "c":
            return "c"
        return f"{self.family}({self.index})"

    def to_json(self) -> dict:
        if self.family == "c":
            return {"family": "c"}
        return {"family": self.family, "index": self.index}

    @staticmethod
    def from_json(obj) -> "BasisSymbol":
        if not isinstance(obj, dict) or "family" not in obj:
            raise InvalidSymbol(f"not a symbol object: {obj!r}")
        family = obj["family"]
        if family == "c":
            return C
        if "index" not in obj:
            raise InvalidSymbol(f"symbol {family!r} requires an index")
        return BasisSymbol(family, obj["index"])


def L(n: int) -> BasisSymbol:
    return BasisSymbol("L", n)


def H(n: int) -> BasisSymbol:
    return BasisSymbol("H", n)


C = BasisSymbol("c")


def fraction_to_str(x: Fraction) -> str:
    """Canonical p/q form with q > 0 and gcd(p, q) = 1."""
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s) -> Fraction:
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidSymbol(f"bad rational literal {s!r}: {e}") from None
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    raise InvalidSymbol(f"bad rational literal {s!r}")


class Element:
    """A finite rational linear combination of basis symbols, canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisSymbol, Fraction] | None = None):
        data = {}
        if terms:
            for sym, coeff in terms.items():
                coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if coeff:
                    data[sym] = coeff
        self._terms = data

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def basis(cls, sym: BasisSymbol, coeff=1) -> "Element":
        return cls({sym: Fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[BasisSymbol, Fraction]]:
        """Terms in canonical order (family L < H < c, index ascending)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[BasisSymbol]:
        return [s for s, _ in self.items()]

    def coeff(self, sym: BasisSymbol) -> Fraction:
        return self._terms.get(sym, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "Element") -> "Element":
        data = dict(self._terms)
        for sym, coeff in other._terms.items():
            new = data.get(sym, 0) + coeff
            if new:
                data[sym] = new
            else:
                data.pop(sym, None)
        out = Element.__new__(Element)
        out._terms = data
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return self.scaled(-1)

    def scaled(self, scalar) -> "Element":
        scalar = scalar if isinstance(scalar, Fraction) else Fraction(scalar)
        if not scalar:
            return Element.zero()
        out = Element.__new__(Element)
        out._terms = {s: c * scalar for s, c in self._terms.items()}
        return out

    def __rmul__(self, scalar) -> "Element":
        return self.scaled(scalar)

    def __mul__(self, scalar) -> "Element":
        return self.scaled(scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # mutable-dict backed; not meant to be a dict key

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for sym, coeff in self.items():
            if coeff.denominator == 1:
                cs = str(coeff.numerator)
            else:
                cs = f"{coeff.numerator}/{coeff.denominator}"
            parts.append(f"{cs}·{sym}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        out = []
        for sym, coeff in self.items():
            term = sym.to_json()
            term["coeff"] = fraction_to_str(coeff)
            out.append(term)
        return out

    @staticmethod
    def from_json(data) -> "Element":
        if not isinstance(data, list):
            raise InvalidSymbol(f"element literal must be a list, got {type(data).__name__}")
        terms: dict[BasisSymbol, Fraction] = {}
        for item in data:
            if not isinstance(item, dict) or "coeff" not in item:
                raise InvalidSymbol(f"bad element term: {item!r}")
            sym = BasisSymbol.from_json(item)
            terms[sym] = terms.get(sym, Fraction(0)) + fraction_from_str(item["coeff"])
        return Element(terms)


@dataclass(frozen=True)
class AlgebraSpec:
    """One of the four algebra variants.

    The centerless variants reject c outright rather than mapping it to zero,
    and the Virasoro/Witt variants reject the H family.
    """

    name: str
    has_center: bool
    has_h: bool

    def allows(self, sym: BasisSymbol) -> bool:
        if sym.family == "c":
            return self.has_center
        if sym.family == "H":
            return self.has_h
        return True

    def check(self, sym: BasisSymbol) -> None:
        if not self.allows(sym):
            raise InvalidSymbol(f"symbol {sym} is not valid under algebra {self.name!r}")

    def __str__(self) -> str:
        return self.name


VIRASORO = AlgebraSpec("vir", has_center=True, has_h=False)
WITT = AlgebraSpec("witt", has_center=False, has_h=False)
W22 = AlgebraSpec("w22", has_center=True, has_h=True)
W22_CENTERLESS = AlgebraSpec("w22-centerless", has_center=False, has_h=True)

ALGEBRAS = (VIRASORO, WITT, W22, W22_CENTERLESS)

_ALGEBRA_ALIASES = {
    "vir": VIRASORO,
    "virasoro": VIRASORO,
    "witt": WITT,
    "w22": W22,
    "w22-centerless": W22_CENTERLESS,
    "w22centerless": W22_CENTERLESS,
}


def algebra_by_name(name: str) -> AlgebraSpec:
    try:
        return _ALGEBRA_ALIASES[name.strip().lower()]
    except (KeyError, AttributeError):
        raise InvalidSymbol(
            f"unknown algebra {name!r}; expected one of vir, witt, w22, w22-centerless"
        ) from None


def window_symbols(algebra: AlgebraSpec, radius: int) -> list[BasisSymbol]:
    """All basis symbols of degree magnitude <= radius, in canonical order."""
    syms = [L(n) for n in range(-radius, radius + 1)]
    if algebra.has_h:
        syms.extend(H(n) for n in range(-radius, radius + 1))
    if algebra.has_center:
        syms.append(C)
    return syms


def ensure_valid(x: Element, algebra: AlgebraSpec) -> None:
    for sym in x.support():
        algebra.check(sym)


def _central_coeff(m: int) -> Fraction:
    return Fraction(m**3 - m, 12)


def bracket_symbols(a: BasisSymbol, b: BasisSymbol, algebra: AlgebraSpec) -> Element:
    """Lie bracket of two basis symbols; validity of a, b is the caller's job."""
    if a.family == "c" or b.family == "c":
        return Element.zero()
    if a.family == "H" and b.family == "H":
        return Element.zero()
    m, n = a.index, b.index
    terms: dict[BasisSymbol, Fraction] = {}
    if a.family == "L" and b.family == "L":
        if m != n:
            terms[L(m + n)] = Fraction(m - n)
        if m + n == 0 and algebra.has_center:
            cc = _central_coeff(m)
            if cc:
                terms[C] = cc
    elif a.family == "L":  # [L_m, H_n]
        if m != n:
            terms[H(m + n)] = Fraction(m - n)
        if m + n == 0 and algebra.has_center:
            cc = _central_coeff(m)
            if cc:
                terms[C] = cc
    else:  # [H_m, L_n] = -[L_n, H_m]
        if m != n:
            terms[H(m + n)] = Fraction(m - n)
        if m + n == 0 and algebra.has_center:
            cc = -_central_coeff(n)
            if cc:
                terms[C] = cc
    return Element(terms)


def bracket(x: Element, y: Element, algebra: AlgebraSpec) -> Element:
    """Bilinear extension of the basis bracket rules, canonical result."""
    ensure_valid(x, algebra)
    ensure_valid(y, algebra)
    acc: dict[BasisSymbol, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            part = bracket_symbols(a, b, algebra)
            if part.is_zero:
                continue
            scale = ca * cb
            for sym, coeff in part.items():
                new = acc.get(sym, 0) + scale * coeff
                if new:
                    acc[sym] = new
                else:
                    acc.pop(sym, None)
    return Element(acc)


def omega(x: Element, algebra: AlgebraSpec) -> Element:
    """Linear map sending L(n) to H(n) and killing H(n) and c.

    Only defined on the W(2,2) variants; it generates the second family of
    biderivations there.
    """
    if not algebra.has_h:
        raise UnsupportedAlgebra(f"the L->H map is not defined on algebra {algebra.name!r}")
    ensure_valid(x, algebra)
    terms = {}
    for sym, coeff in x.items():
        if sym.family == "L":
            terms[H(sym.index)] = coeff
    return Element(terms)


def jacobi_residual(x: Element, y: Element, z: Element, algebra: AlgebraSpec) -> Element:
    """[[x,y],z] + [[y,z],x] + [[z,x],y]; zero iff the bracket is a Lie bracket."""
    return (
        bracket(bracket(x, y, algebra), z, algebra)
        + bracket(bracket(y, z, algebra), x, algebra)
        + bracket(bracket(z, x, algebra), y, algebra)
    )


def center_basis(algebra: AlgebraSpec, radius: int) -> list[Element]:
    """Basis of window elements commuting with every window basis symbol.

    Brackets are evaluated exactly (results may leave the window); the
    returned basis is the canonical reduced one over the window coordinates.
    """
    if radius < 1:
        raise WindowTooSmall("center computation needs a window radius >= 1")
    from . import linalg  # local import; linalg has no algebra dependency

    syms = window_symbols(algebra, radius)
    index = {s: i for i, s in enumerate(syms)}
    rows: dict[tuple, dict[int, Fraction]] = {}
    for e in syms:
        for u in syms:
            part = bracket_symbols(u, e, algebra)
            for w, coeff in part.items():
                row = rows.setdefault((e, w), {})
                row[index[u]] = row.get(index[u], Fraction(0)) + coeff
    int_rows = []
    for row in rows.values():
        t = linalg.normalize_fraction_row(row)
        if t is not None:
            int_rows.append(t)
    basis = linalg.nullspace_basis(len(syms), int_rows)
    return [Element({syms[i]: c for i, c in vec.items()}) for vec in basis]


def project_elements_to_core(
    elements: Iterable[Element], core_radius: int
) -> list[Element]:
    """Drop terms of degree magnitude > core_radius (c kept), re-reduce canonically."""
    from . import linalg

    projected = []
    for el in elements:
        kept = {s: c for s, c in el.items() if abs(s.degree) <= core_radius}
        projected.append(Element(kept))
    syms = sorted({s for el in projected for s in el.support()}, key=lambda s: s.sort_key())
    index = {s: i for i, s in enumerate(syms)}
    vectors = [{index[s]: c for s, c in el.items()} for el in projected if not el.is_zero]
    reduced = linalg.canonical_span_basis(vectors)
    return [Element({syms[i]: c for i, c in vec.items()}) for vec in reduced]


def element_pairs(symbols: Iterable[BasisSymbol]) -> Iterator[tuple[BasisSymbol, BasisSymbol]]:
    syms = list(symbols)
    for a in syms:
        for b in syms:
            yield a, b
