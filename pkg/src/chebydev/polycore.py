"""Sparse multivariate polynomial arithmetic, exact or float64.

A polynomial is a map from exponent tuples to coefficients.  Two coefficient
fields are supported: exact rationals (``fractions.Fraction``) and binary64
floats.  All construction-time algebra in this package is exact; floats only
appear in the search / LP layers, which convert via :meth:`Poly.to_float64`
(the reverse conversion is deliberately not provided).

Terms are kept in canonical form: no zero coefficients are stored and every
exponent tuple has length ``nvars``.  Serialization and equality order terms
by graded lexicographic order on the exponent tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence, Union

import numpy as np

RATIONAL = "rational"
FLOAT64 = "float64"

Exponent = tuple[int, ...]
Scalar = Union[int, float, Fraction]


class PolyError(ValueError):
    """Base class for polynomial usage errors."""


class FieldMismatchError(PolyError):
    """Raised when exact-rational and float64 operands are mixed."""


class DimensionMismatchError(PolyError):
    """Raised when variable counts or point dimensions disagree."""


def _coerce(field: str, value: Scalar):
    if field == RATIONAL:
        if isinstance(value, Rational):
            return Fraction(value)
        raise FieldMismatchError(
            f"cannot use {value!r} as an exact rational coefficient; "
            "convert the polynomial with to_float64() first"
        )
    return float(value)


def grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    """Graded lexicographic sort key for an exponent tuple."""
    return (sum(exp), exp)


class Poly:
    """Sparse polynomial in ``nvars`` variables over one coefficient field.

    Instances are immutable by convention: no public method mutates ``terms``,
    so values can be shared freely between threads.
    """

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None,
                 field: str = RATIONAL):
        if nvars < 0:
            raise PolyError(f"nvars must be nonnegative, got {nvars}")
        if field not in (RATIONAL, FLOAT64):
            raise PolyError(f"unknown coefficient field {field!r}")
        clean: dict[Exponent, Scalar] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DimensionMismatchError(
                    f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise PolyError(f"negative exponent in {exp}")
            c = _coerce(field, coef)
            if c != 0:
                clean[exp] = clean.get(exp, _coerce(field, 0)) + c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, field: str = RATIONAL) -> "Poly":
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, nvars: int, value: Scalar, field: str = RATIONAL) -> "Poly":
        return cls(nvars, {(0,) * nvars: value}, field)

    @classmethod
    def variable(cls, nvars: int, index: int, field: str = RATIONAL) -> "Poly":
        """The monomial x_index (0-based)."""
        if not 0 <= index < nvars:
            raise DimensionMismatchError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1}, field)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coef: Scalar = 1,
                 field: str = RATIONAL) -> "Poly":
        return cls(len(exponent), {tuple(exponent): coef}, field)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> float:
        """Total degree; the zero polynomial reports -inf."""
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def coefficient(self, exponent: Sequence[int]) -> Scalar:
        zero = Fraction(0) if self.field == RATIONAL else 0.0
        return self.terms.get(tuple(exponent), zero)

    def sorted_terms(self) -> list[tuple[Exponent, Scalar]]:
        """Terms in graded lexicographic order (canonical)."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return f"Poly({self.nvars}, 0, {self.field})"
        bits = []
        for exp, coef in self.sorted_terms()[:8]:
            mono = "*".join(f"x{i}^{e}" for i, e in enumerate(exp) if e)
            bits.append(f"{coef}{'*' + mono if mono else ''}")
        tail = " + ..." if len(self.terms) > 8 else ""
        return f"Poly({self.nvars}, {' + '.join(bits)}{tail}, {self.field})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.nvars == other.nvars and self.field == other.field
                and self.terms == other.terms)

    __hash__ = None

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"nvars mismatch: {self.nvars} vs {other.nvars}")
        if self.field != other.field:
            raise FieldMismatchError(
                f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        if isinstance(other, Poly):
            self._check_compatible(other)
            out = dict(self.terms)
            zero = _coerce(self.field, 0)
            for exp, coef in other.terms.items():
                out[exp] = out.get(exp, zero) + coef
            return Poly(self.nvars, out, self.field)
        return self + Poly.constant(self.nvars, other, self.field)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check_compatible(other)
            out: dict[Exponent, Scalar] = {}
            zero = _coerce(self.field, 0)
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    key = tuple(a + b for a, b in zip(ea, eb))
                    out[key] = out.get(key, zero) + ca * cb
            return Poly(self.nvars, out, self.field)
        s = _coerce(self.field, other)
        return Poly(self.nvars, {e: c * s for e, c in self.terms.items()}, self.field)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError(f"polynomial power must be a nonnegative integer, got {n!r}")
        result = Poly.constant(self.nvars, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation ----------------------------------------------------------

    def eval(self, point: Sequence[Scalar]):
        """Evaluate at a point; exact when both polynomial and point are exact."""
        pt = tuple(point)
        if len(pt) != self.nvars:
            raise DimensionMismatchError(
                f"point has dimension {len(pt)}, expected {self.nvars}")
        if self.field == RATIONAL:
            for v in pt:
                if not isinstance(v, Rational):
                    raise FieldMismatchError(
                        f"exact polynomial evaluated at non-rational coordinate {v!r}")
            total = Fraction(0)
            for exp, coef in self.terms.items():
                term = coef
                for e, v in zip(exp, pt):
                    if e:
                        term *= Fraction(v) ** e
                total += term
            return total
        xs = [float(v) for v in pt]
        total = 0.0
        for exp, coef in self.terms.items():
            term = coef
            for e, v in zip(exp, xs):
                if e:
                    term *= v ** e
            total += term
        return total

    def eval_grid(self, points: np.ndarray, chunk: int = 65536) -> np.ndarray:
        """Vectorized float evaluation at an (N, nvars) array of points."""
        p = self if self.field == FLOAT64 else self.to_float64()
        pts = np.ascontiguousarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != p.nvars:
            raise DimensionMismatchError(
                f"grid shape {pts.shape} incompatible with nvars={p.nvars}")
        if not p.terms:
            return np.zeros(len(pts))
        items = list(p.terms.items())
        exps = np.array([e for e, _ in items], dtype=np.int64)
        coefs = np.array([c for _, c in items], dtype=float)
        out = np.empty(len(pts))
        maxdeg = int(exps.max()) if exps.size else 0
        for lo in range(0, len(pts), chunk):
            block = pts[lo:lo + chunk]
            # per-variable power tables, then product over variables per term
            pows = block[:, :, None] ** np.arange(maxdeg + 1)
            vals = np.ones((len(block), len(exps)))
            for i in range(p.nvars):
                vals *= pows[:, i, exps[:, i]]
            out[lo:lo + chunk] = vals @ coefs
        return out

    # -- calculus and substitution -------------------------------------------

    def partial(self, index: int) -> "Poly":
        """Formal partial derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.nvars:
            raise DimensionMismatchError(
                f"variable index {index} out of range for nvars={self.nvars}")
        out: dict[Exponent, Scalar] = {}
        for exp, coef in self.terms.items():
            e = exp[index]
            if e:
                key = exp[:index] + (e - 1,) + exp[index + 1:]
                out[key] = out.get(key, _coerce(self.field, 0)) + coef * e
        return Poly(self.nvars, out, self.field)

    def gradient(self) -> list["Poly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def compose(self, inners: Sequence["Poly"]) -> "Poly":
        """Substitute inners[i] for variable i; all inners share nvars and field."""
        if len(inners) != self.nvars:
            raise DimensionMismatchError(
                f"expected {self.nvars} inner polynomials, got {len(inners)}")
        if not inners:
            return Poly(0, dict(self.terms), self.field)
        ref = inners[0]
        for q in inners[1:]:
            ref._check_compatible(q)
        if ref.field != self.field:
            raise FieldMismatchError(
                f"field mismatch: outer {self.field}, inner {ref.field}")
        # memoized powers of each inner polynomial
        pow_cache: list[dict[int, Poly]] = [
            {0: Poly.constant(ref.nvars, 1, ref.field)} for _ in inners]
        def inner_pow(i: int, e: int) -> Poly:
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = inner_pow(i, e - 1) * inners[i]
            return cache[e]
        total = Poly.zero(ref.nvars, ref.field)
        for exp, coef in self.sorted_terms():
            term = Poly.constant(ref.nvars, coef, ref.field)
            for i, e in enumerate(exp):
                if e:
                    term = term * inner_pow(i, e)
            total = total + term
        return total

    def to_float64(self) -> "Poly":
        """Lossy-free downcast of exact coefficients to binary64."""
        if self.field == FLOAT64:
            return self
        return Poly(self.nvars, {e: float(c) for e, c in self.terms.items()}, FLOAT64)


# -- module-level operations ------------------------------------------------


def laplacian(p: Poly) -> Poly:
    """Sum of second partials over all variables."""
    total = Poly.zero(p.nvars, p.field)
    for i in range(p.nvars):
        total = total + p.partial(i).partial(i)
    return total


def restrict_zero(p: Poly, index: int) -> Poly:
    """Restrict to the face x_index = 0, dropping that variable."""
    if p.nvars < 1:
        raise DimensionMismatchError("cannot restrict a 0-variable polynomial")
    if not 0 <= index < p.nvars:
        raise DimensionMismatchError(
            f"variable index {index} out of range for nvars={p.nvars}")
    out: dict[Exponent, Scalar] = {}
    for exp, coef in p.terms.items():
        if exp[index] == 0:
            out[exp[:index] + exp[index + 1:]] = coef
    return Poly(p.nvars - 1, out, p.field)


def restrict_affine_last(p: Poly) -> Poly:
    """Substitute x_last = 1 - x_0 - ... - x_{d-2}, returning a (d-1)-variable polynomial."""
    if p.nvars < 2:
        raise DimensionMismatchError("affine restriction needs at least 2 variables")
    d = p.nvars
    inners = [Poly.variable(d - 1, i, p.field) for i in range(d - 1)]
    last = Poly.constant(d - 1, 1, p.field)
    for i in range(d - 1):
        last = last - inners[i]
    return p.compose(inners + [last])


def insert_zero(point: Sequence[Scalar], index: int) -> tuple:
    """Inverse of restrict_zero on points: re-insert a zero coordinate."""
    pt = list(point)
    pt.insert(index, 0)
    return tuple(pt)


def poly_equal(a: Poly, b: Poly, tol: Scalar = 0) -> bool:
    """Term-map equality; for float operands, max coefficient difference <= tol."""
    if a.nvars != b.nvars:
        raise DimensionMismatchError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    if a.field == RATIONAL and b.field == RATIONAL and tol == 0:
        return a.terms == b.terms
    af, bf = a.to_float64(), b.to_float64()
    keys = set(af.terms) | set(bf.terms)
    return all(abs(af.terms.get(k, 0.0) - bf.terms.get(k, 0.0)) <= tol for k in keys)


def max_coefficient_difference(a: Poly, b: Poly) -> float:
    af, bf = a.to_float64(), b.to_float64()
    keys = set(af.terms) | set(bf.terms)
    if not keys:
        return 0.0
    return max(abs(af.terms.get(k, 0.0) - bf.terms.get(k, 0.0)) for k in keys)


# -- canonical JSON serialization ---------------------------------------------


def poly_to_json_dict(p: Poly) -> dict:
    """Canonical JSON form; terms in graded-lex order, rational coefs as "p/q"."""
    terms = []
    for exp, coef in p.sorted_terms():
        if p.field == RATIONAL:
            c = f"{coef.numerator}/{coef.denominator}"
        else:
            c = float(coef)
        terms.append({"exp": list(exp), "coef": c})
    return {"nvars": p.nvars, "field": p.field, "terms": terms}


def poly_from_json_dict(data: Mapping) -> Poly:
    field = data["field"]
    terms = {}
    for item in data["terms"]:
        exp = tuple(int(e) for e in item["exp"])
        coef = item["coef"]
        if field == RATIONAL:
            coef = Fraction(str(coef))
        terms[exp] = coef
    return Poly(int(data["nvars"]), terms, field)
