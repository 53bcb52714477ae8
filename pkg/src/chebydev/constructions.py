"""Construction of the extremal families.

Two families are built here:

* the exact-rational recursive family T_d (d >= 3) with its scale constants
  r_d, where T_3 = 72 e_3 - 4 e_1 + 4 e_1^2 - 8 e_2 + 1 and
  T_k = r_k e_k - T_{k-1} with r_k = k^k [T_{k-1}(1/k, ..., 1/k) + 1];
* the float64 degree-6 family R_5 / U_5 in three (resp. two) variables whose
  coefficients involve the root of an explicit integer degree-8 polynomial.

r_d is computed both by the recursion and by a closed-form sum, and the
builders fail loudly if the two disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .polycore import FLOAT64, RATIONAL, Poly, PolyError, restrict_affine_last
from .symfun import elementary_symmetric

# Integer coefficients (ascending degree) of the polynomial whose root in
# (-1.3, -1.1) determines the R_5 constants.
R5_ROOT_POLY = (
    -612220032, -1365527808, -835528041, -101556504,
    23270976, 26037504, 7670016, 929280, 41984,
)

R5_ROOT_BRACKET = (-1.3, -1.1)


# --------------------------------------------------------------------------
# the exact family T_d and its scale r_d
# --------------------------------------------------------------------------


def _t3_at_uniform(k: int) -> Fraction:
    """T_3 evaluated at (1/k, ..., 1/k) in k variables: (9k^2 - 32k + 24)/k^2."""
    k = Fraction(k)
    return (9 * k * k - 32 * k + 24) / (k * k)


def compute_rd(d: int, method: str = "closed_form") -> int:
    """The leading scale r_d of T_d, as an exact integer.

    ``closed_form`` uses r_d = d * sum_{k=4}^{d} k^{d-3} C(d,k)
    [(-1)^k (9k^2 - 32k + 24) + k^2], with the base value r_3 = 72.
    ``recursive`` evaluates the definition r_k = k^k [T_{k-1}(1/k 1^k) + 1]
    exactly, expanding T_{k-1} at the uniform point through the e_k values
    e_j(1/k 1^k) = C(k, j) k^{-j}.
    """
    if d < 3:
        raise PolyError(f"r_d is defined for d >= 3, got {d}")
    if method == "closed_form":
        if d == 3:
            return 72
        total = sum(
            k ** (d - 3) * comb(d, k) * ((-1) ** k * (9 * k * k - 32 * k + 24) + k * k)
            for k in range(4, d + 1)
        )
        return d * total
    if method == "recursive":
        rs: dict[int, int] = {3: 72}
        for k in range(4, d + 1):
            # T_{k-1} at a_k = (1/k, ..., 1/k), exactly
            val = (-1) ** (k - 1 - 3) * _t3_at_uniform(k)
            for j in range(4, k):
                val += (-1) ** (k - 1 - j) * rs[j] * Fraction(comb(k, j), k ** j)
            rk = k ** k * (val + 1)
            if rk.denominator != 1:
                raise PolyError(f"recursive r_{k} is not an integer: {rk}")
            rs[k] = int(rk)
        return rs[d]
    raise PolyError(f"unknown method {method!r}; use 'closed_form' or 'recursive'")


def prime_factorization(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for the r_d table sizes)."""
    if n <= 0:
        raise PolyError(f"expected a positive integer, got {n}")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    q = 7
    while q * q <= n:
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
        q += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class FamilyReport:
    """A constructed family member with its deviation scale."""

    dimension: int
    polynomial: Poly
    r_value: object          # exact int/Fraction for T_d, float (27^2 b) for R_5
    construction_log: str
    constants: "R5Constants | None" = None


def build_t3(nvars: int, field: str = RATIONAL) -> Poly:
    """72 e_3 - 4 e_1 + 4 e_1^2 - 8 e_2 + 1, in any number of variables >= 3."""
    e1 = elementary_symmetric(1, nvars, field)
    e2 = elementary_symmetric(2, nvars, field)
    e3 = elementary_symmetric(3, nvars, field)
    return 72 * e3 - 4 * e1 + 4 * e1 * e1 - 8 * e2 + 1


def build_td(d: int) -> FamilyReport:
    """The exact-rational polynomial T_d in d variables.

    Alternating-sum form of the recursion:
    T_d = sum_{k=4}^{d} (-1)^{d-k} r_k e_k + (-1)^{d-3} T_3.
    Both r_d evaluation routes are compared and a disagreement aborts the build.
    """
    if d < 3:
        raise PolyError(f"T_d is defined for d >= 3, got {d}")
    rs = {}
    for k in range(3, d + 1):
        closed = compute_rd(k, "closed_form")
        recursive = compute_rd(k, "recursive")
        if closed != recursive:
            raise PolyError(
                f"r_{k} mismatch: closed form {closed} vs recursion {recursive}")
        rs[k] = closed
    poly = (-1) ** (d - 3) * build_t3(d)
    for k in range(4, d + 1):
        poly = poly + (-1) ** (d - k) * rs[k] * elementary_symmetric(k, d)
    uniform = [Fraction(1, d)] * d
    if poly.eval(uniform) != 1:
        raise PolyError(f"T_{d} normalization failed at the uniform point")
    log = (f"T_{d}: alternating e_k sum with scales "
           + ", ".join(f"r_{k}={rs[k]}" for k in sorted(rs))
           + "; closed-form and recursive scales agree; value 1 at (1/d,...,1/d)")
    return FamilyReport(dimension=d, polynomial=poly, r_value=rs[d],
                        construction_log=log)


# --------------------------------------------------------------------------
# the R_5 / U_5 family
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class R5Constants:
    """Constants of the degree-6 family: the selected root and derived values.

    The quartic factor of the diagonal factorization is 2 b (9x + d_root)^2,
    which forces a = 16 (3 - 4 d_root) / (3 d_root^2) and b = 32 / d_root^2.
    The additive constant c is pinned by requiring U_5(1/3, 1/3) = 1, which
    gives c = 32/9 + a + b (direct evaluation; the value 2/9 sometimes quoted
    for this offset does not satisfy the normalization).
    """

    d_root: float
    a: float
    b: float
    c: float
    leading: float  # 27^2 * b

    def validate(self) -> None:
        if not (R5_ROOT_BRACKET[0] < self.d_root < R5_ROOT_BRACKET[1]):
            raise PolyError(f"d_root {self.d_root} outside {R5_ROOT_BRACKET}")
        for name, got, want in (
            ("b", self.b, 32 / self.d_root ** 2),
            ("a", self.a, 16 * (3 - 4 * self.d_root) / (3 * self.d_root ** 2)),
            ("c", self.c, 32 / 9 + self.a + self.b),
            ("leading", self.leading, 729 * self.b),
        ):
            if not math.isfinite(got) or abs(got - want) > 1e-9 * max(1.0, abs(want)):
                raise PolyError(f"inconsistent R5 constant {name}: {got} vs {want}")


def _eval_root_poly(t: float) -> float:
    acc = 0.0
    for c in reversed(R5_ROOT_POLY):
        acc = acc * t + c
    return acc


def _eval_root_poly_deriv(t: float) -> float:
    acc = 0.0
    for i in range(len(R5_ROOT_POLY) - 1, 0, -1):
        acc = acc * t + i * R5_ROOT_POLY[i]
    return acc


def real_roots_of_r5_poly(scan_step: float = 0.01,
                          scan_range: tuple[float, float] = (-10.0, 10.0)) -> list[float]:
    """All real roots of the degree-8 polynomial found by sign-change scan,
    bisection, and Newton polish."""
    lo, hi = scan_range
    n = int(round((hi - lo) / scan_step))
    roots = []
    prev_t, prev_v = lo, _eval_root_poly(lo)
    for i in range(1, n + 1):
        t = lo + i * scan_step
        v = _eval_root_poly(t)
        if prev_v == 0.0:
            roots.append(prev_t)
        elif prev_v * v < 0:
            a, b = prev_t, t
            fa = prev_v
            for _ in range(200):
                m = 0.5 * (a + b)
                fm = _eval_root_poly(m)
                if fm == 0.0 or (b - a) < 1e-14:
                    break
                if fa * fm < 0:
                    b = m
                else:
                    a, fa = m, fm
            x = 0.5 * (a + b)
            for _ in range(50):
                f = _eval_root_poly(x)
                df = _eval_root_poly_deriv(x)
                if df == 0.0:
                    break
                step = f / df
                x -= step
                if abs(step) < 1e-15 * max(1.0, abs(x)):
                    break
            roots.append(x)
        prev_t, prev_v = t, v
    return roots


def derive_r5_constants() -> R5Constants:
    """Find the defining root in (-1.3, -1.1) and derive a, b, c, 27^2 b."""
    roots = real_roots_of_r5_poly()
    inside = [r for r in roots if R5_ROOT_BRACKET[0] < r < R5_ROOT_BRACKET[1]]
    if not inside:
        raise PolyError(
            f"no real root of the degree-8 polynomial in {R5_ROOT_BRACKET}; "
            f"found roots {roots} (transcription error?)")
    d_root = inside[0]
    a = 16 * (3 - 4 * d_root) / (3 * d_root ** 2)
    b = 32 / d_root ** 2
    consts = R5Constants(d_root=d_root, a=a, b=b, c=32 / 9 + a + b, leading=729 * b)
    consts.validate()
    return consts


def build_r5(consts: R5Constants) -> Poly:
    """The explicit degree-6 polynomial R_5(x1, x2, x3), float64 coefficients."""
    consts.validate()
    a, b = consts.a, consts.b
    x = [Poly.variable(3, i, FLOAT64) for i in range(3)]
    e1 = x[0] + x[1] + x[2]
    e2 = x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    e3 = x[0] * x[1] * x[2]
    m2 = x[0] ** 2 + x[1] ** 2 + x[2] ** 2
    inner = 1 - 4 * e1 + 4 * m2
    return (729 * b * e3 ** 2 - 1 + 2 * e1 - 2 * e1 ** 2 + 2 * inner ** 2
            - 27 * e3 * ((32 / 9 - 2 * a + b) * e1 ** 2 + 6 * a * e2))


def build_u5(consts: R5Constants) -> Poly:
    """U_5(x, y) = R_5 restricted to the face x1 + x2 + x3 = 1, built from its
    two-variable closed form."""
    consts.validate()
    a, b, c = consts.a, consts.b, consts.c
    x = Poly.variable(2, 0, FLOAT64)
    y = Poly.variable(2, 1, FLOAT64)
    z = 1 - x - y
    m2 = x ** 2 + y ** 2 + z ** 2
    prod = x * y * z
    return 27 * prod * (27 * b * prod + 3 * a * m2 - c) + 2 * (4 * m2 - 3) ** 2 - 1


def build_u3() -> Poly:
    """U_3 = T_3 restricted to the face x1 + x2 + x3 = 1 (exact rational)."""
    return restrict_affine_last(build_t3(3))


def build_r3() -> FamilyReport:
    report = build_td(3)
    return FamilyReport(
        dimension=3, polynomial=report.polynomial, r_value=report.r_value,
        construction_log="R_3 = T_3 in three variables; " + report.construction_log)


def build_r5_report() -> FamilyReport:
    consts = derive_r5_constants()
    poly = build_r5(consts)
    log = (f"R_5: root d={consts.d_root!r} selected in {R5_ROOT_BRACKET} from the "
           f"degree-8 integer polynomial; a={consts.a!r}, b={consts.b!r}, "
           f"c=32/9+a+b={consts.c!r}, leading 27^2 b={consts.leading!r}")
    return FamilyReport(dimension=3, polynomial=poly, r_value=consts.leading,
                        construction_log=log, constants=consts)


def lift_to_ball(p: Poly) -> Poly:
    """Substitute x_i -> x_i^2, carrying a simplex extremal polynomial to the ball."""
    inners = [Poly.variable(p.nvars, i, p.field) ** 2 for i in range(p.nvars)]
    return p.compose(inners)


# --------------------------------------------------------------------------
# the face defect of the displayed R_5 formula and its repair
# --------------------------------------------------------------------------


def r5_face_defect(consts: R5Constants) -> dict:
    """Maximum of |R_5| on the diagonal of a face x_i = 0.

    The published closed form of R_5 exceeds 1 there: on x_3 = 0, x = y, the
    restriction g(x) = -1 + 4x - 8x^2 + 2(1 - 8x + 8x^2)^2 has an interior
    critical point (a root of 128x^3 - 192x^2 + 76x - 7) with g > 1, so the
    displayed polynomial is not bounded by 1 on the full simplex even though
    it is on the face sum x_i = 1."""
    import numpy as np

    from .polycore import restrict_zero
    face = restrict_zero(build_r5(consts), 2)
    x = Poly.variable(1, 0, FLOAT64)
    diag = face.compose([x, x])
    dcoef = diag.partial(0)
    degree = int(dcoef.degree())
    coeffs = [float(dcoef.coefficient((k,))) for k in range(degree, -1, -1)]
    roots = np.roots(coeffs)
    real = [float(r.real) for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 0.5]
    best_x, best_v = 0.0, 0.0
    for rt in real:
        v = diag.eval((rt,))
        if abs(v) > abs(best_v):
            best_x, best_v = rt, v
    return {"diagonal_parameter": best_x, "value": best_v,
            "exceeds_one": abs(best_v) > 1}


def build_r5_repaired(consts: R5Constants) -> Poly:
    """R_5 minus 32 (1 - e_1)(x1^2 x2^2 + x1^2 x3^2 + x2^2 x3^2).

    The correction vanishes on the face sum x_i = 1 (so the restriction U_5
    and the extremal signature are untouched) and at the origin, and it bends
    the faces x_i = 0 back under 1: on their diagonals,
    1 - value = 4x (2x - 1)^2 (7 - 10x - 4x^2) >= 0.  The repaired polynomial
    satisfies sup over the simplex = 1, which the displayed closed form does
    not (see :func:`r5_face_defect`)."""
    from .symfun import monomial_symmetric
    r5 = build_r5(consts)
    correction = (1 - elementary_symmetric(1, 3)) * monomial_symmetric((2, 2), 3)
    return r5 - 32 * correction.to_float64()
