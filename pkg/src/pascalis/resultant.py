"""Tensor determinants as resultants of the system A x^{m-1} = 0.

Dimension 2 goes through the Sylvester matrix of the two binary forms;
dimension >= 3 through the Macaulay quotient det(M) / det(M') at the critical
degree.  All determinants are computed by fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .exact_arith import ExactDivisionError, IntPolynomial, format_exact, rational_poly_divmod
from .tensor_core import (
    FeasibilityError,
    SymmetricTensor,
    binary_form_coefficients,
    multiplicity,
)

DEFAULT_MACAULAY_CAP = 2000
HARD_MACAULAY_CAP = 6000


class MacaulayDegenerateError(ArithmeticError):
    """The Macaulay denominator determinant vanished."""


def _exact_quotient(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ExactDivisionError(f"Bareiss step {a} / {b} is not exact")
        return q
    if isinstance(a, IntPolynomial) or isinstance(b, IntPolynomial):
        return IntPolynomial._coerce(a).exact_div(b)
    return a / b


def bareiss_det(matrix: Sequence[Sequence]):
    """Determinant by Bareiss fraction-free elimination.

    Works over Z, Q and Z[x] (``IntPolynomial`` entries).  Every division is
    checked to be exact; zero pivots are handled by row swaps.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if any(isinstance(v, Fraction) for row in matrix for v in row):
        return _rational_det(matrix)
    rows = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not rows[k][k]:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0 * rows[0][0]
        pivot_row = rows[k]
        pivot = pivot_row[k]
        for i in range(k + 1, n):
            row = rows[i]
            a = row[k]
            if a:
                rows[i] = row[: k + 1] + [
                    _exact_quotient(pivot * x - a * y, prev)
                    for x, y in zip(row[k + 1 :], pivot_row[k + 1 :])
                ]
            elif prev == 1:
                rows[i] = row[: k + 1] + [pivot * x for x in row[k + 1 :]]
            else:
                rows[i] = row[: k + 1] + [
                    _exact_quotient(pivot * x, prev) if x else x for x in row[k + 1 :]
                ]
        prev = pivot
    return rows[-1][-1] if sign > 0 else -rows[-1][-1]


def _rational_det(matrix):
    # clear denominators row by row, then work over Z
    scale = Fraction(1)
    rows = []
    for row in matrix:
        lcm = math.lcm(*(Fraction(v).denominator for v in row))
        rows.append([int(Fraction(v) * lcm) for v in row])
        scale *= lcm
    det = Fraction(bareiss_det(rows)) / scale
    return det.numerator if det.denominator == 1 else det


def cofactor_det(matrix: Sequence[Sequence]):
    """Laplace expansion along the first row; reference oracle for small matrices."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j, a in enumerate(matrix[0]):
        if a:
            minor = [row[:j] + row[j + 1 :] for row in (list(r) for r in matrix[1:])]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def dump_matrix(matrix: Sequence[Sequence]) -> str:
    """One row per line, tab-separated exact values."""
    return "\n".join("\t".join(format_exact(v) if not isinstance(v, IntPolynomial) else str(v)
                               for v in row) for row in matrix) + "\n"


def sylvester_matrix(p: Sequence, q: Sequence) -> list[list]:
    """Sylvester matrix of two binary forms given by coefficients, highest x1 power first.

    ``p`` has degree len(p)-1 and ``q`` degree len(q)-1; the result has
    deg(q) shifted copies of ``p`` followed by deg(p) shifted copies of ``q``.
    """
    if not any(p) or not any(q):
        raise ValueError("Sylvester matrix of a zero form")
    d1, d2 = len(p) - 1, len(q) - 1
    size = d1 + d2
    zero = 0 * p[0]
    rows = []
    for coeffs, copies in ((p, d2), (q, d1)):
        for shift in range(copies):
            row = [zero] * size
            row[shift : shift + len(coeffs)] = list(coeffs)
            rows.append(row)
    return rows


def monomials_of_degree(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree d, lexicographic with x1 > x2 > ... > xn."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    out.sort(reverse=True)
    return out


def form_coefficients(t: SymmetricTensor, i: int) -> dict[tuple[int, ...], object]:
    """Coefficients of (A x^{m-1})_i keyed by exponent vector (i is 1-based)."""
    coeffs = {}
    for tail in combinations_with_replacement(range(1, t.dim + 1), t.order - 1):
        exps = [0] * t.dim
        for v in tail:
            exps[v - 1] += 1
        coeffs[tuple(exps)] = multiplicity(tail) * t[(i,) + tail]
    return coeffs


@dataclass(frozen=True)
class MacaulayStructure:
    n: int
    degrees: tuple[int, ...]
    critical_degree: int
    monomials: tuple[tuple[int, ...], ...]
    # row r multiplies polynomial assignment[r][0] (0-based) by x^assignment[r][1]
    assignment: tuple[tuple[int, tuple[int, ...]], ...]
    denominator: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.monomials)


@dataclass
class MacaulayMatrices:
    structure: MacaulayStructure
    numerator: list[list]
    denominator: list[list]


def macaulay_structure(n: int, degrees: Sequence[int]) -> MacaulayStructure:
    degrees = tuple(degrees)
    if len(degrees) != n or n < 2:
        raise ValueError("need n >= 2 polynomials in n variables")
    d = sum(di - 1 for di in degrees) + 1
    monos = monomials_of_degree(n, d)
    assignment = []
    denom = []
    for r, alpha in enumerate(monos):
        divisible = [i for i in range(n) if alpha[i] >= degrees[i]]
        # at the critical degree every monomial is divisible by some x_i^{d_i}
        i = divisible[0]
        cof = tuple(a - (degrees[i] if k == i else 0) for k, a in enumerate(alpha))
        assignment.append((i, cof))
        if len(divisible) >= 2:
            denom.append(r)
    return MacaulayStructure(n, degrees, d, tuple(monos), tuple(assignment), tuple(denom))


def macaulay_size(m: int, n: int) -> int:
    d = n * (m - 2) + 1
    return math.comb(d + n - 1, n - 1)


def macaulay_build_polys(
    polys: Sequence[dict[tuple[int, ...], object]], degrees: Sequence[int], cap: int = DEFAULT_MACAULAY_CAP
) -> MacaulayMatrices:
    n = len(polys)
    d = sum(di - 1 for di in degrees) + 1
    size = math.comb(d + n - 1, n - 1)
    if size > cap:
        raise FeasibilityError(f"Macaulay matrix would be {size}x{size} (cap {cap})")
    st = macaulay_structure(n, degrees)
    col = {alpha: c for c, alpha in enumerate(st.monomials)}
    numerator = []
    for i, cof in st.assignment:
        row = [0] * st.size
        for beta, a in polys[i].items():
            if a:
                row[col[tuple(x + y for x, y in zip(beta, cof))]] = a
        numerator.append(row)
    den = [[numerator[r][c] for c in st.denominator] for r in st.denominator]
    return MacaulayMatrices(st, numerator, den)


def macaulay_build(t: SymmetricTensor, cap: int = DEFAULT_MACAULAY_CAP) -> MacaulayMatrices:
    if t.dim < 2:
        raise ValueError("Macaulay construction needs n >= 2")
    polys = [form_coefficients(t, i) for i in range(1, t.dim + 1)]
    return macaulay_build_polys(polys, [t.order - 1] * t.dim, cap)


@dataclass(frozen=True)
class DetResult:
    signed: object
    method: str
    note: str = ""

    @property
    def absolute(self):
        return abs(self.signed)

    def as_dict(self) -> dict:
        return {
            "signed": format_exact(self.signed),
            "absolute": format_exact(self.absolute),
            "method": self.method,
            "note": self.note,
        }


SIGN_NOTE_SYLVESTER = "sign of det(Sylvester matrix), p-rows before q-rows"
SIGN_NOTE_MACAULAY = "graded-lex x1>...>xn, least-index row assignment, rows ordered as columns"


def _integer_scales(polys):
    scales = []
    scaled = []
    for p in polys:
        lcm = math.lcm(*(Fraction(a).denominator for a in p.values()))
        scales.append(lcm)
        scaled.append({k: int(Fraction(a) * lcm) for k, a in p.items()})
    return scales, scaled


def resultant_of_forms(
    polys: Sequence[dict[tuple[int, ...], object]],
    degrees: Sequence[int],
    cap: int = DEFAULT_MACAULAY_CAP,
) -> object:
    """Macaulay resultant of n homogeneous polynomials with exact coefficients."""
    n = len(polys)
    scales, scaled = _integer_scales(polys)
    mats = macaulay_build_polys(scaled, degrees, cap)
    den = bareiss_det(mats.denominator)
    if den == 0:
        raise MacaulayDegenerateError("Macaulay denominator determinant is zero")
    num = bareiss_det(mats.numerator)
    value = Fraction(num, den)
    # Res is homogeneous of degree prod_{j != i} d_j in the coefficients of F_i
    for i, s in enumerate(scales):
        value /= Fraction(s) ** math.prod(d for j, d in enumerate(degrees) if j != i)
    return value.numerator if value.denominator == 1 else value


def sylvester_determinant(t: SymmetricTensor):
    p, q = binary_form_coefficients(t)
    scale = math.lcm(*(Fraction(a).denominator for a in p)) , math.lcm(*(Fraction(a).denominator for a in q))
    p = [int(Fraction(a) * scale[0]) for a in p]
    q = [int(Fraction(a) * scale[1]) for a in q]
    d = t.order - 1
    value = Fraction(bareiss_det(sylvester_matrix(p, q))) / (Fraction(scale[0]) ** d * Fraction(scale[1]) ** d)
    return value.numerator if value.denominator == 1 else value


def tensor_determinant(
    t: SymmetricTensor, method: str | None = None, cap: int = DEFAULT_MACAULAY_CAP
) -> DetResult:
    if t.dim < 2:
        raise ValueError("tensor determinant needs n >= 2")
    if not t.exact:
        raise TypeError("tensor_determinant requires exact entries")
    method = method or ("sylvester" if t.dim == 2 else "macaulay")
    if method == "sylvester":
        if t.dim != 2:
            raise ValueError("Sylvester method needs n = 2")
        return DetResult(sylvester_determinant(t), "sylvester", SIGN_NOTE_SYLVESTER)
    if method == "macaulay":
        polys = [form_coefficients(t, i) for i in range(1, t.dim + 1)]
        value = resultant_of_forms(polys, [t.order - 1] * t.dim, cap)
        return DetResult(value, "macaulay", SIGN_NOTE_MACAULAY)
    raise ValueError(f"unknown method {method!r}")


def char_poly_dim2(t: SymmetricTensor) -> IntPolynomial:
    """det of the Sylvester matrix of A x^{m-1} - lam x^{[m-1]} as a polynomial in lam."""
    if t.dim != 2:
        raise ValueError(f"characteristic polynomial is only provided for n = 2, got {t.dim}")
    p, q = binary_form_coefficients(t)
    if any(isinstance(a, Fraction) and a.denominator != 1 for a in p + q):
        raise TypeError("char_poly_dim2 needs integer entries")
    lam = IntPolynomial.monomial(1)
    p = [IntPolynomial.constant(int(a)) for a in p]
    q = [IntPolynomial.constant(int(a)) for a in q]
    p[0] = p[0] - lam
    q[-1] = q[-1] - lam
    return IntPolynomial._coerce(bareiss_det(sylvester_matrix(p, q)))


def _sign_changes(chain, x) -> int:
    signs = []
    for poly in chain:
        v = _eval(poly, x)
        if v:
            signs.append(v > 0)
    return sum(a != b for a, b in zip(signs, signs[1:]))


def _eval(coeffs, x):
    acc = Fraction(0)
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _rgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = rational_poly_divmod(a, b)
        a, b = b, r
    return [x / a[-1] for x in a]


def real_roots(p: IntPolynomial, tol: float = 1e-12) -> list[float]:
    """Distinct real roots of ``p``, each located to absolute accuracy ``tol``.

    Uses a Sturm sequence of the square-free part with exact rational
    arithmetic, bisecting until every root is isolated and then refining.
    """
    if not p:
        raise ValueError("real_roots of the zero polynomial")
    coeffs = [Fraction(a) for a in p.coeffs]
    if len(coeffs) == 1:
        return []
    g = _rgcd(coeffs, [k * a for k, a in enumerate(coeffs) if k])
    sq, _ = rational_poly_divmod(coeffs, g)
    sq = _trim(sq)
    chain = [sq, _trim([k * a for k, a in enumerate(sq) if k])]
    while len(chain[-1]) > 1:
        _, r = rational_poly_divmod(chain[-2], chain[-1])
        r = _trim(r)
        if not r:
            break
        chain.append([-a for a in r])
    bound = 1 + max(abs(a / sq[-1]) for a in sq[:-1]) if len(sq) > 1 else Fraction(1)
    tol = Fraction(tol)
    roots = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        count = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if count == 0:
            continue
        if count == 1:
            roots.append(_refine(sq, lo, hi, tol))
            continue
        mid = (lo + hi) / 2
        stack += [(lo, mid), (mid, hi)]
    return sorted(float(r) for r in roots)


def _refine(p, lo, hi, tol):
    # exactly one simple root in (lo, hi]; the sign at hi orients the bisection
    fhi = _eval(p, hi)
    if fhi == 0:
        return hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = _eval(p, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (fhi > 0):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2
