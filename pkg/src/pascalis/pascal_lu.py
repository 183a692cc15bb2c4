"""Sylvester-Pascal matrices and the exact LU route to f(m, 2) = [(m-1)!]^m."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_arith import binomial, factorial
from .resultant import bareiss_det, sylvester_matrix


class LUError(ArithmeticError):
    """A zero pivot appeared; the matrix has no LU factorization without pivoting."""


@dataclass(frozen=True)
class SylvesterPascal:
    m: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class LUFactors:
    L: list[list[Fraction]]
    U: list[list[Fraction]]
    sign: int = 1

    def diagonal(self) -> list[Fraction]:
        return [self.U[i][i] for i in range(len(self.U))]


def _check_m(m: int) -> None:
    if m < 3:
        raise ValueError(f"Sylvester-Pascal matrices are defined for m >= 3, got {m}")


def pascal_coefficients(m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(a_0..a_{m-1}) and (b_0..b_{m-1}) with a_i = C(m-1,i) i!, b_i = C(m-1,i) (i+1)!."""
    a = tuple(binomial(m - 1, i) * factorial(i) for i in range(m))
    b = tuple(binomial(m - 1, i) * factorial(i + 1) for i in range(m))
    return a, b


def build_sylvester_pascal(m: int) -> SylvesterPascal:
    _check_m(m)
    a, b = pascal_coefficients(m)
    rows = sylvester_matrix(list(a), list(b))
    return SylvesterPascal(m, a[1:], b[1:], tuple(tuple(r) for r in rows))


def interleave_permutation(m: int) -> list[int]:
    """0-based S_m row index placed at each row of T_m: (m-1, 0, m, 1, ...)."""
    perm = []
    for k in range(m - 1):
        perm += [m - 1 + k, k]
    return perm


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def build_Tm(m: int) -> list[list[int]]:
    """T_m = P_m S_m, rows alternating b-row / a-row."""
    s = build_sylvester_pascal(m).matrix
    return [list(s[i]) for i in interleave_permutation(m)]


def lu_exact(matrix: Sequence[Sequence]) -> LUFactors:
    """Doolittle LU over the rationals, no pivoting."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("LU of a non-square matrix")
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    U = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            U[i][j] = Fraction(matrix[i][j]) - sum(L[i][k] * U[k][j] for k in range(i))
        if U[i][i] == 0:
            raise LUError(f"zero pivot at position {i + 1}; LU does not exist without pivoting")
        for r in range(i + 1, n):
            L[r][i] = (Fraction(matrix[r][i]) - sum(L[r][k] * U[k][i] for k in range(i))) / U[i][i]
    return LUFactors(L, U)


def lu_Tm(m: int) -> LUFactors:
    f = lu_exact(build_Tm(m))
    sign = permutation_sign(interleave_permutation(m))
    return LUFactors(f.L, f.U, sign)


def closed_form_U(m: int) -> list[list[int]]:
    _check_m(m)
    size = 2 * (m - 1)
    U = [[0] * size for _ in range(size)]
    for i in range(1, m):
        odd, even = U[2 * i - 2], U[2 * i - 1]
        odd[2 * i - 2] = factorial(i)
        for j in range(2 * i, min(m + i - 1, size) + 1):
            odd[j - 1] = binomial(m - i, j - 2 * i + 1) * factorial(j - i + 1)
            even[j - 1] = (-1) ** i * binomial(m - 1, j - i) * binomial(j - i, i) * factorial(j - i)
    return U


def closed_form_L(m: int, U: Sequence[Sequence] | None = None) -> list[list[Fraction]]:
    """l_ij = det(X_ij) / (u_11 ... u_jj) on the band j+1 <= i <= 2j."""
    _check_m(m)
    U = closed_form_U(m) if U is None else U
    T = build_Tm(m)
    size = len(T)
    L = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for j in range(1, size + 1):
        head = [list(U[r][:j]) for r in range(j - 1)]
        denom = math.prod(U[r][r] for r in range(j))
        for i in range(j + 1, min(2 * j, size) + 1):
            X = head + [list(T[i - 1][:j])]
            L[i - 1][j - 1] = Fraction(bareiss_det(X), denom)
    return L


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def det_f_m2(m: int) -> int:
    """f(m, 2) as sign(P_m) * prod diag(U) of the LU factors of T_m."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if m == 2:
        # T_2 degenerates to a row swap of the 2x2 Pascal matrix
        f = lu_exact([[1, 1], [1, 2]])
        value = math.prod(f.diagonal())
    else:
        f = lu_Tm(m)
        value = f.sign * math.prod(f.diagonal())
    if value.denominator != 1:
        raise ArithmeticError(f"f({m}, 2) came out non-integral: {value}")
    return int(value)


def telescoped_product(m: int, diag: Sequence) -> int:
    """Regroup prod |u_rr| pairwise as in the determinant proof (1-based pairing)."""
    u = lambda r: abs(diag[r - 1])  # noqa: E731
    out = 1
    for k in range(1, m - 1):
        out *= u(2 * k - 1) * u(2 * m - 2 * k - 2)
    return int(out * u(2 * m - 3) * u(2 * m - 2))


def lu_csv(rows: Iterable[tuple[int, Sequence, int]]) -> str:
    """CSV with columns m, diag_U (semicolon separated), f_m2."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "diag_U", "f_m2"])
    for m, diag, f in rows:
        writer.writerow([m, ";".join(str(Fraction(d)) for d in diag), f])
    return buf.getvalue()
