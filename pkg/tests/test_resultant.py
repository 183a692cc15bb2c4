import math
import random
from fractions import Fraction

import pytest

from pascalis.exact_arith import IntPolynomial
from pascalis.resultant import (
    MacaulayDegenerateError,
    bareiss_det,
    char_poly_dim2,
    cofactor_det,
    dump_matrix,
    form_coefficients,
    macaulay_build,
    macaulay_structure,
    real_roots,
    resultant_of_forms,
    sylvester_matrix,
    tensor_determinant,
)
from pascalis.tensor_core import (
    FeasibilityError,
    binary_form_coefficients,
    build_generalized_hilbert,
    build_identity,
    build_pascal,
)

F32 = [[1, 2, 2, 0], [0, 1, 2, 2], [1, 4, 6, 0], [0, 1, 4, 6]]
F42 = [
    [1, 3, 6, 6, 0, 0],
    [0, 1, 3, 6, 6, 0],
    [0, 0, 1, 3, 6, 6],
    [1, 6, 18, 24, 0, 0],
    [0, 1, 6, 18, 24, 0],
    [0, 0, 1, 6, 18, 24],
]
# numerator of the f(3,3) Macaulay quotient as printed, rows grouped by polynomial
F33_NUMERATOR = [
    [1, 2, 2, 2, 6, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 2, 2, 0, 2, 6, 6, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 2, 2, 0, 2, 6, 6, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 2, 2, 0, 0, 2, 6, 6, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 2, 2, 0, 0, 2, 6, 6, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 2, 2, 0, 0, 2, 6, 6],
    [0, 1, 0, 4, 6, 0, 6, 24, 30, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 4, 6, 0, 6, 24, 30, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 4, 6, 0, 0, 6, 24, 30, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 4, 6, 0, 0, 6, 24, 30, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 4, 6, 0, 0, 6, 24, 30],
    [0, 1, 0, 6, 12, 0, 12, 60, 90, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 6, 12, 0, 12, 60, 90, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 6, 12, 0, 0, 12, 60, 90, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 6, 12, 0, 0, 12, 60, 90],
]


def test_bareiss_examples():
    assert bareiss_det([[1, 2], [3, 4]]) == -2
    assert bareiss_det([[int(i == j) for j in range(5)] for i in range(5)]) == 1
    assert bareiss_det(F32) == 8
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([[0, 0], [0, 3]]) == 0


def test_bareiss_rejects_non_square():
    with pytest.raises(ValueError):
        bareiss_det([[1, 2, 3], [4, 5, 6]])


def test_bareiss_vs_cofactor_random():
    rng = random.Random(12345)
    for trial in range(1000):
        n = rng.randint(1, 5)
        sparse = trial % 3 == 0
        M = [
            [0 if sparse and rng.random() < 0.5 else rng.randint(-9, 9) for _ in range(n)]
            for _ in range(n)
        ]
        assert bareiss_det(M) == cofactor_det(M)


def test_bareiss_rationals():
    H = [[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)]
    assert bareiss_det(H) == Fraction(1, 2160) == cofactor_det(H)


def test_bareiss_polynomial_ring():
    lam = IntPolynomial([0, 1])
    M = [[1 - lam, IntPolynomial([1])], [IntPolynomial([1]), 2 - lam]]
    assert bareiss_det(M) == IntPolynomial([1, -3, 1])


def test_sylvester_matrix_displays():
    assert sylvester_matrix([1, 2, 2], [1, 4, 6]) == F32
    assert sylvester_matrix([1, 3, 6, 6], [1, 6, 18, 24]) == F42
    assert bareiss_det(F42) == 6**4


@pytest.mark.parametrize("m", [2, 3, 5])
def test_sylvester_of_monomials_is_one(m):
    p = [1] + [0] * (m - 1)
    q = [0] * (m - 1) + [1]
    assert bareiss_det(sylvester_matrix(p, q)) == 1


def test_sylvester_rejects_zero_form():
    with pytest.raises(ValueError):
        sylvester_matrix([0, 0], [1, 1])


def test_macaulay_pascal_3_3_shapes_and_denominator():
    mats = macaulay_build(build_pascal(3, 3))
    assert mats.structure.size == 15
    assert len(mats.numerator) == 15 and all(len(r) == 15 for r in mats.numerator)
    assert mats.denominator == [[1, 0, 6], [0, 1, 2], [0, 1, 6]]
    assert bareiss_det(mats.denominator) == 4
    assert mats.structure.critical_degree == 4


def test_macaulay_numerator_matches_printed_rows():
    # the printed matrix groups rows by polynomial; ours orders rows like columns
    mats = macaulay_build(build_pascal(3, 3))
    assert sorted(map(tuple, mats.numerator)) == sorted(map(tuple, F33_NUMERATOR))
    assert abs(bareiss_det(F33_NUMERATOR)) == abs(bareiss_det(mats.numerator)) == 4 * 72**3


def test_macaulay_matrix_case():
    mats = macaulay_build(build_pascal(2, 3))
    assert mats.numerator == [[1, 1, 1], [1, 2, 3], [1, 3, 6]]
    assert mats.denominator == []
    assert bareiss_det(mats.denominator) == 1


def test_macaulay_structure_invariants():
    for n, d in [(3, 2), (3, 4), (4, 2), (2, 5)]:
        st = macaulay_structure(n, [d] * n)
        assert st.size == math.comb(st.critical_degree + n - 1, n - 1)
        assert len(st.assignment) == st.size
        for r in st.denominator:
            alpha = st.monomials[r]
            assert sum(a >= d for a in alpha) >= 2
        non_reduced = [r for r, a in enumerate(st.monomials) if sum(x >= d for x in a) >= 2]
        assert list(st.denominator) == non_reduced


@pytest.mark.parametrize("m, n", [(3, 3), (4, 3), (3, 4)])
def test_macaulay_rows_reconstruct_shifted_forms(m, n):
    t = build_pascal(m, n)
    mats = macaulay_build(t)
    st = mats.structure
    rng = random.Random(m * n)
    for r in rng.sample(range(st.size), 10):
        i, cof = st.assignment[r]
        expected = {
            tuple(a + b for a, b in zip(beta, cof)): c
            for beta, c in form_coefficients(t, i + 1).items()
            if c
        }
        got = {st.monomials[c]: v for c, v in enumerate(mats.numerator[r]) if v}
        assert got == expected


def test_tensor_determinant_goldens():
    assert tensor_determinant(build_pascal(3, 2)).absolute == 8
    assert tensor_determinant(build_pascal(3, 3)).absolute == 72**3 == 373248
    res = tensor_determinant(build_pascal(3, 4))
    assert res.absolute == 72**3 * 80**9
    assert res.method == "macaulay"


def test_tensor_determinant_identity_is_one():
    for m, n in [(3, 2), (3, 3), (4, 3), (3, 4)]:
        assert tensor_determinant(build_identity(m, n)).signed == 1


@pytest.mark.parametrize("m", range(3, 7))
def test_sylvester_equals_macaulay_dim2(m):
    t = build_pascal(m, 2)
    syl = tensor_determinant(t, method="sylvester")
    mac = tensor_determinant(t, method="macaulay")
    assert syl.absolute == mac.absolute == math.factorial(m - 1) ** m


@pytest.mark.parametrize("n", range(2, 7))
def test_pascal_matrices_have_unit_determinant(n):
    assert tensor_determinant(build_pascal(2, n)).signed == 1


def test_matrix_case_matches_classical_determinant():
    t = build_generalized_hilbert(2, 4, 1)
    H = [[t[(i, j)] for j in range(1, 5)] for i in range(1, 5)]
    assert tensor_determinant(t).signed == cofactor_det(H)


def test_scale_equivariance():
    t = build_pascal(3, 3)
    polys = [form_coefficients(t, i) for i in (1, 2, 3)]
    base = resultant_of_forms(polys, [2, 2, 2])
    scaled = [{k: 2 * v for k, v in polys[0].items()}] + polys[1:]
    assert resultant_of_forms(scaled, [2, 2, 2]) == 2 ** (2 * 2) * base


def test_rational_rescaling_matches_direct_rational_quotient():
    t = build_generalized_hilbert(3, 3, Fraction(1, 2))
    mats = macaulay_build(t)
    direct = Fraction(bareiss_det(mats.numerator)) / bareiss_det(mats.denominator)
    assert tensor_determinant(t).signed == direct
    t2 = build_generalized_hilbert(3, 2, 1)
    p, q = binary_form_coefficients(t2)
    assert tensor_determinant(t2).signed == bareiss_det(sylvester_matrix(p, q))


def test_macaulay_degenerate_raises():
    # F1 = x1^2, F2 = x1^2, F3 = x3^2 share the root (0,1,0); the denominator vanishes here
    polys = [
        {(2, 0, 0): 1, (0, 2, 0): 0},
        {(2, 0, 0): 1},
        {(0, 0, 2): 1},
    ]
    with pytest.raises(MacaulayDegenerateError):
        resultant_of_forms(polys, [2, 2, 2])


def test_macaulay_guard():
    with pytest.raises(FeasibilityError):
        tensor_determinant(build_pascal(7, 4))


def test_char_poly_identity():
    for m in (3, 4, 5):
        p = char_poly_dim2(build_identity(m, 2))
        assert p == IntPolynomial([1, -1]) ** (2 * (m - 1))


def test_char_poly_degree_and_constant_term():
    for m in range(3, 9):
        t = build_pascal(m, 2)
        p = char_poly_dim2(t)
        assert p.degree == 2 * (m - 1)
        if m <= 6:
            assert p(0) == tensor_determinant(t).signed
            assert abs(p(0)) == math.factorial(m - 1) ** m


def test_char_poly_pascal_3_2_at_zero():
    assert abs(char_poly_dim2(build_pascal(3, 2))(0)) == 8


def test_char_poly_rejects_dim3():
    with pytest.raises(ValueError):
        char_poly_dim2(build_pascal(3, 3))


def test_char_poly_pascal_matrix():
    assert char_poly_dim2(build_pascal(2, 2)) == IntPolynomial([1, -3, 1])


def test_real_roots_examples():
    assert real_roots(IntPolynomial([2, -3, 1])) == pytest.approx([1.0, 2.0], abs=1e-12)
    assert real_roots(IntPolynomial([1, -1]) ** 4) == pytest.approx([1.0], abs=1e-12)
    roots = real_roots(char_poly_dim2(build_pascal(2, 2)))
    s5 = math.sqrt(5)
    assert roots == pytest.approx([(3 - s5) / 2, (3 + s5) / 2], abs=1e-12)
    assert real_roots(IntPolynomial([1, 0, 1])) == []


def test_real_roots_against_numpy():
    import numpy as np

    rng = random.Random(3)
    for _ in range(30):
        rts = sorted({rng.randint(-20, 20) for _ in range(rng.randint(1, 6))})
        p = IntPolynomial([1])
        for r in rts:
            p = p * IntPolynomial([-r, 1])
        p = p * IntPolynomial([1, 0, 1])  # add a complex pair
        assert real_roots(p, 1e-10) == pytest.approx(rts, abs=1e-9)
    p = char_poly_dim2(build_pascal(6, 2))
    ours = real_roots(p, 1e-12)
    ref = sorted(r.real for r in np.roots(p.coeffs[::-1]) if abs(r.imag) < 1e-6)
    assert ours == pytest.approx(ref, rel=1e-6)


def test_dump_matrix():
    assert dump_matrix([[1, Fraction(1, 2)], [-3, 0]]) == "1\t1/2\n-3\t0\n"
