import cmath
from fractions import Fraction
from itertools import product

import pytest
import sympy

from qshuffle.coeff import (Cyclotomic, cyclotomic_polynomial, euler_phi, nullspace, q_binom,
                            q_int, rank, solve)


def approx(c):
    return complex(c.to_complex())


def root(n, k=1):
    return cmath.exp(2j * cmath.pi * k / n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12, 20, 28])
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.symbols("x")
    want = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert [int(c) for c in cyclotomic_polynomial(n)] == [int(c) for c in want]
    assert euler_phi(n) == sympy.totient(n)


@pytest.mark.parametrize("n", [8, 12, 20])
def test_zeta_powers_numerically(n):
    for k in range(-n, 2 * n):
        assert abs(approx(Cyclotomic.zeta(n, k)) - root(n, k)) < 1e-12


def test_field_operations_agree_with_complex_numbers():
    n = 12
    samples = [Cyclotomic.zeta(n, 1) + 2, Cyclotomic.zeta(n, 5) * Fraction(-3, 7),
               Cyclotomic.zeta(n, 3) - Cyclotomic.zeta(n, 2), Cyclotomic.const(n, 5)]
    for a, b in product(samples, repeat=2):
        za, zb = approx(a), approx(b)
        assert abs(approx(a + b) - (za + zb)) < 1e-9
        assert abs(approx(a * b) - za * zb) < 1e-9
        assert abs(approx(a / b) - za / zb) < 1e-9
        assert a * b == b * a
    for a in samples:
        assert a * a.inverse() == Cyclotomic.const(n, 1)


def test_zero_and_relations_reduce():
    # 1 + zeta^4 + zeta^8 = 0 for zeta of order 12
    z = Cyclotomic.zeta(12)
    assert (1 + z ** 4 + z ** 8).is_zero()
    assert z ** 12 == Cyclotomic.const(12, 1)


def test_json_round_trip():
    c = Cyclotomic.zeta(20, 3) * Fraction(5, 9) - 4
    data = c.to_json()
    assert data["order"] == 20
    assert all(isinstance(x, str) for pair in data["coeffs"] for x in pair)
    assert Cyclotomic.from_json(data) == c


def test_phase_exponent():
    assert Cyclotomic.zeta(12, 7).phase_exponent() == 7
    assert Cyclotomic.const(12, -1).phase_exponent() == 6
    assert (Cyclotomic.zeta(12, 1) + 1).phase_exponent() is None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_q_binomials_against_product_formula(p):
    q = root(2 * p)                       # q = exp(i pi / p)

    def qnum(n):
        # unbalanced convention: [n] = (1 - q^(2n)) / (1 - q^2)
        return (1 - q ** (2 * n)) / (1 - q ** 2)

    def qfac(n):
        out = 1
        for k in range(1, n + 1):
            out *= qnum(k)
        return out

    for n in range(0, p):
        assert abs(approx(q_int(n, p)) - qnum(n)) < 1e-9
        for k in range(n + 1):
            assert abs(approx(q_binom(n, k, p)) - qfac(n) / (qfac(k) * qfac(n - k))) < 1e-9
    assert q_int(p, p).is_zero()


def test_linear_algebra_over_rationals():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(m) == sympy.Matrix(m).rank()
    for v in nullspace(m, 3):
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)
    a = [[2, 1], [1, 3]]
    x = solve(a, [[1, 0], [0, 1]])
    inv = sympy.Matrix(a).inv()
    assert [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(2)] for i in range(2)] == \
        [[Fraction(v) for v in row] for row in x]
