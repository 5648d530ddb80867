import cmath
import itertools
import math
import random

import numpy as np
import pytest

from qshuffle import braidrep as B
from qshuffle.braidrep import Bbin, Bfac, BraidElement, BraidingError
from qshuffle.coeff import Cyclotomic


def numeric_diagonal(word, n, d, phase):
    """Oracle: act with a braid word on C^d tensor n for a diagonal braiding, in floating point.

    The rightmost generator in the word acts first.  phase(a, b) is the scalar
    picked up when a basis vector a crosses over b (a moves right).
    """
    size = d ** n
    mat = np.zeros((size, size), dtype=complex)
    for idx, basis in enumerate(itertools.product(range(d), repeat=n)):
        vec = list(basis)
        coeff = 1
        for g in reversed(word):
            k = abs(g) - 1
            a, b = vec[k], vec[k + 1]
            coeff *= phase(a, b) if g > 0 else 1 / phase(b, a)
            vec[k], vec[k + 1] = b, a
        out = 0
        for x in vec:
            out = out * d + x
        mat[out, idx] += coeff
    return mat


def to_complex(m):
    return np.array([[complex(x.to_complex()) if isinstance(x, Cyclotomic) else complex(x)
                      for x in row] for row in m])


def test_lift_has_inversion_length_and_right_permutation():
    for perm in itertools.permutations(range(1, 5)):
        lift = B.matsumoto_lift(perm)
        (word,) = lift.terms
        assert len(word) == B.inversions(perm)
        assert tuple(B.word_permutation(word, 4)) == tuple(perm)


@pytest.mark.parametrize("r,s", [(0, 3), (1, 1), (2, 2), (3, 2), (4, 3)])
def test_binomial_has_one_term_per_shuffle(r, s):
    elem = Bbin(r, s)
    assert len(elem.terms) == math.comb(r + s, r)
    assert set(elem.terms.values()) == {1}


def test_factorial_has_one_term_per_permutation():
    for n in range(1, 6):
        assert len(Bfac(n).terms) == math.factorial(n)


def test_generators_out_of_range_are_rejected():
    with pytest.raises(ValueError):
        BraidElement(3, {(3,): 1})


def test_diagonal_evaluation_matches_numeric_oracle():
    order = 12
    e = [[1, 5], [7, 4]]
    br = B.diagonal_braiding(order, ["a", "b"], e)
    phase = lambda a, b: cmath.exp(2j * cmath.pi * e[a][b] / order)
    rng = random.Random(3)
    for _ in range(12):
        n = rng.randint(2, 4)
        word = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 5)))
        op = br.evaluate(BraidElement(n, {word: 1}), ("X",) * n)
        got = to_complex(op.block(("X",) * n, ("X",) * n))
        assert np.allclose(got, numeric_diagonal(word, n, 2, phase))


def test_braid_relation_and_inverse_on_matrix_braiding():
    br = B.jordanian_plane(())
    sp = ("X",) * 3
    lhs = br.evaluate(BraidElement(3, {(1, 2, 1): 1}), sp)
    rhs = br.evaluate(BraidElement(3, {(2, 1, 2): 1}), sp)
    assert lhs == rhs
    ident = br.evaluate(BraidElement(3, {(): 1}), sp)
    assert br.evaluate(BraidElement(3, {(2, -2): 1}), sp) == ident


def test_hecke_matrix_validates_and_bad_matrix_fails():
    B.matrix_braiding(B.HECKE)
    bad = [[1, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    with pytest.raises(BraidingError):
        B.matrix_braiding(bad)


def test_load_braiding_forms():
    br = B.load_braiding({"dim": 2, "field": "Q", "matrix": B.JORDANIAN})
    assert br.dims["X"] == 2
    phases = {"0,0": Cyclotomic.zeta(8, 2).to_json(), "0,1": Cyclotomic.zeta(8, 1).to_json(),
              "1,0": Cyclotomic.zeta(8, 3).to_json(), "1,1": Cyclotomic.zeta(8, 4).to_json()}
    diag = B.load_braiding({"diagonal": {"labels": ["x0", "x1"], "phases": phases}})
    assert diag.pairs[("X", "X")][0] == "phase"
    with pytest.raises(ValueError):
        B.load_braiding({"dim": 2})
    with pytest.raises(ValueError):
        B.load_braiding({"dim": 2, "matrix": [[1, 0], [0, 1]]})


@pytest.mark.parametrize("make", [lambda: B.matrix_braiding(B.HECKE),
                                  lambda: B.diagonal_braiding(20, [0], [[4]])])
def test_shuffle_identities_small(make):
    reports = B.shuffle_identity_reports(make(), max_index=2, max_bb=2, max_factorial=4,
                                         max_summed=2)
    failed = [r for r in reports if not r.passed]
    assert not failed, failed


def test_report_json_shape():
    br = B.jordanian_plane(())
    rep = B.check_sh_s(br, 1, 1)
    data = rep.to_json()
    assert data["passed"] is True and data["identity"] and data["params"] == {"r": 1, "s": 1}


def test_group_algebra_certificate_agrees_with_operators():
    br = B.jordanian_plane(())
    for r, s, t in [(1, 1, 1), (2, 1, 2), (2, 2, 1), (1, 2, 3)]:
        assert B.certify_summed_split(r, s, t).passed == B.check_summed_split(br, r, s, t).passed


def test_group_algebra_certificate_rejects_and_declines():
    assert B.certify_equal([[Bbin(2, 4)]], [[Bbin(3, 3)]], 6) is False
    # sigma_1 squared is not a reduced word, so no certificate exists
    assert B.certify_equal([[Bbin(1, 1), Bbin(1, 1)]], [[Bbin(1, 1)]], 2) is None
