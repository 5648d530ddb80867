import math

import pytest

from qshuffle import braidrep as B
from qshuffle.shuffle_hopf import (HElement, ShuffleAlgebra, check_antipode, check_bialgebra,
                                   nichols_component)


def diag(order, exps):
    return B.diagonal_braiding(order, list(range(len(exps))), exps)


def test_trivial_braiding_gives_symmetric_algebra():
    # plain flip on a 2-dim space: polynomial ring in two variables
    alg = ShuffleAlgebra(diag(2, [[0, 0], [0, 0]]))
    assert alg.hilbert_series(5) == [math.comb(n + 1, 1) for n in range(6)]


def test_minus_flip_gives_exterior_algebra():
    alg = ShuffleAlgebra(diag(2, [[1, 1], [1, 1]]))
    assert alg.hilbert_series(4) == [math.comb(2, n) for n in range(5)]


@pytest.mark.parametrize("order,expected_ones", [(2, 2), (3, 3), (5, 5), (6, 6), (8, 8)])
def test_rank_one_truncation_height(order, expected_ones):
    # x^n survives iff (1 + q + ... + q^(k-1)) != 0 for all k <= n, i.e. n < order of q
    alg = ShuffleAlgebra(diag(order, [[1]]))
    dims = alg.hilbert_series(expected_ones + 1)
    assert dims == [1] * expected_ones + [0, 0]


def test_quantum_plane_dims():
    # q_12 q_21 = 1 with q_ii = 1: commutative-like, dims n+1
    alg = ShuffleAlgebra(diag(6, [[0, 1], [5, 0]]))
    assert alg.hilbert_series(4) == [1, 2, 3, 4, 5]


def test_shuffle_product_of_letters():
    alg = ShuffleAlgebra(diag(2, [[0]]))
    prod = alg.shuffle_product(HElement.word(0), HElement.word(0))
    assert prod == HElement({(0, 0): 2})


def test_antipode_inverts_letters_and_counit():
    alg = ShuffleAlgebra(B.jordanian_plane(()))
    x = HElement.word(1)
    assert alg.antipode(x) == -x
    assert alg.counit(HElement.unit()) == 1
    co = alg.deconcat_coproduct(HElement.word(0, 1))
    assert set(co) == {((), (0, 1)), ((0,), (1,)), ((0, 1), ())}


def test_nichols_projection_rank():
    alg = ShuffleAlgebra(B.jordanian_plane(()))
    data = nichols_component(alg, 2)
    assert data.rank + data.nullity == 4


@pytest.mark.parametrize("make", [B.jordanian_plane, lambda *a: diag(12, [[4]])])
def test_bialgebra_and_antipode_identities(make):
    br = make(())
    for r in range(4):
        for s in range(4 - r):
            assert check_bialgebra(br, r, s), (r, s)
    for r in range(1, 5):
        assert check_antipode(br, r), r
