import pytest

from qshuffle import braidrep as B
from qshuffle import p1
from qshuffle import ydmod as Y


@pytest.fixture(scope="module", params=["rank1", "jordanian"])
def br(request):
    if request.param == "rank1":
        return p1.rank_one_mixed(3)
    return B.jordanian_plane(("Y", "Z", "W"))


def test_pattern_roundtrip():
    pat = Y.pattern_of(("X", "X", "Y", "X", "Z"))
    assert tuple(pat.runs) == (2, 1, 0)


def test_bimodule_axioms(br):
    assert Y.check_bimodule(br, 1)


def test_relative_antipode(br):
    for s in range(3):
        for t in range(3 - s):
            assert Y.check_relative_antipode(br, s, t), (s, t)


def test_yd_axiom(br):
    for r in range(3):
        for s in range(3):
            assert Y.check_yd_axiom(br, r, s), (r, s)


def test_adjoint_forms_and_twists(br):
    for s in range(3):
        assert Y.check_adjoint_closed_forms(br, s)
        assert Y.check_sigma2(br, s)
    for r in range(4):
        assert Y.check_t_relation(br, r)
    assert Y.check_action_property(br, 1, 1, 1)


def test_fusion_structures(br):
    for s in range(2):
        for t in range(2):
            assert Y.check_iota_forms(br, s, t)
            assert Y.check_fusion_coaction(br, s, t)
            assert Y.check_squared_braiding(br, s, t)
    assert Y.check_iota_associative(br, 1, 1, 1)
    assert Y.check_fusion_action(br, 1, 1, 1)
    for d in range(3):
        assert Y.check_braiding_inverse(br, d)


def test_braiding_with_missing_pair_is_rejected():
    br = B.MixedBraiding({"X": 1, "Y": 1}, {("X", "X"): ("phase", 4, [[1]])})
    with pytest.raises(B.BraidingError):
        Y.check_relative_antipode(br, 1, 0)


def test_left_coaction_splits_leading_run():
    left, right = Y.coactions((2, 0))
    assert [(i, tuple(p.runs)) for i, p in left] == [(0, (2, 0)), (1, (1, 0)), (2, (0, 0))]
    assert [(tuple(p.runs), i) for p, i in right] == [((2, 0), 0)]
    left, _ = Y.coactions((0, 3))
    assert [(i, tuple(p.runs)) for i, p in left] == [(0, (0, 3))]


def test_fusion_dispatch():
    assert Y.fusion((1, 0), (2, 0)) == Y.iota_map(Y.Pattern((1, 0)), Y.Pattern((2, 0)))
    assert Y.fusion((1, 1), (1, 0)) == Y.chi_map(Y.Pattern((1, 1)), Y.Pattern((1, 0)))
    assert not Y.e_action(0).any()
