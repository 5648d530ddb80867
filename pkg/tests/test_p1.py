import pytest

from qshuffle import p1 as P


@pytest.fixture(scope="module")
def ctx3():
    return P.P1Context(3)


def test_momentum_round_trip():
    for p in (2, 3, 5):
        ctx = P.P1Context(p)
        for r in range(1, p + 1):
            for nu in range(4):
                assert ctx.r_nu(ctx.momentum(r, nu)) == (r, nu)


def test_bad_p_rejected():
    with pytest.raises(ValueError):
        P.P1Context(1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_efk(p):
    assert P.efk_relations(P.P1Context(p))


def test_closed_forms_match_generic_p2():
    rep, counts = P.consistency_checks(P.P1Context(2))
    assert rep, rep.witness
    assert set(counts) == {"F(r)-act", "F-bimodule", "Ad-F(r)", "fusion", "braiding", "F-on-3"}


def test_simple_modules_are_simple(ctx3):
    for r in range(1, 4):
        X = P.build_named(ctx3, "X", r, 0)
        assert X.dim == r
        assert P.is_simple(ctx3, X)
        assert P.identify(X)[0] == ("X", r, 0)


def test_projectives_realized(ctx3):
    for r in (1, 2):
        M = P.build_named(ctx3, "P", r, 0)
        assert M.dim == 6
        assert P.is_indecomposable(M)
        assert P.identify(M)[0] == ("P", r, 0)


def test_steinberg_is_x3(ctx3):
    S = P.realize(ctx3, "St", P.steinberg_vectors(ctx3))
    assert P.is_isomorphic(S, P.build_named(ctx3, "X", 3, 0), 3)


def test_named_products(ctx3):
    X2, X3 = P.build_named(ctx3, "X", 2, 0), P.build_named(ctx3, "X", 3, 0)
    assert P.decompose_fusion(ctx3, X3, X3).names() == [("P", 1, 0), ("X", 3, 0)]
    assert P.decompose_fusion(ctx3, X2, X3).names() == [("P", 2, 0)]


def test_fusion_formula_examples():
    assert P.fusion_formula(2, 1, 0, 1, 0) == [("X", 1, 0)]
    assert P.fusion_formula(3, 3, 0, 3, 0) == [("P", 1, 0), ("X", 3, 0)]
    assert P.fusion_formula(3, 2, 1, 3, 2) == [("P", 2, 3)]


def test_fusion_table_p2():
    rows = P.fusion_table(P.P1Context(2))
    assert len(rows) == 64
    assert all(r["match"] for r in rows)


def test_vertex_classes_and_quotients(ctx3):
    assert [len(P.vertex_classes(ctx3, lvl)) for lvl in (1, 2, 3)] == [3, 6, 12]
    assert all(P.quotient_check(ctx3, r, nu, lvl) for r in (1, 2) for nu in range(4) for lvl in (1, 2, 3))


def test_o_module_table(ctx3):
    z = (1, 2)
    O = P.build_named(ctx3, "O", nu=0, z=z)
    F, E = P.o_table(ctx3, z)
    assert P.mat_eq(O.F, F) and P.mat_eq(O.E, E)


def test_theta_automorphism(ctx3):
    assert P.theaut_checks(ctx3)
    assert P.theaut_algebra_check(ctx3)


def test_unrealized_projective_rejected():
    with pytest.raises(ValueError):
        P.build_named(P.P1Context(2), "P", 1, 0)
