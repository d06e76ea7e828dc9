from fractions import Fraction

import pytest

from trilie import (
    OMEGA,
    ConstantFunctional,
    Element,
    FiniteSupportFunctional,
    FKBracket,
    GeneratorId,
    L,
    M,
    PolynomialFunctional,
    make_generator,
    op_from_ad,
    tri_bracket,
    window_basis,
)
from trilie.operators import (
    CoeffFn,
    Operator,
    ad_w,
    ad_x,
    ad_y,
    decompose,
    gen_p,
    gen_q,
    gen_x,
    gen_z,
    invariant_line_structure,
    operator_rank,
    ops_equal,
    verify_basis_independence,
    verify_section3_structure,
    verify_sl2_laurent,
    verify_table_5_1,
)
from trilie.polys import Poly, T
from trilie.report import Window

ONE = ConstantFunctional(1)


def test_ad_channels_match_actions():
    w00 = op_from_ad(OMEGA, L(0), M(0))
    assert w00.apply(L(5)) == L(5, -5)
    assert w00.apply(M(5)) == M(5, 5)
    w21 = ad_w(OMEGA, 2, 1)
    assert w21.apply(L(3)) == L(4, -1)  # (r-t) L_{t+r-s}
    assert w21.apply(M(3)) == M(2, 2)  # (t-s) M_{t+s-r}
    x = ad_x(OMEGA, 1, -1)
    assert x.apply(L(7)).is_zero()
    assert x.apply(M(2)) == L(-2, -2)  # (s-r) L_{r+s-t}
    y = ad_y(OMEGA, 1, -1)
    assert y.apply(M(7)).is_zero()
    assert y.apply(L(2)) == M(-2, -2)


def test_ad_soundness_against_bracket():
    pairs = [(L(1), M(2)), (L(0) + M(1), L(2)), (M(-1), M(3)), (L(1, 2) - M(0), L(-2) + M(2))]
    for spec in (OMEGA, FKBracket(1, ONE)):
        for u, v in pairs:
            op = op_from_ad(spec, u, v)
            for bv in window_basis(Window(-3, 3)):
                w = Element({bv: 1})
                assert op.apply(w, ONE) == tri_bracket(spec, u, v, w)


def test_fk_collapse_channel():
    spec = FKBracket(1, ONE)
    x = ad_x(spec, 2, 0)
    # M_t -> beta_t (r-s) L_{r+s+k} with a fixed target index
    assert x.apply(M(9)) == L(3, 2)
    assert x.apply(M(-4)) == L(3, 2)
    assert x.apply(L(5)).is_zero()
    w = ad_w(spec, 2, 0)
    assert w.apply(L(3)) == L(6)  # beta_0 (t-r) L_{r+t+k} = 1*(3-2) L_6
    assert w.apply(M(3)).is_zero()


def test_fk_beta_dependence():
    beta = FiniteSupportFunctional({2: Fraction(1, 2)})
    spec = FKBracket(0, beta)
    x = ad_x(spec, 1, 0)
    assert x.apply(M(2), beta) == L(1, Fraction(1, 2))
    assert x.apply(M(3), beta).is_zero()
    with pytest.raises(ValueError):
        x.apply(M(2))  # beta atoms need the functional


def test_generator_closed_forms():
    for r in range(-4, 5):
        p, q, x, z = gen_p(r), gen_q(r), gen_x(r), gen_z(r)
        for t in range(-3, 4):
            assert p.apply(L(t)) == L(t + r, Fraction(r - 2 * t, 2))
            assert p.apply(M(t)) == M(t - r, Fraction(r + 2 * t, 2))
            assert q.apply(L(t)) == L(t + r, -1)
            assert q.apply(M(t)) == M(t - r)
            assert x.apply(L(t)).is_zero()
            assert x.apply(M(t)) == L(r - t, -1)
            assert z.apply(L(t)) == M(-r - t, -1)
            assert z.apply(M(t)).is_zero()


def test_make_generator_and_ids():
    gid = GeneratorId("p", (3,), OMEGA)
    assert make_generator(gid) == gen_p(3)
    gid = GeneratorId("W", (1, 2), OMEGA)
    assert make_generator(gid) == ad_w(OMEGA, 1, 2)
    norm, sign = GeneratorId("X", (1, 3), OMEGA).normalized()
    assert norm.params == (3, 1) and sign == -1
    with pytest.raises(ValueError):
        make_generator(GeneratorId("p", (1,), FKBracket(0, ONE)))


def test_commutator_oracle_examples():
    assert gen_z(1).commutator(gen_x(2)) == gen_q(3)
    assert gen_z(1).commutator(gen_x(2)).apply(L(0)) == L(3, -1)
    for r in range(-3, 4):
        for s in range(-3, 4):
            assert gen_p(r).commutator(gen_p(s)) == gen_p(r + s).scale(r - s)
            assert gen_x(r).commutator(gen_x(s)).is_zero()
            assert gen_q(r).commutator(gen_x(s)) == gen_x(r + s).scale(-2)


def test_ad_commutator_identity_as_operators():
    # [ad(u1,u2), ad(v1,v2)] = ad([u1,u2,v1], v2) + ad(v1, [u1,u2,v2])
    for spec in (OMEGA, FKBracket(0, ONE)):
        tuples = [
            (L(1), M(2), L(0), M(0)),
            (L(1), L(-1), L(2), M(1)),
            (M(1), M(-2), L(1), L(2)),
        ]
        for u1, u2, v1, v2 in tuples:
            lhs = op_from_ad(spec, u1, u2).commutator(op_from_ad(spec, v1, v2))
            rhs = op_from_ad(spec, tri_bracket(spec, u1, u2, v1), v2) + op_from_ad(
                spec, v1, tri_bracket(spec, u1, u2, v2)
            )
            eq, _ = ops_equal(lhs, rhs, ONE, Window(-3, 3))
            assert eq


def test_derivation_property_of_ad():
    spec = OMEGA
    d = op_from_ad(spec, L(1), M(2))
    for u in (L(0), M(1)):
        for v in (L(2), M(-1)):
            for w in (M(0), L(-2)):
                lhs = d.apply(tri_bracket(spec, u, v, w))
                rhs = (
                    tri_bracket(spec, d.apply(u), v, w)
                    + tri_bracket(spec, u, d.apply(v), w)
                    + tri_bracket(spec, u, v, d.apply(w))
                )
                assert lhs == rhs


def test_degree_bound_for_omega_operators():
    for r in range(-3, 4):
        for s in range(-3, 4):
            op = ad_w(OMEGA, r, s)
            assert op.max_poly_degree() <= 1
            comm = gen_p(r).commutator(gen_q(s))
            assert comm.max_poly_degree() <= 1


def test_coefffn_substitution_and_eval():
    cf = CoeffFn.from_beta(Poly.const(2), 1, 3)  # 2 * beta(t+3)
    poly_beta = PolynomialFunctional(T)
    pure = cf.substitute(poly_beta)
    assert not pure.has_beta()
    assert pure.eval(4) == 14  # 2 * (4+3)
    assert cf.eval(4, poly_beta) == 14
    fs = FiniteSupportFunctional({7: 5})
    assert cf.eval(4, fs) == 10
    assert cf.eval(5, fs) == 0


def test_operator_equality_window_decided():
    beta = FiniteSupportFunctional({0: 1})
    # structurally different weights that agree wherever beta is nonzero
    a = Operator({("M", "L", 0, 1): CoeffFn.from_beta(Poly.const(1))})
    b = Operator({("M", "L", 0, 1): CoeffFn.from_beta(Poly((1, 1)))})
    assert a != b
    eq, mode = ops_equal(a, b, beta, Window(-3, 3))
    assert mode == "window-decided"
    assert eq
    spec = FKBracket(0, beta)
    neq, mode = ops_equal(ad_x(spec, 2, 0), ad_x(spec, 1, 0).scale(2), beta, Window(-3, 3))
    assert mode == "window-decided" and not neq  # different collapse targets


def test_decompose():
    target = gen_p(2).scale(3) - gen_q(2)
    basis = [(("p", 2), gen_p(2)), (("q", 2), gen_q(2)), (("x", 2), gen_x(2))]
    combo = decompose(target, basis)
    assert combo == {("p", 2): 3, ("q", 2): -1}
    assert decompose(gen_z(1), basis) is None


def test_operator_rank_structural():
    rank, mode = operator_rank([gen_p(0), gen_q(0), gen_p(0) + gen_q(0)])
    assert (rank, mode) == (2, "structural")


def test_invariant_line_structure():
    labels = [0, 1, 2]
    eigen = {0: 0, 1: -1, 2: -2}
    edges = {0: set(), 1: {2}, 2: {1}}
    res = invariant_line_structure(labels, eigen, edges)
    assert res["distinct_eigenvalues"]
    assert not res["irreducible"]
    assert frozenset({0}) in res["minimal_proper"]


def test_table_5_1():
    rep = verify_table_5_1(5)
    assert rep.status == "pass"
    assert rep.stats["corrections"] == 0
    assert rep.stats["pairs_checked"] == 10 * 11 * 11


def test_sl2_laurent():
    rep = verify_sl2_laurent(4)
    assert rep.ok
    assert rep.status == "flagged"  # printed sign slip on the (q, x) line
    assert not rep.counterexamples


def test_basis_independence_omega():
    rep = verify_basis_independence("omega", Window(-4, 4))
    assert rep.status == "pass"
    assert rep.stats["rank"] == 36 == rep.stats["family_size"]


def test_basis_independence_fk():
    rep = verify_basis_independence("fk", Window(-3, 3), ONE, k=1, s0=0)
    assert rep.ok
    assert rep.stats["rank"] == rep.stats["family_size"] == 14
    assert rep.status == "flagged"  # printed X(r,-r) scaling corrected
    with pytest.raises(ValueError):
        verify_basis_independence("fk", Window(-3, 3), PolynomialFunctional(T), k=1, s0=0)


def test_section3_structure():
    for k in (0, 1):
        rep = verify_section3_structure(k, ONE, 0, Window(-3, 3))
        assert rep.ok, rep.counterexamples
        assert rep.stats["invariant_subspaces"] == "none proper (window-exact)"
    rep = verify_section3_structure(1, FiniteSupportFunctional({2: 3}), 2, Window(-3, 3))
    assert rep.ok, rep.counterexamples
    with pytest.raises(ValueError):
        verify_section3_structure(0, FiniteSupportFunctional({2: 3}), 0, Window(-3, 3))
