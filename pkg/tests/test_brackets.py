from fractions import Fraction

import pytest

from trilie import (
    DETERMINANT,
    OMEGA,
    BracketPreconditionError,
    ConstantFunctional,
    DkInduced,
    Element,
    FKBracket,
    FiniteSupportFunctional,
    FixedThirdL,
    FixedThirdM,
    FromFunctionalBracket,
    L,
    M,
    PolynomialFunctional,
    certify_from_functional,
    lie_bracket,
    tri_bracket,
)
from trilie.brackets import (
    center_window,
    check_anticommutativity,
    check_constructor_agreement,
    check_fundamental_identity,
    random_element,
)
from trilie.polys import T
from trilie.report import Window

ONE = ConstantFunctional(1)


def test_dk_induced_lie_bracket():
    spec = DkInduced(1)
    assert lie_bracket(spec, L(2), L(3)) == L(6, -1)
    assert lie_bracket(spec, L(2), M(3)).is_zero()
    assert lie_bracket(spec, M(1), M(2)).is_zero()


def test_fixed_third_lie_brackets():
    assert lie_bracket(FixedThirdL(0), M(1), M(2)) == M(3)
    assert lie_bracket(FixedThirdL(2), L(1), L(5)).is_zero()
    # [L_r, M_s]_{L_k} = (r-k) L_{r+k-s}
    assert lie_bracket(FixedThirdL(1), L(3), M(2)) == L(2, 2)
    # the fixed basis vector is central
    for other in (L(-2), L(5), M(0), M(3)):
        assert lie_bracket(FixedThirdL(2), L(2), other).is_zero()
        assert lie_bracket(FixedThirdM(2), M(2), other).is_zero()


def test_omega_bracket_values():
    assert tri_bracket(OMEGA, L(1), L(2), M(0)) == L(3)
    assert tri_bracket(OMEGA, L(0), M(1), M(2)) == M(3)
    assert tri_bracket(OMEGA, L(1), L(1), M(0)).is_zero()
    assert tri_bracket(OMEGA, L(1), L(2), L(3)).is_zero()
    assert tri_bracket(OMEGA, M(1), M(2), M(3)).is_zero()


def test_fk_bracket_values():
    fk = FKBracket(1, ONE)
    assert tri_bracket(fk, L(2), L(0), M(1)) == L(3, 2)
    assert tri_bracket(fk, L(2), M(1), L(0)) == L(3, -2)
    assert tri_bracket(fk, M(0), M(1), M(2)).is_zero()
    assert tri_bracket(fk, L(1), M(0), M(2)).is_zero()
    beta = FiniteSupportFunctional({5: Fraction(1, 2)})
    fk2 = FKBracket(0, beta)
    assert tri_bracket(fk2, L(1), L(0), M(5)) == L(1, Fraction(1, 2))
    assert tri_bracket(fk2, L(1), L(0), M(4)).is_zero()


def test_determinant_bracket_matches_omega():
    for args in ((L(1), L(2), M(0)), (L(0), M(1), M(2)), (L(1), M(2), L(3))):
        assert tri_bracket(DETERMINANT, *args) == tri_bracket(OMEGA, *args)


def test_trilinearity_on_combinations():
    u = L(1, 2) + M(-1)
    v = L(0) - M(2, Fraction(1, 3))
    w = M(0) + L(3)
    direct = tri_bracket(OMEGA, u, v, w)
    expanded = Element.zero()
    for b1, c1 in u.terms.items():
        for b2, c2 in v.terms.items():
            for b3, c3 in w.terms.items():
                expanded = expanded + tri_bracket(
                    OMEGA, Element({b1: 1}), Element({b2: 1}), Element({b3: 1})
                ).scale(c1 * c2 * c3)
    assert direct == expanded


def test_from_functional_requires_certificate():
    spec = FromFunctionalBracket(DkInduced(1), ONE)
    with pytest.raises(BracketPreconditionError):
        tri_bracket(spec, L(1), L(2), M(0))
    certified, rep = certify_from_functional(DkInduced(1), ONE, Window(-3, 3))
    assert rep.ok
    assert tri_bracket(certified, L(1), L(2), M(0)) == tri_bracket(FKBracket(1, ONE), L(1), L(2), M(0))
    with pytest.raises(BracketPreconditionError):
        tri_bracket(certified, L(9), L(2), M(0))


def test_anticommutativity_window():
    assert check_anticommutativity(OMEGA, Window(-3, 3)).ok
    assert check_anticommutativity(FKBracket(1, ONE), Window(-3, 3)).ok


def test_fundamental_identity_small_windows():
    assert check_fundamental_identity(OMEGA, Window(-2, 2), 20, seed=3).ok
    assert check_fundamental_identity(FKBracket(0, ONE), Window(-2, 2), 20, seed=3).ok
    beta = PolynomialFunctional(T)
    assert check_fundamental_identity(FKBracket(2, beta), Window(-2, 2), 10, seed=3).ok


def test_constructor_agreement():
    for k in (-1, 0, 1, 2):
        rep = check_constructor_agreement(Window(-2, 2), k, ONE)
        assert rep.ok, rep.counterexamples


def test_center_fixed_third():
    basis, rep = center_window(FixedThirdL(0), Window(-4, 4))
    assert basis == [L(0)]
    basis, rep = center_window(FixedThirdL(2), Window(-4, 4))
    assert basis == [L(2)]
    basis, rep = center_window(FixedThirdM(1), Window(-4, 4))
    assert basis == [M(1)]


def test_center_dk_induced_is_m_family():
    # d_k kills M and M*L = 0, so every M is central; no L combination is
    basis, rep = center_window(DkInduced(0), Window(-3, 3))
    assert basis == [M(r) for r in range(-3, 4)]
    assert lie_bracket(DkInduced(0), L(0), L(1)) == L(1, -1)  # L_0 is not central


def test_random_element_determinism():
    import random

    a = [random_element(random.Random(9), Window(-3, 3)) for _ in range(5)]
    b = [random_element(random.Random(9), Window(-3, 3)) for _ in range(5)]
    assert a == b
