from fractions import Fraction

import pytest

from trilie import (
    OMEGA,
    ConstantFunctional,
    Element,
    FKBracket,
    L,
    M,
    window_basis,
)
from trilie.analysis import (
    MODE_DERIVED,
    MODE_IDEAL,
    WindowSubspace,
    fk_cartan_pairs,
    ideal_check,
    ideal_closure_reaches_all,
    cartan_normalizer_check,
    module_axiom_check,
    natural_module_decompose,
    omega_cartan_pairs,
    span_close,
    vandermonde_extract,
    weight_decompose,
    witt_module_check,
)
from trilie.report import Window

ONE = ConstantFunctional(1)


def test_window_subspace_basics():
    w = Window(-2, 2)
    ws = WindowSubspace.from_elements(w, [L(0) + M(1), M(1)])
    assert ws.dim == 2
    assert ws.contains(L(0))
    assert not ws.contains(M(0))
    assert ws.basis_lines() == [L(0).support()[0], M(1).support()[0]]
    with pytest.raises(ValueError):
        ws.add(L(7))


def test_ideal_closure_fast_path_matches_general():
    w = Window(-2, 2)
    chain_fast, _ = span_close(OMEGA, [M(1)], w, MODE_IDEAL)
    # multi-term seed forces the general solver path; same final span
    chain_gen, _ = span_close(OMEGA, [M(1, 2) + Element.zero()], w, MODE_IDEAL)
    assert chain_fast[-1].dim == chain_gen[-1].dim == 10


def test_empty_seed_closure():
    chain, rep = span_close(OMEGA, [], Window(-2, 2), MODE_IDEAL)
    assert chain[-1].dim == 0
    assert rep.ok


def test_omega_simplicity_evidence():
    rep = ideal_closure_reaches_all(OMEGA, Window(-4, 4))
    assert rep.status == "pass"
    rep = ideal_closure_reaches_all(OMEGA, Window(-4, 4), [M(2)])
    assert rep.status == "pass"


def test_fk_derived_series():
    w = Window(-4, 4)
    fk = FKBracket(1, ONE)
    seeds = [Element({bv: 1}) for bv in window_basis(w)]
    chain, rep = span_close(fk, seeds, w, MODE_DERIVED)
    assert chain[1].basis_lines() == [L(r).support()[0] for r in w.indices()]
    assert chain[-1] == chain[1]  # stabilizes at the first derived span
    assert rep.stats["stabilized_at"] >= 2


def test_derived_algebra_of_omega_contains_generating_brackets():
    # [L_r, L_s, M_s] = (s-r) L_r and [L_s, M_r, M_s] = (s-r) M_r
    from trilie import tri_bracket

    for r in range(-2, 3):
        for s in range(-2, 3):
            if r == s:
                continue
            assert tri_bracket(OMEGA, L(r), L(s), M(s)) == L(r, s - r)
            assert tri_bracket(OMEGA, L(s), M(r), M(s)) == M(r, s - r)


def test_vandermonde_extraction():
    ext, rep = vandermonde_extract(OMEGA, L(1) + M(2), 5, 1)
    assert sorted(map(str, ext)) == ["L[1]", "M[2]"]
    ext, rep = vandermonde_extract(OMEGA, L(1), 3, 1)
    assert [str(e) for e in ext] == ["L[1]"]
    ext, rep = vandermonde_extract(OMEGA, L(1) + L(2), 9, 1)
    assert sorted(map(str, ext)) == ["L[1]", "L[2]"]
    u = L(1, 2) + M(1, Fraction(1, 3)) + M(-3, -1) + L(0, 5)
    ext, rep = vandermonde_extract(OMEGA, u, 2, 3)
    assert rep.status == "pass"
    assert len(ext) == 4


def test_vandermonde_preconditions():
    with pytest.raises(ValueError):
        vandermonde_extract(OMEGA, L(5), 5, 2)  # r must dominate strictly
    with pytest.raises(ValueError):
        vandermonde_extract(FKBracket(0, ONE), L(1), 5, 2)


def test_vandermonde_insufficient_power_reported():
    u = L(1) + L(2) + M(0) + M(3)
    ext, rep = vandermonde_extract(OMEGA, u, 9, 1)
    assert rep.status == "fail"


def test_ideal_check_l_family_under_fk():
    w = Window(-4, 4)
    fk = FKBracket(1, ONE)
    rep = ideal_check(fk, [L(r) for r in w.indices()], w)
    assert rep.stats["is_ideal"] == "True"
    assert rep.stats["nilpotent_as_algebra"] == "True"
    assert rep.stats["nilpotent_as_ideal"] == "False"
    assert rep.stats["hypo_nilpotent"] == "True"
    assert rep.stats["minimality_evidence"] == "True"


def test_ideal_check_m_family_under_fk():
    w = Window(-4, 4)
    fk = FKBracket(1, ONE)
    rep = ideal_check(fk, [M(r) for r in w.indices()], w)
    assert rep.stats["is_ideal"] == "False"
    assert rep.stats["own_lower_central_dims"].split(",")[1] == "0"  # abelian


def test_ideal_check_single_line_under_omega():
    rep = ideal_check(OMEGA, [L(0)], Window(-3, 3))
    assert rep.stats["is_ideal"] == "False"


def test_omega_weight_decomposition():
    w = Window(-4, 4)
    deco, rep = weight_decompose(OMEGA, omega_cartan_pairs(), w)
    assert rep.status == "pass"
    assert set(deco.dims.values()) == {2}
    # weight -t space is span{L_t, M_{-t}}
    spaces = {wt[0]: labels for wt, labels in deco.spaces.items()}
    for t in w.indices():
        assert spaces[-t] == tuple(sorted((L(t).support()[0], M(-t).support()[0])))


def test_fk_weight_decomposition_growth():
    zero_dims = []
    for size in (2, 3, 4):
        w = Window(-size, size)
        deco, rep = weight_decompose(FKBracket(0, ONE), fk_cartan_pairs(w, 0), w)
        assert rep.status == "pass"
        zero_dims.append(deco.zero_weight_dim())
        nonzero = [d for wt, d in deco.dims.items() if any(wt)]
        assert set(nonzero) == {1}
    assert zero_dims == [6, 8, 10]  # all M plus L_0: grows with the window


def test_natural_module():
    deco, rep = natural_module_decompose(Window(-4, 4))
    assert rep.status == "pass"
    assert deco.max_dim == 1
    assert len(deco.spaces) == 18
    # L_0 and M_0 are separated by the second diagonal operator
    key_l0 = next(wt for wt, labels in deco.spaces.items() if labels == (L(0).support()[0],))
    key_m0 = next(wt for wt, labels in deco.spaces.items() if labels == (M(0).support()[0],))
    assert key_l0 == (0, -1) and key_m0 == (0, 1)


def test_cartan_normalizer_checks():
    rep = cartan_normalizer_check(
        OMEGA, Window(-3, 3), lambda bv: bv.index == 0, [L(0), M(0)], "L[0], M[0]"
    )
    assert rep.status == "pass"
    fk = FKBracket(1, ONE)
    gens = [L(-1)] + [M(t) for t in range(-3, 4)]
    rep = cartan_normalizer_check(
        fk,
        Window(-3, 3),
        lambda bv: bv.family == "M" or bv.index == -1,
        gens,
        "L[-1] plus the M family",
    )
    assert rep.status == "pass"


def test_module_axioms():
    assert module_axiom_check(OMEGA, Window(-2, 2), samples=10, seed=4).ok
    assert module_axiom_check(FKBracket(1, ONE), Window(-2, 2), samples=10, seed=4).ok


def test_witt_module_checks():
    for i in (1, 2, 3):
        rep = witt_module_check(i, Window(-3, 3))
        assert rep.ok
        assert rep.status == "flagged"
        assert not rep.counterexamples
        assert any("trivial submodule" in n for n in rep.notes)
        assert any("regular-representation reading" in n for n in rep.notes)
    with pytest.raises(ValueError):
        witt_module_check(4, Window(-2, 2))
