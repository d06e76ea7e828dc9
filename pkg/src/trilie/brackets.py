"""Binary and ternary brackets on A, with exact identity checkers.

Two ternary brackets are primitive:

* the weighted bracket ``fk(k, f)``: the only nonzero products are
  [L_r, L_s, M_t] = beta_t * (r - s) * L_{r+s+k}, with beta_t = f(M_t);
* the involution bracket ``omega``: [L_r, L_s, M_t] = (s - r) * L_{r+s-t}
  and [L_r, M_s, M_t] = (t - s) * M_{s+t-r}.

Each also arises from a general constructor, and the checkers confirm
the two routes agree coefficient-exactly:

* from a Lie bracket [ , ]_k = d_k(u) v - u d_k(v) and a functional f
  vanishing on brackets: [u,v,w] = f(u)[v,w] + f(v)[w,u] + f(w)[u,v];
* from the determinant with rows (omega-row, identity row, delta-row).

Brackets of window elements may land outside the window; results are
always compared as full exact elements, never truncations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from .elements import (
    FAMILY_L,
    FAMILY_M,
    BasisVector,
    Element,
    FunctionalSpec,
    d_k,
    delta,
    functional_eval,
    omega,
    window_basis,
)
from .linalg import null_space
from .report import PASS, VerdictReport, Window

# -- bracket specifications --------------------------------------------


@dataclass(frozen=True)
class DkInduced:
    """Lie bracket [u, v]_k = d_k(u) v - u d_k(v)."""

    k: int

    def describe(self) -> str:
        return f"dk({self.k})"


@dataclass(frozen=True)
class FixedThird:
    """Lie bracket [u, v] = [u, v, b] under the omega ternary bracket,
    with b the fixed window-independent basis vector family[k]."""

    family: str
    k: int

    def describe(self) -> str:
        return f"fixed-third({self.family}[{self.k}])"


def FixedThirdL(k: int) -> FixedThird:
    return FixedThird(FAMILY_L, k)


def FixedThirdM(k: int) -> FixedThird:
    return FixedThird(FAMILY_M, k)


LieBracketSpec = Union[DkInduced, FixedThird]


@dataclass(frozen=True)
class OmegaBracket:
    def describe(self) -> str:
        return "omega"


@dataclass(frozen=True)
class FKBracket:
    k: int
    functional: FunctionalSpec

    def describe(self) -> str:
        return f"fk(k={self.k}, beta={self.functional.describe()})"


@dataclass(frozen=True)
class FromFunctionalBracket:
    """Ternary bracket built from a Lie bracket and a functional.

    Evaluation requires that f vanishes on Lie brackets; this is never
    assumed, it is certified on a window first (``certify``), and the
    bracket refuses to evaluate arguments outside the certified window.
    """

    lie: LieBracketSpec
    functional: FunctionalSpec
    certified: Optional[Window] = None

    def describe(self) -> str:
        cert = str(self.certified) if self.certified else "uncertified"
        return f"from-functional(lie={self.lie.describe()}, beta={self.functional.describe()}, certified={cert})"


@dataclass(frozen=True)
class DeterminantBracket:
    def describe(self) -> str:
        return "determinant"


TriBracketSpec = Union[OmegaBracket, FKBracket, FromFunctionalBracket, DeterminantBracket]

OMEGA = OmegaBracket()
DETERMINANT = DeterminantBracket()


class BracketPreconditionError(ValueError):
    """Raised when a bracket is evaluated without its certified hypothesis."""


# -- Lie brackets -------------------------------------------------------


def lie_bracket(spec: LieBracketSpec, u: Element, v: Element) -> Element:
    if isinstance(spec, DkInduced):
        return d_k(spec.k, u) * v - u * d_k(spec.k, v)
    if isinstance(spec, FixedThird):
        return tri_bracket(OMEGA, u, v, Element.basis(spec.family, spec.k))
    raise TypeError(f"unknown Lie bracket spec {spec!r}")


# -- fast closed forms on basis triples ---------------------------------
#
# Triples are (family, index) pairs; the return value is
# (integer-or-rational coefficient, family, index) or None for zero.
# These are the hot path of the exhaustive sweeps.

Triple = Tuple[str, int]


def omega_triple(a: Triple, b: Triple, c: Triple):
    fa, ia = a
    fb, ib = b
    fc, ic = c
    if fa == FAMILY_L:
        if fb == FAMILY_L:
            if fc == FAMILY_L:
                return None
            r, s, t = ia, ib, ic                      # (L, L, M)
            coef = s - r
            return (coef, FAMILY_L, r + s - t) if coef else None
        if fc == FAMILY_L:                            # (L, M, L) ~ -(L, L, M)
            r, s, t = ia, ic, ib
            coef = r - s
            return (coef, FAMILY_L, r + s - t) if coef else None
        r, s, t = ia, ib, ic                          # (L, M, M)
        coef = t - s
        return (coef, FAMILY_M, s + t - r) if coef else None
    # fa == M
    if fb == FAMILY_L:
        if fc == FAMILY_L:                            # (M, L, L) ~ +(L, L, M) cyclic
            r, s, t = ib, ic, ia
            coef = s - r
            return (coef, FAMILY_L, r + s - t) if coef else None
        r, s, t = ib, ia, ic                          # (M, L, M) ~ -(L, M, M)
        coef = s - t
        return (coef, FAMILY_M, s + t - r) if coef else None
    if fc == FAMILY_L:                                # (M, M, L) ~ +(L, M, M) cyclic
        r, s, t = ic, ia, ib
        coef = t - s
        return (coef, FAMILY_M, s + t - r) if coef else None
    return None                                       # (M, M, M)


def fk_triple_fn(k: int, f: FunctionalSpec):
    """Closed-form basis bracket for fk(k, f), as a reusable callable."""

    beta = f.beta

    def triple(a: Triple, b: Triple, c: Triple):
        fa, ia = a
        fb, ib = b
        fc, ic = c
        nL = (fa == FAMILY_L) + (fb == FAMILY_L) + (fc == FAMILY_L)
        if nL != 2:
            return None
        if fa == FAMILY_M:
            r, s, t, sign = ib, ic, ia, 1             # cyclic (M,L,L) -> (L,L,M)
        elif fb == FAMILY_M:
            r, s, t, sign = ia, ic, ib, -1            # swap last two
        else:
            r, s, t, sign = ia, ib, ic, 1
        coef = beta(t) * (r - s) * sign
        return (coef, FAMILY_L, r + s + k) if coef else None

    return triple


def closed_triple_fn(spec: TriBracketSpec) -> Optional[Callable]:
    if isinstance(spec, OmegaBracket):
        return omega_triple
    if isinstance(spec, FKBracket):
        return fk_triple_fn(spec.k, spec.functional)
    return None


# -- ternary brackets on general elements --------------------------------


def tri_bracket(spec: TriBracketSpec, u: Element, v: Element, w: Element) -> Element:
    if isinstance(spec, (OmegaBracket, FKBracket)):
        triple = closed_triple_fn(spec)
        out = {}
        for b1, c1 in u.terms.items():
            for b2, c2 in v.terms.items():
                c12 = c1 * c2
                for b3, c3 in w.terms.items():
                    res = triple(b1, b2, b3)
                    if res is None:
                        continue
                    coef, fam, idx = res
                    bv = BasisVector(fam, idx)
                    s = out.get(bv, 0) + c12 * c3 * coef
                    if s:
                        out[bv] = s
                    else:
                        out.pop(bv, None)
        return Element(out)
    if isinstance(spec, FromFunctionalBracket):
        if spec.certified is None:
            raise BracketPreconditionError(
                "from-functional bracket used without certifying that the "
                "functional vanishes on Lie brackets; call certify_from_functional first"
            )
        for elem in (u, v, w):
            for bv in elem.terms:
                if bv.index not in spec.certified:
                    raise BracketPreconditionError(
                        f"argument index {bv.index} outside certified window {spec.certified}"
                    )
        f, lie = spec.functional, spec.lie
        out = Element.zero()
        out = out + lie_bracket(lie, v, w).scale(functional_eval(f, u))
        out = out + lie_bracket(lie, w, u).scale(functional_eval(f, v))
        out = out + lie_bracket(lie, u, v).scale(functional_eval(f, w))
        return out
    if isinstance(spec, DeterminantBracket):
        ou, ov, ow = omega(u), omega(v), omega(w)
        du, dv, dw = delta(u), delta(v), delta(w)
        return (
            ou * (v * dw - w * dv)
            - ov * (u * dw - w * du)
            + ow * (u * dv - v * du)
        )
    raise TypeError(f"unknown ternary bracket spec {spec!r}")


def certify_from_functional(
    lie: LieBracketSpec, f: FunctionalSpec, window: Window
) -> Tuple[FromFunctionalBracket, VerdictReport]:
    """Certify f([b1, b2]) = 0 on all window basis pairs, then hand back a
    bracket spec that is allowed to evaluate on that window."""
    rep = VerdictReport(
        "functional-vanishing-certificate",
        {"lie": lie.describe(), "beta": f.describe(), "window": str(window)},
    )
    basis = window_basis(window)
    for b1 in basis:
        for b2 in basis:
            val = functional_eval(f, lie_bracket(lie, Element({b1: 1}), Element({b2: 1})))
            if val:
                rep.record_failure(f"f([{b1}, {b2}]) = {val} != 0")
    rep.stats["pairs"] = len(basis) ** 2
    certified = window if rep.status == PASS else None
    return FromFunctionalBracket(lie, f, certified), rep


# -- deterministic random elements ---------------------------------------

COEFF_POOL = (1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2, Fraction(1, 3), Fraction(-1, 3))


def random_element(rng: random.Random, window: Window, max_terms: int = 4) -> Element:
    """Seeded small element: support <= max_terms inside the window,
    coefficients from a fixed rational pool."""
    n = rng.randint(1, max_terms)
    terms = {}
    for _ in range(n):
        fam = rng.choice((FAMILY_L, FAMILY_M))
        idx = rng.randint(window.lo, window.hi)
        terms[BasisVector(fam, idx)] = rng.choice(COEFF_POOL)
    return Element(terms)


# -- identity checkers ----------------------------------------------------

_PERMS = (
    ((0, 1, 2), 1),
    ((0, 2, 1), -1),
    ((1, 0, 2), -1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((2, 1, 0), -1),
)


def check_anticommutativity(spec: TriBracketSpec, window: Window) -> VerdictReport:
    """Total antisymmetry under all six permutations, every basis triple."""
    rep = VerdictReport(
        "anticommutativity", {"bracket": spec.describe(), "window": str(window)}
    )
    basis = [Element({bv: 1}) for bv in window_basis(window)]
    checked = 0
    for u1 in basis:
        for u2 in basis:
            for u3 in basis:
                base = tri_bracket(spec, u1, u2, u3)
                args = (u1, u2, u3)
                for perm, sign in _PERMS[1:]:
                    checked += 1
                    permuted = tri_bracket(spec, args[perm[0]], args[perm[1]], args[perm[2]])
                    if permuted != base.scale(sign):
                        rep.record_failure(
                            f"[{u1}, {u2}, {u3}] vs permutation {perm}: {base} / {permuted}"
                        )
    rep.stats["permutation_checks"] = checked
    return rep


def _fi_residual_basis(triple, u1, u2, u3, v2, v3) -> bool:
    """Exact fundamental-identity residual on a basis 5-tuple; True if zero."""
    acc = {}
    inner = triple(u1, u2, u3)
    if inner is not None:
        ci, fam, idx = inner
        outer = triple((fam, idx), v2, v3)
        if outer is not None:
            co, fo, io = outer
            acc[(fo, io)] = ci * co
    for args in (
        (triple(u1, v2, v3), 0),
        (triple(u2, v2, v3), 1),
        (triple(u3, v2, v3), 2),
    ):
        sub, pos = args
        if sub is None:
            continue
        cs, fam, idx = sub
        slot = [(u1), (u2), (u3)]
        slot[pos] = (fam, idx)
        term = triple(slot[0], slot[1], slot[2])
        if term is None:
            continue
        ct, ft, it = term
        key = (ft, it)
        s = acc.get(key, 0) - cs * ct
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)
    return not acc


def fundamental_identity_residual(
    spec: TriBracketSpec, u1: Element, u2: Element, u3: Element, v2: Element, v3: Element
) -> Element:
    """[[u1,u2,u3],v2,v3] - sum_i [u1,..,[u_i,v2,v3],..,u3], exactly."""
    lhs = tri_bracket(spec, tri_bracket(spec, u1, u2, u3), v2, v3)
    rhs = (
        tri_bracket(spec, tri_bracket(spec, u1, v2, v3), u2, u3)
        + tri_bracket(spec, u1, tri_bracket(spec, u2, v2, v3), u3)
        + tri_bracket(spec, u1, u2, tri_bracket(spec, u3, v2, v3))
    )
    return lhs - rhs


def check_fundamental_identity(
    spec: TriBracketSpec, window: Window, sample_elements: int = 0, seed: int = 0
) -> VerdictReport:
    """The generalized Jacobi identity, exhaustively over basis 5-tuples in
    the window plus seeded random element 5-tuples, with exact residuals."""
    rep = VerdictReport(
        "fundamental-identity",
        {
            "bracket": spec.describe(),
            "window": str(window),
            "samples": sample_elements,
            "seed": seed,
        },
    )
    triple = closed_triple_fn(spec)
    basis = [(bv.family, bv.index) for bv in window_basis(window)]
    count = 0
    if triple is not None:
        for u1 in basis:
            for u2 in basis:
                for u3 in basis:
                    for v2 in basis:
                        for v3 in basis:
                            count += 1
                            if not _fi_residual_basis(triple, u1, u2, u3, v2, v3):
                                rep.record_failure(
                                    f"residual nonzero at basis tuple {u1},{u2},{u3};{v2},{v3}"
                                )
    else:
        elems = [Element({bv: 1}) for bv in window_basis(window)]
        for u1 in elems:
            for u2 in elems:
                for u3 in elems:
                    for v2 in elems:
                        for v3 in elems:
                            count += 1
                            res = fundamental_identity_residual(spec, u1, u2, u3, v2, v3)
                            if res:
                                rep.record_failure(
                                    f"residual {res} at {u1},{u2},{u3};{v2},{v3}"
                                )
    rep.stats["basis_tuples"] = count
    rng = random.Random(seed)
    for _ in range(sample_elements):
        args = [random_element(rng, window) for _ in range(5)]
        res = fundamental_identity_residual(spec, *args)
        if res:
            rep.record_failure(
                "residual " + str(res) + " at sampled tuple " + "; ".join(map(str, args))
            )
    rep.stats["sampled_tuples"] = sample_elements
    return rep


def check_constructor_agreement(
    window: Window, k: int, f: FunctionalSpec
) -> VerdictReport:
    """Two agreements on every window basis triple:

    (a) the functional construction over [ , ]_k reproduces fk(k, f);
    (b) the determinant construction reproduces the omega bracket.
    """
    rep = VerdictReport(
        "constructor-agreement",
        {"window": str(window), "k": k, "beta": f.describe()},
    )
    ff_spec, cert = certify_from_functional(DkInduced(k), f, window)
    rep.merge_status(cert)
    rep.notes.extend(cert.notes)
    if cert.status != PASS:
        rep.counterexamples.extend(cert.counterexamples)
        return rep
    fk_spec = FKBracket(k, f)
    basis = [Element({bv: 1}) for bv in window_basis(window)]
    triples = 0
    for u in basis:
        for v in basis:
            for w in basis:
                triples += 1
                a = tri_bracket(ff_spec, u, v, w)
                b = tri_bracket(fk_spec, u, v, w)
                if a != b:
                    rep.record_failure(
                        f"functional route {a} != closed form {b} on [{u},{v},{w}]"
                    )
                da = tri_bracket(DETERMINANT, u, v, w)
                db = tri_bracket(OMEGA, u, v, w)
                if da != db:
                    rep.record_failure(
                        f"determinant route {da} != closed form {db} on [{u},{v},{w}]"
                    )
    rep.stats["triples"] = triples
    rep.note("functional route uses the Lie bracket induced by d_k, as in the source proof")
    return rep


# -- window centre of a Lie bracket ---------------------------------------


def center_window(spec: LieBracketSpec, window: Window):
    """Exact solution space of [x, b] = 0 for every window basis vector b.

    Results of brackets are kept in full (indices may leave the window);
    every output coordinate must vanish.  Returns (basis vectors of the
    solution space as Elements, report).
    """
    rep = VerdictReport("center", {"lie": spec.describe(), "window": str(window)})
    unknowns = list(window_basis(window))
    equations = {}
    for b in unknowns:
        img = {}
        for bprime in unknowns:
            res = lie_bracket(spec, Element({b: 1}), Element({bprime: 1}))
            for out_bv, c in res.terms.items():
                img[(bprime, out_bv)] = c
        equations[b] = img
    # transpose: one equation per (bprime, output coordinate)
    eq_rows = {}
    for b, img in equations.items():
        for key, c in img.items():
            eq_rows.setdefault(key, {})[b] = c
    kernel = null_space(list(eq_rows.values()), unknowns)
    center = [Element(vec) for vec in kernel]
    rep.stats["dimension"] = len(center)
    rep.note(
        "solution space is exact for commutation against window basis vectors; "
        "vectors central here need not be central against out-of-window basis "
        "vectors (window-boundary caveat)"
    )
    for elem in center:
        rep.note(f"central: {elem}")
    return center, rep
