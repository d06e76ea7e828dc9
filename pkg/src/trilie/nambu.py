"""Symbolic three-variable function algebra and the Jacobian bracket.

The carrier is span{ y^a z^b exp(r*x) : a, b >= 0, r in Z } with exact
rational coefficients.  It is closed under products and all three
partial derivatives, which is exactly what the determinant

    [g1, g2, g3] = det d(g1, g2, g3) / d(x, y, z)

needs.  Realization maps send the algebra basis L_r, M_r into this
carrier so the ternary brackets can be compared against the Jacobian
bracket term for term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from .elements import FAMILY_L, BasisVector, Element, FunctionalSpec
from .linalg import SpanSolver
from .polys import Rational, normalize_rational, rat_str
from .report import PASS, VerdictReport, Window

# term key: (ypow, zpow, freq) with freq the integer coefficient of x
# inside the exponential
TermKey = Tuple[int, int, int]


class SymFunction:
    """Finitely supported rational combination of y^a z^b exp(r*x)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[TermKey, Rational]] = None):
        clean: Dict[TermKey, Rational] = {}
        if terms:
            for key, c in terms.items():
                c = normalize_rational(c)
                if c:
                    clean[key] = c
        self.terms = clean

    @staticmethod
    def zero() -> "SymFunction":
        return SymFunction()

    @staticmethod
    def term(coef: Rational = 1, ypow: int = 0, zpow: int = 0, freq: int = 0) -> "SymFunction":
        if ypow < 0 or zpow < 0:
            raise ValueError("powers of y and z must be nonnegative")
        return SymFunction({(ypow, zpow, freq): coef})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "SymFunction") -> "SymFunction":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = SymFunction.__new__(SymFunction)
        res.terms = out
        return res

    def __neg__(self) -> "SymFunction":
        res = SymFunction.__new__(SymFunction)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: "SymFunction") -> "SymFunction":
        return self + (-other)

    def scale(self, c: Rational) -> "SymFunction":
        if not c:
            return SymFunction()
        return SymFunction({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunction):
            out: Dict[TermKey, Rational] = {}
            for (a1, b1, r1), c1 in self.terms.items():
                for (a2, b2, r2), c2 in other.terms.items():
                    key = (a1 + a2, b1 + b2, r1 + r2)
                    s = out.get(key, 0) + c1 * c2
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
            return SymFunction(out)
        return self.scale(other)

    def __rmul__(self, c: Rational) -> "SymFunction":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymFunction) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            ypow, zpow, freq = key
            c = self.terms[key]
            factors = []
            if ypow:
                factors.append("y" if ypow == 1 else f"y^{ypow}")
            if zpow:
                factors.append("z" if zpow == 1 else f"z^{zpow}")
            if freq:
                inner = "x" if freq == 1 else ("-x" if freq == -1 else f"{freq}*x")
                factors.append(f"exp({inner})")
            mag = -c if c < 0 else c
            if mag != 1 or not factors:
                factors.insert(0, rat_str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


def partial(var: str, g: SymFunction) -> SymFunction:
    """Exact partial derivative with respect to 'x', 'y', or 'z'."""
    out: Dict[TermKey, Rational] = {}
    if var == "x":
        for (a, b, r), c in g.terms.items():
            if r:
                key = (a, b, r)
                out[key] = out.get(key, 0) + c * r
    elif var == "y":
        for (a, b, r), c in g.terms.items():
            if a:
                key = (a - 1, b, r)
                out[key] = out.get(key, 0) + c * a
    elif var == "z":
        for (a, b, r), c in g.terms.items():
            if b:
                key = (a, b - 1, r)
                out[key] = out.get(key, 0) + c * b
    else:
        raise ValueError(f"unknown variable {var!r}")
    return SymFunction(out)


_JACOBIAN_PERMS = (
    (("x", "y", "z"), 1),
    (("x", "z", "y"), -1),
    (("y", "x", "z"), -1),
    (("y", "z", "x"), 1),
    (("z", "x", "y"), 1),
    (("z", "y", "x"), -1),
)


def nambu_bracket(g1: SymFunction, g2: SymFunction, g3: SymFunction) -> SymFunction:
    """Jacobian determinant of (g1, g2, g3) with respect to (x, y, z)."""
    funcs = (g1, g2, g3)
    acc = SymFunction.zero()
    for vars_, sign in _JACOBIAN_PERMS:
        prod = partial(vars_[0], funcs[0]) * partial(vars_[1], funcs[1]) * partial(vars_[2], funcs[2])
        acc = acc + (prod if sign > 0 else -prod)
    return acc


# -- realization maps ----------------------------------------------------


@dataclass(frozen=True)
class OmegaRealization:
    """L_r -> z exp(rx), M_r -> y exp(-rx)."""

    def image(self, bv: BasisVector) -> SymFunction:
        if bv.family == FAMILY_L:
            return SymFunction.term(1, 0, 1, bv.index)
        return SymFunction.term(1, 1, 0, -bv.index)

    def describe(self) -> str:
        return "omega-realization"


@dataclass(frozen=True)
class FKRealization:
    """L_r -> z exp(rx), M_r -> -beta_r y exp(kx).

    The printed image of M_r carries +beta_r, but the Jacobian bracket of
    those images reverses the bracket's orientation (the determinant
    yields the (s - r) coefficient, this bracket carries (r - s)).  The
    minus sign on the single M slot of every nonzero bracket restores an
    exact homomorphism; checks report the resolved sign.
    """

    k: int
    functional: FunctionalSpec

    def image(self, bv: BasisVector) -> SymFunction:
        if bv.family == FAMILY_L:
            return SymFunction.term(1, 0, 1, bv.index)
        beta = self.functional.beta(bv.index)
        if not beta:
            return SymFunction.zero()
        return SymFunction.term(-beta, 1, 0, self.k)

    def describe(self) -> str:
        return f"fk-realization(k={self.k}, beta={self.functional.describe()}, sign=resolved)"


RealizationMap = Union[OmegaRealization, FKRealization]


def realize(rmap: RealizationMap, u: Element) -> SymFunction:
    acc = SymFunction.zero()
    for bv, c in u.terms.items():
        acc = acc + rmap.image(bv).scale(c)
    return acc


def _pairing_ok(rmap, spec) -> bool:
    from .brackets import FKBracket, OmegaBracket

    if isinstance(rmap, OmegaRealization):
        return isinstance(spec, OmegaBracket)
    if isinstance(rmap, FKRealization):
        return (
            isinstance(spec, FKBracket)
            and spec.k == rmap.k
            and spec.functional == rmap.functional
        )
    return False


def check_realization(rmap: RealizationMap, spec, window: Window) -> VerdictReport:
    """Homomorphism check: the Jacobian bracket of the images equals the
    image of the algebra bracket, on every window basis triple."""
    from .brackets import tri_bracket

    if not _pairing_ok(rmap, spec):
        raise ValueError(
            f"realization {rmap.describe()} does not correspond to bracket {spec.describe()}"
        )
    rep = VerdictReport(
        "nambu-realization",
        {"map": rmap.describe(), "bracket": spec.describe(), "window": str(window)},
    )
    from .elements import window_basis

    basis = window_basis(window)
    triples = 0
    for b1 in basis:
        g1 = rmap.image(b1)
        for b2 in basis:
            g2 = rmap.image(b2)
            for b3 in basis:
                triples += 1
                lhs = nambu_bracket(g1, g2, rmap.image(b3))
                rhs = realize(
                    rmap, tri_bracket(spec, Element({b1: 1}), Element({b2: 1}), Element({b3: 1}))
                )
                if lhs != rhs:
                    rep.record_failure(
                        f"[{b1},{b2},{b3}]: jacobian gives {lhs}, bracket image is {rhs}"
                    )
    rep.stats["triples"] = triples
    if isinstance(rmap, FKRealization) and rep.status == PASS:
        rep.flag(
            "the printed M-image (+beta_r y exp(kx)) makes the map an "
            "anti-homomorphism: the Jacobian produces the (s-r) orientation "
            "while this bracket carries (r-s); the oracle negates the M images "
            "and the homomorphism is then exact"
        )
    return rep


def check_injectivity(rmap: RealizationMap, window: Window) -> VerdictReport:
    """Kernel dimension of the realization restricted to the window span,
    by exact row reduction of the images."""
    rep = VerdictReport(
        "realization-injectivity", {"map": rmap.describe(), "window": str(window)}
    )
    from .elements import window_basis

    solver = SpanSolver()
    basis = window_basis(window)
    for bv in basis:
        solver.add(dict(rmap.image(bv).terms))
    kernel_dim = len(basis) - solver.rank
    rep.stats["window_vectors"] = len(basis)
    rep.stats["image_rank"] = solver.rank
    rep.stats["kernel_dimension"] = kernel_dim
    if kernel_dim:
        rep.note(
            "the realization is a homomorphism but not injective on the window "
            f"span (kernel dimension {kernel_dim}); the M family collapses onto "
            "a single line"
        )
    return rep
