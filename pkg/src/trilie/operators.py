"""Inner derivations as exact index-affine operators.

An inner derivation ad(u, v): w -> [u, v, w] acts on basis vectors
through finitely many *channels*.  A channel maps family_in at index t
to family_out at index eps*t + m (eps in {+1, 0, -1}: shift, collapse
onto a fixed index, or reflection) with an exact coefficient function
of t.  Coefficient functions are sums of polynomial atoms p(t) and
weighted atoms p(t)*beta(sign*t + off) referring to the active linear
functional.

This representation is closed under addition, scaling, composition and
commutators, so multiplication tables can be re-derived by a generic
commutator oracle and compared against their printed forms as exact
operator identities.  When the functional is constant or polynomial the
beta atoms reduce to polynomials and equality is structural; for
finite-support functionals equality falls back to exhaustive window
evaluation and reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .brackets import FKBracket, OmegaBracket, TriBracketSpec
from .elements import (
    FAMILY_L,
    FAMILY_M,
    BasisVector,
    Element,
    FunctionalSpec,
    L,
    M,
    window_basis,
)
from .linalg import SpanSolver
from .polys import ZERO, Poly, Rational, normalize_rational, rat_str
from .report import PASS, VerdictReport, Window

# atom key: None for a plain polynomial, or (sign, off) for
# p(t) * beta(sign*t + off) with sign in {-1, 0, +1}
AtomKey = Optional[Tuple[int, int]]


class CoeffFn:
    """Exact coefficient function of the basis index."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: Optional[Dict[AtomKey, Poly]] = None):
        clean: Dict[AtomKey, Poly] = {}
        if atoms:
            for key, p in atoms.items():
                if p:
                    clean[key] = p
        self.atoms = clean

    @staticmethod
    def from_poly(p: Poly) -> "CoeffFn":
        return CoeffFn({None: p})

    @staticmethod
    def const(c: Rational) -> "CoeffFn":
        return CoeffFn({None: Poly.const(c)})

    @staticmethod
    def from_beta(p: Poly, sign: int = 1, off: int = 0) -> "CoeffFn":
        return CoeffFn({(sign, off): p})

    def is_zero(self) -> bool:
        return not self.atoms

    def __bool__(self) -> bool:
        return bool(self.atoms)

    def __add__(self, other: "CoeffFn") -> "CoeffFn":
        out = dict(self.atoms)
        for key, p in other.atoms.items():
            s = out.get(key, ZERO) + p
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return CoeffFn(out)

    def __neg__(self) -> "CoeffFn":
        return CoeffFn({k: -p for k, p in self.atoms.items()})

    def scale(self, c: Rational) -> "CoeffFn":
        if not c:
            return CoeffFn()
        return CoeffFn({k: p.scale(c) for k, p in self.atoms.items()})

    def compose_affine(self, a: int, b: int) -> "CoeffFn":
        """Precompose the index argument with t -> a*t + b."""
        out: Dict[AtomKey, Poly] = {}
        for key, p in self.atoms.items():
            q = p.compose_affine(a, b)
            if key is None:
                nk: AtomKey = None
            else:
                sign, off = key
                nk = (sign * a, sign * b + off)
            s = out.get(nk, ZERO) + q
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
        return CoeffFn(out)

    def __mul__(self, other: "CoeffFn") -> "CoeffFn":
        out: Dict[AtomKey, Poly] = {}
        for k1, p1 in self.atoms.items():
            for k2, p2 in other.atoms.items():
                if k1 is not None and k2 is not None:
                    # never produced by the ad-calculus of these algebras
                    raise ArithmeticError("product of two beta-weighted atoms is not representable")
                nk = k1 if k1 is not None else k2
                q = p1 * p2
                s = out.get(nk, ZERO) + q
                if s:
                    out[nk] = s
                else:
                    out.pop(nk, None)
        return CoeffFn(out)

    def has_beta(self) -> bool:
        return any(k is not None for k in self.atoms)

    def substitute(self, f: FunctionalSpec) -> "CoeffFn":
        """Reduce beta atoms when the functional has a closed polynomial form."""
        bp = f.as_poly()
        if bp is None or not self.has_beta():
            return self
        out: Dict[AtomKey, Poly] = {}
        acc = self.atoms.get(None, ZERO)
        for key, p in self.atoms.items():
            if key is None:
                continue
            sign, off = key
            acc = acc + p * bp.compose_affine(sign, off)
        if acc:
            out[None] = acc
        return CoeffFn(out)

    def eval(self, t: int, f: Optional[FunctionalSpec] = None) -> Rational:
        acc = 0
        for key, p in self.atoms.items():
            if key is None:
                acc += p(t)
            else:
                if f is None:
                    raise ValueError("coefficient depends on beta but no functional is active")
                sign, off = key
                acc += p(t) * f.beta(sign * t + off)
        return normalize_rational(acc)

    def pure_poly(self) -> Optional[Poly]:
        if self.has_beta():
            return None
        return self.atoms.get(None, ZERO)

    def max_degree(self) -> int:
        return max((p.degree for p in self.atoms.values()), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffFn) and self.atoms == other.atoms

    def __hash__(self):
        return hash(frozenset(self.atoms.items()))

    def __str__(self) -> str:
        if not self.atoms:
            return "0"
        parts = []
        for key in sorted(self.atoms, key=lambda k: (0,) if k is None else (1, k)):
            p = self.atoms[key]
            if key is None:
                parts.append(str(p))
            else:
                sign, off = key
                arg = {1: "t", -1: "-t", 0: ""}[sign]
                if off:
                    arg = f"{arg}{off:+d}" if arg else str(off)
                parts.append(f"({p})*beta({arg})")
        return " + ".join(parts)


# channel key: (family_in, family_out, eps, m)
ChannelKey = Tuple[str, str, int, int]


class Operator:
    """Exact linear operator on A given by index-affine channels."""

    __slots__ = ("channels",)

    def __init__(self, channels: Optional[Dict[ChannelKey, CoeffFn]] = None):
        clean: Dict[ChannelKey, CoeffFn] = {}
        if channels:
            for key, cf in channels.items():
                if cf:
                    clean[key] = cf
        self.channels = clean

    @staticmethod
    def zero() -> "Operator":
        return Operator()

    def is_zero(self) -> bool:
        return not self.channels

    def __bool__(self) -> bool:
        return bool(self.channels)

    def __add__(self, other: "Operator") -> "Operator":
        out = dict(self.channels)
        for key, cf in other.channels.items():
            s = out.get(key)
            s = cf if s is None else s + cf
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Operator(out)

    def __neg__(self) -> "Operator":
        return Operator({k: -cf for k, cf in self.channels.items()})

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def scale(self, c: Rational) -> "Operator":
        if not c:
            return Operator()
        return Operator({k: cf.scale(c) for k, cf in self.channels.items()})

    def __mul__(self, c: Rational) -> "Operator":
        return self.scale(c)

    __rmul__ = __mul__

    def apply(self, u: Element, functional: Optional[FunctionalSpec] = None) -> Element:
        out: Dict[BasisVector, Rational] = {}
        for (fam, t), c in u.terms.items():
            for (fin, fout, eps, m), cf in self.channels.items():
                if fin != fam:
                    continue
                coef = cf.eval(t, functional)
                if not coef:
                    continue
                bv = BasisVector(fout, eps * t + m)
                s = out.get(bv, 0) + c * coef
                if s:
                    out[bv] = s
                else:
                    out.pop(bv, None)
        return Element(out)

    def compose(self, other: "Operator") -> "Operator":
        """self after other."""
        out: Dict[ChannelKey, CoeffFn] = {}
        for (fin1, fout1, eps1, m1), cf1 in other.channels.items():
            for (fin2, fout2, eps2, m2), cf2 in self.channels.items():
                if fin2 != fout1:
                    continue
                key = (fin1, fout2, eps2 * eps1, eps2 * m1 + m2)
                cf = cf1 * cf2.compose_affine(eps1, m1)
                s = out.get(key)
                s = cf if s is None else s + cf
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Operator(out)

    def commutator(self, other: "Operator") -> "Operator":
        return self.compose(other) - other.compose(self)

    def substitute(self, f: FunctionalSpec) -> "Operator":
        return Operator({k: cf.substitute(f) for k, cf in self.channels.items()})

    def has_beta(self) -> bool:
        return any(cf.has_beta() for cf in self.channels.values())

    def max_poly_degree(self) -> int:
        return max((cf.max_degree() for cf in self.channels.values()), default=-1)

    def coordinates(self) -> Dict[tuple, Rational]:
        """Flatten into sparse exact coordinates for rank/decomposition.

        Faithful for polynomial coefficients: channels with different
        index maps agree at most at one index, so structural independence
        coincides with independence as linear maps.
        """
        out: Dict[tuple, Rational] = {}
        for (fin, fout, eps, m), cf in self.channels.items():
            for akey, p in cf.atoms.items():
                kind, bs, bo = ("p", 0, 0) if akey is None else ("b", akey[0], akey[1])
                for deg, c in enumerate(p.coeffs):
                    if c:
                        out[(fin, fout, eps, m, kind, bs, bo, deg)] = c
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Operator) and self.channels == other.channels

    def __str__(self) -> str:
        if not self.channels:
            return "0"
        lines = []
        for key in sorted(self.channels):
            fin, fout, eps, m = key
            if eps == 1:
                idx = f"t{m:+d}" if m else "t"
            elif eps == -1:
                idx = f"{m}-t" if m else "-t"
            else:
                idx = str(m)
            lines.append(f"{fin}[t] -> ({self.channels[key]})*{fout}[{idx}]")
        return "; ".join(lines)

    __repr__ = __str__


def ops_equal(
    a: Operator,
    b: Operator,
    functional: Optional[FunctionalSpec] = None,
    window: Optional[Window] = None,
) -> Tuple[bool, str]:
    """Exact operator equality; returns (answer, decision mode).

    Structural when coefficients are (or reduce to) polynomials; for a
    finite-support functional the decision is by exhaustive evaluation
    on the window and labelled as such.
    """
    if functional is not None:
        a = a.substitute(functional)
        b = b.substitute(functional)
    if not (a.has_beta() or b.has_beta()):
        return a == b, "structural"
    if functional is None or window is None:
        raise ValueError("beta-dependent equality needs a functional and a window")
    for bv in window_basis(window):
        u = Element({bv: 1})
        if a.apply(u, functional) != b.apply(u, functional):
            return False, "window-decided"
    return True, "window-decided"


# -- building inner derivations ------------------------------------------


def op_from_ad(spec: TriBracketSpec, u: Element, v: Element) -> Operator:
    """The operator w -> [u, v, w] in exact channel form."""
    channels: Dict[ChannelKey, CoeffFn] = {}

    def add(key: ChannelKey, cf: CoeffFn):
        s = channels.get(key)
        s = cf if s is None else s + cf
        if s:
            channels[key] = s
        else:
            channels.pop(key, None)

    if isinstance(spec, OmegaBracket):
        for (f1, i1), c1 in u.terms.items():
            for (f2, i2), c2 in v.terms.items():
                w = c1 * c2
                if f1 == FAMILY_L and f2 == FAMILY_M:
                    r, s, sgn = i1, i2, 1
                elif f1 == FAMILY_M and f2 == FAMILY_L:
                    r, s, sgn = i2, i1, -1
                elif f1 == FAMILY_L:  # (L, L)
                    r, s = i1, i2
                    add((FAMILY_M, FAMILY_L, -1, r + s), CoeffFn.const(w * (s - r)))
                    continue
                else:  # (M, M)
                    r, s = i1, i2
                    add((FAMILY_L, FAMILY_M, -1, r + s), CoeffFn.const(w * (s - r)))
                    continue
                c = w * sgn
                add((FAMILY_L, FAMILY_L, 1, r - s), CoeffFn.from_poly(Poly((r, -1)).scale(c)))
                add((FAMILY_M, FAMILY_M, 1, s - r), CoeffFn.from_poly(Poly((-s, 1)).scale(c)))
        return Operator(channels)

    if isinstance(spec, FKBracket):
        k, f = spec.k, spec.functional
        for (f1, i1), c1 in u.terms.items():
            for (f2, i2), c2 in v.terms.items():
                w = c1 * c2
                if f1 == FAMILY_L and f2 == FAMILY_M:
                    r, s, sgn = i1, i2, 1
                elif f1 == FAMILY_M and f2 == FAMILY_L:
                    r, s, sgn = i2, i1, -1
                elif f1 == FAMILY_L:  # (L, L): collapse onto L[r+s+k]
                    r, s = i1, i2
                    cf = CoeffFn.from_beta(Poly.const(w * (r - s))).substitute(f)
                    add((FAMILY_M, FAMILY_L, 0, r + s + k), cf)
                    continue
                else:
                    continue  # (M, M) acts as zero
                beta_s = f.beta(s)
                if beta_s:
                    coeff = Poly((-r, 1)).scale(w * sgn * beta_s)  # beta_s * (t - r)
                    add((FAMILY_L, FAMILY_L, 1, r + k), CoeffFn.from_poly(coeff))
        return Operator(channels)

    raise ValueError(
        "ad operators are built from a closed-form bracket (omega or fk); "
        f"got {spec.describe()}"
    )


# -- named generators ------------------------------------------------------


def ad_w(spec: TriBracketSpec, r: int, s: int) -> Operator:
    return op_from_ad(spec, L(r), M(s))


def ad_x(spec: TriBracketSpec, r: int, s: int) -> Operator:
    return op_from_ad(spec, L(r), L(s))


def ad_y(spec: TriBracketSpec, r: int, s: int) -> Operator:
    return op_from_ad(spec, M(r), M(s))


_OMEGA = OmegaBracket()


def gen_p(r: int) -> Operator:
    if r == 0:
        return op_from_ad(_OMEGA, L(0), M(0))
    return (op_from_ad(_OMEGA, L(0), M(-r)) + op_from_ad(_OMEGA, L(r), M(0))).scale(Fraction(1, 2))


def gen_q(r: int) -> Operator:
    if r == 0:
        return op_from_ad(_OMEGA, L(0), M(0)) - op_from_ad(_OMEGA, L(1), M(1))
    return (op_from_ad(_OMEGA, L(0), M(-r)) - op_from_ad(_OMEGA, L(r), M(0))).scale(Fraction(1, r))


def gen_x(r: int) -> Operator:
    if r == 0:
        return op_from_ad(_OMEGA, L(1), L(-1)).scale(Fraction(1, 2))
    return op_from_ad(_OMEGA, L(r), L(0)).scale(Fraction(1, r))


def gen_z(r: int) -> Operator:
    if r == 0:
        return op_from_ad(_OMEGA, M(1), M(-1)).scale(Fraction(1, 2))
    return op_from_ad(_OMEGA, M(-r), M(0)).scale(Fraction(-1, r))


GENERATORS = {"p": gen_p, "q": gen_q, "x": gen_x, "z": gen_z}


@dataclass(frozen=True)
class GeneratorId:
    """Name of a distinguished inner derivation.

    Tags 'W', 'X', 'Y' take two integer parameters and exist for both
    algebras; tags 'p', 'q', 'x', 'z' take one parameter and belong to
    the omega algebra.  X and Y are antisymmetric in their parameters;
    the canonical orientation stores r >= s.
    """

    tag: str
    params: Tuple[int, ...]
    algebra: TriBracketSpec

    def normalized(self) -> Tuple["GeneratorId", int]:
        if self.tag in ("X", "Y") and self.params[0] < self.params[1]:
            r, s = self.params
            return GeneratorId(self.tag, (s, r), self.algebra), -1
        return self, 1


def make_generator(gid: GeneratorId) -> Operator:
    tag = gid.tag
    if tag == "W":
        return ad_w(gid.algebra, *gid.params)
    if tag == "X":
        return ad_x(gid.algebra, *gid.params)
    if tag == "Y":
        return ad_y(gid.algebra, *gid.params)
    if tag in GENERATORS:
        if not isinstance(gid.algebra, OmegaBracket):
            raise ValueError(f"generator {tag} belongs to the omega algebra")
        return GENERATORS[tag](gid.params[0])
    raise ValueError(f"unknown generator tag {tag!r}")


# -- decomposition in a labelled operator set ------------------------------


def decompose(
    target: Operator,
    labelled: Sequence[Tuple[object, Operator]],
    functional: Optional[FunctionalSpec] = None,
) -> Optional[Dict[object, Rational]]:
    """Express target as an exact combination of the given operators.

    Returns {label: coefficient} without zero entries, or None if the
    target lies outside the span.  Decomposition happens in structural
    channel coordinates (faithful for polynomial coefficients).
    """
    if functional is not None:
        target = target.substitute(functional)
        labelled = [(lab, op.substitute(functional)) for lab, op in labelled]
    solver = SpanSolver()
    for lab, op in labelled:
        solver.add(op.coordinates(), tag=lab)
    combo = solver.express(target.coordinates())
    if combo is None:
        return None
    return {lab: c for lab, c in combo.items() if c}


def operator_rank(
    ops: Sequence[Operator],
    functional: Optional[FunctionalSpec] = None,
    window: Optional[Window] = None,
) -> Tuple[int, str]:
    """Exact rank of a family of operators, with the decision mode.

    Polynomial coefficients reduce to structural coordinates; a
    finite-support functional forces window evaluation (and the caller
    should report the rank as window-decided).
    """
    if functional is not None:
        ops = [op.substitute(functional) for op in ops]
    if any(op.has_beta() for op in ops):
        if functional is None or window is None:
            raise ValueError("beta-dependent rank needs a functional and a window")
        solver = SpanSolver()
        basis = window_basis(window)
        for op in ops:
            vec = {}
            for bv in basis:
                img = op.apply(Element({bv: 1}), functional)
                for obv, c in img.terms.items():
                    vec[(bv, obv)] = c
            solver.add(vec)
        return solver.rank, "window-decided"
    solver = SpanSolver()
    for op in ops:
        solver.add(op.coordinates())
    return solver.rank, "structural"


# -- invariant-subspace search (labelled basis, diagonal pivot) ------------


def invariant_line_structure(
    labels: Sequence[object],
    eigen: Dict[object, Rational],
    edges: Dict[object, set],
) -> dict:
    """Exact window-scale invariant-subspace enumeration.

    Requires a diagonal acting operator with pairwise distinct
    eigenvalues on the labelled basis (then every invariant subspace is
    spanned by basis labels), and the one-hop reachability of the full
    acting family.  Invariant subspaces are the unions of label
    closures; the result lists every inclusion-minimal proper one.
    """
    vals = [eigen[l] for l in labels]
    distinct = len(set(vals)) == len(vals)
    closures: Dict[object, frozenset] = {}
    full = frozenset(labels)
    for start in labels:
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for lab in frontier:
                for tgt in edges.get(lab, ()):
                    if tgt not in seen:
                        seen.add(tgt)
                        nxt.append(tgt)
            frontier = nxt
        closures[start] = frozenset(seen)
    minimal_proper = sorted(
        {c for c in closures.values() if c != full},
        key=lambda s: (len(s), sorted(map(str, s))),
    )
    return {
        "distinct_eigenvalues": distinct,
        "closures": closures,
        "minimal_proper": minimal_proper,
        "irreducible": distinct and not minimal_proper,
    }


# -- published-table verification ------------------------------------------

# ten bracket rows of the p/q/x/z table: left tag, right tag, and the
# expected right-hand side as (coefficient as function of (r, s), tag)
TABLE_ROWS: Tuple[Tuple[str, str, Optional[Tuple[object, str]]], ...] = (
    ("p", "p", (lambda r, s: r - s, "p")),
    ("p", "q", (lambda r, s: -s, "q")),
    ("p", "x", (lambda r, s: -s, "x")),
    ("p", "z", (lambda r, s: -s, "z")),
    ("q", "q", None),
    ("q", "x", (lambda r, s: -2, "x")),
    ("q", "z", (lambda r, s: 2, "z")),
    ("x", "x", None),
    ("z", "z", None),
    ("z", "x", (lambda r, s: 1, "q")),
)


def verify_table_5_1(bound: int = 5) -> VerdictReport:
    """Re-derive the ten p/q/x/z bracket rows with the commutator oracle
    and compare against the printed right-hand sides as exact operators.

    On any mismatch the oracle's decomposition of the commutator in the
    graded p/q/x/z set is reported as the corrected right-hand side.
    """
    rep = VerdictReport("table-5-1", {"bound": bound})
    pairs = 0
    corrections = 0
    for left, right, expected in TABLE_ROWS:
        row_ok = True
        for r in range(-bound, bound + 1):
            for s in range(-bound, bound + 1):
                pairs += 1
                comm = GENERATORS[left](r).commutator(GENERATORS[right](s))
                if comm.max_poly_degree() > 1:
                    rep.record_failure(
                        f"[{left}_{r}, {right}_{s}] has coefficient degree > 1 after cancellation"
                    )
                if expected is None:
                    want = Operator.zero()
                else:
                    coef_fn, tag = expected
                    want = GENERATORS[tag](r + s).scale(coef_fn(r, s))
                if comm != want:
                    row_ok = False
                    corrections += 1
                    basis = [((tag, r + s), GENERATORS[tag](r + s)) for tag in "pqxz"]
                    combo = decompose(comm, basis)
                    if combo is None:
                        detail = f"channels: {comm}"
                    else:
                        detail = " + ".join(
                            f"{rat_str(c)}*{tag}_{m}" for (tag, m), c in sorted(combo.items())
                        ) or "0"
                    rep.record_failure(
                        f"[{left}_{r}, {right}_{s}]: printed row disagrees; oracle gives {detail}"
                    )
        if row_ok:
            rep.stats[f"row_{left}{right}"] = "confirmed"
    rep.stats["pairs_checked"] = pairs
    rep.stats["corrections"] = corrections
    return rep


# -- linear independence of the published operator families ----------------


def _omega_fb_family(window: Window) -> List[Tuple[str, Operator]]:
    ops: List[Tuple[str, Operator]] = [
        ("W(0,0)", ad_w(_OMEGA, 0, 0)),
        ("W(1,1)", ad_w(_OMEGA, 1, 1)),
        ("X(1,-1)", ad_x(_OMEGA, 1, -1)),
        ("Y(1,-1)", ad_y(_OMEGA, 1, -1)),
    ]
    for r in window.indices():
        if r == 0:
            continue
        ops.append((f"W({r},0)", ad_w(_OMEGA, r, 0)))
        ops.append((f"W(0,{r})", ad_w(_OMEGA, 0, r)))
        ops.append((f"X({r},0)", ad_x(_OMEGA, r, 0)))
        ops.append((f"Y({r},0)", ad_y(_OMEGA, r, 0)))
    return ops


def verify_basis_independence(
    algebra: str,
    window: Window,
    functional: Optional[FunctionalSpec] = None,
    k: int = 0,
    s0: int = 0,
) -> VerdictReport:
    """Exact rank of the published spanning family, plus the reduction
    identities used to cut the W/X/Y families down to it."""
    rep = VerdictReport(
        "basis-independence",
        {"algebra": algebra, "window": str(window), "k": k, "s0": s0},
    )
    lo, hi = window.lo, window.hi
    if algebra == "omega":
        spec: TriBracketSpec = _OMEGA
        ops = _omega_fb_family(window)
        rank, mode = operator_rank([op for _, op in ops])
        rep.stats["family_size"] = len(ops)
        rep.stats["rank"] = rank
        rep.stats["decision"] = mode
        if rank != len(ops):
            rep.record_failure(f"rank {rank} < family size {len(ops)}")
        for r in window.indices():
            for s in window.indices():
                if r != s:
                    lhs = ad_w(spec, r, s).scale(r - s)
                    rhs = ad_w(spec, r - s, 0).scale(r) - ad_w(spec, 0, s - r).scale(s)
                    if lhs != rhs:
                        rep.record_failure(f"W({r},{s}) reduction identity fails")
                else:
                    if ad_w(spec, r, r) != ad_w(spec, 0, 0).scale(1 - r) + ad_w(spec, 1, 1).scale(r):
                        rep.record_failure(f"W({r},{r}) diagonal reduction fails")
                if s != -r:
                    if ad_x(spec, r, s).scale(r + s) != ad_x(spec, r + s, 0).scale(r - s):
                        rep.record_failure(f"X({r},{s}) reduction identity fails")
                    if ad_y(spec, r, s).scale(r + s) != ad_y(spec, r + s, 0).scale(r - s):
                        rep.record_failure(f"Y({r},{s}) reduction identity fails")
                elif r != 0:
                    if ad_x(spec, r, -r) != ad_x(spec, 1, -1).scale(r):
                        rep.record_failure(f"X({r},{-r}) != {r}*X(1,-1)")
                    if ad_y(spec, r, -r) != ad_y(spec, 1, -1).scale(r):
                        rep.record_failure(f"Y({r},{-r}) != {r}*Y(1,-1)")
        rep.stats["reduction_identities"] = "checked"
        return rep

    if algebra != "fk":
        raise ValueError("algebra must be 'omega' or 'fk'")
    if functional is None:
        raise ValueError("fk basis independence needs a functional")
    if functional.beta(s0) == 0:
        raise ValueError(f"beta({s0}) vanishes; pick s0 with a nonzero weight")
    spec = FKBracket(k, functional)
    ops = [(f"W({s},{s0})", ad_w(spec, s, s0)) for s in window.indices()]
    ops += [(f"X({r},0)", ad_x(spec, r, 0)) for r in window.indices() if r != 0]
    ops.append(("X(1,-1)", ad_x(spec, 1, -1)))
    rank, mode = operator_rank([op for _, op in ops], functional, window)
    rep.stats["family_size"] = len(ops)
    rep.stats["rank"] = rank
    rep.stats["decision"] = mode
    if mode == "window-decided":
        rep.note(
            "finite-support weight: rank and operator equalities decided by "
            "exhaustive window evaluation"
        )
    if rank != len(ops):
        rep.record_failure(f"rank {rank} < family size {len(ops)}")
    flagged_scaling = False
    for r in window.indices():
        for s in window.indices():
            if s != -r and r + s != 0:
                eq, _ = ops_equal(
                    ad_x(spec, r, s).scale(r + s),
                    ad_x(spec, r + s, 0).scale(r - s),
                    functional,
                    window,
                )
                if not eq:
                    rep.record_failure(f"X({r},{s}) reduction identity fails")
            elif r != 0:
                eq, _ = ops_equal(
                    ad_x(spec, r, -r), ad_x(spec, 1, -1).scale(r), functional, window
                )
                if not eq:
                    rep.record_failure(f"X({r},{-r}) != {r}*X(1,-1)")
                if r * r != 1:
                    printed_eq, _ = ops_equal(
                        ad_x(spec, r, -r),
                        ad_x(spec, 1, -1).scale(Fraction(1, r)),
                        functional,
                        window,
                    )
                    if not printed_eq:
                        flagged_scaling = True
    if flagged_scaling:
        rep.flag(
            "printed scaling X(r,-r) = (1/r)*X(1,-1) is off: the oracle gives "
            "X(r,-r) = r*X(1,-1) (they agree only for r = +/-1)"
        )
    # proportionality of the W family in its second slot
    beta_s0 = functional.beta(s0)
    for r in window.indices():
        for s in window.indices():
            ratio = Fraction(functional.beta(s)) / Fraction(beta_s0)
            eq, _ = ops_equal(
                ad_w(spec, r, s), ad_w(spec, r, s0).scale(ratio), functional, window
            )
            if not eq:
                rep.record_failure(f"W({r},{s}) is not {rat_str(ratio)} * W({r},{s0})")
    rep.note(
        f"W(r,s) = (beta(s)/beta({s0})) * W(r,{s0}); the printed ratio divides by "
        "beta(0), which may vanish for admissible weights, so the oracle "
        f"normalizes by beta({s0}) instead"
    )
    return rep


# -- structure of the inner derivations of the fk algebra ------------------


def verify_section3_structure(
    k: int, functional: FunctionalSpec, s0: int, window: Window
) -> VerdictReport:
    """Structure of ad A for the weighted bracket, re-derived exactly:

    (a) the Witt-type relation on the W family at fixed second slot s0,
    (b) commutativity of the X family,
    (c) the case-split action of W on X, each branch compared against
        its printed coefficient (mismatches get the oracle's corrected
        right-hand side),
    (d) no proper nonzero W-invariant subspace of the X window span,
    (e) the W(r,s) proportionality ratio across the second slot.
    """
    beta_s0 = functional.beta(s0)
    if not beta_s0:
        raise ValueError(f"beta({s0}) = 0; the construction needs a nonzero weight at s0")
    spec = FKBracket(k, functional)
    rep = VerdictReport(
        "section3-structure",
        {"k": k, "beta": functional.describe(), "s0": s0, "window": str(window)},
    )
    if functional.as_poly() is None:
        rep.note(
            "the weight has finite support, so operator equalities in this run "
            "are window-decided (exhaustive evaluation), not structural"
        )

    def weq(a, b):
        eq, _ = ops_equal(a, b, functional, window)
        return eq

    # (a) Witt relation on W generators
    witt = 0
    for r in window.indices():
        for s in window.indices():
            witt += 1
            comm = ad_w(spec, r, s0).commutator(ad_w(spec, s, s0))
            want = ad_w(spec, r + s + k, s0).scale(beta_s0 * (s - r))
            if not weq(comm, want):
                rep.record_failure(
                    f"[W({r},{s0}), W({s},{s0})] != beta({s0})*({s}-{r})*W({r + s + k},{s0})"
                )
    rep.stats["witt_pairs"] = witt

    # (b) the X family commutes
    x_params = [(r, 0) for r in window.indices() if r != 0] + [(1, -1)]
    for (r1, t1) in x_params:
        for (r2, t2) in x_params:
            if ad_x(spec, r1, t1).commutator(ad_x(spec, r2, t2)):
                rep.record_failure(f"[X({r1},{t1}), X({r2},{t2})] != 0")
    rep.stats["xx_pairs"] = len(x_params) ** 2

    # labelled X basis over an index range wide enough for one action hop
    reach_lo = min(2 * window.lo + k, window.lo)
    reach_hi = max(2 * window.hi + k, window.hi)

    def x_label_op(m: int) -> Tuple[str, Operator]:
        if m == 0:
            return "X(1,-1)", ad_x(spec, 1, -1)
        return f"X({m},0)", ad_x(spec, m, 0)

    extended = [x_label_op(m) for m in range(reach_lo, reach_hi + 1)]

    # (c) three-branch action of W on X(r,0), two-branch action on X(1,-1)
    branch_hits = {1: 0, 2: 0, 3: 0}
    flagged: List[str] = []
    for s in window.indices():
        ws = ad_w(spec, s, s0)
        for r in window.indices():
            if r == 0:
                continue
            comm = ws.commutator(ad_x(spec, r, 0))
            combo = decompose(comm, extended, functional)
            if combo is None:
                rep.record_failure(f"[W({s},{s0}), X({r},0)] leaves the X span")
                continue
            if r + s != -k:
                branch_hits[1] += 1
                want = ad_x(spec, r + s + k, 0).scale(
                    Fraction(r * (r - s + k), r + s + k) * beta_s0
                )
                if not weq(comm, want):
                    rep.record_failure(
                        f"branch 1 coefficient mismatch at (r={r}, s={s})"
                    )
            elif s != 0:
                branch_hits[2] += 1
                oracle = ad_x(spec, 1, -1).scale(-r * s * beta_s0)
                if not weq(comm, oracle):
                    rep.record_failure(f"branch 2 oracle form fails at (r={r}, s={s})")
                printed = ad_x(spec, 1, -1).scale(Fraction(-r, s) * beta_s0)
                if not weq(comm, printed) and not flagged:
                    flagged.append(
                        "printed branch coefficient r*beta/s on the swapped generator "
                        "is off: the oracle gives r*s*beta (they agree only for s = +/-1); "
                        f"first mismatch at (r={r}, s={s})"
                    )
            else:
                branch_hits[3] += 1
                if comm:
                    rep.record_failure(
                        f"branch 3 expects the zero operator at (r={r}, s={s})"
                    )
    for s in window.indices():
        comm = ad_w(spec, s, s0).commutator(ad_x(spec, 1, -1))
        if s != -k:
            want = ad_x(spec, s + k, 0).scale(Fraction(2 * (k - s), s + k) * beta_s0)
            if not weq(comm, want):
                rep.record_failure(f"[W({s},{s0}), X(1,-1)] mismatch at s={s}")
        else:
            oracle = ad_x(spec, 1, -1).scale(2 * k * beta_s0)
            if not weq(comm, oracle):
                rep.record_failure(f"[W({-k},{s0}), X(1,-1)] oracle form fails")
            if k * k != 1:
                flagged.append(
                    "printed coefficient (2*beta/s at s=-k) disagrees with the oracle "
                    f"value 2*k*beta for k={k}"
                    + ("; the printed form divides by zero" if k == 0 else "")
                )
    for branch, hits in branch_hits.items():
        rep.stats[f"branch_{branch}_hits"] = hits
    for note in flagged:
        rep.flag(note)

    # (d) invariant-subspace search: diagonal pivot W(-k, s0), then closures
    labels = [m for m in window.indices()]  # m = 0 stands for X(1,-1)
    eigen: Dict[object, Rational] = {}
    pivot = ad_w(spec, -k, s0)
    diag_ok = True
    for m in labels:
        lab, op = x_label_op(m)
        comm = pivot.commutator(op)
        expected_eig = beta_s0 * (m + 2 * k)
        if not weq(comm, op.scale(expected_eig)):
            diag_ok = False
            rep.record_failure(f"W({-k},{s0}) does not act diagonally on {lab}")
        eigen[m] = expected_eig
    edges: Dict[object, set] = {m: set() for m in labels}
    escapes = 0
    for s in window.indices():
        ws = ad_w(spec, s, s0)
        for m in labels:
            comm = ws.commutator(x_label_op(m)[1])
            combo = decompose(comm, extended, functional)
            for lab, c in (combo or {}).items():
                target = 0 if lab == "X(1,-1)" else int(lab[2:].split(",")[0])
                if target in edges:
                    if target != m:
                        edges[m].add(target)
                else:
                    escapes += 1
    structure = invariant_line_structure(labels, eigen, edges)
    rep.stats["action_escapes"] = escapes
    if diag_ok and structure["irreducible"]:
        rep.stats["invariant_subspaces"] = "none proper (window-exact)"
    else:
        for sub in structure["minimal_proper"]:
            names = ", ".join(x_label_op(m)[0] for m in sorted(sub))
            rep.record_failure(f"proper W-invariant subspace found: span{{{names}}}")

    # (e) slot ratio
    rep.note(
        f"W(r,s) = (beta(s)/beta({s0})) * W(r,{s0}) exactly; printed ratio uses "
        "beta(0) in the denominator, which the oracle avoids"
    )
    return rep


# -- the loop-algebra structure of the omega inner derivations --------------

_SL2 = {
    ("h", "e"): (2, "e"),
    ("e", "h"): (-2, "e"),
    ("h", "f"): (-2, "f"),
    ("f", "h"): (2, "f"),
    ("e", "f"): (1, "h"),
    ("f", "e"): (-1, "h"),
}

_SIGMA = {"q": "h", "z": "e", "x": "f"}


def sl2_loop_bracket(a: Dict[tuple, Rational], b: Dict[tuple, Rational]) -> Dict[tuple, Rational]:
    """Bracket on sl2 tensored with Laurent polynomials: [g u^i, g' u^j]
    = [g, g'] u^{i+j} with the standard sl2 constants on (h, e, f)."""
    out: Dict[tuple, Rational] = {}
    for (g1, d1), c1 in a.items():
        for (g2, d2), c2 in b.items():
            rule = _SL2.get((g1, g2))
            if rule is None:
                continue
            coef, g3 = rule
            key = (g3, d1 + d2)
            s = out.get(key, 0) + c1 * c2 * coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def verify_sl2_laurent(bound: int = 5) -> VerdictReport:
    """Check that sending q_r, z_r, x_r to h, e, f tensor the r-th Laurent
    power is a Lie homomorphism, for all parameters up to the bound.

    Every q/z/x commutator is decomposed by the oracle and compared with
    the abstract loop-algebra bracket of the images; sign conventions are
    resolved by the oracle, never copied from the printed proof lines.
    """
    rep = VerdictReport("sl2-laurent", {"bound": bound})
    pairs = 0
    for t1 in ("q", "z", "x"):
        for t2 in ("q", "z", "x"):
            for r in range(-bound, bound + 1):
                for s in range(-bound, bound + 1):
                    pairs += 1
                    comm = GENERATORS[t1](r).commutator(GENERATORS[t2](s))
                    basis = [((tag, r + s), GENERATORS[tag](r + s)) for tag in "qzx"]
                    combo = decompose(comm, basis)
                    if combo is None:
                        rep.record_failure(
                            f"[{t1}_{r}, {t2}_{s}] leaves the q/z/x span"
                        )
                        continue
                    image = {}
                    for (tag, m), c in combo.items():
                        key = (_SIGMA[tag], m)
                        image[key] = image.get(key, 0) + c
                    abstract = sl2_loop_bracket(
                        {(_SIGMA[t1], r): 1}, {(_SIGMA[t2], s): 1}
                    )
                    image = {k: v for k, v in image.items() if v}
                    if image != abstract:
                        rep.record_failure(
                            f"sigma([{t1}_{r}, {t2}_{s}]) = {image} but "
                            f"[sigma({t1}_{r}), sigma({t2}_{s})] = {abstract}"
                        )
    rep.stats["pairs_checked"] = pairs
    if rep.status == PASS:
        rep.flag(
            "the map q -> h, z -> e, x -> f (tensor Laurent powers) is an exact "
            "homomorphism; the printed proof line for the (q, x) pair shows a "
            "'+2' where the consistent value on both sides is '-2' (sign slip, "
            "content unaffected)"
        )
    return rep
