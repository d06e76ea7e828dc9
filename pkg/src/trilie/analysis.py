"""Window-scale structural analysis: closures, ideals, weights.

Everything here reduces claims about the infinite algebras to exact
computations on a finite symmetric index window.  Brackets of window
elements may leave the window; such results are never silently dropped:
they are projected onto the window and counted in an escape ledger that
each report carries.  Identity checks are window-uniform; structural
verdicts (simplicity evidence, weight-space growth) are explicitly
labelled as window evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .brackets import (
    OmegaBracket,
    TriBracketSpec,
    closed_triple_fn,
    random_element,
    tri_bracket,
)
from .elements import BasisVector, Element, L, M, window_basis
from .linalg import SpanSolver
from .operators import GENERATORS, gen_p, gen_q, invariant_line_structure
from .report import PASS, VerdictReport, Window

DEFAULT_DEPTH = 8


@dataclass
class WindowSubspace:
    """Row-reduced exact subspace of the window coordinate space."""

    window: Window
    solver: SpanSolver = field(default_factory=SpanSolver)

    @staticmethod
    def from_elements(window: Window, elements: Iterable[Element]) -> "WindowSubspace":
        ws = WindowSubspace(window)
        for e in elements:
            ws.add(e)
        return ws

    def add(self, e: Element) -> bool:
        for bv in e.terms:
            if bv.index not in self.window:
                raise ValueError(f"{bv} outside window {self.window}")
        return self.solver.add(dict(e.terms))

    @property
    def dim(self) -> int:
        return self.solver.rank

    def contains(self, e: Element) -> bool:
        return self.solver.contains(dict(e.terms))

    def basis_elements(self) -> List[Element]:
        return [Element(dict(row)) for row in self.solver.rows]

    def basis_lines(self) -> Optional[List[BasisVector]]:
        """The basis vectors spanned, if every row is a monomial."""
        out = []
        for row in self.solver.rows:
            if len(row) != 1:
                return None
            out.append(next(iter(row)))
        return sorted(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WindowSubspace)
            and self.window == other.window
            and self.solver.pivots == other.solver.pivots
            and self.solver.rows == other.solver.rows
        )

    def __str__(self) -> str:
        lines = self.basis_lines()
        if lines is not None:
            return "span{" + ", ".join(map(str, lines)) + "}"
        return "span{" + "; ".join(str(e) for e in self.basis_elements()) + "}"


def _project(e: Element, window: Window) -> Tuple[Element, Element]:
    """Split into (inside window, outside window)."""
    inside, outside = {}, {}
    for bv, c in e.terms.items():
        (inside if bv.index in window else outside)[bv] = c
    return Element(inside), Element(outside)


# -- closure chains ---------------------------------------------------------

MODE_IDEAL = "IdealClosure"
MODE_DERIVED = "DerivedSeries"
MODE_LOWER_CENTRAL = "LowerCentral"
MODE_SELF_DERIVED = "SelfDerivedSeries"
MODE_SELF_LOWER = "SelfLowerCentral"


def span_close(
    spec: TriBracketSpec,
    seeds: Sequence[Element],
    window: Window,
    mode: str,
    depth: int = DEFAULT_DEPTH,
) -> Tuple[List[WindowSubspace], VerdictReport]:
    """Iterate a bracket closure until stabilization (or the depth cap).

    IdealClosure grows the seed span by brackets against two window basis
    slots; DerivedSeries rebrackets the previous step against itself plus
    one window slot; LowerCentral rebrackets the previous step against
    the seed span plus one window slot.  The Self variants keep the third
    slot inside the seed span as well, treating the seed span as the
    ambient algebra.  Results are projected onto the window; every
    out-of-window remainder is flagged in the report.
    """
    rep = VerdictReport(
        "span-close",
        {
            "bracket": spec.describe(),
            "mode": mode,
            "window": str(window),
            "depth": depth,
            "seeds": "; ".join(str(s) for s in seeds) or "(empty)",
        },
    )
    triple = closed_triple_fn(spec)
    if triple is not None and all(len(s.terms) == 1 for s in seeds):
        return _span_close_pure(rep, triple, seeds, window, mode, depth)
    basis = [Element({bv: 1}) for bv in window_basis(window)]
    escapes = 0
    escape_sample = None

    def bracket_rows(
        rows_a: List[Element], rows_b: List[Element], rows_c: List[Element]
    ) -> Iterable[Element]:
        nonlocal escapes, escape_sample
        for va in rows_a:
            for vb in rows_b:
                for b in rows_c:
                    res = tri_bracket(spec, va, vb, b)
                    if not res:
                        continue
                    inside, outside = _project(res, window)
                    if outside:
                        escapes += 1
                        if escape_sample is None:
                            escape_sample = f"[{va}, {vb}, {b}] -> {res}"
                    if inside:
                        yield inside

    current = WindowSubspace.from_elements(window, seeds)
    chain = [current]
    for _ in range(depth):
        rows = current.basis_elements()
        seed_rows = chain[0].basis_elements()
        if mode == MODE_IDEAL:
            nxt = WindowSubspace.from_elements(window, rows)
            new_rows = list(bracket_rows(rows, basis, basis))
        elif mode == MODE_DERIVED:
            nxt = WindowSubspace(window)
            new_rows = list(bracket_rows(rows, rows, basis))
        elif mode == MODE_LOWER_CENTRAL:
            nxt = WindowSubspace(window)
            new_rows = list(bracket_rows(rows, seed_rows, basis))
        elif mode == MODE_SELF_DERIVED:
            nxt = WindowSubspace(window)
            new_rows = list(bracket_rows(rows, rows, seed_rows))
        elif mode == MODE_SELF_LOWER:
            nxt = WindowSubspace(window)
            new_rows = list(bracket_rows(rows, seed_rows, seed_rows))
        else:
            raise ValueError(f"unknown closure mode {mode!r}")
        for e in new_rows:
            nxt.add(e)
        chain.append(nxt)
        if nxt == current:
            break
        current = nxt
    stabilized = len(chain) >= 2 and chain[-1] == chain[-2]
    rep.stats["chain_dims"] = ",".join(str(s.dim) for s in chain)
    rep.stats["stabilized_at"] = len(chain) - 1 if stabilized else -1
    rep.stats["escapes"] = escapes
    if not stabilized:
        rep.note(f"chain did not stabilize within depth {depth}")
    if escapes:
        rep.note(
            f"{escapes} bracket results had support outside the window and were "
            f"projected (first: {escape_sample}); in-window spans are evidence, "
            "not truncations of exact members"
        )
    return chain, rep


def _span_close_pure(
    rep: VerdictReport, triple, seeds: Sequence[Element], window: Window, mode: str, depth: int
) -> Tuple[List[WindowSubspace], VerdictReport]:
    """Set-based closure: brackets of basis vectors are monomials, so a
    span seeded by basis lines stays a union of basis lines and the whole
    iteration is exact reachability (window projection drops whole terms,
    so it cannot create artifacts here)."""
    basis = [(bv.family, bv.index) for bv in window_basis(window)]
    seed_set = frozenset(next(iter(s.terms)) for s in seeds)
    escapes = 0

    def targets(set_a: frozenset, set_b, set_c) -> frozenset:
        nonlocal escapes
        out = set()
        third = [(bv.family, bv.index) if isinstance(bv, BasisVector) else bv for bv in set_c]
        for va in set_a:
            ta = (va.family, va.index)
            for vb in set_b:
                tb = (vb.family, vb.index)
                for bc in third:
                    res = triple(ta, tb, bc)
                    if res is None:
                        continue
                    _, fam, idx = res
                    if idx in window:
                        out.add(BasisVector(fam, idx))
                    else:
                        escapes += 1
        return frozenset(out)

    basis_lines = [BasisVector(f, i) for f, i in basis]
    current = seed_set
    chain_sets = [current]
    for _ in range(depth):
        if mode == MODE_IDEAL:
            nxt = current | targets(current, basis_lines, basis_lines)
        elif mode == MODE_DERIVED:
            nxt = targets(current, current, basis_lines)
        elif mode == MODE_LOWER_CENTRAL:
            nxt = targets(current, seed_set, basis_lines)
        elif mode == MODE_SELF_DERIVED:
            nxt = targets(current, current, seed_set)
        elif mode == MODE_SELF_LOWER:
            nxt = targets(current, seed_set, seed_set)
        else:
            raise ValueError(f"unknown closure mode {mode!r}")
        chain_sets.append(nxt)
        if nxt == current:
            break
        current = nxt
    chain = [
        WindowSubspace.from_elements(window, [Element({bv: 1}) for bv in sorted(s)])
        for s in chain_sets
    ]
    stabilized = len(chain_sets) >= 2 and chain_sets[-1] == chain_sets[-2]
    rep.stats["chain_dims"] = ",".join(str(len(s)) for s in chain_sets)
    rep.stats["stabilized_at"] = len(chain_sets) - 1 if stabilized else -1
    rep.stats["escapes"] = escapes
    if not stabilized:
        rep.note(f"chain did not stabilize within depth {depth}")
    if escapes:
        rep.note(
            f"{escapes} single-term bracket results fell outside the window and "
            "were dropped (projection-exact: all results are basis monomials)"
        )
    return chain, rep


def ideal_closure_reaches_all(
    spec: TriBracketSpec,
    window: Window,
    seeds: Optional[Sequence[Element]] = None,
    expect_full: bool = True,
) -> VerdictReport:
    """Ideal closures of single seeds (every basis vector by default).

    With expect_full the check is simplicity evidence: every closure must
    reach the full window span.  Without it the reached spans are
    reported as findings (the weighted bracket has proper ideals, so full
    reach is not a claim there)."""
    rep = VerdictReport(
        "ideal-closure", {"bracket": spec.describe(), "window": str(window)}
    )
    full_dim = 2 * (window.hi - window.lo + 1)
    seed_list = (
        [Element({bv: 1}) for bv in window_basis(window)] if seeds is None else list(seeds)
    )
    reached = []
    for seed in seed_list:
        chain, sub = span_close(spec, [seed], window, MODE_IDEAL)
        reached.append(chain[-1].dim)
        if expect_full and chain[-1].dim != full_dim:
            rep.record_failure(
                f"closure of {seed} stops at dimension {chain[-1].dim} < {full_dim}"
            )
    rep.stats["seeds"] = len(seed_list)
    rep.stats["window_dimension"] = full_dim
    rep.stats["reached_dimensions"] = ",".join(map(str, sorted(set(reached))))
    if expect_full and rep.status == PASS:
        rep.note(
            "every seed regenerates the full window span (window-scale simplicity evidence)"
        )
    elif not expect_full:
        rep.note("closure spans reported as computed; no full-reach claim for this bracket")
    return rep


# -- the separation trick for single basis vectors --------------------------


def vandermonde_extract(
    spec: TriBracketSpec, u: Element, r: int, max_power: int
) -> Tuple[List[Element], VerdictReport]:
    """Split an element into pure basis lines using powers of the diagonal
    operator ad(L_r, M_r), then exact row reduction.

    Requires the omega bracket and r strictly greater than every index in
    the support, which makes the node values pairwise distinct, so the
    power iterates form an invertible Vandermonde system.
    """
    if not isinstance(spec, OmegaBracket):
        raise ValueError("the separation argument is specific to the omega bracket")
    top = max((bv.index for bv in u.terms), default=None)
    if top is not None and r <= top:
        raise ValueError(f"dominating index required: r={r} is not greater than {top}")
    rep = VerdictReport(
        "vandermonde-extract",
        {"element": str(u), "r": r, "max_power": max_power},
    )
    lr, mr = L(r), M(r)
    iterates = [u]
    for _ in range(max_power):
        iterates.append(tri_bracket(spec, lr, mr, iterates[-1]))
    solver = SpanSolver()
    for it in iterates:
        solver.add(dict(it.terms))
    extracted = []
    for row in solver.rows:
        if len(row) == 1:
            bv = next(iter(row))
            extracted.append(Element({bv: 1}))
    rep.stats["support_size"] = len(u.terms)
    rep.stats["iterates"] = len(iterates)
    rep.stats["extracted"] = len(extracted)
    if len(extracted) != len(u.terms):
        rep.record_failure(
            f"only {len(extracted)} of {len(u.terms)} support lines separated "
            f"(need max_power >= support size - 1)"
        )
    return extracted, rep


# -- ideal / subalgebra verdicts --------------------------------------------


def ideal_check(
    spec: TriBracketSpec,
    candidate: Sequence[Element],
    window: Window,
    depth: int = DEFAULT_DEPTH,
) -> VerdictReport:
    """Is the candidate span an ideal on the window, and of which kind?

    Computes containment of [candidate, A, A], nilpotency of the
    candidate as an algebra on its own, the lower-central chain of the
    candidate as an ideal, and minimality evidence (each single generator
    regenerates the candidate by ideal closure).  Escaping brackets are
    classified structurally when the candidate is spanned by whole basis
    families.  The verdicts live in the stats; a non-ideal candidate is a
    finding with witnesses, not a failure of the check itself.
    """
    rep = VerdictReport(
        "ideal-check", {"bracket": spec.describe(), "window": str(window)}
    )
    sub = WindowSubspace.from_elements(window, candidate)
    lines = sub.basis_lines()
    families = None
    if lines is not None:
        fams = {bv.family for bv in lines}
        expected = [bv for bv in window_basis(window) if bv.family in fams]
        if sorted(lines) == sorted(expected):
            families = fams
    basis = [Element({bv: 1}) for bv in window_basis(window)]
    is_ideal = True
    boundary = 0
    witnesses = 0
    for row in sub.basis_elements():
        for b1 in basis:
            for b2 in basis:
                res = tri_bracket(spec, row, b1, b2)
                if not res:
                    continue
                inside, outside = _project(res, window)
                escaped_families = outside and (
                    families is None
                    or any(bv.family not in families for bv in outside.terms)
                )
                if outside and not escaped_families:
                    boundary += 1
                if escaped_families or (inside and not sub.contains(inside)):
                    is_ideal = False
                    witnesses += 1
                    if witnesses <= 3:
                        rep.note(f"not an ideal: [{row}, {b1}, {b2}] = {res} leaves the candidate")
    rep.stats["is_ideal"] = str(is_ideal)
    rep.stats["escape_witnesses"] = witnesses
    rep.stats["boundary_escapes"] = boundary

    # the candidate as an algebra of its own: all three slots stay inside
    own_chain, _ = span_close(spec, list(candidate), window, MODE_SELF_LOWER, depth)
    own_nilpotent = own_chain[-1].dim == 0
    rep.stats["own_lower_central_dims"] = ",".join(str(s.dim) for s in own_chain)
    rep.stats["nilpotent_as_algebra"] = str(own_nilpotent)
    if len(own_chain) > 1 and own_chain[1].dim == 0:
        rep.note("candidate has zero bracket with itself (abelian subalgebra)")

    # lower-central chain of the candidate as an ideal of A
    lc_chain, _ = span_close(spec, list(candidate), window, MODE_LOWER_CENTRAL, depth)
    lc_zero = lc_chain[-1].dim == 0
    rep.stats["ideal_lower_central_dims"] = ",".join(str(s.dim) for s in lc_chain)
    rep.stats["nilpotent_as_ideal"] = str(lc_zero)

    hypo = is_ideal and own_nilpotent and not lc_zero
    rep.stats["hypo_nilpotent"] = str(hypo)

    # minimality evidence: every single generator regenerates the candidate
    if is_ideal:
        minimal = True
        for row in sub.basis_elements():
            chain, _ = span_close(spec, [row], window, MODE_IDEAL, depth)
            closure = chain[-1]
            for other in sub.basis_elements():
                if not closure.contains(other):
                    minimal = False
                    rep.note(
                        f"ideal closure of {row} does not recover {other} "
                        "(no window minimality evidence)"
                    )
                    break
            if not minimal:
                break
        rep.stats["minimality_evidence"] = str(minimal)
    return rep


# -- weight decompositions ---------------------------------------------------


@dataclass
class WeightDecomposition:
    """Simultaneous exact eigenspace decomposition of the window span."""

    window: Window
    pairs: List[str]
    spaces: Dict[tuple, Tuple[BasisVector, ...]]
    diagonal: bool

    @property
    def dims(self) -> Dict[tuple, int]:
        return {w: len(v) for w, v in self.spaces.items()}

    @property
    def max_dim(self) -> int:
        return max((len(v) for v in self.spaces.values()), default=0)

    def zero_weight_dim(self) -> int:
        for w, v in self.spaces.items():
            if all(c == 0 for c in w):
                return len(v)
        return 0

    def verdicts(self) -> Dict[str, bool]:
        """Window-scale flags.  Every window weight space is finite by
        construction, so the Harish-Chandra flag on a single window only
        says the decomposition exists; unbounded growth of a weight space
        across increasing windows is the caller's counter-evidence."""
        return {
            "is_weight_module": self.diagonal,
            "is_harish_chandra_on_window": self.diagonal,
            "is_intermediate_series_on_window": self.diagonal and self.max_dim <= 1,
        }


def weight_decompose(
    spec: TriBracketSpec,
    cartan_pairs: Sequence[Tuple[Element, Element]],
    window: Window,
) -> Tuple[WeightDecomposition, VerdictReport]:
    """Decompose the window span under the bracket action of the given
    commuting pairs.  All published Cartan actions are diagonal on the
    basis; a non-diagonal action is reported as a failure rather than
    approximated."""
    rep = VerdictReport(
        "weight-decomposition",
        {
            "bracket": spec.describe(),
            "window": str(window),
            "pairs": "; ".join(f"({h1}, {h2})" for h1, h2 in cartan_pairs),
        },
    )
    basis = window_basis(window)
    weights: Dict[BasisVector, list] = {bv: [] for bv in basis}
    diagonal = True
    for h1, h2 in cartan_pairs:
        for bv in basis:
            img = tri_bracket(spec, h1, h2, Element({bv: 1}))
            lam = img.coefficient(bv)
            if img != Element({bv: lam} if lam else {}):
                diagonal = False
                rep.record_failure(
                    f"action of ({h1}, {h2}) is not diagonal: {bv} -> {img}"
                )
            weights[bv].append(lam)
    spaces: Dict[tuple, list] = {}
    if diagonal:
        for bv in basis:
            spaces.setdefault(tuple(weights[bv]), []).append(bv)
    deco = WeightDecomposition(
        window,
        [f"({h1}, {h2})" for h1, h2 in cartan_pairs],
        {w: tuple(sorted(v)) for w, v in spaces.items()},
        diagonal,
    )
    if diagonal:
        rep.stats["weight_spaces"] = len(deco.spaces)
        rep.stats["max_dim"] = deco.max_dim
        rep.stats["zero_weight_dim"] = deco.zero_weight_dim()
        total = sum(deco.dims.values())
        if total != len(basis):
            rep.record_failure("weight spaces do not exhaust the window span")
        else:
            rep.note("window span is the direct sum of the weight spaces")
    # abelianness of the span of all cartan entries
    gens: List[Element] = []
    for h1, h2 in cartan_pairs:
        gens.extend((h1, h2))
    for a in gens:
        for b in gens:
            for c in gens:
                if tri_bracket(spec, a, b, c):
                    rep.record_failure(f"cartan span is not abelian: [{a}, {b}, {c}] != 0")
    return deco, rep


def omega_cartan_pairs() -> List[Tuple[Element, Element]]:
    return [(L(0), M(0))]


def fk_cartan_pairs(window: Window, k: int) -> List[Tuple[Element, Element]]:
    return [(L(-k), M(t)) for t in window.indices()]


def cartan_normalizer_check(
    spec: TriBracketSpec,
    window: Window,
    in_cartan,
    cartan_generators: Sequence[Element],
    name: str,
) -> VerdictReport:
    """Window self-normalization: any window element whose brackets against
    the cartan generators and all window basis vectors stay inside the
    cartan span must itself lie in the cartan span.

    ``in_cartan(bv)`` decides membership structurally, so out-of-window
    coordinates are classified correctly for family-shaped cartans.
    """
    from .linalg import null_space

    rep = VerdictReport(
        "cartan-self-normalization", {"cartan": name, "window": str(window)}
    )
    unknowns = list(window_basis(window))
    equations: Dict[tuple, dict] = {}
    for b in unknowns:
        for j, h in enumerate(cartan_generators):
            for jb, bb in enumerate(window_basis(window)):
                res = tri_bracket(spec, Element({b: 1}), h, Element({bb: 1}))
                for obv, c in res.terms.items():
                    if not in_cartan(obv):
                        equations.setdefault((j, jb, obv), {})[b] = c
    kernel = null_space(list(equations.values()), unknowns)
    offenders = []
    for vec in kernel:
        if any(not in_cartan(bv) for bv in vec):
            offenders.append(str(Element(vec)))
    rep.stats["normalizer_dimension"] = len(kernel)
    if offenders:
        for o in offenders[:4]:
            rep.record_failure(f"element outside the cartan normalizes it: {o}")
    else:
        rep.note("normalizing set is contained in the cartan span (self-normalizing)")
    return rep


def natural_module_decompose(window: Window) -> Tuple[WeightDecomposition, VerdictReport]:
    """Decompose the window span under the diagonal inner derivations
    p_0 and q_0; every joint eigenspace must be one-dimensional."""
    rep = VerdictReport("natural-module", {"window": str(window)})
    basis = window_basis(window)
    p0, q0 = gen_p(0), gen_q(0)
    weights: Dict[BasisVector, tuple] = {}
    diagonal = True
    for bv in basis:
        u = Element({bv: 1})
        lp = p0.apply(u).coefficient(bv)
        lq = q0.apply(u).coefficient(bv)
        if p0.apply(u) != u.scale(lp) or q0.apply(u) != u.scale(lq):
            diagonal = False
            rep.record_failure(f"p_0/q_0 not diagonal on {bv}")
        weights[bv] = (lp, lq)
    spaces: Dict[tuple, list] = {}
    for bv in basis:
        spaces.setdefault(weights[bv], []).append(bv)
    deco = WeightDecomposition(
        window, ["(p_0, q_0)"], {w: tuple(sorted(v)) for w, v in spaces.items()}, diagonal
    )
    rep.stats["weight_spaces"] = len(deco.spaces)
    rep.stats["max_dim"] = deco.max_dim
    if diagonal and deco.max_dim == 1:
        rep.note("all joint eigenspaces are one-dimensional (intermediate series)")
    elif diagonal:
        rep.record_failure(f"a joint eigenspace has dimension {deco.max_dim} > 1")
    return deco, rep


# -- the two displayed module identities -------------------------------------


def module_axiom_check(
    spec: TriBracketSpec, window: Window, samples: int = 0, seed: int = 0
) -> VerdictReport:
    """Both displayed module identities for the bracket action on itself.

    The second displayed identity is typographically unbalanced in the
    source; the standard commutator reading is checked and the report
    says so.
    """
    rep = VerdictReport(
        "module-axioms",
        {"bracket": spec.describe(), "window": str(window), "samples": samples, "seed": seed},
    )
    triple = closed_triple_fn(spec)
    basis = [(bv.family, bv.index) for bv in window_basis(window)]
    count = 0
    if triple is not None:

        def acc_add(acc, res, sign, scale):
            if res is None:
                return
            c, fam, idx = res
            key = (fam, idx)
            s = acc.get(key, 0) + sign * scale * c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)

        def chained(a, b, inner, sign, acc):
            # acc += sign * [a, b, inner] for inner a scaled triple result
            if inner is None:
                return
            ci, fam, idx = inner
            acc_add(acc, triple(a, b, (fam, idx)), sign, ci)

        for a in basis:
            for b in basis:
                ab = {}
                for c in basis:
                    abc = triple(a, b, c)  # used as [x1,x2,x3] and as [x1,x2,y1]
                    for d in basis:
                        abd = triple(a, b, d)
                        for e in basis:
                            count += 1
                            # identity 1: [[a,b,c], d, e] = [c,a,[b,d,e]]
                            #   + [b,c,[a,d,e]] + [a,b,[c,d,e]]
                            acc = {}
                            if abc is not None:
                                ci, fam, idx = abc
                                acc_add(acc, triple((fam, idx), d, e), 1, ci)
                            chained(c, a, triple(b, d, e), -1, acc)
                            chained(b, c, triple(a, d, e), -1, acc)
                            chained(a, b, triple(c, d, e), -1, acc)
                            if acc:
                                rep.record_failure(
                                    f"first module identity fails at {a},{b},{c},{d},{e}"
                                )
                            # identity 2 (commutator reading):
                            # [a,b,[c,d,e]] - [c,d,[a,b,e]] =
                            #   [c,[a,b,d],e] + [[a,b,c],d,e]
                            acc2 = {}
                            chained(a, b, triple(c, d, e), 1, acc2)
                            chained(c, d, triple(a, b, e), -1, acc2)
                            abd_ = abd
                            if abd_ is not None:
                                ci, fam, idx = abd_
                                acc_add(acc2, triple(c, (fam, idx), e), -1, ci)
                            if abc is not None:
                                ci, fam, idx = abc
                                acc_add(acc2, triple((fam, idx), d, e), -1, ci)
                            if acc2:
                                rep.record_failure(
                                    f"second module identity fails at {a},{b},{c},{d},{e}"
                                )
    else:
        raise ValueError("module axioms are checked for the closed-form brackets")
    rep.stats["basis_tuples"] = count
    import random as _random

    rng = _random.Random(seed)
    for _ in range(samples):
        x1, x2, y1, y, v = (random_element(rng, window) for _ in range(5))
        lhs1 = tri_bracket(spec, tri_bracket(spec, x1, x2, y1), y, v)
        rhs1 = (
            tri_bracket(spec, y1, x1, tri_bracket(spec, x2, y, v))
            + tri_bracket(spec, x2, y1, tri_bracket(spec, x1, y, v))
            + tri_bracket(spec, x1, x2, tri_bracket(spec, y1, y, v))
        )
        if lhs1 != rhs1:
            rep.record_failure("first module identity fails on a sampled tuple")
        lhs2 = tri_bracket(spec, x1, x2, tri_bracket(spec, y1, y, v)) - tri_bracket(
            spec, y1, y, tri_bracket(spec, x1, x2, v)
        )
        rhs2 = tri_bracket(spec, y1, tri_bracket(spec, x1, x2, y), v) + tri_bracket(
            spec, tri_bracket(spec, x1, x2, y1), y, v
        )
        if lhs2 != rhs2:
            rep.record_failure("second module identity fails on a sampled tuple")
    rep.stats["sampled_tuples"] = samples
    rep.note(
        "second identity checked in the standard commutator reading; the printed "
        "display is typographically unbalanced"
    )
    return rep


# -- the three Witt-family modules inside the omega inner derivations --------

_FAMILY_OF = {1: "q", 2: "x", 3: "z"}


def witt_module_check(i: int, window: Window) -> VerdictReport:
    """Verdicts for the i-th generator family as a module over the p family.

    Verifies the action row as exact operator identities, the
    one-dimensionality of every p_0 weight line, and enumerates all
    invariant window subspaces under the literal bracket action.  The
    line at index 0 is annihilated by every p_r, so the printed
    irreducibility claim fails for the literal action and is flagged
    with the exact finding; under the degree-preserving bijection with
    the p family itself (the printed 'regular representation' reading)
    the same search finds no proper invariant subspace.
    """
    if i not in _FAMILY_OF:
        raise ValueError("module index must be 1, 2, or 3")
    fam = _FAMILY_OF[i]
    gen = GENERATORS[fam]
    rep = VerdictReport("witt-module", {"family": fam, "window": str(window)})

    # (a) action row: [p_r, fam_s] = -s * fam_{r+s}
    for r in window.indices():
        pr = gen_p(r)
        for s in window.indices():
            comm = pr.commutator(gen(s))
            if comm != gen(r + s).scale(-s):
                rep.record_failure(f"[p_{r}, {fam}_{s}] != {-s}*{fam}_{r + s}")
    rep.stats["action_pairs"] = (window.hi - window.lo + 1) ** 2

    # (b) p_0 weight lines inside the family
    p0 = gen_p(0)
    eigen: Dict[object, object] = {}
    for s in window.indices():
        comm = p0.commutator(gen(s))
        if comm != gen(s).scale(-s):
            rep.record_failure(f"{fam}_{s} is not a p_0 eigenline")
        eigen[s] = -s
    distinct = len(set(eigen.values())) == len(eigen)
    rep.stats["weight_lines"] = len(eigen)
    rep.stats["weights_distinct"] = str(distinct)
    if not distinct:
        rep.record_failure("p_0 weights are not pairwise distinct on the window")

    # (c) literal-action invariant subspaces: edge s -> r+s iff -s != 0
    labels = list(window.indices())
    edges = {
        s: {s + r for r in window.indices() if s != 0 and s + r in window and r != 0}
        for s in labels
    }
    literal = invariant_line_structure(labels, eigen, edges)
    if literal["minimal_proper"] == [frozenset({0})]:
        rep.flag(
            f"literal bracket action: span{{{fam}_0}} is a trivial submodule "
            "(every p_r kills it), so the printed irreducibility claim fails; "
            "all other weight lines generate the full window span"
        )
    elif literal["minimal_proper"]:
        for sub in literal["minimal_proper"]:
            rep.record_failure(
                f"unexpected invariant subspace {{{', '.join(map(str, sorted(sub)))}}}"
            )
    else:
        rep.note("no proper invariant subspace under the literal action")

    # regular-representation reading: transport the p-family adjoint action
    adj_edges = {
        s: {s + r for r in window.indices() if r != s and s + r in window}
        for s in labels
    }
    adjoint = invariant_line_structure(labels, eigen, adj_edges)
    if adjoint["irreducible"]:
        rep.note(
            "under the degree-preserving bijection with the p family the window "
            "search finds no proper invariant subspace (regular-representation reading)"
        )
    else:
        rep.record_failure("adjoint transport unexpectedly reducible on the window")

    # (d) the bijection does not intertwine the literal action
    mismatch = next(
        (
            (r, s)
            for r in window.indices()
            for s in window.indices()
            if r - s != -s
        ),
        None,
    )
    if mismatch:
        r, s = mismatch
        rep.flag(
            f"the bijection p_r -> {fam}_r is not equivariant for the literal "
            f"action: at (r={r}, s={s}) the transported bracket coefficient is "
            f"{r - s} while the action row gives {-s}; the printed isomorphism "
            "claim holds only in the regular-representation reading"
        )
    return rep
