"""Algebra constructors: Weil algebras, invariants, transgression,
string-like extensions, weak-cokernel cones, opposites, direct sums.

The Weil differential on shifted generators is always computed from
nilpotency (D(sg) := -D(d g) with D already fixed on unshifted generators)
rather than transcribed, so every constructed algebra is self-validating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lie as lie_mod
from . import linalg
from .algebra import (AlgebraMap, Derivation, DgcAlgebra, Generator,
                      LinfError, Poly)


class TransgressionError(LinfError):
    pass


class NotClosedError(LinfError):
    pass


def embed(p: Poly, target: DgcAlgebra, rename=None) -> Poly:
    """Re-express a polynomial over another algebra by generator name."""
    src = p.algebra
    out = {}
    for mono, c in p.terms.items():
        new = []
        for i, e in mono:
            name = src.generators[i].name
            if rename:
                name = rename.get(name, name)
            new.append((target.index(name), e))
        out[tuple(sorted(new))] = c
    return Poly(target, out)


@dataclass(frozen=True)
class ShiftMap:
    """Pairing between generators and their degree +1 Weil partners."""

    base: DgcAlgebra
    weil: DgcAlgebra
    pairs: tuple  # ((unshifted name, shifted name), ...)

    def shifted(self, name: str) -> str:
        for u, s in self.pairs:
            if u == name:
                return s
        raise LinfError(f"{name} has no shift partner")

    def unshifted(self, name: str) -> str:
        for u, s in self.pairs:
            if s == name:
                return u
        raise LinfError(f"{name} is not a shifted generator")

    def shifted_names(self):
        return tuple(s for _, s in self.pairs)


def weil_algebra(A: DgcAlgebra, shifted_prefix="s") -> tuple[DgcAlgebra, ShiftMap]:
    """W(A): adjoin a shifted copy of every generator.

    D g = d g + s g on unshifted generators; D(s g) is forced by D^2 = 0.
    Accepts degree-0 generators so that representation algebras can be fed
    through unchanged.
    """
    gens = list(A.generators)
    pairs = []
    for g in A.generators:
        sname = shifted_prefix + g.name
        gens.append(Generator(sname, g.degree + 1, frozenset({"shifted"})))
        pairs.append((g.name, sname))
    W = DgcAlgebra(f"W({A.name})", gens)
    unshifted_action = {}
    for g in A.generators:
        val = embed(A.d(A.gen(g.name)), W) + W.gen(shifted_prefix + g.name)
        unshifted_action[g.name] = val
        W.define_d(g.name, val)
    partial = Derivation(W, 1, unshifted_action)
    for g in A.generators:
        dg = embed(A.d(A.gen(g.name)), W)
        W.define_d(shifted_prefix + g.name, -partial(dg))
    W.finalize(check=True)
    return W, ShiftMap(A, W, tuple(pairs))


def ce_restriction(shift: ShiftMap) -> AlgebraMap:
    """The surjection W(g) ->> CE(g): curvatures go to zero; verified chain map."""
    A, W = shift.base, shift.weil
    assignment = {g.name: A.gen(g.name) for g in A.generators}
    for _, sname in shift.pairs:
        assignment[sname] = A.zero()
    phi = AlgebraMap(W, A, assignment)
    bad = phi.check_chain_map()
    if bad:
        raise LinfError(f"restriction failed chain-map check on {bad[0][0]}")
    return phi


def basic_elements(W: DgcAlgebra, shift: ShiftMap, degree: int):
    """Basis of degree-n elements in shifted generators with D staying shifted.

    Returns (polys, closed_flags): closed_flags[i] is True when D of the
    element vanishes outright (an honest invariant polynomial) and False
    when D lands in the shifted subalgebra without vanishing.
    """
    shifted = set(shift.shifted_names())
    shifted_idx = {W.index(n) for n in shifted}
    candidates = [m for m in W.graded_component_basis(degree)
                  if all(i in shifted_idx for i, _ in m)]
    if not candidates:
        return [], []
    mixed_rows = {}
    columns = []
    for m in candidates:
        dm = W.d(Poly(W, {m: Fraction(1)}))
        col = {}
        for mono, c in dm.terms.items():
            if not all(i in shifted_idx for i, _ in mono):
                col[mono] = c
                mixed_rows.setdefault(mono, len(mixed_rows))
        columns.append(col)
    rows = [[Fraction(0)] * len(candidates) for _ in range(len(mixed_rows))]
    for j, col in enumerate(columns):
        for mono, c in col.items():
            rows[mixed_rows[mono]][j] = c
    kern = linalg.kernel_basis(rows, len(candidates))
    red, _ = linalg.rref(kern, len(candidates))
    polys = []
    closed = []
    for vec in red:
        p = W.poly({m: c for m, c in zip(candidates, vec) if c})
        polys.append(p)
        closed.append(W.d(p).is_zero())
    return polys, closed


@dataclass
class TransgressionTriple:
    """cs in W with D cs = P and restriction mu; all equalities exact."""

    weil: DgcAlgebra
    shift: ShiftMap
    P: Poly
    cs: Poly
    mu: Poly

    def verify(self):
        problems = []
        if not (self.weil.d(self.cs) - self.P).is_zero():
            problems.append("D cs != P")
        if not self.weil.d(self.P).is_zero():
            problems.append("D P != 0")
        if not self.shift.base.d(self.mu).is_zero():
            problems.append("mu is not closed")
        if ce_restriction(self.shift)(self.cs) != self.mu:
            problems.append("restriction of cs is not mu")
        return problems


def transgress(W: DgcAlgebra, shift: ShiftMap, P: Poly) -> TransgressionTriple:
    """Solve D cs = P exactly through the word-length contracting homotopy.

    Requires P to be a basic element (shifted generators only, D-closed)
    and the base differential to be minimal (no linear terms), which holds
    for every Chevalley-Eilenberg algebra of a Lie algebra.  The slice-wise
    solve is exact linear algebra on each word-length component; failure at
    any slice means P is not D-exact and is reported as such.
    """
    if P.algebra.signature() != W.signature():
        P = embed(P, W, rename=None if _names_match(P, W) else
                  {g.name: shift.shifted(_strip(g.name)) for g in P.algebra.generators})
    shifted = set(shift.shifted_names())
    shifted_idx = {W.index(n) for n in shifted}
    if any(g.degree == 0 for g in W.generators):
        raise TransgressionError("transgression needs strictly positive degrees")
    for g in shift.base.generators:
        wls = shift.base.d(shift.base.gen(g.name)).word_lengths()
        if any(w < 2 for w in wls):
            raise TransgressionError(
                "transgression requires a minimal base differential")
    if not all(all(i in shifted_idx for i, _ in m) for m in P.terms):
        raise TransgressionError("P must lie in the shifted subalgebra")
    if not W.d(P).is_zero():
        raise TransgressionError("P is not D-closed")
    h = Derivation(W, -1, {s: W.gen(u) for u, s in shift.pairs})
    cs = W.zero()
    residual = P
    while not residual.is_zero():
        w = min(residual.word_lengths())
        slice_w = residual.word_length_part(w)
        xw = h(slice_w) * Fraction(1, w)
        cs = cs + xw
        residual = residual - W.d(xw)
        if w in residual.word_lengths():
            raise TransgressionError(
                "P is not D-exact: homotopy solve stalled "
                f"at word length {w} (input inconsistency)")
    mu = ce_restriction(shift)(cs)
    triple = TransgressionTriple(W, shift, P, cs, mu)
    problems = triple.verify()
    if problems:
        raise TransgressionError("; ".join(problems))
    return triple


def _names_match(P: Poly, W: DgcAlgebra) -> bool:
    try:
        for g in P.algebra.generators:
            W.index(g.name)
        return True
    except LinfError:
        return False


def _strip(name: str) -> str:
    return name[1:] if name.startswith("s") else name


def string_like_extension(A: DgcAlgebra, mu: Poly, b_name: str = "b",
                          degree: int | None = None) -> DgcAlgebra:
    """Adjoin b with d b = mu for an odd closed cocycle mu of degree >= 3."""
    if mu.algebra.signature() != A.signature():
        mu = embed(mu, A)
    if not A.d(mu).is_zero():
        raise NotClosedError("mu is not closed")
    mu_deg = mu.degree()
    if mu_deg is None:
        if degree is None:
            raise LinfError("zero cocycle needs an explicit generator degree")
        mu_deg = degree + 1
    if mu_deg % 2 == 0 or mu_deg < 3:
        raise LinfError(f"cocycle degree must be odd and >= 3, got {mu_deg}")
    if degree is not None and degree != mu_deg - 1:
        raise LinfError("generator degree must be deg(mu) - 1")
    gens = list(A.generators) + [Generator(b_name, mu_deg - 1, frozenset({"extension"}))]
    E = DgcAlgebra(f"{A.name}_mu{mu_deg}", gens)
    for g in A.generators:
        E.define_d(g.name, embed(A.d(A.gen(g.name)), E))
    E.define_d(b_name, embed(mu, E))
    return E.finalize(check=True)


def opposite_algebra(A: DgcAlgebra) -> DgcAlgebra:
    """Same generators, d_op = (-1)^(N+1) d where N counts word length."""
    op = DgcAlgebra(f"{A.name}^op", list(A.generators))
    for g in A.generators:
        dg = A.d(A.gen(g.name))
        val = op.zero()
        for w in sorted(dg.word_lengths()):
            part = embed(dg.word_length_part(w), op)
            val = val + part * ((-1) ** (w + 1))
        op.define_d(g.name, val)
    return op.finalize(check=True)


def negation_map(A: DgcAlgebra) -> AlgebraMap:
    """The canonical chain map CE(g^op) -> CE(g) sending g to -g."""
    op = opposite_algebra(A)
    return AlgebraMap(op, A, {g.name: -A.gen(g.name) for g in A.generators})


def direct_sum(A: DgcAlgebra, B: DgcAlgebra, name=None) -> DgcAlgebra:
    """Componentwise differential on the disjoint union of generators."""
    overlap = {g.name for g in A.generators} & {g.name for g in B.generators}
    if overlap:
        raise LinfError(f"generator name collision: {sorted(overlap)}")
    S = DgcAlgebra(name or f"{A.name}+{B.name}",
                   list(A.generators) + list(B.generators))
    for g in A.generators:
        S.define_d(g.name, embed(A.d(A.gen(g.name)), S))
    for g in B.generators:
        S.define_d(g.name, embed(B.d(B.gen(g.name)), S))
    return S.finalize(check=True)


def rename_generators(A: DgcAlgebra, mapping, name=None) -> DgcAlgebra:
    """Fresh algebra with renamed generators and the transported differential."""
    gens = [Generator(mapping.get(g.name, g.name), g.degree, g.tags)
            for g in A.generators]
    R = DgcAlgebra(name or A.name, gens)
    for g in A.generators:
        R.define_d(mapping.get(g.name, g.name),
                   embed(A.d(A.gen(g.name)), R, rename=mapping))
    return R.finalize(check=True)


# ---------------------------------------------------------------------------
# weak cokernel cones (the paper's explicit tables, then validated)

@dataclass
class ConePair:
    ce: DgcAlgebra
    weil: DgcAlgebra
    triples: list
    restriction: AlgebraMap  # weil cone ->> ce cone


def _rname(name: str) -> str:
    return "r" + (name[1:] if name.startswith("t") and len(name) > 1 else name)


def weak_cokernel_cone(A: DgcAlgebra, mu: Poly, n: int,
                       triple: TransgressionTriple | None = None,
                       labels=None) -> ConePair:
    """Cone pair for one cocycle; see ``weak_cokernel_cones`` for the labels."""
    if triple is None:
        triple = _triple_for_mu(A, mu)
    if mu.algebra.signature() != A.signature():
        mu = embed(mu, A)
    if triple.mu != mu:
        raise TransgressionError("mu does not match the transgression data")
    if mu.degree() != n + 1:
        raise LinfError("n must be deg(mu) - 1")
    return weak_cokernel_cones(A, [triple], labels=[labels or ("b", "c", "k", "l")])


def weak_cokernel_cones(A: DgcAlgebra, triples, labels) -> ConePair:
    """Cones of (b^{n-1}u(1) -> g_mu) for one or more string-like cocycles.

    The CE cone adjoins b (deg n) and k (deg n+1) per cocycle with
    db = mu - k, dk = 0.  The Weil cone carries the boxed table
    db = cs + c - k, dc = l - P, dk = l over the curvature copy r of the
    base generators; both tables are validated nilpotent.
    """
    ce_gens = list(A.generators)
    entries = []
    for triple, (bn, cn, kn, ln) in zip(triples, labels):
        mu = triple.mu
        if mu.algebra.signature() != A.signature():
            mu = embed(mu, A)
        deg = mu.degree()
        if deg is None or deg % 2 == 0:
            raise NotClosedError("cone cocycles must be homogeneous of odd degree")
        entries.append((triple, mu, deg, bn, cn, kn, ln))
    for _, _, deg, bn, *_ in entries:
        ce_gens.append(Generator(bn, deg - 1, frozenset({"extension"})))
    for _, _, deg, _, _, kn, _ in entries:
        ce_gens.append(Generator(kn, deg, frozenset({"twist"})))
    ce = DgcAlgebra(f"cone_ce({A.name})", ce_gens)
    for g in A.generators:
        ce.define_d(g.name, embed(A.d(A.gen(g.name)), ce))
    for _, mu, _, bn, _, kn, _ in entries:
        ce.define_d(bn, embed(mu, ce) - ce.gen(kn))
    ce.finalize(check=True)

    w_gens = list(A.generators)
    w_gens += [Generator(_rname(g.name), g.degree + 1, frozenset({"curvature", "shifted"}))
               for g in A.generators]
    for _, _, deg, bn, *_ in entries:
        w_gens.append(Generator(bn, deg - 1, frozenset({"extension"})))
    for _, _, deg, _, cn, _, _ in entries:
        w_gens.append(Generator(cn, deg, frozenset({"curvature"})))
    for _, _, deg, _, _, kn, _ in entries:
        w_gens.append(Generator(kn, deg, frozenset({"twist"})))
    for _, _, deg, _, _, _, ln in entries:
        w_gens.append(Generator(ln, deg + 1, frozenset({"twist", "curvature"})))
    wc = DgcAlgebra(f"cone_w({A.name})", w_gens)
    unshifted_action = {}
    for g in A.generators:
        val = embed(A.d(A.gen(g.name)), wc) + wc.gen(_rname(g.name))
        unshifted_action[g.name] = val
        wc.define_d(g.name, val)
    partial = Derivation(wc, 1, unshifted_action)
    for g in A.generators:
        wc.define_d(_rname(g.name), -partial(embed(A.d(A.gen(g.name)), wc)))
    for triple, _, _, bn, cn, kn, ln in entries:
        cs_w = embed(triple.cs, wc, rename=_weil_to_cone_names(triple.shift))
        P_w = embed(triple.P, wc, rename=_weil_to_cone_names(triple.shift))
        wc.define_d(bn, cs_w + wc.gen(cn) - wc.gen(kn))
        wc.define_d(cn, wc.gen(ln) - P_w)
        wc.define_d(kn, wc.gen(ln))
    wc.finalize(check=True)

    assignment = {g.name: ce.gen(g.name) for g in A.generators}
    for _, _, _, bn, cn, kn, ln in entries:
        assignment[bn] = ce.gen(bn)
        assignment[kn] = ce.gen(kn)
        assignment[cn] = ce.zero()
        assignment[ln] = ce.zero()
    for g in A.generators:
        assignment[_rname(g.name)] = ce.zero()
    restriction = AlgebraMap(wc, ce, assignment)
    bad = restriction.check_chain_map()
    if bad:
        raise LinfError(f"cone restriction failed on {bad[0][0]}")
    return ConePair(ce, wc, [t for t, *_ in entries], restriction)


def _weil_to_cone_names(shift: ShiftMap):
    out = {}
    for unshifted, shifted in shift.pairs:
        out[shifted] = _rname(unshifted)
    return out


def _triple_for_mu(A: DgcAlgebra, mu: Poly) -> TransgressionTriple:
    """Reconstruct transgression data whose restriction equals mu exactly."""
    if mu.algebra.signature() != A.signature():
        mu = embed(mu, A)
    deg = mu.degree()
    if deg is None:
        raise NotClosedError("mu must be homogeneous")
    W, shift = weil_algebra(A)
    invariants, closed = basic_elements(W, shift, deg + 1)
    closed_invariants = [p for p, ok in zip(invariants, closed) if ok]
    triples = [transgress(W, shift, p) for p in closed_invariants]
    basis = A.graded_component_basis(deg)
    index = {m: i for i, m in enumerate(basis)}
    rows = [[Fraction(0)] * len(triples) for _ in range(len(basis))]
    for j, t in enumerate(triples):
        for mono, c in t.mu.terms.items():
            rows[index[mono]][j] = c
    rhs = [Fraction(0)] * len(basis)
    for mono, c in mu.terms.items():
        rhs[index[mono]] = c
    sol = linalg.solve(rows, rhs, len(triples))
    if sol is None:
        raise TransgressionError(
            "mu is not an exact combination of transgressed invariants")
    P = W.zero()
    cs = W.zero()
    for a, t in zip(sol, triples):
        if a:
            P = P + t.P * a
            cs = cs + t.cs * a
    triple = TransgressionTriple(W, shift, P, cs, mu)
    problems = triple.verify()
    if problems:
        raise TransgressionError("; ".join(problems))
    return triple


# ---------------------------------------------------------------------------
# weak quotient (u(1) -> u(k)) and the preset registry

def u1_to_uk(k: int) -> DgcAlgebra:
    """CE of the weak quotient Lie 2-algebra (u(1) -> u(k)): dt0 = -b."""
    g = lie_mod.u_k(k)
    gens = [Generator(n, 1) for n in g.basis_names] + [Generator("b", 2)]
    A = DgcAlgebra(f"u1_to_u{k}", gens)
    for a, name in enumerate(g.basis_names):
        val = A.zero()
        for (b, c), coords in g.brackets.items():
            coeff = coords.get(a)
            if coeff:
                val = val - A.monomial(g.basis_names[b], g.basis_names[c]) * coeff
        if name == "t0":
            val = val - A.gen("b")
        A.define_d(name, val)
    return A.finalize(check=True)


def string3() -> DgcAlgebra:
    g = lie_mod.so3()
    return string_like_extension(ce_of_lie_cached(g), lie_mod.cocycle_from_form(g))


def string5() -> DgcAlgebra:
    g = lie_mod.so_n(5)
    return string_like_extension(ce_of_lie_cached(g), lie_mod.cocycle_from_form(g))


def fivebrane5() -> DgcAlgebra:
    """(so(5)_{mu3})_{mu7}: mu7 is the degree-7 cohomology representative."""
    g = lie_mod.so_n(5)
    A = ce_of_lie_cached(g)
    ext1 = string5()
    mu7 = lie_mod.cohomology_basis(A, 7).representatives[7][0]
    return string_like_extension(ext1, embed(mu7, ext1), b_name="b6")


def cone_string(lie_data, normalize_p=True) -> ConePair:
    """The section 2-connection cone for g with its quadratic invariant."""
    A = ce_of_lie_cached(lie_data)
    W, shift = weil_algebra(A)
    P = lie_mod.invariant_polynomial_str(lie_data, 2)
    triple = transgress(W, shift, P)
    return weak_cokernel_cones(A, [triple], labels=[("b", "c", "k", "l")])


def cone_fivebrane5() -> ConePair:
    """Cones of (b u(1) + b^5 u(1) -> (so(5)_mu3)_mu7), boxed tables validated."""
    g = lie_mod.so_n(5)
    A = ce_of_lie_cached(g)
    W, shift = weil_algebra(A)
    P4 = lie_mod.invariant_polynomial_str(g, 2)
    P8 = lie_mod.invariant_polynomial_str(g, 4)
    t4 = transgress(W, shift, P4)
    t8 = transgress(W, shift, P8)
    return weak_cokernel_cones(A, [t4, t8],
                               labels=[("b2", "c3", "k3", "l4"),
                                       ("b6", "c7", "k7", "l8")])


_CE_CACHE: dict = {}


def ce_of_lie_cached(lie_data) -> DgcAlgebra:
    key = (lie_data.name, lie_data.basis_names)
    if key not in _CE_CACHE:
        _CE_CACHE[key] = lie_mod.ce_of_lie(lie_data)
    return _CE_CACHE[key]


def _preset_ce(builder):
    return lambda: ce_of_lie_cached(builder())


PRESETS = {
    "so3": _preset_ce(lie_mod.so3),
    "so5": _preset_ce(lambda: lie_mod.so_n(5)),
    "su2": _preset_ce(lambda: lie_mod.su_k(2)),
    "su3": _preset_ce(lambda: lie_mod.su_k(3)),
    "u1": _preset_ce(lie_mod.u1),
    "abelian2": _preset_ce(lambda: lie_mod.abelian(2)),
    "quot-u1-u1": lambda: u1_to_uk(1),
    "quot-u1-u2": lambda: u1_to_uk(2),
    "quot-u1-u3": lambda: u1_to_uk(3),
    "string3": string3,
    "string5": string5,
    "fivebrane5": fivebrane5,
    "cone-string3": lambda: cone_string(lie_mod.so3()),
    "cone-string5": lambda: cone_string(lie_mod.so_n(5)),
    "cone-fivebrane5": cone_fivebrane5,
}


def preset(name: str):
    try:
        builder = PRESETS[name]
    except KeyError:
        raise LinfError(f"unknown preset {name!r}; known: {sorted(PRESETS)}") from None
    return builder()
