"""Lie algebra inputs and their Chevalley-Eilenberg models.

Structure constants, invariant bilinear forms and matrix realizations are
exact rational data.  Cohomology is computed by brute-force elimination on
graded components over the rationals, which is the verification instrument
for every cocycle appearing downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import DgcAlgebra, LinfError, Poly, as_scalar


class JacobiError(LinfError):
    pass


class NotInvariantError(LinfError):
    pass


class RealizationError(LinfError):
    pass


class LieData:
    """Structure constants C^a_bc over a named basis, antisymmetric in b, c.

    ``brackets`` maps (b, c) index pairs with b < c to coordinate dicts
    {a: C^a_bc}; the antisymmetric completion is implicit.
    """

    def __init__(self, name: str, basis_names: Sequence[str], brackets,
                 matrices=None, form=None):
        self.name = name
        self.basis_names = tuple(basis_names)
        self.dimension = len(self.basis_names)
        bk = {}
        for (b, c), coords in brackets.items():
            if b == c:
                raise LinfError("bracket of a generator with itself must be omitted")
            if b > c:
                b, c, coords = c, b, {a: -v for a, v in coords.items()}
            if (b, c) in bk:
                raise LinfError(f"bracket pair {b, c} declared twice")
            coords = {a: as_scalar(v) for a, v in coords.items() if v}
            if coords:
                bk[(b, c)] = coords
        self.brackets = bk
        self.matrices = None if matrices is None else MatrixRealization(self, matrices)
        self.form = None if form is None else BilinearForm(self, form)

    def c(self, a: int, b: int, c: int) -> Fraction:
        if b == c:
            return Fraction(0)
        if b < c:
            return self.brackets.get((b, c), {}).get(a, Fraction(0))
        return -self.brackets.get((c, b), {}).get(a, Fraction(0))

    def bracket_coords(self, b: int, c: int) -> dict:
        if b == c:
            return {}
        if b < c:
            return dict(self.brackets.get((b, c), {}))
        return {a: -v for a, v in self.brackets.get((c, b), {}).items()}

    def jacobi_failures(self):
        """Triples (a, b, c) where the Jacobi identity fails."""
        n = self.dimension
        bad = []
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    acc = {}
                    for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                        for e, ce in self.bracket_coords(x, y).items():
                            for d, cd in self.bracket_coords(e, z).items():
                                acc[d] = acc.get(d, Fraction(0)) + ce * cd
                    if any(acc.values()):
                        bad.append((a, b, c))
        return bad


class BilinearForm:
    """Symmetric invariant bilinear form on a Lie basis."""

    def __init__(self, lie: LieData, matrix):
        n = lie.dimension
        self.lie = lie
        self.matrix = tuple(tuple(as_scalar(x) for x in row) for row in matrix)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise LinfError("form matrix has wrong shape")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise LinfError("form is not symmetric")

    def invariance_failures(self):
        """Triples (x, y, z) with <[x,y],z> + <y,[x,z]> != 0."""
        lie, G = self.lie, self.matrix
        n = lie.dimension
        bad = []
        for x in range(n):
            for y in range(n):
                for z in range(y, n):
                    s = Fraction(0)
                    for d, cd in lie.bracket_coords(x, y).items():
                        s += cd * G[d][z]
                    for d, cd in lie.bracket_coords(x, z).items():
                        s += G[y][d] * cd
                    if s:
                        bad.append((x, y, z))
        return bad


class MatrixRealization:
    """Square rational matrices, one per basis element, matching the brackets."""

    def __init__(self, lie: LieData, matrices):
        self.lie = lie
        self.matrices = tuple(
            tuple(tuple(as_scalar(x) for x in row) for row in m) for m in matrices)
        if len(self.matrices) != lie.dimension:
            raise RealizationError("one matrix per basis element required")
        self.size = len(self.matrices[0])
        for m in self.matrices:
            if len(m) != self.size or any(len(r) != self.size for r in m):
                raise RealizationError("matrices must be square and equally sized")
        bad = self._commutator_failures()
        if bad:
            raise RealizationError(
                f"commutators disagree with structure constants at pairs {bad[:3]}")

    def _commutator_failures(self):
        lie = self.lie
        bad = []
        for b in range(lie.dimension):
            for c in range(b + 1, lie.dimension):
                comm = _mat_sub(_mat_mul(self.matrices[b], self.matrices[c]),
                                _mat_mul(self.matrices[c], self.matrices[b]))
                expect = _mat_zero(self.size)
                for a, v in lie.bracket_coords(b, c).items():
                    expect = _mat_add(expect, _mat_scale(self.matrices[a], v))
                if comm != expect:
                    bad.append((b, c))
        return bad


def _mat_mul(A, B):
    n = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0))
                       for j in range(n)) for i in range(n))


def _mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _mat_scale(A, c):
    return tuple(tuple(c * a for a in row) for row in A)


def _mat_zero(n):
    z = Fraction(0)
    return tuple(tuple(z for _ in range(n)) for _ in range(n))


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg construction

def ce_of_lie(lie: LieData) -> DgcAlgebra:
    """CE(g): degree-1 generators with d t^a = -1/2 C^a_bc t^b t^c."""
    bad = lie.jacobi_failures()
    if bad:
        names = [tuple(lie.basis_names[i] for i in t) for t in bad[:3]]
        raise JacobiError(f"Jacobi identity fails on triples {names}")
    A = DgcAlgebra(f"ce({lie.name})", _degree1_gens(lie))
    for a in range(lie.dimension):
        val = A.zero()
        for (b, c), coords in lie.brackets.items():
            coeff = coords.get(a)
            if coeff:
                # -1/2 over ordered pairs doubles to -1 over b < c
                val = val - A.monomial(lie.basis_names[b], lie.basis_names[c]) * coeff
        A.define_d(lie.basis_names[a], val)
    return A.finalize(check=True)


def _degree1_gens(lie: LieData):
    from .algebra import Generator
    return [Generator(n, 1) for n in lie.basis_names]


def cocycle_from_form(lie: LieData, form: BilinearForm | None = None) -> Poly:
    """Canonical 3-cocycle mu = (1/6) sum <e_a,[e_b,e_c]> t^a t^b t^c in CE(g).

    The 1/6 normalization over all index triples makes mu(so(3), identity)
    equal t1*t2*t3 exactly.
    """
    if form is None:
        form = lie.form
    if form is None:
        raise LinfError("no bilinear form available")
    bad = form.invariance_failures()
    if bad:
        raise NotInvariantError(f"form is not invariant, e.g. at triple {bad[0]}")
    A = ce_of_lie(lie)
    G = form.matrix
    mu = A.zero()
    third = Fraction(1, 3)  # (1/6) over all triples = (1/3) over b < c
    for (b, c), coords in lie.brackets.items():
        for d, cd in coords.items():
            for a in range(lie.dimension):
                coeff = G[a][d] * cd
                if coeff:
                    mu = mu + A.monomial(lie.basis_names[a], lie.basis_names[b],
                                         lie.basis_names[c], coeff=coeff * third)
    return mu


# ---------------------------------------------------------------------------
# cohomology

@dataclass
class CohomologyReport:
    algebra: DgcAlgebra
    max_degree: int
    dims: list[int] = field(default_factory=list)
    representatives: list[list[Poly]] = field(default_factory=list)

    def dim(self, n: int) -> int:
        return self.dims[n]


def _component_matrix(A: DgcAlgebra, basis_n, basis_np1):
    """Matrix rows (indexed by degree n+1 monomials) of d on degree n."""
    index = {m: i for i, m in enumerate(basis_np1)}
    cols = []
    for m in basis_n:
        dm = A.d(Poly(A, {m: Fraction(1)}))
        col = [Fraction(0)] * len(basis_np1)
        for mm, c in dm.terms.items():
            col[index[mm]] = c
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(basis_n))]
            for i in range(len(basis_np1))]
    return rows


def cohomology_basis(A: DgcAlgebra, max_degree: int) -> CohomologyReport:
    """Exact H^n for n <= max_degree with deterministic representatives.

    Representatives are the reduced row echelon rows (lexicographic monomial
    coordinates) of the cocycle space reduced modulo coboundaries.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    bases = [A.graded_component_basis(n) for n in range(max_degree + 2)]
    report = CohomologyReport(A, max_degree)
    prev_image_rows: list = []
    for n in range(max_degree + 1):
        basis_n = bases[n]
        rows = _component_matrix(A, basis_n, bases[n + 1])
        cocycles = linalg.kernel_basis(rows, len(basis_n))
        img_red, img_piv = linalg.rref(prev_image_rows, len(basis_n))
        reduced = []
        for z in cocycles:
            v = linalg.reduce_mod_rowspace(img_red, img_piv, z)
            if any(v):
                reduced.append(v)
        rep_red, rep_piv = linalg.rref(reduced, len(basis_n))
        reps = []
        for row in rep_red:
            reps.append(A.poly({m: c for m, c in zip(basis_n, row) if c}))
        report.dims.append(len(rep_piv))
        report.representatives.append(reps)
        # image of this component feeds the next quotient
        prev_image_rows = []
        index = {m: i for i, m in enumerate(bases[n + 1])}
        for m in basis_n:
            dm = A.d(Poly(A, {m: Fraction(1)}))
            if dm.terms:
                vec = [Fraction(0)] * len(bases[n + 1])
                for mm, c in dm.terms.items():
                    vec[index[mm]] = c
                prev_image_rows.append(vec)
    return report


# ---------------------------------------------------------------------------
# invariant polynomials via symmetrized traces

def shifted_poly_algebra(lie: LieData) -> DgcAlgebra:
    """Commutative polynomial home for curvature symbols: s<name>, degree 2."""
    from .algebra import Generator
    return DgcAlgebra(f"str({lie.name})",
                      [Generator("s" + n, 2) for n in lie.basis_names]).finalize(check=False)


def invariant_polynomial_str(lie: LieData, k: int, matrices: MatrixRealization | None = None) -> Poly:
    """Symmetrized trace str(X^k) with X = sum_a s<a> e_a, over shifted symbols.

    The shifted symbols commute (degree 2), so the symmetrization is the
    plain trace of the k-th matrix power with polynomial entries.  The
    adjoint-invariance of the result is verified exactly: contracting each
    s<a>-slot with the coadjoint action C^a_bc t^b s<c> must give zero.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    real = matrices if matrices is not None else lie.matrices
    if real is None:
        raise RealizationError(f"{lie.name} carries no matrix realization")
    R = shifted_poly_algebra(lie)
    size = real.size
    X = [[R.zero() for _ in range(size)] for _ in range(size)]
    for a, mat in enumerate(real.matrices):
        ra = R.gen("s" + lie.basis_names[a])
        for i in range(size):
            for j in range(size):
                if mat[i][j]:
                    X[i][j] = X[i][j] + ra * mat[i][j]
    P = [row[:] for row in X]
    for _ in range(k - 1):
        P = [[sum((P[i][m] * X[m][j] for m in range(size)), R.zero())
              for j in range(size)] for i in range(size)]
    trace = sum((P[i][i] for i in range(size)), R.zero())
    _check_adjoint_invariance(lie, trace)
    return trace


def quadratic_invariant(lie: LieData, form: BilinearForm | None = None) -> Poly:
    """The form-induced quadratic curvature polynomial sum G_ab s<a> s<b>.

    Works without a matrix realization; invariance of the form is exactly
    the adjoint-invariance of the result, and both are checked.
    """
    if form is None:
        form = lie.form
    if form is None:
        raise LinfError("no bilinear form available")
    bad = form.invariance_failures()
    if bad:
        raise NotInvariantError(f"form is not invariant, e.g. at triple {bad[0]}")
    R = shifted_poly_algebra(lie)
    P = R.zero()
    for a in range(lie.dimension):
        for b in range(lie.dimension):
            if form.matrix[a][b]:
                P = P + R.gen("s" + lie.basis_names[a]) * \
                    R.gen("s" + lie.basis_names[b]) * form.matrix[a][b]
    _check_adjoint_invariance(lie, P)
    return P


def _check_adjoint_invariance(lie: LieData, P: Poly):
    from .algebra import Derivation, Generator
    names = lie.basis_names
    C = DgcAlgebra(f"invcheck({lie.name})",
                   [Generator(n, 1) for n in names]
                   + [Generator("s" + n, 2) for n in names]).finalize(check=False)
    action = {}
    for a, name in enumerate(names):
        val = C.zero()
        for b in range(lie.dimension):
            for c in range(lie.dimension):
                coeff = lie.c(a, b, c)
                if coeff:
                    val = val - C.monomial(names[b], "s" + names[c]) * coeff
        if not val.is_zero():
            action["s" + name] = val
    delta = Derivation(C, 1, action)
    embedded = C.poly(_rename_terms(P, C))
    resid = delta(embedded)
    if not resid.is_zero():
        raise NotInvariantError("symmetrized trace failed the invariance check")


def _rename_terms(p: Poly, target: DgcAlgebra):
    out = {}
    src = p.algebra
    for mono, c in p.terms.items():
        new = tuple(sorted((target.index(src.generators[i].name), e)
                           for i, e in mono))
        out[new] = c
    return out


# ---------------------------------------------------------------------------
# builtin catalog

def so3() -> LieData:
    """so(3) in the epsilon basis: C^a_bc = eps_abc, defining 3x3 matrices."""
    eps = {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}
    mats = []
    for a in range(3):
        m = [[Fraction(0)] * 3 for _ in range(3)]
        for b in range(3):
            for c in range(3):
                e = _eps(a, b, c)
                if e:
                    m[b][c] = Fraction(-e)
        mats.append(m)
    eye = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    return LieData("so3", ("t1", "t2", "t3"), eps, matrices=mats, form=eye)


def _eps(a, b, c):
    if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        return 1
    if (a, b, c) in ((0, 2, 1), (2, 1, 0), (1, 0, 2)):
        return -1
    return 0


def so_n(n: int) -> LieData:
    """so(n) on the L_ab = E_ab - E_ba basis (a < b), generators t<ab>."""
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    index = {p: i for i, p in enumerate(pairs)}
    names = tuple(f"t{a}{b}" for a, b in pairs)

    def delta(x, y):
        return 1 if x == y else 0

    brackets = {}
    for i, (a, b) in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            c, d = pairs[j]
            coords = {}
            for (x, y), sgn in (((a, d), delta(b, c)), ((b, d), -delta(a, c)),
                                ((a, c), -delta(b, d)), ((b, c), delta(a, d))):
                if sgn and x != y:
                    key, s2 = ((x, y), 1) if x < y else ((y, x), -1)
                    coords[index[key]] = coords.get(index[key], 0) + sgn * s2
            coords = {k: Fraction(v) for k, v in coords.items() if v}
            if coords:
                brackets[(i, j)] = coords
    mats = []
    for a, b in pairs:
        m = [[Fraction(0)] * n for _ in range(n)]
        m[a - 1][b - 1] = Fraction(1)
        m[b - 1][a - 1] = Fraction(-1)
        mats.append(m)
    eye = [[Fraction(int(i == j)) for j in range(len(pairs))]
           for i in range(len(pairs))]
    return LieData(f"so{n}", names, brackets, matrices=mats, form=eye)


def abelian(n: int, prefix="t") -> LieData:
    return LieData(f"abelian{n}", tuple(f"{prefix}{i+1}" for i in range(n)), {})


def u1() -> LieData:
    return LieData("u1", ("t",), {}, matrices=[[[Fraction(1)]]])


# -- su(k) over an exact rational basis (complex entries as Fraction pairs) --

def _cx(re=0, im=0):
    return (as_scalar(re), as_scalar(im))


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cmat_mul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            re = Fraction(0)
            im = Fraction(0)
            for m in range(n):
                p = _cmul(A[i][m], B[m][j])
                re += p[0]
                im += p[1]
            row.append((re, im))
        out.append(row)
    return out


def _cmat_sub(A, B):
    return [[(a[0] - b[0], a[1] - b[1]) for a, b in zip(ra, rb)]
            for ra, rb in zip(A, B)]


def _su_basis(k: int):
    """Rational basis of su(k): Cartan iH_j, then E_jl - E_lj, then i(E_jl + E_lj)."""
    zero = [[_cx() for _ in range(k)] for _ in range(k)]

    def mat():
        return [row[:] for row in zero]

    basis = []
    names = []
    for j in range(k - 1):
        m = mat()
        m[j][j] = _cx(0, 1)
        m[j + 1][j + 1] = _cx(0, -1)
        basis.append(m)
        names.append(f"h{j+1}")
    for j in range(k):
        for l in range(j + 1, k):
            m = mat()
            m[j][l] = _cx(1)
            m[l][j] = _cx(-1)
            basis.append(m)
            names.append(f"x{j+1}{l+1}")
    for j in range(k):
        for l in range(j + 1, k):
            m = mat()
            m[j][l] = _cx(0, 1)
            m[l][j] = _cx(0, 1)
            basis.append(m)
            names.append(f"y{j+1}{l+1}")
    return names, basis


def _su_coords(k: int, Z):
    """Coordinates of an anti-Hermitian traceless Z in the _su_basis order."""
    coords = []
    partial = Fraction(0)
    for j in range(k - 1):
        partial += Z[j][j][1]
        coords.append(partial)
    for j in range(k):
        for l in range(j + 1, k):
            coords.append(Z[j][l][0])
    for j in range(k):
        for l in range(j + 1, k):
            coords.append(Z[j][l][1])
    return coords


def _realify(M):
    """Exact real 2n x 2n image of a complex n x n matrix: i -> [[0,-1],[1,0]]."""
    n = len(M)
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            re, im = M[i][j]
            out[i][j] = re
            out[i][n + j] = -im
            out[n + i][j] = im
            out[n + i][n + j] = re
    return out


def su_k(k: int) -> LieData:
    """su(k) with exact rational structure constants and a realified defining rep."""
    if k < 2:
        raise ValueError("su(k) needs k >= 2")
    names, basis = _su_basis(k)
    brackets = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            comm = _cmat_sub(_cmat_mul(basis[i], basis[j]),
                             _cmat_mul(basis[j], basis[i]))
            coords = {a: v for a, v in enumerate(_su_coords(k, comm)) if v}
            if coords:
                brackets[(i, j)] = coords
    mats = [_realify(m) for m in basis]
    return LieData(f"su{k}", names, brackets, matrices=mats)


def u_k(k: int) -> LieData:
    """u(k) = u(1) + su(k); the center generator t0 comes first."""
    if k == 1:
        return LieData("u1k", ("t0",), {})
    su = su_k(k)
    names = ("t0",) + su.basis_names
    brackets = {}
    for (b, c), coords in su.brackets.items():
        brackets[(b + 1, c + 1)] = {a + 1: v for a, v in coords.items()}
    return LieData(f"u{k}", names, brackets)


BUILTIN_LIE = {
    "so3": so3,
    "so5": lambda: so_n(5),
    "so4": lambda: so_n(4),
    "su2": lambda: su_k(2),
    "su3": lambda: su_k(3),
    "u1": u1,
    "abelian2": lambda: abelian(2),
}
