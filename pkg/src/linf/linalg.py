"""Exact linear algebra over the rationals.

Forward elimination is fraction-free (Bareiss) on integer-cleared rows to
bound coefficient growth; the echelon form is then normalized back to
reduced row echelon form over ``Fraction``.  Pivot choice is always the
first nonzero entry in column order, so every result is reproducible.
"""

from fractions import Fraction
from math import gcd, lcm


def _integerize(row):
    den = 1
    for x in row:
        if x:
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _forward(rows, ncols):
    """Bareiss forward elimination; returns (echelon integer rows, pivots)."""
    work = []
    for r in rows:
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in r]
        if any(fr):
            work.append(_integerize(fr))
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(work)):
            if work[i][c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            work[r], work[sel] = work[sel], work[r]
        piv = work[r][c]
        for i in range(r + 1, len(work)):
            # rows with fac == 0 still get rescaled by piv/prev; Bareiss
            # exact division needs the uniform transformation
            fac = work[i][c]
            row_i = work[i]
            row_r = work[r]
            for j in range(ncols):
                row_i[j] = (piv * row_i[j] - fac * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[: len(pivots)], pivots


def rref(rows, ncols):
    """Reduced row echelon form over Fraction.

    Returns (rref_rows, pivot_cols); rref_rows have leading 1s in the pivot
    columns with zeros above and below.
    """
    ech, pivots = _forward(rows, ncols)
    frows = [[Fraction(v) for v in row] for row in ech]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        piv = frows[i][c]
        frows[i] = [v / piv for v in frows[i]]
        for k in range(i):
            fac = frows[k][c]
            if fac:
                frows[k] = [a - fac * b for a, b in zip(frows[k], frows[i])]
    return frows, pivots


def rank(rows, ncols):
    return len(_forward(rows, ncols)[1])


def kernel_basis(rows, ncols):
    """Basis of {x : M x = 0}, one vector per free column, deterministic.

    The vector for free column f has x_f = 1, other free coordinates 0,
    and pivot coordinates read off the RREF.
    """
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -red[i][f]
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols):
    """One exact solution of M x = rhs with free variables set to zero.

    Returns None when the system is inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def reduce_mod_rowspace(red, pivots, vec):
    """Reduce ``vec`` modulo the row space given in RREF form."""
    v = [x if isinstance(x, Fraction) else Fraction(x) for x in vec]
    for i, c in enumerate(pivots):
        if v[c]:
            coef = v[c]
            row = red[i]
            for j in range(len(v)):
                if row[j]:
                    v[j] -= coef * row[j]
    return v


def in_span(red, pivots, vec):
    return not any(reduce_mod_rowspace(red, pivots, vec))
