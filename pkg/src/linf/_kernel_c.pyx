# cython: language_level=3
# cython: boundscheck=False
"""Compiled twin of _kernel_py: identical semantics, compiled loops.

Coefficients stay exact Python Fractions; the win is in the monomial
merge/sign bookkeeping and the dictionary plumbing around them, which
dominate the symbolic workloads (Weil differentials, transgression).
"""

from fractions import Fraction

from ._kernel_py import TermBudgetExceeded

BACKEND = "cython"

_ZERO = Fraction(0)


def mono_degree(mono, degrees):
    cdef Py_ssize_t k
    cdef long d = 0
    for k in range(len(mono)):
        i, e = mono[k]
        d += <long> degrees[i] * <long> e
    return d


def mono_word_length(mono):
    cdef Py_ssize_t k
    cdef long n = 0
    for k in range(len(mono)):
        n += <long> mono[k][1]
    return n


def mono_mul(tuple a, tuple b, tuple parity):
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t ia = 0, k, jj
    cdef int sign = 1
    cdef long crossings
    cdef list odd_tail, out
    if na == 0:
        return b, 1
    if nb == 0:
        return a, 1
    odd_tail = [0] * (na + 1)
    for k in range(na - 1, -1, -1):
        i, e = a[k]
        odd_tail[k] = odd_tail[k + 1] + (<long> e if parity[i] else 0)
    out = []
    for jj in range(nb):
        j, ej = b[jj]
        while ia < na and a[ia][0] < j:
            out.append(a[ia])
            ia += 1
        crossings = odd_tail[ia]
        if ia < na and a[ia][0] == j:
            if parity[j]:
                return None
            out.append((j, a[ia][1] + ej))
            ia += 1
        else:
            if parity[j]:
                if ej > 1:
                    return None
                if crossings & 1:
                    sign = -sign
            out.append((j, ej))
    while ia < na:
        out.append(a[ia])
        ia += 1
    return tuple(out), sign


def mono_normalize(factors, tuple parity):
    cdef list units = []
    cdef Py_ssize_t k, j
    cdef int sign = 1
    for i, e in factors:
        if e < 0:
            raise ValueError("negative exponent in monomial")
        for k in range(e):
            units.append(i)
    for k in range(1, len(units)):
        j = k
        while j > 0 and units[j - 1] > units[j]:
            if parity[units[j - 1]] and parity[units[j]]:
                sign = -sign
            units[j - 1], units[j] = units[j], units[j - 1]
            j -= 1
    cdef list mono = []
    for i in units:
        if mono and mono[-1][0] == i:
            if parity[i]:
                return None
            mono[-1] = (i, mono[-1][1] + 1)
        else:
            mono.append((i, 1))
    return tuple(mono), sign


def poly_add(dict p, dict q):
    if not p:
        return dict(q)
    if not q:
        return dict(p)
    cdef dict out = dict(p)
    for m, c in q.items():
        acc = out.get(m, _ZERO) + c
        if acc:
            out[m] = acc
        elif m in out:
            del out[m]
    return out


def poly_scale(dict p, c):
    if not c:
        return {}
    cdef dict out = {}
    for m, v in p.items():
        out[m] = v * c
    return out


def poly_mul(dict p, dict q, tuple parity, long max_terms):
    if not p or not q:
        return {}
    cdef dict out = {}
    cdef int s
    for ma, ca in p.items():
        for mb, cb in q.items():
            r = mono_mul(<tuple> ma, <tuple> mb, parity)
            if r is None:
                continue
            m, s = r
            c = ca * cb if s > 0 else -(ca * cb)
            acc = out.get(m, _ZERO) + c
            if acc:
                out[m] = acc
            elif m in out:
                del out[m]
        if len(out) > max_terms:
            raise TermBudgetExceeded(
                f"{len(out)} terms exceeds cap {max_terms}")
    return out


def deriv_apply(dict p, dict action, tuple parity, int deriv_odd,
                long max_terms):
    cdef dict out = {}
    cdef Py_ssize_t pos, n
    cdef int sign_prefix, s1, s2
    for mono, coeff in p.items():
        sign_prefix = 1
        n = len(<tuple> mono)
        for pos in range(n):
            i, e = (<tuple> mono)[pos]
            dg = action.get(i)
            if dg:
                if e > 1:
                    prefix = (<tuple> mono)[:pos] + ((i, e - 1),)
                else:
                    prefix = (<tuple> mono)[:pos]
                suffix = (<tuple> mono)[pos + 1:]
                base = coeff * e
                if sign_prefix < 0:
                    base = -base
                for mg, cg in (<dict> dg).items():
                    r = mono_mul(<tuple> prefix, <tuple> mg, parity)
                    if r is None:
                        continue
                    m1, s1 = r
                    r2 = mono_mul(<tuple> m1, <tuple> suffix, parity)
                    if r2 is None:
                        continue
                    m2, s2 = r2
                    c = base * cg
                    if s1 * s2 < 0:
                        c = -c
                    acc = out.get(m2, _ZERO) + c
                    if acc:
                        out[m2] = acc
                    elif m2 in out:
                        del out[m2]
            if deriv_odd and parity[i] and (e & 1):
                sign_prefix = -sign_prefix
        if len(out) > max_terms:
            raise TermBudgetExceeded(
                f"{len(out)} terms exceeds cap {max_terms}")
    return out
