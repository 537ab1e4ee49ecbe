"""Pure-Python kernel for graded-commutative monomial and polynomial arithmetic.

A monomial is a tuple of (generator_index, exponent) pairs, sorted by index,
with every exponent positive.  A polynomial is a dict mapping monomials to
nonzero ``fractions.Fraction`` coefficients; the empty dict is zero.
``parity`` is a tuple with one entry per generator, 1 for odd degree and 0
for even.  Koszul signs are produced by counting transpositions of odd
factors; odd generators square to zero.

The compiled kernel in ``_kernel_c.pyx`` implements exactly the same
functions with identical results; ``linf.kernel`` picks one at import time.
"""

from fractions import Fraction

BACKEND = "python"

_ZERO = Fraction(0)


class TermBudgetExceeded(Exception):
    """A polynomial grew past the configured term cap (LINF_MAX_TERMS)."""


def mono_degree(mono, degrees):
    d = 0
    for i, e in mono:
        d += degrees[i] * e
    return d


def mono_word_length(mono):
    n = 0
    for _, e in mono:
        n += e
    return n


def mono_mul(a, b, parity):
    """Merge two canonical monomials; return (monomial, sign) or None if zero.

    The sign is the Koszul sign of interleaving the unit factors of b into a:
    each odd unit factor of b passes every odd unit factor of a that sits
    strictly to its right in the merged order.
    """
    if not a:
        return b, 1
    if not b:
        return a, 1
    # number of odd unit factors of a with index > current b index
    odd_tail = [0] * (len(a) + 1)
    for k in range(len(a) - 1, -1, -1):
        i, e = a[k]
        odd_tail[k] = odd_tail[k + 1] + (e if parity[i] else 0)
    out = []
    sign = 1
    ia = 0
    na = len(a)
    for j, ej in b:
        while ia < na and a[ia][0] < j:
            out.append(a[ia])
            ia += 1
        crossings = odd_tail[ia]
        if ia < na and a[ia][0] == j:
            if parity[j]:
                return None  # odd generator squared
            out.append((j, a[ia][1] + ej))
            ia += 1
        else:
            if parity[j]:
                if ej > 1:
                    return None
                if crossings & 1:
                    sign = -sign
            out.append((j, ej))
    out.extend(a[ia:])
    return tuple(out), sign


def mono_normalize(factors, parity):
    """Sort an unordered (index, exponent) sequence into canonical form.

    Returns (monomial, sign) or None when an odd generator repeats.
    Exponents must be positive.
    """
    units = []
    for i, e in factors:
        if e < 0:
            raise ValueError("negative exponent in monomial")
        units.extend([i] * e)
    # insertion sort counting odd-odd transpositions (inputs are short)
    sign = 1
    for k in range(1, len(units)):
        j = k
        while j > 0 and units[j - 1] > units[j]:
            if parity[units[j - 1]] and parity[units[j]]:
                sign = -sign
            units[j - 1], units[j] = units[j], units[j - 1]
            j -= 1
    mono = []
    for i in units:
        if mono and mono[-1][0] == i:
            if parity[i]:
                return None
            mono[-1] = (i, mono[-1][1] + 1)
        else:
            mono.append((i, 1))
    return tuple(mono), sign


def poly_add(p, q):
    if not p:
        return dict(q)
    if not q:
        return dict(p)
    out = dict(p)
    for m, c in q.items():
        acc = out.get(m, _ZERO) + c
        if acc:
            out[m] = acc
        elif m in out:
            del out[m]
    return out


def poly_scale(p, c):
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def poly_mul(p, q, parity, max_terms):
    if not p or not q:
        return {}
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            r = mono_mul(ma, mb, parity)
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
            raise TermBudgetExceeded(f"{len(out)} terms exceeds cap {max_terms}")
    return out


def deriv_apply(p, action, parity, deriv_odd, max_terms):
    """Apply a graded derivation to a polynomial.

    ``action`` maps generator index -> polynomial dict (missing = zero).
    ``deriv_odd`` is 1 when the derivation has odd degree, which switches on
    the Koszul sign (-1)^{deg(prefix)} when the derivation passes a prefix.
    """
    out = {}
    for mono, coeff in p.items():
        sign_prefix = 1
        n = len(mono)
        for pos in range(n):
            i, e = mono[pos]
            dg = action.get(i)
            if dg:
                if e > 1:
                    prefix = mono[:pos] + ((i, e - 1),)
                else:
                    prefix = mono[:pos]
                suffix = mono[pos + 1:]
                base = coeff * e
                if sign_prefix < 0:
                    base = -base
                for mg, cg in dg.items():
                    r = mono_mul(prefix, mg, parity)
                    if r is None:
                        continue
                    m1, s1 = r
                    r2 = mono_mul(m1, suffix, parity)
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
            raise TermBudgetExceeded(f"{len(out)} terms exceeds cap {max_terms}")
    return out
