"""Characteristic-class calculus: Chern characters via Newton's identities,
anomaly polynomials, and Singer divisibility arithmetic.

Symbols are graded even generators of a shared polynomial algebra: Chern
classes c1..c6 (degree 2i), Pontrjagin classes with tangent/gauge suffixes
p1T/p2T/p1E/p2E (degree 4i), the degree-4 classes a and lam, and Chern
character symbols ch2E, ch4E.  Tangent and gauge classes are kept distinct
on purpose: the sources overload p1, and suffixing prevents silent
cancellation.  All preset polynomials are stated up to positive scalar
normalization (2 pi factors dropped).
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import DgcAlgebra, LinfError, Poly

MAX_CHERN = 6

_SYMBOLS = (
    [(f"c{i}", 2 * i) for i in range(1, MAX_CHERN + 1)]
    + [("p1T", 4), ("p2T", 8), ("p1E", 4), ("p2E", 8),
       ("a", 4), ("lam", 4), ("ch2E", 4), ("ch4E", 8)]
)


def char_algebra() -> DgcAlgebra:
    """The shared polynomial home of every characteristic-class symbol."""
    return DgcAlgebra.make("charclass", _SYMBOLS)


_ALG = char_algebra()


def sym(name: str) -> Poly:
    return _ALG.gen(name)


def chern_character_component(k: int) -> Poly:
    """ch_k = s_k / k! with s_k the power sums in Chern roots.

    Newton's identities express s_k through c_1..c_k:
    s_k = c_1 s_{k-1} - c_2 s_{k-2} + ... + (-1)^{k-1} k c_k.
    """
    if not 1 <= k <= MAX_CHERN:
        raise LinfError(f"k must be between 1 and {MAX_CHERN}")
    s = [None, _ALG.gen("c1")]
    for m in range(2, k + 1):
        acc = _ALG.zero()
        for i in range(1, m):
            acc = acc + _ALG.gen(f"c{i}") * s[m - i] * ((-1) ** (i - 1))
        acc = acc + _ALG.gen(f"c{m}") * Fraction((-1) ** (m - 1) * m)
        s.append(acc)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return s[k] * Fraction(1, fact)


def reduce(p: Poly, ideal: dict) -> Poly:
    """Exact substitution symbol := polynomial; degree-checked ring map."""
    A = p.algebra
    out = A.zero()
    assignment = {}
    for name, val in ideal.items():
        if isinstance(val, (int, Fraction, str)):
            val = A.scalar(val)
        if not val.is_zero():
            vdeg = val.degree()
            gdeg = A.generators[A.index(name)].degree
            if vdeg is None or vdeg != gdeg:
                raise LinfError(
                    f"substitution for {name} must be homogeneous of degree {gdeg}")
        assignment[A.index(name)] = val
    for mono, coeff in p.terms.items():
        term = A.scalar(coeff)
        for i, e in mono:
            base = assignment.get(i, Poly(A, {((i, 1),): Fraction(1)}))
            for _ in range(e):
                term = term * base
        out = out + term
    return out


def _poly(spec) -> Poly:
    out = _ALG.zero()
    for coeff, names in spec:
        term = _ALG.scalar(coeff)
        for n in names:
            term = term * _ALG.gen(n)
        out = out + term
    return out


ANOMALY_PRESETS = {
    # Green-Schwarz: (1/2) p1(M) - (1/2) p1(E)
    "gs": [(Fraction(1, 2), ["p1T"]), (Fraction(-1, 2), ["p1E"])],
    # heterotic M-theory boundary: (1/4) p1(M) - (1/2) p1(E)
    "het-m": [(Fraction(1, 4), ["p1T"]), (Fraction(-1, 2), ["p1E"])],
    # eleven-dimensional flux quantization (same shape on Y)
    "flux": [(Fraction(1, 4), ["p1T"]), (Fraction(-1, 2), ["p1E"])],
    # dual Green-Schwarz cancellation condition
    "dual-gs": [
        (Fraction(1, 48), ["p2T"]), (Fraction(-1), ["ch4E"]),
        (Fraction(1, 48), ["p1T", "ch2E"]), (Fraction(-1, 64), ["p1T", "p1T"]),
    ],
    # the dH7 differential-form side (overall sign flipped, 2 pi dropped)
    "dual-gs-form": [
        (Fraction(1), ["ch4E"]), (Fraction(-1, 48), ["p1T", "ch2E"]),
        (Fraction(1, 64), ["p1T", "p1T"]), (Fraction(-1, 48), ["p2T"]),
    ],
    # one-loop term: (p2 - (1/2)((1/2) p1)^2) / 48
    "i8": [(Fraction(1, 48), ["p2T"]), (Fraction(-1, 384), ["p1T", "p1T"])],
    # integral class of the dual field: (1/2) a (a - lam) + (7 lam^2 - p2)/48
    "g8-th": [
        (Fraction(1, 2), ["a", "a"]), (Fraction(-1, 2), ["a", "lam"]),
        (Fraction(7, 48), ["lam", "lam"]), (Fraction(-1, 48), ["p2T"]),
    ],
    # shifted quantization of the degree-4 flux: a - (1/2) lam
    "g4-quant": [(Fraction(1), ["a"]), (Fraction(-1, 2), ["lam"])],
    # degree-8 dual class on a String background: (1/2) a^2 - p2/48
    "g8-string": [(Fraction(1, 2), ["a", "a"]), (Fraction(-1, 48), ["p2T"])],
}

PRESET_DEGREES = {
    "gs": 4, "het-m": 4, "flux": 4, "dual-gs": 8, "dual-gs-form": 8,
    "i8": 8, "g8-th": 8, "g4-quant": 4, "g8-string": 8,
}


def anomaly_polynomial(preset: str) -> Poly:
    try:
        spec = ANOMALY_PRESETS[preset]
    except KeyError:
        raise LinfError(
            f"unknown preset {preset!r}; known: {sorted(ANOMALY_PRESETS)}") from None
    return _poly(spec)


def lambda_substitution() -> dict:
    """The optional relation lam = (1/2) p1T, not baked into the presets."""
    return {"lam": _ALG.gen("p1T") * Fraction(1, 2)}


def g8_consistency_residual() -> Poly:
    """Expand (1/2)(a - lam/2)^2 - I8 and subtract the g8-th polynomial.

    The two printed expressions differ by an exact lam^2 multiple; the
    residual is returned verbatim, no correction applied.
    """
    a, lam = _ALG.gen("a"), _ALG.gen("lam")
    g4 = a - lam * Fraction(1, 2)
    i8 = reduce(anomaly_polynomial("i8"), p1_in_terms_of_lambda())
    expansion = g4 * g4 * Fraction(1, 2) - i8
    return expansion - anomaly_polynomial("g8-th")


def p1_in_terms_of_lambda() -> dict:
    """Rewrite tangent p1 through lam (p1T = 2 lam) for degree-8 comparisons."""
    return {"p1T": _ALG.gen("lam") * 2}


def sigma_digit_sum(p: int, n: int) -> int:
    """Base-p digit sum; p must be prime, n non-negative."""
    if not _is_prime(p):
        raise LinfError(f"{p} is not prime")
    if n < 0:
        raise ValueError("n must be non-negative")
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def singer_divisibility(n: int, k: int) -> int:
    """Divisibility of the k-th Chern class pulled to the 2n-connected cover.

    Product over primes p of p^q with q = floor((n-1 - sigma_p(k-1))/(p-1)),
    negative exponents clamped to zero.  Exponents vanish for p > n in the
    supported range, so the prime scan stops there (asserted).
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    out = 1
    for p in range(2, n + 1):
        if not _is_prime(p):
            continue
        q = (n - 1 - sigma_digit_sum(p, k - 1)) // (p - 1)
        if q > 0:
            out *= p ** q
    # the clamp really is vacuous beyond the scan bound
    for p in range(n + 1, 2 * n + 4):
        if _is_prime(p):
            assert (n - 1 - sigma_digit_sum(p, k - 1)) // (p - 1) <= 0
    return out
