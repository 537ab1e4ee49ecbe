"""Graded-commutative differential algebra core.

Everything is exact: coefficients are ``fractions.Fraction``, monomials are
canonical tuples of (generator index, exponent) pairs in declaration order,
and Koszul signs come from the kernel.  Values are immutable after
construction and all operations are pure.

Degree conventions follow the Chevalley-Eilenberg grading: generators carry
non-negative integer degrees, differentials raise degree by one, odd-degree
generators square to zero while even ones admit unbounded powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernel


class LinfError(Exception):
    pass


class DegreeError(LinfError):
    pass


class GeneratorMismatch(LinfError):
    pass


Scalar = Fraction
Mono = tuple  # tuple[tuple[int, int], ...]


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    tags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeError(f"generator {self.name} has negative degree")


class Poly:
    """Exact-rational linear combination of canonical monomials.

    The zero polynomial is the empty term mapping.  Homogeneity is a
    queryable property, not an enforced one.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "DgcAlgebra", terms: Mapping[Mono, Fraction]):
        self.algebra = algebra
        self.terms = dict(terms)

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        degs = self.algebra._degrees
        return {kernel.mono_degree(m, degs) for m in self.terms}

    def degree(self):
        """Homogeneous degree, or None for zero / inhomogeneous elements."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def word_lengths(self) -> set[int]:
        return {kernel.mono_word_length(m) for m in self.terms}

    def word_length_part(self, n: int) -> "Poly":
        return Poly(self.algebra,
                    {m: c for m, c in self.terms.items()
                     if kernel.mono_word_length(m) == n})

    def degree_part(self, n: int) -> "Poly":
        degs = self.algebra._degrees
        return Poly(self.algebra,
                    {m: c for m, c in self.terms.items()
                     if kernel.mono_degree(m, degs) == n})

    def coefficient(self, mono: Mono) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    # -- arithmetic ------------------------------------------------------
    def _check_same(self, other: "Poly"):
        if self.algebra is not other.algebra and \
                self.algebra.signature() != other.algebra.signature():
            raise GeneratorMismatch("operands live over different generator sets")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        self._check_same(other)
        return Poly(self.algebra, kernel.poly_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.algebra, kernel.poly_scale(self.terms, Fraction(-1)))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            return Poly(self.algebra,
                        kernel.poly_scale(self.terms, as_scalar(other)))
        self._check_same(other)
        return Poly(self.algebra,
                    kernel.poly_mul(self.terms, other.terms,
                                    self.algebra._parity, kernel.max_terms()))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (Fraction(1) / as_scalar(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.algebra.signature() == other.algebra.signature() \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra.signature(),
                     tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"Poly({self.algebra.render(self)})"

    def sorted_terms(self):
        """Terms in canonical order: lexicographic on flattened index tuples."""
        return sorted(self.terms.items(), key=lambda kv: _flat(kv[0]))


def _flat(mono: Mono) -> tuple:
    out = []
    for i, e in mono:
        out.extend([i] * e)
    return tuple(out)


class Derivation:
    """Graded derivation given by its values on generators."""

    __slots__ = ("algebra", "degree", "_action")

    def __init__(self, algebra: "DgcAlgebra", degree: int,
                 action: Mapping[str, Poly]):
        self.algebra = algebra
        self.degree = degree
        act = {}
        for name, p in action.items():
            idx = algebra.index(name)
            if p.is_zero():
                continue
            d = p.degree()
            if d is None or d != algebra.generators[idx].degree + degree:
                raise DegreeError(
                    f"derivation value on {name} must be homogeneous of degree "
                    f"{algebra.generators[idx].degree + degree}, got {p.degrees()}")
            act[idx] = p.terms
        self._action = act

    def on(self, name: str) -> Poly:
        idx = self.algebra.index(name)
        return Poly(self.algebra, self._action.get(idx, {}))

    def __call__(self, p: Poly) -> Poly:
        if p.algebra.signature() != self.algebra.signature():
            raise GeneratorMismatch("derivation applied across algebras")
        terms = kernel.deriv_apply(p.terms, self._action,
                                   self.algebra._parity, self.degree & 1,
                                   kernel.max_terms())
        return Poly(self.algebra, terms)


class DgcAlgebra:
    """Free graded-commutative algebra with a degree +1 differential.

    Built in two phases: construct with the generator list, call
    ``define_d`` for each non-closed generator, then ``finalize``.
    Algebras constructed through ``make`` arrive finalized.
    """

    def __init__(self, name: str, generators: Sequence[Generator]):
        seen = set()
        for g in generators:
            if g.name in seen:
                raise LinfError(f"duplicate generator name {g.name}")
            seen.add(g.name)
        self.name = name
        self.generators = tuple(generators)
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        self._degrees = tuple(g.degree for g in self.generators)
        self._parity = tuple(d & 1 for d in self._degrees)
        self._d_exprs: dict[str, Poly] = {}
        self.differential: Derivation | None = None
        self.nilpotency_checked = False

    @classmethod
    def make(cls, name: str, gens: Sequence[tuple], d=None, check=True):
        """Build and finalize in one go.

        ``gens`` lists (name, degree) or (name, degree, tags); ``d`` maps
        generator name -> callable(algebra) -> Poly, or Poly-building is
        deferred to the callable so generators can reference each other.
        """
        A = cls(name, [Generator(g[0], g[1], frozenset(g[2]) if len(g) > 2 else frozenset())
                       for g in gens])
        if d:
            for gname, builder in d.items():
                A.define_d(gname, builder(A) if callable(builder) else builder)
        A.finalize(check=check)
        return A

    # -- construction ----------------------------------------------------
    def define_d(self, name: str, value: Poly):
        if self.differential is not None:
            raise LinfError("algebra already finalized")
        if name not in self._index:
            raise LinfError(f"unknown generator {name}")
        if not value.is_zero():
            self._d_exprs[name] = value

    def finalize(self, check=True):
        if self.differential is None:
            self.differential = Derivation(self, 1, self._d_exprs)
        if check:
            bad = self.check_d_squared()
            if bad:
                names = ", ".join(n for n, _ in bad)
                raise LinfError(f"d^2 != 0 on generators: {names}")
        return self

    def signature(self):
        return (self.name, self._degrees,
                tuple(g.name for g in self.generators))

    # -- element constructors --------------------------------------------
    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise LinfError(f"unknown generator {name!r} in algebra {self.name}") from None

    def gen(self, name: str) -> Poly:
        return Poly(self, {((self.index(name), 1),): Fraction(1)})

    def scalar(self, c) -> Poly:
        c = as_scalar(c)
        return Poly(self, {(): c} if c else {})

    def one(self) -> Poly:
        return self.scalar(1)

    def zero(self) -> Poly:
        return Poly(self, {})

    def poly(self, terms: Mapping[Mono, Fraction]) -> Poly:
        return Poly(self, {m: as_scalar(c) for m, c in terms.items() if c})

    def mono_degree(self, mono: Mono) -> int:
        return kernel.mono_degree(mono, self._degrees)

    def mono_word_length(self, mono: Mono) -> int:
        return kernel.mono_word_length(mono)

    # -- differential ----------------------------------------------------
    def d(self, p: Poly) -> Poly:
        if self.differential is None:
            raise LinfError("differential not defined yet")
        return self.differential(p)

    def check_d_squared(self):
        """List of (generator name, residual Poly) with nonzero d(d(g))."""
        if self.differential is None:
            self.differential = Derivation(self, 1, self._d_exprs)
        out = []
        for g in self.generators:
            r = self.d(self.d(self.gen(g.name)))
            if not r.is_zero():
                out.append((g.name, r))
        if not out:
            self.nilpotency_checked = True
        return out

    # -- normalization and bases -----------------------------------------
    def normalize_monomial(self, factors: Iterable[tuple]):
        """Canonicalize an unordered factor list given by generator names.

        ``factors`` yields (name, exponent) pairs.  Returns (monomial, sign)
        with sign 0 when an odd generator repeats.
        """
        idx_factors = []
        for name, e in factors:
            if e <= 0:
                raise ValueError("exponents must be positive")
            idx_factors.append((self.index(name), e))
        r = kernel.mono_normalize(idx_factors, self._parity)
        if r is None:
            return (), 0
        return r

    def monomial(self, *names, coeff=1) -> Poly:
        mono, sign = self.normalize_monomial((n, 1) for n in names)
        if sign == 0:
            return self.zero()
        return Poly(self, {mono: as_scalar(coeff) * sign})

    def graded_component_basis(self, n: int) -> list:
        """All normalized monomials of degree n, in lexicographic order.

        Requires every generator to have positive degree (otherwise the
        component is infinite-dimensional).
        """
        if n < 0:
            raise ValueError("degree must be non-negative")
        if any(d == 0 for d in self._degrees):
            raise LinfError("graded components are infinite with degree-0 generators")
        out = []

        def rec(i, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if i == len(self.generators):
                return
            deg = self._degrees[i]
            emax = remaining // deg if deg else 0
            if self._parity[i]:
                emax = min(emax, 1)
            for e in range(emax, 0, -1):
                acc.append((i, e))
                rec(i + 1, remaining - e * deg, acc)
                acc.pop()
            rec(i + 1, remaining, acc)

        rec(0, n, [])
        return out

    # -- rendering ---------------------------------------------------------
    def render_mono(self, mono: Mono, sep="*") -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return sep.join(parts)

    def render(self, p: Poly, sep="*", unicode_wedge=False) -> str:
        if not p.terms:
            return "0"
        if unicode_wedge:
            sep = "∧"
        bits = []
        for mono, c in p.sorted_terms():
            sgn = "-" if c < 0 else "+"
            c = abs(c)
            if not mono:
                body = str(c)
            elif c == 1:
                body = self.render_mono(mono, sep)
            else:
                body = f"{c}{sep}{self.render_mono(mono, sep)}"
            bits.append((sgn, body))
        first_sign, first_body = bits[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sgn, body in bits[1:]:
            text += f" {sgn} {body}"
        return text

    def differential_table(self):
        """Pairs (generator name, d(generator)) in declaration order."""
        return [(g.name, self.d(self.gen(g.name))) for g in self.generators]

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"DgcAlgebra({self.name}; {gens})"


class AlgebraMap:
    """Degree-0 algebra morphism given on generators; optionally a chain map."""

    def __init__(self, source: DgcAlgebra, target: DgcAlgebra,
                 assignment: Mapping[str, Poly]):
        self.source = source
        self.target = target
        self.assignment = {}
        for g in source.generators:
            img = assignment.get(g.name)
            if img is None:
                raise LinfError(f"assignment missing generator {g.name}")
            if not img.is_zero():
                d = img.degree()
                if d is None or d != g.degree:
                    raise DegreeError(
                        f"image of {g.name} must be homogeneous of degree {g.degree}")
            self.assignment[g.name] = img
        self.chain_map_checked = False

    def __call__(self, p: Poly) -> Poly:
        if p.algebra.signature() != self.source.signature():
            raise GeneratorMismatch("map applied to element of a different algebra")
        out = self.target.zero()
        one = self.target.one()
        for mono, c in p.terms.items():
            img = one * c
            for i, e in mono:
                gp = self.assignment[self.source.generators[i].name]
                for _ in range(e):
                    img = img * gp
            out = out + img
        return out

    def check_chain_map(self):
        """Per-generator residuals phi(d g) - d(phi g); empty iff chain map."""
        out = []
        for g in self.source.generators:
            lhs = self(self.source.d(self.source.gen(g.name)))
            rhs = self.target.d(self.assignment[g.name])
            r = lhs - rhs
            if not r.is_zero():
                out.append((g.name, r))
        if not out:
            self.chain_map_checked = True
        return out


def identity_map(A: DgcAlgebra) -> AlgebraMap:
    return AlgebraMap(A, A, {g.name: A.gen(g.name) for g in A.generators})
