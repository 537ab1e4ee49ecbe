"""The .linf definition language: lexer, parser, printer.

Two block forms:

    lie so3 {
      basis t1 t2 t3;
      bracket [t1,t2] = t3;
      form identity;
    }

    algebra a {
      gen t : 1;
      gen b : 2;
      d t = 0;
      d b = -1/2*t*t;   # rejected: odd square
    }

Expressions use ``*`` for the graded product, ``^`` for powers, rational
literals ``p/q``, and ``s(g)`` to reference the shift partner of g.  The
printer emits canonical text with parse(print(x)) = x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DgcAlgebra, Generator, LinfError, Poly
from .lie import BilinearForm, LieData


class ParseError(LinfError):
    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# lexer

_PUNCT = ("[", "]", "{", "}", "(", ")", ",", ";", ":", "=", "*", "^", "+", "-", "|")


@dataclass
class Token:
    kind: str  # ident | number | punct | end
    text: str
    line: int
    col: int


def tokenize(text: str):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            scol = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            if i < n and text[i] == "/":
                j = i + 1
                if j < n and text[j].isdigit():
                    i = j
                    col += 1
                    while i < n and text[i].isdigit():
                        i += 1
                        col += 1
                else:
                    raise ParseError("malformed rational literal", line, col)
            tokens.append(Token("number", text[start:i], line, scol))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            scol = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("ident", text[start:i], line, scol))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def expect(self, text) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, got {t.text!r}", t.line, t.col)
        return t

    def expect_kind(self, kind) -> Token:
        t = self.next()
        if t.kind != kind:
            raise ParseError(f"expected {kind}, got {t.text!r}", t.line, t.col)
        return t


# ---------------------------------------------------------------------------
# expression grammar over a fixed algebra

def parse_expression(text: str, algebra: DgcAlgebra) -> Poly:
    stream = _Stream(tokenize(text))
    p = _parse_sum(stream, algebra)
    t = stream.peek()
    if t.kind != "end":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return p


def _parse_sum(s: _Stream, A: DgcAlgebra) -> Poly:
    t = s.peek()
    negate = False
    if t.text in ("+", "-"):
        s.next()
        negate = t.text == "-"
    acc = _parse_product(s, A)
    if negate:
        acc = -acc
    while s.peek().text in ("+", "-"):
        op = s.next().text
        term = _parse_product(s, A)
        acc = acc - term if op == "-" else acc + term
    return acc


def _parse_product(s: _Stream, A: DgcAlgebra) -> Poly:
    factors = [_parse_power(s, A)]
    while s.peek().text == "*":
        s.next()
        factors.append(_parse_power(s, A))
    odd_seen = {}
    for name, _value, tok in factors:
        if name is None:
            continue
        deg = A.generators[A.index(name)].degree
        if deg % 2:
            odd_seen[name] = odd_seen.get(name, 0) + 1
            if odd_seen[name] > 1:
                raise ParseError(f"odd generator {name} squared", tok.line, tok.col)
    acc = A.one()
    for _name, value, _tok in factors:
        acc = acc * value
    return acc


def _parse_power(s: _Stream, A: DgcAlgebra):
    """Returns (generator name or None, Poly value, token)."""
    t = s.peek()
    name, base = _parse_atom(s, A)
    power = 1
    if s.peek().text == "^":
        s.next()
        ptok = s.expect_kind("number")
        if "/" in ptok.text:
            raise ParseError("exponent must be an integer", ptok.line, ptok.col)
        power = int(ptok.text)
        if power < 0:
            raise ParseError("negative exponent", ptok.line, ptok.col)
    if power != 1:
        if name is not None:
            deg = A.generators[A.index(name)].degree
            if deg % 2 and power > 1:
                raise ParseError(f"odd generator {name} squared", t.line, t.col)
        base = base ** power
    return name, base, t


def _parse_atom(s: _Stream, A: DgcAlgebra):
    t = s.next()
    if t.kind == "number":
        return None, A.scalar(Fraction(t.text))
    if t.text == "(":
        inner = _parse_sum(s, A)
        s.expect(")")
        return None, inner
    if t.kind == "ident":
        name = t.text
        if s.peek().text == "(":
            s.next()
            args = [s.expect_kind("ident").text]
            while s.peek().text == ",":
                s.next()
                args.append(s.expect_kind("ident").text)
            s.expect(")")
            if name == "s" and len(args) == 1:
                name = "s" + args[0]
            else:
                name = f"{name}({','.join(args)})"
        try:
            return name, A.gen(name)
        except LinfError:
            raise ParseError(f"unknown generator {name!r}", t.line, t.col) from None
    raise ParseError(f"unexpected token {t.text!r}", t.line, t.col)


# ---------------------------------------------------------------------------
# file grammar

@dataclass
class AlgebraFile:
    """Parsed .linf content: named lie blocks and algebra blocks, in order."""

    lies: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    order: list = field(default_factory=list)  # (kind, name)

    def single(self):
        """The unique definition in the file, as (kind, object)."""
        if len(self.order) != 1:
            names = ", ".join(f"{k}:{n}" for k, n in self.order)
            raise LinfError(f"file defines several blocks ({names}); pick one")
        kind, name = self.order[0]
        return kind, (self.lies if kind == "lie" else self.algebras)[name]


def parse_algebra_file(text: str) -> AlgebraFile:
    s = _Stream(tokenize(text))
    out = AlgebraFile()
    while s.peek().kind != "end":
        t = s.next()
        if t.text == "lie":
            name, data = _parse_lie_block(s)
            if name in out.lies or name in out.algebras:
                raise ParseError(f"duplicate block name {name}", t.line, t.col)
            out.lies[name] = data
            out.order.append(("lie", name))
        elif t.text == "algebra":
            name, alg = _parse_algebra_block(s)
            if name in out.lies or name in out.algebras:
                raise ParseError(f"duplicate block name {name}", t.line, t.col)
            out.algebras[name] = alg
            out.order.append(("algebra", name))
        else:
            raise ParseError(f"expected 'lie' or 'algebra', got {t.text!r}",
                             t.line, t.col)
    return out


def _parse_lie_block(s: _Stream):
    name = s.expect_kind("ident").text
    s.expect("{")
    basis = []
    brackets = {}
    bracket_tokens = {}
    form_spec = None
    while s.peek().text != "}":
        t = s.next()
        if t.text == "basis":
            while s.peek().kind == "ident":
                basis.append(s.next().text)
            s.expect(";")
        elif t.text == "bracket":
            s.expect("[")
            x = s.expect_kind("ident")
            s.expect(",")
            y = s.expect_kind("ident")
            s.expect("]")
            s.expect("=")
            coords = _parse_lincomb(s, basis, t)
            s.expect(";")
            for nm in (x, y):
                if nm.text not in basis:
                    raise ParseError(f"unknown basis element {nm.text!r}",
                                     nm.line, nm.col)
            bi, ci = basis.index(x.text), basis.index(y.text)
            if bi == ci:
                raise ParseError("bracket of an element with itself", t.line, t.col)
            key = (bi, ci) if bi < ci else (ci, bi)
            if key in brackets:
                raise ParseError(
                    f"bracket [{x.text},{y.text}] declared twice", t.line, t.col)
            sign = 1 if bi < ci else -1
            brackets[key] = {a: v * sign for a, v in coords.items()}
            bracket_tokens[key] = t
        elif t.text == "form":
            form_spec = _parse_form(s, basis)
        else:
            raise ParseError(f"unknown lie statement {t.text!r}", t.line, t.col)
    s.expect("}")
    form = None
    if form_spec is not None:
        form = form_spec
    data = LieData(name, tuple(basis), brackets, form=form)
    return name, data


def _parse_lincomb(s: _Stream, basis, at):
    coords = {}
    sign = Fraction(1)
    t = s.peek()
    if t.text in ("+", "-"):
        s.next()
        sign = Fraction(-1 if t.text == "-" else 1)
    while True:
        coeff = sign
        t = s.peek()
        if t.kind == "number":
            s.next()
            coeff *= Fraction(t.text)
            if s.peek().text == "*":
                s.next()
        t = s.peek()
        if t.kind == "ident":
            s.next()
            if t.text not in basis:
                raise ParseError(f"unknown basis element {t.text!r}", t.line, t.col)
            idx = basis.index(t.text)
            coords[idx] = coords.get(idx, Fraction(0)) + coeff
        elif coeff == 0:
            pass  # literal zero bracket
        else:
            raise ParseError("expected basis element", t.line, t.col)
        t = s.peek()
        if t.text in ("+", "-"):
            s.next()
            sign = Fraction(-1 if t.text == "-" else 1)
            continue
        break
    return {a: v for a, v in coords.items() if v}


def _parse_form(s: _Stream, basis):
    t = s.next()
    n = len(basis)
    if t.text == "identity":
        s.expect(";")
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if t.text == "diag":
        entries = []
        while s.peek().kind == "number":
            entries.append(Fraction(s.next().text))
        s.expect(";")
        if len(entries) != n:
            raise ParseError(f"diag needs {n} entries", t.line, t.col)
        return [[entries[i] if i == j else Fraction(0) for j in range(n)]
                for i in range(n)]
    if t.text == "rows":
        rows = [[]]
        while True:
            nt = s.peek()
            if nt.kind == "number":
                s.next()
                rows[-1].append(Fraction(nt.text))
            elif nt.text == "|":
                s.next()
                rows.append([])
            else:
                break
        s.expect(";")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"form matrix must be {n}x{n}", t.line, t.col)
        return rows
    raise ParseError("expected identity, diag or rows", t.line, t.col)


def _parse_algebra_block(s: _Stream):
    name = s.expect_kind("ident").text
    s.expect("{")
    gens = []
    d_specs = []  # (gen name token, expression tokens as text)
    while s.peek().text != "}":
        t = s.next()
        if t.text == "gen":
            g = s.expect_kind("ident").text
            s.expect(":")
            deg = s.expect_kind("number")
            if "/" in deg.text:
                raise ParseError("degree must be an integer", deg.line, deg.col)
            gens.append(Generator(g, int(deg.text)))
            s.expect(";")
        elif t.text == "d":
            g = s.expect_kind("ident")
            s.expect("=")
            start = s.pos
            depth = 0
            while True:
                nt = s.peek()
                if nt.kind == "end":
                    raise ParseError("unterminated differential", nt.line, nt.col)
                if nt.text == ";" and depth == 0:
                    break
                if nt.text in ("(", "["):
                    depth += 1
                if nt.text in (")", "]"):
                    depth -= 1
                s.next()
            d_specs.append((g, s.tokens[start:s.pos]))
            s.expect(";")
        else:
            raise ParseError(f"unknown algebra statement {t.text!r}", t.line, t.col)
    s.expect("}")
    A = DgcAlgebra(name, gens)
    seen = set()
    for gtok, toks in d_specs:
        if gtok.text not in {g.name for g in gens}:
            raise ParseError(f"unknown generator {gtok.text!r}", gtok.line, gtok.col)
        if gtok.text in seen:
            raise ParseError(f"d {gtok.text} declared twice", gtok.line, gtok.col)
        seen.add(gtok.text)
        sub = _Stream(toks + [Token("end", "", gtok.line, gtok.col)])
        val = _parse_sum(sub, A)
        if not val.is_zero():
            vdeg = val.degree()
            want = A.generators[A.index(gtok.text)].degree + 1
            if vdeg is None or vdeg != want:
                raise ParseError(
                    f"d {gtok.text} must be homogeneous of degree {want}",
                    gtok.line, gtok.col)
        A.define_d(gtok.text, val)
    A.finalize(check=False)
    return name, A


# ---------------------------------------------------------------------------
# printer (canonical form; parse(print(x)) == x)

def print_poly(p: Poly) -> str:
    return p.algebra.render(p, sep="*")


def print_lie(name: str, lie: LieData) -> str:
    lines = [f"lie {name} {{"]
    lines.append("  basis " + " ".join(lie.basis_names) + ";")
    for (b, c) in sorted(lie.brackets):
        coords = lie.brackets[(b, c)]
        parts = []
        for a in sorted(coords):
            v = coords[a]
            nm = lie.basis_names[a]
            sgn = "-" if v < 0 else "+"
            av = abs(v)
            body = nm if av == 1 else f"{av}*{nm}"
            parts.append((sgn, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            text += f" {sgn} {body}"
        lines.append(
            f"  bracket [{lie.basis_names[b]},{lie.basis_names[c]}] = {text};")
    if lie.form is not None:
        G = lie.form.matrix
        n = lie.dimension
        if all(G[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)):
            lines.append("  form identity;")
        elif all(G[i][j] == 0 for i in range(n) for j in range(n) if i != j):
            diag = " ".join(str(G[i][i]) for i in range(n))
            lines.append(f"  form diag {diag};")
        else:
            rows = " | ".join(" ".join(str(x) for x in row) for row in G)
            lines.append(f"  form rows {rows};")
    lines.append("}")
    return "\n".join(lines)


def _ident(name: str) -> str:
    safe = "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in name)
    if not safe or safe[0].isdigit():
        safe = "a_" + safe
    return safe


def print_algebra(A: DgcAlgebra) -> str:
    lines = [f"algebra {_ident(A.name)} {{"]
    for g in A.generators:
        lines.append(f"  gen {g.name} : {g.degree};")
    for g in A.generators:
        dg = A.d(A.gen(g.name))
        lines.append(f"  d {g.name} = {print_poly(dg)};")
    lines.append("}")
    return "\n".join(lines)


def print_algebra_file(parsed: AlgebraFile) -> str:
    chunks = []
    for kind, name in parsed.order:
        if kind == "lie":
            chunks.append(print_lie(name, parsed.lies[name]))
        else:
            chunks.append(print_algebra(parsed.algebras[name]))
    return "\n\n".join(chunks) + "\n"
