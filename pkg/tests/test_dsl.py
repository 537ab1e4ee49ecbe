from fractions import Fraction
from pathlib import Path

import pytest

from linf.algebra import DgcAlgebra
from linf.dsl import (ParseError, parse_algebra_file, parse_expression,
                      print_algebra, print_algebra_file, print_lie)
from linf.lie import ce_of_lie

DATA = Path(__file__).resolve().parents[1] / "src" / "linf" / "data"


def test_parse_simple_algebra():
    parsed = parse_algebra_file("algebra a { gen t : 1; d t = 0; }")
    kind, A = parsed.single()
    assert kind == "algebra"
    assert A.generators[0].degree == 1
    assert A.d(A.gen("t")).is_zero()


def test_degree_inconsistent_differential_rejected():
    with pytest.raises(ParseError, match="degree"):
        parse_algebra_file(
            "algebra a { gen t1 : 1; gen t2 : 1; d t1 = t2; }")


def test_unknown_generator_with_position():
    with pytest.raises(ParseError, match="unknown generator"):
        parse_algebra_file("algebra a { gen t : 1; d t = q*t; }")


def test_odd_square_rejected_in_input():
    with pytest.raises(ParseError, match="squared"):
        parse_algebra_file("algebra a { gen t : 1; gen b : 3; d b = 2*t^2*t; }")
    with pytest.raises(ParseError, match="squared"):
        parse_algebra_file("algebra a { gen t : 1; gen b : 3; d b = t*t*t; }")


def test_malformed_rational():
    with pytest.raises(ParseError, match="rational"):
        parse_algebra_file("algebra a { gen t : 1; d t = 1/; }")


def test_parse_shift_sugar():
    A = DgcAlgebra.make("w", [("t", 1), ("st", 2)])
    p = parse_expression("s(t) + 2*t", A)
    assert p == A.gen("st") + A.gen("t") * 2


def test_parse_opaque_symbol():
    A = DgcAlgebra.make("forms", [("cs3(A,F_A)", 3), ("H3", 3)])
    p = parse_expression("H3 - cs3(A,F_A)", A)
    assert p == A.gen("H3") - A.gen("cs3(A,F_A)")


def test_shipped_so3_matches_builtin():
    from linf import lie
    parsed = parse_algebra_file((DATA / "so3.linf").read_text())
    g = parsed.lies["so3"]
    builtin = lie.so3()
    assert g.basis_names == builtin.basis_names
    assert g.brackets == builtin.brackets
    A = ce_of_lie(g)
    assert A.d(A.gen("t1")) == -(A.gen("t2") * A.gen("t3"))


@pytest.mark.parametrize("fname", sorted(p.name for p in DATA.glob("*.linf")))
def test_print_parse_round_trip(fname):
    text = (DATA / fname).read_text()
    parsed = parse_algebra_file(text)
    printed = print_algebra_file(parsed)
    reparsed = parse_algebra_file(printed)
    assert parsed.order == reparsed.order
    for name, g in parsed.lies.items():
        g2 = reparsed.lies[name]
        assert g.basis_names == g2.basis_names
        assert g.brackets == g2.brackets
        assert (g.form is None) == (g2.form is None)
        if g.form is not None:
            assert g.form.matrix == g2.form.matrix
    for name, A in parsed.algebras.items():
        A2 = reparsed.algebras[name]
        assert A.signature() == A2.signature()
        for g in A.generators:
            assert A.d(A.gen(g.name)).terms == A2.d(A2.gen(g.name)).terms
    # printing is idempotent byte-for-byte
    assert print_algebra_file(reparsed) == printed


def test_printer_round_trips_generated_algebra():
    from linf import constructions as cons
    S = cons.preset("string3")
    text = print_algebra(S)
    parsed = parse_algebra_file(text)
    _, A2 = parsed.single()
    assert [(g.name, g.degree) for g in A2.generators] == \
        [(g.name, g.degree) for g in S.generators]
    for g in S.generators:
        assert S.d(S.gen(g.name)).terms == A2.d(A2.gen(g.name)).terms


def test_duplicate_bracket_rejected():
    with pytest.raises(ParseError, match="twice"):
        parse_algebra_file(
            "lie g { basis x y z; bracket [x,y] = z; bracket [y,x] = z; }")


def test_fraction_bracket_coefficients():
    parsed = parse_algebra_file(
        "lie g { basis x y z; bracket [x,y] = 1/2*z - x; }")
    g = parsed.lies["g"]
    assert g.bracket_coords(0, 1) == {2: Fraction(1, 2), 0: Fraction(-1)}
    text = print_lie("g", g)
    g2 = parse_algebra_file(text).lies["g"]
    assert g2.brackets == g.brackets
