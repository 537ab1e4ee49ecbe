from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linf.algebra import DegreeError, DgcAlgebra, GeneratorMismatch, LinfError


def ce_so3():
    return DgcAlgebra.make(
        "so3",
        [("t1", 1), ("t2", 1), ("t3", 1)],
        d={
            "t1": lambda A: -(A.gen("t2") * A.gen("t3")),
            "t2": lambda A: -(A.gen("t3") * A.gen("t1")),
            "t3": lambda A: -(A.gen("t1") * A.gen("t2")),
        },
    )


def mixed_algebra():
    # odd t (1), even b (2), odd h (3): enough to probe every sign path
    return DgcAlgebra.make("mix", [("t", 1), ("b", 2), ("h", 3)])


def test_normalize_monomial_sorted_and_signs():
    A = ce_so3()
    mono, sign = A.normalize_monomial([("t1", 1), ("t2", 1)])
    assert sign == 1 and A.render_mono(mono) == "t1*t2"
    mono, sign = A.normalize_monomial([("t2", 1), ("t1", 1)])
    assert sign == -1 and A.render_mono(mono) == "t1*t2"
    _, sign = A.normalize_monomial([("t1", 1), ("t1", 1)])
    assert sign == 0


def test_normalize_idempotent():
    A = ce_so3()
    mono, sign = A.normalize_monomial([("t3", 1), ("t1", 1), ("t2", 1)])
    named = [(A.generators[i].name, e) for i, e in mono]
    again, sign2 = A.normalize_monomial(named)
    assert again == mono and sign2 == 1


def test_product_rules():
    A = mixed_algebra()
    t, b, h = A.gen("t"), A.gen("b"), A.gen("h")
    assert (b * b).degree() == 4  # even generators square freely
    assert (h * h).is_zero()  # odd square vanishes
    assert t * b == b * t
    assert t * h == -(h * t)


def test_sum_then_product():
    A = ce_so3()
    t1, t2 = A.gen("t1"), A.gen("t2")
    assert (t1 + t2) * t1 == -(t1 * t2)


def test_differential_so3():
    A = ce_so3()
    t1, t2, t3 = (A.gen(n) for n in ("t1", "t2", "t3"))
    assert A.d(t1) == -(t2 * t3)
    # top form of a 3-dimensional odd set is closed
    assert A.d(t1 * t2 * t3).is_zero()
    assert A.check_d_squared() == []


def test_differential_weil_u1():
    W = DgcAlgebra.make("Wu1", [("t", 1), ("r", 2)],
                        d={"t": lambda A: A.gen("r")})
    t, r = W.gen("t"), W.gen("r")
    assert W.d(t * r) == r * r


def test_d_squared_failure_reported():
    A = DgcAlgebra("bad", [type(g)(**vars(g)) for g in DgcAlgebra.make(
        "tmp", [("t1", 1), ("t2", 2), ("t3", 3)]).generators])
    A.define_d("t1", A.gen("t2"))
    A.define_d("t2", A.gen("t3"))
    with pytest.raises(LinfError, match="t1"):
        A.finalize()
    resid = A.check_d_squared()
    assert [(n, A.render(p)) for n, p in resid] == [("t1", "t3")]


def test_chain_map_identity_and_degree_error():
    from linf.algebra import AlgebraMap, identity_map
    A = ce_so3()
    assert identity_map(A).check_chain_map() == []
    B = DgcAlgebra.make("line", [("t", 1), ("b", 2)])
    with pytest.raises(DegreeError):
        AlgebraMap(B, B, {"t": B.gen("b"), "b": B.gen("b")})


def test_generator_mismatch():
    A, B = ce_so3(), mixed_algebra()
    with pytest.raises(GeneratorMismatch):
        A.gen("t1") * B.gen("t")


def test_graded_component_basis():
    A = ce_so3()
    names = [A.render_mono(m) for m in A.graded_component_basis(2)]
    assert names == ["t1*t2", "t1*t3", "t2*t3"]
    assert [A.render_mono(m) for m in A.graded_component_basis(0)] == ["1"]

    S = DgcAlgebra.make("so3mu", [("t1", 1), ("t2", 1), ("t3", 1), ("b", 2)])
    names = [S.render_mono(m) for m in S.graded_component_basis(2)]
    assert names == ["t1*t2", "t1*t3", "t2*t3", "b"]


def test_zero_polynomial_is_empty_mapping():
    A = ce_so3()
    z = A.gen("t1") - A.gen("t1")
    assert z.terms == {} and z.is_zero()


# ---------------------------------------------------------------------------
# property tests

def random_homogeneous(A, draw):
    """Homogeneous element assembled from a degree component basis."""
    deg = draw(st.integers(min_value=0, max_value=4))
    basis = A.graded_component_basis(deg)
    if not basis:
        return A.zero(), deg
    coeffs = draw(st.lists(
        st.integers(min_value=-3, max_value=3),
        min_size=len(basis), max_size=len(basis)))
    return A.poly({m: Fraction(c) for m, c in zip(basis, coeffs)}), deg


@st.composite
def homogeneous_pair(draw):
    A = mixed_algebra()
    p, dp = random_homogeneous(A, draw)
    q, dq = random_homogeneous(A, draw)
    return A, p, dp, q, dq


@given(homogeneous_pair())
@settings(max_examples=60, deadline=None)
def test_graded_commutativity_and_degree(data):
    A, p, dp, q, dq = data
    pq = p * q
    sign = -1 if (dp % 2 and dq % 2) else 1
    assert pq == (q * p) * sign
    if not pq.is_zero():
        assert pq.degree() == dp + dq


@given(homogeneous_pair(), homogeneous_pair())
@settings(max_examples=40, deadline=None)
def test_associativity(d1, d2):
    A, p, _, q, _ = d1
    _, r, _, _, _ = d2
    assert (p * q) * r == p * (q * r)


@given(homogeneous_pair())
@settings(max_examples=60, deadline=None)
def test_word_length_additive(data):
    A, p, _, q, _ = data
    pq = p * q
    if p.terms and q.terms and pq.terms:
        lp, lq = max(p.word_lengths()), max(q.word_lengths())
        assert max(pq.word_lengths()) <= lp + lq
        if len(p.terms) == len(q.terms) == 1:
            assert pq.word_lengths() == {lp + lq}


@given(homogeneous_pair())
@settings(max_examples=60, deadline=None)
def test_leibniz(data):
    A, p, dp, q, _ = data
    W = DgcAlgebra.make(
        "mixd", [("t", 1), ("b", 2), ("h", 3)],
        d={"t": lambda X: X.gen("b"), "h": lambda X: X.gen("b") * X.gen("b")})
    # transplant p, q into the algebra that carries a differential
    p = W.poly(p.terms)
    q = W.poly(q.terms)
    sign = -1 if dp % 2 else 1
    assert W.d(p * q) == W.d(p) * q + (p * W.d(q)) * sign
