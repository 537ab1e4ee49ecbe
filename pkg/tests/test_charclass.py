import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linf import charclass as cc
from linf.algebra import DgcAlgebra, LinfError


def P(expr_terms):
    return cc._poly(expr_terms)


# ---------------------------------------------------------------------------
# the independent Chern-root oracle

N_ROOTS = 6


def root_algebra():
    return DgcAlgebra.make("roots", [(f"x{i}", 2) for i in range(1, N_ROOTS + 1)])


def elementary_symmetric(A, k):
    out = A.zero()
    for combo in itertools.combinations(range(1, N_ROOTS + 1), k):
        term = A.one()
        for i in combo:
            term = term * A.gen(f"x{i}")
        out = out + term
    return out


def power_sum(A, k):
    out = A.zero()
    for i in range(1, N_ROOTS + 1):
        out = out + A.gen(f"x{i}") ** k
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_chern_character_against_root_oracle(k):
    A = root_algebra()
    es = {f"c{i}": elementary_symmetric(A, i) for i in range(1, k + 1)}
    chk = cc.chern_character_component(k)
    # transplant ch_k into the root algebra by substituting c_i -> e_i
    expanded = A.zero()
    for mono, coeff in chk.terms.items():
        term = A.scalar(coeff)
        for idx, e in mono:
            name = chk.algebra.generators[idx].name
            term = term * es[name] ** e
        expanded = expanded + term
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    assert expanded == power_sum(A, k) * Fraction(1, fact)


def test_ch4_quoted_formula():
    c1, c2, c3, c4 = (cc.sym(f"c{i}") for i in range(1, 5))
    quoted = (c1 ** 4 - c1 * c1 * c2 * 4 + c1 * c3 * 4 + c2 * c2 * 2 - c4 * 4) \
        * Fraction(1, 24)
    assert cc.chern_character_component(4) == quoted


def test_ch2_and_ch1():
    c1, c2 = cc.sym("c1"), cc.sym("c2")
    assert cc.chern_character_component(2) == (c1 * c1 - c2 * 2) * Fraction(1, 2)
    assert cc.chern_character_component(1) == c1


def test_reduce_ch4():
    ch4 = cc.chern_character_component(4)
    zero = ch4.algebra.zero()
    r = cc.reduce(ch4, {"c1": zero, "c2": zero})
    assert r == cc.sym("c4") * Fraction(-1, 6)
    r1 = cc.reduce(ch4, {"c1": zero})
    c2, c4 = cc.sym("c2"), cc.sym("c4")
    assert r1 == (c2 * c2 - c4 * 2) * Fraction(1, 12)
    assert cc.reduce(ch4, {}) == ch4


def test_reduce_degree_mismatch():
    with pytest.raises(LinfError):
        cc.reduce(cc.sym("c1"), {"c1": cc.sym("c2")})


@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_reduce_is_ring_homomorphism(coeffs):
    c1, c2, p1 = cc.sym("c1"), cc.sym("c2"), cc.sym("p1T")
    p = c1 * coeffs[0] + c2 * coeffs[1] + c1 * c1 * coeffs[2]
    q = c2 * coeffs[3] + p1 * coeffs[4] + c1 * coeffs[5]
    ideal = {"c1": cc.sym("c3") * 0, "c2": c1 * c1, "p1T": cc.sym("lam") * 2}
    lhs = cc.reduce(p * q, ideal)
    rhs = cc.reduce(p, ideal) * cc.reduce(q, ideal)
    assert lhs == rhs


def test_anomaly_presets():
    gs = cc.anomaly_polynomial("gs")
    assert gs == cc.sym("p1T") * Fraction(1, 2) - cc.sym("p1E") * Fraction(1, 2)
    hetm = cc.anomaly_polynomial("het-m")
    assert hetm == cc.sym("p1T") * Fraction(1, 4) - cc.sym("p1E") * Fraction(1, 2)
    assert cc.anomaly_polynomial("flux") == hetm
    with pytest.raises(LinfError):
        cc.anomaly_polynomial("unknown")


def test_presets_homogeneous():
    for name, deg in cc.PRESET_DEGREES.items():
        p = cc.anomaly_polynomial(name)
        assert p.degree() == deg, name


def test_dual_gs_reduced():
    p = cc.anomaly_polynomial("dual-gs")
    r = cc.reduce(p, {"p1T": 0})
    expect = cc.sym("p2T") * Fraction(1, 48) - cc.sym("ch4E")
    assert r == expect
    # the form-level preset is the cohomological one with flipped sign
    assert cc.anomaly_polynomial("dual-gs-form") == -p


def test_g8_th_reduced_at_zero_lambda():
    p = cc.anomaly_polynomial("g8-th")
    r = cc.reduce(p, {"lam": 0})
    assert r == cc.anomaly_polynomial("g8-string")


def test_g8_consistency_residual():
    res = cc.g8_consistency_residual()
    lam = cc.sym("lam")
    assert res == lam * lam * Fraction(-1, 96)
    assert cc.reduce(res, {"lam": 0}).is_zero()
    assert cc.reduce(res, {"a": 0, "lam": 0}).is_zero()
    # the expansion itself: (1/2)a^2 - (1/2)a lam + (13/96) lam^2 - p2/48
    a = cc.sym("a")
    expansion = cc.anomaly_polynomial("g8-th") + res
    expect = a * a * Fraction(1, 2) - a * lam * Fraction(1, 2) \
        + lam * lam * Fraction(13, 96) - cc.sym("p2T") * Fraction(1, 48)
    assert expansion == expect


def test_g4_quant():
    assert cc.anomaly_polynomial("g4-quant") == \
        cc.sym("a") - cc.sym("lam") * Fraction(1, 2)
    # with lam = p1/2 this is a - p1/4
    r = cc.reduce(cc.anomaly_polynomial("g4-quant"), cc.p1_in_terms_of_lambda())
    assert r == cc.anomaly_polynomial("g4-quant")  # p1T does not occur
    r2 = cc.reduce(cc.anomaly_polynomial("g4-quant"),
                   cc.lambda_substitution())
    assert r2 == cc.sym("a") - cc.sym("p1T") * Fraction(1, 4)


def test_sigma_digit_sums():
    assert cc.sigma_digit_sum(2, 3) == 2
    assert cc.sigma_digit_sum(3, 3) == 1
    assert cc.sigma_digit_sum(5, 0) == 0
    with pytest.raises(LinfError):
        cc.sigma_digit_sum(4, 3)


def test_singer_divisibility_quoted():
    assert cc.singer_divisibility(4, 4) == 6
    assert cc.singer_divisibility(2, 1) == 2  # q = floor(1/(p-1)) = 1 at p = 2
    assert cc.singer_divisibility(4, 1) == 24  # 2^3 * 3


def test_singer_divisibility_small_values():
    # direct evaluation of the formula for a spread of (n, k)
    def brute(n, k):
        out = 1
        p = 2
        while p <= 4 * n:
            if cc._is_prime(p):
                q = (n - 1 - cc.sigma_digit_sum(p, k - 1)) // (p - 1)
                if q > 0:
                    out *= p ** q
            p += 1
        return out

    for n in range(2, 8):
        for k in range(1, 8):
            assert cc.singer_divisibility(n, k) == brute(n, k)


def test_singer_monotone_in_n():
    for k in (1, 2, 3, 4, 5):
        prev = 1
        for n in range(2, 9):
            val = cc.singer_divisibility(n, k)
            assert val >= prev
            prev = val
