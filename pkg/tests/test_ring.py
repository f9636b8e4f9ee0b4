"""Exercises for the packed-exponent polynomial kernel."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqs.ring import (
    CMAX,
    NotDivisible,
    Polynomial,
    Ring,
    RootInvolvesVar,
    parse_poly,
    poly_names,
    ring_from_names,
    zname,
)

R3 = Ring(["z1", "z2", "z3"])


def poly_of(texts):
    return parse_poly(texts, R3)


small_exps = st.lists(
    st.integers(min_value=0, max_value=9), min_size=3, max_size=3
)
small_polys = st.dictionaries(
    st.tuples(*[st.integers(min_value=0, max_value=4)] * 3),
    st.integers(min_value=-9, max_value=9),
    max_size=5,
).map(R3.poly)


# ---------------------------------------------------------------------------
# monomial keys


@given(small_exps)
def test_pack_unpack_roundtrip(exps):
    assert list(R3.unpack(R3.pack(exps))) == exps


@given(small_exps, small_exps)
def test_mul_key_adds_exponents(e1, e2):
    k = R3.mul_key(R3.pack(e1), R3.pack(e2))
    assert list(R3.unpack(k)) == [a + b for a, b in zip(e1, e2)]


@given(small_exps, small_exps)
def test_div_key_inverts_mul_or_raises(e1, e2):
    k1, k2 = R3.pack(e1), R3.pack(e2)
    if all(a >= b for a, b in zip(e1, e2)):
        assert R3.div_key(k1, k2) == R3.pack([a - b for a, b in zip(e1, e2)])
    else:
        assert R3.div_key(k1, k2) is None


@given(small_exps, small_exps)
def test_lcm_key_is_entrywise_max(e1, e2):
    k = R3.lcm_key(R3.pack(e1), R3.pack(e2))
    assert list(R3.unpack(k)) == [max(a, b) for a, b in zip(e1, e2)]


@given(small_exps, small_exps)
def test_key_order_is_degree_first(e1, e2):
    k1, k2 = R3.pack(e1), R3.pack(e2)
    if sum(e1) != sum(e2):
        assert (k1 < k2) == (sum(e1) < sum(e2))


def test_key_order_breaks_ties_reverse_lexicographically():
    # same degree: the monomial with the larger power of the last variable
    # is smaller
    z1z3 = R3.pack([1, 0, 1])
    z2sq = R3.pack([0, 2, 0])
    assert z1z3 < z2sq
    p = poly_of("z1*z3 + z2^2")
    assert p.lt_key() == z2sq


def test_exponent_capacity_guard():
    R3.pack([CMAX, 0, 0])
    with pytest.raises(OverflowError):
        R3.pack([CMAX + 1, 0, 0])


def test_elimination_block_dominates():
    R = Ring(["y", "z1", "z2"], elim=["y"])
    ky = R.pack([1, 0, 0])
    kz = R.pack([0, 5, 5])
    assert ky > kz


def test_tdeg_and_deg_in():
    k = R3.pack([2, 0, 7])
    assert R3.tdeg(k) == 9
    assert R3.deg_in(k, "z3") == 7


# ---------------------------------------------------------------------------
# arithmetic


@given(small_polys, small_polys)
def test_addition_commutes(p, q):
    assert p + q == q + p


@given(small_polys, small_polys)
def test_multiplication_commutes(p, q):
    assert p * q == q * p


@given(small_polys, small_polys, small_polys)
@settings(max_examples=60)
def test_distributivity(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(small_polys)
def test_subtraction_cancels(p):
    assert (p - p).is_zero()
    assert p + 0 == p and p * 1 == p and (p * 0).is_zero()


def test_power_matches_repeated_product():
    p = poly_of("z1 + z2")
    assert p ** 3 == p * p * p
    assert str(p ** 2) == "z1^2 + 2*z1*z2 + z2^2"
    assert p ** 0 == R3.one()


def test_integer_and_fraction_scalars():
    p = poly_of("z1 + 2")
    q = p * Fraction(1, 2)
    assert q - q == R3.zero()
    assert (q + q) == p


@given(small_polys, small_polys)
@settings(max_examples=60)
def test_exact_division_recovers_factor(p, q):
    if p.is_zero() or q.is_zero():
        return
    assert (p * q).div_exact(q) == p


def test_exact_division_failure():
    with pytest.raises(NotDivisible):
        poly_of("z1 + 1").div_exact(poly_of("z2"))


def test_total_degree_and_variables():
    p = poly_of("z1^2*z3 - z2")
    assert p.total_degree() == 3
    assert p.degree_in("z1") == 2
    assert p.variables() == ["z1", "z2", "z3"]
    assert p.constant_part() == 0
    assert poly_of("z1 - 7").constant_part() == -7


# ---------------------------------------------------------------------------
# substitution and univariate division


def test_eval_subst_is_a_homomorphism():
    p = poly_of("z1^2 + z2*z3 - 1")
    q = poly_of("z1*z2 + z3")
    sub = {"z1": poly_of("z2 + 1"), "z3": R3.const(2)}
    assert (p * q).eval_subst(sub) == p.eval_subst(sub) * q.eval_subst(sub)
    assert (p + q).eval_subst(sub) == p.eval_subst(sub) + q.eval_subst(sub)


def test_eval_subst_single_variable():
    p = poly_of("z1^3 - z1")
    assert p.eval_subst({"z1": R3.const(2)}) == R3.const(6)


def test_synthetic_division_reconstructs():
    p = poly_of("z1^3*z2 - z2*z3 + z1*z3")
    root = poly_of("z3 - 1")
    quot, rem = p.div_rem_in_var("z1", root)
    assert quot * (R3.var("z1") - root) + rem == p
    assert rem.degree_in("z1") == 0


def test_synthetic_division_rejects_root_in_same_variable():
    with pytest.raises(RootInvolvesVar):
        poly_of("z1^2").div_rem_in_var("z1", poly_of("z1"))


def test_coeffs_in_var():
    p = poly_of("z1^2*z2 + z1*z3 + 5")
    cs = p.coeffs_in_var("z1")
    assert cs[2] == poly_of("z2") and cs[1] == poly_of("z3")
    assert cs[0] == R3.const(5)


def test_map_to_larger_ring():
    R = ring_from_names(["z1", "z2", "z3", "l3"])
    p = poly_of("z1*z2 - 3")
    q = p.map_to(R)
    assert q.ring is R and str(q) == str(p)
    with pytest.raises(ValueError):
        parse_poly("l3", R).map_to(R3)


# ---------------------------------------------------------------------------
# names, parsing, serialisation


def test_canonical_name_order():
    R = ring_from_names(["t3", "s3_1", "z2", "l3", "r3", "z1", "st3_1"])
    assert R.names == ("z1", "z2", "l3", "r3", "s3_1", "t3", "st3_1")


def test_variable_families_sort_by_index():
    R = ring_from_names(["z10", "z2", "l4", "l3", "s3_2", "s3_1"])
    assert R.names == ("z2", "z10", "l3", "l4", "s3_1", "s3_2")


def test_parser_and_str_roundtrip():
    text = "3*z1^2*l3 - s3_1 + 1"
    R = ring_from_names(["z1", "l3", "s3_1"])
    assert str(parse_poly(text, R)) == text


def test_parser_handles_parentheses_and_unary_minus():
    p = parse_poly("-(z1 - z2)^2 + z1^2", R3)
    assert p == poly_of("2*z1*z2 - z2^2")


def test_poly_names_collects_identifiers():
    assert poly_names("z1*z2 - s3_1^2") == {"z1", "z2", "s3_1"}


@given(small_polys)
@settings(max_examples=40)
def test_json_roundtrip(p):
    assert Polynomial.from_json(p.to_json()) == p


@given(small_polys)
@settings(max_examples=40)
def test_str_parse_roundtrip(p):
    assert parse_poly(str(p), R3) == p


def test_zname_helper():
    assert zname(4) == "z4"
