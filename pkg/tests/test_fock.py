import pytest
from hypothesis import given
from hypothesis import strategies as st

from roofcrystal.crystal import enumerate_crystal
from roofcrystal.fock import (
    FockVector,
    divided_vector,
    dump,
    e_hat_apply,
    e_prime_apply,
    leading_coefficient_formula,
    mod_p_reduce,
    parse_dump,
    residue_counts_above,
    seam_groups,
    standard_coefficient,
    standard_vector,
)
from roofcrystal.roof import roof
from roofcrystal.sets import canonicalize, height, is_n_stable, lex_compare

from conftest import bounded_sets


def B(n, tail, *above):
    return FockVector.basis(canonicalize(n, tail, above))


# -- vector arithmetic ---------------------------------------------------------

def test_vector_arithmetic():
    a, b = B(2, 0, 2), B(2, 0, 3)
    v = a * 3 - b
    assert v.coefficient(a.support()[0]) == 3 and len(v) == 2
    assert v - v == FockVector() and not (v - v)
    assert (v * 2).exact_div(2) == v
    with pytest.raises(ArithmeticError):
        v.exact_div(2)


def test_sorted_terms_lex_descending():
    v = B(2, 0, 2) + B(2, 0, 3) + B(2, -1, 1, 2)
    keys = [K for K, _ in v.sorted_terms()]
    assert all(lex_compare(a, b) > 0 for a, b in zip(keys, keys[1:]))


# -- operators ---------------------------------------------------------------------

def test_e_prime_sign():
    # moving 3 down to 0 passes over 1 and 2
    v = e_prime_apply(0, 3, B(3, -1, 1, 2, 3))
    assert v == B(3, -1, 0, 1, 2) * 1
    v = e_prime_apply(0, 3, B(3, -1, 1, 3))
    assert v == B(3, -1, 0, 1) * -1
    assert not e_prime_apply(0, 3, B(3, -1, 1))
    with pytest.raises(ValueError):
        e_prime_apply(3, 3, B(3, 0))


def test_e_hat_example():
    v = e_hat_apply(2, 3, B(2, -1, 1, 3))
    assert v == B(2, -1, 1, 2) + B(2, 0, 3)


@given(bounded_sets(), st.integers(1, 4))
def test_e_hat_is_sum_of_shifted_moves(J, d):
    n = J.n
    p = J.top - d
    v = FockVector.basis(J)
    expected = FockVector()
    for k in range(-(J.top - J.tail) // n - 3, 3):
        a, b = p + n * k, p + d + n * k
        expected = expected + e_prime_apply(a, b, v)
    assert e_hat_apply(p, p + d, v) == expected


# -- standard vectors ----------------------------------------------------------

def test_stable_set_is_single_term():
    K = canonicalize(3, 0, [2, 5])
    assert standard_vector(K) == FockVector.basis(K)


def test_small_expansion():
    J = canonicalize(2, -1, [1, 2])
    v = standard_vector(J)
    assert v == B(2, -1, 1, 2) + B(2, 0, 3)
    assert dump(v) == "+1 * n=2;<=-1;1,2\n+1 * n=2;<=0;3\n"


def test_unbounded_rejected():
    with pytest.raises(ValueError):
        standard_vector(canonicalize(2, 0, [5]))


def test_example_leading_coefficient(example):
    c = standard_coefficient(example, example)
    assert abs(c) == leading_coefficient_formula(example)
    assert abs(c) == 8477392641800011776000000


def test_example_seam_groups(example):
    groups = seam_groups(roof(example)[1], 5)
    assert sorted(len(g) for g in groups) == [1, 2, 5, 7, 8, 9, 12]


@pytest.mark.parametrize("n,m,H", [(2, 0, 10), (3, 1, 8), (4, 0, 7)])
def test_support_and_leading_term(n, m, H):
    for J in enumerate_crystal(m, n, H):
        v = standard_vector(J)
        lead, c = v.leading_term()
        assert lead == J and abs(c) == leading_coefficient_formula(J)
        lowest = min(K.tail for K in v.support()) - n
        for K in v.support():
            assert height(K) == height(J)
            assert residue_counts_above(K, lowest) == residue_counts_above(J, lowest)


@given(bounded_sets(max_parts=6))
def test_pruned_coefficient_matches_full_expansion(J):
    v = standard_vector(J)
    for K in v.support()[:5]:
        assert standard_coefficient(J, K) == v.coefficient(K)


@given(bounded_sets(max_parts=6), st.integers(-6, 6))
def test_shift_invariance(J, c):
    v = standard_vector(J)
    w = standard_vector(J.shift(c))
    assert w == FockVector({K.shift(c): a for K, a in v.items()})


@pytest.mark.parametrize("n,H", [(2, 10), (3, 8)])
def test_standard_is_formula_times_divided(n, H):
    for J in enumerate_crystal(0, n, H):
        s, d = standard_vector(J), divided_vector(J)
        assert s in (d * leading_coefficient_formula(J), d * -leading_coefficient_formula(J))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_divided_basis_mod_p(p):
    for n in (2, 3):
        sets = enumerate_crystal(0, n, 7)
        leads = set()
        for J in sets:
            v = mod_p_reduce(divided_vector(J), p)
            lead, c = v.leading_term()
            assert lead == J and c in (1, p - 1)
            leads.add(lead)
        assert len(leads) == len(sets)


def test_mod_p_rejects_composite():
    with pytest.raises(ValueError):
        mod_p_reduce(B(2, 0), 4)


def test_stable_sets_unaffected():
    for J in enumerate_crystal(0, 3, 9):
        if is_n_stable(J):
            assert divided_vector(J) == FockVector.basis(J)


# -- dump format ------------------------------------------------------------------

@given(bounded_sets(max_parts=6))
def test_dump_round_trip(J):
    v = standard_vector(J)
    assert parse_dump(dump(v)) == v


def test_parse_dump_rejects_garbage():
    with pytest.raises(ValueError):
        parse_dump("1 n=2;<=0;\n")
