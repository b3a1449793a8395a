import pytest
from hypothesis import given

from roofcrystal.crystal import check_word, demazure_top_down, enumerate_crystal
from roofcrystal.roof import (
    demazure_bottom_up,
    enumerate_stable_below,
    member,
    minimal_hole,
    reduced_word_from_extremal,
    roof,
    roof_set,
    sort_sets,
    up,
    up_closure,
    up_inverse,
)
from roofcrystal.sets import (
    bruhat_leq,
    canonicalize,
    half_line,
    height,
    is_n_bounded,
    is_n_stable,
    order,
    weyl_apply,
)
from roofcrystal.verify import _affine_perm, reduced_words, up_inverse_brute

from conftest import bounded_sets

EXAMPLE_ROOF = canonicalize(5, 0, [3, 4] + list(range(8, 64, 5)))
EXAMPLE_WORD = (2, 1, 3, 2, 0) + (4, 3, 2, 1, 0) * 9 + (4,)


def test_example_first_steps(example):
    J1, step = up(example)
    assert step == (35, 38)
    assert J1 == example.move(35, 38)
    _, trace = roof(example)
    assert trace[:3] == [(35, 38), (33, 42), (38, 47)]
    assert len(trace) == 44


def test_example_roof(example):
    top = roof_set(example)
    assert top == EXAMPLE_ROOF
    assert height(top) == 328
    assert is_n_stable(top)


def test_example_word(example):
    word = reduced_word_from_extremal(EXAMPLE_ROOF)
    assert word == EXAMPLE_WORD
    assert weyl_apply(word, half_line(5, 14)) == EXAMPLE_ROOF
    assert member(example, EXAMPLE_ROOF)


def test_up_errors():
    with pytest.raises(ValueError, match="stable"):
        up(half_line(3, 0))
    with pytest.raises(ValueError, match="bounded"):
        up(canonicalize(2, 0, [5]))
    with pytest.raises(ValueError):
        roof(canonicalize(2, 0, [5]))


def test_roof_of_stable_is_itself():
    K = canonicalize(3, 0, [2, 5])
    assert roof(K) == (K, [])


@given(bounded_sets())
def test_roof_properties(J):
    top, trace = roof(J)
    assert is_n_stable(top) and order(top) == order(J)
    assert bruhat_leq(J, top)
    cur = J
    for p, q in trace:
        assert p in cur and p - J.n not in cur
        assert q not in cur and q - J.n in cur and (q - p) % J.n
        nxt, step = up(cur)
        assert step == (p, q)
        assert height(nxt) == height(cur) + q - p
        assert is_n_bounded(nxt)
        cur = nxt
    assert cur == top


# -- inverse ---------------------------------------------------------------------

@pytest.mark.parametrize("n,m,H", [(2, 0, 12), (3, 0, 10), (4, 1, 9), (5, 3, 8)])
def test_up_inverse_matches_brute_force(n, m, H):
    for J in enumerate_crystal(m, n, H):
        assert up_inverse(J) == up_inverse_brute(J), str(J)


@given(bounded_sets(max_parts=10))
def test_up_inverse_random(J):
    assert up_inverse(J) == up_inverse_brute(J)


@given(bounded_sets())
def test_up_then_inverse(J):
    if not is_n_stable(J):
        assert J in up_inverse(up(J)[0])


def test_up_closure_is_fibre():
    n, m, H = 3, 0, 9
    sets = enumerate_crystal(m, n, H)
    for K in sets:
        if is_n_stable(K):
            fibre = {J for J in sets if roof_set(J) == K}
            closure = up_closure(K)
            assert fibre <= closure
            assert all(roof_set(J) == K for J in closure)


# -- stable sets and words -------------------------------------------------------

def stable_below_oracle(K_w):
    """Filter every bounded set of at most K_w's height."""
    found = enumerate_crystal(order(K_w), K_w.n, height(K_w))
    return {K for K in found if is_n_stable(K) and bruhat_leq(K, K_w)}


@pytest.mark.parametrize("n,m,H", [(2, 0, 14), (3, 1, 12), (4, 0, 10)])
def test_enumerate_stable_below(n, m, H):
    for K_w in enumerate_crystal(m, n, H):
        if is_n_stable(K_w):
            got = enumerate_stable_below(K_w)
            assert set(got) == stable_below_oracle(K_w)
            assert got == sort_sets(got)
            assert got[0] == half_line(n, m) and got[-1] == K_w


def test_enumerate_stable_below_rejects_unstable(example):
    with pytest.raises(ValueError):
        enumerate_stable_below(example)


def test_minimal_hole():
    assert minimal_hole(half_line(2, 0)) is None
    assert minimal_hole(canonicalize(3, 0, [2, 5])) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_word_is_reduced(n):
    groups = reduced_words(n, 7)
    lengths = {w: len(words[0]) for w, words in groups.items()}
    for K in enumerate_crystal(0, n, 12):
        if not is_n_stable(K):
            continue
        word = reduced_word_from_extremal(K)
        assert weyl_apply(word, half_line(n, 0)) == K
        check_word(word, 0, n)
        if len(word) <= 7:
            assert lengths[_affine_perm(word, n)] == len(word)


# -- bottom-up generation -------------------------------------------------------

@pytest.mark.parametrize("n,m", [(2, 0), (3, 2)])
def test_bottom_up_equals_top_down(n, m):
    for _, words in reduced_words(n, 5).items():
        word = words[0]
        K = check_word(word, m, n)
        assert demazure_bottom_up(K) == demazure_top_down(word, m, n)


def test_bottom_up_parallel_is_identical():
    K = check_word((0, 2, 1, 0, 2, 1), 0, 3)
    assert demazure_bottom_up(K, jobs=2) == demazure_bottom_up(K)


@pytest.mark.parametrize("n", [2, 3])
def test_member_matches_generated_crystal(n):
    sets = enumerate_crystal(0, n, 9)
    for K in sets:
        if is_n_stable(K):
            crystal = demazure_bottom_up(K)
            for J in sets:
                assert member(J, K) == (J in crystal)
