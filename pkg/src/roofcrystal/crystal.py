"""Crystal operators on n-bounded sets, Demazure crystals, ceilings and weights."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .sets import (
    IntegerSet,
    from_partition,
    half_line,
    height,
    order,
    simple_reflection,
)


def _window_start(i: int, J: IntegerSet) -> int:
    # an i-residue at or below tail - n; everything lower pairs off and cancels
    lo = J.tail - J.n
    return lo - ((lo - i) % J.n)


def signature(i: int, J: IntegerSet) -> tuple[list[int], list[int]]:
    """Pair-cancellation leftovers ``(upper, lower)``.

    Residue-i elements act as opening brackets and residue-(i+1) elements as
    closing ones; ``upper`` holds the unmatched (i+1)-elements, ``lower`` the
    unmatched i-elements, both ascending.
    """
    n = J.n
    i %= n
    i1 = (i + 1) % n
    upper, lower = [], []
    for x in J.elements_from(_window_start(i, J)):
        r = x % n
        if r == i:
            lower.append(x)
        elif r == i1:
            if lower:
                lower.pop()
            else:
                upper.append(x)
    return upper, lower


def f(i: int, J: IntegerSet) -> Optional[IntegerSet]:
    """Lowering operator; None where undefined."""
    _, lower = signature(i, J)
    if not lower:
        return None
    r = lower[0]
    return J.move(r, r + 1)


def e(i: int, J: IntegerSet) -> Optional[IntegerSet]:
    """Raising operator; None where undefined."""
    upper, _ = signature(i, J)
    if not upper:
        return None
    r = upper[-1]
    return J.move(r, r - 1)


def f_max(i: int, J: IntegerSet) -> tuple[IntegerSet, int]:
    k = 0
    while (nxt := f(i, J)) is not None:
        J, k = nxt, k + 1
    return J, k


def e_max(i: int, J: IntegerSet) -> tuple[IntegerSet, int]:
    k = 0
    while (nxt := e(i, J)) is not None:
        J, k = nxt, k + 1
    return J, k


# -- direct counting definition, kept as a cross-check ----------------------

def lowering_candidates(i: int, J: IntegerSet) -> list[int]:
    """R = {r : for all k >= r, #i-elements in [r,k] > #(i+1)-elements in [r,k]}."""
    n = J.n
    i %= n
    out = []
    for r in range(J.tail - 2 * n, J.top + 1):
        bal, ok = 0, True
        for k in range(r, J.top + 2):
            if k in J:
                if k % n == i:
                    bal += 1
                elif k % n == (i + 1) % n:
                    bal -= 1
            if bal <= 0:
                ok = False
                break
        if ok:
            out.append(r)
    return out


def raising_candidates(i: int, J: IntegerSet) -> list[int]:
    """R' = {r' : for all k <= r', #(i+1)-elements in [k,r'] > #i-elements in [k,r']}."""
    n = J.n
    i %= n
    out = []
    floor = J.tail - 3 * n
    for r in range(J.tail - 2 * n, J.top + 1):
        bal, ok = 0, True
        for k in range(r, floor - 1, -1):
            if k in J:
                if k % n == (i + 1) % n:
                    bal += 1
                elif k % n == i:
                    bal -= 1
            if bal <= 0:
                ok = False
                break
        if ok:
            out.append(r)
    return out


def f_by_counting(i: int, J: IntegerSet) -> Optional[IntegerSet]:
    R = lowering_candidates(i, J)
    return J.move(R[0], R[0] + 1) if R else None


def e_by_counting(i: int, J: IntegerSet) -> Optional[IntegerSet]:
    R = raising_candidates(i, J)
    return J.move(R[-1], R[-1] - 1) if R else None


# -- Demazure crystals ------------------------------------------------------

def check_word(word: Sequence[int], m: int, n: int) -> IntegerSet:
    """Reject words that move the half-line down at some step; return w(L_m).

    A reduced word never lowers the current extremal set (its suffixes only
    climb in Bruhat order), while e.g. ``s_i s_i`` does.
    """
    K = half_line(n, m)
    h = 0
    for i in reversed(word):
        if not 0 <= i < n:
            raise ValueError(f"residue {i} out of range for n={n}")
        K = simple_reflection(i, K)
        h2 = height(K)
        if h2 < h:
            raise ValueError(f"word {tuple(word)} is not reduced")
        h = h2
    return K


def demazure_top_down(word: Sequence[int], m: int, n: int) -> set[IntegerSet]:
    """Closure of {L_m} under f-strings, letters taken from the right."""
    check_word(word, m, n)
    S = {half_line(n, m)}
    for i in reversed(word):
        grown = set(S)
        for J in S:
            K = f(i, J)
            while K is not None and K not in grown:
                grown.add(K)
                K = f(i, K)
        S = grown
    return S


def demazure_contains(word: Sequence[int], J: IntegerSet) -> bool:
    """Membership in the Demazure crystal of ``word`` without generating it.

    Strips maximal e-strings letter by letter from the left; J belongs iff
    the half-line is reached.
    """
    m, n = order(J), J.n
    check_word(word, m, n)
    for i in word:
        J, _ = e_max(i, J)
    return J == half_line(n, m)


def ceiling(J: IntegerSet) -> IntegerSet:
    """Extremal set of the smallest Demazure crystal containing J.

    Recursion: with r the first element above the tail and K = e_max(r-1, J),
    ceiling(J) = s_{r-1} ceiling(K).
    """
    L = half_line(J.n, order(J))
    reflections = []
    h = height(J)
    while J != L:
        r = J.above[0]
        J, _ = e_max((r - 1) % J.n, J)
        h2 = height(J)
        assert h2 < h, "ceiling recursion failed to descend"
        h = h2
        reflections.append(r - 1)
    C = L
    for r in reversed(reflections):
        C = simple_reflection(r, C)
    return C


# -- weights and characters -------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """Lambda_m minus sum_i c[i] * alpha_i."""

    m: int
    c: tuple[int, ...]

    def __str__(self):
        terms = [f"L{self.m}"]
        for i, k in enumerate(self.c):
            if k:
                terms.append(f"{'' if k == 1 else k}a{i}")
        return " - ".join(terms)


def _residue_count(a: int, b: int, c: int, n: int) -> int:
    """#{x : a <= x < b, x = c mod n}."""
    return (b - 1 - c) // n - (a - 1 - c) // n


def weight(J: IntegerSet) -> Weight:
    """Each entry j_{-i} climbed from m-i; c[r] counts the unit steps taken from residue r."""
    n, m = J.n, order(J)
    c = [0] * n
    for i, x in enumerate(J.descending(len(J.above))):
        for r in range(n):
            c[r] += _residue_count(m - i, x, r, n)
    return Weight(m % n, tuple(c))


def character(S: Iterable[IntegerSet]) -> Counter:
    return Counter(weight(J) for J in S)


def crystal_edges(S: Iterable[IntegerSet]) -> Iterator[tuple[IntegerSet, int, IntegerSet]]:
    """Edges J -i-> f_i(J) with both ends in S."""
    S = set(S)
    for J in S:
        for i in range(J.n):
            K = f(i, J)
            if K is not None and K in S:
                yield J, i, K


# -- enumeration ------------------------------------------------------------

def restricted_partitions(n: int, H: int) -> Iterator[tuple[int, ...]]:
    """Partitions of size <= H whose consecutive parts (and last part) differ by at most n-1."""

    def grow(parts, total):
        yield tuple(reversed(parts))
        last = parts[-1] if parts else 0
        for p in range(max(last, 1), last + n):
            if total + p <= H:
                parts.append(p)
                yield from grow(parts, total + p)
                parts.pop()

    yield from grow([], 0)


def enumerate_crystal(m: int, n: int, H: int) -> set[IntegerSet]:
    """All n-bounded sets of order m and height <= H."""
    if H < 0:
        raise ValueError("height bound must be non-negative")
    return {from_partition(lam, m, n) for lam in restricted_partitions(n, H)}
