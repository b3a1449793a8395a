"""The up operation, roofs, inverse-up, and bottom-up Demazure generation."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from functools import cmp_to_key
from typing import NamedTuple

from .sets import (
    IntegerSet,
    bruhat_leq,
    half_line,
    height,
    is_n_bounded,
    is_n_stable,
    lex_compare,
    loose_ends,
    order,
    simple_reflection,
    tight_ends,
)

NEG_INF = float("-inf")


class UpStep(NamedTuple):
    p: int  # element removed
    q: int  # element inserted


def up(J: IntegerSet) -> tuple[IntegerSet, UpStep]:
    """Move the maximal loose end p to the first admissible tight end q > p."""
    if not is_n_bounded(J):
        raise ValueError(f"not n-bounded: {J}")
    loose = loose_ends(J)
    if not loose:
        raise ValueError(f"already stable: {J}")
    n = J.n
    p = loose[-1]
    for q in range(p + 1, J.top + n + 1):
        if (q - p) % n and q not in J and (q - n) in J:
            return J.move(p, q), UpStep(p, q)
    raise AssertionError(f"no tight end above {p} in {J}")


def roof(J: IntegerSet) -> tuple[IntegerSet, list[UpStep]]:
    """Iterate up until n-stable; return the stable set and the step trace."""
    if not is_n_bounded(J):
        raise ValueError(f"not n-bounded: {J}")
    trace = []
    while not is_n_stable(J):
        J, step = up(J)
        trace.append(step)
    return J, trace


def roof_set(J: IntegerSet) -> IntegerSet:
    return roof(J)[0]


def up_inverse(J_hat: IntegerSet) -> set[IntegerSet]:
    """All J with up(J) == J_hat, in closed form.

    With p_hat > p_til the two largest loose ends of J_hat, the candidates
    are J = J_hat \\ q U p where q tops a seam of length >= 2 above
    p_hat - n, and p is either a doubly vacant position (p, p-n not in
    J_hat) above p_hat, or p = p_hat - n above p_til.  In both cases p must
    lie above q_hat(p), the largest tight end below q outside p's residue
    class (up skips tight ends in that class), and p, q must differ mod n.
    """
    n = J_hat.n
    loose = loose_ends(J_hat)
    p_hat = loose[-1] if loose else NEG_INF
    p_til = loose[-2] if len(loose) > 1 else NEG_INF
    tights = tight_ends(J_hat)
    out = set()
    for q in J_hat.above:
        if (q - n) not in J_hat or (q + n) in J_hat or q <= p_hat - n:
            continue
        below = [t for t in tights if t < q]

        def q_hat(p):
            for t in reversed(below):
                if (t - p) % n:
                    return t
            return NEG_INF

        cands = []
        start = J_hat.tail + 1 if p_hat == NEG_INF else p_hat + 1
        for p in range(start, q):
            if p not in J_hat and (p - n) not in J_hat and q_hat(p) < p:
                cands.append(p)
        if p_hat != NEG_INF:
            p = p_hat - n
            if (p - n) not in J_hat and max(p_til, q_hat(p)) < p:
                cands.append(p)
        for p in cands:
            if (q - p) % n:
                out.add(J_hat.move(q, p))
    return out


def up_closure(K: IntegerSet) -> set[IntegerSet]:
    """{K} together with every set whose roof is K (breadth-first via up_inverse)."""
    seen = {K}
    queue = deque([K])
    while queue:
        for J in up_inverse(queue.popleft()):
            if J not in seen:
                seen.add(J)
                queue.append(J)
    return seen


def enumerate_stable_below(K_w: IntegerSet) -> list[IntegerSet]:
    """All n-stable sets K of the same order with K <=_B K_w, sorted by height then lex.

    Stable sets of height <= h are reached from the half-line by simple
    reflections without exceeding h (minimal-hole descent read backwards),
    so a height-bounded orbit search is exhaustive.
    """
    if not is_n_stable(K_w):
        raise ValueError(f"not n-stable: {K_w}")
    n, h = K_w.n, height(K_w)
    start = half_line(n, order(K_w))
    seen = {start}
    queue = deque([start])
    while queue:
        K = queue.popleft()
        for i in range(n):
            L = simple_reflection(i, K)
            if L not in seen and height(L) <= h:
                seen.add(L)
                queue.append(L)
    return sort_sets(K for K in seen if bruhat_leq(K, K_w))


def sort_sets(sets) -> list[IntegerSet]:
    """Deterministic order: by height, then lex (ties only among equal orders)."""
    sets = list(sets)
    return sorted(sets, key=cmp_to_key(_height_lex_cmp))


def _height_lex_cmp(a: IntegerSet, b: IntegerSet) -> int:
    ha, hb = height(a), height(b)
    if ha != hb:
        return -1 if ha < hb else 1
    if order(a) != order(b):
        return -1 if order(a) < order(b) else 1
    return lex_compare(a, b)


def demazure_bottom_up(K_w: IntegerSet, jobs: int = 1) -> set[IntegerSet]:
    """Union of up-closures of all stable K <=_B K_w."""
    stables = enumerate_stable_below(K_w)
    if jobs > 1 and len(stables) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(up_closure, stables))
    else:
        parts = [up_closure(K) for K in stables]
    out = set()
    for part in parts:
        out |= part
    return out


def member(J: IntegerSet, K_w: IntegerSet) -> bool:
    """Demazure-crystal membership test: roof(J) <=_B K_w."""
    if order(J) != order(K_w):
        raise ValueError("order mismatch")
    if not is_n_stable(K_w):
        raise ValueError(f"not n-stable: {K_w}")
    return bruhat_leq(roof_set(J), K_w)


def minimal_hole(K: IntegerSet) -> int | None:
    """min{k not in K : k+1 in K}, or None for a half-line."""
    if not K.above:
        return None
    return K.above[0] - 1


def reduced_word_from_extremal(K: IntegerSet) -> tuple[int, ...]:
    """Reduced word y with weyl_apply(y, half-line) == K, by minimal-hole descent."""
    if not is_n_stable(K):
        raise ValueError(f"not n-stable: {K}")
    word = []
    h = height(K)
    while True:
        r = minimal_hole(K)
        if r is None:
            break
        K = simple_reflection(r, K)
        h2 = height(K)
        assert h2 < h, "minimal-hole reflection failed to descend"
        h = h2
        word.append(r % K.n)
    # K = s_{r_1} s_{r_2} ... s_{r_t} L_m, so the recording order is the written order
    return tuple(word)
