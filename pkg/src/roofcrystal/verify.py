"""Invariant sweeps with independent oracles, shared by the CLI and the test suite."""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .crystal import (
    Weight,
    ceiling,
    character,
    check_word,
    demazure_top_down,
    enumerate_crystal,
    weight,
)
from .fock import (
    divided_vector,
    leading_coefficient_formula,
    mod_p_reduce,
    residue_counts_above,
    standard_vector,
)
from .roof import demazure_bottom_up, roof_set, sort_sets, up, up_inverse
from .sets import (
    IntegerSet,
    from_partition,
    height,
    is_n_bounded,
    is_n_stable,
    lex_compare,
)

DEFAULT_SUITES = ((2, 0, 10), (3, 0, 8), (4, 0, 7), (5, 14, 6))
DEFAULT_WORD_LENGTH = 6


@dataclass
class Report:
    suite: str
    params: dict
    checked: int = 0
    failures: list[tuple[IntegerSet | tuple, str]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def counterexample(self) -> Optional[str]:
        if not self.failures:
            return None
        sets = [f for f in self.failures if isinstance(f[0], IntegerSet)]
        if sets:
            witness, why = sort_sets([s for s, _ in sets])[0], None
            why = next(w for s, w in sets if s == witness)
            return f"{witness}  ({why})"
        witness, why = min(self.failures, key=lambda f: (len(f[0]), f[0]))
        return f"{witness}  ({why})"

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = (f"{self.suite:<10} {params:<22} checked={self.checked:<6} "
                f"failures={len(self.failures):<4} {self.seconds:.2f}s")
        if self.failures:
            line += f"\n  counterexample: {self.counterexample()}"
        return line

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checked": self.checked,
            "failures": len(self.failures),
            "counterexample": self.counterexample(),
            "seconds": round(self.seconds, 3),
        }


def _run(suite, params, items, check: Callable, jobs: int = 1) -> Report:
    """Apply ``check`` (returns None or a failure reason) to every item."""
    t0 = time.perf_counter()
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reasons = list(pool.map(check, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        reasons = [check(x) for x in items]
    rep = Report(suite, params, checked=len(items))
    rep.failures = [(x, r) for x, r in zip(items, reasons) if r]
    rep.seconds = time.perf_counter() - t0
    return rep


# -- oracles -------------------------------------------------------------------

def up_inverse_brute(J_hat: IntegerSet) -> set[IntegerSet]:
    """Try every single move J_hat \\ q U p (p < q) and keep those that up maps back."""
    out = set()
    for q in J_hat.above:
        for p in range(J_hat.tail + 1, q):
            if p in J_hat or (q - p) % J_hat.n == 0:
                continue
            J = J_hat.move(q, p)
            if is_n_bounded(J) and not is_n_stable(J) and up(J)[0] == J_hat:
                out.add(J)
    return out


def enumerate_crystal_by_raising(m: int, n: int, H: int) -> set[IntegerSet]:
    """Breadth-first single-element raises from the half-line, keeping n-bounded sets."""
    start = IntegerSet(n, m, ())
    seen = {start}
    frontier = [start]
    for _ in range(H):
        nxt = []
        for J in frontier:
            for x in J.elements_from(J.tail):
                if x + 1 not in J:
                    K = J.move(x, x + 1)
                    if K not in seen and is_n_bounded(K):
                        seen.add(K)
                        nxt.append(K)
        frontier = nxt
    return seen


def _affine_perm(word, n):
    """Window (w(1), ..., w(n)) of the product of simple reflections in ``word``."""
    def s(i, x):
        r = x % n
        if r == i:
            return x + 1
        if r == (i + 1) % n:
            return x - 1
        return x

    out = []
    for x in range(1, n + 1):
        for i in reversed(word):
            x = s(i, x)
        out.append(x)
    return tuple(out)


def reduced_words(n: int, max_len: int) -> dict[tuple, list[tuple[int, ...]]]:
    """All reduced words of length <= max_len, grouped by the group element they spell.

    Lengths come from a breadth-first search of the Cayley graph, so a word
    is reduced iff its length equals the distance of its product.
    """
    dist = {_affine_perm((), n): 0}
    queue = deque([()])
    while queue:
        w = queue.popleft()
        if len(w) == max_len:
            continue
        for i in range(n):
            v = (i,) + w
            key = _affine_perm(v, n)
            if key not in dist:
                dist[key] = len(v)
                queue.append(v)
    groups: dict[tuple, list] = {}
    for L in range(max_len + 1):
        for word in itertools.product(range(n), repeat=L):
            key = _affine_perm(word, n)
            if dist.get(key) == L:
                groups.setdefault(key, []).append(word)
    return groups


def random_bounded_set(rng: random.Random, n: int, m: int, max_height: int) -> IntegerSet:
    """A random n-bounded set of order m, built part by part from the smallest."""
    target = rng.randint(0, max_height)
    parts, total, last = [], 0, 0
    while True:
        hi = min(last + n - 1, target - total)
        lo = max(last, 1)
        if hi < lo:
            break
        p = rng.randint(lo, hi)
        parts.append(p)
        total += p
        last = p
    return from_partition(parts[::-1], m, n)


# -- per-item checks (module level so they pickle) -----------------------------

def check_roof_is_ceiling(J: IntegerSet) -> Optional[str]:
    r, c = roof_set(J), ceiling(J)
    return None if r == c else f"roof {r} != ceiling {c}"


def check_standard_vector(J: IntegerSet) -> Optional[str]:
    v = standard_vector(J)
    h = height(J)
    lowest = min([J.tail] + [K.tail for K in v.support()]) - J.n
    profile = residue_counts_above(J, lowest)
    for K in v.support():
        if lex_compare(K, J) > 0:
            return f"support element {K} is lex-above"
        if height(K) != h:
            return f"support element {K} has height {height(K)} != {h}"
        if residue_counts_above(K, lowest) != profile:
            return f"support element {K} has different residue counts"
    lead, formula = abs(v.coefficient(J)), leading_coefficient_formula(J)
    if lead != formula:
        return f"|a_J^J| = {lead} but formula gives {formula}"
    return None


def check_upinv(J: IntegerSet) -> Optional[str]:
    a, b = up_inverse(J), up_inverse_brute(J)
    if a == b:
        return None
    return f"formula-only {sorted(map(str, a - b))}, brute-only {sorted(map(str, b - a))}"


def check_divided(J: IntegerSet, primes=(2, 3)) -> Optional[str]:
    try:
        v = divided_vector(J)
    except ArithmeticError as exc:
        return f"inexact division: {exc}"
    lead_set, lead = v.leading_term()
    if lead_set != J or abs(lead) != 1:
        return f"leading term {lead:+d} * {lead_set}"
    for p in primes:
        if mod_p_reduce(v, p).coefficient(J) == 0:
            return f"leading term vanishes mod {p}"
    return None


# -- suites ----------------------------------------------------------------------

def sweep_roof_ceiling(n, m, H, jobs=1) -> Report:
    sets = sort_sets(enumerate_crystal(m, n, H))
    return _run("theorem1", {"n": n, "m": m, "H": H}, sets, check_roof_is_ceiling, jobs)


def sweep_roof_ceiling_random(n, m, H, samples, seed=0, jobs=1) -> Report:
    rng = random.Random(seed)
    sets = [random_bounded_set(rng, n, m, H) for _ in range(samples)]
    return _run("theorem1", {"n": n, "m": m, "H": H, "random": samples}, sets, check_roof_is_ceiling, jobs)


def sweep_standard_vectors(n, m, H, jobs=1) -> Report:
    sets = sort_sets(enumerate_crystal(m, n, H))
    return _run("prop3", {"n": n, "m": m, "H": H}, sets, check_standard_vector, jobs)


def sweep_up_inverse(n, m, H, jobs=1) -> Report:
    sets = sort_sets(enumerate_crystal(m, n, H))
    return _run("upinv", {"n": n, "m": m, "H": H}, sets, check_upinv, jobs)


def sweep_divided(n, m, H, jobs=1) -> Report:
    sets = sort_sets(enumerate_crystal(m, n, H))
    rep = _run("divided", {"n": n, "m": m, "H": H}, sets, check_divided, jobs)
    # distinct sets must keep distinct unit leading terms after reduction
    t0 = time.perf_counter()
    for p in (2, 3):
        seen = {}
        for J in sets:
            lead_set, _ = mod_p_reduce(divided_vector(J), p).leading_term()
            if lead_set in seen:
                rep.failures.append((J, f"leading term mod {p} collides with {seen[lead_set]}"))
            seen[lead_set] = J
    rep.seconds += time.perf_counter() - t0
    return rep


def sweep_generators(n, m, max_len) -> Report:
    """Top-down vs bottom-up Demazure crystals, word independence and characters."""
    t0 = time.perf_counter()
    rep = Report("character", {"n": n, "m": m, "len": max_len})
    by_extremal: dict[IntegerSet, tuple] = {}
    for _, words in sorted(reduced_words(n, max_len).items()):
        for word in words:
            rep.checked += 1
            K = check_word(word, m, n)
            top = demazure_top_down(word, m, n)
            bottom = demazure_bottom_up(K)
            if top != bottom:
                rep.failures.append((word, f"top-down {len(top)} != bottom-up {len(bottom)}"))
                continue
            ch_top, ch_bottom = character(top), character(bottom)
            if ch_top != ch_bottom or sum(ch_top.values()) != len(top):
                rep.failures.append((word, "character mismatch"))
            if K in by_extremal and by_extremal[K][1] != top:
                rep.failures.append((word, f"differs from word {by_extremal[K][0]} with same extremal set"))
            by_extremal.setdefault(K, (word, top))
            reason = _basis_count(top)
            if reason:
                rep.failures.append((word, reason))
    rep.seconds = time.perf_counter() - t0
    return rep


def _basis_count(crystal: set[IntegerSet]) -> Optional[str]:
    """Standard vectors over a crystal: injective leading terms, weight vectors, weights = character."""
    leads = set()
    weights: dict[Weight, int] = {}
    for J in crystal:
        v = standard_vector(J)
        lead_set, _ = v.leading_term()
        leads.add(lead_set)
        w = weight(J)
        if any(weight(K) != w for K in v.support()):
            return f"standard vector of {J} is not a weight vector"
        weights[w] = weights.get(w, 0) + 1
    if len(leads) != len(crystal):
        return "leading terms not injective"
    if weights != dict(character(crystal)):
        return "basis weights differ from character"
    return None


SUITES = ("theorem1", "prop3", "upinv", "character", "divided")


def run_suite(name: str, n=None, m=None, H=None, length=None, jobs=1,
              samples=0, seed=0) -> list[Report]:
    if name == "character":
        ns = (n,) if n is not None else (2, 3)
        return [sweep_generators(k, m or 0, length or DEFAULT_WORD_LENGTH) for k in ns]
    if name == "divided":
        ns = (n,) if n is not None else (2, 3)
        return [sweep_divided(k, m or 0, 7 if H is None else H, jobs) for k in ns]
    sweep = {"theorem1": sweep_roof_ceiling, "prop3": sweep_standard_vectors, "upinv": sweep_up_inverse}[name]
    if n is not None:
        params: Iterable = [(n, m or 0, DEFAULT_SUITES[0][2] if H is None else H)]
    else:
        params = DEFAULT_SUITES if H is None else [(a, b, H) for a, b, _ in DEFAULT_SUITES]
    reports = [sweep(a, b, c, jobs) for a, b, c in params]
    if name == "theorem1" and samples:
        for a, b, c in params:
            reports.append(sweep_roof_ceiling_random(a, b, max(c, 40), samples, seed, jobs))
    return reports
