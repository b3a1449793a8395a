"""Exact arithmetic in the semi-infinite wedge.

Vectors are finite integer combinations of basis wedges, one per
IntegerSet.  Coefficients are Python ints, so nothing overflows.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import cmp_to_key
from math import factorial
from typing import Iterable, Mapping, Optional, Sequence

from .roof import UpStep, roof
from .sets import IntegerSet, bruhat_leq, format_set, is_n_bounded, lex_compare, parse_set


class FockVector:
    """Finitely supported map IntegerSet -> nonzero int.  Treated as immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[IntegerSet, int] | Iterable[tuple[IntegerSet, int]] = ()):
        acc: dict[IntegerSet, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for K, c in items:
            if c:
                acc[K] = acc.get(K, 0) + c
        self._terms = {K: c for K, c in acc.items() if c}

    @classmethod
    def basis(cls, J: IntegerSet) -> FockVector:
        return cls({J: 1})

    def items(self):
        return self._terms.items()

    def support(self) -> list[IntegerSet]:
        return list(self._terms)

    def coefficient(self, K: IntegerSet) -> int:
        return self._terms.get(K, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, FockVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: FockVector) -> FockVector:
        return FockVector(list(self.items()) + list(other.items()))

    def __neg__(self):
        return FockVector({K: -c for K, c in self.items()})

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (-other)

    def __mul__(self, k: int) -> FockVector:
        return FockVector({K: k * c for K, c in self.items()})

    __rmul__ = __mul__

    def exact_div(self, k: int) -> FockVector:
        out = {}
        for K, c in self.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} of {K} not divisible by {k}")
            out[K] = q
        return FockVector(out)

    def sorted_terms(self) -> list[tuple[IntegerSet, int]]:
        """Terms in lex-descending order of their keys."""
        keys = sorted(self._terms, key=cmp_to_key(lex_compare), reverse=True)
        return [(K, self._terms[K]) for K in keys]

    def leading_term(self) -> tuple[IntegerSet, int]:
        return self.sorted_terms()[0]

    def __repr__(self):
        return f"FockVector({len(self)} terms)"


def coefficient(v: FockVector, K: IntegerSet) -> int:
    return v.coefficient(K)


def e_prime_apply(p: int, q: int, v: FockVector) -> FockVector:
    """Move the wedge factor at q to the vacant position p < q, with the reordering sign."""
    if p >= q:
        raise ValueError(f"need p < q, got p={p}, q={q}")
    out: dict[IntegerSet, int] = {}
    for K, c in v.items():
        if q in K and p not in K:
            # p not in K forces p > tail, so everything strictly between is in `above`
            sign = -1 if K.count_between(p, q) % 2 else 1
            L = K.move(q, p)
            out[L] = out.get(L, 0) + sign * c
    return FockVector(out)


def e_hat_apply(p: int, q: int, v: FockVector, floor: Optional[IntegerSet] = None) -> FockVector:
    """Sum over k of e_prime_apply(p + nk, q + nk, v).

    With ``floor`` set, terms that no longer dominate it in Bruhat order are
    dropped; every later move only lowers a set, so those terms can never
    contribute to ``floor``'s coefficient.
    """
    if p >= q:
        raise ValueError(f"need p < q, got p={p}, q={q}")
    d = q - p
    out: dict[IntegerSet, int] = {}
    for K, c in v.items():
        n = K.n
        for x in K.above:
            if (x - q) % n:
                continue
            y = x - d
            if y in K:
                continue
            L = K.move(x, y)
            if floor is not None and not bruhat_leq(floor, L):
                continue
            sign = -1 if K.count_between(y, x) % 2 else 1
            out[L] = out.get(L, 0) + sign * c
    return FockVector(out)


def seam_groups(trace: Sequence[UpStep], n: int) -> list[list[UpStep]]:
    """Split a roof trace into runs pulling out one seam (p advancing by n)."""
    groups: list[list[UpStep]] = []
    for step in trace:
        if groups and step.p == groups[-1][-1].p + n:
            groups[-1].append(step)
        else:
            groups.append([step])
    return groups


def _require_bounded(J: IntegerSet):
    if not is_n_bounded(J):
        raise ValueError(f"not n-bounded: {J}")


def standard_vector(J: IntegerSet, floor: Optional[IntegerSet] = None) -> FockVector:
    """Apply the roof trace's operators to the roof wedge, first step outermost."""
    _require_bounded(J)
    top, trace = roof(J)
    v = FockVector.basis(top)
    for p, q in reversed(trace):
        v = e_hat_apply(p, q, v, floor)
    return v


def standard_coefficient(J: IntegerSet, K: IntegerSet) -> int:
    """Coefficient of the wedge K in standard_vector(J), expanding only terms above K."""
    return standard_vector(J, floor=K).coefficient(K)


def leading_coefficient_formula(J: IntegerSet) -> int:
    """|coefficient of J in standard_vector(J)| as a product of factorials over seams."""
    _require_bounded(J)
    _, trace = roof(J)
    out = 1
    for group in seam_groups(trace, J.n):
        for mu in Counter(q - p for p, q in group).values():
            out *= factorial(mu)
    return out


def divided_vector(J: IntegerSet) -> FockVector:
    """Divided-power variant: each seam's operators enter as E^mu / mu!."""
    _require_bounded(J)
    top, trace = roof(J)
    v = FockVector.basis(top)
    for group in reversed(seam_groups(trace, J.n)):
        p = group[0].p
        for d, mu in sorted(Counter(q - p0 for p0, q in group).items()):
            for _ in range(mu):
                v = e_hat_apply(p, p + d, v)
            v = v.exact_div(factorial(mu))
    return v


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def mod_p_reduce(v: FockVector, p: int) -> FockVector:
    """Coefficients reduced into 0..p-1; zero terms dropped."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FockVector({K: c % p for K, c in v.items()})


def residue_counts_above(J: IntegerSet, N: int) -> tuple[int, ...]:
    """(|J^{=i} cap (N, oo)|)_i."""
    counts = [0] * J.n
    for x in J.elements_from(N + 1):
        counts[x % J.n] += 1
    return tuple(counts)


# -- term dump ---------------------------------------------------------------

_TERM = re.compile(r"^\s*([+-]\d+)\s*\*\s*(\S.*?)\s*$")


def dump(v: FockVector) -> str:
    return "".join(f"{c:+d} * {format_set(K)}\n" for K, c in v.sorted_terms())


def parse_dump(text: str) -> FockVector:
    terms = []
    for line in text.splitlines():
        if not line.strip():
            continue
        mt = _TERM.match(line)
        if not mt:
            raise ValueError(f"bad term line: {line!r}")
        terms.append((parse_set(mt.group(2)), int(mt.group(1))))
    return FockVector(terms)
