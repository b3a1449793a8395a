"""Semi-infinite integer sets and their order structure.

A set J is stored canonically as ``(n, tail, above)``: J contains every
integer ``<= tail`` together with the finitely many integers in ``above``,
and ``tail + 1`` is never in J.  Equality of sets is therefore structural
equality of the triple.

Enumerations follow the convention ``J = {... < j_{-2} < j_{-1} < j_0}``,
so index 0 is the largest element.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=False)
class IntegerSet:
    n: int
    tail: int
    above: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"modulus must be >= 2, got {self.n}")
        if not isinstance(self.above, tuple):
            object.__setattr__(self, "above", tuple(self.above))
        prev = self.tail + 1
        for x in self.above:
            if x <= prev:
                raise ValueError(f"non-canonical set: tail={self.tail}, above={self.above}")
            prev = x

    def __contains__(self, x: int) -> bool:
        if x <= self.tail:
            return True
        i = bisect_left(self.above, x)
        return i < len(self.above) and self.above[i] == x

    def __str__(self):
        return format_set(self)

    @property
    def top(self) -> int:
        """Largest element."""
        return self.above[-1] if self.above else self.tail

    def elements_from(self, lo: int) -> list[int]:
        """All elements >= lo, ascending."""
        out = list(range(lo, self.tail + 1))
        out.extend(x for x in self.above if x >= lo)
        return out

    def count_between(self, lo: int, hi: int) -> int:
        """Number of elements x with lo < x < hi (assumes lo >= tail)."""
        return bisect_left(self.above, hi) - bisect_left(self.above, lo + 1)

    def descending(self, k: int) -> list[int]:
        """The k largest elements j_0, j_{-1}, ..., j_{-k+1}."""
        out = list(reversed(self.above[-k:])) if k else []
        x = self.tail
        while len(out) < k:
            out.append(x)
            x -= 1
        return out

    def move(self, remove: int, insert: int) -> IntegerSet:
        """J \\ remove U insert."""
        els = [x for x in self.above if x != remove]
        tail = self.tail
        if remove <= tail:
            els.extend(range(remove + 1, tail + 1))
            tail = remove - 1
        els.append(insert)
        return canonicalize(self.n, tail, els)

    def shift(self, c: int) -> IntegerSet:
        return IntegerSet(self.n, self.tail + c, tuple(x + c for x in self.above))


def canonicalize(n: int, tail: int, elements: Iterable[int]) -> IntegerSet:
    """Normal form of ``Z_{<=tail} U elements``."""
    els = sorted({x for x in elements if x > tail})
    i = 0
    while i < len(els) and els[i] == tail + 1:
        tail += 1
        i += 1
    return IntegerSet(n, tail, tuple(els[i:]))


def half_line(n: int, m: int) -> IntegerSet:
    """The set Z_{<=m}, the highest-weight element of order m."""
    return IntegerSet(n, m, ())


def order(J: IntegerSet) -> int:
    return J.tail + len(J.above)


def height(J: IntegerSet) -> int:
    m = order(J)
    k = len(J.above)
    # only the top k entries are displaced from m+i
    return sum(x - (t - k + 1) - m for t, x in enumerate(J.above))


def is_n_bounded(J: IntegerSet) -> bool:
    prev = J.tail
    for x in J.above:
        if x - prev > J.n:
            return False
        prev = x
    return True


def is_n_stable(J: IntegerSet) -> bool:
    return all((x - J.n) in J for x in J.above)


def loose_ends(J: IntegerSet) -> list[int]:
    return [x for x in J.above if (x - J.n) not in J]


def tight_ends(J: IntegerSet) -> list[int]:
    lo = J.tail + 1
    return [x for x in range(lo, J.top + J.n + 1) if x not in J and (x - J.n) in J]


def seams(J: IntegerSet) -> list[tuple[int | None, int]]:
    """Maximal step-n progressions as ``(bottom, top)`` pairs, sorted by top.

    ``bottom`` is None for the n infinite seams running down into the tail.
    """
    n = J.n
    out = []
    for top in J.elements_from(J.tail - n + 1):
        if top + n in J:
            continue
        x = top
        while x - n in J and x - n > J.tail:
            x -= n
        out.append((None if x - n in J else x, top))
    return out


def bruhat_leq(K: IntegerSet, J: IntegerSet) -> bool:
    """Componentwise comparison k_i <= j_i of equal-order sets; False if orders differ."""
    if K.n != J.n or order(K) != order(J):
        return False
    k = max(len(K.above), len(J.above)) + 1
    return all(a <= b for a, b in zip(K.descending(k), J.descending(k)))


def lex_compare(K: IntegerSet, J: IntegerSet) -> int:
    """-1, 0 or 1 as K is lex-smaller, equal or larger than J.

    The first differing entry from the bottom decides; equivalently K < J
    iff the minimum of the symmetric difference lies in K.
    """
    if K.n != J.n or order(K) != order(J):
        raise ValueError("lex order compares sets of equal order only")
    if K == J:
        return 0
    lo = min(K.tail, J.tail) + 1
    hi = max(K.top, J.top)
    for x in range(lo, hi + 1):
        a, b = x in K, x in J
        if a != b:
            return -1 if a else 1
    raise AssertionError("unreachable: distinct sets of equal order")


def simple_reflection(i: int, J: IntegerSet) -> IntegerSet:
    """Apply s_i: j -> j+1 for j = i mod n, j -> j-1 for j = i+1 mod n."""
    n = J.n
    i %= n
    # pairs (i+kn, i+1+kn) partition Z; below lo every pair lies inside the tail
    lo = J.tail - 1 - ((J.tail - 1 - i) % n)
    out = []
    for x in J.elements_from(lo):
        r = x % n
        if r == i:
            out.append(x + 1)
        elif r == (i + 1) % n:
            out.append(x - 1)
        else:
            out.append(x)
    return canonicalize(n, lo - 1, out)


def weyl_apply(word: Sequence[int], J: IntegerSet) -> IntegerSet:
    """Apply s_{w_1} ... s_{w_t}; the rightmost letter acts first."""
    for i in reversed(word):
        J = simple_reflection(i, J)
    return J


def to_partition(J: IntegerSet) -> tuple[int, ...]:
    """Partition with lambda_{i+1} = j_{-i} - m + i (parts sum to the height)."""
    m = order(J)
    k = len(J.above)
    return tuple(x - m + i for i, x in enumerate(J.descending(k)) if x - m + i > 0)


def from_partition(parts: Sequence[int], m: int, n: int) -> IntegerSet:
    parts = list(parts)
    if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"not a partition: {parts}")
    els = [m - i + p for i, p in enumerate(parts)]
    return canonicalize(n, m - len(parts), els)


# -- serialization -------------------------------------------------------

_LITERAL = re.compile(r"^\s*n=(\d+);<=(-?\d+);([-\d,\s]*)$")


def format_set(J: IntegerSet) -> str:
    return f"n={J.n};<={J.tail};" + ",".join(map(str, J.above))


def parse_set(text: str) -> IntegerSet:
    """Parse ``n=<n>;<=<tail>;<e1>,<e2>,...`` into canonical form."""
    mt = _LITERAL.match(text)
    if not mt:
        raise ValueError(f"bad set literal: {text!r}")
    body = mt.group(3).strip()
    els = [int(tok) for tok in body.split(",") if tok.strip()] if body else []
    return canonicalize(int(mt.group(1)), int(mt.group(2)), els)


def set_to_json(J: IntegerSet) -> str:
    return json.dumps({"n": J.n, "tail": J.tail, "above": list(J.above)})


def set_from_json(data: str | dict) -> IntegerSet:
    if isinstance(data, str):
        data = json.loads(data)
    return canonicalize(int(data["n"]), int(data["tail"]), [int(x) for x in data["above"]])
