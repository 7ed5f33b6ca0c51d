"""Divisor classes on the plane blown up at ``r`` points.

A class ``d e0 - m1 e1 - ... - mr er`` is stored as ``(d; m1, ..., mr)``.
The pairing has ``e0.e0 = 1``, ``ei.ei = -1`` and the canonical class is
``K = -3 e0 + e1 + ... + er``.

The Weyl group is generated by ``s0`` (the quadratic Cremona map, reflection
in ``e0 - e1 - e2 - e3``) and ``s1, ..., s_{r-1}`` (reflection in
``e_i - e_{i+1}``, which swaps the two points).  Reducing a class means
sorting its multiplicities and applying ``s0`` until the three largest no
longer exceed the degree.  For generic points the dimension of the linear
system is read off the reduced class, which is how :func:`shgh_hilbert`
predicts Hilbert functions.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .errors import InvalidInputError, ScopeError

SHGH_PROVEN_MAX_POINTS = 9
ENUMERATION_MAX_POINTS = 8


@dataclass(frozen=True)
class DivClass:
    d: int
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @property
    def r(self):
        return len(self.m)

    @classmethod
    def parse(cls, text: str) -> "DivClass":
        """Read ``"d;m1,m2,..."``; ``"10^5"`` inside the list repeats an entry."""
        text = text.strip()
        if ";" not in text:
            raise InvalidInputError(f"class {text!r}: expected 'd;m1,m2,...'")
        head, _, tail = text.partition(";")
        try:
            d = int(head)
            ms = []
            for tok in filter(None, re.split(r"[,\s]+", tail.strip())):
                val, _, rep = tok.partition("^")
                ms.extend([int(val)] * (int(rep) if rep else 1))
        except ValueError as exc:
            raise InvalidInputError(f"class {text!r}: {exc}") from None
        return cls(d, tuple(ms))

    @classmethod
    def e(cls, i, r) -> "DivClass":
        """The basis class ``e_i`` (``e0`` is the pullback of a line)."""
        if i == 0:
            return cls(1, (0,) * r)
        if not 1 <= i <= r:
            raise InvalidInputError(f"e{i} does not exist for r = {r}")
        return cls(0, tuple(-1 if j == i - 1 else 0 for j in range(r)))

    def __add__(self, other):
        _same_r(self, other)
        return DivClass(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __neg__(self):
        return DivClass(-self.d, tuple(-x for x in self.m))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return DivClass(k * self.d, tuple(k * x for x in self.m))

    def __str__(self):
        coeffs = [(0, self.d)] + [(i + 1, -x) for i, x in enumerate(self.m)]
        parts = []
        for i, c in coeffs:
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+") + f"{mag}e{i}")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    def semicolon(self):
        return f"{self.d};" + ",".join(str(x) for x in self.m)


def _same_r(a, b):
    if a.r != b.r:
        raise InvalidInputError(f"classes live on different blowups (r = {a.r} vs {b.r})")


def pairing(a: DivClass, b: DivClass) -> int:
    _same_r(a, b)
    return a.d * b.d - sum(x * y for x, y in zip(a.m, b.m))


def canonical(r) -> DivClass:
    return DivClass(-3, (-1,) * r)


def _root(i, r) -> DivClass:
    if i == 0:
        if r < 3:
            raise InvalidInputError("s0 needs at least three points")
        return DivClass(1, (1, 1, 1) + (0,) * (r - 3))
    if not 1 <= i <= r - 1:
        raise InvalidInputError(f"generator s{i} does not exist for r = {r}")
    return DivClass(0, tuple(-1 if j == i - 1 else 1 if j == i else 0 for j in range(r)))


def weyl_apply(i, x: DivClass) -> DivClass:
    """``s_i(x) = x + (x . n_i) n_i``."""
    n = _root(i, x.r)
    return x + n.scale(pairing(x, n))


def apply_word(word, x: DivClass) -> DivClass:
    """Apply generators in the order listed (first entry acts first)."""
    for i in word:
        x = weyl_apply(i, x)
    return x


def _sort_word(m):
    """Adjacent swaps that sort ``m`` descending (stable, so ties keep index order)."""
    m = list(m)
    word = []
    for end in range(len(m) - 1, 0, -1):
        for j in range(end):
            if m[j] < m[j + 1]:
                m[j], m[j + 1] = m[j + 1], m[j]
                word.append(j + 1)
    return word


@dataclass(frozen=True)
class ReductionStep:
    generator: int
    result: DivClass


def cremona_reduce(D: DivClass, with_steps=False):
    """Return ``(reduced, word)``; ``apply_word(word, D) == reduced``.

    Each round sorts the multiplicities descending (recording the swaps),
    stops if the degree is negative or ``m1 + m2 + m3 <= d``, and otherwise
    applies ``s0``.  While ``d >= 0`` each ``s0`` lowers ``d`` strictly, so the
    loop ends.  Classes with fewer than three points are only sorted.
    """
    x = D
    word, steps = [], []

    def push(i):
        nonlocal x
        x = weyl_apply(i, x)
        word.append(i)
        steps.append(ReductionStep(i, x))

    while True:
        for i in _sort_word(x.m):
            push(i)
        if x.r < 3 or x.d < 0 or sum(x.m[:3]) <= x.d:
            break
        push(0)
    if with_steps:
        return x, tuple(word), tuple(steps)
    return x, tuple(word)


def expected_dimension(D: DivClass) -> int:
    """``(D.D - K.D)/2 + 1 = C(d+2, 2) - sum m(m+1)/2``, valid for all signs."""
    return (D.d + 2) * (D.d + 1) // 2 - sum(x * (x + 1) // 2 for x in D.m)


@dataclass(frozen=True)
class SHGHReport:
    value: int
    final: DivClass          # class whose expected dimension was taken
    passes: int              # reduce-and-strip rounds
    conjectural: bool


def shgh_report(multiplicities, t, allow_conjectural=False) -> SHGHReport:
    """Predicted ``dim I(Z)_t`` for generic points with the given multiplicities.

    Reduce, drop negative multiplicities (they are fixed exceptional
    components), and repeat until nothing changes; the answer is the
    expected dimension of the final class, or 0 if the degree went negative.
    A pass without any ``s0`` only permutes entries and cannot create new
    negatives, so every pass but the last lowers ``d``; the loop stops.  Fewer than three points are padded with multiplicity 0 so
    that the line through two points is visible to ``s0``.
    """
    ms = tuple(int(x) for x in multiplicities)
    r = len(ms)
    conjectural = r > SHGH_PROVEN_MAX_POINTS
    if conjectural and not allow_conjectural:
        raise ScopeError(f"the prediction is only a theorem for r <= {SHGH_PROVEN_MAX_POINTS}; "
                         f"got r = {r}")
    x = DivClass(int(t), tuple(max(0, v) for v in ms) + (0,) * max(0, 3 - r))
    passes = 0
    while True:
        passes += 1
        x, _ = cremona_reduce(x)
        if x.d < 0:
            return SHGHReport(0, x, passes, conjectural)
        if all(v >= 0 for v in x.m):
            break
        x = DivClass(x.d, tuple(max(0, v) for v in x.m))
    return SHGHReport(max(0, expected_dimension(x)), x, passes, conjectural)


def shgh_hilbert(multiplicities, t, allow_conjectural=False) -> int:
    return shgh_report(multiplicities, t, allow_conjectural).value


def shgh_alpha(multiplicities, allow_conjectural=False, t_max=None) -> int:
    """Least ``t`` with a positive prediction."""
    ms = tuple(multiplicities)
    # a curve of degree sum(m) always exists (a union of lines through each point)
    t_max = sum(ms) if t_max is None else t_max
    for t in range(t_max + 1):
        if shgh_hilbert(ms, t, allow_conjectural) > 0:
            return t
    raise InvalidInputError(f"no positive value for t <= {t_max}")


# ---------------------------------------------------------------------------
# exceptional classes


def _exceptional_normal_form(r):
    return DivClass(0, (0,) * (r - 1) + (-1,))


def exceptional_test(C: DivClass) -> bool:
    """Whether ``C`` lies in the Weyl orbit of ``e1``.

    Requires ``C.C = C.K = -1``; the class must then reduce to some ``e_i``,
    which after sorting is ``(0; 0, ..., 0, -1)``.  Fewer than three points
    are handled on the blowup at three points.
    """
    if C.r < 1:
        return False
    if C.r < 3:
        C = DivClass(C.d, C.m + (0,) * (3 - C.r))
    if pairing(C, C) != -1 or pairing(C, canonical(C.r)) != -1:
        return False
    reduced, _ = cremona_reduce(C)
    return reduced == _exceptional_normal_form(C.r)


def _sort_key(c: DivClass):
    return (c.d, tuple(-x for x in c.m))


def enumerate_exceptional(r) -> list:
    """All classes in the orbit of ``e1``, by breadth-first search.

    The orbit is finite only for ``r <= 8``.  For ``r < 3`` the search runs
    on three points and keeps the classes not involving the extra ones.
    Sorted by degree, then by multiplicity vector descending.
    """
    if r < 1:
        raise InvalidInputError("need at least one point")
    if r > ENUMERATION_MAX_POINTS:
        raise ScopeError(f"the orbit of e1 is infinite for r >= 9 (got r = {r})")
    rr = max(r, 3)
    start = [DivClass.e(i, rr) for i in range(1, rr + 1)]
    seen = set(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for i in range(rr):
            y = weyl_apply(i, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    out = [DivClass(c.d, c.m[:r]) for c in seen if all(v == 0 for v in c.m[r:])]
    return sorted(out, key=_sort_key)
