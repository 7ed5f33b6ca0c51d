"""Macaulay's growth bound, O-sequences and lifting lex ideals to points.

The lifting works in the plane: from a differentiable 0-dimensional
O-sequence ``H`` with ``h_1 <= 3`` we keep, in each degree ``t``, the first
``(Delta H)_t`` monomials ``x1^t, x1^(t-1) x2, ...`` (the lex order has
``x2 > x1``, so these are the smallest ones), let ``J`` be the ideal of
everything else, and send each kept ``x1^a x2^b`` to the point ``[1:a:b]``.
The generator ``x1^a x2^b`` of ``J`` lifts to
``prod_{i<a} (x1 - i x0) * prod_{i<b} (x2 - i x0)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ClassificationError, FieldSizeError
from .exactlin import FieldSpec
from .ring import Form
from .scheme import FatPointScheme, ProjectivePoint


@dataclass(frozen=True)
class BinomialExpansion:
    h: int
    d: int
    terms: tuple   # ((m_d, d), (m_{d-1}, d-1), ..., (m_j, j))

    def value(self):
        return sum(comb(m, k) for m, k in self.terms)

    def __str__(self):
        return " + ".join(f"C({m},{k})" for m, k in self.terms)


def d_binomial_expansion(h, d) -> BinomialExpansion:
    """Greedy top-down expansion ``h = C(m_d, d) + C(m_{d-1}, d-1) + ...``."""
    if h < 1 or d < 1:
        raise ValueError("need h >= 1 and d >= 1")
    rem, k, terms = h, d, []
    while rem > 0:
        m = k
        while comb(m + 1, k) <= rem:
            m += 1
        terms.append((m, k))
        rem -= comb(m, k)
        k -= 1
    return BinomialExpansion(h, d, tuple(terms))


def macaulay_growth(h, d) -> int:
    """``h^<d>``: shift each term ``C(m, k)`` of the expansion to ``C(m+1, k+1)``."""
    if h == 0:
        return 0
    return sum(comb(m + 1, k + 1) for m, k in d_binomial_expansion(h, d).terms)


def _first_o_violation(seq):
    """Index of the first entry breaking the O-sequence rules, or None."""
    if not seq or seq[0] != 1:
        return 0
    for i, h in enumerate(seq):
        if h < 0:
            return i
    for d in range(1, len(seq) - 1):
        if seq[d + 1] > macaulay_growth(seq[d], d):
            return d + 1
    return None


@dataclass(frozen=True)
class Classification:
    kind: str                 # "not-O" | "O" | "differentiable-O"
    zero_dimensional: bool
    delta: tuple
    nondecreasing: bool
    violation: int | None     # first degree where a condition fails

    @property
    def is_o_sequence(self):
        return self.kind != "not-O"

    @property
    def is_differentiable(self):
        return self.kind == "differentiable-O"


def difference(seq):
    return tuple([seq[0]] + [b - a for a, b in zip(seq, seq[1:])]) if seq else ()


def classify_sequence(seq, eventually_constant=True) -> Classification:
    """Classify a Hilbert-function prefix.

    With ``eventually_constant`` the last entry repeats forever, so the
    difference sequence ends in zeros and the sequence is 0-dimensional.
    Otherwise only the prefix is checked and 0-dimensionality is not claimed.
    """
    seq = tuple(int(x) for x in seq)
    delta = difference(seq)
    nondecr = all(a <= b for a, b in zip(seq, seq[1:]))
    bad = _first_o_violation(seq)
    if bad is not None:
        return Classification("not-O", False, delta, nondecr, bad)
    zero_dim = eventually_constant
    bad = _first_o_violation(delta)
    kind = "differentiable-O" if bad is None else "O"
    return Classification(kind, zero_dim, delta, nondecr, bad)


@dataclass(frozen=True)
class GMRLift:
    delta: tuple
    kept: tuple                # exponent pairs (a1, a2) of the standard monomials
    lex_generators: tuple      # minimal generators of J as (a1, a2), x2-degree descending
    scheme: FatPointScheme
    lifted_generators: tuple   # Forms in x0, x1, x2

    def staircase(self) -> str:
        """ASCII staircase: ``*`` standard monomial, ``o`` generator of ``J``."""
        kept = set(self.kept)
        gens = set(self.lex_generators)
        width = max(a for a, _ in kept | gens) + 1
        height = max(b for _, b in kept | gens) + 1
        rows = []
        for b in reversed(range(height)):
            rows.append(" ".join("*" if (a, b) in kept else "o" if (a, b) in gens else "."
                                 for a in range(width)))
        return "\n".join(rows)


def lift_monomial(field, a1, a2) -> Form:
    x0, x1, x2 = (Form.variable(field, 3, i) for i in range(3))
    g = Form.constant(field, 3, 1)
    for i in range(a1):
        g = g * (x1 - x0 * i)
    for i in range(a2):
        g = g * (x2 - x0 * i)
    return g


def gmr_lift(seq, field: FieldSpec | None = None) -> GMRLift:
    """Points in the plane with Hilbert function ``seq`` (last entry repeats)."""
    field = field or FieldSpec.rational()
    cls = classify_sequence(seq)
    if not cls.is_o_sequence:
        raise ClassificationError(f"not an O-sequence at degree {cls.violation}", cls.violation)
    if not cls.is_differentiable:
        raise ClassificationError(f"not differentiable at degree {cls.violation}", cls.violation)
    if len(seq) > 1 and seq[1] > 3:
        raise ClassificationError("h_1 exceeds 3, so the points do not fit in the plane", 1)
    delta = [e for e in cls.delta]
    while delta and delta[-1] == 0:
        delta.pop()
    kept = [(t - k, k) for t, e in enumerate(delta) for k in range(e)]
    kept_set = set(kept)
    top = max(max(a, b) for a, b in kept)
    if field.is_prime and field.p <= top:
        raise FieldSizeError(f"GF({field.p}) cannot hold coordinates 0..{top}")

    def outside(a, b):
        return a >= 0 and b >= 0 and (a, b) not in kept_set

    # minimal generators: outside monomials whose divisors by x1 and x2 are all inside
    gens = []
    for b in range(len(delta) + 1):
        for a in range(len(delta) + 1 - b):
            if (a, b) in kept_set:
                continue
            if outside(a - 1, b) or outside(a, b - 1):
                continue
            gens.append((a, b))
    gens.sort(key=lambda g: (-g[1], g[0]))
    Z = FatPointScheme.build(field, [ProjectivePoint.of(field, (1, a, b)) for a, b in kept])
    lifted = tuple(lift_monomial(field, a, b) for a, b in gens)
    return GMRLift(tuple(cls.delta), tuple(kept), tuple(gens), Z, lifted)
