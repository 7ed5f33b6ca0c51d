"""Reduction vectors of plane fat point schemes with respect to lines.

Residuating ``Z`` successively by lines ``L_0, L_1, ...`` produces a vector
``d`` of per-line degrees.  The antidiagonal dot counts of ``d`` bound the
Hilbert function of ``R/I(Z)`` from below, with equality when ``d`` is
strictly decreasing.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .errors import FieldSizeError, IncompleteCoverError, InvalidInputError
from .exactlin import FieldSpec
from .scheme import FatPointScheme, ProjectivePoint


def _c2(k):
    return comb(k, 2) if k >= 2 else 0


def is_strictly_decreasing(d):
    return all(a > b for a, b in zip(d, d[1:]))


def diag(d) -> tuple:
    """Dots on each antidiagonal of the left-aligned row diagram of ``d``.

    Row ``j`` holds ``d[j]`` dots; entry ``t`` counts the dots with
    ``row + column == t``.  Trailing zeros are dropped.
    """
    if any(x < 0 for x in d):
        raise InvalidInputError("reduction vector entries must be nonnegative")
    length = max((j + dj for j, dj in enumerate(d) if dj), default=0)
    out = [0] * length
    for j, dj in enumerate(d):
        for k in range(dj):
            out[j + k] += 1
    return tuple(out)


@dataclass(frozen=True)
class Bound:
    value: int
    exact: bool


def cht_lower_bound(d, t) -> Bound:
    """Sum of the first ``t + 1`` entries of ``diag(d)``.

    A lower bound for ``H_{R/I(Z)}(t)``; ``exact`` is set when ``d`` is
    strictly decreasing, in which case it is the value itself.
    """
    if t < 0:
        return Bound(0, is_strictly_decreasing(d))
    return Bound(sum(diag(d)[: t + 1]), is_strictly_decreasing(d))


def cht_upper_bound_terms(d, t):
    """``(C(t+2,2), C(t-s+2,2), [max(t-i-d_i+1, 0) ...])`` with ``s = len(d)``."""
    s = len(d)
    return _c2(t + 2), _c2(t - s + 2), [max(t - i - di + 1, 0) for i, di in enumerate(d)]


def cht_upper_bound(d, t) -> int:
    """The dimension count ``C(t+2,2) - C(t-s+2,2) - sum max(t-i-d_i+1, 0)``.

    Counts the dots of ``d`` inside the triangle of side ``t``; it bounds
    ``dim I(Z)_t`` from above and hence ``H_{R/I(Z)}(t)`` from below.
    """
    total, little, rows = cht_upper_bound_terms(d, t)
    return total - little - sum(rows)


def _pairing(F, line, coords):
    v = F.zero
    for a, x in zip(line, coords):
        v = F.add(v, F.mul(a, x))
    return v


@dataclass(frozen=True)
class Reduction:
    vector: tuple
    residuals: tuple   # multiplicity vectors Z_0, Z_1, ..., Z_s


def reduction_vector_of(Z: FatPointScheme, lines) -> Reduction:
    """Residuate ``Z`` by each line in turn.

    ``lines`` are coefficient triples ``(a0, a1, a2)`` or linear forms.
    ``d_j`` is the current multiplicity mass on ``L_j``; points on ``L_j``
    then drop one multiplicity.  The residual after the last line must be
    empty.
    """
    if Z.n != 2:
        raise InvalidInputError("reduction vectors are defined for the plane")
    F = Z.field
    coeffs = []
    for L in lines:
        if hasattr(L, "terms"):
            L = tuple(L.terms.get(tuple(1 if j == i else 0 for j in range(3)), F.zero)
                      for i in range(3))
        coeffs.append(tuple(F.element(c) for c in L))
    mult = list(Z.multiplicities)
    chain = [tuple(mult)]
    d = []
    for L in coeffs:
        on = [_pairing(F, L, p.coords) == 0 for p in Z.points]
        d.append(sum(m for m, hit in zip(mult, on) if hit))
        mult = [m - 1 if hit and m > 0 else m for m, hit in zip(mult, on)]
        chain.append(tuple(mult))
    survivors = [str(p) for p, m in zip(Z.points, mult) if m > 0]
    if survivors:
        raise IncompleteCoverError(
            "lines do not exhaust the scheme; surviving points: " + ", ".join(survivors),
            survivors)
    return Reduction(tuple(d), tuple(chain))


def configuration_from_vector(d, field: FieldSpec, seed=0) -> FatPointScheme:
    """Reduced points with ``d[i]`` points on the i-th of ``len(d)`` lines.

    Lines are ``x2 = c_i x0``; they all meet only at ``(0:1:0)``, which is
    never chosen because every point has ``x0 = 1``.  The ``c_i`` and the
    ``x1`` coordinates on each line are distinct and drawn from ``seed``.
    """
    d = tuple(int(x) for x in d)
    if not d or not is_strictly_decreasing(d) or d[-1] <= 0:
        raise InvalidInputError("need a strictly decreasing vector of positive integers")
    need = max(d[0], len(d))
    if field.is_prime and field.p < need:
        raise FieldSizeError(f"GF({field.p}) has fewer than {need} elements")
    rng = random.Random(seed)
    pool = field.p if field.is_prime else 10 * need + 100
    cs = rng.sample(range(pool), len(d))
    pts = []
    for c, di in zip(cs, d):
        for a in rng.sample(range(pool), di):
            pts.append(ProjectivePoint.of(field, (1, a, c)))
    return FatPointScheme.build(field, pts)


def dot_diagram(d) -> str:
    """ASCII picture of ``d``: bottom row is ``d[0]``, ``*`` per dot."""
    if not d:
        return ""
    return "\n".join(" ".join("*" * dj) for dj in reversed(d))
