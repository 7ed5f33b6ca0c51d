"""Fat point schemes in projective n-space and the invariants of their ideals.

A fat point scheme ``Z = m1 p1 + ... + mr pr`` is stored as a tuple of
normalised points plus their multiplicities.  ``I(Z)_t`` is the kernel of
the conditions matrix at degree ``t``: one row for every local coefficient
of degree ``< m_i`` at ``p_i`` and one column per monomial of degree ``t``.

"Generic" points are simulated by seeded random coordinates over a large
prime field.  Results obtained that way hold with high probability only;
the tests repeat every generic-point claim over independent seeds.
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import exactlin
from .errors import BudgetExceededError, InvalidInputError, InvariantViolation
from .exactlin import ExactMatrix, FieldSpec
from .ring import Form, monomial_basis, normalize_coords, shifted_coefficients

DEFAULT_PRIME = 2147483647
DEFAULT_DEGREE_BUDGET = 80


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of projective space, stored with first nonzero coordinate 1."""

    field: FieldSpec
    coords: tuple

    @classmethod
    def of(cls, field, coords):
        _, norm = normalize_coords(field, coords)
        return cls(field, norm)

    @property
    def n(self):
        return len(self.coords) - 1

    @property
    def chart(self):
        return next(i for i, c in enumerate(self.coords) if c != 0)

    def __str__(self):
        return "(" + ",".join(self.field.format(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class FatPointScheme:
    field: FieldSpec
    n: int
    points: tuple
    multiplicities: tuple

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise InvalidInputError("points and multiplicities differ in length")
        if any(int(m) != m or m < 1 for m in self.multiplicities):
            raise InvalidInputError("multiplicities must be positive integers")
        if any(p.n != self.n for p in self.points):
            raise InvalidInputError(f"every point needs {self.n + 1} coordinates")
        if len(set(p.coords for p in self.points)) != len(self.points):
            raise InvalidInputError("points must be distinct up to scaling")

    @classmethod
    def build(cls, field, points, multiplicities=None):
        pts = tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint.of(field, p)
                    for p in points)
        if not pts:
            raise InvalidInputError("need at least one point (or use FatPointScheme.empty)")
        if multiplicities is None:
            multiplicities = [1] * len(pts)
        elif isinstance(multiplicities, int):
            multiplicities = [multiplicities] * len(pts)
        return cls(field, pts[0].n, pts, tuple(int(m) for m in multiplicities))

    @classmethod
    def empty(cls, field, n=2):
        return cls(field, n, (), ())

    @classmethod
    def from_json(cls, obj):
        field = FieldSpec.from_json(obj.get("field", {"kind": "rational"}))
        pts = [[str(c) for c in p] for p in obj["points"]]
        Z = cls.build(field, pts, obj.get("multiplicities"))
        if "n" in obj and int(obj["n"]) != Z.n:
            raise InvalidInputError(f"n={obj['n']} does not match point length")
        return Z

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "points": [[self.field.format(c) for c in p.coords] for p in self.points],
            "multiplicities": list(self.multiplicities),
        }

    def with_multiplicity(self, m):
        """The uniform scheme ``m (p1 + ... + pr)``; its ideal is ``I^(m)``."""
        return FatPointScheme(self.field, self.n, self.points, (m,) * len(self.points))

    @property
    def total_multiplicity(self):
        return sum(self.multiplicities)

    @property
    def degree(self):
        """Number of conditions imposed: ``sum C(m_i + n - 1, n)``."""
        return sum(comb(m + self.n - 1, self.n) for m in self.multiplicities)


@dataclass(frozen=True)
class HilbertFunction:
    """``H_{R/I}`` up to stabilisation; the tail is constant.

    ``values[t]`` is ``H_{R/I}(t)`` for ``0 <= t <= t_stab``.
    """

    n: int
    values: tuple
    eventual_value: int
    t_stab: int

    def quotient(self, t):
        if t < 0:
            return 0
        return self.values[t] if t <= self.t_stab else self.eventual_value

    def ideal(self, t):
        if t < 0:
            return 0
        return comb(t + self.n, self.n) - self.quotient(t)

    def quotient_values(self, upto):
        return [self.quotient(t) for t in range(upto + 1)]

    def ideal_values(self, upto):
        return [self.ideal(t) for t in range(upto + 1)]

    def difference(self, upto=None):
        upto = self.t_stab + 1 if upto is None else upto
        h = self.quotient_values(upto)
        return [h[0]] + [h[t] - h[t - 1] for t in range(1, len(h))]


def random_generic_points(r, n, field: FieldSpec, seed=0, coord_range=10**6):
    """``r`` pseudo-random points, deterministic in ``seed``.

    Over a prime field coordinates are uniform; over the rationals they are
    integers in ``[-coord_range, coord_range]``.  Points are pairwise
    distinct and, in the plane, no three are collinear.  That is all that
    is certified; everything else is generic with high probability.
    """
    if r <= 0:
        raise InvalidInputError("need at least one point")
    rng = random.Random(seed)
    draw = (lambda: rng.randrange(field.p)) if field.is_prime else \
        (lambda: rng.randint(-coord_range, coord_range))
    pts = []
    seen = set()
    while len(pts) < r:
        coords = [draw() for _ in range(n + 1)]
        if all(c == 0 for c in coords):
            continue
        p = ProjectivePoint.of(field, coords)
        if p.coords in seen:
            continue
        if n == 2 and any(_det3(field, p.coords, a.coords, b.coords) == 0
                          for a, b in itertools.combinations(pts, 2)):
            continue
        pts.append(p)
        seen.add(p.coords)
    return pts


def _det3(F, a, b, c):
    m = F.mul
    terms = [
        m(a[0], F.sub(m(b[1], c[2]), m(b[2], c[1]))),
        F.neg(m(a[1], F.sub(m(b[0], c[2]), m(b[2], c[0])))),
        m(a[2], F.sub(m(b[0], c[1]), m(b[1], c[0]))),
    ]
    return F.add(F.add(terms[0], terms[1]), terms[2])


def cross(F, u, v):
    """Cross product; the point on two lines, or the line through two points."""
    return (
        F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
        F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
        F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])),
    )


def star_configuration(s, field: FieldSpec, seed=0):
    """``s`` random lines, no three concurrent, and their ``C(s, 2)`` crossings.

    Returns ``(lines, points)``; lines are coefficient triples and
    ``points[k]`` is the crossing of the k-th pair in
    ``itertools.combinations(range(s), 2)`` order.
    """
    rng = random.Random(seed)
    while True:
        lines = [tuple(field.element(rng.randrange(1, field.p) if field.is_prime
                                     else rng.randint(-1000, 1000)) for _ in range(3))
                 for _ in range(s)]
        if any(all(c == 0 for c in L) for L in lines):
            continue
        if s >= 3 and any(_det3(field, *trip) == 0 for trip in itertools.combinations(lines, 3)):
            continue
        if any(all(c == 0 for c in cross(field, a, b)) for a, b in itertools.combinations(lines, 2)):
            continue
        pts = [ProjectivePoint.of(field, cross(field, a, b))
               for a, b in itertools.combinations(lines, 2)]
        return lines, pts


# ---------------------------------------------------------------------------


def conditions_matrix(Z: FatPointScheme, t: int) -> ExactMatrix:
    """Linear conditions for ``F in R_t`` to lie in ``I(Z)``; kernel is ``I(Z)_t``."""
    F = Z.field
    cols = monomial_basis(Z.n, t)
    rows = []
    for p, m in zip(Z.points, Z.multiplicities):
        chart = p.chart
        local = monomial_basis(Z.n, m - 1, affine=True)
        block = [[F.zero] * len(cols) for _ in local]
        where = {b: i for i, b in enumerate(local)}
        for j, a in enumerate(cols):
            for b, c in shifted_coefficients(F, a, chart, p.coords, m).items():
                block[where[b]][j] = c
        rows.extend(tuple(r) for r in block)
    return ExactMatrix(F, tuple(rows), len(cols))


def hilbert(Z: FatPointScheme, t: int) -> int:
    """``H_I(t) = dim I(Z)_t``."""
    if t < 0:
        return 0
    return comb(t + Z.n, Z.n) - exactlin.rank(conditions_matrix(Z, t))


def hilbert_function(Z: FatPointScheme) -> HilbertFunction:
    """Compute ``H_{R/I(Z)}`` until it reaches ``deg Z``.

    It does so by ``t = sum m_i - 1`` at the latest; hitting that bound
    without stabilising raises :class:`InvariantViolation`.
    """
    target = Z.degree
    values = []
    bound = max(Z.total_multiplicity - 1, 0)
    for t in range(bound + 1):
        h = exactlin.rank(conditions_matrix(Z, t))
        values.append(h)
        if h == target:
            return HilbertFunction(Z.n, tuple(values), target, t)
    raise InvariantViolation(f"H_R/I did not reach {target} by degree {bound}")


def alpha(Z: FatPointScheme, cap=None) -> int:
    """Least degree of a nonzero form in ``I(Z)``.

    Searches ``t <= cap`` (default ``sum m_i``, where a form always exists).
    An empty scheme has ideal ``R`` and gets 0 with a warning.
    """
    if not Z.points:
        warnings.warn("alpha of the empty scheme is taken to be 0", stacklevel=2)
        return 0
    cap = Z.total_multiplicity if cap is None else cap
    target = Z.degree
    for t in range(cap + 1):
        if comb(t + Z.n, Z.n) > target:
            return t
        if hilbert(Z, t) > 0:
            return t
    raise BudgetExceededError(f"no form of degree <= {cap} in I(Z)", reached=cap)


@dataclass(frozen=True)
class WaldschmidtBracket:
    lower: Fraction
    upper: Fraction
    alphas: tuple        # alpha(I^(m)) for m = 1..m_max
    samples: tuple       # alpha(I^(m)) / m
    chudnovsky: Fraction  # conjectural lower bound, max over m

    @property
    def conjectural_lower(self):
        return max(self.lower, self.chudnovsky)


def waldschmidt_bracket(points, m_max, degree_budget=DEFAULT_DEGREE_BUDGET):
    """Rigorous bounds on the Waldschmidt constant from ``alpha(I^(m))``, ``m <= m_max``.

    ``upper = min alpha(I^(m))/m``; ``lower = max alpha(I^(m))/(m + n - 1)``.
    ``chudnovsky = max (alpha(I^(m)) + n - 1)/(m + n - 1)`` is only
    conjecturally a lower bound and is reported separately.
    """
    if m_max < 1:
        raise InvalidInputError("m_max must be at least 1")
    Z = points if isinstance(points, FatPointScheme) else FatPointScheme.build(
        points[0].field, points)
    n = Z.n
    alphas = []
    for m in range(1, m_max + 1):
        Zm = Z.with_multiplicity(m)
        try:
            a = alpha(Zm, cap=min(Zm.total_multiplicity, degree_budget))
        except BudgetExceededError as exc:
            raise BudgetExceededError(
                f"alpha(I^({m})) not found within degree budget {degree_budget}",
                reached=m) from exc
        alphas.append(a)
    samples = tuple(Fraction(a, m) for m, a in enumerate(alphas, start=1))
    lower = max(Fraction(a, m + n - 1) for m, a in enumerate(alphas, start=1))
    chud = max(Fraction(a + n - 1, m + n - 1) for m, a in enumerate(alphas, start=1))
    return WaldschmidtBracket(lower, min(samples), tuple(alphas), samples, chud)


def ideal_basis(Z: FatPointScheme, t: int) -> list:
    """Basis of ``I(Z)_t`` as coefficient vectors over ``monomial_basis(n, t)``."""
    return exactlin.nullspace_basis(conditions_matrix(Z, t))


def _multiply_by_variables(field, n, t, vectors):
    """Vectors of ``x_i * f`` in ``R_{t+1}`` for each ``f`` given in ``R_t``."""
    src = monomial_basis(n, t)
    dst = {m: i for i, m in enumerate(monomial_basis(n, t + 1))}
    out = []
    for v in vectors:
        for i in range(n + 1):
            w = [field.zero] * len(dst)
            for mono, c in zip(src, v):
                if c != 0:
                    shifted = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                    w[dst[shifted]] = c
            out.append(tuple(w))
    return out


def _greedy_independent(field, ncols, vectors):
    """Indices of a maximal independent subset, scanning ``vectors`` in order."""
    if not vectors:
        return []
    _, pivots = exactlin.rref(ExactMatrix(field, tuple(vectors), ncols).transpose())
    return pivots


def minimal_generators(Z: FatPointScheme, d_max=None) -> list:
    """A minimal homogeneous generating set of ``I(Z)``, found degree by degree.

    New generators in degree ``t`` complete ``R_1 I_{t-1}`` to ``I_t``.
    Past the regularity index plus one no new generators can appear, so the
    scan stops there even if ``d_max`` is larger.
    """
    d_max = Z.total_multiplicity if d_max is None else d_max
    F, n = Z.field, Z.n
    reg = hilbert_function(Z).t_stab + 1
    gens = []
    prev = []
    for t in range(min(d_max, reg) + 1):
        basis = ideal_basis(Z, t)
        if basis:
            lifted = _multiply_by_variables(F, n, t - 1, prev) if t > 0 else []
            ncols = comb(t + n, n)
            chosen = _greedy_independent(F, ncols, lifted + basis)
            for k in chosen:
                if k >= len(lifted):
                    gens.append(Form.from_vector(F, n, t, basis[k - len(lifted)]))
        prev = basis
    return gens


@dataclass(frozen=True)
class ContainmentResult:
    holds: bool
    direction: str
    degree: int | None = None     # first failing degree
    witness: Form | None = None   # element of the larger side missing from the smaller
    checked_through: int | None = None


ORDINARY_IN_SYMBOLIC = "ordinary-in-symbolic"   # I^r inside I^(m)
SYMBOLIC_IN_ORDINARY = "symbolic-in-ordinary"   # I^(m) inside I^r


def _ordinary_power_generators(gens, r):
    out = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), r):
        g = gens[combo[0]]
        for k in combo[1:]:
            g = g * gens[k]
        out.append(g)
    out.sort(key=lambda f: f.degree)
    return out


def _ordinary_power_span(F, n, t, products):
    """Spanning vectors of ``(I^r)_t`` from the generators of ``I^r``."""
    vecs = []
    for g in products:
        k = t - g.degree
        if k < 0:
            continue
        for mu in monomial_basis(n, k):
            mono = Form(F, n + 1, {mu: F.one})
            vecs.append(tuple((g * mono).to_vector(n, t)))
    return vecs


def containment_test(points, m, r, t_max=None, direction=ORDINARY_IN_SYMBOLIC):
    """Compare the ordinary power ``I^r`` with the symbolic power ``I^(m)``.

    ``I`` is the radical ideal of ``points``.  ``I^r`` is generated by
    ``r``-fold products of the minimal generators of ``I``.

    * ``ordinary-in-symbolic`` asks whether ``I^r`` is inside ``I^(m)``; it is
      enough to test each product of generators against the conditions of
      ``I^(m)``.  A failing product is returned as the witness.
    * ``symbolic-in-ordinary`` asks whether ``I^(m)`` is inside ``I^r``,
      comparing ``(I^(m))_t`` with ``(I^r)_t`` degree by degree.  ``I^(m)``
      is generated in degrees up to its regularity index plus one, so the
      scan stops there.

    ``t_max`` (default ``r * m * #points``) caps the degrees examined.
    """
    Z = points if isinstance(points, FatPointScheme) else FatPointScheme.build(
        points[0].field, points)
    Z = Z.with_multiplicity(1)
    F, n = Z.field, Z.n
    Zm = Z.with_multiplicity(m)
    t_max = r * m * len(Z.points) if t_max is None else t_max
    gens = minimal_generators(Z)
    products = _ordinary_power_generators(gens, r)

    if direction == ORDINARY_IN_SYMBOLIC:
        for g in products:
            t = g.degree
            if t > t_max:
                raise BudgetExceededError(
                    f"generator of I^{r} in degree {t} exceeds t_max={t_max}", reached=t_max)
            if any(c != 0 for c in conditions_matrix(Zm, t).apply(g.to_vector(n, t))):
                return ContainmentResult(False, direction, t, g, t)
        return ContainmentResult(True, direction, None, None,
                                 max((g.degree for g in products), default=0))

    if direction != SYMBOLIC_IN_ORDINARY:
        raise InvalidInputError(f"unknown direction {direction!r}")
    gen_bound = hilbert_function(Zm).t_stab + 1
    start = alpha(Zm)
    last = min(gen_bound, t_max)
    for t in range(start, last + 1):
        sym = ideal_basis(Zm, t)
        if not sym:
            continue
        span = _ordinary_power_span(F, n, t, products)
        ncols = comb(t + n, n)
        chosen = _greedy_independent(F, ncols, span + sym)
        extra = [k - len(span) for k in chosen if k >= len(span)]
        if extra:
            return ContainmentResult(False, direction, t,
                                     Form.from_vector(F, n, t, sym[extra[0]]), t)
    if gen_bound > t_max:
        raise BudgetExceededError(
            f"I^({m}) may have generators beyond t_max={t_max}", reached=t_max)
    return ContainmentResult(True, direction, None, None, last)
