"""Local invariants of plane curves: multiplicity, tangents, intersection numbers.

``I_p(F, G)`` is the limit over ``m`` of ``Lambda_m``, the dimension of the
degree-``t`` part of ``R / ((F, G) + I(p)^m)`` for large ``t``.  Once
``t >= deg F + deg G + m`` that graded piece is isomorphic to
``A / ((f, g) + M^m)`` with ``A`` the polynomial ring of the affine chart at
``p``, ``f, g`` the local expansions and ``M`` the maximal ideal of ``p``, so
the default route computes the smaller local quotient.  ``method="graded"``
evaluates the literal degree-``t`` definition instead.

``Lambda_m`` is nondecreasing in ``m``, and ``Lambda_m == Lambda_{m+1}``
forces ``M^m`` into ``(f, g)`` by Nakayama's lemma, so the first repeat is
the final value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from . import exactlin
from .errors import BudgetExceededError, InvalidInputError
from .exactlin import ExactMatrix, FieldSpec
from .ring import Form, local_expansion, monomial_basis, normalize_coords
from .scheme import FatPointScheme, ProjectivePoint, conditions_matrix


def _check_plane(F):
    if F.nvars != 3 or not F.is_homogeneous():
        raise InvalidInputError("expected a homogeneous form in x0, x1, x2")


def multiplicity_at(F: Form, p) -> int:
    """Largest ``m`` with ``F`` in ``I(p)^m``."""
    if F.is_zero():
        raise InvalidInputError("the zero form has no multiplicity")
    return local_expansion(F, _coords(p)).low_degree


def _coords(p):
    return p.coords if isinstance(p, ProjectivePoint) else tuple(p)


@dataclass(frozen=True)
class TangentCone:
    form: Form        # binary form in the chart coordinates at the point
    chart: int

    @property
    def degree(self):
        return self.form.degree


def tangent_cone(F: Form, p) -> TangentCone:
    """Lowest-degree part of the local expansion of ``F`` at ``p``."""
    if F.is_zero():
        raise InvalidInputError("the zero form has no tangent cone")
    chart, _ = normalize_coords(F.field, _coords(p))
    f = local_expansion(F, _coords(p))
    return TangentCone(f.homogeneous_part(f.low_degree), chart)


def _binary_coeffs(h: Form):
    """Coefficients of ``h(X, 1)`` from low to high power of ``X``."""
    k = h.degree
    return [h.terms.get((i, k - i), h.field.zero) for i in range(k + 1)]


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(F, a, b):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        q = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(q, c))
        _trim(a)
    return a


def _poly_gcd_degree(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(F, a, b)
    return len(a) - 1


def binary_forms_share_root(g: Form, h: Form) -> bool:
    """Whether two nonzero binary forms have a common linear factor over the closure."""
    a, b = _binary_coeffs(g), _binary_coeffs(h)
    # both vanish at [X:Y] = [1:0] exactly when both top coefficients are zero
    if a[-1] == 0 and b[-1] == 0:
        return True
    return _poly_gcd_degree(g.field, a, b) >= 1


def common_tangent(F: Form, G: Form, p) -> bool:
    return binary_forms_share_root(tangent_cone(F, p).form, tangent_cone(G, p).form)


# ---------------------------------------------------------------------------
# common factors


def _multiplication_columns(A: Form, k):
    """Images ``mu * A`` for the monomials ``mu`` of degree ``k`` (three variables)."""
    fld = A.field
    return [A * Form(fld, 3, {mu: fld.one}) for mu in monomial_basis(2, k)]


def common_factor(F: Form, G: Form):
    """The gcd of two plane forms as a Form (a constant 1 if coprime).

    Uses linear algebra only: the gcd degree is the largest ``h`` for which
    ``A F = B G`` has a nonzero solution with ``deg A = deg G - h`` and
    ``deg B = deg F - h``; at that ``h`` the solution is ``(G/H, F/H)``.
    """
    _check_plane(F)
    _check_plane(G)
    fld = F.field
    a, b = F.degree, G.degree
    for h in range(min(a, b), 0, -1):
        target = a + b - h
        cols = [f.to_vector(2, target) for f in _multiplication_columns(F, b - h)]
        cols += [(-g).to_vector(2, target) for g in _multiplication_columns(G, a - h)]
        M = ExactMatrix(fld, tuple(zip(*cols)), len(cols))
        kernel = exactlin.nullspace_basis(M)
        if not kernel:
            continue
        v = kernel[0]
        nA = comb(b - h + 2, 2)
        A = Form.from_vector(fld, 2, b - h, v[:nA])
        # solve H * A = G for H in R_h
        cols = [c.to_vector(2, b) for c in _multiplication_columns(A, h)]
        Mh = ExactMatrix(fld, tuple(zip(*cols)), len(cols))
        sol = exactlin.solve(Mh, G.to_vector(2, b))
        if sol is None:
            raise InvalidInputError("gcd reconstruction failed")
        return Form.from_vector(fld, 2, h, sol)
    return Form.constant(fld, 3, 1)


def check_no_common_factor_at(F: Form, G: Form, p):
    H = common_factor(F, G)
    if H.degree > 0 and H.evaluate(_coords(p)) == 0:
        raise InvalidInputError(f"F and G share the factor {H}, which vanishes at the point")


# ---------------------------------------------------------------------------
# Lambda_m


def _jet_vector(f: Form, m, index):
    v = [f.field.zero] * len(index)
    for e, c in f.terms.items():
        if sum(e) < m:
            v[index[e]] = c
    return v


def local_quotient_dimension(F: Form, G: Form, p, m) -> int:
    """``dim A / ((f, g) + M^m)`` in the affine chart at ``p``."""
    fld = F.field
    f = local_expansion(F, _coords(p))
    g = local_expansion(G, _coords(p))
    basis = monomial_basis(2, m - 1, affine=True)
    index = {b: i for i, b in enumerate(basis)}
    vecs = []
    for h in (f, g):
        for mu in basis:
            shifted = Form(fld, 2, {tuple(x + y for x, y in zip(e, mu)): c
                                    for e, c in h.terms.items() if sum(e) + sum(mu) < m},
                           homogeneous=False)
            vecs.append(tuple(_jet_vector(shifted, m, index)))
    r = exactlin.rank(ExactMatrix(fld, tuple(vecs), len(basis)))
    return len(basis) - r


def graded_quotient_dimension(F: Form, G: Form, p, m, t) -> int:
    """``dim R_t / ((F, G) + I(p)^m)_t``, straight from the definition.

    ``R_t / I(p)^m_t`` is identified with the local coefficients of order
    ``< m`` through the conditions matrix, valid for ``t >= m - 1``.
    """
    if t < m - 1:
        raise InvalidInputError("need t >= m - 1")
    fld = F.field
    Z = FatPointScheme.build(fld, [_coords(p)], [m])
    C = conditions_matrix(Z, t)
    images = []
    for H in (F, G):
        k = t - H.degree
        if k < 0:
            continue
        for mu in monomial_basis(2, k):
            images.append(C.apply((H * Form(fld, 3, {mu: fld.one})).to_vector(2, t)))
    if not images:
        return C.nrows
    return C.nrows - exactlin.rank(ExactMatrix(fld, tuple(images), C.nrows))


@dataclass(frozen=True)
class IntersectionResult:
    value: int
    trace: tuple   # (m, Lambda_m) pairs


def intersection_multiplicity(F: Form, G: Form, p, method="local", m_budget=None,
                              with_trace=False):
    """``I_p(F, G)`` for plane forms without a common factor through ``p``.

    ``method`` is ``"local"`` (default) or ``"graded"``; the graded route
    evaluates ``t = t0, t0 + 1, ...`` with ``t0 = deg F + deg G + m`` until two
    consecutive values agree.  ``m`` runs up to ``deg F * deg G + 2``.
    """
    _check_plane(F)
    _check_plane(G)
    if F.is_zero() or G.is_zero():
        raise InvalidInputError("forms must be nonzero")
    coords = _coords(p)
    trace = []
    if F.evaluate(coords) != 0 or G.evaluate(coords) != 0:
        res = IntersectionResult(0, ())
        return res if with_trace else res.value
    check_no_common_factor_at(F, G, coords)
    a, b = F.degree, G.degree
    m_budget = a * b + 2 if m_budget is None else m_budget
    prev = None
    for m in range(1, m_budget + 1):
        if method == "local":
            lam = local_quotient_dimension(F, G, coords, m)
        elif method == "graded":
            t = a + b + m
            lam = graded_quotient_dimension(F, G, coords, m, t)
            while True:
                t += 1
                nxt = graded_quotient_dimension(F, G, coords, m, t)
                if nxt == lam:
                    break
                lam = nxt
        else:
            raise InvalidInputError(f"unknown method {method!r}")
        trace.append((m, lam))
        if lam == prev:
            res = IntersectionResult(lam, tuple(trace))
            return res if with_trace else res.value
        prev = lam
    raise BudgetExceededError(f"Lambda_m did not stabilise for m <= {m_budget}",
                              reached=m_budget, trace=trace)


def projective_plane_points(field: FieldSpec):
    """Every point of the projective plane over a prime field, normalised."""
    if not field.is_prime:
        raise InvalidInputError("exhaustive scans need a finite field")
    q = field.p
    for a, b in itertools.product(range(q), repeat=2):
        yield (1, a, b)
    for b in range(q):
        yield (0, 1, b)
    yield (0, 0, 1)


MAX_SCAN_PRIME = 101


@dataclass(frozen=True)
class BezoutCheck:
    multiplicities: tuple   # ((point coords, I_p), ...) over common zeros
    total: int
    expected: int

    @property
    def equal(self):
        return self.total == self.expected


def bezout_sum_check(F: Form, G: Form, candidate_points=None, method="local") -> BezoutCheck:
    """Sum ``I_p(F, G)`` over the common zeros among ``candidate_points``.

    Without candidates the whole plane over ``GF(p)`` is scanned, allowed
    for ``p <= 101``.  ``equal`` is False when zeros lie outside the list
    (for instance over an extension field).
    """
    fld = F.field
    if candidate_points is None:
        if not fld.is_prime or fld.p > MAX_SCAN_PRIME:
            raise InvalidInputError(
                f"exhaustive scan needs a prime field with p <= {MAX_SCAN_PRIME}")
        candidate_points = projective_plane_points(fld)
    seen = set()
    rows = []
    for p in candidate_points:
        _, c = normalize_coords(fld, _coords(p))
        if c in seen:
            continue
        seen.add(c)
        if F.evaluate(c) != 0 or G.evaluate(c) != 0:
            continue
        rows.append((c, intersection_multiplicity(F, G, c, method=method)))
    total = sum(v for _, v in rows)
    return BezoutCheck(tuple(rows), total, F.degree * G.degree)
