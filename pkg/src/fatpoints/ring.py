"""Polynomial forms, monomial bases and local expansions at points.

Homogeneous forms live in ``n + 1`` variables ``x0, ..., xn``; affine
polynomials in ``n`` variables ``X1, ..., Xn``.  A :class:`Form` is a plain
map from exponent tuples to nonzero field elements.

Vanishing to order ``m`` at a point is always tested by shifting the point
to the origin of an affine chart and reading off low-degree coefficients,
never through partial derivatives, so the same code is valid in every
characteristic.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb

from .errors import InvalidInputError
from .exactlin import FieldSpec


@lru_cache(maxsize=None)
def _compositions(nparts, total):
    """Exponent tuples of length ``nparts`` summing to ``total``, lex-descending."""
    if nparts == 0:
        return ((),) if total == 0 else ()
    if nparts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(nparts - 1, total - first):
            out.append((first,) + rest)
    return tuple(out)


def monomial_basis(n, t, affine=False):
    """Monomials of ``R_t`` (``n + 1`` variables) or of ``A_{<=t}`` (``n`` variables).

    Graded lexicographic order: degree ascending in affine mode, and within
    a degree lexicographic with the first variable largest.  Both lists have
    ``C(t + n, n)`` entries.
    """
    if t < 0:
        return []
    if not affine:
        return list(_compositions(n + 1, t))
    return [m for k in range(t + 1) for m in _compositions(n, k)]


@lru_cache(maxsize=None)
def monomial_index(n, t):
    return {m: i for i, m in enumerate(monomial_basis(n, t))}


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class Form:
    """A polynomial over ``field`` in ``nvars`` variables.

    ``homogeneous`` only controls variable naming (``x0..`` versus ``X1..``);
    the actual homogeneity is checked by :meth:`is_homogeneous`.
    """

    field: FieldSpec
    nvars: int
    terms: dict = dc_field(default_factory=dict)
    homogeneous: bool = True

    @classmethod
    def from_terms(cls, field, nvars, terms, homogeneous=True):
        clean = {}
        for exp, c in dict(terms).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp, default=0) < 0:
                raise InvalidInputError(f"bad exponent {exp} for {nvars} variables")
            c = field.add(clean.get(exp, field.zero), field.element(c))
            if c == 0:
                clean.pop(exp, None)
            else:
                clean[exp] = c
        return cls(field, nvars, clean, homogeneous)

    @classmethod
    def variable(cls, field, nvars, i, homogeneous=True):
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {exp: field.one}, homogeneous)

    @classmethod
    def constant(cls, field, nvars, c=1, homogeneous=True):
        return cls.from_terms(field, nvars, {(0,) * nvars: c}, homogeneous)

    @classmethod
    def from_vector(cls, field, n, t, vector):
        """Form of degree ``t`` whose coefficients in ``monomial_basis(n, t)`` are ``vector``."""
        basis = monomial_basis(n, t)
        return cls(field, n + 1, {m: c for m, c in zip(basis, vector) if c != 0})

    @classmethod
    def linear(cls, field, coeffs):
        nv = len(coeffs)
        return cls.from_terms(
            field, nv, {tuple(1 if j == i else 0 for j in range(nv)): c for i, c in enumerate(coeffs)}
        )

    # -- arithmetic ---------------------------------------------------------

    def _like(self, terms):
        return Form(self.field, self.nvars, terms, self.homogeneous)

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return self._like(out)

    def __neg__(self):
        return self._like({e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, Form):
            c = F.element(other)
            if c == 0:
                return self._like({})
            return self._like({e: F.mul(v, c) for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Form.constant(self.field, self.nvars, 1, self.homogeneous)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def low_degree(self):
        """Least total degree of a term; -1 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k):
        return self._like({e: c for e, c in self.terms.items() if sum(e) == k})

    def evaluate(self, point):
        F = self.field
        total = F.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = F.mul(v, F.power(x, k))
            total = F.add(total, v)
        return total

    def to_vector(self, n, t):
        """Coefficients in ``monomial_basis(n, t)``; the form must live in ``R_t``."""
        idx = monomial_index(n, t)
        v = [self.field.zero] * len(idx)
        for e, c in self.terms.items():
            if e not in idx:
                raise InvalidInputError(f"monomial {e} is not of degree {t}")
            v[idx[e]] = c
        return v

    def var_names(self):
        if self.homogeneous:
            return [f"x{i}" for i in range(self.nvars)]
        return [f"X{i + 1}" for i in range(self.nvars)]

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.var_names()
        F = self.field
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            cs = F.format(c)
            if mono and cs == "1":
                parts.append(mono)
            elif mono and cs == "-1":
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def parse_coefficient_map(field, obj, nvars=None):
    """Build a form from ``{"a,b,c": "coeff", ...}`` (exponents comma separated)."""
    terms = {}
    for key, val in obj.items():
        exp = tuple(int(x) for x in re.split(r"[,\s]+", key.strip()) if x)
        terms[exp] = val
    if nvars is None:
        lens = {len(e) for e in terms}
        if len(lens) != 1:
            raise InvalidInputError("exponent strings have inconsistent lengths")
        nvars = lens.pop()
    return Form.from_terms(field, nvars, terms)


def dehomogenize(F: Form, chart=0) -> Form:
    """Set ``x_chart = 1`` (the map delta_t when ``chart == 0``)."""
    out = {}
    fld = F.field
    for e, c in F.terms.items():
        k = e[:chart] + e[chart + 1:]
        s = fld.add(out.get(k, fld.zero), c)
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return Form(fld, F.nvars - 1, out, homogeneous=False)


def homogenize(f: Form, t: int) -> Form:
    """Multiply each term by the power of ``x0`` bringing it to degree ``t``."""
    if f.degree > t:
        raise InvalidInputError(f"degree {f.degree} exceeds target {t}")
    return Form(f.field, f.nvars + 1, {(t - sum(e),) + e: c for e, c in f.terms.items()})


def normalize_coords(field, coords):
    """Scale so the first nonzero coordinate is 1; returns ``(chart, coords)``."""
    coords = tuple(field.element(c) for c in coords)
    chart = next((i for i, c in enumerate(coords) if c != 0), None)
    if chart is None:
        raise InvalidInputError("the zero tuple is not a projective point")
    inv = field.inv(coords[chart])
    return chart, tuple(field.mul(c, inv) for c in coords)


def shifted_coefficients(field, exponent, chart, coords, order):
    """Local coefficients of the monomial ``x^exponent`` at a normalised point.

    Returns ``{b: coeff}`` for every affine exponent ``b`` with ``|b| < order``
    in the chart coordinates ``X_j = x_j - p_j`` (``j != chart``).  Uses
    ``(X_j + p_j)^a = sum_b C(a, b) p_j^(a-b) X_j^b``.
    """
    a = exponent[:chart] + exponent[chart + 1:]
    p = coords[:chart] + coords[chart + 1:]
    out = {}
    for b in itertools.product(*(range(min(ai, order - 1) + 1) for ai in a)):
        if sum(b) >= order:
            continue
        c = field.one
        for ai, bi, pi in zip(a, b, p):
            if ai == bi:
                continue
            if pi == 0:
                c = field.zero
                break
            c = field.mul(c, field.mul(field.element(comb(ai, bi)), field.power(pi, ai - bi)))
        if c != 0:
            out[b] = c
    return out


def local_expansion(F: Form, coords) -> Form:
    """Expand ``F`` in coordinates centred at the point ``coords``.

    The chart is the first index with a nonzero coordinate.  The result is
    an affine polynomial whose least-degree part is the tangent cone.
    """
    fld = F.field
    chart, p = normalize_coords(fld, coords)
    order = max(F.degree, 0) + 1
    out = {}
    for e, c in F.terms.items():
        for b, v in shifted_coefficients(fld, e, chart, p, order).items():
            s = fld.add(out.get(b, fld.zero), fld.mul(c, v))
            if s == 0:
                out.pop(b, None)
            else:
                out[b] = s
    return Form(fld, F.nvars - 1, out, homogeneous=False)


def order_at(F: Form, coords) -> int:
    """Order of vanishing of ``F`` at the point (least degree of its expansion)."""
    return local_expansion(F, coords).low_degree


def linear_substitution(F: Form, matrix) -> Form:
    """``F(M x)``: replace ``x_i`` by ``sum_j M[i][j] x_j``."""
    fld = F.field
    images = [Form.linear(fld, row) for row in matrix]
    out = Form(fld, F.nvars, {})
    for e, c in F.terms.items():
        term = Form.constant(fld, F.nvars, c)
        for img, k in zip(images, e):
            if k:
                term = term * img**k
        out = out + term
    return out
