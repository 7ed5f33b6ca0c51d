"""Exact dense linear algebra over the rationals and prime fields.

Every dimension count in the package goes through :func:`rank` or
:func:`nullspace_basis`.  Nothing here ever rounds.

Rational matrices are eliminated fraction-free (Bareiss) for ranks and by
Gauss-Jordan over :class:`fractions.Fraction` when an explicit basis is
needed.  Prime-field matrices with ``p < 2**31`` are reduced with numpy
``int64`` row operations (every intermediate product stays below 2**62);
larger primes fall back to Python integers.  Pivots are always the first
nonzero entry scanning columns left to right, then rows top to bottom, so
outputs are reproducible bit-for-bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

RATIONAL = "rational"
PRIME = "prime"

# p*p must fit in int64 for the vectorised path
_NUMPY_PRIME_LIMIT = 2**31


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: ``kind`` is ``"rational"`` or ``"prime"``."""

    kind: str = RATIONAL
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.p is not None:
                raise ValueError("a rational field takes no modulus")
        elif self.kind == PRIME:
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls):
        return cls(RATIONAL)

    @classmethod
    def prime(cls, p):
        return cls(PRIME, int(p))

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == PRIME:
            return cls.prime(int(obj["p"]))
        return cls(kind)

    def to_json(self):
        return {"kind": self.kind, "p": self.p} if self.is_prime else {"kind": self.kind}

    @property
    def is_prime(self):
        return self.kind == PRIME

    @property
    def characteristic(self):
        return self.p if self.is_prime else 0

    def __str__(self):
        return f"GF({self.p})" if self.is_prime else "QQ"

    # -- scalars -----------------------------------------------------------

    def element(self, x):
        """Coerce an int, Fraction or decimal/fraction string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.is_prime:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a, b):
        return a * b % self.p if self.is_prime else a * b

    def neg(self, a):
        return -a % self.p if self.is_prime else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.is_prime else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k):
        return pow(a, k, self.p) if self.is_prime else a**k

    def format(self, a):
        """Render an element the way the JSON files spell coordinates."""
        if self.is_prime:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


@lru_cache(maxsize=None)
def _is_prime(p):
    return p > 1 and bool(isprime(p))


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with entries already coerced into ``field``."""

    field: FieldSpec
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, field, rows: Iterable[Sequence], ncols=None):
        rows = tuple(tuple(field.element(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged rows")
        return cls(field, rows, ncols)

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, tuple((field.zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(
            field,
            tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)),
            n,
        )

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def transpose(self):
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols))
        return ExactMatrix(self.field, cols, self.nrows)

    def apply(self, v):
        """Return the product ``M v`` as a tuple."""
        F = self.field
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        if F.is_prime:
            return tuple(sum(a * b for a, b in zip(row, v)) % F.p for row in self.rows)
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)

    def stack(self, other):
        if other.ncols != self.ncols or other.field != self.field:
            raise ValueError("cannot stack incompatible matrices")
        return ExactMatrix(self.field, self.rows + other.rows, self.ncols)


# ---------------------------------------------------------------------------
# elimination kernels


def _rref_numpy(rows, ncols, p):
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    nrows = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in A[:r]], pivots


def _rref_python(rows, ncols, F: FieldSpec):
    A = [list(row) for row in rows]
    nrows = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        piv = A[r]
        for i in range(nrows):
            f = A[i][c]
            if i != r and f != 0:
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], piv)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _bareiss_rank(rows, ncols):
    """Rank of a rational matrix by fraction-free elimination over Z."""
    A = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        A.append([int(x * den) for x in row])
    nrows = len(A)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            A[i] = [(piv * x - a_ic * y) // prev for x, y in zip(A[i], A[r])]
        prev = piv
        r += 1
    return r


def rref(M: ExactMatrix):
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    if M.nrows == 0 or M.ncols == 0:
        return [], []
    F = M.field
    if F.is_prime and F.p < _NUMPY_PRIME_LIMIT:
        return _rref_numpy(M.rows, M.ncols, F.p)
    return _rref_python(M.rows, M.ncols, F)


def rank(M: ExactMatrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if not M.field.is_prime:
        return _bareiss_rank(M.rows, M.ncols)
    return len(rref(M)[1])


def nullspace_basis(M: ExactMatrix) -> list[tuple]:
    """Basis of ``{v : M v = 0}``, one vector per free column.

    The vector for free column ``j`` has a 1 in position ``j`` and zeros in
    every other free position.
    """
    F = M.field
    n = M.ncols
    reduced, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for j in range(n):
        if j in pivset:
            continue
        v = [F.zero] * n
        v[j] = F.one
        for row, c in zip(reduced, pivots):
            v[c] = F.neg(F.element(row[j]))
        basis.append(tuple(v))
    return basis


def in_row_span(M: ExactMatrix, v) -> bool:
    """True when ``v`` is a linear combination of the rows of ``M``."""
    extended = M.stack(ExactMatrix(M.field, (tuple(v),), M.ncols))
    return rank(extended) == rank(M)


class EchelonBasis:
    """Incrementally grown row space with membership tests.

    Keeps a reduced echelon basis so each new vector costs one reduction
    pass.  Used to pick generators degree by degree.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self._rows: dict[int, list] = {}  # pivot column -> normalised row

    def __len__(self):
        return len(self._rows)

    def reduce(self, v):
        F = self.field
        w = list(v)
        for c, row in self._rows.items():
            f = w[c]
            if f != 0:
                w = [F.sub(x, F.mul(f, y)) for x, y in zip(w, row)]
        return w

    def add(self, v) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        F = self.field
        w = self.reduce(v)
        c = next((i for i, x in enumerate(w) if x != 0), None)
        if c is None:
            return False
        inv = F.inv(w[c])
        w = [F.mul(x, inv) for x in w]
        for k, row in self._rows.items():
            f = row[c]
            if f != 0:
                self._rows[k] = [F.sub(x, F.mul(f, y)) for x, y in zip(row, w)]
        self._rows[c] = w
        return True

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def basis(self):
        return [tuple(self._rows[c]) for c in sorted(self._rows)]


def solve(M: ExactMatrix, b):
    """One solution ``x`` of ``M x = b`` (free variables set to 0), or None."""
    F = M.field
    aug = ExactMatrix(F, tuple(row + (F.element(v),) for row, v in zip(M.rows, b)), M.ncols + 1)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [F.zero] * M.ncols
    for row, c in zip(reduced, pivots):
        x[c] = F.element(row[-1])
    return tuple(x)
