"""Exact linear algebra over the rationals and prime fields.

Matrices coming out of cell complexes are integer valued. Ranks over the
rationals are computed with fraction-free (Bareiss) elimination; prime-field
ranks use ordinary Gaussian elimination on residues. The incremental
:class:`ColumnReducer` is the workhorse behind persistence, the spanning
acycle greedy and subset enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

#: Largest prime below 2**62; the fast-path modulus for rank computations.
BIG_PRIME = 4611686018427387847


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``order == 0``) or GF(order)."""

    order: int = 0

    def __post_init__(self):
        if self.order < 0 or (self.order and not _is_prime(self.order)):
            raise ValueError(f"field order must be prime, got {self.order}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, q: int) -> "Field":
        return cls(int(q))

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``Q`` or ``GFp:<q>``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls.rationals()
        if text.startswith("GFp:"):
            return cls.prime(int(text[4:]))
        raise ValueError(f"unknown field {text!r}; expected Q or GFp:<q>")

    @property
    def is_rational(self) -> bool:
        return self.order == 0

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"GFp:{self.order}"


QQ = Field.rationals()


def GF(q: int) -> Field:
    return Field.prime(q)


def as_dense(matrix) -> list[list]:
    """Coerce a numpy array, scipy sparse matrix or nested sequence to rows."""
    if hasattr(matrix, "toarray"):
        matrix = matrix.toarray()
    if isinstance(matrix, np.ndarray):
        if matrix.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        return [[int(v) if float(v).is_integer() else Fraction(v) for v in row] for row in matrix.tolist()]
    return [list(row) for row in matrix]


def _bareiss_rank(rows: list[list[int]]) -> int:
    a = [row[:] for row in rows]
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, m):
            arc = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col + 1, n):
                # exact division is the point of Bareiss
                row_r[c] = (row_r[c] * p - arc * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _mod_rank(rows: list[list[int]], q: int) -> int:
    a = [[v % q for v in row] for row in rows]
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, m) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, q)
        prow = [(v * inv) % q for v in a[rank]]
        a[rank] = prow
        for r in range(rank + 1, m):
            c = a[r][col]
            if c:
                a[r] = [(x - c * y) % q for x, y in zip(a[r], prow)]
        rank += 1
        if rank == m:
            break
    return rank


def _clear_denominators(rows: list[list]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def rank(matrix, field: Field = QQ) -> int:
    """Rank of ``matrix`` over ``field``.

    Over the rationals the computation is fraction-free Bareiss elimination on
    integers (rows with rational entries are scaled first); nothing touches
    floating point.

    >>> rank([[1, -1, 0], [-1, 0, 1], [0, 1, -1]])
    2
    """
    rows = as_dense(matrix)
    if not rows or not rows[0]:
        return 0
    if field.is_rational:
        return _bareiss_rank(_clear_denominators(rows))
    return _mod_rank(_clear_denominators(rows), field.order)


def nullspace_mod(rows: Sequence[Sequence[int]], ncols: int, q: int) -> list[list[int]]:
    """Basis of ``{x in GF(q)^ncols : A x = 0}`` from the reduced row echelon form."""
    a = [[v % q for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][col], -1, q)
        a[r] = [(v * inv) % q for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                c = a[i][col]
                a[i] = [(x - c * y) % q for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-a[i][f]) % q
        basis.append(v)
    return basis


def hadamard_bound(columns: Iterable[Mapping[int, int]], nrows: int) -> int:
    """Upper bound on |det| of every square submatrix of an integer matrix.

    Uses the product of the largest column norms (rounded up), taking as many
    columns as the largest possible minor.
    """
    norms = sorted(
        (math.isqrt(sum(int(v) * int(v) for v in col.values()) - 1) + 1 if col else 0 for col in columns),
        reverse=True,
    )
    bound = 1
    for nrm in norms[: min(nrows, len(norms))]:
        bound *= max(nrm, 1)
    return bound


def rank_field(columns: Sequence[Mapping[int, int]], nrows: int, field: Field) -> Field:
    """Field in which to run rank-only computations for ``field``.

    For the rationals returns GF(BIG_PRIME) when the Hadamard bound certifies
    that no nonzero minor can vanish modulo that prime, so ranks agree
    exactly. Otherwise the field itself.
    """
    if field.is_rational and hadamard_bound(columns, nrows) < BIG_PRIME:
        return Field(BIG_PRIME)
    return field


class ColumnReducer:
    """Incremental column echelon basis with stack-style undo.

    Columns are sparse dicts ``row -> value``. Each stored vector is
    normalised so that its pivot (largest row index) carries a 1; a new
    column is reduced by repeatedly cancelling its pivot entry. The
    reduction of a column that lies in the span is empty.
    """

    __slots__ = ("q", "basis", "_stack")

    def __init__(self, field: Field = QQ):
        self.q = field.order
        self.basis: dict[int, dict] = {}
        self._stack: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, column: Mapping[int, int]) -> dict:
        q = self.q
        if q:
            v = {r: c % q for r, c in column.items() if c % q}
        else:
            v = {r: Fraction(c) for r, c in column.items() if c}
        basis = self.basis
        while v:
            piv = max(v)
            b = basis.get(piv)
            if b is None:
                return v
            c = v[piv]
            for r, bv in b.items():
                if q:
                    nv = (v.get(r, 0) - c * bv) % q
                else:
                    nv = v.get(r, 0) - c * bv
                if nv:
                    v[r] = nv
                else:
                    v.pop(r, None)
        return v

    def push(self, column: Mapping[int, int]) -> bool:
        """Insert ``column``; returns whether it raised the rank."""
        v = self.reduce(column)
        if not v:
            return False
        piv = max(v)
        c = v[piv]
        if self.q:
            inv = pow(c, -1, self.q)
            v = {r: (x * inv) % self.q for r, x in v.items()}
        else:
            v = {r: x / c for r, x in v.items()}
        self.basis[piv] = v
        self._stack.append(piv)
        return True

    @property
    def last_pivot(self) -> int:
        """Pivot row of the most recently stored vector."""
        return self._stack[-1]

    def pop(self) -> None:
        """Undo the most recent successful :meth:`push`."""
        del self.basis[self._stack.pop()]

    def contains(self, column: Mapping[int, int]) -> bool:
        return not self.reduce(column)


def column_rank(columns: Iterable[Mapping[int, int]], field: Field = QQ) -> int:
    red = ColumnReducer(field)
    for col in columns:
        red.push(col)
    return red.rank
