"""Tutte polynomials of cell complexes and the exact expected lifetime sum.

Everything here is driven by one pass of :func:`enumerate_betti_profile`
over all subsets of ``ell``-cells; the profile is cached per complex.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .complex import CellComplex
from .enumeration import BettiProfile, enumerate_betti_profile
from .homology import rho
from .linalg import QQ, Field
from .polynomials import BivariatePoly, UnivariatePoly


@lru_cache(maxsize=64)
def betti_profile(X: CellComplex, ell: int, field: Field = QQ, cap: int | None = None) -> BettiProfile:
    return enumerate_betti_profile(X, ell, field, cap=cap)


def tutte_polynomial(
    X: CellComplex, ell: int, *, reduced: bool = True, field: Field = QQ, cap: int | None = None
) -> BivariatePoly:
    """``sum_F (x-1)^b_(ell-1)(X_F) (y-1)^b_ell(X_F)`` in the monomial basis.

    ``reduced=False`` uses plain Betti numbers; the two differ only for
    ``ell = 1``.

    >>> from acyclica.complex import simplicial_skeleton
    >>> str(tutte_polynomial(simplicial_skeleton(4, 2), 2))
    'x^3 + x^2 + x + y'
    """
    prof = betti_profile(X, ell, field, cap)
    return BivariatePoly.from_shifted(prof.pair_counts(reduced))


def spanning_acycle_count(X: CellComplex, ell: int, *, field: Field = QQ, cap: int | None = None) -> int:
    """Number of ``ell``-spanning acycles, i.e. the reduced Tutte polynomial at ``(1, 1)``."""
    return int(tutte_polynomial(X, ell, field=field, cap=cap).evaluate(1, 1))


def expected_betti_polynomial(X: CellComplex, ell: int, *, field: Field = QQ, cap: int | None = None) -> UnivariatePoly:
    """Mean reduced ``(ell-1)``-Betti number of the Bernoulli complex with parameter ``t``."""
    prof = betti_profile(X, ell, field, cap)
    n = prof.n_cells
    t = UnivariatePoly((0, 1))
    one_minus_t = UnivariatePoly((1, -1))
    out = UnivariatePoly(())
    for k, b in enumerate(prof.lower_sums(reduced=True)):
        if b:
            out = out + (t**k) * (one_minus_t ** (n - k)) * b
    return out


def expected_lifetime_exact(X: CellComplex, ell: int, *, field: Field = QQ, cap: int | None = None) -> Fraction:
    """Exact mean lifetime sum of the ``ell``-Bernoulli process.

    Integrates the expected Betti curve term by term with the Beta integral
    ``int t^k (1-t)^(n-k) dt = k! (n-k)! / (n+1)!``.
    """
    prof = betti_profile(X, ell, field, cap)
    n = prof.n_cells
    denom = math.factorial(n + 1)
    num = sum(b * math.factorial(k) * math.factorial(n - k) for k, b in enumerate(prof.lower_sums(reduced=True)))
    return Fraction(num, denom)


def tutte_lifetime_identity_check(X: CellComplex, ell: int, t, *, field: Field = QQ) -> Fraction:
    """Residual of the Tutte logarithmic-derivative formula for the expected Betti number at ``t``."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("t must lie strictly between 0 and 1")
    T = tutte_polynomial(X, ell, field=field)
    x, y = 1 / t, 1 / (1 - t)
    denom = T.evaluate(x, y)
    if denom == 0:
        raise ArithmeticError("Tutte polynomial vanished at an interior point")
    rhs = (1 - t) / t * T.d_dx().evaluate(x, y) / denom
    return expected_betti_polynomial(X, ell, field=field)(t) - rhs


def laplace_identity_check(X: CellComplex, ell: int, t, w, *, field: Field = QQ) -> Fraction:
    """Residual of the Tutte expression for ``E[w^b_(ell-1)(X(t))]``."""
    t, w = Fraction(t), Fraction(w)
    if not 0 < t < 1 or w <= 0:
        raise ValueError("need 0 < t < 1 and w > 0")
    prof = betti_profile(X, ell, field)
    n = prof.n_cells
    K = prof.lower_kernel(True)
    lhs = Fraction(0)
    for k, row in enumerate(prof.counts):
        for r, c in enumerate(row):
            if c:
                lhs += c * t**k * (1 - t) ** (n - k) * w ** (K - r)
    y = 1 / (1 - t)
    T = tutte_polynomial(X, ell, field=field)
    rhs = y ** (-n) * (y - 1) ** rho(X, ell, field=field) * T.evaluate(1 + (1 - t) * w / t, y)
    return lhs - rhs
