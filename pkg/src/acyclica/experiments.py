"""Monte Carlo check of the finite-size lifetime bounds on cubical lattices."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .complex import cubical_lattice, spanning_acycle_size_cubical
from .filtration import mc_expected_lifetime
from .tutte import expected_lifetime_exact

#: Above this many ``ell``-cells the exact value is not attempted.
EXACT_LIMIT = 16


@dataclass(frozen=True)
class CubicalBoundsReport:
    ell: int
    n: int
    N: int
    m: int
    lower: Fraction
    upper: int
    mean: float | None
    stderr: float | None
    exact: Fraction | None
    passed: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in ("lower", "exact"):
            if d[key] is not None:
                d[key] = str(d[key])
        return d


def experiment_cubical_bounds(
    ell: int, n: int, trials: int, seed: int, *, workers: int = 1, exact: bool | None = None
) -> CubicalBoundsReport:
    """Compare the mean lifetime sum on ``[0, n]^(ell+1)`` with its finite-n bounds.

    The lower bound is ``N (N+1) / (2 (m+1))`` where ``N`` is the spanning
    acycle size and ``m`` the number of ``ell``-cells; the upper bound is the
    number of ``(ell-1)``-cells. ``passed`` asks that the estimate, widened by
    three standard errors, meets the interval (the exact value, if computed,
    must lie inside it outright).
    """
    if ell < 1 or n < 1:
        raise ValueError("need ell >= 1 and n >= 1")
    sides = (n,) * (ell + 1)
    X = cubical_lattice(sides, ell)
    N = spanning_acycle_size_cubical(sides)
    m = X.n(ell)
    lower = Fraction(N * (N + 1), 2 * (m + 1))
    upper = X.n(ell - 1)
    if exact is None:
        exact = m <= EXACT_LIMIT
    value = expected_lifetime_exact(X, ell) if exact else None
    mean = se = None
    ok = True
    if trials > 0:
        est = mc_expected_lifetime(X, ell, trials, seed, workers=workers)
        mean, se = est.mean, est.stderr
        slack = 3 * se if trials > 1 else 0.0
        ok = float(lower) - slack <= mean <= upper + slack
    if value is not None:
        ok = ok and lower <= value <= upper
    return CubicalBoundsReport(ell, n, N, m, lower, upper, mean, se, value, ok)


__all__ = ["CubicalBoundsReport", "experiment_cubical_bounds"]
