"""The ``ell``-random-cluster measure on the subsets of ``ell``-cells.

``mu(F)`` is proportional to ``p^|F| (1-p)^(n-|F|) q^beta_(ell-1)(X_F)``
with plain (non-reduced) Betti numbers over a chosen field. All tables are
exact rationals indexed by bitmask.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .complex import CellComplex
from .enumeration import check_cap, subset_ranks
from .homology import betti, boundary_kernel_dim, subset_rank
from .linalg import QQ, Field
from .tutte import tutte_polynomial

FKG_CAP = 12


@dataclass(frozen=True)
class RCParams:
    """Edge parameter ``p``, cluster weight ``q``, degree ``ell`` and Betti field."""

    p: Fraction
    q: Fraction
    ell: int
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.q <= 0:
            raise ValueError(f"q must be positive, got {self.q}")


@dataclass(frozen=True)
class RCDistribution:
    """Unnormalised weights and partition sum over all ``2^n`` subsets."""

    params: RCParams
    n_cells: int
    weights: tuple
    betti: tuple
    Z: Fraction

    def prob(self, mask: int) -> Fraction:
        return self.weights[mask] / self.Z

    def probabilities(self) -> list[Fraction]:
        return [w / self.Z for w in self.weights]

    def expect(self, values: Sequence) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, values)), Fraction(0)) / self.Z

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("mask,weight_numerator,weight_denominator,prob\n")
        for m, w in enumerate(self.weights):
            buf.write(f"{m},{w.numerator},{w.denominator},{w / self.Z}\n")
        return buf.getvalue()


def _popcounts(n: int) -> np.ndarray:
    m = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(m)
    for i in range(n):
        out += (m >> i) & 1
    return out


def lower_betti_table(X: CellComplex, ell: int, field: Field = QQ, cap: int | None = None) -> np.ndarray:
    """Plain ``beta_(ell-1)(X_F)`` for every mask ``F``."""
    ranks = subset_ranks(X, ell, field, cap=cap).astype(np.int64)
    return boundary_kernel_dim(X, ell - 1, field=field) - ranks


def rc_distribution(X: CellComplex, params: RCParams, *, cap: int | None = None) -> RCDistribution:
    """Exact ``ell``-random-cluster table."""
    n = X.n(params.ell)
    check_cap(n, cap)
    bet = lower_betti_table(X, params.ell, params.field, cap)
    sizes = _popcounts(n)
    p, q = params.p, params.q
    ppow = [p**k * (1 - p) ** (n - k) for k in range(n + 1)]
    qpow = {b: q**b for b in set(bet.tolist())}
    weights = tuple(ppow[k] * qpow[b] for k, b in zip(sizes.tolist(), bet.tolist()))
    return RCDistribution(params, n, weights, tuple(bet.tolist()), sum(weights, Fraction(0)))


def partition_function_tutte(X: CellComplex, params: RCParams) -> Fraction:
    """``Z_(p,q)`` from the plain Tutte polynomial; needs ``0 < p < 1``."""
    p, q, ell, field = params.p, params.q, params.ell, params.field
    if not 0 < p < 1:
        raise ValueError("the Tutte expression needs 0 < p < 1")
    T = tutte_polynomial(X, ell, reduced=False, field=field)
    Xl = X.skeleton(ell)
    r = subset_rank(X, ell, None, field)
    b_low = betti(Xl, ell - 1, field=field)
    b_top = betti(Xl, ell, field=field)
    return (p / (1 - p)) ** b_low * p**r * (1 - p) ** b_top * T.evaluate(1 + q * (1 - p) / p, 1 / (1 - p))


def rc_partition_identity_check(X: CellComplex, params: RCParams) -> Fraction:
    """Enumerated partition sum minus its Tutte-polynomial expression."""
    return rc_distribution(X, params).Z - partition_function_tutte(X, params)


def _integer_weights(X: CellComplex, params: RCParams, bet: np.ndarray) -> np.ndarray:
    """Weights proportional to ``mu`` as exact Python ints (object array)."""
    n = X.n(params.ell)
    p, q = params.p, params.q
    a, b = p.numerator, p.denominator
    c, d = q.numerator, q.denominator
    top = int(bet.max()) if bet.size else 0
    sizes = _popcounts(n).tolist()
    return np.array(
        [a**k * (b - a) ** (n - k) * c**beta * d ** (top - beta) for k, beta in zip(sizes, bet.tolist())],
        dtype=object,
    )


def betti_supermodularity_violations(
    X: CellComplex, ell: int, field: Field = QQ, *, cap: int | None = FKG_CAP
) -> list[tuple[int, int]]:
    """Pairs with ``b(Y & Y') + b(Y | Y') < b(Y) + b(Y')`` for plain ``beta_(ell-1)``."""
    n = X.n(ell)
    check_cap(n, cap, "subset pairs")
    bet = lower_betti_table(X, ell, field)
    masks = np.arange(1 << n)
    out = []
    for y in range(1 << n):
        other = masks[y:]
        bad = bet[y & other] + bet[y | other] < bet[y] + bet[other]
        out.extend((y, int(o)) for o in other[bad])
    return out


def fkg_lattice_check(X: CellComplex, params: RCParams, *, cap: int | None = FKG_CAP) -> list[tuple[int, int, str]]:
    """All unordered pairs ``(Y, Y')`` violating the FKG lattice inequality.

    Each entry is ``(Y, Y', kind)``; ``kind == "measure"`` flags
    ``mu(Y | Y') mu(Y & Y') < mu(Y) mu(Y')`` and ``kind == "betti"`` a failure
    of Betti supermodularity. Both lists are empty whenever ``q >= 1``.
    """
    n = X.n(params.ell)
    check_cap(n, cap, "subset pairs")
    bet = lower_betti_table(X, params.ell, params.field)
    w = _integer_weights(X, params, bet)
    masks = np.arange(1 << n)
    out: list[tuple[int, int, str]] = []
    for y in range(1 << n):
        other = masks[y:]
        lhs = w[y | other] * w[y & other]
        rhs = w[y] * w[other]
        bad = np.nonzero(lhs < rhs)[0]
        out.extend((y, int(other[i]), "measure") for i in bad)
    out.extend((a, b, "betti") for a, b in betti_supermodularity_violations(X, params.ell, params.field, cap=cap))
    return out


def up_set_indicator(generators: Iterable[int], n: int) -> np.ndarray:
    """0/1 indicator of the up-closure of ``generators`` in the subset lattice."""
    masks = np.arange(1 << n)
    ind = np.zeros(1 << n, dtype=np.int64)
    for g in generators:
        ind |= ((masks & g) == g).astype(np.int64)
    return ind


def random_increasing_function(n: int, rng: np.random.Generator) -> np.ndarray:
    """Nonnegative integer combination of random up-set indicators."""
    f = np.zeros(1 << n, dtype=np.int64)
    for _ in range(int(rng.integers(1, 4))):
        gens = [int(sum(1 << i for i in range(n) if rng.random() < 0.35)) for _ in range(int(rng.integers(1, 4)))]
        f += int(rng.integers(1, 4)) * up_set_indicator(gens, n)
    return f


def covariance(dist: RCDistribution, f: Sequence, g: Sequence) -> Fraction:
    """Exact ``mu(fg) - mu(f) mu(g)``."""
    fg = [a * b for a, b in zip(f, g)]
    return dist.expect(fg) - dist.expect(f) * dist.expect(g)


def positive_association_check(
    X: CellComplex, params: RCParams, trials: int, seed, *, cap: int | None = FKG_CAP
) -> Fraction:
    """Smallest covariance over ``trials`` random pairs of increasing functions."""
    n = X.n(params.ell)
    check_cap(n, cap)
    dist = rc_distribution(X, params)
    rng = np.random.default_rng(seed)
    worst = None
    for _ in range(trials):
        f = random_increasing_function(n, rng).tolist()
        g = random_increasing_function(n, rng).tolist()
        c = covariance(dist, f, g)
        worst = c if worst is None else min(worst, c)
    return worst


def spanning_acycle_masks(X: CellComplex, ell: int, field: Field = QQ) -> list[int]:
    """Masks ``F`` with vanishing reduced ``beta_ell`` and ``beta_(ell-1)``."""
    ranks = subset_ranks(X, ell, field).astype(np.int64)
    K = boundary_kernel_dim(X, ell - 1, reduced=True, field=field)
    sizes = _popcounts(X.n(ell))
    return [int(m) for m in np.nonzero((ranks == sizes) & (ranks == K))[0]]


def total_variation(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0)) / 2


def uniform_sa_limit_check(
    X: CellComplex, ell: int, schedule: Iterable[tuple], *, field: Field = QQ
) -> list[Fraction]:
    """Exact total-variation distance from ``mu_(p,q)`` to the uniform spanning-acycle measure."""
    sas = spanning_acycle_masks(X, ell, field)
    if not sas:
        raise ValueError("complex has no spanning acycles in this degree")
    n = X.n(ell)
    uniform = [Fraction(0)] * (1 << n)
    for m in sas:
        uniform[m] = Fraction(1, len(sas))
    out = []
    for p, q in schedule:
        dist = rc_distribution(X, RCParams(p, q, ell, field))
        out.append(total_variation(dist.probabilities(), uniform))
    return out


def geometric_schedule(kmax: int = 4) -> list[tuple[Fraction, Fraction]]:
    """``p = 10^-k, q = 10^-2k`` for ``k = 1..kmax``."""
    return [(Fraction(1, 10**k), Fraction(1, 10 ** (2 * k))) for k in range(1, kmax + 1)]


__all__ = [
    "RCDistribution",
    "RCParams",
    "betti_supermodularity_violations",
    "covariance",
    "fkg_lattice_check",
    "geometric_schedule",
    "partition_function_tutte",
    "positive_association_check",
    "random_increasing_function",
    "rc_distribution",
    "rc_partition_identity_check",
    "spanning_acycle_masks",
    "total_variation",
    "uniform_sa_limit_check",
    "up_set_indicator",
]
