"""The ``ell``-Bernoulli cell complex process and its persistence.

A :class:`Filtration` assigns a birth time to every ``ell``-cell (and,
optionally, to every ``(ell-1)``-cell; by default those are present from
time 0). Lifetime sums in degree ``ell - 1`` come out of three independent
routes: the barcode, the integral of the Betti curve, and the minimum
spanning acycle.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .complex import CellComplex
from .homology import betti
from .linalg import BIG_PRIME, QQ, ColumnReducer, Field


class HypothesisError(ValueError):
    """A Betti-number precondition of the spanning-acycle formula fails."""


def _fmt(t) -> str:
    return str(t) if isinstance(t, (Fraction, int)) else repr(float(t))


@dataclass(frozen=True, eq=False)
class Filtration:
    """Birth times for the cells of one step of the process.

    ``birth[i]`` is the time the ``i``-th ``ell``-cell appears; ``lower``
    optionally gives times for the ``(ell-1)``-cells (default all 0). Lower
    dimensional cells are always present at time 0. Times are Fractions in
    exact work and floats in Monte Carlo work.
    """

    complex: CellComplex
    ell: int
    birth: tuple
    lower: tuple | None = None
    T: object = 1

    def __post_init__(self):
        X, ell = self.complex, self.ell
        if not 1 <= ell <= X.dim:
            raise ValueError(f"process degree {ell} out of range 1..{X.dim}")
        object.__setattr__(self, "birth", tuple(self.birth))
        if len(self.birth) != X.n(ell):
            raise ValueError(f"expected {X.n(ell)} birth times, got {len(self.birth)}")
        if self.lower is not None:
            object.__setattr__(self, "lower", tuple(self.lower))
            if len(self.lower) != X.n(ell - 1):
                raise ValueError(f"expected {X.n(ell - 1)} lower weights, got {len(self.lower)}")
        for name, times in (("birth", self.birth), ("lower", self.lower or ())):
            for i, t in enumerate(times):
                if not 0 <= t <= self.T:
                    raise ValueError(f"{name} time {t} of cell {i} outside [0, {self.T}]")
        if self.lower is not None:
            for j, col in enumerate(X.boundary(ell)):
                for r in col:
                    if self.lower[r] > self.birth[j]:
                        raise ValueError(f"{ell}-cell {j} is born before its face {r}")

    @property
    def lower_times(self) -> tuple:
        return self.lower if self.lower is not None else (0,) * self.complex.n(self.ell - 1)

    def order(self) -> list[int]:
        """``ell``-cells sorted by birth, ties broken by index."""
        return sorted(range(len(self.birth)), key=lambda i: (self.birth[i], i))

    def lower_order(self) -> list[int]:
        lt = self.lower_times
        return sorted(range(len(lt)), key=lambda i: (lt[i], i))


@dataclass(frozen=True)
class Barcode:
    """Birth/death pairs of reduced persistent homology in one degree."""

    pairs: tuple
    T: object = 1

    @property
    def lifetimes(self) -> list:
        return [d - b for b, d in self.pairs]

    def lifetime_sum(self):
        return sum(self.lifetimes, 0 * self.T)

    def deaths(self) -> list:
        return sorted(d for _, d in self.pairs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("birth,death\n")
        for b, d in self.pairs:
            buf.write(f"{_fmt(b)},{_fmt(d)}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class SpanningAcycle:
    """A set of ``ell``-cells forming a spanning acycle, with its total birth time."""

    cells: frozenset
    weight: object

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.cells)

    def to_csv(self, f: Filtration) -> str:
        buf = io.StringIO()
        buf.write("birth,death\n")
        for i in sorted(self.cells, key=lambda c: (f.birth[c], c)):
            buf.write(f"0,{_fmt(f.birth[i])}\n")
        return buf.getvalue()


def sample_process(
    X: CellComplex, ell: int, seed, *, exact: bool = False, resolution: int = 2**32
) -> Filtration:
    """Independent uniform birth times on the ``ell``-cells.

    ``exact=True`` draws Fractions ``k / resolution`` with ``k`` uniform in
    ``0..resolution`` so that all downstream arithmetic stays rational.
    """
    if not 1 <= ell <= X.dim:
        raise ValueError(f"process degree {ell} out of range 1..{X.dim}")
    rng = np.random.default_rng(seed)
    n = X.n(ell)
    if exact:
        ks = rng.integers(0, resolution, size=n, endpoint=True)
        births = tuple(Fraction(int(k), resolution) for k in ks)
        return Filtration(X, ell, births, T=Fraction(1))
    return Filtration(X, ell, tuple(float(v) for v in rng.random(n)), T=1.0)


def barcode(f: Filtration, field: Field = QQ) -> Barcode:
    """Reduced persistence pairs in degree ``ell - 1`` by column reduction.

    Positive ``(ell-1)``-cells (those creating a cycle) are found by reducing
    the augmented lower boundary in filtration order. The ``ell``-cell
    columns are then reduced in birth order; a surviving pivot pairs the
    youngest cycle-creating face with the cell that kills it. Unpaired
    positive cells become bars that end at ``T``.
    """
    X, ell = f.complex, f.ell
    lt = f.lower_times
    lorder = f.lower_order()
    pos = {c: i for i, c in enumerate(lorder)}

    lower_cols = X.augmented_boundary(ell - 1)
    red = ColumnReducer(field)
    positive = [c for c in lorder if not red.push(lower_cols[c])]

    red = ColumnReducer(field)
    cols = X.boundary(ell)
    killed: dict[int, int] = {}
    for j in f.order():
        col = {pos[r]: v for r, v in cols[j].items()}
        if red.push(col):
            killed[lorder[red.last_pivot]] = j
    pairs = []
    for c in positive:
        d = f.birth[killed[c]] if c in killed else f.T
        pairs.append((lt[c], d))
    pairs.sort(key=lambda bd: (bd[1], bd[0]))
    return Barcode(tuple(pairs), f.T)


def lifetime_sum(b: Barcode):
    return b.lifetime_sum()


def betti_curve(f: Filtration, field: Field = QQ) -> list[tuple]:
    """Step function ``[(t_i, beta_i)]``: reduced ``beta_(ell-1)`` on ``[t_i, t_(i+1))``."""
    X, ell = f.complex, f.ell
    lt = f.lower_times
    events = sorted(
        [(t, 0, i) for i, t in enumerate(lt)] + [(t, 1, j) for j, t in enumerate(f.birth)],
    )
    lower_cols = X.augmented_boundary(ell - 1)
    cols = X.boundary(ell)
    low, top = ColumnReducer(field), ColumnReducer(field)
    n_low = 0
    curve = []
    times = sorted(set([0] + [e[0] for e in events]))
    k = 0
    for t in times:
        while k < len(events) and events[k][0] <= t:
            _, kind, idx = events[k]
            if kind == 0:
                n_low += 1
                low.push(lower_cols[idx])
            else:
                top.push(cols[idx])
            k += 1
        curve.append((t, n_low - low.rank - top.rank))
    return curve


def lifetime_integral(f: Filtration, field: Field = QQ):
    """``int_0^T beta_(ell-1)(X(t)) dt`` evaluated exactly from the Betti step function."""
    curve = betti_curve(f, field)
    total = 0
    for (t0, b), nxt in zip(curve, curve[1:] + [(f.T, None)]):
        total += b * (nxt[0] - t0)
    return total


def _check(X: CellComplex, degree: int, skel: int, field: Field):
    if degree < -1:
        return
    if skel < 0:
        return
    value = betti(X.skeleton(skel), degree, field=field, reduced=True) if degree >= 0 else (1 if X.n(0) == 0 else 0)
    if value:
        raise HypothesisError(f"reduced Betti number b~_{degree}(X^{skel}) = {value} is nonzero")


def _greedy(columns: Sequence[dict], times: Sequence, field: Field) -> list[int]:
    red = ColumnReducer(field)
    chosen = []
    for i in sorted(range(len(times)), key=lambda i: (times[i], i)):
        if red.push(columns[i]):
            chosen.append(i)
    return chosen


def min_spanning_acycle(f: Filtration, field: Field = QQ) -> SpanningAcycle:
    """Minimum-weight ``ell``-spanning acycle by the matroid greedy on boundary columns."""
    X, ell = f.complex, f.ell
    _check(X, ell - 1, ell, field)
    _check(X, ell - 2, ell - 1, field)
    chosen = _greedy(X.boundary(ell), f.birth, field)
    return SpanningAcycle(frozenset(chosen), sum((f.birth[i] for i in chosen), 0 * f.T))


def max_lower_spanning_acycle(f: Filtration, field: Field = QQ):
    """Largest total lower weight outside an ``(ell-1)``-spanning acycle.

    Equals total lower weight minus a minimum-weight basis of the augmented
    ``(ell-1)``-boundary columns.
    """
    X, ell = f.complex, f.ell
    _check(X, ell - 2, ell - 1, field)
    _check(X, ell - 3, ell - 2, field)
    lt = f.lower_times
    if not any(lt):
        return 0 * f.T
    basis = _greedy(X.augmented_boundary(ell - 1), lt, field)
    return sum(lt, 0 * f.T) - sum((lt[i] for i in basis), 0 * f.T)


def msa_lifetime(f: Filtration, field: Field = QQ):
    """Lifetime sum via the spanning-acycle formula."""
    return min_spanning_acycle(f, field).weight - max_lower_spanning_acycle(f, field)


class MonteCarloEstimate(NamedTuple):
    mean: float
    stderr: float
    weights: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("trial,weight\n")
        for i, w in enumerate(self.weights):
            buf.write(f"{i},{w!r}\n")
        buf.write(f"summary,{self.mean!r},{self.stderr!r}\n")
        return buf.getvalue()


MC_FIELD = Field(BIG_PRIME)


def trial_births(n: int, seed: int, trial: int) -> np.ndarray:
    """Uniform birth times for one Monte Carlo trial; the stream depends only on ``(seed, trial)``."""
    return np.random.default_rng([int(seed), int(trial)]).random(n)


def _mc_chunk(args):
    X, ell, seed, lo, hi, field = args
    cols = X.boundary(ell)
    n = len(cols)
    out = []
    for trial in range(lo, hi):
        t = trial_births(n, seed, trial)
        chosen = _greedy(cols, t.tolist(), field)
        out.append(math.fsum(t[chosen]))
    return out


def mc_expected_lifetime(
    X: CellComplex,
    ell: int,
    trials: int,
    seed: int,
    *,
    field: Field = MC_FIELD,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Monte Carlo estimate of the expected lifetime sum of the ``ell``-Bernoulli process.

    Each trial draws its own stream from ``(seed, trial)`` and records the
    weight of the minimum spanning acycle. Ranks default to GF(p) with a
    62-bit prime ``p``; pass ``field=QQ`` for exact ranks.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    _check(X, ell - 1, ell, QQ)
    _check(X, ell - 2, ell - 1, QQ)
    if workers <= 1:
        weights = _mc_chunk((X, ell, seed, 0, trials, field))
    else:
        step = math.ceil(trials / workers)
        jobs = [(X, ell, seed, lo, min(lo + step, trials), field) for lo in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            weights = [w for part in pool.map(_mc_chunk, jobs) for w in part]
    mean = math.fsum(weights) / trials
    if trials > 1:
        var = math.fsum((w - mean) ** 2 for w in weights) / (trials - 1)
        se = math.sqrt(var / trials)
    else:
        se = float("nan")
    return MonteCarloEstimate(mean, se, tuple(weights))


__all__ = [
    "Barcode",
    "Filtration",
    "HypothesisError",
    "MonteCarloEstimate",
    "SpanningAcycle",
    "barcode",
    "betti_curve",
    "lifetime_integral",
    "lifetime_sum",
    "max_lower_spanning_acycle",
    "mc_expected_lifetime",
    "min_spanning_acycle",
    "msa_lifetime",
    "sample_process",
    "trial_births",
]
