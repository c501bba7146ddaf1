"""Subset enumeration of the ``ell``-cells with incremental ranks.

The walk is a depth-first traversal of the binary decision tree over the
``ell``-cells, highest index first, with child order reflected on alternate
branches. Its leaves come out in binary-reflected Gray code order, so
consecutive subsets differ in one cell, and the echelon basis is kept as a
stack: including a cell pushes its reduced column, backtracking pops it.

Once the running rank equals the rank of all columns, every extension has
that same rank and the whole subtree is emitted as one block.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .complex import CellComplex
from .homology import boundary_kernel_dim, mask_indices, subset_rank
from .linalg import QQ, ColumnReducer, Field, column_rank, rank_field

DEFAULT_CAP = 24


class CapExceededError(ValueError):
    """Exhaustive enumeration would exceed the configured size cap."""


def resolve_cap(cap: int | None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("ACYCLICA_CAP")
    return int(env) if env else DEFAULT_CAP


def check_cap(n: int, cap: int | None, what: str = "subsets") -> None:
    cap = resolve_cap(cap)
    if n > cap:
        raise CapExceededError(
            f"{n} cells means 2^{n} {what}, above the cap of {cap}; use Monte Carlo mode or raise the cap"
        )


@dataclass(frozen=True)
class Block:
    """All subsets ``mask | s`` with ``s`` ranging over subsets of cells ``0..free-1``.

    Every such subset has boundary rank ``rank``; ``free == 0`` is a single leaf.
    """

    mask: int
    free: int
    rank: int


def gray_walk(
    columns: Sequence[dict],
    field: Field,
    *,
    prune: bool = True,
    prefix: int = 0,
    depth: int | None = None,
) -> Iterator[Block]:
    """Yield :class:`Block` records covering every subset exactly once.

    ``prefix``/``depth`` restrict the walk to subsets whose cells
    ``depth..n-1`` agree with ``prefix``; this is how parallel workers split
    the tree.
    """
    n = len(columns)
    if depth is None:
        depth = n
    red = ColumnReducer(field)
    for i in mask_indices(prefix):
        red.push(columns[i])
    full = column_rank(columns, field) if prune else -1

    def walk(i: int, mask: int, reflected: bool):
        if i == 0:
            yield Block(mask, 0, red.rank)
            return
        if red.rank == full:
            yield Block(mask, i, red.rank)
            return
        j = i - 1
        for pos, bit in enumerate((1, 0) if reflected else (0, 1)):
            if bit:
                added = red.push(columns[j])
                yield from walk(j, mask | (1 << j), pos == 1)
                if added:
                    red.pop()
            else:
                yield from walk(j, mask, pos == 1)

    yield from walk(depth, prefix, False)


def _boundary_setup(X: CellComplex, ell: int, field: Field):
    if not 1 <= ell <= X.dim:
        raise ValueError(f"degree {ell} out of range 1..{X.dim}")
    cols = X.boundary(ell)
    return cols, rank_field(cols, X.n(ell - 1), field)


def _count_worker(args):
    cols, wfield, prefix, depth, prune = args
    n = len(cols)
    counts = [[0] * (n + 1) for _ in range(n + 1)]
    for b in gray_walk(cols, wfield, prune=prune, prefix=prefix, depth=depth):
        base = bin(b.mask).count("1")
        for j in range(b.free + 1):
            counts[base + j][b.rank] += math.comb(b.free, j)
    return counts


def rank_size_counts(
    X: CellComplex,
    ell: int,
    field: Field = QQ,
    *,
    cap: int | None = None,
    workers: int = 1,
    split_bits: int = 0,
    prune: bool = True,
) -> list[list[int]]:
    """``counts[k][r]`` = number of ``k``-subsets of ``ell``-cells whose boundary has rank ``r``.

    ``workers > 1`` fans the walk out over ``2**split_bits`` prefixes of the
    top cells; per-worker tables are summed in prefix order.
    """
    cols, wfield = _boundary_setup(X, ell, field)
    n = len(cols)
    check_cap(n, cap)
    if workers <= 1 and split_bits <= 0:
        return _count_worker((cols, wfield, 0, n, prune))
    b = min(max(split_bits, int(math.log2(max(workers, 1))) + 2), n)
    jobs = [(cols, wfield, top << (n - b), n - b, prune) for top in range(1 << b)]
    if workers <= 1:
        parts = list(map(_count_worker, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_worker, jobs))
    total = [[0] * (n + 1) for _ in range(n + 1)]
    for part in parts:
        for k in range(n + 1):
            for r in range(n + 1):
                total[k][r] += part[k][r]
    return total


def subset_ranks(X: CellComplex, ell: int, field: Field = QQ, *, cap: int | None = None) -> np.ndarray:
    """Boundary rank of every subset of ``ell``-cells, indexed by bitmask."""
    cols, wfield = _boundary_setup(X, ell, field)
    n = len(cols)
    check_cap(n, cap)
    out = np.zeros(1 << n, dtype=np.int16)
    for b in gray_walk(cols, wfield):
        out[b.mask : b.mask + (1 << b.free)] = b.rank
    return out


def naive_subset_ranks(X: CellComplex, ell: int, field: Field = QQ) -> np.ndarray:
    """Reference implementation: an independent rank computation per subset."""
    n = X.n(ell)
    return np.array([subset_rank(X, ell, m, field) for m in range(1 << n)], dtype=np.int16)


@dataclass(frozen=True)
class BettiProfile:
    """Aggregated Betti data over all subsets ``F`` of ``ell``-cells.

    ``counts[k][r]`` counts ``k``-subsets with boundary rank ``r``.
    ``kernel`` and ``kernel_reduced`` are ``dim ker`` of the plain and
    augmented boundary out of degree ``ell - 1``; then
    ``beta_(ell-1)(X_F) = kernel - r`` and ``beta_ell(X_F) = |F| - r``.
    """

    ell: int
    n_cells: int
    counts: tuple[tuple[int, ...], ...]
    kernel: int
    kernel_reduced: int

    def lower_kernel(self, reduced: bool) -> int:
        return self.kernel_reduced if reduced else self.kernel

    def lower_sums(self, reduced: bool = True) -> list[int]:
        """``B_k = sum_{|F| = k} beta_(ell-1)(X_F)`` for ``k = 0..n``."""
        K = self.lower_kernel(reduced)
        return [sum(c * (K - r) for r, c in enumerate(row)) for row in self.counts]

    def top_sums(self) -> list[int]:
        """``sum_{|F| = k} beta_ell(X_F)`` (reduced and plain agree for ``ell >= 1``)."""
        return [sum(c * (k - r) for r, c in enumerate(row)) for k, row in enumerate(self.counts)]

    def pair_counts(self, reduced: bool = True) -> dict[tuple[int, int], int]:
        """Number of subsets with each ``(beta_(ell-1), beta_ell)`` pair."""
        K = self.lower_kernel(reduced)
        out: dict[tuple[int, int], int] = {}
        for k, row in enumerate(self.counts):
            for r, c in enumerate(row):
                if c:
                    key = (K - r, k - r)
                    out[key] = out.get(key, 0) + c
        return out


def enumerate_betti_profile(
    X: CellComplex,
    ell: int,
    field: Field = QQ,
    *,
    cap: int | None = None,
    method: str = "gray",
    workers: int = 1,
) -> BettiProfile:
    """Betti data of every ``X_F`` aggregated by ``|F|`` and by Betti pair.

    ``method="naive"`` recomputes each subset's rank from scratch and exists
    as a differential check on the Gray-code walk.
    """
    n = X.n(ell)
    if method == "gray":
        counts = rank_size_counts(X, ell, field, cap=cap, workers=workers)
    elif method == "naive":
        check_cap(n, cap)
        counts = [[0] * (n + 1) for _ in range(n + 1)]
        for m, r in enumerate(naive_subset_ranks(X, ell, field)):
            counts[bin(m).count("1")][int(r)] += 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return BettiProfile(
        ell=ell,
        n_cells=n,
        counts=tuple(tuple(row) for row in counts),
        kernel=boundary_kernel_dim(X, ell - 1, reduced=False, field=field),
        kernel_reduced=boundary_kernel_dim(X, ell - 1, reduced=True, field=field),
    )


__all__ = [
    "Block",
    "BettiProfile",
    "CapExceededError",
    "DEFAULT_CAP",
    "enumerate_betti_profile",
    "gray_walk",
    "naive_subset_ranks",
    "rank_size_counts",
    "subset_ranks",
]
