"""Betti numbers, cocycle dimensions and the spanning-acycle size of a complex.

A subcomplex ``X_F`` always means the ``(ell-1)``-skeleton together with a
set ``F`` of ``ell``-cells. ``F`` is given either as an int bitmask (bit
``i`` = cell ``i``) or as an iterable of cell indices.
"""

from __future__ import annotations

from typing import Iterable

from .complex import CellComplex
from .linalg import QQ, Field, column_rank, rank_field


def as_mask(cells: int | Iterable[int] | None, n: int) -> int:
    """Normalise a subset description to a bitmask over ``n`` cells."""
    if cells is None:
        return (1 << n) - 1
    if isinstance(cells, int):
        mask = cells
    else:
        mask = 0
        for i in cells:
            mask |= 1 << int(i)
    if mask < 0 or mask >> n:
        raise ValueError(f"subset mask {mask:#x} refers to cells beyond {n}")
    return mask


def mask_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _cells_in(X: CellComplex, k: int, ell: int | None, mask: int | None) -> list[int]:
    """Indices of ``k``-cells present in ``X_F`` (or all of ``X`` when ``ell`` is None)."""
    if ell is None or k < ell:
        return list(range(X.n(k)))
    if k == ell:
        return mask_indices(mask)
    return []


def _rank(X: CellComplex, k: int, cells: list[int], field: Field, augmented: bool) -> int:
    cols = X.augmented_boundary(k) if augmented else X.boundary(k)
    chosen = [cols[i] for i in cells]
    rows = 1 if (augmented and k == 0) else X.n(k - 1)
    return column_rank(chosen, rank_field(chosen, rows, field))


def betti(
    X: CellComplex,
    k: int,
    *,
    ell: int | None = None,
    cells: int | Iterable[int] | None = None,
    field: Field = QQ,
    reduced: bool = False,
) -> int:
    """The ``k``-th Betti number of ``X`` or of the subcomplex ``X_F``.

    With ``ell`` given, the subcomplex is ``X^(ell-1)`` plus the ``ell``-cells
    in ``cells`` (all of them when ``cells`` is None). ``reduced`` only
    matters in degree 0; in degree ``-1`` the reduced Betti number is 1 for
    the empty complex and 0 otherwise.
    """
    top = X.dim if ell is None else ell
    if ell is not None and not 0 <= ell <= X.dim:
        raise ValueError(f"subcomplex degree {ell} out of range 0..{X.dim}")
    if k == -1 and reduced:
        return 1 if X.n(0) == 0 else 0
    if not 0 <= k <= top:
        raise ValueError(f"degree {k} out of range 0..{top}")
    mask = as_mask(cells, X.n(ell)) if ell is not None else None
    here = _cells_in(X, k, ell, mask)
    above = _cells_in(X, k + 1, ell, mask) if k + 1 <= top else []
    kernel = len(here) - _rank(X, k, here, field, augmented=reduced)
    return kernel - (_rank(X, k + 1, above, field, False) if above else 0)


def boundary_kernel_dim(X: CellComplex, k: int, *, reduced: bool = False, field: Field = QQ) -> int:
    """``dim ker`` of the (optionally augmented) boundary map out of degree ``k``."""
    cells = list(range(X.n(k)))
    return len(cells) - _rank(X, k, cells, field, augmented=reduced)


def rho(X: CellComplex, ell: int, *, reduced: bool = True, field: Field = QQ) -> int:
    """Common value of ``|F| - beta_ell(X_F) + beta_(ell-1)(X_F)`` over all ``F``.

    Evaluated from the alternating sums of cell counts and lower Betti
    numbers; with ``reduced`` it is the size of every ``ell``-spanning acycle.
    """
    if ell < 1:
        raise ValueError("rho needs ell >= 1")
    s = sum((-1) ** k * betti(X, k, reduced=reduced, field=field) for k in range(0, ell - 1))
    s -= sum((-1) ** k * X.n(k) for k in range(ell))
    if reduced:
        s += 1
    return (-1) ** ell * s


def cocycle_dimension(
    X: CellComplex,
    k: int,
    *,
    ell: int,
    cells: int | Iterable[int] | None = None,
    field: Field = QQ,
) -> int:
    """``dim Z^k(X_F)``: cochains on ``k``-cells killed by the coboundary restricted to ``X_F``."""
    if not 0 <= k <= ell:
        raise ValueError(f"degree {k} out of range 0..{ell}")
    mask = as_mask(cells, X.n(ell))
    here = _cells_in(X, k, ell, mask)
    above = _cells_in(X, k + 1, ell, mask)
    # rank of the transpose equals rank of the restricted boundary
    return len(here) - (_rank(X, k + 1, above, field, False) if above else 0)


def subset_rank(X: CellComplex, ell: int, cells, field: Field = QQ) -> int:
    """Rank of the boundary columns of the chosen ``ell``-cells."""
    mask = as_mask(cells, X.n(ell))
    return _rank(X, ell, mask_indices(mask), field, False)


def is_spanning_acycle(X: CellComplex, ell: int, cells, field: Field = QQ) -> bool:
    return (
        betti(X, ell, ell=ell, cells=cells, field=field, reduced=True) == 0
        and betti(X, ell - 1, ell=ell, cells=cells, field=field, reduced=True) == 0
    )
