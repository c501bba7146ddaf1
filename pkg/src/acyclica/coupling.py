"""Edwards-Sokal coupling of the ``ell``-random-cluster and Potts models.

States are pairs ``(s, F)`` of an ``(ell-1)``-cochain with values in GF(q)
and a set ``F`` of open ``ell``-cells. A cell may be open only if the
coboundary of ``s`` vanishes on it. Cochains are indexed by their base-``q``
digits, lowest cell first.
"""

from __future__ import annotations

import io
import itertools
import json
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .complex import CellComplex
from .homology import boundary_kernel_dim, cocycle_dimension, mask_indices
from .linalg import GF, nullspace_mod

JOINT_CAP = 2**26


def _dense_boundary(X: CellComplex, ell: int) -> np.ndarray:
    D = np.zeros((X.n(ell - 1), X.n(ell)), dtype=np.int64)
    for j, col in enumerate(X.boundary(ell)):
        for r, c in col.items():
            D[r, j] = c
    return D


def coboundary(X: CellComplex, ell: int, s: Sequence[int], q: int) -> np.ndarray:
    """Values of the coboundary of ``s`` on every ``ell``-cell, reduced mod ``q``."""
    return (np.asarray(s, dtype=np.int64) @ _dense_boundary(X, ell)) % q


def potts_hamiltonian(X: CellComplex, ell: int, s: Sequence[int], q: int) -> int:
    """Minus the number of ``ell``-cells on which the coboundary of ``s`` vanishes."""
    return -int(np.count_nonzero(coboundary(X, ell, s, q) == 0))


def _bits(n: int) -> np.ndarray:
    return np.array([1 << i for i in range(n)], dtype=object)


def all_cochains(n: int, q: int) -> np.ndarray:
    """Every cochain as a row, ordered by base-``q`` index (cell 0 least significant)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    return grid[:, ::-1]


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True, eq=False)
class ESJoint:
    """Normalised coupling table.

    Only ``sat[s]`` (mask of cells where the coboundary of ``s`` vanishes)
    is stored; ``mu(s, F) = p^|F| (1-p)^(n-|F|) / Z`` when ``F`` is a subset
    of ``sat[s]`` and 0 otherwise.
    """

    complex: CellComplex
    ell: int
    p: Fraction
    q: int
    cochains: np.ndarray
    sat: tuple
    Z: Fraction

    @property
    def n_cells(self) -> int:
        return self.complex.n(self.ell)

    def weight(self, s_index: int, mask: int) -> Fraction:
        if mask & ~self.sat[s_index]:
            return Fraction(0)
        k = bin(mask).count("1")
        return self.p**k * (1 - self.p) ** (self.n_cells - k)

    def prob(self, s_index: int, mask: int) -> Fraction:
        return self.weight(s_index, mask) / self.Z

    def support(self) -> Iterator[tuple[int, int, Fraction]]:
        """Nonzero entries ``(s_index, mask, prob)``."""
        for si, sat in enumerate(self.sat):
            for m in _submasks(sat):
                w = self.weight(si, m)
                if w:
                    yield si, m, w / self.Z

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("cochain,mask,prob\n")
        for si, m, pr in sorted(self.support()):
            s = "".join(str(v) for v in self.cochains[si])
            buf.write(f"{s},{m},{pr}\n")
        return buf.getvalue()


def es_joint_distribution(
    X: CellComplex, p, q: int, ell: int, *, cap: int = JOINT_CAP
) -> ESJoint:
    """Exact coupling table for prime ``q``."""
    GF(q)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    n_low, n = X.n(ell - 1), X.n(ell)
    if q**n_low * 2**n > cap:
        raise ValueError(f"joint table has {q}^{n_low} x 2^{n} states, above the cap {cap}")
    S = all_cochains(n_low, q)
    ok = ((S @ _dense_boundary(X, ell)) % q) == 0
    sat = tuple(int(v) for v in (ok.astype(object) @ _bits(n))) if n else tuple(0 for _ in range(len(S)))
    Z = Fraction(0)
    for s in sat:
        for m in _submasks(s):
            k = bin(m).count("1")
            Z += p**k * (1 - p) ** (n - k)
    return ESJoint(X, ell, p, q, S, sat, Z)


def potts_marginal(joint: ESJoint) -> list[Fraction]:
    out = [Fraction(0)] * len(joint.sat)
    for si, _, pr in joint.support():
        out[si] += pr
    return out


def rc_marginal(joint: ESJoint) -> list[Fraction]:
    out = [Fraction(0)] * (1 << joint.n_cells)
    for _, m, pr in joint.support():
        out[m] += pr
    return out


def _normalise(ws: list[Fraction]) -> list[Fraction]:
    tot = sum(ws, Fraction(0))
    return [w / tot for w in ws]


def es_marginal_check(X: CellComplex, p, q: int, ell: int) -> tuple[Fraction, Fraction]:
    """Largest deviations of the two coupling marginals from their closed forms.

    The cochain marginal is compared with ``prod_sigma ((1-p) + p delta_sigma(s))``
    and the subset marginal with ``p^|F| (1-p)^(n-|F|) q^dim Z^(ell-1)(X_F; GF(q))``.
    """
    joint = es_joint_distribution(X, p, q, ell)
    p = joint.p
    n = joint.n_cells
    potts_target = []
    for s in joint.cochains:
        w = Fraction(1)
        for val in coboundary(X, ell, s, q):
            w *= (1 - p) + p * (1 if val == 0 else 0)
        potts_target.append(w)
    potts_target = _normalise(potts_target)
    field = GF(q)
    rc_target = []
    for m in range(1 << n):
        k = bin(m).count("1")
        dimz = cocycle_dimension(X, ell - 1, ell=ell, cells=m, field=field)
        rc_target.append(p**k * (1 - p) ** (n - k) * Fraction(q) ** dimz)
    rc_target = _normalise(rc_target)
    res_potts = max(abs(a - b) for a, b in zip(potts_marginal(joint), potts_target))
    res_rc = max(abs(a - b) for a, b in zip(rc_marginal(joint), rc_target))
    return res_potts, res_rc


class _KernelCache:
    """Cocycle-space bases keyed by the open-cell mask."""

    def __init__(self, D: np.ndarray, q: int, size: int = 4096):
        self.D, self.q, self.size = D, q, size
        self._store: OrderedDict[int, np.ndarray] = OrderedDict()

    def __call__(self, mask: int) -> np.ndarray:
        basis = self._store.get(mask)
        if basis is None:
            rows = self.D[:, mask_indices(mask)].T.tolist()
            basis = np.array(nullspace_mod(rows, self.D.shape[0], self.q), dtype=np.int64).reshape(-1, self.D.shape[0])
            self._store[mask] = basis
            if len(self._store) > self.size:
                self._store.popitem(last=False)
        return basis


class GibbsKernel:
    """One sweep of the block Gibbs chain on the coupling.

    Given ``s``, each cell where the coboundary vanishes opens independently
    with probability ``p`` and every other cell is closed. Given ``F``, ``s``
    is drawn uniformly from the cocycles of ``X_F`` as a random combination
    of a GF(q) kernel basis.
    """

    def __init__(self, X: CellComplex, p, q: int, ell: int):
        GF(q)
        p = Fraction(p)
        if not 0 < p < 1:
            raise ValueError("the chain is reducible unless 0 < p < 1")
        self.p, self.q = float(p), q
        self.D = _dense_boundary(X, ell)
        self.weights = _bits(self.D.shape[1])
        self.kernel = _KernelCache(self.D, q)

    def sweep(self, s: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, int]:
        n_low, n = self.D.shape
        sat = ((s @ self.D) % self.q) == 0
        open_ = sat & (rng.random(n) < self.p)
        mask = int(open_.astype(object) @ self.weights) if n else 0
        basis = self.kernel(mask)
        if len(basis):
            s = (rng.integers(0, self.q, size=len(basis)) @ basis) % self.q
        else:
            s = np.zeros(n_low, dtype=np.int64)
        return s, mask


def es_gibbs_sampler(
    X: CellComplex, p, q: int, ell: int, sweeps: int, seed
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Run :class:`GibbsKernel` from the zero cochain; yields ``(cochain, open_mask)`` after each sweep."""
    chain = GibbsKernel(X, p, q, ell)
    rng = np.random.default_rng(seed)
    s = np.zeros(X.n(ell - 1), dtype=np.int64)
    for _ in range(sweeps):
        s, mask = chain.sweep(s, rng)
        yield tuple(int(v) for v in s), mask


def sampler_csv(
    X: CellComplex, p, q: int, ell: int, sweeps: int, seed
) -> str:
    """Sampler stream as CSV ``sweep,mask,beta`` after a one-line JSON header."""
    field = GF(q)
    low_rank = X.n(ell - 1) - boundary_kernel_dim(X, ell - 1, field=field)
    buf = io.StringIO()
    buf.write(json.dumps({"p": str(Fraction(p)), "q": q, "l": ell, "seed": seed}) + "\n")
    buf.write("sweep,mask,beta\n")
    cache: dict[int, int] = {}
    for i, (_, mask) in enumerate(es_gibbs_sampler(X, p, q, ell, sweeps, seed)):
        if mask not in cache:
            cache[mask] = cocycle_dimension(X, ell - 1, ell=ell, cells=mask, field=field) - low_rank
        buf.write(f"{i},{mask},{cache[mask]}\n")
    return buf.getvalue()


__all__ = [
    "ESJoint",
    "GibbsKernel",
    "all_cochains",
    "coboundary",
    "es_gibbs_sampler",
    "es_joint_distribution",
    "es_marginal_check",
    "potts_hamiltonian",
    "potts_marginal",
    "rc_marginal",
    "sampler_csv",
]
