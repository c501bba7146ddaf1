"""Finite cell complexes with explicit integer boundary matrices."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np
from scipy import sparse

Column = Mapping[int, int]


class ComplexError(ValueError):
    """Raised for malformed or inconsistent complex data."""


@dataclass(frozen=True, eq=False)
class CellComplex:
    """A graded set of cells with signed integer incidence.

    ``columns[k - 1][j]`` is the boundary of the ``j``-th ``k``-cell as a
    ``row -> coefficient`` dict over the ``(k-1)``-cells. Instances are
    immutable; construction validates shapes and that the boundary squares
    to zero.
    """

    dims: tuple[int, ...]
    columns: tuple[tuple[dict, ...], ...]
    labels: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        cols = tuple(tuple({int(r): int(c) for r, c in col.items() if c} for col in level) for level in self.columns)
        object.__setattr__(self, "columns", cols)
        self._validate()

    def _validate(self):
        if not self.dims:
            raise ComplexError("complex must have at least one dimension")
        if any(d < 0 for d in self.dims):
            raise ComplexError(f"negative cell count in dims {self.dims}")
        if len(self.columns) != len(self.dims) - 1:
            raise ComplexError(f"expected {len(self.dims) - 1} boundary blocks, got {len(self.columns)}")
        for k, level in enumerate(self.columns, start=1):
            if len(level) != self.dims[k]:
                raise ComplexError(f"boundary[{k}] has {len(level)} columns but dims[{k}] = {self.dims[k]}")
            for j, col in enumerate(level):
                for r in col:
                    if not 0 <= r < self.dims[k - 1]:
                        raise ComplexError(f"{k}-cell {j}: row index {r} out of range for {self.dims[k - 1]} ({k - 1})-cells")
        for k in range(2, len(self.dims)):
            lower = self.columns[k - 2]
            for j, col in enumerate(self.columns[k - 1]):
                acc: dict[int, int] = {}
                for r, c in col.items():
                    for rr, cc in lower[r].items():
                        acc[rr] = acc.get(rr, 0) + c * cc
                if any(acc.values()):
                    raise ComplexError(f"boundary of boundary nonzero at {k}-cell {j}")

    # structural equality ignores labels
    @cached_property
    def _key(self):
        return (self.dims, tuple(tuple(tuple(sorted(c.items())) for c in lvl) for lvl in self.columns))

    def __eq__(self, other):
        return isinstance(other, CellComplex) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"CellComplex(dims={self.dims})"

    @property
    def dim(self) -> int:
        return len(self.dims) - 1

    def n(self, k: int) -> int:
        """Number of ``k``-cells (0 outside the stored range)."""
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def boundary(self, k: int) -> tuple[dict, ...]:
        """Columns of the boundary map out of degree ``k``."""
        if 1 <= k <= self.dim:
            return self.columns[k - 1]
        return tuple({} for _ in range(self.n(k)))

    def augmented_boundary(self, k: int) -> tuple[dict, ...]:
        """Like :meth:`boundary`, but degree 0 maps every vertex to the single augmentation row."""
        if k == 0:
            return tuple({0: 1} for _ in range(self.n(0)))
        return self.boundary(k)

    def boundary_matrix(self, k: int) -> sparse.csc_array:
        cols = self.boundary(k)
        rows, idx, vals = [], [], []
        for j, col in enumerate(cols):
            for r, c in col.items():
                rows.append(r)
                idx.append(j)
                vals.append(c)
        return sparse.csc_array((np.array(vals, dtype=np.int64), (rows, idx)), shape=(self.n(k - 1), self.n(k)))

    def skeleton(self, k: int) -> "CellComplex":
        k = min(k, self.dim)
        return CellComplex(self.dims[: k + 1], self.columns[:k], dict(self.labels))

    # JSON interchange
    def to_document(self) -> dict:
        doc = {
            "dims": list(self.dims),
            "boundary": [
                {"k": k, "entries": [[r, j, c] for j, col in enumerate(level) for r, c in sorted(col.items())]}
                for k, level in enumerate(self.columns, start=1)
            ],
        }
        if self.labels:
            doc["labels"] = dict(self.labels)
        return doc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_document(), **kwargs)


def load_complex(document) -> CellComplex:
    """Build a validated :class:`CellComplex` from a JSON document.

    ``document`` may be a parsed dict, a JSON string, or a path-like object
    pointing at a UTF-8 JSON file.
    """
    if not isinstance(document, Mapping):
        text = str(document)
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"invalid JSON: {exc}") from None
    if "dims" not in document:
        raise ComplexError("missing 'dims'")
    dims = document["dims"]
    if not isinstance(dims, list) or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise ComplexError(f"'dims' must be a list of nonnegative integers, got {dims!r}")
    levels = [[{} for _ in range(dims[k])] for k in range(1, len(dims))]
    for block in document.get("boundary", []):
        k = block.get("k")
        if not isinstance(k, int) or not 1 <= k < len(dims):
            raise ComplexError(f"boundary block with invalid degree k={k!r}")
        for entry in block.get("entries", []):
            if len(entry) != 3 or not all(isinstance(v, int) for v in entry):
                raise ComplexError(f"boundary[{k}] entry {entry!r} is not [row, col, coeff] integers")
            r, c, v = entry
            if not 0 <= c < dims[k]:
                raise ComplexError(f"boundary[{k}]: column (cell) index {c} out of range for {dims[k]} {k}-cells")
            if not 0 <= r < dims[k - 1]:
                raise ComplexError(f"boundary[{k}]: {k}-cell {c} has row index {r} out of range")
            col = levels[k - 1][c]
            col[r] = col.get(r, 0) + v
    return CellComplex(tuple(dims), tuple(tuple(lv) for lv in levels), document.get("labels") or {})


def dump_complex(X: CellComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(X.to_json(indent=1))


def simplicial_skeleton(n: int, ell: int) -> CellComplex:
    """The ``ell``-skeleton of the full simplex on ``n`` vertices.

    Simplices are vertex tuples in lexicographic order; the face omitting
    position ``i`` enters with sign ``(-1)**i``.
    """
    if n < 1 or not 0 <= ell <= n - 1:
        raise ComplexError(f"need n >= 1 and 0 <= l <= n-1, got n={n}, l={ell}")
    faces = [list(itertools.combinations(range(n), k + 1)) for k in range(ell + 1)]
    index = [{s: i for i, s in enumerate(fk)} for fk in faces]
    levels = []
    for k in range(1, ell + 1):
        level = []
        for s in faces[k]:
            level.append({index[k - 1][s[:i] + s[i + 1 :]]: (-1) ** i for i in range(k + 1)})
        levels.append(tuple(level))
    labels = {f"{k}:{i}": "".join(map(str, s)) for k, fk in enumerate(faces) for i, s in enumerate(fk)}
    return CellComplex(tuple(len(fk) for fk in faces), tuple(levels), labels)


def _cubes(sides: Sequence[int], k: int):
    d = len(sides)
    out = []
    for axes in itertools.combinations(range(d), k):
        ranges = [range(sides[i]) if i in axes else range(sides[i] + 1) for i in range(d)]
        out.extend((anchor, axes) for anchor in itertools.product(*ranges))
    out.sort()
    return out


def cubical_lattice(sides: Sequence[int], ell: int | None = None) -> CellComplex:
    """The ``ell``-skeleton of the elementary-cube complex of a box.

    The box is ``[0, sides[0]] x ... x [0, sides[-1]]``; ``ell`` defaults to
    ``len(sides) - 1``. A cube is ``(anchor, axes)`` with ``axes`` its
    nondegenerate directions; cells are ordered anchor first, then axes.
    """
    sides = tuple(int(s) for s in sides)
    if not sides:
        raise ComplexError("sides vector must be nonempty")
    if any(s < 1 for s in sides):
        raise ComplexError(f"all sides must be >= 1, got {sides}")
    if ell is None:
        ell = len(sides) - 1
    if not 0 <= ell <= len(sides):
        raise ComplexError(f"dimension {ell} out of range for a box in R^{len(sides)}")
    cells = [_cubes(sides, k) for k in range(ell + 1)]
    index = [{c: i for i, c in enumerate(ck)} for ck in cells]
    levels = []
    for k in range(1, ell + 1):
        level = []
        for anchor, axes in cells[k]:
            col = {}
            for pos, ax in enumerate(axes):
                sign = (-1) ** pos
                face_axes = axes[:pos] + axes[pos + 1 :]
                upper = anchor[:ax] + (anchor[ax] + 1,) + anchor[ax + 1 :]
                col[index[k - 1][(upper, face_axes)]] = sign
                col[index[k - 1][(anchor, face_axes)]] = -sign
            level.append(col)
        levels.append(tuple(level))
    return CellComplex(tuple(len(ck) for ck in cells), tuple(levels))


def elementary_symmetric(values: Sequence[int], p: int) -> int:
    if p == 0:
        return 1
    return sum(math.prod(c) for c in itertools.combinations(values, p))


def cubical_face_census(sides: Sequence[int], k: int) -> int:
    """Number of ``k``-dimensional elementary cubes in the box with the given sides.

    Computed as ``sum_{p >= k} C(p, k) S_p(sides)`` with ``S_p`` the
    elementary symmetric polynomial.
    """
    d = len(sides)
    if not 0 <= k <= d:
        raise ComplexError(f"k={k} out of range 0..{d}")
    return sum(math.comb(p, k) * elementary_symmetric(sides, p) for p in range(k, d + 1))


def spanning_acycle_size_cubical(sides: Sequence[int]) -> int:
    """Cells in any top-dimensional spanning acycle of the cubical lattice on ``sides``."""
    ell = len(sides) - 1
    return ell * elementary_symmetric(sides, ell + 1) + elementary_symmetric(sides, ell)


def cycle_graph(n: int) -> CellComplex:
    """The cycle graph on ``n >= 2`` vertices; edge ``i`` joins ``i`` and ``i+1 mod n``."""
    cols = []
    for i in range(n):
        a, b = i, (i + 1) % n
        lo, hi = min(a, b), max(a, b)
        cols.append({lo: -1, hi: 1} if lo != hi else {})
    return CellComplex((n, n), (tuple(cols),))
