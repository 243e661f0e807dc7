"""Exact integer linear algebra: rank, nullspaces and subspace dimensions.

Everything is done with Python integers.  Rank uses Bareiss fraction-free
elimination; reduced forms are kept integral by dividing each row by the gcd
of its entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """A dense rectangular matrix of Python integers."""

    rows: tuple[IntVector, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix rows have unequal lengths")
        return cls(rows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[IntVector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product; works for ints and Fractions alike."""
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v) if a) for r in self.rows)

    def select_columns(self, cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(r[j] for j in cols) for r in self.rows), len(cols))

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return IntMatrix(self.rows + other.rows, self.ncols)


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def _distinct_rows(m: IntMatrix) -> list[list[int]]:
    # Zero rows and repeats (up to sign) do not change the row space.
    seen = set()
    out = []
    for r in m.rows:
        lead = next((v for v in r if v), 0)
        if not lead:
            continue
        key = r if lead > 0 else tuple(-v for v in r)
        if key not in seen:
            seen.add(key)
            out.append(list(key))
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero echelon rows and their pivot columns.  The pivot is the
    first nonzero entry found scanning columns left to right.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m) -> int:
    """Rank over the rationals."""
    m = _as_matrix(m)
    rows = _distinct_rows(m)
    if not rows:
        return 0
    return len(bareiss_echelon(rows, m.ncols)[1])


def image_dim(m) -> int:
    """Dimension of the column space."""
    return rank(m)


def _primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    lead = next((x for x in v if x), 0)
    if lead < 0:
        v = [-x for x in v]
    return list(v)


def reduced_echelon(m) -> tuple[list[list[int]], list[int]]:
    """Integral reduced row echelon form: each pivot is the only nonzero in its column.

    Rows are primitive with positive pivots.
    """
    m = _as_matrix(m)
    rows = _distinct_rows(m)
    if not rows:
        return [], []
    ech, pivots = bareiss_echelon(rows, m.ncols)
    ech = [_primitive(r) for r in ech]
    for k in range(len(ech) - 1, -1, -1):
        c = pivots[k]
        prow = ech[k]
        p = prow[c]
        for i in range(k):
            f = ech[i][c]
            if f:
                ech[i] = _primitive([p * x - f * y for x, y in zip(ech[i], prow)])
    return ech, pivots


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent primitive integer vectors spanning a subspace of Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple[IntVector, ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector length differs from ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "SubspaceBasis":
        """Canonical basis (reduced echelon rows) of the span of arbitrary integer vectors."""
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, ())
        ech, _ = reduced_echelon(IntMatrix.from_rows(vectors, ambient_dim))
        return cls(ambient_dim, tuple(tuple(r) for r in ech))

    def as_matrix(self) -> IntMatrix:
        """Vectors as rows."""
        return IntMatrix(self.vectors, self.ambient_dim)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.vectors:
            return not any(v)
        return rank(self.as_matrix().stack(IntMatrix.from_rows([v], self.ambient_dim))) == self.dim


def nullspace(m) -> SubspaceBasis:
    """Basis of ``{v : m v = 0}``.

    One vector per free column, in increasing free-column order; each vector
    is primitive with its first nonzero entry positive.
    """
    m = _as_matrix(m)
    ech, pivots = reduced_echelon(m)
    pivset = set(pivots)
    out = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        # For pivot row k: p_k * v[pivot_k] + row_k[f] * v[f] = 0.
        # Take v[f] = lcm of pivots and scale each pivot coordinate accordingly.
        scale = 1
        for row, c in zip(ech, pivots):
            if row[f]:
                p = row[c]
                scale = scale * p // gcd(scale, p)
        v = [0] * m.ncols
        v[f] = scale
        for row, c in zip(ech, pivots):
            if row[f]:
                v[c] = -row[f] * scale // row[c]
        out.append(tuple(_primitive(v)))
    return SubspaceBasis(m.ncols, tuple(out))


def _check_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def sum_dim(a: SubspaceBasis, b: SubspaceBasis) -> int:
    _check_ambient(a, b)
    vecs = a.vectors + b.vectors
    if not vecs:
        return 0
    return rank(IntMatrix(vecs, a.ambient_dim))


def intersect_dim(a: SubspaceBasis, b: SubspaceBasis) -> int:
    return a.dim + b.dim - sum_dim(a, b)


def restrict_to_zero_block(a: SubspaceBasis, coords: Iterable[int]) -> SubspaceBasis:
    """Basis of the vectors of ``span(a)`` vanishing on ``coords`` (0-based)."""
    coords = sorted(set(coords))
    if any(not 0 <= i < a.ambient_dim for i in coords):
        raise ValueError("coordinate out of range")
    if not a.vectors:
        return a
    if not coords:
        return SubspaceBasis.span(a.ambient_dim, a.vectors)
    # Combinations x with sum_k x_k a_k[i] = 0 for each i in coords.
    constraint = IntMatrix(tuple(tuple(v[i] for v in a.vectors) for i in coords), a.dim)
    combos = nullspace(constraint)
    vecs = [
        tuple(sum(x * v[j] for x, v in zip(combo, a.vectors)) for j in range(a.ambient_dim))
        for combo in combos
    ]
    return SubspaceBasis.span(a.ambient_dim, vecs)


def projection_dim(a: SubspaceBasis, coords: Iterable[int]) -> int:
    """Dimension of the image of ``span(a)`` under projection onto ``coords`` (0-based)."""
    coords = sorted(set(coords))
    if any(not 0 <= i < a.ambient_dim for i in coords):
        raise ValueError("coordinate out of range")
    if not a.vectors or not coords:
        return 0
    return rank(a.as_matrix().select_columns(coords))
