"""Sparse polynomials over Q in six fixed parameters, and matrices of them.

Variables are ``a, b, c, a', b', c'``.  Matrices act on tensor powers of a
two-dimensional space with factor 1 as the most significant index bit.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

VARIABLES = ("a", "b", "c", "a'", "b'", "c'")
NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * NVARS

Exponent = tuple[int, ...]


class MultiPoly:
    """A polynomial stored as ``{exponent tuple: nonzero Fraction}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(e) != NVARS or any(k < 0 for k in e):
                        raise ValueError(f"bad exponent {e}")
                    clean[tuple(e)] = c
        self.terms: dict[Exponent, Fraction] = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        i = VARIABLES.index(name)
        return cls({tuple(int(k == i) for k in range(NVARS)): 1})

    @staticmethod
    def coerce(x) -> "MultiPoly":
        return x if isinstance(x, MultiPoly) else MultiPoly.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def variables(self) -> set[str]:
        return {VARIABLES[i] for e in self.terms for i, k in enumerate(e) if k}

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other) -> "MultiPoly":
        other = MultiPoly.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly.coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scalar_mul(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def scalar_mul(self, k) -> "MultiPoly":
        k = Fraction(k)
        return MultiPoly({e: c * k for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        out = MultiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def evaluate(self, point: Mapping[str, object]) -> "MultiPoly":
        """Substitute rational values for some variables."""
        idx = {VARIABLES.index(k): Fraction(v) for k, v in point.items()}
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in idx.items():
                if e2[i]:
                    c = c * v ** e2[i]
                    e2[i] = 0
            key = tuple(e2)
            out[key] = out.get(key, 0) + c
        return MultiPoly(out)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mono = _format_monomial(e)
            body = f"{abs(c)} * {mono}" if mono else f"{abs(c)}"
            if n == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Inverse of ``str``: ``"3/2 * a^2 b' - 1 * c + 4"``."""
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for m in _TERM.finditer(text):
            sign, coeff, mono = m.group(1), m.group(2), m.group(3)
            c = Fraction(coeff) * (-1 if sign and sign.strip() == "-" else 1)
            out = out + cls({_parse_monomial(mono or ""): c})
        if not _TERM.sub("", text).strip() == "":
            raise ValueError(f"cannot parse polynomial {text!r}")
        return out


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)(?:\s*\*\s*((?:[abc]'?(?:\^\d+)?\s*)+))?")


def _format_monomial(e: Exponent) -> str:
    out = []
    for name, k in zip(VARIABLES, e):
        if k == 1:
            out.append(name)
        elif k > 1:
            out.append(f"{name}^{k}")
    return " ".join(out)


def _parse_monomial(text: str) -> Exponent:
    e = [0] * NVARS
    for tok in text.split():
        name, _, power = tok.partition("^")
        e[VARIABLES.index(name)] += int(power) if power else 1
    return tuple(e)


def symbols() -> tuple[MultiPoly, ...]:
    """The six formal parameters ``a, b, c, a', b', c'``."""
    return tuple(MultiPoly.var(v) for v in VARIABLES)


ZERO = MultiPoly()
ONE = MultiPoly.const(1)


def _log2(n: int) -> int:
    k = n.bit_length() - 1
    if n <= 0 or 1 << k != n:
        raise ValueError(f"dimension {n} is not a power of two")
    return k


class PolyMatrix:
    """Dense square matrix with MultiPoly entries."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries: Sequence[Sequence[object]]):
        rows = [[MultiPoly.coerce(x) for x in row] for row in entries]
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("matrix must be square")
        _log2(dim)
        self.dim = dim
        self.entries = rows

    @property
    def nfactors(self) -> int:
        return _log2(self.dim)

    @classmethod
    def zeros(cls, dim: int) -> "PolyMatrix":
        return cls([[ZERO] * dim for _ in range(dim)])

    @classmethod
    def identity(cls, dim: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_dim(other)
        return PolyMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_dim(other)
        return PolyMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scalar_mul(self, k) -> "PolyMatrix":
        k = MultiPoly.coerce(k)
        return PolyMatrix([[x * k for x in r] for r in self.entries])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def _check_dim(self, other: "PolyMatrix") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self.entries)])

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def nonzero_pattern(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, r in enumerate(self.entries) for j, x in enumerate(r) if x)

    def evaluate(self, point: Mapping[str, object]) -> "PolyMatrix":
        return PolyMatrix([[x.evaluate(point) for x in r] for r in self.entries])

    def to_rational(self) -> list[list[Fraction]]:
        return [[x.constant_value() for x in r] for r in self.entries]

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.to_rational()])

    def entry_list(self) -> list[tuple[int, int, str]]:
        """Nonzero entries as ``(row, col, polynomial)``, 1-based."""
        return [(i + 1, j + 1, str(x)) for i, r in enumerate(self.entries) for j, x in enumerate(r) if x]

    @classmethod
    def from_entry_list(cls, dim: int, entries: Sequence[tuple[int, int, str]]) -> "PolyMatrix":
        m = cls.zeros(dim)
        for i, j, p in entries:
            m.entries[i - 1][j - 1] = MultiPoly.parse(p) if isinstance(p, str) else MultiPoly.coerce(p)
        return m

    def __repr__(self) -> str:
        return f"PolyMatrix(dim={self.dim}, nonzeros={len(self.nonzero_pattern())})"


def matrix_mul(x: PolyMatrix, y: PolyMatrix) -> PolyMatrix:
    x._check_dim(y)
    n = x.dim
    y_rows = [[(k, v) for k, v in enumerate(r) if v] for r in y.entries]
    out = []
    for row in x.entries:
        acc: dict[int, MultiPoly] = {}
        for k, a in enumerate(row):
            if not a:
                continue
            for j, b in y_rows[k]:
                p = a * b
                acc[j] = acc[j] + p if j in acc else p
        out.append([acc.get(j, ZERO) for j in range(n)])
    return PolyMatrix(out)


def _check_positions(positions: Sequence[int], total: int) -> tuple[int, ...]:
    positions = tuple(positions)
    if any(not 1 <= p <= total for p in positions) or any(a >= b for a, b in zip(positions, positions[1:])):
        raise ValueError(f"positions {positions} must be increasing within 1..{total}")
    return positions


def _gather(index: int, shifts: Sequence[int]) -> int:
    q = 0
    for sh in shifts:
        q = (q << 1) | ((index >> sh) & 1)
    return q


def embed_matrix(x: PolyMatrix, positions: Sequence[int], total: int) -> PolyMatrix:
    """Tensor ``x`` (on ``len(positions)`` factors) with identities on the other factors."""
    k = x.nfactors
    positions = _check_positions(positions, total)
    if len(positions) != k:
        raise ValueError(f"matrix acts on {k} factors but {len(positions)} positions were given")
    shifts = [total - p for p in positions]
    mask = 0
    for sh in shifts:
        mask |= 1 << sh
    dim = 1 << total
    out = [[ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        qi = _gather(i, shifts)
        rest = i & ~mask
        for qj in range(1 << k):
            v = x.entries[qi][qj]
            if not v:
                continue
            j = rest
            for n, sh in enumerate(shifts):
                j |= ((qj >> (k - 1 - n)) & 1) << sh
            out[i][j] = v
    return PolyMatrix(out)


def restrict_matrix(x: PolyMatrix, positions: Sequence[int]) -> PolyMatrix:
    """Block of ``x`` on ``positions`` with every other factor pinned to index 0.

    Recovers the original matrix from :func:`embed_matrix`.
    """
    total = x.nfactors
    positions = _check_positions(positions, total)
    shifts = [total - p for p in positions]
    k = len(positions)

    def spread(q: int) -> int:
        out = 0
        for n, sh in enumerate(shifts):
            out |= ((q >> (k - 1 - n)) & 1) << sh
        return out

    return PolyMatrix([[x.entries[spread(a)][spread(b)] for b in range(1 << k)] for a in range(1 << k)])


def weighted_partial_trace(x: PolyMatrix, k: int, w: Sequence[Sequence[object]]) -> PolyMatrix:
    """Partial trace over factor ``k`` (1-based) of ``w_k x``.

    ``result[o][i] = sum_{t,u} w[u][t] * x[o with t at k][i with u at k]``.
    """
    n = x.nfactors
    if not 1 <= k <= n:
        raise ValueError(f"factor {k} out of range 1..{n}")
    w = [[Fraction(v) for v in row] for row in w]
    if len(w) != 2 or any(len(r) != 2 for r in w):
        raise ValueError("weight must be 2x2")
    sh = n - k
    low = (1 << sh) - 1

    def insert(index: int, bit: int) -> int:
        return ((index >> sh) << (sh + 1)) | (bit << sh) | (index & low)

    dim = 1 << (n - 1)
    out = []
    for o in range(dim):
        row = []
        for i in range(dim):
            acc = ZERO
            for u in (0, 1):
                for t in (0, 1):
                    if w[u][t]:
                        v = x.entries[insert(o, t)][insert(i, u)]
                        if v:
                            acc = acc + v.scalar_mul(w[u][t])
            row.append(acc)
        out.append(row)
    return PolyMatrix(out)


def permute_factors(x: PolyMatrix, order: Sequence[int]) -> PolyMatrix:
    """Reorder tensor factors: new factor ``n`` is old factor ``order[n]`` (1-based)."""
    nf = x.nfactors
    if sorted(order) != list(range(1, nf + 1)):
        raise ValueError("order must be a permutation of the factors")

    def remap(index: int) -> int:
        out = 0
        for old in order:
            out = (out << 1) | ((index >> (nf - old)) & 1)
        return out

    dim = x.dim
    out = [[ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            out[remap(i)][remap(j)] = x.entries[i][j]
    return PolyMatrix(out)
