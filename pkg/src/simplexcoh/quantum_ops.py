"""Monomial operators on tensor powers of a two-dimensional space.

A monomial operator sends basis vector ``e_s`` to ``base**log_scalars[s] *
e_{perm[s]}``.  Scalars are carried as exponents, so products of operators
only add exponents and every identity is checked exactly without choosing a
base.  Basis indices pack tensor factors with factor 1 most significant.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import NCOCHAIN, CochainVector
from .simplex_core import FACTOR_POSITIONS, LABELS, SetMap, Verdict


@dataclass(frozen=True)
class MonomialOperator:
    arity: int
    perm: tuple[int, ...]
    log_scalars: tuple[Fraction, ...]

    def __post_init__(self):
        size = 1 << self.arity
        if not 0 <= self.arity <= 10:
            raise ValueError("arity must be between 0 and 10")
        if len(self.perm) != size or len(self.log_scalars) != size:
            raise ValueError(f"arity {self.arity} needs tables of length {size}")
        if sorted(self.perm) != list(range(size)):
            raise ValueError("perm is not a bijection of the basis indices")

    @property
    def size(self) -> int:
        return 1 << self.arity

    @classmethod
    def identity(cls, arity: int) -> "MonomialOperator":
        size = 1 << arity
        return cls(arity, tuple(range(size)), (Fraction(0),) * size)

    @classmethod
    def make(cls, arity: int, perm: Sequence[int], log_scalars: Sequence | None = None) -> "MonomialOperator":
        if log_scalars is None:
            log_scalars = [0] * len(perm)
        return cls(arity, tuple(perm), tuple(Fraction(v) for v in log_scalars))

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * self.size
        for s, t in enumerate(self.perm):
            inv[t] = s
        return tuple(inv)

    def inverse(self) -> "MonomialOperator":
        inv = self.inverse_perm()
        return MonomialOperator(self.arity, inv, tuple(-self.log_scalars[inv[t]] for t in range(self.size)))

    def to_json(self) -> str:
        return json.dumps(
            {"arity": self.arity, "perm": list(self.perm), "exponents": [str(v) for v in self.log_scalars]}
        )

    @classmethod
    def from_json(cls, text: str) -> "MonomialOperator":
        d = json.loads(text)
        return cls.make(d["arity"], d["perm"], [Fraction(v) for v in d["exponents"]])


def from_set_map(r: SetMap, log_scalars: Sequence | None = None) -> MonomialOperator:
    if not r.is_bijective():
        raise ValueError("set map is not bijective; it does not define a permutation operator")
    return MonomialOperator.make(4, r.table, log_scalars)


@dataclass(frozen=True)
class OperatorQuintuple:
    R: MonomialOperator
    S: MonomialOperator
    T: MonomialOperator
    U: MonomialOperator
    V: MonomialOperator

    def __post_init__(self):
        if any(op.arity != 4 for op in self):
            raise ValueError("quintuple operators act on four factors")

    def __getitem__(self, label: str) -> MonomialOperator:
        return getattr(self, label)

    def __iter__(self):
        return iter((self.R, self.S, self.T, self.U, self.V))


def quintuple_from_cocycle(r: SetMap, c: Sequence) -> OperatorQuintuple:
    c = CochainVector(c)
    return OperatorQuintuple(*(from_set_map(r, c.block(label)) for label in LABELS))


def embed(op: MonomialOperator, positions: Sequence[int], total: int = 10) -> MonomialOperator:
    """Extend ``op`` by identities to ``total`` factors; ``positions`` are 1-based."""
    positions = tuple(positions)
    if len(positions) != op.arity or any(not 1 <= p <= total for p in positions):
        raise ValueError(f"bad positions {positions} for arity {op.arity} in {total} factors")
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise ValueError("positions must be strictly increasing")
    shifts = [total - p for p in positions]
    k = op.arity
    mask = 0
    for sh in shifts:
        mask |= 1 << sh
    perm = []
    logs = []
    for s in range(1 << total):
        q = 0
        for sh in shifts:
            q = (q << 1) | ((s >> sh) & 1)
        out = op.perm[q]
        t = s & ~mask
        for n, sh in enumerate(shifts):
            t |= ((out >> (k - 1 - n)) & 1) << sh
        perm.append(t)
        logs.append(op.log_scalars[q])
    return MonomialOperator(total, tuple(perm), tuple(logs))


def compose(ops: Sequence[MonomialOperator]) -> MonomialOperator:
    """Operator product; the rightmost factor acts first."""
    ops = list(ops)
    if not ops:
        raise ValueError("nothing to compose")
    arity = ops[0].arity
    if any(op.arity != arity for op in ops):
        raise ValueError("cannot compose operators of different arity")
    perm = []
    logs = []
    for s in range(1 << arity):
        total = Fraction(0)
        for op in reversed(ops):
            total += op.log_scalars[s]
            s = op.perm[s]
        perm.append(s)
        logs.append(total)
    return MonomialOperator(arity, tuple(perm), tuple(logs))


def fse_sides(q: OperatorQuintuple) -> tuple[MonomialOperator, MonomialOperator]:
    """Both sides of the nonconstant quantum FSE as operators on ten factors."""
    emb = {label: embed(q[label], FACTOR_POSITIONS[label]) for label in LABELS}
    lhs = compose([emb[label] for label in LABELS])
    rhs = compose([emb[label] for label in reversed(LABELS)])
    return lhs, rhs


def verify_nonconstant_qfse(q: OperatorQuintuple) -> Verdict:
    """Exact check in exponent form on all 1024 basis vectors."""
    lhs, rhs = fse_sides(q)
    for s in range(1 << 10):
        if lhs.perm[s] != rhs.perm[s] or lhs.log_scalars[s] != rhs.log_scalars[s]:
            return Verdict(False, s)
    return Verdict(True)


def _power(base: Fraction, e: Fraction) -> Fraction:
    if e.denominator != 1:
        if base == 1:
            return Fraction(1)
        raise ValueError(f"exponent {e} is not an integer; rescale the cocycle to integers first")
    return base ** int(e)


def _check_base(base) -> Fraction:
    base = Fraction(base)
    if base <= 0 or base == 1:
        raise ValueError("base must be a positive rational other than 1")
    return base


def scalar_values(op: MonomialOperator, base) -> list[Fraction]:
    base = _check_base(base)
    return [_power(base, e) for e in op.log_scalars]


def scalar_instantiate(op: MonomialOperator, base) -> list[list[Fraction]]:
    """Dense exact matrix with ``base**log_scalars[s]`` at ``(perm[s], s)``."""
    vals = scalar_values(op, base)
    m = [[Fraction(0)] * op.size for _ in range(op.size)]
    for s, (t, v) in enumerate(zip(op.perm, vals)):
        m[t][s] = v
    return m


def is_pure_permutation(op: MonomialOperator) -> bool:
    return not any(op.log_scalars)


def commutes_with_all_ones(op: MonomialOperator) -> bool:
    """Whether the base-2 instantiation commutes with the all-ones matrix J.

    ``J M = M J`` means every column sum and every row sum of M equals one
    common value, which is how it is checked here.
    """
    m = scalar_instantiate(op, 2)
    col_sums = [sum(m[i][j] for i in range(op.size)) for j in range(op.size)]
    row_sums = [sum(row) for row in m]
    return len(set(col_sums) | set(row_sums)) == 1


_BLOCK_LINE = re.compile(r"^\s*([RSTUV])\s*:\s*(.*)$")


def format_cocycle(c: Sequence) -> str:
    c = CochainVector(c)
    return "\n".join(f"{label}: " + " ".join(str(v) for v in c.block(label)) for label in LABELS) + "\n"


def parse_cocycle(text: str) -> CochainVector:
    """Read five labeled lines ``R: v0 ... v15`` (any order, ``#`` comments allowed)."""
    blocks: dict[str, list[Fraction]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _BLOCK_LINE.match(line)
        if not m:
            raise ValueError(f"cannot parse cocycle line: {raw!r}")
        label = m.group(1)
        if label in blocks:
            raise ValueError(f"block {label} given twice")
        try:
            vals = [Fraction(tok) for tok in m.group(2).split()]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad number in block {label}: {exc}") from None
        if len(vals) != 16:
            raise ValueError(f"block {label} has {len(vals)} values, expected 16")
        blocks[label] = vals
    missing = [label for label in LABELS if label not in blocks]
    if missing:
        raise ValueError(f"cocycle file is missing blocks {missing}")
    values: list[Fraction] = []
    for label in LABELS:
        values.extend(blocks[label])
    assert len(values) == NCOCHAIN
    return CochainVector(values)


def sparse_columns(op: MonomialOperator, base) -> list[dict[int, Fraction]]:
    """Column ``s`` of the instantiated matrix as ``{row: value}``."""
    return [{t: v} for t, v in zip(op.perm, scalar_values(op, base))]


def apply_sparse(columns: Sequence[dict[int, Fraction]], vec: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for j, x in vec.items():
        for i, a in columns[j].items():
            out[i] = out.get(i, 0) + a * x
    return {i: v for i, v in out.items() if v}
