"""Log-linear cocycle systems, coboundaries and the dimension reports.

A log-cochain is a vector of 80 numbers: five blocks of 16, one block per
operator label R, S, T, U, V, each indexed by the packed argument quadruple.
Coordinate ``16 * label_rank + argument``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact_linalg import (
    IntMatrix,
    SubspaceBasis,
    image_dim,
    intersect_dim,
    nullspace,
    projection_dim,
    rank,
    restrict_to_zero_block,
    sum_dim,
)
from .simplex_core import (
    FACTOR_POSITIONS,
    LABELS,
    LHS_ORDER,
    NSTATES,
    RHS_ORDER,
    SetMap,
    lhs_trajectory,
    rhs_trajectory,
    unpack4,
    verify_set_fse,
)

log = logging.getLogger(__name__)

NCOCHAIN = 80
NPSI = 20
LABEL_RANK = {label: i for i, label in enumerate(LABELS)}

# psi_m serves slot n of an operator exactly when that slot sits at position m.
PSI_SLOTS: dict[str, tuple[int, int, int, int]] = dict(FACTOR_POSITIONS)


def cochain_index(label: str, argument: int) -> int:
    return 16 * LABEL_RANK[label] + argument


def split_cochain_index(i: int) -> tuple[str, int]:
    if not 0 <= i < NCOCHAIN:
        raise ValueError(f"cochain index {i} out of range")
    return LABELS[i // 16], i % 16


def block(label: str) -> range:
    start = 16 * LABEL_RANK[label]
    return range(start, start + 16)


def psi_index(m: int, x: int) -> int:
    """Coordinate of log psi_m(x) in a 20-vector (m = 1..10)."""
    return 2 * (m - 1) + x


class CochainVector(tuple):
    """80 exact rationals, the logarithms of phi_R, ..., phi_V."""

    def __new__(cls, values: Sequence):
        values = tuple(Fraction(v) for v in values)
        if len(values) != NCOCHAIN:
            raise ValueError(f"a cochain has {NCOCHAIN} entries, got {len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def zero(cls) -> "CochainVector":
        return cls([0] * NCOCHAIN)

    def block(self, label: str) -> tuple[Fraction, ...]:
        return self[block(label).start : block(label).stop]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self)

    def primitive(self) -> "CochainVector":
        """Smallest positive rescaling to coprime integers (zero stays zero)."""
        from math import gcd, lcm

        den = 1
        for v in self:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in self]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return CochainVector([v // g for v in ints] if g else ints)


@lru_cache(maxsize=64)
def build_cocycle_system(r: SetMap) -> IntMatrix:
    """The 1024 x 80 log-linear system, one row per initial state.

    Row ``s`` has +1 at each argument a left-side factor consumes and -1 at
    each argument a right-side factor consumes; coincident entries cancel.
    """
    if not verify_set_fse(r):
        log.warning("map does not satisfy the set-theoretical FSE; the cocycle system loses its meaning")
    rows = []
    for s in range(NSTATES):
        row = [0] * NCOCHAIN
        for label, q in zip(LHS_ORDER, lhs_trajectory(r, s)[1]):
            row[cochain_index(label, q)] += 1
        for label, q in zip(RHS_ORDER, rhs_trajectory(r, s)[1]):
            row[cochain_index(label, q)] -= 1
        rows.append(tuple(row))
    return IntMatrix(tuple(rows), NCOCHAIN)


@lru_cache(maxsize=64)
def build_coboundary_map(r: SetMap) -> IntMatrix:
    """The 80 x 20 map from log psi_1..psi_10 to the induced log-cochain."""
    rows = []
    for label in LABELS:
        for q in range(16):
            row = [0] * NPSI
            before, after = unpack4(q), unpack4(r(q))
            for slot, m in enumerate(PSI_SLOTS[label]):
                row[psi_index(m, after[slot])] += 1
                row[psi_index(m, before[slot])] -= 1
            rows.append(tuple(row))
    return IntMatrix(tuple(rows), NPSI)


def constants_basis(labels: Sequence[str] = LABELS) -> SubspaceBasis:
    vecs = []
    for label in labels:
        v = [0] * NCOCHAIN
        for i in block(label):
            v[i] = 1
        vecs.append(tuple(v))
    return SubspaceBasis(NCOCHAIN, tuple(vecs))


@lru_cache(maxsize=64)
def coboundary_space(r: SetMap) -> SubspaceBasis:
    return SubspaceBasis.span(NCOCHAIN, build_coboundary_map(r).columns())


@lru_cache(maxsize=64)
def cocycle_basis(r: SetMap) -> SubspaceBasis:
    return nullspace(build_cocycle_system(r))


@dataclass(frozen=True)
class DimensionReport:
    n: int
    d: int
    h: int
    solution_dim: int
    direct_sum_ok: bool
    h_quotient: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "h": self.h,
            "solution_dim": self.solution_dim,
            "direct_sum_ok": self.direct_sum_ok,
        }


def _is_subspace(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    return sum_dim(a, b) == b.dim


def dimension_report(r: SetMap) -> DimensionReport:
    """Rank of the cocycle system, coboundary dimension and ``h = 80 - n - d - 5``.

    ``h_quotient`` is the same number computed directly as the dimension of
    the solution space modulo (coboundaries + constants).
    """
    if not verify_set_fse(r):
        raise ValueError("map does not satisfy the set-theoretical FSE")
    system = build_cocycle_system(r)
    n = rank(system)
    cob = coboundary_space(r)
    d = cob.dim
    const = constants_basis()
    solutions = cocycle_basis(r)
    trivial = sum_dim(cob, const)
    ok = (
        trivial == d + 5
        and intersect_dim(cob, const) == 0
        and _is_subspace(cob, solutions)
        and _is_subspace(const, solutions)
    )
    h = NCOCHAIN - n - d - 5
    if not ok:
        log.warning("coboundaries and constants are not a direct sum inside the solution space")
    return DimensionReport(n, d, h, NCOCHAIN - n, ok, solutions.dim - trivial)


@dataclass(frozen=True)
class ConstrainedReport:
    constrained_dim: int
    constrained_coboundary_dim: int
    constant_dim: int
    essential: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.constrained_dim, self.constrained_coboundary_dim, self.constant_dim, self.essential)


@lru_cache(maxsize=64)
def constrained_cocycle_basis(r: SetMap) -> SubspaceBasis:
    """Cocycles with log phi_V identically zero."""
    return restrict_to_zero_block(cocycle_basis(r), block("V"))


@lru_cache(maxsize=64)
def constrained_coboundary_basis(r: SetMap) -> SubspaceBasis:
    return restrict_to_zero_block(coboundary_space(r), block("V"))


def constrained_report(r: SetMap) -> ConstrainedReport:
    if not verify_set_fse(r):
        raise ValueError("map does not satisfy the set-theoretical FSE")
    cons = constrained_cocycle_basis(r)
    cob = constrained_coboundary_basis(r)
    return ConstrainedReport(cons.dim, cob.dim, 4, cons.dim - cob.dim - 4)


def psi_restricted_coboundary_dim(r: SetMap, frozen_psi: Sequence[int] = (4, 7, 9, 10)) -> int:
    """Coboundary dimension when the psi functions on ``frozen_psi`` are constant.

    Alternative reading of the constrained coboundary count: phi_V is then
    trivially 1.  Agrees with the intersection for A1.
    """
    cols = [psi_index(m, x) for m in range(1, 11) if m not in frozen_psi for x in (0, 1)]
    return image_dim(build_coboundary_map(r).select_columns(cols))


@dataclass(frozen=True)
class OperatorDims:
    label: str
    cocycle_proj_dim: int
    coboundary_proj_dim: int
    essential: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.cocycle_proj_dim, self.coboundary_proj_dim, self.essential)


def per_operator_dims(r: SetMap) -> list[OperatorDims]:
    """Per-operator projections of the constrained cocycle and coboundary spaces."""
    if not verify_set_fse(r):
        raise ValueError("map does not satisfy the set-theoretical FSE")
    cons = constrained_cocycle_basis(r)
    cob = constrained_coboundary_basis(r)
    out = []
    for label in ("R", "S", "T", "U"):
        pc = projection_dim(cons, block(label))
        pb = projection_dim(cob, block(label))
        out.append(OperatorDims(label, pc, pb, pc - pb - 1))
    return out
