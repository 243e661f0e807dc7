"""Tetrahedron-equation operators and their analysis.

K, L, M, N act on three two-dimensional factors (8x8 matrices).  The
equation lives on six factors; the original space labels 1, 2, 3, 5, 6, 8 are
renumbered 1..6 in order, which puts K on (1,2,3), L on (1,4,5), M on (2,4,6)
and N on (3,5,6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import least_squares

from .cohomology import NCOCHAIN, CochainVector, block, build_cocycle_system
from .exact_linalg import SubspaceBasis
from .polynomial import VARIABLES, MultiPoly, PolyMatrix, embed_matrix, permute_factors, weighted_partial_trace
from .quantum_ops import (
    OperatorQuintuple,
    apply_sparse,
    embed,
    quintuple_from_cocycle,
    scalar_instantiate,
    sparse_columns,
)
from .simplex_core import FACTOR_POSITIONS, SetMap, Verdict

# Original space labels of the tetrahedron equation -> factor numbers 1..6.
SPACE_RELABEL = {1: 1, 2: 2, 3: 3, 5: 4, 6: 5, 8: 6}
TETRA_SPACES = {"K": (1, 2, 3), "L": (1, 5, 6), "M": (2, 5, 8), "N": (3, 6, 8)}
TETRA_POSITIONS = {name: tuple(SPACE_RELABEL[s] for s in spaces) for name, spaces in TETRA_SPACES.items()}

# Which four-simplex operator descends to which tetrahedron operator.
DESCENT = {"K": "R", "L": "S", "M": "T", "N": "U"}

ALL_ONES = ((1, 1), (1, 1))

# Nonzero entries (0-based row, col) and the parameter each one carries.
KL_PATTERN = {
    (0, 0): 0, (1, 2): 0, (2, 1): 0, (3, 3): 0,
    (0, 5): 1, (1, 7): 1, (2, 4): 1, (3, 6): 1, (4, 2): 1, (5, 0): 1, (6, 3): 1, (7, 1): 1,
    (4, 7): 2, (5, 5): 2, (6, 6): 2, (7, 4): 2,
}  # fmt: skip
MN_PATTERN = {
    (0, 0): 0, (2, 4): 0, (4, 2): 0, (6, 6): 0,
    (0, 5): 1, (1, 2): 1, (2, 1): 1, (3, 6): 1, (4, 7): 1, (5, 0): 1, (6, 3): 1, (7, 4): 1,
    (1, 7): 2, (3, 3): 2, (5, 5): 2, (7, 1): 2,
}  # fmt: skip


def _from_pattern(pattern: Mapping[tuple[int, int], int], params: Sequence) -> PolyMatrix:
    m = PolyMatrix.zeros(8)
    for (i, j), which in pattern.items():
        m.entries[i][j] = MultiPoly.coerce(params[which])
    return m


def family_KL(a=None, b=None, c=None) -> PolyMatrix:
    """Symmetric 8x8 family for K and L; omitted parameters stay formal."""
    params = [MultiPoly.var(n) if v is None else v for n, v in zip(VARIABLES[:3], (a, b, c))]
    return _from_pattern(KL_PATTERN, params)


def family_MN(a=None, b=None, c=None) -> PolyMatrix:
    """Symmetric 8x8 family for M and N in the primed parameters."""
    params = [MultiPoly.var(n) if v is None else v for n, v in zip(VARIABLES[3:], (a, b, c))]
    return _from_pattern(MN_PATTERN, params)


@dataclass(frozen=True)
class TetraQuadruple:
    K: PolyMatrix
    L: PolyMatrix
    M: PolyMatrix
    N: PolyMatrix

    def __post_init__(self):
        if any(x.dim != 8 for x in self):
            raise ValueError("tetrahedron operators are 8x8")

    def __iter__(self):
        return iter((self.K, self.L, self.M, self.N))

    def items(self):
        return zip("KLMN", self)

    def serialize(self) -> dict:
        return {name: [list(e) for e in x.entry_list()] for name, x in self.items()}

    @classmethod
    def deserialize(cls, d: Mapping) -> "TetraQuadruple":
        return cls(*(PolyMatrix.from_entry_list(8, [tuple(e) for e in d[name]]) for name in "KLMN"))


def family_quadruple(params: Sequence | None = None) -> TetraQuadruple:
    """(K, L, M, N) = (KL, KL, MN, MN); ``params`` = (a, b, c, a', b', c') or formal."""
    params = [None] * 6 if params is None else list(params)
    kl = family_KL(*params[:3])
    mn = family_MN(*params[3:])
    return TetraQuadruple(kl, kl, mn, mn)


@dataclass(frozen=True)
class TetraVerdict:
    holds: bool
    difference: PolyMatrix

    def __bool__(self) -> bool:
        return self.holds

    def parameters_involved(self) -> set[str]:
        out: set[str] = set()
        for row in self.difference.entries:
            for x in row:
                out |= x.variables()
        return out


def tetrahedron_sides(q: TetraQuadruple) -> tuple[PolyMatrix, PolyMatrix]:
    emb = {name: embed_matrix(x, TETRA_POSITIONS[name], 6) for name, x in q.items()}
    lhs = emb["K"] @ emb["L"] @ emb["M"] @ emb["N"]
    rhs = emb["N"] @ emb["M"] @ emb["L"] @ emb["K"]
    return lhs, rhs


def verify_tetrahedron(q: TetraQuadruple) -> TetraVerdict:
    """Check ``K_123 L_145 M_246 N_356 = N_356 M_246 L_145 K_123`` entrywise as polynomials."""
    lhs, rhs = tetrahedron_sides(q)
    diff = lhs - rhs
    return TetraVerdict(diff.is_zero(), diff)


def check_constrained_cocycle(r: SetMap, c: Sequence) -> CochainVector:
    c = CochainVector(c)
    if any(c[i] for i in block("V")):
        raise ValueError("cochain is not constrained: its phi_V block is nonzero")
    system = build_cocycle_system(r)
    if any(system.apply(c)):
        raise ValueError("cochain does not satisfy the cocycle equations")
    return c


def _instantiated(op, base) -> PolyMatrix:
    return PolyMatrix(scalar_instantiate(op, base))


def trace_construct(r: SetMap, c: Sequence, base=2) -> TetraQuadruple:
    """Descend a constrained cocycle to (K, L, M, N) by all-ones weighted traces.

    Each operator is traced over its fourth factor (spaces 4, 7, 9, 10).
    """
    c = check_constrained_cocycle(r, c)
    quint = quintuple_from_cocycle(r, c)
    mats = [weighted_partial_trace(_instantiated(quint[DESCENT[name]], base), 4, ALL_ONES) for name in "KLMN"]
    return TetraQuadruple(*mats)


def _apply_all_ones(vec: dict[int, Fraction], positions: Sequence[int], total: int = 10) -> dict[int, Fraction]:
    # The all-ones matrix on each listed factor: sum over those bits, then spread.
    mask = 0
    shifts = [total - p for p in positions]
    for sh in shifts:
        mask |= 1 << sh
    sums: dict[int, Fraction] = {}
    for i, v in vec.items():
        rest = i & ~mask
        sums[rest] = sums.get(rest, 0) + v
    out: dict[int, Fraction] = {}
    for rest, v in sums.items():
        if not v:
            continue
        for pattern in range(1 << len(shifts)):
            j = rest
            for n, sh in enumerate(shifts):
                j |= ((pattern >> (len(shifts) - 1 - n)) & 1) << sh
            out[j] = v
    return out


def conjugated_sides(quint: OperatorQuintuple, base) -> tuple[list[dict], list[dict]]:
    """Columns of ``P R S T U`` and ``V P U T S R V^-1`` on ten factors."""
    cols = {
        label: sparse_columns(embed(quint[label], FACTOR_POSITIONS[label]), base) for label in "RSTUV"
    }
    vinv = sparse_columns(embed(quint.V.inverse(), FACTOR_POSITIONS["V"]), base)
    ppos = FACTOR_POSITIONS["V"]
    lhs, rhs = [], []
    for s in range(1 << 10):
        v = {s: Fraction(1)}
        for label in "UTSR":
            v = apply_sparse(cols[label], v)
        lhs.append(_apply_all_ones(v, ppos))
        w = apply_sparse(vinv, {s: Fraction(1)})
        for label in "RSTU":
            w = apply_sparse(cols[label], w)
        w = _apply_all_ones(w, ppos)
        rhs.append(apply_sparse(cols["V"], w))
    return lhs, rhs


def verify_conjugated_identity(r: SetMap, c: Sequence, base=2) -> Verdict:
    """Exact check of ``P R S T U = V P U T S R V^-1`` with P all-ones on 4, 7, 9, 10.

    The counterexample, if any, is the first basis column that differs.
    """
    c = check_constrained_cocycle(r, c)
    quint = quintuple_from_cocycle(r, c)
    lhs, rhs = conjugated_sides(quint, base)
    for s, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            return Verdict(False, s)
    return Verdict(True)


# --- genuine three-dimensionality --------------------------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    while len(a) >= len(b):
        k = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[i + shift] -= k * x
        a = _trim(a)
    return a


def poly_gcd(polys: Sequence[Sequence]) -> list[Fraction]:
    """Monic gcd of univariate polynomials (coefficients low to high); [] if all are zero."""
    g: list[Fraction] = []
    for p in polys:
        p = _trim([Fraction(x) for x in p])
        while p:
            g, p = p, poly_mod(g, p)
        if g:
            g = [x / g[-1] for x in g]
    return g


@dataclass(frozen=True)
class FactorReducibility:
    factor: int
    irreducible: bool
    gcd: tuple[Fraction, ...]
    rational_u: Fraction | None = None
    infinite_u: bool = False


@dataclass(frozen=True)
class Genuine3DReport:
    factors: tuple[FactorReducibility, ...]
    samples: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def irreducible(self) -> bool:
        return all(f.irreducible for f in self.factors)

    def irreducible_for(self, factor: int) -> bool:
        return all(f.irreducible for f in self.factors if f.factor == factor)


def _factor_test(k: list[list[Fraction]], factor: int) -> FactorReducibility:
    # Invariant subspace span{(1,u)} (x) V' requires K10 + u(K11 - K00) - u^2 K01 = 0.
    polys = []
    for i in range(4):
        for j in range(4):
            k00, k01 = k[i][j], k[i][j + 4]
            k10, k11 = k[i + 4][j], k[i + 4][j + 4]
            polys.append([k10, k11 - k00, -k01])
    g = poly_gcd(polys)
    k01_zero = all(k[i][j + 4] == 0 for i in range(4) for j in range(4))
    root = None
    if len(g) == 2:
        root = -g[0] / g[1]
    reducible = (not g) or len(g) > 1 or k01_zero
    return FactorReducibility(factor, not reducible, tuple(g), root, k01_zero)


_FACTOR_ORDERS = {1: (1, 2, 3), 2: (2, 1, 3), 3: (3, 1, 2)}
DEFAULT_SAMPLES = ((1, 2, 3), (2, 3, 7), (5, 1, 4))


def genuine_3d_check(k: PolyMatrix, samples: Sequence[Sequence] | None = None) -> Genuine3DReport:
    """Look for a vector (1, u) on one factor spanning an invariant block.

    Symbolic parameters are replaced by each sample point in turn; a sample
    lists values for a, b, c, a', b', c' and is reused cyclically when
    shorter.  A factor counts as irreducible only when it is
    irreducible at every sample.  The vector (0, 1), i.e. u at infinity, is
    tested too.
    """
    if k.dim != 8:
        raise ValueError("expected an 8x8 matrix")
    names = sorted({v for row in k.entries for x in row for v in x.variables()}, key=VARIABLES.index)
    if names:
        points = [tuple(Fraction(v) for v in s) for s in (samples or DEFAULT_SAMPLES)]
    else:
        points = [()]
    results = []
    for factor, order in _FACTOR_ORDERS.items():
        km = permute_factors(k, order)
        per_point = []
        for pt in points:
            point = {n: pt[VARIABLES.index(n) % len(pt)] for n in names}
            per_point.append(_factor_test(km.evaluate(point).to_rational(), factor))
        bad = [f for f in per_point if not f.irreducible]
        results.append(bad[0] if bad else per_point[0])
    return Genuine3DReport(tuple(results), tuple(points) if names else ())


# --- vacuum vectors -------------------------------------------------------------


@dataclass(frozen=True)
class VacuumResult:
    found: bool
    residual: float
    angles: tuple[float, ...] | None = None
    mapping: tuple[int, ...] | None = None
    starts_used: int = 0

    def basis(self) -> tuple[np.ndarray, ...] | None:
        if self.angles is None:
            return None
        return tuple(np.array([math.cos(t), math.sin(t)]) for t in self.angles)


_MIN_SEPARATION = 0.2


def _unit(theta: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _vacuum_sines(k: np.ndarray, theta: np.ndarray) -> list[np.ndarray]:
    """For a batch of angle vectors (S, 6): sines (S, 8, 2) per tensor mode.

    Entry [s, x, i] is the sine of the angle between every mode-n fibre of
    ``k`` applied to product vector ``x`` and the i-th candidate basis vector.
    """
    f, g, h = _unit(theta[:, 0:2]), _unit(theta[:, 2:4]), _unit(theta[:, 4:6])
    x = np.einsum("sia,sjb,skc->sijkabc", f, g, h).reshape(-1, 8, 8)
    y = np.einsum("pq,sxq->sxp", k, x).reshape(-1, 8, 2, 2, 2)
    norms = np.linalg.norm(y.reshape(-1, 8, 8), axis=2)
    safe = np.maximum(norms, 1e-300)[..., None]
    flats = (
        y.reshape(-1, 8, 2, 4),
        y.transpose(0, 1, 3, 2, 4).reshape(-1, 8, 2, 4),
        y.transpose(0, 1, 4, 2, 3).reshape(-1, 8, 2, 4),
    )
    out = []
    for mode, vecs in zip(flats, (f, g, h)):
        perp = np.stack([-vecs[..., 1], vecs[..., 0]], axis=-1)
        s = np.linalg.norm(np.einsum("sia,sxab->sxib", perp, mode), axis=3) / safe
        s[norms < 1e-12] = 1.0
        out.append(s)
    return out


def _vacuum_residual(theta: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Residual vectors (S, 27): 24 nearest-candidate sines plus 3 basis-separation penalties."""
    sines = _vacuum_sines(k, theta)
    parts = [s.min(axis=2) for s in sines]
    sep = np.abs(np.sin(theta[:, 0::2] - theta[:, 1::2]))
    parts.append(np.maximum(0.0, _MIN_SEPARATION - sep))
    return np.concatenate(parts, axis=1)


def _batched_lm(k: np.ndarray, theta: np.ndarray, iters: int = 300) -> tuple[np.ndarray, np.ndarray]:
    """Levenberg-Marquardt run independently on every row of ``theta``.

    Rows leave the loop once converged or once their damping saturates.
    """
    eps = 1e-7
    theta = theta.copy()
    nparam = theta.shape[1]
    mu = np.full(len(theta), 1e-3)
    r = _vacuum_residual(theta, k)
    cost = np.sum(r**2, axis=1)
    active = np.arange(len(theta))
    eye = np.eye(nparam)
    for _ in range(iters):
        if not len(active):
            break
        th, ra, ma = theta[active], r[active], mu[active]
        jac = np.empty(ra.shape + (nparam,))
        for p in range(nparam):
            step = th.copy()
            step[:, p] += eps
            jac[:, :, p] = (_vacuum_residual(step, k) - ra) / eps
        jtj = np.einsum("sri,srj->sij", jac, jac)
        jtr = np.einsum("sri,sr->si", jac, ra)
        damp = jtj + ma[:, None, None] * (eye + np.einsum("sii->si", jtj)[:, :, None] * eye)
        delta = -np.linalg.solve(damp, jtr[..., None])[..., 0]
        trial = th + delta
        r_new = _vacuum_residual(trial, k)
        cost_new = np.sum(r_new**2, axis=1)
        better = cost_new < cost[active]
        theta[active[better]] = trial[better]
        r[active[better]] = r_new[better]
        cost[active[better]] = cost_new[better]
        mu[active] = np.clip(np.where(better, ma * 0.3, ma * 10.0), 1e-12, 1e8)
        active = active[(cost[active] > 1e-24) & (mu[active] < 1e8)]
    return theta, cost


def vacuum_search(k, seed: int = 0, starts: int = 1000, tol: float = 1e-10) -> VacuumResult:
    """Numeric search for bases f, g, h whose products K maps onto multiples of products.

    Vectors are parametrized by angles, so (0, 1) is reachable.  Success needs
    the summed squared residual below ``tol``, every basis pair separated by at
    least ``_MIN_SEPARATION`` in |sin|, and the induced index map to be a
    bijection.  This is evidence, not proof, when nothing is found.  family_KL
    with a = c does have one: the Hadamard product basis.
    """
    k = np.asarray(k.to_float() if isinstance(k, PolyMatrix) else k, dtype=float)
    if k.shape != (8, 8):
        raise ValueError("expected an 8x8 matrix")
    scale = np.abs(k).max()
    if scale > 0:
        k = k / scale
    rng = np.random.default_rng(seed)
    theta0 = rng.uniform(0, math.pi, (starts, 6))
    theta, cost = _batched_lm(k, theta0)
    order = np.argsort(cost)
    best = float(cost[order[0]])
    for idx in order[:20]:
        if cost[idx] > 1e-4:
            break
        sol = least_squares(
            lambda t: _vacuum_residual(t[None, :], k)[0], theta[idx], xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        resid = float(np.sum(sol.fun**2))
        best = min(best, resid)
        if resid < tol:
            mapping = _vacuum_mapping(k, sol.x)
            if mapping is not None:
                return VacuumResult(True, resid, tuple(float(t) for t in sol.x), mapping, starts)
    return VacuumResult(False, best, starts_used=starts)


def _vacuum_mapping(k: np.ndarray, theta: np.ndarray) -> tuple[int, ...] | None:
    sines = _vacuum_sines(k, theta[None, :])
    picks = [s[0].argmin(axis=1) for s in sines]
    for n in range(3):
        if abs(math.sin(theta[2 * n] - theta[2 * n + 1])) < _MIN_SEPARATION:
            return None
    mapping = tuple(int(4 * i + 2 * j + l) for i, j, l in zip(*picks))
    if len(set(mapping)) != 8:
        return None
    return mapping


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix sending e_s to e_perm[s]."""
    m = np.zeros((len(perm), len(perm)))
    for s, t in enumerate(perm):
        m[t, s] = 1.0
    return m


# --- thermodynamics -----------------------------------------------------------


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _split_square(n: int, limit: int = 10**4) -> tuple[int, int]:
    """Write ``n = s**2 * m``, pulling out square factors of primes below ``limit``."""
    s, p = 1, 2
    while p < limit and p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        return s * r, 1
    return s, n


@dataclass(frozen=True)
class QuadraticNumber:
    """``p + q * sqrt(d)`` with rational p, q and a fixed rational radicand d >= 0."""

    p: Fraction
    q: Fraction
    d: Fraction

    @classmethod
    def make(cls, p, q, d) -> "QuadraticNumber":
        p, q, d = Fraction(p), Fraction(q), Fraction(d)
        if d < 0:
            raise ValueError("negative radicand")
        root = _rational_sqrt(d)
        if root is not None:
            return cls(p + q * root, Fraction(0), d)
        square, free = _split_square(d.numerator * d.denominator)
        return cls(p, q * square / d.denominator, Fraction(free))

    def _lift(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.q and self.q and other.d != self.d:
                raise ValueError("different radicands")
            return other
        return QuadraticNumber(Fraction(other), Fraction(0), self.d)

    def __add__(self, other) -> "QuadraticNumber":
        o = self._lift(other)
        return QuadraticNumber.make(self.p + o.p, self.q + o.q, self.d if self.q else o.d)

    __radd__ = __add__

    def __sub__(self, other) -> "QuadraticNumber":
        o = self._lift(other)
        return self + QuadraticNumber(-o.p, -o.q, o.d)

    def __mul__(self, other) -> "QuadraticNumber":
        o = self._lift(other)
        d = self.d if self.q else o.d
        return QuadraticNumber.make(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            conj = QuadraticNumber(other.p, -other.q, other.d)
            norm = other.p**2 - other.q**2 * other.d
            return (self * conj) * (1 / norm)
        return self * (1 / Fraction(other))

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        return self.p == o.p and self.q == o.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __str__(self) -> str:
        if not self.q:
            return str(self.p)
        return f"{self.p} + {self.q}*sqrt({self.d})"


@dataclass(frozen=True)
class ThermoResult:
    a: Fraction
    b: Fraction
    c: Fraction
    trace: Fraction
    discriminant: Fraction
    lam: QuadraticNumber
    u1: QuadraticNumber
    u2: QuadraticNumber
    eigen_identity: bool
    lam_approx: float = field(init=False)
    u1_approx: float = field(init=False)
    free_energy: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lam_approx", float(self.lam))
        object.__setattr__(self, "u1_approx", float(self.u1))
        object.__setattr__(self, "free_energy", math.log(float(self.lam)))

    def omega(self, which: int = 1) -> list[QuadraticNumber]:
        u = self.u1 if which == 1 else self.u2
        one = QuadraticNumber(Fraction(1), Fraction(0), self.discriminant)
        return [one] * 4 + [u] * 4


def eigen_identity(k: PolyMatrix, lam: QuadraticNumber, omega: Sequence[QuadraticNumber]) -> bool:
    """Exact check of ``k omega = lam omega`` over Q(sqrt d)."""
    rk = k.to_rational()
    for i in range(8):
        acc = QuadraticNumber(Fraction(0), Fraction(0), lam.d)
        for j in range(8):
            if rk[i][j]:
                acc = acc + omega[j] * rk[i][j]
        if acc != lam * omega[i]:
            return False
    return True


def thermo(a, b, c) -> ThermoResult:
    """Perron eigen-data of ((a, b), (b, c)) and the free energy per vertex ``log lambda``.

    The eigenvector (1, u1) with u1 > 0 gives the product eigenvector
    Omega_1 = (1, u1) x (1, 1) x (1, 1) of K, checked exactly.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if min(a, b, c) <= 0:
        raise ValueError("thermo needs positive a, b, c")
    disc = (a - c) ** 2 + 4 * b * b
    root = QuadraticNumber.make(0, 1, disc)
    lam = root * Fraction(1, 2) + (a + c) / 2
    lam2 = root * Fraction(-1, 2) + (a + c) / 2
    u1 = (lam - a) / b
    u2 = (lam2 - a) / b
    k = family_KL(a, b, c)
    one = QuadraticNumber(Fraction(1), Fraction(0), disc)
    ok = eigen_identity(k, lam, [one] * 4 + [u1] * 4) and eigen_identity(k, lam2, [one] * 4 + [u2] * 4)
    return ThermoResult(a, b, c, a + c, disc, lam, u1, u2, ok)


# --- symmetric pattern fitting --------------------------------------------------


@dataclass(frozen=True)
class MatrixFit:
    name: str
    pattern_ok: bool
    symmetric: bool
    fitted: tuple[MultiPoly, MultiPoly, MultiPoly] | None


@dataclass(frozen=True)
class SymmetryReport:
    fits: tuple[MatrixFit, ...]

    @property
    def pattern_ok(self) -> bool:
        return all(f.pattern_ok for f in self.fits)

    @property
    def symmetric(self) -> bool:
        return all(f.symmetric for f in self.fits)

    def fitted_params(self) -> dict[str, tuple[str, str, str] | None]:
        return {f.name: None if f.fitted is None else tuple(str(x) for x in f.fitted) for f in self.fits}

    def proportional(self, first: str, second: str) -> bool:
        """Whether two fitted parameter triples differ by one nonzero constant factor."""
        fits = {f.name: f.fitted for f in self.fits}
        x, y = fits[first], fits[second]
        if x is None or y is None or not all(v.is_constant() for v in x + y):
            return False
        xs = [v.constant_value() for v in x]
        ys = [v.constant_value() for v in y]
        if any((p == 0) != (q == 0) for p, q in zip(xs, ys)):
            return False
        ratios = {q / p for p, q in zip(xs, ys) if p}
        return len(ratios) <= 1


def _fit(m: PolyMatrix, pattern: Mapping[tuple[int, int], int]) -> tuple[MultiPoly, ...] | None:
    values: list[set] = [set(), set(), set()]
    for (i, j), which in pattern.items():
        values[which].add(m[i, j])
    if any(len(v) != 1 for v in values):
        return None
    return tuple(next(iter(v)) for v in values)


def symmetric_pattern_check(q: TetraQuadruple) -> SymmetryReport:
    fits = []
    for name, m in q.items():
        pattern = KL_PATTERN if name in "KL" else MN_PATTERN
        ok = m.nonzero_pattern() <= frozenset(pattern)
        sym = m.is_symmetric()
        fitted = _fit(m, pattern) if ok and sym else None
        fits.append(MatrixFit(name, ok, sym, fitted))
    return SymmetryReport(tuple(fits))


# --- symmetric constrained cocycles -------------------------------------------


def trace_entry_arguments(r: SetMap) -> dict[tuple[int, int], list[int]]:
    """For the traced 8x8 matrix: which 4-bit arguments feed entry (row, col).

    Entry ``(out, in)`` collects ``phi(x, y, z, t)`` over ``t`` with
    ``in = (x, y, z)`` and the first three output colors equal to ``out``.
    """
    ent: dict[tuple[int, int], list[int]] = {}
    for q in range(16):
        ent.setdefault((r(q) >> 1, q >> 1), []).append(q)
    return ent


@dataclass(frozen=True)
class SymmetricReport:
    symmetric_dim: int
    constant_dim: int
    coboundary_overlap: int
    essential: int
    basis: SubspaceBasis


def symmetric_constrained_basis(r: SetMap) -> SubspaceBasis:
    """Constrained cocycles whose traced K, L, M, N are all symmetric.

    Every traced entry must be a single monomial ``base**phi`` for this to be
    a linear condition on logarithms; otherwise ValueError.
    """
    from .cohomology import cochain_index, constrained_cocycle_basis
    from .exact_linalg import IntMatrix, nullspace

    ent = trace_entry_arguments(r)
    if any(len(v) != 1 for v in ent.values()):
        raise ValueError("traced entries are sums of several terms; symmetry is not linear in logs")
    rows = []
    for label in "RSTU":
        for (i, j), args in ent.items():
            if i < j:
                other = ent.get((j, i))
                if other is None:
                    raise ValueError("traced nonzero pattern is not symmetric")
                row = [0] * NCOCHAIN
                row[cochain_index(label, args[0])] += 1
                row[cochain_index(label, other[0])] -= 1
                rows.append(row)
            elif i > j and (j, i) not in ent:
                raise ValueError("traced nonzero pattern is not symmetric")
    cons = constrained_cocycle_basis(r)
    if not rows:
        return cons
    restricted = IntMatrix.from_rows(
        [[sum(a * b for a, b in zip(row, v)) for v in cons.vectors] for row in rows], cons.dim
    )
    combos = nullspace(restricted)
    vecs = [[sum(x * v[k] for x, v in zip(combo, cons.vectors)) for k in range(NCOCHAIN)] for combo in combos]
    return SubspaceBasis.span(NCOCHAIN, vecs)


def symmetric_constrained_report(r: SetMap) -> SymmetricReport:
    from .cohomology import constants_basis, constrained_coboundary_basis
    from .exact_linalg import intersect_dim

    sym = symmetric_constrained_basis(r)
    const = intersect_dim(sym, constants_basis("RSTU"))
    cob = intersect_dim(sym, constrained_coboundary_basis(r))
    return SymmetricReport(sym.dim, const, cob, sym.dim - const - cob, sym)
