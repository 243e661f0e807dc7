"""Two-color set-theoretical maps and the four-simplex equation.

Colors are bits.  A quadruple ``(x, y, z, t)`` is packed into a 4-bit integer
with ``x`` as the most significant bit; a state of ten colors is packed into a
10-bit integer with slot 1 most significant.  Position 10 is the one written
``0`` in subscripts such as ``R_{3680}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

Tuple4 = tuple[int, int, int, int]

# Positions of the five factors, in the order R, S, T, U, V.
FACTOR_POSITIONS: dict[str, tuple[int, int, int, int]] = {
    "R": (1, 2, 3, 4),
    "S": (1, 5, 6, 7),
    "T": (2, 5, 8, 9),
    "U": (3, 6, 8, 10),
    "V": (4, 7, 9, 10),
}
LABELS = ("R", "S", "T", "U", "V")

# Application order (first to act comes first).  The left side
# R_1234 S_1567 T_2589 U_3680 V_4790 acts on a state from the right.
LHS_ORDER = ("V", "U", "T", "S", "R")
RHS_ORDER = ("R", "S", "T", "U", "V")

NSTATES = 1 << 10


def pack4(bits: Sequence[int]) -> int:
    x, y, z, t = bits
    return (x << 3) | (y << 2) | (z << 1) | t


def unpack4(v: int) -> Tuple4:
    return ((v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1)


def pack_state(bits: Sequence[int]) -> int:
    if len(bits) != 10:
        raise ValueError(f"a state has 10 colors, got {len(bits)}")
    out = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"colors are 0 or 1, got {b!r}")
        out = (out << 1) | b
    return out


def unpack_state(s: int) -> tuple[int, ...]:
    return tuple((s >> (9 - i)) & 1 for i in range(10))


def get_slot(s: int, pos: int) -> int:
    return (s >> (10 - pos)) & 1


def read_quadruple(s: int, positions: Sequence[int]) -> int:
    """Read the 4-bit argument at ``positions`` (1-based) of a packed state."""
    i, j, k, l = positions
    return (get_slot(s, i) << 3) | (get_slot(s, j) << 2) | (get_slot(s, k) << 1) | get_slot(s, l)


def write_quadruple(s: int, positions: Sequence[int], q: int) -> int:
    for n, pos in enumerate(positions):
        shift = 10 - pos
        bit = (q >> (3 - n)) & 1
        s = (s & ~(1 << shift)) | (bit << shift)
    return s


def check_positions(p: Sequence[int]) -> tuple[int, int, int, int]:
    p = tuple(p)
    if len(p) != 4 or not all(1 <= v <= 10 for v in p) or not all(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"positions must satisfy 1 <= i < j < k < l <= 10, got {p}")
    return p  # type: ignore[return-value]


@dataclass(frozen=True)
class SetMap:
    """A map ``{0,1}^4 -> {0,1}^4`` stored as a 16-entry lookup table."""

    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 16 or not all(0 <= v < 16 for v in self.table):
            raise ValueError("a SetMap table needs 16 entries in range(16)")

    def __call__(self, q: int) -> int:
        return self.table[q]

    def apply(self, bits: Sequence[int]) -> Tuple4:
        return unpack4(self.table[pack4(bits)])

    def is_bijective(self) -> bool:
        return len(set(self.table)) == 16

    @classmethod
    def identity(cls) -> "SetMap":
        return cls(tuple(range(16)))

    @classmethod
    def from_function(cls, f) -> "SetMap":
        return cls(tuple(pack4(f(*unpack4(v))) for v in range(16)))


def _check_binary(m) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(v) for v in row) for row in m)
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise ValueError("expected a 4x4 matrix")
    if any(v not in (0, 1) for r in rows for v in r):
        raise ValueError("matrix entries must be 0 or 1")
    return rows


def transpose(m) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*m))


def linear_map_from_matrix(m) -> SetMap:
    """The F2-linear map ``v -> m v`` acting on column vectors ``(x, y, z, t)``."""
    rows = _check_binary(m)
    table = []
    for v in range(16):
        bits = unpack4(v)
        table.append(pack4([sum(a * b for a, b in zip(row, bits)) % 2 for row in rows]))
    return SetMap(tuple(table))


def apply_embedded(r: SetMap, p: Sequence[int], s: int) -> int:
    """Apply ``r`` to the slots ``p`` of state ``s``; the six other slots are untouched."""
    return write_quadruple(s, p, r(read_quadruple(s, p)))


def _trajectory(r: SetMap, s: int, order: Iterable[str]) -> tuple[int, list[int]]:
    args = []
    for label in order:
        p = FACTOR_POSITIONS[label]
        q = read_quadruple(s, p)
        args.append(q)
        s = write_quadruple(s, p, r(q))
    return s, args


def lhs_trajectory(r: SetMap, s: int) -> tuple[int, list[int]]:
    """Final state of the left side and the arguments each factor received.

    Factors act in the order V, U, T, S, R.
    """
    return _trajectory(r, s, LHS_ORDER)


def rhs_trajectory(r: SetMap, s: int) -> tuple[int, list[int]]:
    """Right-side counterpart of :func:`lhs_trajectory` (order R, S, T, U, V)."""
    return _trajectory(r, s, RHS_ORDER)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: int | None = None

    def __bool__(self) -> bool:
        return self.holds


@lru_cache(maxsize=256)
def verify_set_fse(r: SetMap) -> Verdict:
    """Compare both sides of the set-theoretical FSE on all 1024 states.

    On failure the smallest mismatching state is returned.
    """
    for s in range(NSTATES):
        if lhs_trajectory(r, s)[0] != rhs_trajectory(r, s)[0]:
            return Verdict(False, s)
    return Verdict(True)


_HIETARINTA = {
    "A1": ((0, 1, 0, 1), (1, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 0)),
    "A2": ((0, 1, 1, 1), (1, 0, 1, 1), (0, 0, 1, 0), (0, 0, 0, 1)),
    "A3": ((1, 1, 1, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 1, 1, 1)),
    "A4": ((1, 1, 1, 1), (0, 0, 1, 1), (0, 1, 0, 1), (0, 0, 0, 1)),
}


def hietarinta_catalog() -> list[tuple[str, tuple[tuple[int, ...], ...]]]:
    """Hietarinta's two-color linear solutions and their transposes."""
    out = list(_HIETARINTA.items())
    out += [(name + "T", transpose(m)) for name, m in _HIETARINTA.items()]
    return out


def catalog_map(name: str) -> SetMap:
    return linear_map_from_matrix(catalog_matrix(name))


def catalog_matrix(name: str):
    lookup = {k.upper(): m for k, m in hietarinta_catalog()}
    try:
        return lookup[name.upper()]
    except KeyError:
        raise KeyError(f"unknown catalog matrix {name!r}; known: {', '.join(lookup)}") from None


def parse_matrix_text(text: str):
    """Parse four lines of four characters from ``{0,1}``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 4 or any(len(ln) != 4 or set(ln) - {"0", "1"} for ln in lines):
        raise ValueError("matrix file must hold four lines of four 0/1 characters")
    return tuple(tuple(int(ch) for ch in ln) for ln in lines)


def format_matrix(m) -> str:
    return "\n".join("".join(str(v) for v in row) for row in m)


def resolve_matrix(selector: str):
    """A catalog name (any case) or a path to a matrix file."""
    try:
        return catalog_matrix(selector)
    except KeyError:
        path = Path(selector)
        if not path.is_file():
            raise
        return parse_matrix_text(path.read_text())
