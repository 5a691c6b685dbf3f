"""Truth-table representation of Boolean functions.

Index convention used everywhere in the package: the table entry at index
``i`` is ``f(x)`` where ``x_j`` is bit ``j - 1`` of ``i``, so ``x_1`` is the
least-significant bit.  Variables are numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError

MAX_N = 24


@dataclass(frozen=True)
class Caps:
    """Size limits for the exact algorithms.  Each limit is the largest ``n`` allowed."""

    max_n: int = MAX_N
    bs_point: int = 16
    bs_full: int = 12
    cert_point: int = 16
    cert_full: int = 12
    decision_tree: int = 10
    approx_degree: int = 6
    family_t: int = 20
    huang: int = 12
    spectrum: int = 64

    def check(self, name: str, value: int) -> None:
        limit = getattr(self, name)
        if value > limit:
            raise CapExceededError(name, value, limit)

    def as_dict(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


DEFAULT_CAPS = Caps()


def bit_of(index: int | np.ndarray, var: int):
    """Value of variable ``var`` (1-based) at table index ``index``."""
    return (index >> (var - 1)) & 1


def popcounts(n: int) -> np.ndarray:
    """Hamming weight of every index ``0 .. 2**n - 1``."""
    w = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        w[1 << j : 1 << (j + 1)] = w[: 1 << j] + 1
    return w


def subset_mask(S: Iterable[int], n: int | None = None) -> int:
    mask = 0
    for i in S:
        if i < 1 or (n is not None and i > n):
            raise ValueError(f"variable {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


def mask_to_subset(mask: int) -> frozenset[int]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return frozenset(out)


def flip_set(x: int, S: Iterable[int] | int, n: int | None = None) -> int:
    """Return ``x`` with the bits listed in ``S`` flipped.

    ``S`` is either an iterable of 1-based variable indices or a bitmask.
    """
    mask = S if isinstance(S, (int, np.integer)) else subset_mask(S, n)
    if n is not None and not 0 <= x < (1 << n):
        raise ValueError(f"assignment {x} out of range for n={n}")
    return int(x) ^ int(mask)


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """An ``n``-variable Boolean function stored as a 0/1 truth table.

    Instances are immutable; the table is a read-only ``uint8`` array.
    """

    n: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=np.uint8)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    # equality and hashing go through the table bytes so functions can key caches
    def key(self) -> tuple[int, bytes]:
        return self.n, self.table.tobytes()

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.n <= 4:
            bits = "".join(str(b) for b in self.table)
            return f"BooleanFunction(n={self.n}, table={bits})"
        return f"BooleanFunction(n={self.n}, weight={int(self.table.sum())})"

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __len__(self):
        return 1 << self.n

    @property
    def size(self) -> int:
        return 1 << self.n

    def is_constant(self) -> bool:
        return bool(self.table.min() == self.table.max())

    def weight(self) -> int:
        return int(self.table.sum())

    def to_int(self) -> int:
        """The table packed into an integer, entry ``i`` at bit ``i``."""
        return int.from_bytes(np.packbits(self.table, bitorder="little").tobytes(), "little")

    def negate(self) -> "BooleanFunction":
        return BooleanFunction(self.n, 1 - self.table)


def from_truth_table(n: int, bits: Sequence[int] | np.ndarray, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    """Build a function from its table, validating length and entries."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    caps.check("max_n", n)
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError("truth table must be one-dimensional")
    if arr.shape[0] != 1 << n:
        raise ValueError(f"truth table has length {arr.shape[0]}, expected {1 << n}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("truth table entries must be 0 or 1")
    return BooleanFunction(int(n), arr.astype(np.uint8))


def from_int(n: int, code: int) -> BooleanFunction:
    """Function whose table is the bits of ``code`` (entry ``i`` = bit ``i``)."""
    size = 1 << n
    nbytes = max(1, (size + 7) // 8)
    raw = np.frombuffer(int(code).to_bytes(nbytes, "little"), dtype=np.uint8)
    return BooleanFunction(n, np.unpackbits(raw, bitorder="little")[:size])


def from_callable(n: int, fn) -> BooleanFunction:
    """Tabulate ``fn`` applied to the tuple ``(x_1, ..., x_n)`` of bits."""
    table = [int(bool(fn(tuple((i >> j) & 1 for j in range(n))))) for i in range(1 << n)]
    return from_truth_table(n, table)


def variable_axis(n: int, i: int) -> int:
    """Axis of ``table.reshape((2,)*n)`` that holds variable ``i``."""
    return n - i


def restrict(f: BooleanFunction, i: int, b: int) -> BooleanFunction:
    """Fix ``x_i = b``; variables above ``i`` shift down by one."""
    if not 1 <= i <= f.n:
        raise ValueError(f"variable {i} outside [1, {f.n}]")
    if b not in (0, 1):
        raise ValueError("restriction value must be 0 or 1")
    cube = f.table.reshape((2,) * f.n)
    sub = np.take(cube, b, axis=variable_axis(f.n, i))
    return BooleanFunction(f.n - 1, sub.ravel())


def depends_on(f: BooleanFunction, i: int) -> bool:
    cube = f.table.reshape((2,) * f.n)
    ax = variable_axis(f.n, i)
    return not np.array_equal(np.take(cube, 0, axis=ax), np.take(cube, 1, axis=ax))


def relevant_variables(f: BooleanFunction) -> frozenset[int]:
    return frozenset(i for i in range(1, f.n + 1) if depends_on(f, i))


def to_pm1(f: BooleanFunction) -> np.ndarray:
    """The +-1 view: output bit ``b`` becomes ``(-1)**b``.

    Entry ``i`` of the result is the value at the +-1 point whose coordinate
    ``j`` is ``(-1)**(bit j-1 of i)``, i.e. the same indexing as the table.
    """
    return 1.0 - 2.0 * f.table.astype(np.float64)


def from_pm1(n: int, values: Sequence[float] | np.ndarray) -> BooleanFunction:
    v = np.asarray(values, dtype=np.float64)
    if not np.isin(v, (-1.0, 1.0)).all():
        raise ValueError("+-1 view must contain only -1 and 1")
    return from_truth_table(n, ((1 - v) / 2).astype(np.uint8))


def pm1_point(x: int, n: int) -> tuple[int, ...]:
    """Coordinates of assignment ``x`` in the +-1 encoding (bit 0 -> +1)."""
    return tuple(1 - 2 * ((x >> j) & 1) for j in range(n))


def _zeta_down(values: np.ndarray, n: int, sign: int) -> np.ndarray:
    # sum over subsets; sign=-1 gives the Moebius inverse
    a = values.copy()
    for j in range(n):
        a = a.reshape(-1, 2, 1 << j)
        if sign > 0:
            a[:, 1, :] += a[:, 0, :]
        else:
            a[:, 1, :] -= a[:, 0, :]
    return a.reshape(-1)


@dataclass(frozen=True, eq=False)
class MultilinearPoly:
    """Multilinear polynomial in ``x_1..x_n`` stored densely by subset mask.

    ``coeffs[m]`` is the coefficient of the monomial over the variables whose
    bits are set in ``m``.  Integer dtype for exact representations, float for
    approximations.
    """

    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.ascontiguousarray(self.coeffs)
        if c.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} coefficients, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dict(cls, n: int, terms: dict, dtype=None) -> "MultilinearPoly":
        """Build from ``{subset: coefficient}`` where subsets are iterables of variables."""
        vals = list(terms.values())
        if dtype is None:
            dtype = np.int64 if all(isinstance(v, (int, np.integer)) for v in vals) else np.float64
        c = np.zeros(1 << n, dtype=dtype)
        for S, v in terms.items():
            c[subset_mask(S, n)] += v
        return cls(n, c)

    def as_dict(self) -> dict[frozenset[int], int | float]:
        """Nonzero coefficients keyed by variable subset."""
        return {mask_to_subset(int(m)): self.coeffs[m].item() for m in np.flatnonzero(self.coeffs)}

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    @property
    def degree(self) -> int:
        """Largest monomial size with a nonzero coefficient; the zero polynomial gets 0 (see ``is_zero``)."""
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0:
            return 0
        return int(popcounts(self.n)[nz].max())

    def values01(self) -> np.ndarray:
        """Values at every 0/1 point, indexed like a truth table."""
        return _zeta_down(self.coeffs, self.n, +1)

    def values_pm1(self) -> np.ndarray:
        """Values at every +-1 point (bit 1 of the index means coordinate -1)."""
        a = self.coeffs.astype(np.float64 if self.coeffs.dtype.kind == "f" else np.int64)
        # p(y) = sum_S c_S (-1)^{|S & y|}: an unnormalised Walsh-Hadamard transform
        return walsh_hadamard(a)

    def evaluate(self, point: Sequence[float]) -> float:
        """Value at an arbitrary real point ``(x_1, ..., x_n)``."""
        x = np.asarray(point, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"point must have {self.n} coordinates")
        # monomial values built up bit by bit
        mono = np.ones(1, dtype=np.float64)
        for j in range(self.n):
            mono = np.concatenate([mono, mono * x[j]])
        return float(np.dot(mono, self.coeffs.astype(np.float64)))


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalised fast Walsh-Hadamard transform of a length-``2**n`` vector."""
    a = np.array(values, copy=True)
    size = a.shape[0]
    if size & (size - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        lo = a[:, 0, :].copy()
        a[:, 0, :] += a[:, 1, :]
        a[:, 1, :] = lo - a[:, 1, :]
        h <<= 1
    return a.reshape(-1)


def multilinear_coeffs(f: BooleanFunction) -> MultilinearPoly:
    """Exact integer representation via Moebius inversion over the subset lattice."""
    return MultilinearPoly(f.n, _zeta_down(f.table.astype(np.int64), f.n, -1))
