"""Induced subgraphs of the cube, the Gotsman-Linial twist and Chung's construction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import DEFAULT_CAPS, BooleanFunction, Caps, popcounts, subset_mask
from .errors import CapExceededError
from .measures import sensitivity_at


@dataclass(frozen=True, eq=False)
class InducedSubgraph:
    """Vertex subset of ``Q_n`` given as a boolean membership mask of length ``2**n``.

    ``u ~ v`` iff ``u ^ v`` is a power of two; edges are never stored.
    """

    n: int
    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.mask, dtype=bool)
        if m.shape != (1 << self.n,):
            raise ValueError(f"mask must have length {1 << self.n}")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "InducedSubgraph":
        m = np.zeros(1 << n, dtype=bool)
        v = np.fromiter((int(u) for u in vertices), dtype=np.int64)
        if v.size and (v.min() < 0 or v.max() >= 1 << n):
            raise ValueError(f"vertex index out of range for n={n}")
        m[v] = True
        return cls(n, m)

    @classmethod
    def full(cls, n: int) -> "InducedSubgraph":
        return cls(n, np.ones(1 << n, dtype=bool))

    def __eq__(self, other):
        return isinstance(other, InducedSubgraph) and self.n == other.n and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.n, self.mask.tobytes()))

    def __len__(self):
        return int(self.mask.sum())

    @property
    def vertices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def complement(self) -> "InducedSubgraph":
        return InducedSubgraph(self.n, ~self.mask)

    def degrees(self) -> np.ndarray:
        """Degree inside the subgraph for every cube vertex (0 outside)."""
        idx = np.arange(1 << self.n)
        deg = np.zeros(1 << self.n, dtype=np.int64)
        for j in range(self.n):
            deg += self.mask[idx ^ (1 << j)]
        return np.where(self.mask, deg, 0)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def average_degree(self) -> float:
        size = len(self)
        return 2.0 * self.edge_count() / size if size else 0.0


def max_degree(G: InducedSubgraph) -> int:
    """Maximum degree; the empty subgraph gets 0."""
    if not G.mask.any():
        return 0
    return int(G.degrees().max())


def max_degree_many(n: int, masks: np.ndarray) -> np.ndarray:
    """Maximum degree of each row of a ``(m, 2**n)`` membership array."""
    masks = np.asarray(masks, dtype=bool)
    idx = np.arange(1 << n)
    deg = np.zeros(masks.shape, dtype=np.int16)
    for j in range(n):
        deg += masks[:, idx ^ (1 << j)]
    deg = np.where(masks, deg, 0)
    return deg.max(axis=1) if masks.shape[1] else np.zeros(masks.shape[0], dtype=np.int16)


def from_function(f: BooleanFunction, level: int = 1) -> InducedSubgraph:
    """Subgraph on ``{x : f(x) = level}``."""
    if level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    return InducedSubgraph(f.n, f.table == level)


def gamma(f: BooleanFunction) -> int:
    """``max(Delta(G), Delta(Q_n minus G))`` for ``G`` the 1-set of ``f``."""
    return max(max_degree(from_function(f, 0)), max_degree(from_function(f, 1)))


def degree_sensitivity_link(f: BooleanFunction, x: int) -> tuple[int, int]:
    """``(deg of x inside its own level set, n - s(f, x))``; the two always agree."""
    side = from_function(f, f(x))
    return int(side.degrees()[x]), f.n - sensitivity_at(f, x)


def gl_twist(f: BooleanFunction) -> BooleanFunction:
    """``f`` times parity in the +-1 view: flip the output at odd-weight inputs."""
    return BooleanFunction(f.n, f.table ^ (popcounts(f.n) & 1).astype(np.uint8))


# ---------------------------------------------------------------- set families

@dataclass(frozen=True)
class SetFamily:
    """Nonempty, distinct subsets of ``[n]``."""

    n: int
    members: tuple[frozenset[int], ...]

    def __post_init__(self):
        members = tuple(frozenset(m) for m in self.members)
        for m in members:
            if not m:
                raise ValueError("family members must be nonempty")
            if min(m) < 1 or max(m) > self.n:
                raise ValueError(f"member {sorted(m)} is not a subset of [1, {self.n}]")
        if len(set(members)) != len(members):
            raise ValueError("duplicate family members")
        object.__setattr__(self, "members", members)

    def masks(self) -> list[int]:
        return [subset_mask(m) for m in self.members]

    def __len__(self):
        return len(self.members)


def chung_partition(n: int) -> SetFamily:
    """Partition of ``[n]`` into about ``sqrt(n)`` contiguous parts of size floor/ceil ``sqrt(n)``.

    Tries ``k = ceil(sqrt n)`` parts, then ``k = floor(sqrt n)``; larger parts come first.
    """
    if n < 1:
        raise ValueError("n must be positive")
    lo = math.isqrt(n)
    hi = lo if lo * lo == n else lo + 1
    for k in (hi, lo):
        y = n - k * lo  # number of parts of size hi
        if 0 <= y <= k:
            sizes = [hi] * y + [lo] * (k - y)
            parts, start = [], 1
            for s in sizes:
                parts.append(frozenset(range(start, start + s)))
                start += s
            return SetFamily(n, tuple(parts))
    raise AssertionError(f"no floor/ceil partition found for n={n}")


def chung_subgraph(F: SetFamily) -> InducedSubgraph:
    """``X(F)``: even sets containing some member plus odd sets containing none."""
    n = F.n
    idx = np.arange(1 << n)
    covers = np.zeros(1 << n, dtype=bool)
    for m in F.masks():
        covers |= (idx & m) == m
    even = (popcounts(n) & 1) == 0
    return InducedSubgraph(n, np.where(even, covers, ~covers))


def chung_expected_size(n: int, k: int) -> int:
    """Closed form ``2**(n-1) + (-1)**(n+k+1)`` for ``|X(F)|`` when F partitions ``[n]`` into k parts."""
    return (1 << (n - 1)) + (-1) ** (n + k + 1)


def family_rank(F: SetFamily) -> int:
    return max((len(m) for m in F.members), default=0)


def family_t(F: SetFamily, caps: Caps = DEFAULT_CAPS) -> int:
    """Largest subfamily in which every member has a private element.

    Being disjointly representable is closed under taking subfamilies, so a
    depth-first search that only extends valid subfamilies reaches the optimum.
    """
    if len(F) > caps.family_t:
        raise CapExceededError("family_t", len(F), caps.family_t)
    masks = F.masks()
    best = 0

    def valid(chosen: list[int]) -> bool:
        for a, m in enumerate(chosen):
            others = 0
            for b, o in enumerate(chosen):
                if a != b:
                    others |= o
            if not m & ~others:
                return False
        return True

    def search(start: int, chosen: list[int]) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + len(masks) - start <= best:
            return
        for i in range(start, len(masks)):
            chosen.append(masks[i])
            if valid(chosen):
                search(i + 1, chosen)
            chosen.pop()

    search(0, [])
    return best


def chung_log_bound(n: int) -> float:
    """Lower bound ``(log n - log log n + 1) / 2`` (base 2) on the max degree of a
    ``(2**(n-1)+1)``-vertex induced subgraph; only meaningful for ``n >= 2``."""
    if n < 2:
        return 0.0
    ln = math.log2(n)
    return 0.5 * ln - 0.5 * math.log2(ln) + 0.5 if ln > 0 else 0.0
