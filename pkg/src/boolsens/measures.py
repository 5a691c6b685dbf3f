"""Exact complexity measures of Boolean functions.

Sensitivity, block sensitivity, certificate complexity, decision-tree depth,
degree and approximate degree, plus the Fourier-side quantities (coefficients,
influences) and symmetrization of multilinear polynomials.

The block-sensitivity and certificate computations share one primitive: for
an input ``x`` the boolean array ``sens[S] = f(x ^ S) != f(x)`` over all
subset masks ``S``, and its closure under taking supersets
``down[T] = any(sens[S] for S subset of T)``.  Minimal sensitive blocks are
the ``S`` with ``sens[S]`` and no sensitive proper subset; ``x`` has a
certificate fixing ``S`` exactly when ``down[~S]`` is false.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .core import (
    DEFAULT_CAPS,
    BooleanFunction,
    Caps,
    MultilinearPoly,
    depends_on,
    mask_to_subset,
    multilinear_coeffs,
    popcounts,
    restrict,
    subset_mask,
    to_pm1,
    walsh_hadamard,
)

log = logging.getLogger(__name__)

APPROX_THRESHOLD = 1.0 / 3.0
APPROX_MARGIN = 1e-9


# ---------------------------------------------------------------- sensitivity

def _neighbour_disagreement(f: BooleanFunction) -> np.ndarray:
    """Array ``(n, 2**n)``: row ``i`` marks inputs where flipping ``x_{i+1}`` changes f."""
    idx = np.arange(f.size)
    t = f.table
    return np.array([t != t[idx ^ (1 << j)] for j in range(f.n)], dtype=bool).reshape(f.n, f.size)


def sensitivity_at(f: BooleanFunction, x: int) -> int:
    t = f.table
    fx = t[x]
    return sum(int(t[x ^ (1 << j)] != fx) for j in range(f.n))


def sensitivities(f: BooleanFunction) -> np.ndarray:
    """``s(f, x)`` for every input ``x``."""
    if f.n == 0:
        return np.zeros(1, dtype=np.int64)
    return _neighbour_disagreement(f).sum(axis=0)


def sensitivity_witness(f: BooleanFunction) -> tuple[int, int]:
    """``(s(f), x)`` with ``x`` the first input attaining the maximum."""
    s = sensitivities(f)
    x = int(np.argmax(s))
    return int(s[x]), x


def sensitivity(f: BooleanFunction) -> int:
    return sensitivity_witness(f)[0]


# ------------------------------------------------------- subset-lattice helpers

def _sensitive_rows(f: BooleanFunction, xs: np.ndarray) -> np.ndarray:
    """``sens[k, S] = f(xs[k] ^ S) != f(xs[k])``."""
    S = np.arange(f.size)
    t = f.table
    return t[xs[:, None] ^ S[None, :]] != t[xs][:, None]


def _up_closure(sens: np.ndarray, n: int) -> np.ndarray:
    """``down[k, T]`` = some subset of ``T`` is sensitive at ``xs[k]``."""
    down = sens.copy()
    k = down.shape[0]
    for j in range(n):
        v = down.reshape(k, -1, 2, 1 << j)
        v[:, :, 1, :] |= v[:, :, 0, :]
    return down


def _minimal_blocks(sens: np.ndarray, down: np.ndarray, n: int) -> np.ndarray:
    k = sens.shape[0]
    proper = np.zeros_like(sens)
    for j in range(n):
        p = proper.reshape(k, -1, 2, 1 << j)
        d = down.reshape(k, -1, 2, 1 << j)
        p[:, :, 1, :] |= d[:, :, 0, :]
    return sens & ~proper


def minimal_sensitive_blocks(f: BooleanFunction, x: int, caps: Caps = DEFAULT_CAPS) -> list[int]:
    """Masks of the inclusion-minimal sensitive blocks at ``x``."""
    caps.check("bs_point", f.n)
    xs = np.array([x])
    sens = _sensitive_rows(f, xs)
    down = _up_closure(sens, f.n)
    return [int(m) for m in np.flatnonzero(_minimal_blocks(sens, down, f.n)[0])]


# -------------------------------------------------------------- set packing

def _popcount(m: int) -> int:
    return bin(m).count("1")


@lru_cache(maxsize=1 << 17)
def max_disjoint_blocks(blocks: tuple[int, ...]) -> tuple[int, ...]:
    """Largest family of pairwise-disjoint masks from ``blocks`` (exact).

    Branch and bound: singletons are always taken (exchange argument), then
    branch on the lowest uncovered element -- either one of the blocks
    containing it is used, or the element stays uncovered.  The bound is
    ``|union| // smallest block``.
    """
    order = sorted(set(blocks), key=lambda b: (_popcount(b), b))
    chosen: list[int] = []
    singles = 0
    rest = []
    for b in order:
        if _popcount(b) == 1:
            singles |= b
            chosen.append(b)
        else:
            rest.append(b)
    rest = [b for b in rest if not b & singles]

    best: list[int] = []

    def search(avail: list[int], picked: list[int]) -> None:
        nonlocal best
        if not avail:
            if len(picked) > len(best):
                best = list(picked)
            return
        union = 0
        for b in avail:
            union |= b
        bound = min(len(avail), _popcount(union) // _popcount(avail[0]))
        if len(picked) + bound <= len(best):
            return
        e = union & -union
        with_e = [b for b in avail if b & e]
        without_e = [b for b in avail if not b & e]
        for b in with_e:
            picked.append(b)
            search([c for c in without_e if not c & b], picked)
            picked.pop()
        search(without_e, picked)

    search(rest, [])
    return tuple(chosen + best)


# --------------------------------------------------------- block sensitivity

def sensitive_blocks(f: BooleanFunction, x: int, caps: Caps = DEFAULT_CAPS) -> list[frozenset[int]]:
    """A maximum family of pairwise-disjoint sensitive blocks at ``x``."""
    blocks = max_disjoint_blocks(tuple(minimal_sensitive_blocks(f, x, caps)))
    return [mask_to_subset(b) for b in blocks]


def block_sensitivity_at(f: BooleanFunction, x: int, caps: Caps = DEFAULT_CAPS) -> int:
    return len(max_disjoint_blocks(tuple(minimal_sensitive_blocks(f, x, caps))))


def _all_rows(f: BooleanFunction, chunk: int = 1 << 22):
    """Yield ``(xs, sens, down)`` in row chunks covering every input."""
    rows = max(1, chunk // f.size)
    for start in range(0, f.size, rows):
        xs = np.arange(start, min(f.size, start + rows))
        sens = _sensitive_rows(f, xs)
        yield xs, sens, _up_closure(sens, f.n)


def block_sensitivity_witness(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> tuple[int, int, tuple[int, ...]]:
    """``(bs(f), x, blocks)`` maximising over all inputs; blocks are masks."""
    caps.check("bs_full", f.n)
    best = (0, 0, ())
    if f.is_constant():
        return best
    for xs, sens, down in _all_rows(f):
        minimal = _minimal_blocks(sens, down, f.n)
        counts = minimal.sum(axis=1)
        for k in np.argsort(-counts, kind="stable"):
            if min(int(counts[k]), f.n) <= best[0]:
                break
            packing = max_disjoint_blocks(tuple(int(m) for m in np.flatnonzero(minimal[k])))
            if len(packing) > best[0]:
                best = (len(packing), int(xs[k]), packing)
            if best[0] == f.n:
                return best
    return best


def block_sensitivity(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> int:
    return block_sensitivity_witness(f, caps)[0]


# ------------------------------------------------------------- certificates

def _largest_free_sets(down: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    weights = popcounts(n)
    free_size = np.where(down, -1, weights[None, :])
    arg = free_size.argmax(axis=1)
    return free_size[np.arange(down.shape[0]), arg], arg


def certificate_set(f: BooleanFunction, x: int, caps: Caps = DEFAULT_CAPS) -> frozenset[int]:
    """A smallest set of coordinates whose values at ``x`` force ``f(x)``."""
    caps.check("cert_point", f.n)
    sens = _sensitive_rows(f, np.array([x]))
    _, free = _largest_free_sets(_up_closure(sens, f.n), f.n)
    return mask_to_subset(((1 << f.n) - 1) & ~int(free[0]))


def certificate_at(f: BooleanFunction, x: int, caps: Caps = DEFAULT_CAPS) -> int:
    return len(certificate_set(f, x, caps))


def certificate_witness(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> tuple[int, int, frozenset[int]]:
    """``(C(f), x, S)``: the worst input and a minimum certificate there."""
    caps.check("cert_full", f.n)
    full = (1 << f.n) - 1
    best = (-1, 0, 0)
    for xs, _, down in _all_rows(f):
        free_size, free = _largest_free_sets(down, f.n)
        k = int(np.argmin(free_size))
        c = f.n - int(free_size[k])
        if c > best[0]:
            best = (c, int(xs[k]), full & ~int(free[k]))
    return best[0], best[1], mask_to_subset(best[2])


def certificate_complexity(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> int:
    return certificate_witness(f, caps)[0]


# ------------------------------------------------------------ decision trees

def decision_tree_depth(f: BooleanFunction, caps: Caps = DEFAULT_CAPS, memo: dict | None = None) -> int:
    """Minimum depth of a deterministic decision tree computing ``f``.

    ``memo`` maps ``(n, table bytes)`` of subfunctions to their depth and may
    be shared between calls.
    """
    caps.check("decision_tree", f.n)
    if memo is None:
        memo = {}
    return _dt(f, memo)


def _dt(f: BooleanFunction, memo: dict) -> int:
    key = f.key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    if f.is_constant():
        memo[key] = 0
        return 0
    best = f.n
    for i in range(1, f.n + 1):
        if not depends_on(f, i):
            continue
        worst = 0
        for b in (0, 1):
            worst = max(worst, _dt(restrict(f, i, b), memo))
            if worst + 1 >= best:
                break
        best = min(best, worst + 1)
        if best == 1:
            break
    memo[key] = best
    return best


# ------------------------------------------------------------------ degrees

def degree(f: BooleanFunction) -> int:
    return multilinear_coeffs(f).degree


def _characters(n: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Columns ``chi_S(x) = (-1)^{|S & x|}`` for all ``|S| <= d``."""
    masks = np.flatnonzero(popcounts(n) <= d)
    x = np.arange(1 << n)
    parity = popcounts(n)[x[:, None] & masks[None, :]] & 1
    return masks, 1.0 - 2.0 * parity


def approx_error(f: BooleanFunction, d: int) -> float:
    """Best uniform error of a degree-``d`` polynomial against ``f``'s 0/1 values."""
    _, chi = _characters(f.n, d)
    m = chi.shape[1]
    y = f.table.astype(np.float64)
    ones = np.ones((f.size, 1))
    A_ub = np.block([[chi, -ones], [-chi, -ones]])
    b_ub = np.concatenate([y, -y])
    cost = np.zeros(m + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * m + [(0, None)], method="highs")
    if res.status != 0:
        raise RuntimeError(f"LP failed for d={d}: {res.message}")
    return float(res.x[-1])


def approx_profile(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> list[float]:
    """Optimal error for every degree ``0..n``."""
    caps.check("approx_degree", f.n)
    return [approx_error(f, d) for d in range(f.n + 1)]


def approx_degree(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> int:
    """Smallest ``d`` whose best error is below 1/3 (with a 1e-9 margin)."""
    return approx_degree_witness(f, caps)[0]


def approx_degree_witness(f: BooleanFunction, caps: Caps = DEFAULT_CAPS) -> tuple[int, float]:
    caps.check("approx_degree", f.n)
    for d in range(f.n + 1):
        eps = approx_error(f, d)
        if abs(eps - APPROX_THRESHOLD) <= APPROX_MARGIN:
            log.warning("degree %d: LP optimum %.12g is within %g of 1/3; inconclusive at tolerance",
                        d, eps, APPROX_MARGIN)
        if eps < APPROX_THRESHOLD - APPROX_MARGIN:
            return d, eps
    # degree n interpolates exactly, so this is unreachable
    raise AssertionError("exact interpolation LP did not reach zero error")


# ------------------------------------------------------------------ Fourier

@dataclass(frozen=True, eq=False)
class FourierTable:
    """Fourier coefficients of the +-1 view, indexed by subset mask."""

    n: int
    coeffs: np.ndarray = field(repr=False)

    def __getitem__(self, S) -> float:
        mask = S if isinstance(S, (int, np.integer)) else subset_mask(S, self.n)
        return float(self.coeffs[mask])

    def weight(self) -> float:
        return float(np.sum(self.coeffs ** 2))

    def level_weights(self) -> np.ndarray:
        """Spectral weight at each level ``|S| = 0..n``."""
        return np.bincount(popcounts(self.n), weights=self.coeffs ** 2, minlength=self.n + 1)

    def reconstruct(self) -> np.ndarray:
        """``sum_S coeff_S chi_S(x)`` at every input."""
        return walsh_hadamard(self.coeffs)


def fourier(f: BooleanFunction) -> FourierTable:
    """Coefficients ``E_x[f(x) chi_S(x)]`` of the +-1 view, via a fast transform."""
    return FourierTable(f.n, walsh_hadamard(to_pm1(f)) / f.size)


def influence(f: BooleanFunction, i: int) -> float:
    if not 1 <= i <= f.n:
        raise ValueError(f"variable {i} outside [1, {f.n}]")
    idx = np.arange(f.size)
    return float(np.count_nonzero(f.table != f.table[idx ^ (1 << (i - 1))])) / f.size


def influences(f: BooleanFunction) -> np.ndarray:
    if f.n == 0:
        return np.zeros(0)
    return _neighbour_disagreement(f).sum(axis=1) / f.size


def total_influence(f: BooleanFunction) -> float:
    """Sum of influences, equal to the average sensitivity."""
    return float(influences(f).sum())


# ------------------------------------------------------------ symmetrization

def _binom_general(z, j: int):
    out = Fraction(1) if isinstance(z, (int, Fraction)) else 1.0
    for r in range(j):
        out = out * (z - r)
    return out / math.factorial(j)


@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial written in the binomial basis: ``sum_j c_j * C(z, j)``."""

    binomial_coeffs: tuple

    @property
    def degree(self) -> int:
        nz = [j for j, c in enumerate(self.binomial_coeffs) if c != 0]
        return nz[-1] if nz else 0

    def __call__(self, z):
        return sum(c * _binom_general(z, j) for j, c in enumerate(self.binomial_coeffs))

    def power_coeffs(self) -> list:
        """Coefficients in the monomial basis, constant term first."""
        exact = all(isinstance(c, (int, Fraction)) for c in self.binomial_coeffs)
        out = [Fraction(0) if exact else 0.0] * max(1, len(self.binomial_coeffs))
        for j, c in enumerate(self.binomial_coeffs):
            # falling factorial z(z-1)...(z-j+1), constant term first
            falling = [1]
            for r in range(j):
                falling = [-r * falling[0]] + [falling[k - 1] - r * falling[k] for k in range(1, len(falling))] + [falling[-1]]
            scale = (Fraction(c) if exact else c) / math.factorial(j)
            for k, a in enumerate(falling):
                out[k] += scale * a
        return out


def level_averages(p: MultilinearPoly) -> list:
    """Average of ``p`` over the 0/1 points of each Hamming weight ``0..n``."""
    vals = p.values01()
    w = popcounts(p.n)
    exact = vals.dtype.kind in "iu"
    out = []
    for k in range(p.n + 1):
        level = vals[w == k]
        if exact:
            out.append(Fraction(int(level.sum()), len(level)))
        else:
            out.append(float(level.mean()))
    return out


def symmetrize(p: MultilinearPoly) -> UnivariatePoly:
    """The univariate polynomial matching ``p``'s level averages.

    Newton forward differences of the level averages give the binomial-basis
    coefficients directly; for integer ``p`` they are exact fractions.
    """
    diffs = level_averages(p)
    coeffs = []
    while diffs:
        coeffs.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    if p.coeffs.dtype.kind == "f":
        coeffs = [0.0 if abs(c) < 1e-12 else c for c in coeffs]
    return UnivariatePoly(tuple(coeffs))


# ------------------------------------------------------------------ reports

MEASURES = ("s", "bs", "c", "d", "deg", "approx_deg")


@dataclass
class MeasureReport:
    """All requested measures of one function, with witnesses and the caps used."""

    n: int
    s: int | None = None
    bs: int | None = None
    c: int | None = None
    d: int | None = None
    deg: int | None = None
    approx_deg: int | None = None
    witnesses: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "s": self.s, "bs": self.bs, "c": self.c, "d": self.d,
            "deg": self.deg, "approx_deg": self.approx_deg,
            "witnesses": self.witnesses, "caps": self.caps,
        }

    def chain_holds(self) -> bool:
        vals = [self.s, self.bs, self.c, self.d]
        if any(v is None for v in vals):
            return True
        return vals == sorted(vals) and self.d <= self.n


def measure_report(f: BooleanFunction, only: Iterable[str] | None = None,
                   caps: Caps = DEFAULT_CAPS) -> MeasureReport:
    """Compute the requested measures (all by default).

    With the default request, approximate degree is skipped (left null) when
    ``n`` exceeds its cap; any explicitly requested measure over its cap
    raises ``CapExceededError``.
    """
    explicit = only is not None
    wanted = list(MEASURES) if only is None else list(only)
    unknown = set(wanted) - set(MEASURES)
    if unknown:
        raise ValueError(f"unknown measures: {sorted(unknown)}")
    rep = MeasureReport(n=f.n, caps=caps.as_dict())
    w = rep.witnesses
    if "s" in wanted:
        rep.s, x = sensitivity_witness(f)
        w["s"] = {"x": x}
    if "bs" in wanted:
        rep.bs, x, blocks = block_sensitivity_witness(f, caps)
        w["bs"] = {"x": x, "blocks": [sorted(mask_to_subset(b)) for b in blocks]}
    if "c" in wanted:
        rep.c, x, S = certificate_witness(f, caps)
        w["c"] = {"x": x, "certificate": sorted(S)}
    if "d" in wanted:
        rep.d = decision_tree_depth(f, caps)
    if "deg" in wanted:
        rep.deg = degree(f)
    if "approx_deg" in wanted and (explicit or f.n <= caps.approx_degree):
        rep.approx_deg, eps = approx_degree_witness(f, caps)
        w["approx_deg"] = {"epsilon": eps}
    return rep
