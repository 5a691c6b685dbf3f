"""Huang's signed cube matrix, its principal submatrices and eigenvalue routines."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .core import DEFAULT_CAPS, Caps
from .errors import CapExceededError, ConvergenceError
from .hypercube import InducedSubgraph, max_degree

INTERLACING_TOL = 1e-9
JACOBI_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SignedMatrix:
    """Symmetric integer matrix with entries in {-1, 0, 1}; rows labelled by cube vertices."""

    entries: np.ndarray = field(repr=False)
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        e = np.ascontiguousarray(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("matrix must be square")
        if not np.isin(e, (-1, 0, 1)).all():
            raise ValueError("entries must lie in {-1, 0, 1}")
        if not np.array_equal(e, e.T):
            raise ValueError("matrix must be symmetric")
        labels = tuple(int(v) for v in self.labels) if self.labels else tuple(range(e.shape[0]))
        if len(labels) != e.shape[0]:
            raise ValueError("one label per row required")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def respects_cube(self) -> bool:
        """True if every nonzero entry joins two labels at Hamming distance one."""
        rows, cols = np.nonzero(self.entries)
        lab = np.asarray(self.labels)
        x = lab[rows] ^ lab[cols]
        return bool(np.all((x != 0) & ((x & (x - 1)) == 0)))


def huang_matrix(n: int, caps: Caps = DEFAULT_CAPS) -> SignedMatrix:
    """``A_1 = [[0,1],[1,0]]``, ``A_n = [[A_{n-1}, I], [I, -A_{n-1}]]``.

    The top bit of a vertex index selects the block, so row ``u`` is vertex ``u``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > caps.huang:
        raise CapExceededError("huang", n, caps.huang)
    A = np.array([[0, 1], [1, 0]], dtype=np.int64)
    for _ in range(n - 1):
        eye = np.eye(A.shape[0], dtype=np.int64)
        A = np.block([[A, eye], [eye, -A]])
    return SignedMatrix(A)


def cube_adjacency(n: int) -> np.ndarray:
    """Unsigned adjacency matrix of ``Q_n``."""
    idx = np.arange(1 << n)
    A = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for j in range(n):
        A[idx, idx ^ (1 << j)] = 1
    return A


def square_check(A: SignedMatrix, n: int) -> bool:
    """Exact integer check of ``A @ A == n I`` using a sparse product."""
    S = sp.csr_matrix(A.entries)
    P = (S @ S).tocoo()
    if P.shape != (A.dim, A.dim):
        return False
    off = P.row != P.col
    if np.any(P.data[off] != 0):
        return False
    diag = np.zeros(A.dim, dtype=np.int64)
    diag[P.row[~off]] = P.data[~off]
    return bool(np.all(diag == n))


def four_cycle_signs(A: SignedMatrix, n: int) -> np.ndarray:
    """Number of ``-1`` edges on every 4-cycle of ``Q_n`` under the signing ``A``.

    A 4-cycle is fixed by its lowest vertex ``u`` and two directions
    ``i < j`` with both bits clear in ``u``.
    """
    E = A.entries
    counts = []
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            for u in range(1 << n):
                if u & (bi | bj):
                    continue
                cyc = [u, u | bi, u | bi | bj, u | bj]
                signs = [E[cyc[a], cyc[(a + 1) % 4]] for a in range(4)]
                counts.append(sum(1 for s in signs if s == -1))
    return np.array(counts, dtype=np.int64)


def principal_submatrix(A: SignedMatrix, vertices: Iterable[int]) -> SignedMatrix:
    """Keep the rows and columns whose labels are in ``vertices`` (in label order)."""
    want = set(int(v) for v in vertices)
    if not want:
        raise ValueError("vertex set must be nonempty")
    pos = [k for k, lab in enumerate(A.labels) if lab in want]
    if len(pos) != len(want):
        missing = sorted(want - {A.labels[k] for k in pos})
        raise ValueError(f"labels not present in matrix: {missing[:5]}")
    sub = A.entries[np.ix_(pos, pos)]
    return SignedMatrix(sub, tuple(A.labels[k] for k in pos))


# ------------------------------------------------------------ eigen solvers

def jacobi_eigenvalues(stack: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a batch of real symmetric matrices by cyclic Jacobi rotations.

    ``stack`` has shape ``(m, N, N)`` (or ``(N, N)``); every matrix is rotated
    at the same ``(p, q)`` in lockstep.  Sweeps stop once the off-diagonal
    Frobenius norm of every matrix is below ``tol``.  Returns ``(m, N)``
    eigenvalues sorted non-increasing.
    """
    a = np.array(stack, dtype=np.float64, copy=True)
    single = a.ndim == 2
    if single:
        a = a[None]
    m, N, _ = a.shape
    if N == 1:
        out = a[:, 0, :].copy()
        return out[0] if single else out

    offdiag = ~np.eye(N, dtype=bool)

    def off_norm(x):
        return np.sqrt(np.sum(x[:, offdiag] ** 2, axis=1))

    for _ in range(max_sweeps):
        if np.all(off_norm(a) < tol):
            break
        for p in range(N - 1):
            for q in range(p + 1, N):
                apq = a[:, p, q]
                active = np.abs(apq) > 1e-300
                if not active.any():
                    continue
                app = a[:, p, p]
                aqq = a[:, q, q]
                safe = np.where(active, apq, 1.0)
                theta = (aqq - app) / (2.0 * safe)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta == 0, 1.0, t)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c = np.where(active, c, 1.0)[:, None]
                s = np.where(active, s, 0.0)[:, None]
                # columns p, q
                colp = a[:, :, p].copy()
                colq = a[:, :, q]
                a[:, :, p] = c * colp - s * colq
                a[:, :, q] = s * colp + c * colq
                # rows p, q
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :]
                a[:, p, :] = c * rowp - s * rowq
                a[:, q, :] = s * rowp + c * rowq
                a[active, p, q] = 0.0
                a[active, q, p] = 0.0
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    ev = -np.sort(-np.diagonal(a, axis1=1, axis2=2), axis=1)
    return ev[0] if single else ev


def full_spectrum(B: SignedMatrix | np.ndarray, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """All eigenvalues, sorted non-increasing."""
    M = B.entries if isinstance(B, SignedMatrix) else np.asarray(B)
    if M.shape[0] > caps.spectrum:
        raise CapExceededError("spectrum", M.shape[0], caps.spectrum)
    return jacobi_eigenvalues(M)


def power_lambda1(B: SignedMatrix | np.ndarray, n: int | None = None, tol: float = 1e-10,
                  max_iter: int = 100_000, seed: int = 0) -> float:
    """Largest eigenvalue by power iteration on ``B + c I``.

    With the cube dimension ``n`` given, ``c = sqrt(n) + 1``: every eigenvalue
    of a Huang submatrix lies in ``[-sqrt(n), sqrt(n)]``, so the shifted
    matrix is positive definite and its dominant eigenvalue is ``lambda_1 + c``.
    Without ``n`` the Gershgorin radius is used instead.  Iteration stops when
    the Rayleigh quotient moves by less than ``tol``.  The start vector is
    drawn from a fixed-seed generator and redrawn if it collapses.
    """
    M = np.asarray(B.entries if isinstance(B, SignedMatrix) else B, dtype=np.float64)
    N = M.shape[0]
    if N == 0:
        raise ValueError("empty matrix")
    if not M.any():
        return 0.0
    shift = math.sqrt(n) + 1.0 if n is not None else float(np.abs(M).sum(axis=1).max()) + 1.0
    S = M + shift * np.eye(N)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(N)
    v /= np.linalg.norm(v)
    rho = None
    for _ in range(max_iter):
        w = S @ v
        new = float(v @ w)
        norm = np.linalg.norm(w)
        if norm < 1e-300:
            v = rng.standard_normal(N)
            v /= np.linalg.norm(v)
            rho = None
            continue
        if rho is not None and abs(new - rho) < tol:
            return new - shift
        rho = new
        v = w / norm
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


def lambda1(B: SignedMatrix | np.ndarray, n: int | None = None, caps: Caps = DEFAULT_CAPS) -> float:
    """Largest eigenvalue: Jacobi up to the spectrum cap, shifted power iteration above.

    ``n`` is the cube dimension the matrix came from (sets the power-iteration shift).
    """
    M = B.entries if isinstance(B, SignedMatrix) else np.asarray(B)
    if M.shape[0] <= caps.spectrum:
        return float(jacobi_eigenvalues(M)[0])
    return power_lambda1(M, n)


def interlaces(big: np.ndarray, small: np.ndarray, tol: float = INTERLACING_TOL) -> bool:
    """Cauchy interlacing ``lam_i >= mu_i >= lam_{i+N-m}`` for sorted spectra."""
    N, m = len(big), len(small)
    i = np.arange(m)
    return bool(np.all(big[i] >= small - tol) and np.all(small >= big[i + N - m] - tol))


def interlacing_check(A: SignedMatrix, B: SignedMatrix, caps: Caps = DEFAULT_CAPS) -> bool:
    return interlaces(full_spectrum(A, caps), full_spectrum(B, caps))


@dataclass(frozen=True)
class HuangBound:
    max_degree: int
    lambda1: float
    degree_ok: bool
    sqrt_n_ok: bool | None

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.sqrt_n_ok is not False


def huang_bound_check(H: InducedSubgraph, caps: Caps = DEFAULT_CAPS) -> HuangBound:
    """Compare ``Delta(H)`` with the top eigenvalue of the matching Huang submatrix.

    The ``sqrt(n)`` check only applies when ``|V(H)| > 2**(n-1)``; otherwise
    ``sqrt_n_ok`` is ``None``.
    """
    if len(H) == 0:
        raise ValueError("subgraph is empty")
    A = huang_matrix(H.n, caps)
    lam = lambda1(principal_submatrix(A, H.vertices), H.n, caps)
    delta = max_degree(H)
    big = len(H) >= (1 << (H.n - 1)) + 1
    return HuangBound(delta, lam, delta >= lam - 1e-9, (lam >= math.sqrt(H.n) - 1e-6) if big else None)


def submatrix_stack(A: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Principal submatrices of ``A`` for each row of index array ``subsets`` (``(m, k)``)."""
    return A[subsets[:, :, None], subsets[:, None, :]]
