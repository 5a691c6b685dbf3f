import itertools
import math

import numpy as np
import pytest

from boolsens.core import Caps
from boolsens.errors import CapExceededError, ConvergenceError
from boolsens.hypercube import InducedSubgraph, chung_partition, chung_subgraph
from boolsens.spectral import (
    SignedMatrix,
    cube_adjacency,
    four_cycle_signs,
    full_spectrum,
    huang_bound_check,
    huang_matrix,
    interlaces,
    interlacing_check,
    jacobi_eigenvalues,
    lambda1,
    power_lambda1,
    principal_submatrix,
    square_check,
    submatrix_stack,
)

R2 = math.sqrt(2)


def test_huang_small_examples():
    assert huang_matrix(1).entries.tolist() == [[0, 1], [1, 0]]
    assert huang_matrix(2).entries.tolist() == [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, -1], [0, 1, -1, 0]]


def test_huang_respects_cube_and_caps():
    for n in range(1, 8):
        A = huang_matrix(n)
        assert A.respects_cube()
        assert np.array_equal(np.abs(A.entries), cube_adjacency(n))
        assert np.trace(A.entries) == 0
    with pytest.raises(CapExceededError):
        huang_matrix(13)
    with pytest.raises(ValueError):
        huang_matrix(0)


def test_signed_matrix_validation():
    with pytest.raises(ValueError):
        SignedMatrix(np.array([[0, 2], [2, 0]]))
    with pytest.raises(ValueError):
        SignedMatrix(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        SignedMatrix(np.zeros((2, 3)))
    assert not SignedMatrix(np.array([[0, 1], [1, 0]]), (0, 3)).respects_cube()


@pytest.mark.parametrize("n", range(1, 11))
def test_square(n):
    assert square_check(huang_matrix(n), n)


def test_square_check_dense_oracle_and_negative():
    for n in range(1, 6):
        E = huang_matrix(n).entries
        assert np.array_equal(E @ E, n * np.eye(1 << n, dtype=np.int64))
    assert not square_check(SignedMatrix(cube_adjacency(2)), 2)


def test_four_cycles_exactly_one_at_n2():
    assert four_cycle_signs(huang_matrix(2), 2).tolist() == [1]


@pytest.mark.parametrize("n", range(2, 6))
def test_four_cycles_odd(n):
    counts = four_cycle_signs(huang_matrix(n), n)
    assert len(counts) == math.comb(n, 2) * 2 ** (n - 2)
    assert np.all(counts % 2 == 1)


def test_principal_submatrix_examples():
    A = huang_matrix(2)
    assert principal_submatrix(A, range(4)).entries.tolist() == A.entries.tolist()
    B = principal_submatrix(A, [0, 1, 2])
    assert B.entries.tolist() == [[0, 1, 1], [1, 0, 0], [1, 0, 0]]
    assert B.labels == (0, 1, 2)
    assert principal_submatrix(A, [3]).entries.tolist() == [[0]]
    with pytest.raises(ValueError):
        principal_submatrix(A, [])
    with pytest.raises(ValueError):
        principal_submatrix(B, [3])


def test_lambda1_examples():
    A = huang_matrix(2)
    assert lambda1(A) == pytest.approx(R2, abs=1e-9)
    B = principal_submatrix(A, [0, 1, 2])
    assert lambda1(B) == pytest.approx(R2, abs=1e-9)
    assert np.allclose(full_spectrum(B), [R2, 0, -R2], atol=1e-9)
    assert lambda1(np.zeros((3, 3))) == 0.0
    assert power_lambda1(np.zeros((3, 3))) == 0.0


def test_full_spectrum_examples():
    assert np.allclose(full_spectrum(huang_matrix(2)), [R2, R2, -R2, -R2], atol=1e-12)
    assert full_spectrum(np.diag([2.0, -1.0, 5.0])).tolist() == [5.0, 2.0, -1.0]
    r3 = math.sqrt(3)
    assert np.allclose(full_spectrum(huang_matrix(3)), [r3] * 4 + [-r3] * 4, atol=1e-12)
    assert np.allclose(full_spectrum(SignedMatrix(cube_adjacency(3))), [3, 1, 1, 1, -1, -1, -1, -3], atol=1e-12)
    with pytest.raises(CapExceededError):
        full_spectrum(huang_matrix(7))


@pytest.mark.parametrize("n", range(1, 7))
def test_huang_spectrum(n):
    ev = full_spectrum(huang_matrix(n))
    N = 1 << n
    assert np.allclose(ev[: N // 2], math.sqrt(n), atol=1e-9)
    assert np.allclose(ev[N // 2:], -math.sqrt(n), atol=1e-9)
    assert abs(ev.sum()) <= 1e-9


def test_jacobi_matches_eigvalsh_random():
    rng = np.random.default_rng(0)
    for size in (1, 2, 3, 7, 20, 40):
        M = rng.standard_normal((5, size, size))
        M = M + M.transpose(0, 2, 1)
        ours = jacobi_eigenvalues(M)
        ref = np.linalg.eigvalsh(M)[:, ::-1]
        assert np.allclose(ours, ref, atol=1e-9)


def test_jacobi_budget():
    rng = np.random.default_rng(1)
    M = rng.standard_normal((10, 10))
    with pytest.raises(ConvergenceError):
        jacobi_eigenvalues(M + M.T, max_sweeps=1)


def test_power_matches_jacobi_on_huang_submatrices():
    rng = np.random.default_rng(2)
    for n in (3, 4, 5, 6):
        A = huang_matrix(n)
        N = 1 << n
        for _ in range(5):
            V = rng.choice(N, size=N // 2 + 1, replace=False)
            B = principal_submatrix(A, V)
            assert power_lambda1(B, n) == pytest.approx(full_spectrum(B)[0], abs=1e-6)
    B = principal_submatrix(huang_matrix(3), range(5))
    assert power_lambda1(B) == pytest.approx(full_spectrum(B)[0], abs=1e-6)


def test_power_budget():
    with pytest.raises(ConvergenceError):
        power_lambda1(huang_matrix(4), 4, max_iter=2, tol=0.0)


def test_lambda1_above_spectrum_cap_uses_power():
    A = huang_matrix(7)
    assert lambda1(A, 7) == pytest.approx(math.sqrt(7), abs=1e-6)


def test_interlacing_examples():
    A = huang_matrix(2)
    assert interlacing_check(A, A)
    for k in (1, 2):
        for V in itertools.combinations(range(4), k):
            assert interlacing_check(A, principal_submatrix(A, V))
    A3 = huang_matrix(3)
    rng = np.random.default_rng(4)
    for _ in range(20):
        assert interlacing_check(A3, principal_submatrix(A3, rng.choice(8, 5, replace=False)))


def test_interlaces_detects_violation():
    assert not interlaces(np.array([1.0, 0.0]), np.array([2.0]))
    assert not interlaces(np.array([1.0, 0.0]), np.array([-0.5]))


def test_unsigned_interlacing_bound_is_vacuous():
    # the unsigned middle eigenvalue of Q_3 is 1, far below sqrt(3)
    ev = full_spectrum(SignedMatrix(cube_adjacency(3)))
    assert ev[3] < math.sqrt(3) - 0.5


def test_huang_bound_check_examples():
    r = huang_bound_check(InducedSubgraph.from_vertices(2, [0, 1, 2]))
    assert r.max_degree == 2 and r.lambda1 == pytest.approx(R2) and r.ok
    for V in itertools.combinations(range(8), 5):
        r = huang_bound_check(InducedSubgraph.from_vertices(3, V))
        assert r.ok and r.max_degree >= 2
    X = chung_subgraph(chung_partition(4)).complement()
    r = huang_bound_check(X)
    assert len(X) == 9 and r.max_degree == 2 and r.ok
    r = huang_bound_check(InducedSubgraph.from_vertices(3, [0, 3]))
    assert r.sqrt_n_ok is None and r.ok
    with pytest.raises(ValueError):
        huang_bound_check(InducedSubgraph.from_vertices(3, []))


def test_degree_dominates_lambda1_exhaustive_n3():
    A = huang_matrix(3)
    for m in range(1, 256):
        V = [v for v in range(8) if (m >> v) & 1]
        H = InducedSubgraph.from_vertices(3, V)
        assert huang_bound_check(H).degree_ok


def test_submatrix_stack():
    A = huang_matrix(3).entries
    subsets = np.array([[0, 1, 2], [1, 3, 5]])
    S = submatrix_stack(A, subsets)
    assert S.shape == (2, 3, 3)
    assert np.array_equal(S[1], A[np.ix_([1, 3, 5], [1, 3, 5])])


def test_caps_object():
    with pytest.raises(CapExceededError):
        huang_matrix(5, caps=Caps(huang=4))
