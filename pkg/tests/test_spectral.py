import numpy as np
import pytest

from pinnet import (
    NoNonzeroEigenvalueError,
    NotPSDError,
    SymMatrix,
    ValidationError,
    complete_graph,
    disjoint_union,
    eig_sym,
    lambda_max,
    lambda_min,
    lambda_min_gt0,
    laplacian,
    path_graph,
    spectral_norm,
)
from pinnet.spectral import default_rank_tol


def charpoly_roots_3x3(m):
    """Independent oracle: roots of the characteristic polynomial, with
    coefficients from trace, principal minors, and an LU determinant."""
    m = np.asarray(m, dtype=float)
    tr = m.trace()
    minors = (
        m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    )
    det = np.linalg.det(m)
    roots = np.roots([1.0, -tr, minors, -det])
    return np.sort(roots.real)[::-1]


def test_eig_diag():
    spec = eig_sym(SymMatrix(np.diag([3.0, 1.0, 2.0])))
    assert np.allclose(spec.eigenvalues, [3, 2, 1], atol=1e-12)


def test_eig_exchange_matrix():
    spec = eig_sym(SymMatrix([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(spec.eigenvalues, [1, -1], atol=1e-12)
    r = 1 / np.sqrt(2)
    # sign rule: first largest-magnitude entry positive
    assert np.allclose(spec.eigenvectors[:, 0], [r, r], atol=1e-12)
    assert np.allclose(spec.eigenvectors[:, 1], [r, -r], atol=1e-12)


def test_eig_random_3x3_vs_charpoly_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        m = rng.standard_normal((3, 3))
        m = (m + m.T) / 2
        w = eig_sym(SymMatrix(m)).eigenvalues
        expected = charpoly_roots_3x3(m)
        assert np.abs(w - expected).max() <= 1e-8 * max(1.0, abs(w[0]))


def test_eig_roundtrip_reconstruction():
    rng = np.random.default_rng(11)
    for d in [1, 2, 5, 17, 50]:
        m = rng.standard_normal((d, d))
        m = (m + m.T) / 2
        spec = eig_sym(SymMatrix(m))
        rebuilt = spec.eigenvectors @ np.diag(spec.eigenvalues) @ spec.eigenvectors.T
        tol = 1e-8 * (1.0 + abs(spec.eigenvalues[0]))
        assert np.abs(rebuilt - (m + m.T) / 2).max() <= tol
        # orthonormality
        assert np.abs(spec.eigenvectors.T @ spec.eigenvectors - np.eye(d)).max() <= 1e-9


def test_eig_sorted_and_sign_rule():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((8, 8))
    m = (m + m.T) / 2
    spec = eig_sym(SymMatrix(m))
    assert np.all(np.diff(spec.eigenvalues) <= 1e-14)
    for k in range(8):
        col = spec.eigenvectors[:, k]
        assert col[np.argmax(np.abs(col))] > 0


def test_eig_deterministic():
    m = np.arange(16, dtype=float).reshape(4, 4)
    m = (m + m.T) / 2
    a = eig_sym(SymMatrix(m))
    b = eig_sym(SymMatrix(m))
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_symmetrize_and_reject():
    m = SymMatrix([[1.0, 1.0 + 1e-14], [1.0, 2.0]])
    assert m.array[0, 1] == m.array[1, 0]
    with pytest.raises(ValidationError):
        SymMatrix([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValidationError):
        SymMatrix(np.zeros((2, 3)))


def test_lambda_min_gt0_complete_graph():
    for n in [4, 7]:
        assert lambda_min_gt0(laplacian(complete_graph(n))) == pytest.approx(n, rel=1e-12)


def test_lambda_min_gt0_path3():
    assert lambda_min_gt0(laplacian(path_graph(3))) == pytest.approx(1.0, rel=1e-12)


def test_lambda_min_gt0_zero_matrix():
    with pytest.raises(NoNonzeroEigenvalueError):
        lambda_min_gt0(SymMatrix(np.zeros((3, 3))))


def test_lambda_min_gt0_not_psd():
    with pytest.raises(NotPSDError):
        lambda_min_gt0(SymMatrix(np.diag([1.0, -1.0])))


def test_disconnected_zero_eigenvalue_count():
    g = disjoint_union(path_graph(3), path_graph(2))
    g = disjoint_union(g, complete_graph(4))
    w = eig_sym(laplacian(g)).eigenvalues
    tol = default_rank_tol(w[0])
    assert (w <= tol).sum() == 3
    assert lambda_min_gt0(laplacian(g)) > 0


def test_lambda_min_max():
    assert lambda_min(SymMatrix(np.eye(4))) == pytest.approx(1.0)
    assert lambda_max(SymMatrix(np.eye(4))) == pytest.approx(1.0)
    assert lambda_min(SymMatrix(np.diag([-2.0, 5.0]))) == pytest.approx(-2.0)
    assert lambda_max(SymMatrix(np.diag([-2.0, 5.0]))) == pytest.approx(5.0)
    L = laplacian(path_graph(3))
    assert abs(lambda_min(L)) <= 1e-9
    assert lambda_max(L) == pytest.approx(3.0, rel=1e-12)


def test_spectral_norm_cases():
    assert spectral_norm(np.eye(3)) == pytest.approx(1.0)
    assert spectral_norm([[0.0, 2.0], [0.0, 0.0]]) == pytest.approx(2.0)
    assert spectral_norm(np.array([[3.0], [4.0]])) == pytest.approx(5.0)


def test_spectral_norm_transpose_invariant():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = rng.standard_normal((rng.integers(1, 7), rng.integers(1, 7)))
        assert spectral_norm(a) == pytest.approx(spectral_norm(a.T), rel=1e-12)
