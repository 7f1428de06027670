import numpy as np
import pytest

from ggibandit import project_simplex, project_truncated_simplex
from oracles import grid_project_truncated


def feasible(z, beta, tol=1e-10):
    K = z.size
    return abs(z.sum() - 1.0) <= tol and np.all(z >= beta / K - tol)


class TestProjectSimplex:
    def test_idempotent_on_feasible_points(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            K = int(rng.integers(1, 10))
            a = rng.random(K)
            a /= a.sum()
            assert np.max(np.abs(project_simplex(a) - a)) <= 1e-12

    def test_hand_examples(self):
        assert np.allclose(project_simplex([2.0, 0.0]), [1.0, 0.0], atol=1e-12)
        assert np.allclose(project_simplex([0.6, 0.6]), [0.5, 0.5], atol=1e-12)

    def test_feasibility(self):
        rng = np.random.default_rng(1)
        for _ in range(300):
            K = int(rng.integers(1, 12))
            z = project_simplex(rng.normal(scale=3.0, size=K))
            assert feasible(z, 0.0)

    def test_errors(self):
        with pytest.raises(ValueError):
            project_simplex([])
        with pytest.raises(ValueError):
            project_simplex([np.inf, 0.0])


class TestProjectTruncated:
    def test_beta_zero_matches_plain(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            x = rng.normal(size=int(rng.integers(1, 8)))
            assert np.array_equal(project_truncated_simplex(x, 0.0), project_simplex(x))

    def test_hand_examples(self):
        assert np.allclose(project_truncated_simplex([1.0, 0.0], 0.2), [0.9, 0.1], atol=1e-12)
        assert np.allclose(project_truncated_simplex([0.5, 0.5], 0.2), [0.5, 0.5], atol=1e-12)

    def test_beta_one_is_uniform(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            K = int(rng.integers(1, 8))
            z = project_truncated_simplex(rng.normal(size=K), 1.0)
            assert np.array_equal(z, np.full(K, 1.0 / K))

    def test_feasibility_and_idempotence(self):
        rng = np.random.default_rng(4)
        for _ in range(300):
            K = int(rng.integers(1, 10))
            beta = float(rng.random())
            z = project_truncated_simplex(rng.normal(scale=2.0, size=K), beta)
            assert feasible(z, beta)
            z2 = project_truncated_simplex(z, beta)
            assert np.max(np.abs(z2 - z)) <= 1e-12

    def test_non_expansive(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            K = int(rng.integers(1, 10))
            beta = float(rng.random())
            x, y = rng.normal(size=K), rng.normal(size=K)
            px = project_truncated_simplex(x, beta)
            py = project_truncated_simplex(y, beta)
            assert np.linalg.norm(px - py) <= np.linalg.norm(x - y) + 1e-10

    def test_order_preservation(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            K = int(rng.integers(2, 10))
            beta = float(rng.random())
            x = rng.normal(size=K)
            z = project_truncated_simplex(x, beta)
            order = np.argsort(x)
            assert np.all(np.diff(z[order]) >= -1e-12)

    def test_matches_grid_search(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            K = int(rng.integers(1, 4))
            beta = float(rng.random())
            x = rng.normal(scale=1.5, size=K)
            z = project_truncated_simplex(x, beta)
            zg = grid_project_truncated(x, beta, step=1e-3)
            assert np.linalg.norm(z - zg) <= 2e-3

    def test_bad_beta(self):
        with pytest.raises(ValueError):
            project_truncated_simplex([0.5, 0.5], -0.1)
        with pytest.raises(ValueError):
            project_truncated_simplex([0.5, 0.5], 1.1)
