import numpy as np
import pytest

from ggibandit import (
    EmpiricalState,
    FiniteSupport,
    IndependentBernoulli,
    make_random_instance,
    true_means,
)


class TestDistributions:
    def test_bernoulli_validation(self):
        with pytest.raises(ValueError):
            IndependentBernoulli(np.array([1.2]))
        with pytest.raises(ValueError):
            IndependentBernoulli(np.array([]))

    def test_bernoulli_degenerate(self):
        arm = IndependentBernoulli(np.array([0.0, 1.0]))
        rng = np.random.default_rng(0)
        for _ in range(50):
            assert np.array_equal(arm.sample(rng), [0.0, 1.0])

    def test_bernoulli_monte_carlo_mean(self):
        arm = IndependentBernoulli(np.array([0.3]))
        rng = np.random.default_rng(1)
        xs = np.array([arm.sample(rng)[0] for _ in range(100_000)])
        assert 0.29 <= xs.mean() <= 0.31

    def test_finite_support_single_atom(self):
        arm = FiniteSupport(np.array([[0.2, 0.8]]), np.array([1.0]))
        rng = np.random.default_rng(2)
        for _ in range(20):
            assert np.array_equal(arm.sample(rng), [0.2, 0.8])

    def test_finite_support_validation(self):
        with pytest.raises(ValueError):
            FiniteSupport(np.array([[0.5], [0.5]]), np.array([0.6, 0.6]))
        with pytest.raises(ValueError):
            FiniteSupport(np.array([[1.5]]), np.array([1.0]))

    def test_finite_support_mean(self):
        arm = FiniteSupport(np.array([[0.0, 0.0], [1.0, 1.0]]), np.array([0.5, 0.5]))
        assert np.allclose(arm.mean, [0.5, 0.5])

    def test_true_means(self):
        arms = [
            IndependentBernoulli(np.array([0.2, 0.9])),
            FiniteSupport(np.array([[0.0, 0.0], [1.0, 1.0]]), np.array([0.25, 0.75])),
        ]
        mu = true_means(arms)
        assert mu.shape == (2, 2)
        assert np.allclose(mu[:, 0], [0.2, 0.9])
        assert np.allclose(mu[:, 1], [0.75, 0.75])

    def test_true_means_vs_monte_carlo(self):
        rng = np.random.default_rng(3)
        arms = make_random_instance(3, 2, 99)
        mu = true_means(arms)
        for k, arm in enumerate(arms):
            xs = np.array([arm.sample(rng) for _ in range(100_000)])
            assert np.max(np.abs(xs.mean(axis=0) - mu[:, k])) < 0.01


class TestMakeRandomInstance:
    def test_deterministic_given_seed(self):
        a1 = make_random_instance(5, 4, 123)
        a2 = make_random_instance(5, 4, 123)
        for x, y in zip(a1, a2):
            assert np.array_equal(x.p, y.p)
        a3 = make_random_instance(5, 4, 124)
        assert not all(np.array_equal(x.p, y.p) for x, y in zip(a1, a3))

    def test_shapes_and_ranges(self):
        arms = make_random_instance(5, 5, 0)
        assert len(arms) == 5
        p = np.column_stack([a.p for a in arms])
        assert p.shape == (5, 5)
        assert np.all((p >= 0) & (p <= 1))

    def test_parameters_are_uniform(self):
        vals = np.array([make_random_instance(2, 1, s)[0].p[0] for s in range(100_000)])
        assert 0.49 <= vals.mean() <= 0.51

    def test_rejects_single_arm(self):
        with pytest.raises(ValueError):
            make_random_instance(1, 3, 0)


class TestEmpiricalState:
    def test_first_sample_is_exact_mean(self):
        st = EmpiricalState(3, 2)
        x = np.array([0.25, 1.0])
        st.update(1, x)
        assert np.array_equal(st.mu_hat[:, 1], x)
        assert st.pull_counts.tolist() == [0, 1, 0]
        assert st.t == 1

    def test_two_sample_mean(self):
        st = EmpiricalState(2, 2)
        st.update(0, np.array([0.0, 0.0]))
        st.update(0, np.array([1.0, 1.0]))
        assert np.allclose(st.mu_hat[:, 0], [0.5, 0.5])

    def test_matches_log_replay(self):
        rng = np.random.default_rng(4)
        K, D = 4, 3
        st = EmpiricalState(K, D)
        log = []
        for _ in range(1000):
            k = int(rng.integers(K))
            x = rng.random(D)
            st.update(k, x)
            log.append((k, x))
        for k in range(K):
            xs = [x for (kk, x) in log if kk == k]
            if xs:
                assert np.max(np.abs(st.mu_hat[:, k] - np.mean(xs, axis=0))) <= 1e-12
        total = np.sum([x for _, x in log], axis=0)
        assert np.max(np.abs(st.cumulative_cost - total)) <= 1e-9
        assert st.pull_counts.sum() == st.t == 1000
        assert np.all((st.mu_hat >= 0) & (st.mu_hat <= 1))

    def test_bad_updates(self):
        st = EmpiricalState(2, 2)
        with pytest.raises(IndexError):
            st.update(2, np.zeros(2))
        with pytest.raises(ValueError):
            st.update(0, np.zeros(3))

    def test_sampling_is_reproducible(self):
        arms = make_random_instance(3, 4, 7)
        r1 = np.random.Generator(np.random.PCG64(5))
        r2 = np.random.Generator(np.random.PCG64(5))
        s1 = [arms[k % 3].sample(r1) for k in range(100)]
        s2 = [arms[k % 3].sample(r2) for k in range(100)]
        assert all(np.array_equal(a, b) for a, b in zip(s1, s2))
