import numpy as np
import pytest

from ggibandit import (
    GgiWeights,
    MolpLearner,
    OgdeLearner,
    geometric_weights,
    ggi_policy_gradient,
    ggi_value,
    make_random_instance,
    ogde_update,
    optimal_mixed_policy,
    project_truncated_simplex,
    pseudo_regret,
    run_single,
    sample_arm,
    step_size,
    true_means,
)


class TestStepSize:
    def test_matches_high_precision_evaluation(self):
        from mpmath import mp, mpf, sqrt as msqrt, log as mlog

        mp.dps = 50
        for K, delta, t in [(5, 0.1, 10**6), (2, 0.1, 500), (20, 0.05, 12345)]:
            exact = msqrt(2) / (1 - 1 / msqrt(K)) * msqrt(mlog(2 / mpf(str(delta))) / t)
            exact = min(mpf(1), exact)
            got = step_size(K, delta, t)
            assert abs(got - float(exact)) <= 1e-12 * max(1.0, float(exact))

    def test_known_value(self):
        assert step_size(5, 0.1, 10**6) == pytest.approx(0.004428, abs=2e-6)

    def test_clamped_early(self):
        # raw value at (K=5, delta=0.1, t=6) is about 1.8 before the clamp
        assert step_size(5, 0.1, 6) == 1.0

    def test_monotone_non_increasing(self):
        prev = np.inf
        for t in range(1, 10_001):
            e = step_size(5, 0.1, t)
            assert e <= prev
            prev = e

    def test_errors(self):
        with pytest.raises(ValueError):
            step_size(1, 0.1, 10)
        with pytest.raises(ValueError):
            step_size(5, 0.0, 10)
        with pytest.raises(ValueError):
            step_size(5, 1.0, 10)
        with pytest.raises(ValueError):
            step_size(5, 0.1, 0)


class TestOgdeUpdate:
    def test_hand_example(self):
        out = ogde_update(np.array([0.5, 0.5]), 0.1, np.array([1.5, 0.0]))
        assert np.allclose(out, [0.425, 0.575], atol=1e-9)

    def test_equal_gradient_is_null_direction(self):
        # with all arms identical the gradient is constant across arms
        alpha = np.array([0.4, 0.35, 0.25])
        g = np.full(3, 0.8)
        eta = 0.05  # alpha stays feasible for the eta-floor
        out = ogde_update(alpha, eta, g)
        assert np.allclose(out, alpha, atol=1e-12)

    def test_matches_independent_recompute_exactly(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            K = int(rng.integers(2, 8))
            alpha = rng.random(K)
            alpha /= alpha.sum()
            g = rng.uniform(0, 3, K)
            eta = float(rng.uniform(0, 1))
            expect = project_truncated_simplex(alpha - eta * g, eta)
            assert np.array_equal(ogde_update(alpha, eta, g), expect)

    def test_floor_guarantee(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            K = int(rng.integers(2, 6))
            alpha = rng.random(K)
            alpha /= alpha.sum()
            eta = float(rng.uniform(0, 1))
            out = ogde_update(alpha, eta, rng.uniform(0, 5, K))
            assert np.all(out >= eta / K - 1e-10)


class TestOgdeLearner:
    def test_initialization_contract(self):
        learner = OgdeLearner(3, 2, geometric_weights(2), delta=0.1)
        mu_hat = np.zeros((2, 3))
        for t in (1, 2, 3):
            a = learner.policy(t, mu_hat)
            expect = np.zeros(3)
            expect[t - 1] = 1.0
            assert np.array_equal(a, expect)
        learner.observe(3, mu_hat)
        assert np.array_equal(learner.policy(4, mu_hat), np.full(3, 1 / 3))

    def test_step_uses_schedule_and_projection(self):
        w = GgiWeights(np.array([1.0, 0.5]))
        learner = OgdeLearner(2, 2, w, delta=0.1)
        mu_hat = np.array([[1.0, 0.0], [1.0, 0.0]])
        learner.alpha = np.array([0.5, 0.5])
        t = 500
        learner.observe(t, mu_hat)
        eta = step_size(2, 0.1, t)
        g = ggi_policy_gradient(w, mu_hat, np.array([0.5, 0.5]))
        expect = project_truncated_simplex(np.array([0.5, 0.5]) - eta * g, eta)
        assert np.array_equal(learner.alpha, expect)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            OgdeLearner(1, 2, geometric_weights(2))
        with pytest.raises(ValueError):
            OgdeLearner(2, 2, geometric_weights(2), delta=1.5)


class TestSampleArm:
    def test_one_hot(self):
        rng = np.random.default_rng(2)
        a = np.array([0.0, 1.0, 0.0])
        assert all(sample_arm(a, rng) == 1 for _ in range(50))

    def test_frequencies(self):
        rng = np.random.default_rng(3)
        a = np.array([0.5, 0.5])
        draws = np.array([sample_arm(a, rng) for _ in range(100_000)])
        f = np.mean(draws == 0)
        assert 0.49 <= f <= 0.51

    def test_reproducible(self):
        a = np.array([0.2, 0.3, 0.5])
        r1 = np.random.Generator(np.random.PCG64(11))
        r2 = np.random.Generator(np.random.PCG64(11))
        assert [sample_arm(a, r1) for _ in range(200)] == [sample_arm(a, r2) for _ in range(200)]

    def test_rejects_non_distribution(self):
        rng = np.random.default_rng(4)
        with pytest.raises(ValueError):
            sample_arm(np.array([0.5, 0.6]), rng)
        with pytest.raises(ValueError):
            sample_arm(np.array([1.5, -0.5]), rng)


class TestRunBehaviors:
    def run(self, algorithm, arms, T, checkpoints, seed=0, delta=0.1, weights=None):
        D = arms[0].dim
        w = weights if weights is not None else geometric_weights(D)
        rng = np.random.Generator(np.random.PCG64(seed))
        return run_single(arms, w, algorithm, delta, T, np.asarray(checkpoints), rng)

    def test_exploration_floor_both_learners(self):
        arms = make_random_instance(4, 3, 5)
        for alg in ("mo-ogde", "mo-lp"):
            trace = self.run(alg, arms, 3000, [3000], seed=1)
            assert trace.floor_slack_min[0] >= -1e-10

    def test_init_rounds_recorded_as_one_hot(self):
        arms = make_random_instance(4, 2, 6)
        trace = self.run("mo-ogde", arms, 4, [4])
        assert np.allclose(trace.alpha_bar[0], np.full(4, 0.25))
        assert trace.pull_counts[0].tolist() == [1, 1, 1, 1]

    def test_molp_uniform_while_schedule_clamped(self):
        # with K=2, delta=0.1 the raw schedule stays above 1 until t ~ 70
        arms = make_random_instance(2, 2, 7)
        trace = self.run("mo-lp", arms, 50, [50])
        assert np.allclose(trace.alpha_bar[0], [0.5, 0.5], atol=1e-12)

    def test_molp_single_objective_concentrates(self):
        learner = MolpLearner(2, 1, GgiWeights(np.array([1.0])), delta=0.1)
        mu_hat = np.array([[0.7, 0.2]])
        t = 10_000
        a = learner.policy(t, mu_hat)
        eta = step_size(2, 0.1, t)
        assert a[1] == pytest.approx(1.0 - eta / 2, abs=1e-8)

    def test_fixed_arm_pseudo_regret_is_gap(self):
        arms = make_random_instance(3, 2, 8)
        mu = true_means(arms)
        w = geometric_weights(2)
        opt = optimal_mixed_policy(w, mu)
        trace = self.run("fixed(2)", arms, 100, [100])
        gap = ggi_value(w, mu[:, 1]) - opt.ggi_star
        assert trace.pseudo_regret[0] == pytest.approx(gap, abs=1e-9)
        assert gap >= -1e-9

    def test_pull_counts_concentrate_around_policy_sums(self):
        # Azuma-style check at reduced scale: 60 repetitions, T = 2000
        arms = make_random_instance(3, 2, 9)
        cps = np.array([200, 800, 2000])
        bound_hits = 0
        total = 0
        for rep in range(60):
            trace = self.run("mo-ogde", arms, 2000, cps, seed=100 + rep)
            for i, t in enumerate(cps):
                bound = np.sqrt(2 * t * np.log(2 / 0.01))
                dev = np.abs(trace.pull_counts[i] - trace.alpha_bar[i] * t)
                total += dev.size
                bound_hits += int(np.sum(dev <= bound))
        assert bound_hits / total >= 0.98

    def test_single_objective_pseudo_regret_shrinks(self):
        from ggibandit import IndependentBernoulli

        arms = [IndependentBernoulli(np.array([0.4])), IndependentBernoulli(np.array([0.6]))]
        w = GgiWeights(np.array([1.0]))
        trace = self.run("mo-ogde", arms, 20_000, [1000, 20_000], weights=w)
        assert trace.pseudo_regret[1] < trace.pseudo_regret[0]

    def test_pseudo_regret_formula_single_objective(self):
        # with D = 1 the pseudo-regret is the usual weighted mean gap
        mu = np.array([[0.3, 0.7]])
        w = GgiWeights(np.array([1.0]))
        alpha_bar = np.array([0.25, 0.75])
        val = pseudo_regret(w, mu, alpha_bar, 0.3)
        assert val == pytest.approx(0.75 * 0.4, abs=1e-12)
