import numpy as np
import pytest

from ggibandit import LpProblem, LpStatus, solve
from oracles import lp_vertex_oracle


class TestStatuses:
    def test_single_variable_optimum(self):
        sol = solve(LpProblem([-1.0], [[1.0]], ["<="], [1.0]))
        assert sol.status is LpStatus.OPTIMAL
        assert sol.z[0] == pytest.approx(1.0, abs=1e-10)
        assert sol.objective_value == pytest.approx(-1.0, abs=1e-10)

    def test_empty_feasible_set(self):
        sol = solve(LpProblem([-1.0], [[1.0], [1.0]], [">=", "<="], [1.0, 0.0]))
        assert sol.status is LpStatus.INFEASIBLE

    def test_improving_ray(self):
        sol = solve(LpProblem([-1.0], np.zeros((0, 1)), [], []))
        assert sol.status is LpStatus.UNBOUNDED

    def test_free_variable_unbounded(self):
        p = LpProblem([1.0, 0.0], [[0.0, 1.0]], ["<="], [1.0],
                      lower=[-np.inf, 0.0])
        assert solve(p).status is LpStatus.UNBOUNDED

    def test_zero_row_handling(self):
        p = LpProblem([1.0], np.zeros((1, 1)), ["<="], [-1.0])
        assert solve(p).status is LpStatus.INFEASIBLE
        p = LpProblem([1.0], np.zeros((1, 1)), ["<="], [1.0])
        assert solve(p).status is LpStatus.OPTIMAL


class TestValidation:
    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            LpProblem([np.nan], [[1.0]], ["<="], [1.0])
        with pytest.raises(ValueError):
            LpProblem([1.0], [[np.inf]], ["<="], [1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            LpProblem([1.0, 2.0], [[1.0]], ["<="], [1.0])
        with pytest.raises(ValueError):
            LpProblem([1.0], [[1.0]], ["<=", "<="], [1.0])

    def test_bad_relation(self):
        with pytest.raises(ValueError):
            LpProblem([1.0], [[1.0]], ["!!"], [1.0])

    def test_crossed_bounds(self):
        with pytest.raises(ValueError):
            LpProblem([1.0], [[1.0]], ["<="], [1.0], lower=[2.0], upper=[1.0])


def random_box_lp(rng):
    """Box-bounded LP guaranteed feasible: rows anchored at an interior point."""
    n = int(rng.integers(1, 7))
    m = int(rng.integers(1, 7))
    lower = rng.uniform(-1.0, 0.0, n)
    upper = lower + rng.uniform(0.2, 1.5, n)
    x0 = lower + (upper - lower) * rng.uniform(0.2, 0.8, n)
    A = rng.uniform(-1, 1, (m, n))
    relations = []
    b = np.empty(m)
    for i in range(m):
        r = rng.random()
        ax = float(A[i] @ x0)
        if r < 0.4:
            relations.append("<=")
            b[i] = ax + rng.uniform(0.0, 1.0)
        elif r < 0.8:
            relations.append(">=")
            b[i] = ax - rng.uniform(0.0, 1.0)
        else:
            relations.append("=")
            b[i] = ax
    c = rng.uniform(-1, 1, n)
    return LpProblem(c, A, relations, b, lower=lower, upper=upper), x0


class TestAgainstVertexOracle:
    def test_random_box_bounded(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            problem, x0 = random_box_lp(rng)
            sol = solve(problem)
            assert sol.status is LpStatus.OPTIMAL
            # returned point is feasible within stated tolerances
            r = problem.A @ sol.z - problem.rhs
            for i in range(problem.n_rows):
                if problem.relations[i] == -1:
                    assert r[i] <= 1e-8
                elif problem.relations[i] == 1:
                    assert r[i] >= -1e-8
                else:
                    assert abs(r[i]) <= 1e-8
            assert np.all(sol.z >= problem.lower - 1e-10)
            assert np.all(sol.z <= problem.upper + 1e-10)
            # optimal against enumeration of all basic solutions
            rels = ["<=", "=", ">="]
            feasible, best = lp_vertex_oracle(
                problem.objective, problem.A,
                [rels[s + 1] for s in problem.relations], problem.rhs,
                problem.lower, problem.upper,
            )
            assert feasible
            assert sol.objective_value == pytest.approx(best, abs=1e-7)
            # any feasible point bounds the optimum from above
            assert sol.objective_value <= float(problem.objective @ x0) + 1e-7

    def test_determinism(self):
        rng = np.random.default_rng(7)
        problem, _ = random_box_lp(rng)
        s1 = solve(problem)
        s2 = solve(problem)
        assert s1.status is s2.status
        assert np.array_equal(s1.z, s2.z)
        assert s1.objective_value == s2.objective_value


class TestDegenerateAndBounds:
    def test_beale_cycling_instance_terminates(self):
        # Classic degenerate instance that cycles under naive pivoting.
        A = [
            [0.25, -60.0, -1.0 / 25.0, 9.0],
            [0.5, -90.0, -1.0 / 50.0, 3.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
        p = LpProblem([-0.75, 150.0, -0.02, 6.0], A, ["<=", "<=", "<="], [0.0, 0.0, 1.0])
        sol = solve(p)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective_value == pytest.approx(-0.05, abs=1e-9)

    def test_mixed_bounds(self):
        # min x + y with x free, y in [-2, 5], x + y >= 1, x <= 3
        p = LpProblem(
            [1.0, 1.0],
            [[1.0, 1.0], [1.0, 0.0]],
            [">=", "<="],
            [1.0, 3.0],
            lower=[-np.inf, -2.0],
            upper=[np.inf, 5.0],
        )
        sol = solve(p)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective_value == pytest.approx(1.0, abs=1e-9)

    def test_upper_bounded_free_variable(self):
        # min -x with x <= 4 (lower bound -inf): optimum at x = 4
        p = LpProblem([-1.0], np.zeros((0, 1)), [], [], lower=[-np.inf], upper=[4.0])
        sol = solve(p)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.z[0] == pytest.approx(4.0, abs=1e-10)

    def test_equality_only_system(self):
        # x + y = 1, x - y = 0 -> unique point (0.5, 0.5)
        p = LpProblem([3.0, 1.0], [[1.0, 1.0], [1.0, -1.0]], ["=", "="], [1.0, 0.0])
        sol = solve(p)
        assert sol.status is LpStatus.OPTIMAL
        assert np.allclose(sol.z, [0.5, 0.5], atol=1e-10)
