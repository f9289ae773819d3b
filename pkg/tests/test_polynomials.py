import json
import math

import numpy as np
import pytest

from harmonica.errors import InvalidInput, NoConvergence
from harmonica.polynomials import MonicPolynomial, polynomial_roots


class TestMonicPolynomial:
    def test_degree_and_eval(self):
        f = MonicPolynomial((-2, 5, 3, 6, 0))  # z^5 + 6z^3 + 3z^2 + 5z - 2
        assert f.degree == 5
        assert f(0) == -2
        assert f(1) == 1 + 6 + 3 + 5 - 2

    def test_vector_eval(self):
        f = MonicPolynomial((1, 0))  # z^2 + 1
        z = np.array([0j, 1j, 2j])
        assert np.allclose(f(z), [1, 0, -3])

    def test_derivative(self):
        f = MonicPolynomial((-2, 5, 3, 6, 0))
        # f' = 5z^4 + 18z^2 + 6z + 5
        assert f.derivative_coeffs() == (5, 6, 18, 0, 5)
        assert f.eval_derivative(1) == 5 + 18 + 6 + 5

    def test_monic_derivative(self):
        f = MonicPolynomial((0, 1))  # z^2 + z... wait: a_0=0, a_1=1 -> z^2 + z
        assert f.monic_derivative().coeffs == (0.5,)
        with pytest.raises(InvalidInput):
            MonicPolynomial((3,)).monic_derivative()

    def test_multiply_linear(self):
        f = MonicPolynomial((-1, 0))  # z^2 - 1
        g = f.multiply_linear(2)  # (z - 2)(z^2 - 1) = z^3 - 2z^2 - z + 2
        assert g.coeffs == (2, -1, -2)

    def test_empty_rejected(self):
        with pytest.raises(InvalidInput):
            MonicPolynomial(())

    def test_json_round_trip(self):
        f = MonicPolynomial((1 + 2j, -0.5, 3j))
        data = json.loads(json.dumps(f.to_json_dict()))
        assert MonicPolynomial.from_json_dict(data) == f


class TestRoots:
    def test_quadratic_exact(self):
        roots = polynomial_roots(MonicPolynomial((1, 0)))  # z^2 + 1
        assert sorted(r.imag for r in roots) == pytest.approx([-1, 1], abs=1e-12)
        assert all(abs(r.real) < 1e-12 for r in roots)

    def test_linear(self):
        assert polynomial_roots(MonicPolynomial((-(3 + 4j),))) == (3 + 4j,)

    def test_quintic_vieta(self):
        f = MonicPolynomial((-2, 5, 3, 6, 0))
        roots = polynomial_roots(f)
        assert len(roots) == 5
        # product of roots = (-1)^5 a_0 = 2
        assert abs(np.prod(roots) - 2) < 1e-10

    def test_residuals(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            deg = int(rng.integers(2, 8))
            f = MonicPolynomial(tuple(rng.uniform(-3, 3, deg) + 1j * rng.uniform(-3, 3, deg)))
            for r in polynomial_roots(f):
                assert abs(f(r)) / (1 + abs(r)) ** deg < 1e-11

    def test_repeated_roots_cluster(self):
        roots = polynomial_roots(MonicPolynomial((0, 0)))  # z^2
        assert all(abs(r) < 1e-5 for r in roots)

    def test_wide_magnitude_spread(self):
        f = MonicPolynomial((0,))
        targets = (64.0, 4096.0, 2.7e8, 7e16)
        for t in targets:
            f = f.multiply_linear(t)
        roots = sorted(abs(r) for r in polynomial_roots(f))
        assert roots[0] == 0.0
        for got, want in zip(roots[1:], targets):
            assert abs(got - want) / want < 1e-9

    def test_no_convergence_budget(self):
        f = MonicPolynomial((1, -6, 15, -20, 15, -6))  # (z - 1)^6
        with pytest.raises(NoConvergence):
            polynomial_roots(f, max_iter=3, restarts=0)

    def test_deterministic(self):
        f = MonicPolynomial((1 + 1j, -2, 0.5j, 1))
        assert polynomial_roots(f) == polynomial_roots(f)
