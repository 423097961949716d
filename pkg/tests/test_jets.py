import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactcurv import exprlang as el
from contactcurv.jets import Jet2, seed_point

from helpers import fd_gradient, fd_hessian, random_expr


class TestSeed:
    def test_basis_direction(self):
        j = Jet2.seed(0, 2.0, 3)
        assert j.val == 2.0
        assert np.array_equal(j.grad, [1.0, 0.0, 0.0])
        assert not j.hess.any()

    def test_last_direction(self):
        j = Jet2.seed(2, -1.0, 3)
        assert j.val == -1.0
        assert np.array_equal(j.grad, [0.0, 0.0, 1.0])

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            Jet2.seed(3, 0.0, 3)


class TestCalculus:
    def test_product_rule(self):
        x, y = seed_point((2.0, 3.0))
        p = x * y
        assert p.val == 6.0
        assert np.array_equal(p.grad, [3.0, 2.0])
        assert np.array_equal(p.hess, [[0.0, 1.0], [1.0, 0.0]])

    def test_sin_at_quarter_turn(self):
        j = Jet2.seed(0, math.pi / 2.0, 1).sin()
        assert j.val == 1.0
        assert abs(j.grad[0]) < 1e-15
        assert abs(j.hess[0, 0] + 1.0) < 1e-15

    def test_division_by_zero_value(self):
        with pytest.raises(ZeroDivisionError):
            Jet2.seed(0, 1.0, 1) / Jet2.constant(0.0, 1)

    def test_log_domain(self):
        with pytest.raises(ValueError):
            Jet2.seed(0, -1.0, 1).log()

    def test_quadratic_is_exact(self):
        # 3x^2 + 2xy - y + 5: derivatives of degree-2 polynomials carry no
        # truncation error at all.
        x, y = seed_point((0.7, -1.3))
        p = 3.0 * x * x + 2.0 * x * y - y + 5.0
        assert p.val == 3.0 * 0.49 + 2.0 * 0.7 * (-1.3) + 1.3 + 5.0
        assert np.array_equal(p.grad, [6.0 * 0.7 + 2.0 * (-1.3), 2.0 * 0.7 - 1.0])
        assert np.array_equal(p.hess, [[6.0, 2.0], [2.0, 0.0]])

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(23)
        names = ["x", "y", "z"]
        for _ in range(60):
            e = random_expr(rng, names, 3)
            p = rng.uniform(0.3, 1.0, 3)

            def value(q):
                return el.evaluate(e, dict(zip(names, (float(v) for v in q))))

            jet = el.evaluate(e, {n: Jet2.seed(i, float(p[i]), 3) for i, n in enumerate(names)})
            if not isinstance(jet, Jet2):  # tree folded to a constant
                continue
            fd_g = fd_gradient(value, p, 1e-4)
            fd_h = fd_hessian(value, p, 1e-4)
            scale_g = np.maximum(1.0, np.abs(jet.grad))
            scale_h = np.maximum(1.0, np.abs(jet.hess))
            assert np.all(np.abs(jet.grad - fd_g) <= 1e-5 * scale_g)
            assert np.all(np.abs(jet.hess - fd_h) <= 1e-5 * scale_h)

    def test_hessian_symmetry_through_operation_chains(self):
        rng = np.random.default_rng(31)
        names = ["x", "y", "z"]
        for _ in range(60):
            e = random_expr(rng, names, 4)
            jet = el.evaluate(e, {n: Jet2.seed(i, float(v), 3)
                                  for i, (n, v) in enumerate(zip(names, rng.uniform(0.3, 1.0, 3)))})
            if isinstance(jet, Jet2):
                assert np.array_equal(jet.hess, jet.hess.T)


finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


def jet_strategy(d=2):
    return st.builds(
        lambda v, g, h: Jet2(v, np.array(g), (lambda m: (m + m.T) / 2.0)(np.array(h))),
        finite,
        st.lists(finite, min_size=d, max_size=d),
        st.lists(st.lists(finite, min_size=d, max_size=d), min_size=d, max_size=d),
    )


def _close(a: Jet2, b: Jet2, tol=1e-12):
    scale = max(1.0, abs(a.val), float(np.max(np.abs(a.grad))), float(np.max(np.abs(a.hess))))
    return (
        abs(a.val - b.val) <= tol * scale
        and np.all(np.abs(a.grad - b.grad) <= tol * scale)
        and np.all(np.abs(a.hess - b.hess) <= tol * scale)
    )


@settings(max_examples=60, deadline=None)
@given(jet_strategy(), jet_strategy())
def test_addition_and_multiplication_commute(a, b):
    assert _close(a + b, b + a)
    assert _close(a * b, b * a)


@settings(max_examples=60, deadline=None)
@given(jet_strategy(), jet_strategy(), jet_strategy())
def test_reassociation_stays_within_tolerance(a, b, c):
    assert _close((a + b) + c, a + (b + c))
    assert _close((a * b) * c, a * (b * c))
