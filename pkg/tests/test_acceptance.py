"""Acceptance suite.

Each test runs one acceptance criterion at its pinned tolerance and prints
one pass/fail line (run ``pytest -s tests/test_acceptance.py`` to see the
lines as they appear).
"""

import dataclasses
import json
import math
from contextlib import contextmanager

import numpy as np
import pytest

from contactcurv import bochner as bm
from contactcurv import catalog
from contactcurv import cli
from contactcurv import contactpair as cpm
from contactcurv import exprlang as el
from contactcurv import riemann as rm
from contactcurv.jets import Jet2

from helpers import fd_gradient, fd_hessian, random_expr

CATALOG_KEYS = ("hopf:1", "hopf:2", "sphere_product:1,1", "heisenberg_r")


@contextmanager
def criterion(number: int, slug: str):
    try:
        yield
    except BaseException:
        print(f"criterion {number:2d} [{slug}]: FAIL")
        raise
    print(f"criterion {number:2d} [{slug}]: PASS")


@pytest.fixture(scope="module")
def manifolds():
    return {key: catalog.resolve(key) for key in CATALOG_KEYS}


def test_criterion_01_identity_suite_green(manifolds):
    with criterion(1, "structure identities on the whole catalog"):
        defects = {"hopf:1": 4.0, "hopf:2": 16.0, "sphere_product:1,1": 8.0,
                   "heisenberg_r": 4.0}
        for key, cp in manifolds.items():
            report = cpm.lemma_suite(cp, tolerance=1e-7)
            assert report.passed, (key, [c.name for c in report.failures])
            m, n = cp.pair_type
            for pt in cp.chart.sample_points:
                st = cpm.structure_at(cp, pt)
                rho = st.geo.ricci
                assert abs(st.z1 @ rho @ st.z1 - 2.0 * m) < 1e-7
                assert abs(st.z2 @ rho @ st.z2 - 2.0 * n) < 1e-7
                assert abs(st.z1 @ rho @ st.z2) < 1e-7
                star = st.star_ricci
                assert abs(st.z1 @ star @ st.z1) < 1e-7
                assert abs(st.z2 @ star @ st.z2) < 1e-7
                assert abs(st.z1 @ star @ st.z2) < 1e-7
                for x in st.horizontal_leaf_vectors(2):
                    vals = [float(np.einsum("ijkl,i,j,k,l", st.geo.riem4,
                                            x, u, v, x))
                            for (u, v) in ((st.z1, st.z1), (st.z1, st.z2),
                                           (st.z2, st.z2))]
                    assert abs(vals[0] - 1.0) < 1e-7
                    assert abs(vals[1]) < 1e-7
                    assert abs(vals[2]) < 1e-7
                assert abs(st.geo.tau - st.tau_star - defects[key]) < 1e-7


def test_criterion_02_model_scalar_curvature(manifolds):
    with criterion(2, "scalar curvature of the model spaces"):
        for key, expected in (("hopf:1", 6.0), ("hopf:2", 20.0)):
            cp = manifolds[key]
            for pt in cp.chart.sample_points:
                assert abs(rm.scalar(cp.metric, pt) - expected) < 1e-7


def test_criterion_03_bochner_flatness_of_the_model(manifolds):
    with criterion(3, "Bochner flatness of the model spaces"):
        cp2 = manifolds["hopf:2"]
        for pt in cp2.chart.sample_points:
            b = bm.bochner(bm.context(cp2, pt), bm.GENERAL)
            assert np.max(np.abs(b)) < 1e-6
        cp1 = manifolds["hopf:1"]
        for pt in cp1.chart.sample_points:
            assert abs(bm.reeb_plane_component(cp1, pt)) < 1e-7
            b = bm.bochner(bm.context(cp1, pt), bm.DIM4)
            assert np.max(np.abs(b)) < 1e-6


def test_criterion_04_model_pointwise_values(manifolds):
    with criterion(4, "horizontal Ricci, star-Ricci and phi-sectional values"):
        for key, m in (("hopf:1", 1), ("hopf:2", 2)):
            cp = manifolds[key]
            for pt in cp.chart.sample_points:
                st = cpm.structure_at(cp, pt)
                vectors = st.horizontal_leaf_vectors(2)
                assert vectors
                for x in vectors:
                    assert abs(float(x @ st.geo.ricci @ x) - 2.0 * m) < 1e-7
                    assert abs(float(x @ st.star_ricci @ x) - 1.0) < 1e-7
                    px = st.phi @ x
                    sect = float(np.einsum("ijkl,i,j,k,l", st.geo.riem4,
                                           x, px, px, x))
                    assert abs(sect - 1.0) < 1e-7


def test_criterion_05_conformal_flatness(manifolds):
    with criterion(5, "Weyl flatness of the models, non-flat control"):
        for key in ("hopf:1", "hopf:2"):
            cp = manifolds[key]
            for pt in cp.chart.sample_points:
                assert np.max(np.abs(rm.weyl(cp.metric, pt).comps)) < 1e-8
        control = manifolds["heisenberg_r"]
        for pt in control.chart.sample_points:
            assert np.max(np.abs(rm.weyl(control.metric, pt).comps)) > 1e-2


def test_criterion_06_negative_controls(manifolds):
    with criterion(6, "Bochner negative controls"):
        control = manifolds["heisenberg_r"]
        for pt in control.chart.sample_points:
            b = bm.bochner(bm.context(control, pt))
            assert np.max(np.abs(b)) > 1e-2
        prod = manifolds["sphere_product:1,1"]
        for pt in prod.chart.sample_points:
            assembled = bm.reeb_plane_component(prod, pt)
            tau = rm.scalar(prod.metric, pt)
            closed = bm.reeb_plane_closed_form(1, 1, tau)
            assert abs(assembled + 0.1) < 1e-6
            assert abs(assembled - closed) < 1e-6


def test_criterion_07_pair_exchange(manifolds):
    with criterion(7, "the two Bochner tensors exchange as expected"):
        cp = manifolds["sphere_product:1,1"]
        for pt in cp.chart.sample_points[:2]:
            st = cpm.structure_at(cp, pt)
            bj, bt = (t.comps for t in bm.bochner_pair(cp, pt))
            for i in range(cp.dim):
                x = st.H @ np.eye(cp.dim)[i]
                norm = math.sqrt(x @ st.geo.g @ x)
                if norm < 1e-6:
                    continue
                x /= norm
                jx = st.J @ x
                left = float(np.einsum("ijkl,i,j,k,l", bt, x, jx, st.z1, st.z2))
                right = float(np.einsum("ijkl,i,j,k,l", bj, x, jx, st.z1, st.z2))
                assert abs(left + right) < 1e-7
            relabeled = dataclasses.replace(
                cp, name="relabeled", alpha1=cp.alpha2, alpha2=cp.alpha1,
                z1=cp.z2, z2=cp.z1, pair_type=(cp.n, cp.m))
            bj_sw, bt_sw = (t.comps for t in bm.bochner_pair(relabeled, pt))
            assert np.max(np.abs(bj_sw - bt)) < 1e-7
            assert np.max(np.abs(bt_sw - bj)) < 1e-7


def test_criterion_08_constant_conformal_invariance(manifolds):
    with criterion(8, "constant-factor conformal invariance"):
        report = bm.conformal_invariance_check(manifolds["hopf:2"],
                                               str(math.log(2.0)))
        assert report.passed
        assert all(c.tolerance == 1e-7 for c in report.checks)
        assert max(abs(c.value) for c in report.checks) < 1e-7


def test_criterion_09_numerical_infrastructure(manifolds):
    with criterion(9, "jets, symmetries, flat space and round spheres"):
        # jets against central finite differences on 100 random expressions
        rng = np.random.default_rng(1202)
        names = ["x", "y", "z"]
        checked = 0
        while checked < 100:
            e = random_expr(rng, names, 3)
            p = rng.uniform(0.3, 1.0, 3)
            jet = el.evaluate(e, {nm: Jet2.seed(i, float(p[i]), 3)
                                  for i, nm in enumerate(names)})
            if not isinstance(jet, Jet2):
                continue
            checked += 1

            def value(q):
                return el.evaluate(e, dict(zip(names, (float(v) for v in q))))

            fd_g = fd_gradient(value, p, 1e-4)
            fd_h = fd_hessian(value, p, 1e-4)
            assert np.all(np.abs(jet.grad - fd_g)
                          <= 1e-4 * np.maximum(1.0, np.abs(jet.grad)))
            assert np.all(np.abs(jet.hess - fd_h)
                          <= 1e-4 * np.maximum(1.0, np.abs(jet.hess)))

        # curvature symmetries and the cyclic identity on the whole catalog
        for cp in manifolds.values():
            for pt in cp.chart.sample_points:
                r4 = rm.riemann(cp.metric, pt).comps
                assert np.max(np.abs(r4 + r4.transpose(1, 0, 2, 3))) < 1e-9
                assert np.max(np.abs(r4 + r4.transpose(0, 1, 3, 2))) < 1e-9
                assert np.max(np.abs(r4 - r4.transpose(2, 3, 0, 1))) < 1e-9
                cyc = r4 + r4.transpose(1, 2, 0, 3) + r4.transpose(2, 0, 1, 3)
                assert np.max(np.abs(cyc)) < 1e-9

        # flat space: every derived tensor vanishes identically
        chart = rm.Chart(coords=("x", "y", "z", "w"))
        flat = rm.MetricField.diagonal(chart, ["1"] * 4)
        pt = (0.1, 0.2, 0.3, 0.4)
        assert np.max(np.abs(rm.christoffel(flat, pt).comps)) < 1e-12
        assert np.max(np.abs(rm.riemann(flat, pt).comps)) < 1e-12
        assert np.max(np.abs(rm.ricci(flat, pt).comps)) < 1e-12
        assert np.max(np.abs(rm.weyl(flat, pt).comps)) < 1e-12

        # round spheres: tau = d(d-1)
        for d in (2, 3, 4, 5):
            names_d = tuple(f"q{i}" for i in range(d))
            diag, acc = ["1"], ""
            for i in range(1, d):
                acc = acc + ("*" if acc else "") + f"sin(q{i-1})^2"
                diag.append(acc)
            sphere = rm.MetricField.diagonal(rm.Chart(coords=names_d), diag)
            point = tuple(0.6 + 0.07 * i for i in range(d))
            assert abs(rm.scalar(sphere, point) - d * (d - 1)) < 1e-8


def test_criterion_10_convention_pins_are_decidable(manifolds, capsys):
    with criterion(10, "exterior factor and notation reading are pinned"):
        cp1 = manifolds["hopf:1"]
        pt = cp1.chart.sample_points[0]
        square_residuals = {}
        for s in (1.0, 0.5):
            st = cpm.structure_at(dataclasses.replace(cp1, dalpha_factor=s), pt)
            square_residuals[s] = cpm._phi_square_residual(st)
        passing = [s for s, r in square_residuals.items() if r <= 1e-8]
        assert passing == [0.5]

        cp2 = manifolds["hopf:2"]
        sups = {r: float(np.max(np.abs(bm.bochner(
            bm.context(cp2, cp2.chart.sample_points[0], "J", r)))))
            for r in bm.READINGS}
        flattening = [r for r, s in sups.items() if s < 1e-6]
        assert flattening == ["combination"] == [bm.DEFAULT_READING]

        # every emitted report carries the pinned conventions
        for args in (["check", "hopf:1", "--points", "1", "--format", "json"],
                     ["verify", "heisenberg_r", "--suite", "theorem2",
                      "--format", "json"]):
            assert cli.main(args) == 0
            payload = json.loads(capsys.readouterr().out)
            assert payload["conventions"]["exterior_derivative_factor"] == 0.5
            assert payload["conventions"]["bochner_reading"] == "combination"
        lemma_report = cpm.lemma_suite(cp1)
        assert lemma_report.conventions["exterior_derivative_factor"] == 0.5
