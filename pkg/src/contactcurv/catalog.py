"""Built-in model manifolds with closed-form charts.

Every entry is constructed in coordinates where the contact forms and Reeb
fields are closed-form, sampled away from chart degeneracies, and ships
with the table of values the verification suites assert.

* ``hopf(m)``: the round sphere S^{2m+1}(1) in nested Hopf coordinates
  crossed with a line, type (m, 0).  Bochner-flat and conformally flat
  model space.
* ``sphere_product(1, 1)``: the Riemannian product of two unit 3-spheres,
  type (1, 1).  Valid structure, not Bochner-flat.
* ``heisenberg_r(1)``: the standard Sasakian structure on the Heisenberg
  group crossed with a line, type (1, 0).  Negative control for both
  flatness properties.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import exprlang as el
from .contactpair import ContactPairManifold
from .riemann import Chart, MetricField, OneForm, VectorField

# scale constants of the Heisenberg entry; the structure equations force
# b = s * a for the exterior-derivative factor s = 1/2
HEISENBERG_A = 1.0
HEISENBERG_B = 0.5


def _sample_points(seed: int, lows, highs, count: int = 5):
    lows = np.asarray(lows, dtype=float)
    highs = np.asarray(highs, dtype=float)
    rng = np.random.default_rng(seed)
    pts = lows + rng.random((count, len(lows))) * (highs - lows)
    return tuple(tuple(float(v) for v in row) for row in pts)


def hopf(m: int) -> ContactPairManifold:
    """S^{2m+1}(1) x R with its canonical structure of type (m, 0)."""
    if m == 1:
        chart = Chart(
            coords=("eta", "xi1", "xi2", "t"),
            sample_points=_sample_points(20240301, [0.3] * 4, [1.2] * 4),
        )
        metric = MetricField.diagonal(chart, ["1", "cos(eta)^2", "sin(eta)^2", "1"])
        alpha1 = OneForm.of(chart, ["0", "cos(eta)^2", "sin(eta)^2", "0"])
        z1 = VectorField.of(chart, ["0", "1", "1", "0"])
        alpha2 = OneForm.of(chart, ["0", "0", "0", "1"])
        z2 = VectorField.of(chart, ["0", "0", "0", "1"])
        return ContactPairManifold("hopf:1", chart, metric, alpha1, alpha2,
                                   z1, z2, (1, 0))
    if m == 2:
        chart = Chart(
            coords=("eta1", "eta2", "xi0", "xi1", "xi2", "t"),
            sample_points=_sample_points(20240302, [0.3] * 6, [1.2] * 6),
        )
        # S^5 radii in nested Hopf coordinates; the sphere metric
        # sum_k (dr_k^2 + r_k^2 dxi_k^2) is pulled back symbolically
        radii = [el.parse("cos(eta1)"),
                 el.parse("sin(eta1)*cos(eta2)"),
                 el.parse("sin(eta1)*sin(eta2)")]
        angles = ("eta1", "eta2")
        entries: dict[tuple[int, int], el.Expr] = {}
        for i in range(2):
            for j in range(i, 2):
                acc: el.Expr = el.ZERO
                for r in radii:
                    acc = el.add(acc, el.mul(el.derive(r, angles[i]),
                                             el.derive(r, angles[j])))
                entries[(i, j)] = acc
        for k, r in enumerate(radii):
            entries[(2 + k, 2 + k)] = el.pow_(r, el.Const(2.0))
        entries[(5, 5)] = el.ONE
        metric = MetricField.from_entries(chart, entries)
        alpha1 = OneForm(chart, (el.ZERO, el.ZERO,
                                 el.pow_(radii[0], el.Const(2.0)),
                                 el.pow_(radii[1], el.Const(2.0)),
                                 el.pow_(radii[2], el.Const(2.0)),
                                 el.ZERO))
        z1 = VectorField.of(chart, ["0", "0", "1", "1", "1", "0"])
        alpha2 = OneForm.of(chart, ["0", "0", "0", "0", "0", "1"])
        z2 = VectorField.of(chart, ["0", "0", "0", "0", "0", "1"])
        return ContactPairManifold("hopf:2", chart, metric, alpha1, alpha2,
                                   z1, z2, (2, 0))
    raise ValueError(f"hopf is available for m in {{1, 2}}, not m={m}")


def sphere_product(m: int = 1, n: int = 1) -> ContactPairManifold:
    """Riemannian product of two unit 3-spheres, type (1, 1)."""
    if (m, n) != (1, 1):
        raise ValueError("sphere_product is available for m = n = 1")
    chart = Chart(
        coords=("eta", "xi1", "xi2", "mu", "nu1", "nu2"),
        sample_points=_sample_points(20240303, [0.3] * 6, [1.2] * 6),
    )
    metric = MetricField.diagonal(
        chart, ["1", "cos(eta)^2", "sin(eta)^2", "1", "cos(mu)^2", "sin(mu)^2"])
    alpha1 = OneForm.of(chart, ["0", "cos(eta)^2", "sin(eta)^2", "0", "0", "0"])
    z1 = VectorField.of(chart, ["0", "1", "1", "0", "0", "0"])
    alpha2 = OneForm.of(chart, ["0", "0", "0", "0", "cos(mu)^2", "sin(mu)^2"])
    z2 = VectorField.of(chart, ["0", "0", "0", "0", "1", "1"])
    return ContactPairManifold("sphere_product:1,1", chart, metric,
                               alpha1, alpha2, z1, z2, (1, 1))


def heisenberg_r(n: int = 1) -> ContactPairManifold:
    """Heisenberg group with its Sasakian structure, crossed with a line.

    alpha_1 = a (dz - y dx), g = alpha_1^2 + b (dx^2 + dy^2) + dt^2.  The
    scales satisfy b = s a, which is what the phi-square identity demands
    under the pinned exterior-derivative factor.
    """
    if n != 1:
        raise ValueError("heisenberg_r is available for n = 1")
    chart = Chart(
        coords=("x", "y", "z", "t"),
        params=(("a", HEISENBERG_A), ("b", HEISENBERG_B)),
        sample_points=_sample_points(20240304, [-0.8] * 4, [0.8] * 4),
    )
    metric = MetricField.from_entries(chart, {
        (0, 0): "a^2*y^2 + b",
        (0, 2): "-(a^2*y)",
        (1, 1): "b",
        (2, 2): "a^2",
        (3, 3): "1",
    })
    alpha1 = OneForm.of(chart, ["-(a*y)", "0", "a", "0"])
    z1 = VectorField.of(chart, ["0", "0", "1/a", "0"])
    alpha2 = OneForm.of(chart, ["0", "0", "0", "1"])
    z2 = VectorField.of(chart, ["0", "0", "0", "1"])
    return ContactPairManifold("heisenberg_r", chart, metric,
                               alpha1, alpha2, z1, z2, (1, 0))


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    description: str
    factory: Callable[[], ContactPairManifold]
    expected: tuple[tuple[str, object], ...]

    def build(self) -> ContactPairManifold:
        return self.factory()

    def expect(self, name: str):
        return dict(self.expected)[name]


ENTRIES: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "hopf:1",
        "unit 3-sphere x line, type (1,0); Bochner-flat and conformally flat",
        lambda: hopf(1),
        (
            ("tau", 6.0),
            ("reeb_ricci", (2.0, 0.0)),
            ("scalar_defect", 4.0),
            ("horizontal_ricci", 2.0),
            ("horizontal_star_ricci", 1.0),
            ("phi_sectional", 1.0),
            ("bochner_flat", True),
            ("weyl_flat", True),
            ("bochner_reeb_plane", 0.0),
        ),
    ),
    CatalogEntry(
        "hopf:2",
        "unit 5-sphere x line, type (2,0); Bochner-flat and conformally flat",
        lambda: hopf(2),
        (
            ("tau", 20.0),
            ("reeb_ricci", (4.0, 0.0)),
            ("scalar_defect", 16.0),
            ("horizontal_ricci", 4.0),
            ("horizontal_star_ricci", 1.0),
            ("phi_sectional", 1.0),
            ("bochner_flat", True),
            ("weyl_flat", True),
            ("bochner_reeb_plane", 0.0),
        ),
    ),
    CatalogEntry(
        "sphere_product:1,1",
        "product of two unit 3-spheres, type (1,1); not Bochner-flat",
        lambda: sphere_product(1, 1),
        (
            ("tau", 12.0),
            ("reeb_ricci", (2.0, 2.0)),
            ("scalar_defect", 8.0),
            ("bochner_flat", False),
            ("weyl_flat", False),
            ("bochner_reeb_plane", -0.1),
        ),
    ),
    CatalogEntry(
        "heisenberg_r",
        "Heisenberg group x line, type (1,0); negative control for both "
        "flatness properties",
        lambda: heisenberg_r(1),
        (
            ("reeb_ricci", (2.0, 0.0)),
            ("scalar_defect", 4.0),
            ("bochner_flat", False),
            ("weyl_flat", False),
            ("min_bochner_sup", 1e-2),
            ("min_weyl_sup", 1e-2),
        ),
    ),
)


def entry(key: str) -> CatalogEntry:
    for e in ENTRIES:
        if e.key == key:
            return e
    raise KeyError(f"no catalog entry '{key}'")


def resolve(spec: str) -> ContactPairManifold:
    """Build a catalog manifold from an address like ``hopf:2`` or
    ``sphere_product:1,1``; a bare name uses its default parameters."""
    name, _, raw = spec.partition(":")
    params = [int(p) for p in raw.split(",") if p] if raw else []
    builders: dict[str, Callable] = {
        "hopf": hopf,
        "sphere_product": sphere_product,
        "heisenberg_r": heisenberg_r,
    }
    if name not in builders:
        raise KeyError(f"unknown catalog manifold '{name}'")
    return builders[name](*params)


def entry_for(cp_name: str) -> Optional[CatalogEntry]:
    try:
        return entry(cp_name)
    except KeyError:
        return None
