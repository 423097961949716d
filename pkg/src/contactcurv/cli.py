"""Command-line front end.

Loads catalog or user manifolds, runs the validators and tensor
computations, and emits human-readable or machine-readable reports.

Manifold-definition files are JSON documents with the fields ``dim``,
``coords``, ``params`` (optional), ``metric`` (upper-triangle entries keyed
"i,j"), ``alpha1``, ``alpha2``, ``Z1``, ``Z2``, ``type`` = [m, n],
``sample_points`` and optional ``singular_loci`` (documentation only).
Expression strings use the grammar of :mod:`contactcurv.exprlang`.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import bochner as bm
from . import catalog
from . import contactpair as cpm
from . import exprlang as el
from . import riemann as rm
from .contactpair import ContactPairManifold, InvalidStructureError
from .report import Report


class UsageError(Exception):
    pass


def conventions(cp: Optional[ContactPairManifold] = None) -> dict:
    out = cp.conventions() if cp is not None else dict(cpm.CONVENTIONS)
    out.update(bm.convention_ledger())
    return out


# --- manifold files -----------------------------------------------------------

def manifold_to_dict(cp: ContactPairManifold) -> dict:
    d = cp.dim
    metric = {}
    for i in range(d):
        for j in range(i, d):
            entry = cp.metric.comps[i][j]
            if entry != el.ZERO:
                metric[f"{i},{j}"] = el.to_source(entry)
    return {
        "dim": d,
        "coords": list(cp.chart.coords),
        "params": {k: v for k, v in cp.chart.params},
        "metric": metric,
        "alpha1": [el.to_source(e) for e in cp.alpha1.comps],
        "alpha2": [el.to_source(e) for e in cp.alpha2.comps],
        "Z1": [el.to_source(e) for e in cp.z1.comps],
        "Z2": [el.to_source(e) for e in cp.z2.comps],
        "type": list(cp.pair_type),
        "sample_points": [list(p) for p in cp.chart.sample_points],
    }


def manifold_from_dict(data: dict, name: str) -> ContactPairManifold:
    try:
        coords = tuple(str(c) for c in data["coords"])
        dim = int(data["dim"])
        if len(coords) != dim:
            raise UsageError(f"dim={dim} but {len(coords)} coordinates declared")
        params = tuple(sorted((str(k), float(v))
                              for k, v in data.get("params", {}).items()))
        points = tuple(tuple(float(v) for v in p) for p in data["sample_points"])
        if any(len(p) != dim for p in points):
            raise UsageError("sample points must have one value per coordinate")
        chart = rm.Chart(coords=coords, params=params, sample_points=points)
        entries = {}
        for key, src in data["metric"].items():
            i, j = (int(part) for part in key.split(","))
            entries[(i, j)] = src
        metric = rm.MetricField.from_entries(chart, entries)
        alpha1 = rm.OneForm.of(chart, data["alpha1"])
        alpha2 = rm.OneForm.of(chart, data["alpha2"])
        z1 = rm.VectorField.of(chart, data["Z1"])
        z2 = rm.VectorField.of(chart, data["Z2"])
        m, n = (int(v) for v in data["type"])
        if 2 * m + 2 * n + 2 != dim:
            raise UsageError(f"type {m, n} is inconsistent with dim={dim}")
        return ContactPairManifold(name, chart, metric, alpha1, alpha2,
                                   z1, z2, (m, n))
    except UsageError:
        raise
    except (KeyError, ValueError, TypeError, el.ExprError) as exc:
        raise UsageError(f"bad manifold file: {exc}") from exc


def load_manifold(path: str) -> ContactPairManifold:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    name = os.path.splitext(os.path.basename(path))[0]
    return manifold_from_dict(data, name)


def save_manifold(cp: ContactPairManifold, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(manifold_to_dict(cp), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def resolve_manifold(spec: str) -> ContactPairManifold:
    if os.path.sep in spec or spec.endswith(".json") or os.path.exists(spec):
        return load_manifold(spec)
    try:
        return catalog.resolve(spec)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


# --- shared helpers --------------------------------------------------------------

def _limit_points(cp: ContactPairManifold, count: Optional[int]):
    pts = cp.chart.sample_points
    return pts if count is None else pts[:count]


def _loosen(default: float, requested: Optional[float]) -> float:
    # a requested tolerance may only loosen the pinned default
    return default if requested is None else max(default, requested)


def _emit(report: Report, fmt: str) -> None:
    print(report.to_json() if fmt == "json" else report.to_text())


def _first_failure_exit(report: Report) -> int:
    return 0 if report.passed else 1


# --- commands --------------------------------------------------------------------

def cmd_list(args) -> int:
    rows = []
    for entry in catalog.ENTRIES:
        if args.filter and args.filter not in entry.key:
            continue
        expected = dict(entry.expected)
        rows.append({
            "key": entry.key,
            "description": entry.description,
            "expected": {k: v for k, v in expected.items()
                         if isinstance(v, (int, float, bool))},
        })
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            print(f"{row['key']:20s} {row['description']}")
            pairs = ", ".join(f"{k}={v}" for k, v in row["expected"].items())
            print(f"{'':20s} expected: {pairs}")
    return 0


def cmd_check(args) -> int:
    cp = resolve_manifold(args.manifold)
    points = _limit_points(cp, args.points)
    structure_tol = _loosen(cpm.STRUCTURE_TOL, args.tolerance)
    lemma_tol = _loosen(cpm.LEMMA_TOL, args.tolerance)
    report = Report(cp.name, conventions(cp))
    report.conventions["tolerance_structure"] = structure_tol
    report.conventions["tolerance_identities"] = lemma_tol
    gate = cpm.validate_structure(cp, structure_tol, points=points)
    report.extend(gate)
    if gate.passed:
        report.extend(cpm.lemma_suite(cp, lemma_tol, points=points))
    _emit(report, args.format)
    return _first_failure_exit(report)


_TENSOR_CHOICES = ("riemann", "ricci", "star-ricci", "weyl", "bochner-j", "bochner-t")


def _tensor_at(cp: ContactPairManifold, what: str, point) -> tuple[np.ndarray, dict]:
    st = cpm.structure_at(cp, point)
    scalars = {"tau": st.geo.tau, "tau_star": st.tau_star}
    if what == "riemann":
        return st.geo.riem4, scalars
    if what == "ricci":
        return st.geo.ricci, scalars
    if what == "star-ricci":
        return st.star_ricci, scalars
    if what == "weyl":
        return rm.weyl(cp.metric, point).comps, scalars
    which = "J" if what == "bochner-j" else "T"
    return bm.bochner(bm.context(cp, point, which)), scalars


def _parse_point(cp: ContactPairManifold, raw: str):
    if raw == "default":
        if not cp.chart.sample_points:
            raise UsageError(f"{cp.name} declares no sample points")
        return cp.chart.sample_points[0]
    try:
        values = tuple(float(v) for v in raw.split(","))
    except ValueError as exc:
        raise UsageError(f"bad point '{raw}': {exc}") from exc
    if len(values) != cp.dim:
        raise UsageError(f"point has {len(values)} values, chart has dim {cp.dim}")
    return values


def cmd_tensor(args) -> int:
    cp = resolve_manifold(args.manifold)
    point = _parse_point(cp, args.at)
    try:
        comps, scalars = _tensor_at(cp, args.what, point)
    except (rm.MetricError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    names = cp.chart.coords
    entries = []
    for idx in np.ndindex(*comps.shape):
        value = float(comps[idx])
        if abs(value) > 1e-12:
            label = ",".join(names[i] for i in idx)
            entries.append((label, value))
    summary = {
        "manifold": cp.name,
        "tensor": args.what,
        "point": list(point),
        "tau": scalars["tau"],
        "tau_star": scalars["tau_star"],
        "max_abs_component": float(np.max(np.abs(comps))),
        "nonzero_components": {label: value for label, value in entries},
        "conventions": conventions(cp),
    }
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        print(f"{args.what} on {cp.name} at ({', '.join(f'{v:.6g}' for v in point)})")
        print(f"  tau = {scalars['tau']:.12g}   tau* = {scalars['tau_star']:.12g}"
              f"   max|component| = {summary['max_abs_component']:.6e}")
        if entries:
            for label, value in entries:
                print(f"  [{label}] = {value: .12e}")
        else:
            print("  all components below 1e-12")
    return 0


def _verify_definitions(cp, report, tol, points) -> None:
    report.extend(cpm.validate_structure(cp, _loosen(cpm.STRUCTURE_TOL, tol),
                                         points=points))


def _verify_lemmas(cp, report, tol, points) -> None:
    report.extend(cpm.lemma_suite(cp, _loosen(cpm.LEMMA_TOL, tol), points=points))


def _verify_theorem1(cp, report, tol, points) -> None:
    """Bochner-flatness consequences on the model space; measured controls
    on the expected-nonflat entries."""
    entry = catalog.entry_for(cp.name)
    if entry is None:
        raise UsageError(
            f"theorem suites need the expected-results table of a catalog "
            f"entry; '{cp.name}' is not in the catalog")
    expected = dict(entry.expected)
    flat = expected["bochner_flat"]
    m, n = cp.pair_type
    for pt in points:
        st = cpm.structure_at(cp, pt)
        b = bm.bochner(bm.context(cp, pt))
        sup = float(np.max(np.abs(b)))
        plane = float(np.einsum("ijkl,i,j,k,l", b, st.z1, st.z2, st.z2, st.z1))
        if flat:
            report.add("bochner_flatness", "sup |B_J| vanishes on the model space",
                       sup, _loosen(1e-6, tol), pt)
            report.add("bochner_reeb_plane", "B_J(Z1,Z2,Z2,Z1) = 0",
                       plane, _loosen(1e-7, tol), pt)
            report.add("scalar_curvature_value",
                       "tau = 2m(2m+1) + 2n(2n+1) + 2mn",
                       st.geo.tau - (2 * m * (2 * m + 1) + 2 * n * (2 * n + 1)
                                     + 2 * m * n),
                       _loosen(1e-7, tol), pt)
            worst_r, worst_s, worst_p = 0.0, 0.0, 0.0
            for x in st.horizontal_leaf_vectors(2):
                worst_r = max(worst_r, abs(float(x @ st.geo.ricci @ x) - 2.0 * m))
                worst_s = max(worst_s, abs(float(x @ st.star_ricci @ x) - 1.0))
                px = st.phi @ x
                sect = float(np.einsum("ijkl,i,j,k,l", st.geo.riem4, x, px, px, x))
                worst_p = max(worst_p, abs(sect - 1.0))
            report.add("horizontal_ricci", "rho(X,X) = 2m for unit horizontal "
                       "leaf-tangent X", worst_r, _loosen(1e-7, tol), pt)
            report.add("horizontal_star_ricci", "rho*(X,X) = 1", worst_s,
                       _loosen(1e-7, tol), pt)
            report.add("phi_sectional_curvature", "R(X,phiX,phiX,X) = 1",
                       worst_p, _loosen(1e-7, tol), pt)
        else:
            report.add("bochner_not_flat", "sup |B_J| stays above the control "
                       "bound on a non-model structure", sup, 1e-2, pt,
                       passed=sup > 1e-2)
            target = expected.get("bochner_reeb_plane")
            if target is not None:
                closed = bm.reeb_plane_closed_form(m, n, st.geo.tau)
                report.add("bochner_reeb_plane_value",
                           "B_J(Z1,Z2,Z2,Z1) matches the closed-form value "
                           "computed from the measured scalar curvature",
                           plane - closed, _loosen(1e-6, tol), pt)
                report.add("bochner_reeb_plane_expected",
                           f"B_J(Z1,Z2,Z2,Z1) = {target}",
                           plane - target, _loosen(1e-6, tol), pt)


def _verify_theorem2(cp, report, tol, points) -> None:
    """Conformal flatness on the model space, plus constant-factor
    conformal invariance of the Bochner tensor."""
    entry = catalog.entry_for(cp.name)
    if entry is None:
        raise UsageError(
            f"theorem suites need the expected-results table of a catalog "
            f"entry; '{cp.name}' is not in the catalog")
    expected = dict(entry.expected)
    flat = expected["weyl_flat"]
    for pt in points:
        sup = float(np.max(np.abs(rm.weyl(cp.metric, pt).comps)))
        if flat:
            report.add("weyl_flatness", "sup |W| vanishes on the model space",
                       sup, _loosen(1e-8, tol), pt)
        else:
            report.add("weyl_not_flat", "sup |W| stays above the control bound",
                       sup, 1e-2, pt, passed=sup > 1e-2)
    if flat:
        conf = bm.conformal_invariance_check(cp, str(math.log(2.0)))
        report.extend(conf)


_SUITES = ("definitions", "lemmas", "theorem1", "theorem2", "all")


def cmd_verify(args) -> int:
    cp = resolve_manifold(args.manifold)
    points = _limit_points(cp, args.points)
    report = Report(cp.name, conventions(cp))
    if args.tolerance is not None:
        report.conventions["tolerance_requested"] = args.tolerance
    steps = {
        "definitions": (_verify_definitions,),
        "lemmas": (_verify_lemmas,),
        "theorem1": (_verify_theorem1,),
        "theorem2": (_verify_theorem2,),
        "all": (_verify_definitions, _verify_lemmas, _verify_theorem1,
                _verify_theorem2),
    }[args.suite]
    try:
        for step in steps:
            step(cp, report, args.tolerance, points)
    except InvalidStructureError as exc:
        for clause in exc.clauses or ["structure"]:
            report.add(clause, str(exc), float("inf"), 0.0, passed=False)
    _emit(report, args.format)
    return _first_failure_exit(report)


def cmd_export(args) -> int:
    try:
        cp = catalog.resolve(args.catalog_id)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    save_manifold(cp, args.path)
    print(f"wrote {cp.name} to {args.path}")
    return 0


# --- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactcurv",
        description="curvature engine and verification suite for metric "
                    "contact pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list catalog manifolds")
    p_list.add_argument("--format", choices=("text", "json"), default="text")
    p_list.add_argument("--filter", default=None, help="substring filter on keys")
    p_list.set_defaults(func=cmd_list)

    def common(p):
        p.add_argument("--tolerance", type=float, default=None,
                       help="loosen (never tighten) the default tolerances")
        p.add_argument("--points", type=int, default=None,
                       help="use only the first N sample points")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_check = sub.add_parser("check", help="run definition and identity "
                                           "validators on a manifold")
    p_check.add_argument("manifold", help="catalog id like hopf:1 or a file path")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_tensor = sub.add_parser("tensor", help="print a curvature tensor at a point")
    p_tensor.add_argument("manifold")
    p_tensor.add_argument("--what", choices=_TENSOR_CHOICES, required=True)
    p_tensor.add_argument("--at", default="default",
                          help="'default' or comma-separated coordinates")
    p_tensor.add_argument("--format", choices=("text", "json"), default="text")
    p_tensor.set_defaults(func=cmd_tensor)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("manifold")
    p_verify.add_argument("--suite", choices=_SUITES, default="all")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_export = sub.add_parser("export", help="write a catalog entry as a "
                                             "manifold-definition file")
    p_export.add_argument("catalog_id")
    p_export.add_argument("path")
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidStructureError as exc:
        clauses = ", ".join(exc.clauses) if exc.clauses else "structure"
        print(f"invalid structure ({clauses}): {exc}", file=sys.stderr)
        return 1
    except (el.ExprError, rm.MetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
