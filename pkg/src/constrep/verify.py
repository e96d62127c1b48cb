"""Built-in verification suites exercising the library's exact identities.

Each suite runs a handful of named checks at desk scale (seconds, not
minutes) and returns :class:`CheckResult` rows. The ``all`` suite chains
every other suite. Output formatting is fixed so repeated runs with the
same seed produce byte-identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bundle, homotopy, optimize, representation
from .freegroup import averaging_element, generator, parse_element
from .linalg import operator_norm, random_unitary, unitarity_defect

SUITE_NAMES = ("deformation", "homotopy", "winding", "norms", "kesten", "all")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named verification check."""

    name: str
    passed: bool
    residual: float
    tol: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return "CHECK %s %s residual=%.6e tol=%g" % (
            self.name,
            status,
            self.residual,
            self.tol,
        )


def _check(name, residual, tol):
    residual = float(residual)
    return CheckResult(name=name, passed=residual <= tol, residual=residual, tol=tol)


# --------------------------------------------------------------------------
# deformation suite
# --------------------------------------------------------------------------


def _deformation_suite(seed):
    results = []
    dims = (2, 4, 8, 2, 4, 8, 2, 4, 8, 2, 4, 8)
    t_grid = np.linspace(0.0, 1.0, 21)

    worst_identity = 0.0
    worst_unitarity = 0.0
    worst_commutation = 0.0
    for index, dim in enumerate(dims):
        rep = representation.random_constrained(dim, 4.0, seed=seed + index)
        base_sum = rep.u + rep.u.conj().T + rep.v + rep.v.conj().T
        for t in t_grid:
            deformed = representation.deform(rep, float(t))
            new_sum = (
                deformed.u
                + deformed.u.conj().T
                + deformed.v
                + deformed.v.conj().T
            )
            worst_identity = max(
                worst_identity,
                float(np.max(np.abs(new_sum - (1.0 - float(t)) * base_sum))),
            )
            worst_unitarity = max(
                worst_unitarity,
                unitarity_defect(deformed.u),
                unitarity_defect(deformed.v),
            )
            worst_commutation = max(
                worst_commutation,
                float(np.max(np.abs(deformed.u @ rep.u - rep.u @ deformed.u))),
                float(np.max(np.abs(deformed.v @ rep.v - rep.v @ deformed.v))),
            )
    results.append(_check("deformation_sum_identity", worst_identity, 1e-8))
    results.append(_check("deformation_unitarity", worst_unitarity, 1e-9))
    results.append(_check("deformation_commutation", worst_commutation, 1e-9))

    worst_retraction = 0.0
    for mu_index, mu in enumerate((0.0, 1.0, 2.0, 3.0)):
        for start in range(5):
            rep = representation.random_constrained(
                4, 4.0, seed=seed + 100 + 10 * mu_index + start
            )
            if representation.constraint_value(rep) <= mu:
                continue
            pulled = representation.retract_to(rep, mu)
            worst_retraction = max(
                worst_retraction, abs(representation.constraint_value(pulled) - mu)
            )
    results.append(_check("retraction_constraint", worst_retraction, 1e-8))

    rep = representation.random_constrained(4, 2.0, seed=seed + 555)
    fixed = representation.retract_to(rep, 4.0)
    results.append(
        _check("retraction_fixes_feasible", 0.0 if fixed is rep else 1.0, 0.5)
    )

    worst_zero = 0.0
    for index in range(10):
        dim = 2 + (index % 7)
        u = random_unitary(dim, seed=seed + 700 + index)
        rep = representation.zero_constrained_from(u)
        total = rep.u + rep.u.conj().T + rep.v + rep.v.conj().T
        worst_zero = max(worst_zero, unitarity_defect(rep.v), operator_norm(total))
    results.append(_check("zero_constructor", worst_zero, 1e-9))
    return results


# --------------------------------------------------------------------------
# homotopy suite
# --------------------------------------------------------------------------


def _homotopy_suite(seed):
    results = []

    mat_u, mat_v = homotopy.wedge_generator_images(4096)
    basepoint = max(
        homotopy.wedge_condition_residual(mat_u),
        homotopy.wedge_condition_residual(mat_v),
    )
    results.append(_check("wedge_basepoint", basepoint, 1e-10))
    results.append(
        _check(
            "wedge_kills_generator_sum",
            homotopy.wedge_sum_residual(mat_u, mat_v),
            1e-12,
        )
    )

    rep = representation.random_constrained(2, 4.0, seed=seed + 11)
    start_u, start_v = homotopy.homotopy_images(rep, 0.0)
    comp_u, comp_v = homotopy.composed_images(rep)
    start_gap = max(
        float(np.max(np.abs(start_u - comp_u))),
        float(np.max(np.abs(start_v - comp_v))),
    )
    results.append(_check("rotation_start_matches_composition", start_gap, 1e-10))

    end_u, end_v = homotopy.homotopy_images(rep, math.pi / 2)
    split_u, split_v = homotopy.split_endpoint_images(rep)
    end_gap = max(
        float(np.max(np.abs(end_u - split_u))),
        float(np.max(np.abs(end_v - split_v))),
    )
    results.append(_check("rotation_end_matches_split", end_gap, 1e-10))

    worst_sine = 0.0
    worst_blocks = 0.0
    t_grid = np.linspace(0.0, math.pi / 2, 33)
    for index, (dim, mu) in enumerate(((2, 1.0), (2, 3.0), (4, 1.0), (4, 3.0))):
        sample = representation.random_constrained(dim, mu, seed=seed + 20 + index)
        for t in t_grid:
            worst_sine = max(worst_sine, homotopy.sine_law_residual(sample, float(t)))
            gap = np.max(
                np.abs(
                    homotopy.interpolant_generator_sum(sample, float(t))
                    - homotopy.interpolant_sum_blocks(sample, float(t))
                )
            )
            worst_blocks = max(worst_blocks, float(gap))
    results.append(_check("rotation_sine_scaling", worst_sine, 1e-8))
    results.append(_check("rotation_block_structure", worst_blocks, 1e-12))

    worst_path = 0.0
    for index, dim in enumerate((2, 4)):
        sample = representation.random_constrained(dim, 3.0, seed=seed + 40 + index)
        report = homotopy.character_homotopy_check(sample, grid_size=33)
        for path in report.paths:
            worst_path = max(
                worst_path,
                path.max_unitarity_defect,
                path.max_constraint_excess,
                path.start_residual,
                path.end_residual,
                path.scaling_residual,
            )
    results.append(_check("character_paths", worst_path, 1e-9))

    residuals = homotopy.scalar_character_residuals()
    results.append(_check("scalar_characters", max(residuals.values()), 1e-15))
    results.append(
        _check(
            "character_kills_averaging_element",
            abs(homotopy.character_at_i(averaging_element())),
            1e-15,
        )
    )
    return results


# --------------------------------------------------------------------------
# winding suite
# --------------------------------------------------------------------------


def _winding_suite(seed):
    del seed  # winding checks are deterministic by construction
    results = []
    n = 4096
    points = homotopy.circle_points(n)

    identity_loop = homotopy.CircleSamples(points)
    results.append(
        _check(
            "winding_identity_loop",
            abs(homotopy.winding_total(identity_loop) - 1.0),
            1e-3,
        )
    )

    folded_loop = homotopy.CircleSamples(homotopy.upper_fold(points))
    results.append(
        _check("winding_folded_loop", abs(homotopy.winding_total(folded_loop)), 1e-3)
    )

    squared_loop = homotopy.CircleSamples(points**2)
    results.append(
        _check(
            "winding_squared_loop",
            abs(homotopy.winding_total(squared_loop) - 2.0),
            1e-3,
        )
    )
    return results


# --------------------------------------------------------------------------
# norms suite
# --------------------------------------------------------------------------


def _norms_suite(seed):
    results = []
    small = optimize.OptimizerConfig(
        dims=(1, 2), restarts=4, max_steps=120, seed=seed
    )

    u = generator("u")
    worst_unit = 0.0
    for mu in (0.0, 2.0, 4.0):
        estimate = optimize.estimate_norm(u, mu, small)
        worst_unit = max(worst_unit, abs(estimate.value - 1.0))
    results.append(_check("unit_generator_norm", worst_unit, 1e-6))

    x = averaging_element()
    worst_oracle = 0.0
    for mu in (0.5, 1.5, 2.5, 3.5):
        worst_oracle = max(worst_oracle, abs(optimize.one_dim_oracle(x, mu) - mu))
    results.append(_check("oracle_on_averaging_element", worst_oracle, 2e-2))

    mixed = parse_element("2*u - v + u*v")
    worst_floor = 0.0
    for mu in (1.0, 3.0):
        estimate = optimize.estimate_norm(mixed, mu, small)
        floor = optimize.one_dim_oracle(mixed, mu)
        worst_floor = max(worst_floor, floor - estimate.value)
    results.append(_check("estimate_dominates_oracle", max(0.0, worst_floor), 1e-9))

    first = optimize.estimate_norm(mixed, 2.0, small)
    second = optimize.estimate_norm(mixed, 2.0, small)
    results.append(
        _check("estimate_determinism", abs(first.value - second.value), 0.0)
    )

    curve_config = optimize.OptimizerConfig(
        dims=(1, 2, 4), restarts=6, max_steps=300, seed=seed
    )
    grid = np.arange(0.0, 4.0 + 1e-12, 0.5)
    curve = optimize.norm_curve(x, grid, curve_config)
    values = np.asarray(curve.values)
    results.append(
        _check(
            "averaging_curve_line",
            float(np.max(np.abs(values - grid))),
            5e-2,
        )
    )
    diffs = np.diff(values)
    regress = float(-np.min(diffs)) if diffs.size else 0.0
    results.append(_check("averaging_curve_monotone", max(0.0, regress), 1e-12))
    return results


# --------------------------------------------------------------------------
# kesten suite
# --------------------------------------------------------------------------


def _kesten_suite(seed):
    del seed  # the balls are fixed graphs
    results = []
    norms = bundle.ball_norm_table(10)

    results.append(_check("ball_depth_one", abs(norms[0] - 2.0), 1e-9))

    diffs = np.diff(np.asarray(norms))
    regress = float(-np.min(diffs)) if diffs.size else 0.0
    results.append(_check("ball_norms_increasing", max(0.0, regress), 1e-12))

    overshoot = max(0.0, max(norms) - bundle.KESTEN_NORM)
    results.append(_check("ball_below_tree_norm", overshoot, 1e-12))

    gap = bundle.KESTEN_NORM - norms[-1]
    results.append(_check("ball_approaches_tree_norm", gap, 0.2))
    return results


_SUITES = {
    "deformation": _deformation_suite,
    "homotopy": _homotopy_suite,
    "winding": _winding_suite,
    "norms": _norms_suite,
    "kesten": _kesten_suite,
}


def run_suite(name, seed=0):
    """Run one suite (or ``all``) and return the list of check results."""
    if name == "all":
        results = []
        for suite in ("deformation", "homotopy", "winding", "norms", "kesten"):
            results.extend(_SUITES[suite](seed))
        return results
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    return _SUITES[name](seed)


def format_report(name, results):
    """Render check lines plus a one-line summary, deterministically."""
    lines = [result.line() for result in results]
    passed = sum(1 for result in results if result.passed)
    status = "PASS" if passed == len(results) else "FAIL"
    lines.append("SUITE %s %s (%d/%d checks passed)" % (name, status, passed, len(results)))
    return "\n".join(lines) + "\n"
