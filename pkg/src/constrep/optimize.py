"""Lower-bound estimation of constrained norms by multi-start ascent.

For a group-ring element a and level mu, the quantity of interest is the
supremum of ||pi(a)|| over mu-constrained unitary pairs pi. Every feasible
pair certifies a lower bound, so the estimator runs projected subgradient
ascent from many starts and reports the best witness it finds. Values are
certified lower bounds; nothing here claims the supremum is attained.

Ascent direction: with (sigma, xi, eta) the top singular triple of pi(a),
the derivative of sigma along U -> exp(i s H) U is <H, G_U> for the
Hermitian matrix G_U assembled from rank-one pieces of each word occurrence
of u (and likewise for v). Steps multiply on the left by
exp(i * step * G/||G||) and are followed by the exact retraction, so every
iterate stays feasible. Only improving proposals are accepted and the step
size decays geometrically.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .freegroup import GroupRingElement
from .representation import (
    Representation,
    check_mu,
    evaluate,
    one_dim_rep,
    retract_to,
)
from .linalg import haar_unitary, top_singular_triple, unitary_exponential

THREADS_ENV_VAR = "CONSTRAINED_REP_THREADS"

_STALL_WINDOW = 25
_GRADIENT_FLOOR = 1e-14


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the multi-start ascent; defaults suit dimensions up to 8."""

    dims: tuple = (1, 2, 4, 8)
    restarts: int = 16
    max_steps: int = 500
    initial_step: float = 0.1
    step_decay: float = 0.97
    stall_tolerance: float = 1e-7
    seed: int = 0
    oracle_grid: int = 720

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError("dims must be a non-empty tuple of positive integers")
        object.__setattr__(self, "dims", dims)
        if self.restarts < 1:
            raise ValueError("restarts must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")
        if not (0.0 < self.initial_step):
            raise ValueError("initial_step must be positive")
        if not (0.0 < self.step_decay <= 1.0):
            raise ValueError("step_decay must lie in (0, 1]")
        if self.stall_tolerance <= 0:
            raise ValueError("stall_tolerance must be positive")
        if self.oracle_grid < 8:
            raise ValueError("oracle_grid must be at least 8")


@dataclass(frozen=True)
class NormEstimate:
    """Best certified lower bound found for one element and level.

    ``value`` equals the computed operator norm of the witness image;
    ``restart_index`` is the index of the winning start in the deterministic
    candidate order (oracle argmax, pool entries, fresh starts).
    """

    value: float
    witness: Representation
    dim_used: int
    restart_index: int
    steps: int
    converged: bool


@dataclass(frozen=True)
class NormCurve:
    """Estimates along an ascending grid of constraint levels."""

    element: GroupRingElement
    grid: tuple
    estimates: tuple
    pool_shared: bool = True

    @property
    def values(self):
        return tuple(e.value for e in self.estimates)


def _threads():
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 0
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(
            f"{THREADS_ENV_VAR} must be an integer, got {raw!r}"
        ) from exc
    return max(0, n)


# --------------------------------------------------------------------------
# One-dimensional torus oracle
# --------------------------------------------------------------------------


def _element_exponents(element):
    if not isinstance(element, GroupRingElement):
        raise TypeError("expected a GroupRingElement")
    coeffs = []
    pu = []
    qv = []
    for word, coeff in element.sorted_terms():
        p, q = word.generator_sums()
        coeffs.append(coeff)
        pu.append(p)
        qv.append(q)
    return np.array(coeffs), np.array(pu), np.array(qv)


def _oracle_scan(element, mu, grid_n):
    mu = check_mu(mu)
    grid_n = int(grid_n)
    if grid_n < 8:
        raise ValueError("oracle grid must have at least 8 points")
    coeffs, pu, qv = _element_exponents(element)
    if coeffs.size == 0:
        return 0.0, 0.0, 0.0
    theta = 2.0 * np.pi * np.arange(grid_n) / grid_n

    # The curve phi = pi - theta is feasible at every constraint level (the
    # two cosines cancel exactly), so it is always scanned; near mu = 0 it is
    # the only reliable source of feasible points, since the square grid may
    # contain almost no pairs whose cosines cancel to the last bit.
    phi = np.pi - theta
    curve_total = np.zeros(grid_n, dtype=complex)
    for c, p, q in zip(coeffs, pu, qv):
        curve_total += c * np.exp(1j * (p * theta + q * phi))
    curve_mag = np.abs(curve_total)
    i = int(np.argmax(curve_mag))
    best = (float(curve_mag[i]), float(theta[i]), float(phi[i]))

    cos_t = 2.0 * np.cos(theta)
    feasible = np.abs(cos_t[:, None] + cos_t[None, :]) <= mu
    if feasible.any():
        total = np.zeros((grid_n, grid_n), dtype=complex)
        for c, p, q in zip(coeffs, pu, qv):
            total += c * np.exp(1j * p * theta)[:, None] * np.exp(1j * q * theta)[None, :]
        magnitude = np.abs(total)
        magnitude[~feasible] = -1.0
        flat = int(np.argmax(magnitude))
        i, j = divmod(flat, grid_n)
        if float(magnitude[i, j]) > best[0]:
            best = (float(magnitude[i, j]), float(theta[i]), float(theta[j]))
    return best


def one_dim_oracle(element, mu, grid_n=720):
    """Exhaustive max of |pi(a)| over 1-dimensional feasible grid pairs."""
    value, _, _ = _oracle_scan(element, mu, grid_n)
    return value


def one_dim_oracle_argmax(element, mu, grid_n=720):
    """Like :func:`one_dim_oracle` but also returns the maximizing angles."""
    return _oracle_scan(element, mu, grid_n)


# --------------------------------------------------------------------------
# Subgradient ascent
# --------------------------------------------------------------------------


def _objective(element, rep):
    sigma, left, right, _ = top_singular_triple(evaluate(rep, element))
    return sigma, left, right


def _subgradient(element, rep, left, right):
    """Hermitian ascent directions (G_u, G_v) for the top singular value."""
    d = rep.dim
    images = {
        ("u", 1): rep.u,
        ("u", -1): rep.u.conj().T,
        ("v", 1): rep.v,
        ("v", -1): rep.v.conj().T,
    }
    c_u = np.zeros((d, d), dtype=complex)
    c_v = np.zeros((d, d), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for word, coeff in element.terms.items():
        letters = word.letters
        if not letters:
            continue
        mats = [images[letter] for letter in letters]
        k = len(mats)
        prefixes = [eye]
        for m in mats[:-1]:
            prefixes.append(prefixes[-1] @ m)
        suffixes = [eye] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffixes[i] = mats[i] @ suffixes[i + 1]
        for i, (gen, exp) in enumerate(letters):
            rv = suffixes[i + 1] @ right
            lw = left.conj() @ prefixes[i]
            z = np.outer(rv, lw)
            target = c_u if gen == "u" else c_v
            base = images[(gen, 1)]
            if exp == 1:
                target += coeff * (base @ z)
            else:
                target -= coeff * (z @ base.conj().T)
    g_u = 0.5j * (c_u - c_u.conj().T)
    g_v = 0.5j * (c_v - c_v.conj().T)
    return g_u, g_v


def _ascend(element, mu, start, config):
    """Projected subgradient ascent from one feasible start.

    Returns (value, witness, steps, converged). The best value is monotone;
    convergence means the trailing 25-iteration window improved it by less
    than the stall tolerance (or the gradient vanished).
    """
    current = start
    value, left, right = _objective(element, current)
    history = [value]
    step = config.initial_step
    converged = False
    steps = 0
    for k in range(1, config.max_steps + 1):
        g_u, g_v = _subgradient(element, current, left, right)
        scale = float(np.sqrt(np.linalg.norm(g_u) ** 2 + np.linalg.norm(g_v) ** 2))
        if scale < _GRADIENT_FLOOR:
            steps = k
            converged = True
            break
        proposal = Representation(
            unitary_exponential(g_u / scale, step) @ current.u,
            unitary_exponential(g_v / scale, step) @ current.v,
        )
        proposal = retract_to(proposal, mu)
        new_value, new_left, new_right = _objective(element, proposal)
        if new_value > value:
            current, value = proposal, new_value
            left, right = new_left, new_right
        steps = k
        step *= config.step_decay
        history.append(value)
        if len(history) > _STALL_WINDOW:
            if history[-1] - history[-1 - _STALL_WINDOW] < config.stall_tolerance:
                converged = True
                break
    else:
        if len(history) > _STALL_WINDOW:
            converged = (
                history[-1] - history[-1 - _STALL_WINDOW] < config.stall_tolerance
            )
    return value, current, steps, converged


def _candidate_starts(element, mu, config, pool):
    """Deterministic ordered list of ascent starts.

    Order: torus-oracle argmax (when dimension 1 is in play), retracted pool
    witnesses, then fresh Haar starts dim-major / restart-minor.
    """
    starts = []
    if 1 in config.dims:
        _, theta, phi = one_dim_oracle_argmax(element, mu, config.oracle_grid)
        starts.append(one_dim_rep(theta, phi))
    for witness in pool:
        starts.append(retract_to(witness, mu))
    for dim in config.dims:
        for restart in range(config.restarts):
            seed = np.random.SeedSequence((int(config.seed), dim, restart))
            rng = np.random.default_rng(seed)
            u = haar_unitary(dim, rng)
            v = haar_unitary(dim, rng)
            starts.append(retract_to(Representation(u, v), mu))
    return starts


def estimate_norm(element, mu, config=None, pool=()):
    """Best lower bound for ||pi(element)|| over mu-constrained pairs.

    Runs ascent from every candidate start and keeps the best final value;
    exact ties go to the earliest candidate, so results are reproducible and
    independent of the CONSTRAINED_REP_THREADS cap.
    """
    if config is None:
        config = OptimizerConfig()
    mu = check_mu(mu)
    if not isinstance(element, GroupRingElement):
        raise TypeError("expected a GroupRingElement")
    if element.is_zero:
        raise ValueError("cannot estimate the norm of the zero element")
    starts = _candidate_starts(element, mu, config, pool)

    def task(start):
        return _ascend(element, mu, start, config)

    n_threads = _threads()
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool_exec:
            results = list(pool_exec.map(task, starts))
    else:
        results = [task(start) for start in starts]

    best_index = 0
    for i in range(1, len(results)):
        if results[i][0] > results[best_index][0]:
            best_index = i
    value, witness, steps, converged = results[best_index]
    return NormEstimate(
        value=value,
        witness=witness,
        dim_used=witness.dim,
        restart_index=best_index,
        steps=steps,
        converged=converged,
    )


def norm_curve(element, grid, config=None):
    """Estimates along an ascending grid of levels with witness pooling.

    Every grid point's best witness is injected as a candidate at all later
    points; since feasible witnesses are reused unchanged, the reported
    values are exactly monotone along the grid.
    """
    if config is None:
        config = OptimizerConfig()
    grid = tuple(check_mu(mu) for mu in grid)
    if not grid:
        raise ValueError("grid must be non-empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be ascending")
    pool = []
    estimates = []
    for mu in grid:
        est = estimate_norm(element, mu, config, pool=tuple(pool))
        estimates.append(est)
        pool.append(est.witness)
    return NormCurve(element=element, grid=grid, estimates=tuple(estimates))
