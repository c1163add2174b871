"""Numerical search for SIC fiducial states.

The phase-space participation sum M = (1/4d) sum W^4 is bounded below by
the Welch value 2/(d+1), with equality exactly when the chord magnitudes
are flat at 1/(d+1) on the nonzero fundamental cell.  Minimizing M over
the unit sphere by projected gradient descent therefore searches for SIC
fiducials, and the flatness residual certifies a candidate independently
of the optimizer's own cost.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized
from .lattice import TorusDim
from .phase_repr import PureState, chord_repr
from . import weylops

_STACK_CACHE: dict[int, np.ndarray] = {}


def _stack(dim: TorusDim) -> np.ndarray:
    """All reflections flattened to shape ((2d)^2, d, d), cached per d."""
    if dim.d not in _STACK_CACHE:
        n = dim.two_d
        _STACK_CACHE[dim.d] = weylops.reflection_stack(dim).reshape(n * n, dim.d, dim.d)
    return _STACK_CACHE[dim.d]


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search parameters."""

    d: int
    restarts: int = 200
    max_iters: int = 2000
    seed: int = 0
    target_tol: float = 1e-8
    armijo: float = 1e-4
    step_init: float = 1.0
    step_min: float = 1e-14

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.target_tol <= 0:
            raise ValueError("target_tol must be positive")


@dataclass(frozen=True)
class SearchResult:
    best_state: PureState
    best_m: float
    gap: float
    iterations: int
    flat_chord_residual: float
    restarts_used: int
    best_restart: int
    config: SearchConfig


def welch_bound(d: int) -> float:
    return 2.0 / (d + 1)


def _wigner_values(stack: np.ndarray, psi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(W values over the full label grid, R_x psi gathered for reuse)."""
    applied = stack @ psi
    w = (applied @ psi.conj()).real
    return w, applied


def cost_and_gradient(dim: TorusDim, psi) -> tuple[float, np.ndarray]:
    """M and its unconstrained Wirtinger gradient (4/4d) sum W^3 R_x psi.

    The gradient is taken with respect to conj(psi) before any tangent
    projection; project out the radial component before stepping on the
    sphere.
    """
    vec = psi.amplitudes if isinstance(psi, PureState) else np.asarray(psi, dtype=complex)
    if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
        raise NotNormalized("cost_and_gradient expects a unit vector")
    stack = _stack(dim)
    w, applied = _wigner_values(stack, vec)
    m = float((w**4).sum() / (2 * dim.two_d))
    grad = (w**3) @ applied / dim.d
    return m, grad


def tangent_project(psi: np.ndarray, grad: np.ndarray) -> np.ndarray:
    """Remove the radial component of the gradient at psi on the sphere."""
    return grad - np.real(np.vdot(psi, grad)) * psi


def flat_chord_residual(state: PureState) -> float:
    """Max deviation of |chi|^2 from 1/(d+1) over the nonzero fundamental cell."""
    dim = state.dim
    cellmag = np.abs(chord_repr(dim, state).values[: dim.d, : dim.d]) ** 2
    dev = np.abs(cellmag - 1.0 / (dim.d + 1))
    dev[0, 0] = 0.0
    return float(dev.max())


def verify_fiducial(state: PureState, tol: float = 1e-4) -> tuple[bool, float]:
    """Flat-chord certificate: True iff the chord magnitudes are flat to tol."""
    residual = flat_chord_residual(state)
    return residual <= tol, residual


def search(config: SearchConfig) -> SearchResult:
    """Best-of-restarts projected gradient descent on the unit sphere.

    Each restart begins from a seeded complex-Gaussian vector and runs
    backtracking descent (Armijo test, step halving) with renormalization
    after every step.  The accepted step warm-starts the next iteration,
    doubled and capped at step_init, so late iterations do not pay the
    full backtracking ladder.  Deterministic for a fixed config.
    """
    dim = TorusDim(config.d)
    stack = _stack(dim)
    lower = welch_bound(config.d)
    quarter = 2 * dim.two_d

    def cost_only(vec: np.ndarray) -> float:
        w = ((stack @ vec) @ vec.conj()).real
        return float((w**4).sum() / quarter)

    seeds = np.random.SeedSequence(config.seed).spawn(config.restarts)
    best_m = np.inf
    best_vec: np.ndarray | None = None
    best_restart = -1
    total_iters = 0
    restarts_used = 0

    for r in range(config.restarts):
        restarts_used = r + 1
        rng = np.random.default_rng(seeds[r])
        psi = rng.normal(size=config.d) + 1j * rng.normal(size=config.d)
        psi /= np.linalg.norm(psi)
        w, applied = _wigner_values(stack, psi)
        m = float((w**4).sum() / quarter)
        step = config.step_init

        for _ in range(config.max_iters):
            total_iters += 1
            grad = (w**3) @ applied / dim.d
            gt = tangent_project(psi, grad)
            gnorm2 = float(np.real(np.vdot(gt, gt)))
            if gnorm2 < 1e-28:
                break
            step = min(step * 2.0, config.step_init)
            accepted = False
            while step > config.step_min:
                cand = psi - step * gt
                cand /= np.linalg.norm(cand)
                w_c, applied_c = _wigner_values(stack, cand)
                m_c = float((w_c**4).sum() / quarter)
                if m_c <= m - config.armijo * step * gnorm2:
                    psi, m, w, applied = cand, m_c, w_c, applied_c
                    accepted = True
                    break
                step /= 2.0
            if not accepted:
                break
            if m - lower <= config.target_tol:
                break

        if m < best_m:
            best_m = m
            best_vec = psi
            best_restart = r
        if best_m - lower <= config.target_tol:
            break

    state = PureState(dim, best_vec / np.linalg.norm(best_vec))
    return SearchResult(
        best_state=state,
        best_m=best_m,
        gap=best_m - lower,
        iterations=total_iters,
        flat_chord_residual=flat_chord_residual(state),
        restarts_used=restarts_used,
        best_restart=best_restart,
        config=config,
    )
