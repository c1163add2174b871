"""Lattice lines, line projectors, and phase-space marginals.

A line with direction xi and offset a is the set of lattice points x with
x_q xi_p - x_p xi_q = a (mod 2d).  Summing reflections over such a line
yields a positive projector; its expectations against a Wigner array are
the marginals of the state along that direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KindMismatch, ZeroDirection
from .lattice import PhasePoint, TorusDim, as_point, tau_pow
from .phase_repr import CENTER, CHORD, PhaseArray
from . import weylops


@dataclass(frozen=True)
class LineSpec:
    """Direction label xi plus parallel-line offset a in [0, 2d)."""

    xi: PhasePoint
    a: int


def line_offset(x, xi) -> int:
    """Offset of the line through x with direction xi: x_q xi_p - x_p xi_q."""
    x, xi = as_point(x), as_point(xi)
    return x.q * xi.p - x.p * xi.q


def line_points(dim: TorusDim, spec: LineSpec) -> list[PhasePoint]:
    """All lattice points on the given line, by direct enumeration.

    May be empty: when the direction components share a factor of 2d, only
    offsets divisible by that factor are populated.
    """
    n = dim.two_d
    out = []
    for q in range(n):
        for p in range(n):
            if (line_offset((q, p), spec.xi) - spec.a) % n == 0:
                out.append(PhasePoint(q, p))
    return out


def line_operator(dim: TorusDim, spec: LineSpec) -> np.ndarray:
    """Projector onto the line: (1/2d) sum over s of T_xi^s tau^(-s a).

    Equals the reflection sum (1/2d) sum of R_x over the line's points;
    Hermitian, idempotent, and the offsets of one direction partition
    unity.
    """
    d, n = dim.d, dim.two_d
    t = weylops.translation(dim, spec.xi)
    acc = np.zeros((d, d), dtype=complex)
    power = np.eye(d, dtype=complex)
    for s in range(n):
        acc += power * tau_pow(dim, -s * spec.a)
        power = t @ power
    return acc / n


def line_operator_from_reflections(dim: TorusDim, spec: LineSpec) -> np.ndarray:
    """Same projector built the slow way, as the reflection sum over the line."""
    d = dim.d
    acc = np.zeros((d, d), dtype=complex)
    for pt in line_points(dim, spec):
        acc += weylops.reflection(dim, pt)
    return acc / dim.two_d


def translation_order(dim: TorusDim, xi) -> tuple[int, int]:
    """Smallest r >= 1 with T_xi^r = sign * identity; returns (r, sign).

    The sign lives in {+1, -1}; it decides which parallel lines carry
    nonzero projectors.
    """
    xi = as_point(xi)
    if xi.q % dim.two_d == 0 and xi.p % dim.two_d == 0:
        raise ZeroDirection("direction (0, 0) has no well-defined order")
    d = dim.d
    t = weylops.translation(dim, xi)
    power = t.copy()
    for r in range(1, dim.two_d + 1):
        diag = np.diagonal(power)
        off = power - np.diag(diag)
        if np.max(np.abs(off)) < 1e-12 and np.max(np.abs(diag - diag[0])) < 1e-12:
            v = diag[0]
            if abs(v - 1.0) < 1e-9:
                return r, +1
            if abs(v + 1.0) < 1e-9:
                return r, -1
        power = t @ power
    raise AssertionError("translation order not found within 2d powers")


def _marginal_values(arr: PhaseArray, xi) -> np.ndarray:
    """(1/2d) sum of array entries over each parallel line, indexed by offset."""
    dim = arr.dim
    n = dim.two_d
    xi = as_point(xi)
    q = np.arange(n)
    offsets = (q[:, None] * xi.p - q[None, :] * xi.q) % n
    out = np.zeros(n, dtype=complex)
    np.add.at(out, offsets.reshape(-1), arr.values.reshape(-1))
    return out / n


def wigner_marginal(arr: PhaseArray, xi) -> np.ndarray:
    """Line marginals of a Wigner array: entry a is tr(rho L^a_xi).

    Real and nonnegative for density matrices, summing to the trace; at the
    populated offsets these are the diagonal elements of rho in the
    translation eigenbasis.
    """
    if arr.kind != CENTER:
        raise KindMismatch("wigner_marginal needs a center-kind array")
    return _marginal_values(arr, xi).real


def chord_marginal(arr: PhaseArray, xi) -> np.ndarray:
    """Line sums of a chord array; these expose skew-diagonal elements.

    For an order-d direction the value at offset 2k equals
    <phi_k| rho R_0 |phi_k> with phi_k the translation eigenvector at
    eigenvalue tau^(2k), i.e. the coherence between phi_k and its parity
    partner.
    """
    if arr.kind != CHORD:
        raise KindMismatch("chord_marginal needs a chord-kind array")
    return _marginal_values(arr, xi)


def translation_eigenbasis(dim: TorusDim, xi) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of T_xi with a deterministic phase convention.

    Returns (labels, vectors): labels[k] is the integer s with eigenvalue
    tau^s, vectors[:, k] the eigenvector with its largest-magnitude
    component made real positive.  Intended for order-d directions where
    the spectrum is simple; degenerate directions should be compared at
    the projector level instead.
    """
    t = weylops.translation(dim, as_point(xi))
    evals, evecs = np.linalg.eig(t)
    labels = np.rint(np.angle(evals) * dim.d / np.pi).astype(int) % dim.two_d
    order = np.argsort(labels, kind="stable")
    labels = labels[order]
    evecs = evecs[:, order]
    for k in range(evecs.shape[1]):
        idx = int(np.argmax(np.abs(evecs[:, k])))
        phase = evecs[idx, k] / abs(evecs[idx, k])
        evecs[:, k] = evecs[:, k] / phase
    return labels, evecs


def marginal_csv(arr: PhaseArray, xi) -> str:
    """CSV text of the marginal along xi: line index, value columns."""
    if arr.kind == CENTER:
        vals = wigner_marginal(arr, xi)
        lines = ["index,value"]
        lines += [f"{a},{v:.17g}" for a, v in enumerate(vals)]
    else:
        vals = chord_marginal(arr, xi)
        lines = ["index,real,imag"]
        lines += [f"{a},{v.real:.17g},{v.imag:.17g}" for a, v in enumerate(vals)]
    return "\n".join(lines) + "\n"
