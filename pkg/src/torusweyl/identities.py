"""Product and correlation identities for center and chord functions.

The two master formulas express tr(A R_x B^dag R_y) and
tr(A T_xi B^dag T_om^dag) as lattice sums over either representation.
Specialized to pure-state projectors they yield a catalogue of quadratic
and quartic identities relating a Wigner array to its chord function; the
catalogue is evaluated here with explicit residuals so that identity
breaking can also serve as a mixedness probe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonOrthogonal
from .lattice import TorusDim, as_point, eta_phase_array, tau_phase_array
from .phase_repr import (
    CENTER,
    DensityMatrix,
    PhaseArray,
    PureState,
    center_repr,
    chord_repr,
)
from . import weylops

PAIR_SAMPLE_SEED = 20210607
PAIR_SAMPLE_COUNT = 64


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of a single identity check."""

    name: str
    lhs: complex
    rhs: complex
    residual: float
    passed: bool
    tol: float


@dataclass(frozen=True)
class LocalizationReport:
    """Quartic localization measures with their two-route residuals."""

    dim: TorusDim
    M: float
    L: float
    K: float | None
    welch_lower: float
    upper: float
    m_residual: float
    l_residual: float
    k_residual: float | None


def _report(name: str, lhs, rhs, residual: float, tol: float) -> IdentityReport:
    return IdentityReport(name, complex(lhs), complex(rhs), float(residual), residual <= tol, tol)


def _relative(dev: float, scale: float) -> float:
    return dev / max(1.0, scale)


def _state_arrays(state) -> tuple[TorusDim, np.ndarray, np.ndarray]:
    """(dim, W, chi) with W kept complex-free only for true density inputs."""
    if isinstance(state, (PureState, DensityMatrix)):
        dim = state.dim
    else:
        raise TypeError("expected a PureState or DensityMatrix")
    w = center_repr(dim, state).values.real
    chi = chord_repr(dim, state).values
    return dim, w, chi


def _sample_pairs(dim: TorusDim) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic (x, y) label pairs: exhaustive for d <= 3, else seeded."""
    n = dim.two_d
    if dim.d <= 3:
        pts = np.array([(q, p) for q in range(n) for p in range(n)])
        xs = np.repeat(pts, len(pts), axis=0)
        ys = np.tile(pts, (len(pts), 1))
        return xs, ys
    rng = np.random.default_rng(PAIR_SAMPLE_SEED + dim.d)
    xs = rng.integers(0, n, size=(PAIR_SAMPLE_COUNT, 2))
    ys = rng.integers(0, n, size=(PAIR_SAMPLE_COUNT, 2))
    return xs, ys


def _gather(vals: np.ndarray, base: np.ndarray, sign: int) -> np.ndarray:
    """vals[(base +/- z) mod n] over the z grid, batched over rows of base."""
    n = vals.shape[0]
    z = np.arange(n)
    rows = np.mod(base[:, 0, None, None] + sign * z[None, :, None], n)
    cols = np.mod(base[:, 1, None, None] + sign * z[None, None, :], n)
    return vals[rows, cols]


def _pair_phases(dim: TorusDim, v: np.ndarray, factor: int) -> np.ndarray:
    """tau^(factor * <v, z>) over the z grid, batched over rows of v."""
    n = dim.two_d
    z = np.arange(n)
    expo = factor * (z[None, :, None] * v[:, 1, None, None] - z[None, None, :] * v[:, 0, None, None])
    return tau_phase_array(dim, expo)


def _reverse(vals: np.ndarray) -> np.ndarray:
    """vals[(-z) mod n] over the grid."""
    n = vals.shape[0]
    idx = (-np.arange(n)) % n
    return vals[np.ix_(idx, idx)]


def eta_fourier_quarter(dim: TorusDim, vals: np.ndarray, sign: int) -> np.ndarray:
    """out(x) = (1/4d) sum_v vals[v] eta^(sign <x, v>), the doubled transform."""
    n = dim.two_d
    grid = np.arange(n)
    ep = eta_phase_array(dim, sign * np.outer(grid, grid))
    em = ep.conj()
    # out[xq, xp] = sum_{vq, vp} vals[vq, vp] eta^(sign (vq xp - vp xq))
    return (ep @ (vals @ em)).T / (2 * n)


def main_formula_center(dim: TorusDim, a, b, x, y, tol: float = 1e-10) -> IdentityReport:
    """Three-way check of tr(A R_x B^dag R_y) against both lattice sums.

    Center form:  (1/4d) sum_z A(x+z) B*(y-z) tau^<x-y, z>
    Chord form:   (1/4d) sum_z A~(z-x) B~*(y-z) tau^(-<x+y, z>)
    """
    amat = np.asarray(a, dtype=complex)
    bmat = np.asarray(b, dtype=complex)
    if amat.shape != bmat.shape or amat.shape != (dim.d, dim.d):
        raise DimensionMismatch(f"operands must both be {dim.d} x {dim.d}")
    x, y = as_point(x), as_point(y)
    direct = np.trace(amat @ weylops.reflection(dim, x) @ bmat.conj().T @ weylops.reflection(dim, y))

    ac = center_repr(dim, amat).values
    bc = center_repr(dim, bmat).values
    at = chord_repr(dim, amat).values
    bt = chord_repr(dim, bmat).values
    xs = np.array([[x.q, x.p]])
    ys = np.array([[y.q, y.p]])

    s_center = (
        _gather(ac, xs, +1) * _gather(bc, ys, -1).conj() * _pair_phases(dim, xs - ys, +1)
    ).sum() / (2 * dim.two_d)
    s_chord = (
        _gather(at, -xs, +1) * _gather(bt, ys, -1).conj() * _pair_phases(dim, xs + ys, -1)
    ).sum() / (2 * dim.two_d)
    residual = _relative(max(abs(direct - s_center), abs(direct - s_chord)), abs(direct))
    return _report("main_formula_center", direct, s_center, residual, tol)


def main_formula_chord(dim: TorusDim, a, b, xi, omega, tol: float = 1e-10) -> IdentityReport:
    """Three-way check of tr(A T_xi B^dag T_omega^dag) against both sums.

    Center form:  (1/4d) sum_z A(z+xi) B*(z-om) tau^<xi-om, z>
    Chord form:   (1/4d) sum_z A~(z-xi) B~*(z-om) tau^(-<xi+om, z>)
    """
    amat = np.asarray(a, dtype=complex)
    bmat = np.asarray(b, dtype=complex)
    if amat.shape != bmat.shape or amat.shape != (dim.d, dim.d):
        raise DimensionMismatch(f"operands must both be {dim.d} x {dim.d}")
    xi, omega = as_point(xi), as_point(omega)
    direct = np.trace(
        amat @ weylops.translation(dim, xi) @ bmat.conj().T @ weylops.translation(dim, omega).conj().T
    )

    ac = center_repr(dim, amat).values
    bc = center_repr(dim, bmat).values
    at = chord_repr(dim, amat).values
    bt = chord_repr(dim, bmat).values
    xs = np.array([[xi.q, xi.p]])
    ys = np.array([[omega.q, omega.p]])

    s_center = (
        _gather(ac, xs, +1) * _gather(bc, -ys, +1).conj() * _pair_phases(dim, xs - ys, +1)
    ).sum() / (2 * dim.two_d)
    s_chord = (
        _gather(at, -xs, +1) * _gather(bt, -ys, +1).conj() * _pair_phases(dim, xs + ys, -1)
    ).sum() / (2 * dim.two_d)
    residual = _relative(max(abs(direct - s_center), abs(direct - s_chord)), abs(direct))
    return _report("main_formula_chord", direct, s_center, residual, tol)


def _batched_product_checks(dim, w, chi, tol) -> list[IdentityReport]:
    """The four pure-state product identities over a deterministic pair set."""
    n = dim.two_d
    norm = 2 * n
    xs, ys = _sample_pairs(dim)
    scale = 1.0  # |W|, |chi| <= 1 for pure states, and O(1) generally

    wx = w[xs[:, 0] % n, xs[:, 1] % n]
    wy = w[ys[:, 0] % n, ys[:, 1] % n]
    cx = chi[xs[:, 0] % n, xs[:, 1] % n]
    cy = chi[ys[:, 0] % n, ys[:, 1] % n]

    out = []
    rhs = (_gather(w, xs, +1) * _gather(w, ys, -1) * _pair_phases(dim, xs - ys, +1)).sum((1, 2)) / norm
    dev = np.max(np.abs(wx * wy - rhs))
    out.append(_report("center_product_convolution", 0, 0, _relative(dev, scale), tol))

    rhs = (_gather(chi, xs, +1) * _gather(chi, ys, +1) * _pair_phases(dim, xs + ys, -1)).sum((1, 2)) / norm
    dev = np.max(np.abs(wx * wy - rhs))
    out.append(_report("center_product_from_chords", 0, 0, _relative(dev, scale), tol))

    rhs = (_gather(chi, xs, +1) * _gather(chi, ys, -1) * _pair_phases(dim, xs - ys, +1)).sum((1, 2)) / norm
    dev = np.max(np.abs(cx * cy - rhs))
    out.append(_report("chord_product_convolution", 0, 0, _relative(dev, scale), tol))

    rhs = (_gather(w, xs, +1) * _gather(w, ys, +1) * _pair_phases(dim, xs + ys, -1)).sum((1, 2)) / norm
    dev = np.max(np.abs(cx * cy - rhs))
    out.append(_report("chord_product_from_centers", 0, 0, _relative(dev, scale), tol))
    return out


def pure_state_suite(state, tol: float = 1e-9) -> list[IdentityReport]:
    """Evaluate the full pure-state identity catalogue.

    All residuals vanish (within tolerance) exactly for pure states; feeding
    a mixed DensityMatrix leaves the purity-sensitive residuals strictly
    positive, which makes the suite usable as a mixedness diagnostic.
    """
    dim, w, chi = _state_arrays(state)
    n = dim.two_d
    norm = 2 * n
    reports = _batched_product_checks(dim, w, chi, tol)

    w_rev = _reverse(w)
    chi_rev = _reverse(chi)

    # W^2 and chi^2 are a doubled symplectic Fourier pair
    rhs = eta_fourier_quarter(dim, chi**2, -1)
    dev = float(np.max(np.abs(w**2 - rhs)))
    reports.append(_report("squared_wigner_chord_fourier_pair", 0, 0, _relative(dev, 1.0), tol))

    # participation sums
    m_w = float((w**4).sum() / norm)
    m_c = float((np.abs(chi) ** 4).sum() / norm)
    reports.append(
        _report("quartic_participation_equality", m_w, m_c, _relative(abs(m_w - m_c), abs(m_w)), tol)
    )
    l_c = (chi**4).sum() / norm
    l_w = ((w**2) * (w_rev**2)).sum() / norm
    reports.append(
        _report("quartic_skew_equality", l_c, l_w, _relative(abs(l_c - l_w), abs(l_c)), tol)
    )

    # correlation of the state with its translate, both stated forms
    auto = w * w_rev
    conv = _full_correlation(chi, chi.conj())
    dev = float(np.max(np.abs(auto - conv)))
    reports.append(_report("translate_autocorrelation_chord_form", 0, 0, _relative(dev, 1.0), tol))
    rhs = eta_fourier_quarter(dim, auto, +1)
    dev = float(np.max(np.abs(auto - rhs)))
    reports.append(
        _report("translate_autocorrelation_fourier_invariance", 0, 0, _relative(dev, 1.0), tol)
    )

    # |chi|^2 as the center autocorrelation, and its Fourier invariance
    mag2 = np.abs(chi) ** 2
    pts = np.array([(q, p) for q in range(n) for p in range(n)])
    conv = ((_gather(w, pts, +1) * _gather(w, -pts, +1)).sum((1, 2)) / norm).reshape(n, n)
    dev = float(np.max(np.abs(mag2 - conv)))
    reports.append(_report("chord_magnitude_center_correlation", 0, 0, _relative(dev, 1.0), tol))
    rhs = eta_fourier_quarter(dim, mag2, +1)
    dev = float(np.max(np.abs(mag2 - rhs)))
    reports.append(
        _report("chord_magnitude_fourier_invariance", 0, 0, _relative(dev, 1.0), tol)
    )

    # origin specialization
    w0sq = w[0, 0] ** 2
    s1 = (chi**2).sum() / norm
    s2 = (w * w_rev).sum() / norm
    dev = max(abs(w0sq - s1), abs(w0sq - s2))
    reports.append(_report("origin_center_square", w0sq, s1, _relative(dev, abs(w0sq)), tol))
    return reports


def _full_correlation(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """out(x) = (1/4d) sum_z a(x+z) b(x-z) for every lattice point x."""
    n = a.shape[0]
    pts = np.array([(q, p) for q in range(n) for p in range(n)])
    vals = (_gather(a, pts, +1) * _gather(b, pts, -1)).sum((1, 2)) / (2 * n)
    return vals.reshape(n, n)


def transition_functions(psi1: PureState, psi2: PureState) -> tuple[PhaseArray, PhaseArray]:
    """Center and chord arrays of the transition operator |psi1><psi2|."""
    if psi1.dim.d != psi2.dim.d:
        raise DimensionMismatch("states live on different tori")
    dim = psi1.dim
    top = np.outer(psi1.amplitudes, psi2.amplitudes.conj())
    return center_repr(dim, top), chord_repr(dim, top)


def transition_suite(psi1: PureState, psi2: PureState, tol: float = 1e-9) -> list[IdentityReport]:
    """Identities linking transition functions to the two states' own arrays."""
    if psi1.dim.d != psi2.dim.d:
        raise DimensionMismatch("states live on different tori")
    dim = psi1.dim
    n = dim.two_d
    norm = 2 * n
    w1 = center_repr(dim, psi1).values.real
    w2 = center_repr(dim, psi2).values.real
    c1 = chord_repr(dim, psi1).values
    c2 = chord_repr(dim, psi2).values
    w12 = transition_functions(psi1, psi2)[0].values
    c12 = transition_functions(psi1, psi2)[1].values

    reports = []
    mag_w = np.abs(w12) ** 2
    conv = _full_correlation(w1.astype(complex), w2.astype(complex)).real
    dev = float(np.max(np.abs(mag_w - conv)))
    reports.append(_report("transition_center_magnitude_correlation", 0, 0, _relative(dev, 1.0), tol))
    four = eta_fourier_quarter(dim, c1 * c2, -1)
    dev = float(np.max(np.abs(mag_w - four)))
    reports.append(_report("transition_center_magnitude_fourier", 0, 0, _relative(dev, 1.0), tol))

    mag_c = np.abs(c12) ** 2
    pts = np.array([(q, p) for q in range(n) for p in range(n)])
    conv = ((_gather(w1.astype(complex), pts, +1) * _gather(w2.astype(complex), -pts, +1)).sum((1, 2)) / norm).reshape(n, n).real
    dev = float(np.max(np.abs(mag_c - conv)))
    reports.append(_report("transition_chord_magnitude_correlation", 0, 0, _relative(dev, 1.0), tol))
    four = eta_fourier_quarter(dim, c1.conj() * c2, +1)
    dev = float(np.max(np.abs(mag_c - four)))
    reports.append(_report("transition_chord_magnitude_fourier", 0, 0, _relative(dev, 1.0), tol))

    k_w = float((np.abs(w12) ** 4).sum() / norm)
    k_c = float((np.abs(c12) ** 4).sum() / norm)
    reports.append(
        _report("transition_quartic_equality", k_w, k_c, _relative(abs(k_w - k_c), abs(k_w)), tol)
    )

    refl = w12.conj() * _reverse(w12)
    four = eta_fourier_quarter(dim, (w1 * _reverse(w2)).astype(complex), +1)
    dev = float(np.max(np.abs(refl - four)))
    reports.append(_report("transition_reflected_product_fourier", 0, 0, _relative(dev, 1.0), tol))

    reports.append(quartic_coherence_identity(psi1, psi2, tol))
    return reports


def quartic_coherence_identity(psi1: PureState, psi2: PureState, tol: float = 1e-9) -> IdentityReport:
    """(1/4d) sum |W12(x)|^2 |W12(-x)|^2 = (1/4d) sum |W1(x)|^2 |W2(-x)|^2."""
    if psi1.dim.d != psi2.dim.d:
        raise DimensionMismatch("states live on different tori")
    dim = psi1.dim
    norm = 2 * dim.two_d
    w1 = center_repr(dim, psi1).values.real
    w2 = center_repr(dim, psi2).values.real
    w12 = transition_functions(psi1, psi2)[0].values
    lhs = float((np.abs(w12) ** 2 * np.abs(_reverse(w12)) ** 2).sum() / norm)
    rhs = float((w1**2 * _reverse(w2) ** 2).sum() / norm)
    return _report(
        "transition_coherence_quartic", lhs, rhs, _relative(abs(lhs - rhs), abs(lhs)), tol
    )


def localization(state, second: PureState | None = None) -> LocalizationReport:
    """Quartic localization measures M, L (and K for a pair of states).

    M is the inverse participation ratio of the state in phase space,
    bounded between the Welch floor 2/(d+1) and 1 for pure states; each
    measure is computed along both routes and the disagreement reported.
    """
    dim, w, chi = _state_arrays(state)
    norm = 2 * dim.two_d
    m_w = float((w**4).sum() / norm)
    m_c = float((np.abs(chi) ** 4).sum() / norm)
    l_c = complex((chi**4).sum() / norm)
    l_w = float((w**2 * _reverse(w) ** 2).sum() / norm)
    k_val = None
    k_res = None
    if second is not None:
        if not isinstance(state, PureState):
            raise TypeError("K needs two pure states")
        w12 = transition_functions(state, second)[0].values
        c12 = transition_functions(state, second)[1].values
        k_w = float((np.abs(w12) ** 4).sum() / norm)
        k_c = float((np.abs(c12) ** 4).sum() / norm)
        k_val = k_w
        k_res = abs(k_w - k_c)
    return LocalizationReport(
        dim=dim,
        M=m_w,
        L=l_w,
        K=k_val,
        welch_lower=2.0 / (dim.d + 1),
        upper=1.0,
        m_residual=abs(m_w - m_c),
        l_residual=abs(l_c - l_w),
        k_residual=k_res,
    )


def cat_coherence(psi1: PureState, psi2: PureState) -> PhaseArray:
    """Wigner array of the balanced superposition of two orthogonal states.

    Assembled from the four pieces (W1 + W2 + W12 + W12*)/2; the transition
    part carries the interference fringes.
    """
    if psi1.dim.d != psi2.dim.d:
        raise DimensionMismatch("states live on different tori")
    overlap = np.vdot(psi1.amplitudes, psi2.amplitudes)
    if abs(overlap) > 1e-10:
        raise NonOrthogonal(f"|<psi1|psi2>| = {abs(overlap):.3e} exceeds 1e-10")
    dim = psi1.dim
    w1 = center_repr(dim, psi1).values
    w2 = center_repr(dim, psi2).values
    w12 = transition_functions(psi1, psi2)[0].values
    return PhaseArray(dim, CENTER, 0.5 * (w1 + w2 + w12 + w12.conj()))


def report_lines(reports: list[IdentityReport]) -> str:
    """Plain-text rendering of a report list, one identity per line."""
    rows = []
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        rows.append(f"{r.name:45s} residual={r.residual:.3e} tol={r.tol:.1e} {status}")
    return "\n".join(rows) + "\n"
