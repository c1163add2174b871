"""Center (Wigner) and chord representations on the 2d x 2d lattice.

An operator A on H_d is represented either by its center array
A(x) = tr(A R_x) or by its chord array A~(xi) = tr(A T_xi^dag), both stored
on the full redundant 2d x 2d grid.  Only one quadrant is independent; the
other three follow from the half-period sign symmetry.  The redundant grid
is kept as primary storage because it makes every lattice-sum formula
uniform; the odd-d reduction is provided as a separate view.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EvenDimension,
    NotNormalized,
    SymmetryViolation,
    TorusWeylError,
)
from .lattice import TorusDim, as_point, tau_phase_array
from . import weylops

CENTER = "center"
CHORD = "chord"


@dataclass(frozen=True)
class PhaseArray:
    """A 2d x 2d complex array indexed by lattice labels (q, p)."""

    dim: TorusDim
    kind: str
    values: np.ndarray

    def __post_init__(self) -> None:
        n = self.dim.two_d
        if self.kind not in (CENTER, CHORD):
            raise ValueError(f"kind must be 'center' or 'chord', got {self.kind!r}")
        if self.values.shape != (n, n):
            raise ValueError(f"expected shape {(n, n)}, got {self.values.shape}")

    def __getitem__(self, label) -> complex:
        pt = as_point(label)
        n = self.dim.two_d
        return self.values[pt.q % n, pt.p % n]


@dataclass(frozen=True)
class PureState:
    """Normalized state vector in the position basis."""

    dim: TorusDim
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        vec = np.asarray(self.amplitudes, dtype=complex)
        if vec.shape != (self.dim.d,):
            raise DimensionMismatch(
                f"state of length {vec.shape} does not match d={self.dim.d}"
            )
        if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
            raise NotNormalized(f"state norm {np.linalg.norm(vec)} is not 1")
        object.__setattr__(self, "amplitudes", vec)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class DensityMatrix:
    """Positive unit-trace operator."""

    dim: TorusDim
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.dim.d
        if mat.shape != (d, d):
            raise DimensionMismatch(f"matrix shape {mat.shape} does not match d={d}")
        if weylops.max_abs_diff(mat, mat.conj().T) > 1e-12:
            raise TorusWeylError("density matrix is not Hermitian")
        if abs(np.trace(mat) - 1.0) > 1e-12:
            raise TorusWeylError(f"density matrix trace {np.trace(mat)} is not 1")
        if np.linalg.eigvalsh(mat).min() < -1e-10:
            raise TorusWeylError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", mat)


def _coerce_matrix(dim: TorusDim, op) -> np.ndarray:
    if isinstance(op, PureState):
        _check_dim(dim, op.dim)
        return op.density()
    if isinstance(op, DensityMatrix):
        _check_dim(dim, op.dim)
        return op.matrix
    mat = np.asarray(op, dtype=complex)
    if mat.shape != (dim.d, dim.d):
        raise DimensionMismatch(f"operator shape {mat.shape} does not match d={dim.d}")
    return mat


def _check_dim(dim: TorusDim, other: TorusDim) -> None:
    if dim.d != other.d:
        raise DimensionMismatch(f"dimension mismatch: {dim.d} vs {other.d}")


def _gather_phases(dim: TorusDim, sign: int) -> np.ndarray:
    """Phase tensor tau^(sign*(2j+xq)*xp) of shape (2d, d, 2d)."""
    d, n = dim.d, dim.two_d
    j = np.arange(d)
    labels = np.arange(n)
    expo = (2 * j[None, :] + labels[:, None])[:, :, None] * labels[None, None, :]
    return tau_phase_array(dim, sign * expo)


def center_repr(dim: TorusDim, op) -> PhaseArray:
    """Center array A(x) = tr(A R_x) over the full 2d x 2d lattice.

    For a density matrix this is the Wigner array W(x).
    """
    mat = _coerce_matrix(dim, op)
    d, n = dim.d, dim.two_d
    j = np.arange(d)
    labels = np.arange(n)
    # tr(A R_x) = sum_j A[-j mod d, (j+xq) mod d] tau^((2j+xq) xp)
    gathered = mat[((-j) % d)[None, :], (j[None, :] + labels[:, None]) % d]
    vals = np.einsum("qj,qjp->qp", gathered, _gather_phases(dim, +1))
    return PhaseArray(dim, CENTER, vals)


def chord_repr(dim: TorusDim, op) -> PhaseArray:
    """Chord array A~(xi) = tr(A T_xi^dag); for states this is chi(xi)."""
    mat = _coerce_matrix(dim, op)
    d, n = dim.d, dim.two_d
    j = np.arange(d)
    labels = np.arange(n)
    # tr(A T_xi^dag) = sum_j A[(j+xi_q) mod d, j] tau^(-(2j+xi_q) xi_p)
    gathered = mat[(j[None, :] + labels[:, None]) % d, j[None, :]]
    vals = np.einsum("qj,qjp->qp", gathered, _gather_phases(dim, -1))
    return PhaseArray(dim, CHORD, vals)


def wigner(state) -> PhaseArray:
    """Wigner array of a PureState or DensityMatrix."""
    return center_repr(state.dim, state)


def chord_function(state) -> PhaseArray:
    """Chord function of a PureState or DensityMatrix."""
    return chord_repr(state.dim, state)


def half_period_residual(arr: PhaseArray) -> float:
    """Largest violation of the half-period sign symmetry.

    entry(v + d*w) must equal entry(v) * (-1)^<v,w> * (-1)^(d w_q w_p)
    for w in {0,1}^2.
    """
    dim = arr.dim
    d, n = dim.d, dim.two_d
    vals = arr.values
    q = np.arange(n)
    worst = 0.0
    sign_d = (-1) ** d
    # w = (1, 0): sign (-1)^(v_p)
    shifted = np.roll(vals, -d, axis=0)
    worst = max(worst, float(np.max(np.abs(shifted - vals * ((-1.0) ** q)[None, :]))))
    # w = (0, 1): sign (-1)^(v_q)
    shifted = np.roll(vals, -d, axis=1)
    worst = max(worst, float(np.max(np.abs(shifted - vals * ((-1.0) ** q)[:, None]))))
    # w = (1, 1): sign (-1)^(v_p - v_q) * (-1)^d
    shifted = np.roll(np.roll(vals, -d, axis=0), -d, axis=1)
    signs = sign_d * ((-1.0) ** q)[:, None] * ((-1.0) ** q)[None, :]
    worst = max(worst, float(np.max(np.abs(shifted - vals * signs))))
    return worst


def expand_half_period(dim: TorusDim, cell: np.ndarray) -> np.ndarray:
    """Extend d x d fundamental-cell values to the full 2d x 2d grid.

    Uses the half-period rule entry(v + d*w) = entry(v) (-1)^<v,w>
    (-1)^(d w_q w_p), so the result always satisfies the sign symmetry.
    """
    d = dim.d
    if cell.shape != (d, d):
        raise DimensionMismatch(f"expected cell shape {(d, d)}, got {cell.shape}")
    q = np.arange(d)
    sq = (-1.0) ** q
    full = np.empty((2 * d, 2 * d), dtype=complex)
    full[:d, :d] = cell
    full[d:, :d] = cell * sq[None, :]          # w = (1, 0): sign (-1)^(v_p)
    full[:d, d:] = cell * sq[:, None]          # w = (0, 1): sign (-1)^(v_q)
    full[d:, d:] = cell * np.outer(sq, sq) * ((-1.0) ** d)
    return full


def reconstruct(arr: PhaseArray, tol: float = 1e-10) -> np.ndarray:
    """Rebuild the operator from a center or chord array.

    A = (1/4d) sum_x A(x) R_x   or   A = (1/4d) sum_xi A~(xi) T_xi.
    The half-period sign symmetry is checked first: an array that breaks it
    cannot come from any operator.
    """
    dim = arr.dim
    scale = max(1.0, float(np.max(np.abs(arr.values))))
    if half_period_residual(arr) > tol * scale:
        raise SymmetryViolation(
            "array violates the half-period sign symmetry; not a valid "
            f"{arr.kind} representation"
        )
    d, n = dim.d, dim.two_d
    j = np.arange(d)
    # coefficient of the basis element indexed by (label_q, j); both basis
    # families carry the same tau^((2j+q)p) entry phase, only the column
    # pattern differs
    coeff = np.einsum("qp,qjp->qj", arr.values, _gather_phases(dim, +1))
    out = np.zeros((d, d), dtype=complex)
    for xq in range(n):
        rows = (j + xq) % d
        cols = (-j) % d if arr.kind == CENTER else j
        out[rows, cols] += coeff[xq]
    return out / (2 * n)


def symplectic_ft(arr: PhaseArray) -> PhaseArray:
    """Symplectic Fourier transform between center and chord kinds.

    out(u) = (1/2d) sum_v in(v) tau^<v, u>.  The map is an involution and
    carries center_repr(A) to chord_repr(A) and back.
    """
    dim = arr.dim
    n = dim.two_d
    grid = np.arange(n)
    fp = tau_phase_array(dim, np.outer(grid, grid))
    fm = fp.conj()
    out = (fm @ (arr.values @ fp)).T / n
    other = CHORD if arr.kind == CENTER else CENTER
    return PhaseArray(dim, other, out)


def odd_d_restrict(arr: PhaseArray) -> np.ndarray:
    """d x d view holding the even-even sublattice entries (odd d only).

    For odd d these entries alone determine the operator; for even d the
    restricted basis is incomplete and this raises EvenDimension.
    """
    dim = arr.dim
    if dim.d % 2 == 0:
        raise EvenDimension(
            f"the restricted even-even scheme needs odd d, got d={dim.d}"
        )
    return arr.values[::2, ::2].copy()


def reconstruct_restricted(dim: TorusDim, restricted: np.ndarray, kind: str) -> np.ndarray:
    """Rebuild an operator from the d x d even-even restricted array (odd d).

    A = (1/d) sum over x in Z_d^2 of value[x] * basis(2x), with basis R for
    center kind and T for chord kind.
    """
    if dim.d % 2 == 0:
        raise EvenDimension(
            f"the restricted even-even scheme needs odd d, got d={dim.d}"
        )
    d = dim.d
    restricted = np.asarray(restricted, dtype=complex)
    if restricted.shape != (d, d):
        raise DimensionMismatch(f"expected shape {(d, d)}, got {restricted.shape}")
    build = weylops.reflection if kind == CENTER else weylops.translation
    out = np.zeros((d, d), dtype=complex)
    for xq in range(d):
        for xp in range(d):
            out += restricted[xq, xp] * build(dim, (2 * xq, 2 * xp))
    return out / d


def position_state(dim: TorusDim, j: int) -> PureState:
    """Basis state |q_j>."""
    vec = np.zeros(dim.d, dtype=complex)
    vec[j % dim.d] = 1.0
    return PureState(dim, vec)


def random_pure_state(dim: TorusDim, rng: np.random.Generator) -> PureState:
    """Haar-random pure state."""
    vec = rng.normal(size=dim.d) + 1j * rng.normal(size=dim.d)
    return PureState(dim, vec / np.linalg.norm(vec))


def random_density_matrix(
    dim: TorusDim, rng: np.random.Generator, rank: int | None = None
) -> DensityMatrix:
    """Random mixed state from a Wishart-style draw."""
    d = dim.d
    k = rank or d
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    rho = g @ g.conj().T
    return DensityMatrix(dim, rho / np.trace(rho).real)


def coherent_state(dim: TorusDim, center) -> PureState:
    """Periodicized Gaussian wave packet centered at the given lattice label.

    The physical center is (q0, p0) = (center_q, center_p) / 2d on the unit
    torus.  Amplitudes are

        amp_j = sum over n in [-3, 3] of
                exp(-pi d (q_j - q0 + n)^2) * exp(2 pi i d p0 (q_j + n))

    with q_j = j/d, normalized afterwards.  Image terms beyond |n| = 3 are
    below 1e-12 for d >= 4.
    """
    pt = as_point(center)
    d = dim.d
    q0 = pt.q / dim.two_d
    p0 = pt.p / dim.two_d
    qj = np.arange(d) / d
    amp = np.zeros(d, dtype=complex)
    for n in range(-3, 4):
        amp += np.exp(-np.pi * d * (qj - q0 + n) ** 2) * np.exp(
            2j * np.pi * d * p0 * (qj + n)
        )
    return PureState(dim, amp / np.linalg.norm(amp))
