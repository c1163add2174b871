"""Superoperators as arrays over double phase space.

A superoperator S acts linearly on d x d operators; flattening operators
row-major (column index fastest) realizes S as a d^2 x d^2 matrix, with
the two-sided product A . B (acting as C -> A C B) becoming
kron(A, B^T).  Translation and reflection monomials built this way form a
Weyl-Heisenberg group for two effective degrees of freedom, periodic on
Z_d^4 with no redundancy, and every superoperator has double center and
chord arrays over that lattice.

Parity caveat: for odd d the d^4 monomials are an orthogonal basis, so the
double arrays are faithful and reconstruction is exact.  For even d the
single-operator half-period signs freeze the parity of the label pair
(x+xi, x-xi), the monomial family spans only a quarter of superoperator
space, and on that span the frame overcounts by 4.  Composition laws,
Choi conversion, and Wigner propagation are parity-independent and hold
for every d; only the basis-level identities (orthogonality, Parseval,
reconstruction) require odd d as stated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyList, NotUnitary, TorusWeylError
from .lattice import PhasePoint, TorusDim, as_point, eta_pow, symplectic, tau_phase_array
from .phase_repr import CENTER, PhaseArray, center_repr, expand_half_period
from . import weylops

DOUBLE_CENTER = "double-center"
DOUBLE_CHORD = "double-chord"

GENERIC = "generic"
UNITARY_CONJUGATION = "unitary-conjugation"
KRAUS = "kraus"


@dataclass(frozen=True)
class DoublePoint:
    """Lattice label (x, xi) in double phase space, reduced mod d."""

    x: PhasePoint
    xi: PhasePoint


def double_point(dim: TorusDim, x, xi) -> DoublePoint:
    d = dim.d
    x, xi = as_point(x), as_point(xi)
    return DoublePoint(PhasePoint(x.q % d, x.p % d), PhasePoint(xi.q % d, xi.p % d))


def as_double(dim: TorusDim, X) -> DoublePoint:
    if isinstance(X, DoublePoint):
        return double_point(dim, X.x, X.xi)
    x, xi = X
    return double_point(dim, x, xi)


def double_symplectic(X: DoublePoint, Y: DoublePoint) -> int:
    """<<X, Y>> = <xi_X, x_Y> + <x_X, xi_Y>; exponents of eta reduce mod d."""
    return symplectic(X.xi, Y.x) + symplectic(X.x, Y.xi)


@dataclass(frozen=True)
class SuperOperator:
    """Dense d^2 x d^2 realization of a linear map on operators."""

    dim: TorusDim
    matrix: np.ndarray
    provenance: str = GENERIC

    def __post_init__(self) -> None:
        n = self.dim.d * self.dim.d
        if self.matrix.shape != (n, n):
            raise DimensionMismatch(f"expected shape {(n, n)}, got {self.matrix.shape}")

    def apply(self, op: np.ndarray) -> np.ndarray:
        d = self.dim.d
        op = np.asarray(op, dtype=complex)
        if op.shape != (d, d):
            raise DimensionMismatch(f"operand shape {op.shape} does not match d={d}")
        return (self.matrix @ op.reshape(-1)).reshape(d, d)


@dataclass(frozen=True)
class DoublePhaseArray:
    """d^4 complex values indexed by (x_q, x_p, xi_q, xi_p)."""

    dim: TorusDim
    kind: str
    entries: np.ndarray

    def __post_init__(self) -> None:
        d = self.dim.d
        if self.kind not in (DOUBLE_CENTER, DOUBLE_CHORD):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.entries.shape != (d, d, d, d):
            raise DimensionMismatch(
                f"expected shape {(d, d, d, d)}, got {self.entries.shape}"
            )


def bullet(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of the two-sided product C -> A C B under row-major flattening."""
    return np.kron(a, b.T)


def conjugation_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of C -> A tr(B^dag C), the rank-one |A>><<B| superoperator."""
    return np.outer(a.reshape(-1), b.conj().reshape(-1))


def super_translation(dim: TorusDim, X) -> SuperOperator:
    """T_{x+xi} . T_{x-xi}^dag as a matrix; d-periodic in both labels."""
    X = as_double(dim, X)
    plus = weylops.translation(dim, X.x + X.xi)
    minus = weylops.translation(dim, X.x - X.xi)
    return SuperOperator(dim, bullet(plus, minus.conj().T))


def super_reflection(dim: TorusDim, X) -> SuperOperator:
    """R_{x+xi} . R_{x-xi} as a matrix; Hermitian."""
    X = as_double(dim, X)
    plus = weylops.reflection(dim, X.x + X.xi)
    minus = weylops.reflection(dim, X.x - X.xi)
    return SuperOperator(dim, bullet(plus, minus))


def unitary_superop(dim: TorusDim, u: np.ndarray, check: bool = True) -> SuperOperator:
    """Conjugation map C -> U C U^dag."""
    u = np.asarray(u, dtype=complex)
    if check and weylops.max_abs_diff(u.conj().T @ u, np.eye(dim.d)) > 1e-8:
        raise NotUnitary("matrix fails the unitarity check at 1e-8")
    return SuperOperator(dim, bullet(u, u.conj().T), UNITARY_CONJUGATION)


def kraus_superop(ops: list[np.ndarray]) -> SuperOperator:
    """Sum of K_j . K_j^dag for a list of Kraus operators.

    Trace preservation (sum K^dag K = 1) is checked and reported as a
    warning only; maps that are not channels are still representable.
    """
    if not ops:
        raise EmptyList("need at least one Kraus operator")
    mats = [np.asarray(k, dtype=complex) for k in ops]
    d = mats[0].shape[0]
    for m in mats:
        if m.shape != (d, d):
            raise DimensionMismatch("Kraus operators must share one dimension")
    dim = TorusDim(d)
    total = sum(bullet(m, m.conj().T) for m in mats)
    closure = sum(m.conj().T @ m for m in mats)
    if weylops.max_abs_diff(closure, np.eye(d)) > 1e-8:
        warnings.warn("Kraus set is not trace preserving", stacklevel=2)
    return SuperOperator(dim, total, KRAUS)


def _double_cell_labels(d: int) -> np.ndarray:
    grid = np.arange(d)
    a, b, c, e = np.meshgrid(grid, grid, grid, grid, indexing="ij")
    return a, b, c, e


def _monomial_factors(dim: TorusDim, stack: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gather the (plus, minus) operator factors for every double lattice point.

    Returns two arrays of shape (d, d, d, d, d, d): factors at labels
    x + xi and x - xi respectively, from the given full-label stack.
    """
    d, n = dim.d, dim.two_d
    xq, xp, kq, kp = _double_cell_labels(d)
    plus = stack[(xq + kq) % n, (xp + kp) % n]
    minus = stack[(xq - kq) % n, (xp - kp) % n]
    return plus, minus


def double_center_repr(s: SuperOperator) -> DoublePhaseArray:
    """S(X) = Tr(R_X S), the double center array on Z_d^4."""
    dim = s.dim
    d = dim.d
    m4 = s.matrix.reshape(d, d, d, d)
    rstack = weylops.reflection_stack(dim)
    plus, minus = _monomial_factors(dim, rstack)
    # Tr(kron(A, B^T) M) = sum A_ij B_kl M4[j, k, i, l]
    vals = np.einsum("ABCDij,ABCDkl,jkil->ABCD", plus, minus, m4, optimize=True)
    return DoublePhaseArray(dim, DOUBLE_CENTER, vals)


def double_chord_repr(s: SuperOperator) -> DoublePhaseArray:
    """S~(X) = Tr(T_X^dag S), the double chord array on Z_d^4."""
    dim = s.dim
    d = dim.d
    m4 = s.matrix.reshape(d, d, d, d)
    tstack = weylops.translation_stack(dim)
    plus, minus = _monomial_factors(dim, tstack)
    # T_X = kron(T_plus, conj(T_minus)); Tr(T_X^dag M) pairs the conjugates
    vals = np.einsum("ABCDji,ABCDkl,jkil->ABCD", plus.conj(), minus, m4, optimize=True)
    return DoublePhaseArray(dim, DOUBLE_CHORD, vals)


def reconstruct_superop(arr: DoublePhaseArray) -> SuperOperator:
    """S = (1/d^2) sum_X S(X) R_X  or  (1/d^2) sum_X S~(X) T_X.

    Exact for odd d.  For even d the monomial family is degenerate: the
    result is 4 times the projection of S onto the even-parity monomial
    span (see the module docstring).
    """
    dim = arr.dim
    d = dim.d
    if arr.kind == DOUBLE_CENTER:
        stack = weylops.reflection_stack(dim)
        plus, minus = _monomial_factors(dim, stack)
        mat = np.einsum("ABCD,ABCDij,ABCDkl->iljk", arr.entries, plus, minus, optimize=True)
    else:
        stack = weylops.translation_stack(dim)
        plus, minus = _monomial_factors(dim, stack)
        # T_X = kron(T_plus, conj(T_minus)): entry (i,l),(j,k) is
        # plus[i,j] * conj(minus[l,k])
        mat = np.einsum(
            "ABCD,ABCDij,ABCDlk->iljk", arr.entries, plus, minus.conj(), optimize=True
        )
    return SuperOperator(dim, mat.reshape(d * d, d * d) / (d * d))


def superop_trace(s: SuperOperator) -> complex:
    """Tr S, the matrix trace of the d^2 x d^2 realization."""
    return complex(np.trace(s.matrix))


def unitary_double_center(dim: TorusDim, u: np.ndarray) -> DoublePhaseArray:
    """Double center array of U . U^dag in product form U(x+xi) U*(x-xi)."""
    u = np.asarray(u, dtype=complex)
    if weylops.max_abs_diff(u.conj().T @ u, np.eye(dim.d)) > 1e-8:
        raise NotUnitary("matrix fails the unitarity check at 1e-8")
    uc = center_repr(dim, u).values
    n = dim.two_d
    xq, xp, kq, kp = _double_cell_labels(dim.d)
    vals = uc[(xq + kq) % n, (xp + kp) % n] * uc[(xq - kq) % n, (xp - kp) % n].conj()
    return DoublePhaseArray(dim, DOUBLE_CENTER, vals)


@dataclass(frozen=True)
class WignerKernel:
    """Propagation kernel K(x_plus, x_minus) for center arrays.

    Stored on the fundamental cell pair (d^4 entries); the full-label view
    follows from the half-period signs of both reflection labels.
    Propagation: W'(x_plus) = (1/d) sum over cell x_minus of
    K(x_plus, x_minus) W(x_minus).
    """

    dim: TorusDim
    cell: np.ndarray

    def __post_init__(self) -> None:
        d = self.dim.d
        if self.cell.shape != (d, d, d, d):
            raise DimensionMismatch(f"expected {(d, d, d, d)}, got {self.cell.shape}")

    def entry(self, x_plus, x_minus) -> complex:
        d = self.dim.d
        xp_, xm_ = as_point(x_plus), as_point(x_minus)
        sign = _half_period_sign(d, xp_) * _half_period_sign(d, xm_)
        return sign * complex(
            self.cell[xp_.q % d, xp_.p % d, xm_.q % d, xm_.p % d]
        )

    def full(self) -> np.ndarray:
        """(2d)^4 view expanded with half-period signs."""
        d, n = self.dim.d, self.dim.two_d
        out = np.empty((n, n, n, n), dtype=complex)
        for aq in range(n):
            for ap in range(n):
                splus = _half_period_sign(d, PhasePoint(aq, ap))
                block = self.cell[aq % d, ap % d]
                out[aq, ap] = splus * expand_half_period(self.dim, block)
        return out

    def propagate(self, arr: PhaseArray) -> PhaseArray:
        if arr.kind != CENTER:
            raise TorusWeylError("the propagation kernel acts on center arrays")
        if arr.dim.d != self.dim.d:
            raise DimensionMismatch("kernel and array dimensions differ")
        d = self.dim.d
        cell_in = arr.values[:d, :d]
        cell_out = np.einsum("abcd,cd->ab", self.cell, cell_in) / d
        return PhaseArray(self.dim, CENTER, expand_half_period(self.dim, cell_out))


def _half_period_sign(d: int, pt: PhasePoint) -> int:
    """Sign picked up when reducing a reflection label into the cell."""
    wq, rq = divmod(pt.q % (2 * d), d)
    wp, rp = divmod(pt.p % (2 * d), d)
    expo = symplectic(PhasePoint(rq, rp), PhasePoint(wq, wp)) + d * wq * wp
    return -1 if expo % 2 else 1


def _kernel_from_weyl_transform(dim: TorusDim, uc: np.ndarray) -> np.ndarray:
    """Cell kernel from a single Weyl transform:

    K(x_plus, x_minus) = (1/4d) sum_z uc(x_minus + z) uc*(x_plus - z)
                          tau^<x_minus - x_plus, z>,
    which is the inverse transform of the product-form double center array.
    """
    d, n = dim.d, dim.two_d
    z = np.arange(n)
    cellpts = np.array([(q, p) for q in range(d) for p in range(d)])
    gathered_minus = uc[
        (cellpts[:, 0, None, None] + z[None, :, None]) % n,
        (cellpts[:, 1, None, None] + z[None, None, :]) % n,
    ]
    out = np.empty((d * d, d * d), dtype=complex)
    for i, (aq, ap) in enumerate(cellpts):
        gathered_plus = uc[(aq - z[:, None]) % n, (ap - z[None, :]) % n]
        diff = cellpts - np.array([aq, ap])
        expo = z[None, :, None] * diff[:, 1, None, None] - z[None, None, :] * diff[:, 0, None, None]
        phases = tau_phase_array(dim, expo)
        out[i] = (gathered_minus * gathered_plus.conj()[None] * phases).sum((1, 2))
    return out.reshape(d, d, d, d) / (2 * n)


def wigner_propagator(dim: TorusDim, u: np.ndarray) -> WignerKernel:
    """Kernel propagating Wigner arrays under C -> U C U^dag."""
    u = np.asarray(u, dtype=complex)
    if weylops.max_abs_diff(u.conj().T @ u, np.eye(dim.d)) > 1e-8:
        raise NotUnitary("matrix fails the unitarity check at 1e-8")
    uc = center_repr(dim, u).values
    cell = _kernel_from_weyl_transform(dim, uc)
    return WignerKernel(dim, cell)


def kraus_wigner_kernel(dim: TorusDim, ops: list[np.ndarray]) -> WignerKernel:
    """Kernel of a Kraus map, the sum of the per-operator kernels."""
    if not ops:
        raise EmptyList("need at least one Kraus operator")
    cell = np.zeros((dim.d,) * 4, dtype=complex)
    for k in ops:
        k = np.asarray(k, dtype=complex)
        if k.shape != (dim.d, dim.d):
            raise DimensionMismatch("Kraus operators must share one dimension")
        cell += _kernel_from_weyl_transform(dim, center_repr(dim, k).values)
    return WignerKernel(dim, cell)


def choi_convert(dim: TorusDim, x_plus, x_minus, kind: str):
    """Expansion of a two-sided monomial over the conjugate rank-one basis.

    reflection:   R_{x+xi} . R_{x-xi}
                  = (1/d) sum_y |R_{x+y}>><<R_{x-y}| eta^(-<y, xi>)
    translation:  T_{x+xi} . T_{x-xi}^dag
                  = (1/d) sum_y |T_{y+xi}>><<T_{y-xi}| eta^(-<y, x>)

    Returns a list of (plus_label, minus_label, coefficient) triples with
    coefficients including the 1/d weight.  The label pair must have even
    component sums so that integer (x, xi) exist.
    """
    xp_, xm_ = as_point(x_plus), as_point(x_minus)
    if (xp_.q + xm_.q) % 2 or (xp_.p + xm_.p) % 2:
        raise TorusWeylError(
            "label pair must have even component sums to admit integer center "
            "and half-chord"
        )
    if kind not in ("reflection", "translation"):
        raise ValueError(f"kind must be 'reflection' or 'translation', got {kind!r}")
    x = PhasePoint((xp_.q + xm_.q) // 2, (xp_.p + xm_.p) // 2)
    xi = PhasePoint((xp_.q - xm_.q) // 2, (xp_.p - xm_.p) // 2)
    d = dim.d
    terms = []
    for yq in range(d):
        for yp in range(d):
            y = PhasePoint(yq, yp)
            if kind == "reflection":
                plus, minus = x + y, x - y
                expo = -symplectic(y, xi)
            else:
                plus, minus = y + xi, y - xi
                expo = -symplectic(y, x)
            terms.append((plus, minus, eta_pow(dim, expo) / d))
    return terms


def realize_choi_terms(dim: TorusDim, terms, kind: str) -> np.ndarray:
    """Materialize a choi_convert expansion as a d^2 x d^2 matrix."""
    build = weylops.reflection if kind == "reflection" else weylops.translation
    d = dim.d
    out = np.zeros((d * d, d * d), dtype=complex)
    for plus, minus, coeff in terms:
        out += coeff * conjugation_rows(build(dim, plus), build(dim, minus))
    return out
