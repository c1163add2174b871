"""Integer lattice arithmetic and exact root-of-unity phase algebra.

Everything downstream works on the periodic integer lattice Z_{2d} x Z_{2d}.
Phases are always tau = exp(i*pi/d) raised to integer powers, so they are
evaluated through a precomputed 2d-entry table with exponents reduced mod 2d
in integer arithmetic.  Repeated group-law compositions therefore never
accumulate phase drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np


@dataclass(frozen=True)
class TorusDim:
    """Hilbert dimension d together with its derived torus constants."""

    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d}")

    @property
    def two_d(self) -> int:
        return 2 * self.d

    @property
    def hbar(self) -> float:
        """Effective Planck constant on the unit torus, 1/(2*pi*d)."""
        return 1.0 / (2.0 * math.pi * self.d)

    @cached_property
    def tau_table(self) -> np.ndarray:
        """tau^k for k = 0 .. 2d-1, with exact entries at the axes.

        tau = exp(i*pi/d).  Entries at k = 0, d (and d/2, 3d/2 for even d)
        are patched to the exact values 1, -1 (and +-i) so that identities
        and signs are reproduced without rounding noise.
        """
        k = np.arange(self.two_d)
        table = np.exp(1j * np.pi * k / self.d)
        table[0] = 1.0
        table[self.d] = -1.0
        if self.d % 2 == 0:
            table[self.d // 2] = 1.0j
            table[3 * self.d // 2] = -1.0j
        table.setflags(write=False)
        return table

    @cached_property
    def eta_table(self) -> np.ndarray:
        """eta^k = tau^(2k) for k = 0 .. d-1 (period d)."""
        table = self.tau_table[(2 * np.arange(self.d)) % self.two_d].copy()
        table.setflags(write=False)
        return table


@dataclass(frozen=True)
class PhasePoint:
    """Integer lattice label (q, p); physical coordinates are (q, p)/2d."""

    q: int
    p: int

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(self.q + other.q, self.p + other.p)

    def __sub__(self, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(self.q - other.q, self.p - other.p)

    def __neg__(self) -> "PhasePoint":
        return PhasePoint(-self.q, -self.p)

    def scaled(self, m: int) -> "PhasePoint":
        return PhasePoint(m * self.q, m * self.p)


PointLike = "PhasePoint | tuple[int, int]"


def as_point(x) -> PhasePoint:
    """Coerce a PhasePoint or (q, p) pair to a PhasePoint."""
    if isinstance(x, PhasePoint):
        return x
    q, p = x
    return PhasePoint(int(q), int(p))


def reduce_point(dim: TorusDim, x) -> PhasePoint:
    """Canonical representative of a lattice label in [0, 2d) x [0, 2d)."""
    pt = as_point(x)
    return PhasePoint(pt.q % dim.two_d, pt.p % dim.two_d)


def symplectic(a, b) -> int:
    """Symplectic form of two lattice points: b.q*a.p - b.p*a.q.

    Plain integer arithmetic; reduce mod 2d only when exponentiating tau.
    """
    a = as_point(a)
    b = as_point(b)
    return b.q * a.p - b.p * a.q


def tau_pow(dim: TorusDim, k: int) -> complex:
    """tau^k with the exponent reduced mod 2d; exact at k = 0 and k = d."""
    return complex(dim.tau_table[int(k) % dim.two_d])


def eta_pow(dim: TorusDim, k: int) -> complex:
    """eta^k = tau^(2k), period d."""
    return complex(dim.eta_table[int(k) % dim.d])


def delta_mod(a: int, m: int) -> int:
    """1 if a is divisible by m, else 0."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    return 1 if int(a) % m == 0 else 0


def tau_phase_array(dim: TorusDim, exponents: np.ndarray) -> np.ndarray:
    """Table lookup tau^E for an integer exponent array of any shape."""
    return dim.tau_table[np.mod(exponents, dim.two_d)]


def eta_phase_array(dim: TorusDim, exponents: np.ndarray) -> np.ndarray:
    """Table lookup eta^E = tau^(2E) for an integer exponent array."""
    return dim.eta_table[np.mod(exponents, dim.d)]
