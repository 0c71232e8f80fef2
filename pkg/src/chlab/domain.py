"""Rectangle domain with a Neumann-compatible cosine eigenbasis.

Fields live on cell-centered collocation points of [0,Lx] x [0,Ly].  The
DCT-II / DCT-III pair diagonalizes the Laplacian under homogeneous Neumann
conditions: mode k = (kx, ky) is the sampled eigenfunction
phi_k(x,y) = n_kx n_ky cos(kx pi x / Lx) cos(ky pi y / Ly) with eigenvalue
mu_k = (kx pi / Lx)**2 + (ky pi / Ly)**2 of -Laplace.

Normalization convention (fixed here once, asserted by the unit tests):
spectral coefficients are taken w.r.t. the L2(D)-orthonormal eigenfunctions
phi_k, i.e. coeffs = sqrt(cell_area) * dctn(values, type=2, norm="ortho").
Consequences used throughout the package:

* ||u||_L2**2  = sum(coeffs**2)                    (Parseval, constant 1)
* mean(u)      = coeffs[0, 0] / sqrt(Lx * Ly)
* |u|_H1**2    = sum(mu * coeffs**2)               (seminorm)
* ||u||_Hm1**2 = sum(coeffs[k != 0]**2 / mu[k != 0])   (mean-zero u only)

The fractional Laplacian power (-Laplace)**s multiplies coefficients by
mu**s.  The k = 0 mode is in the kernel: it is annihilated for s > 0,
kept for s = 0, and requires a mean-zero input for s < 0.
"""

from __future__ import annotations

import numpy as np
from scipy.fft import dctn, idctn

from .errors import MeanNotZero, NonFiniteField

__all__ = [
    "DomainGrid",
    "SpectralField",
    "laplacian_power",
    "hminus1_norm",
    "h1_seminorm",
    "lp_norm",
]


class DomainGrid:
    """Cell-centered Nx x Ny collocation grid on the rectangle [0,Lx] x [0,Ly]."""

    def __init__(self, nx: int, ny: int, lx: float = 1.0, ly: float = 1.0):
        if nx < 8 or ny < 8:
            raise ValueError(f"grid must be at least 8x8, got {nx}x{ny}")
        if lx <= 0.0 or ly <= 0.0:
            raise ValueError(f"domain lengths must be positive, got {lx}, {ly}")
        self.nx = int(nx)
        self.ny = int(ny)
        self.lx = float(lx)
        self.ly = float(ly)
        self.hx = self.lx / self.nx
        self.hy = self.ly / self.ny
        self.cell_area = self.hx * self.hy
        self.area = self.lx * self.ly
        # collocation points at cell centers
        self.x = (np.arange(self.nx) + 0.5) * self.hx
        self.y = (np.arange(self.ny) + 0.5) * self.hy
        kx = np.arange(self.nx) * np.pi / self.lx
        ky = np.arange(self.ny) * np.pi / self.ly
        self.mu = (kx**2)[:, None] + (ky**2)[None, :]
        self.mu.setflags(write=False)
        # mu with the zero mode masked, for safe division
        self._mu_safe = self.mu.copy()
        self._mu_safe[0, 0] = 1.0
        self._mu_safe.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    def meshgrid(self):
        """Return (X, Y) coordinate arrays of shape (nx, ny)."""
        return np.meshgrid(self.x, self.y, indexing="ij")

    def __eq__(self, other):
        return (
            isinstance(other, DomainGrid)
            and self.shape == other.shape
            and self.lx == other.lx
            and self.ly == other.ly
        )

    def __hash__(self):
        return hash((self.nx, self.ny, self.lx, self.ly))

    def __repr__(self):
        return f"DomainGrid({self.nx}x{self.ny}, Lx={self.lx}, Ly={self.ly})"


def _check_finite(arr, what):
    if not np.all(np.isfinite(arr)):
        bad = int(np.sum(~np.isfinite(arr)))
        raise NonFiniteField(f"{what} contains {bad} non-finite entries")


class SpectralField:
    """Scalar field stored in nodal and/or spectral form, synchronized lazily.

    Instances are value-semantic: operations return new fields and the
    cached representations are never mutated after they are computed, so
    fields are safe to share between threads.
    """

    def __init__(self, grid: DomainGrid, values=None, coeffs=None):
        if values is None and coeffs is None:
            raise ValueError("need nodal values or spectral coefficients")
        self.grid = grid
        self._values = None
        self._coeffs = None
        if values is not None:
            values = np.asarray(values, dtype=float)
            if values.shape != grid.shape:
                raise ValueError(f"values shape {values.shape} != grid {grid.shape}")
            _check_finite(values, "nodal values")
            self._values = values.copy()
            self._values.setflags(write=False)
        if coeffs is not None:
            coeffs = np.asarray(coeffs, dtype=float)
            if coeffs.shape != grid.shape:
                raise ValueError(f"coeffs shape {coeffs.shape} != grid {grid.shape}")
            _check_finite(coeffs, "spectral coefficients")
            self._coeffs = coeffs.copy()
            self._coeffs.setflags(write=False)

    @classmethod
    def from_values(cls, grid: DomainGrid, values) -> "SpectralField":
        return cls(grid, values=values)

    @classmethod
    def from_coeffs(cls, grid: DomainGrid, coeffs) -> "SpectralField":
        return cls(grid, coeffs=coeffs)

    @classmethod
    def constant(cls, grid: DomainGrid, value: float) -> "SpectralField":
        return cls(grid, values=np.full(grid.shape, float(value)))

    @classmethod
    def from_function(cls, grid: DomainGrid, fn) -> "SpectralField":
        X, Y = grid.meshgrid()
        return cls(grid, values=fn(X, Y))

    @property
    def values(self) -> np.ndarray:
        """Nodal values at the cell centers (read-only array)."""
        if self._values is None:
            v = idctn(
                self._coeffs / np.sqrt(self.grid.cell_area), type=2, norm="ortho"
            )
            v.setflags(write=False)
            self._values = v
        return self._values

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficients w.r.t. the L2-orthonormal cosine basis (read-only)."""
        if self._coeffs is None:
            c = np.sqrt(self.grid.cell_area) * dctn(self._values, type=2, norm="ortho")
            c.setflags(write=False)
            self._coeffs = c
        return self._coeffs

    def mean(self) -> float:
        return float(self.coeffs[0, 0] / np.sqrt(self.grid.area))

    def l2_norm(self) -> float:
        if self._coeffs is not None:
            return float(np.sqrt(np.sum(self._coeffs**2)))
        return float(np.sqrt(self.grid.cell_area * np.sum(self._values**2)))

    def is_mean_zero(self, scale: float | None = None) -> bool:
        """Mean-zero test with the fixed tolerance 1e-12 * (1 + ||u||_L2)."""
        if scale is None:
            scale = self.l2_norm()
        return abs(self.mean()) <= 1e-12 * (1.0 + scale)

    def __add__(self, other):
        self._check_same_grid(other)
        return SpectralField(self.grid, coeffs=self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_same_grid(other)
        return SpectralField(self.grid, coeffs=self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return SpectralField(self.grid, coeffs=float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self):
        return SpectralField(self.grid, coeffs=-self.coeffs)

    def _check_same_grid(self, other):
        if self.grid != other.grid:
            raise ValueError("fields live on different grids")

    def __repr__(self):
        return f"SpectralField({self.grid!r}, mean={self.mean():.3g})"


def laplacian_power(field: SpectralField, s: float) -> SpectralField:
    """Apply (-Laplace)**s in the cosine eigenbasis.

    s > 0 annihilates the constant mode; s < 0 requires a mean-zero field
    (raises MeanNotZero otherwise) and inverts on the mean-zero complement.
    """
    if s == 0:
        return field
    c = field.coeffs
    if s < 0 and not field.is_mean_zero():
        raise MeanNotZero(
            f"(-Laplace)**{s} needs a mean-zero field, mean={field.mean():.3e}"
        )
    out = c * field.grid._mu_safe**s
    out[0, 0] = 0.0
    return SpectralField(field.grid, coeffs=out)


def hminus1_norm(field: SpectralField) -> float:
    """H^-1 norm ||(-Laplace)^(-1/2) u||_L2 of a mean-zero field."""
    if not field.is_mean_zero():
        raise MeanNotZero(f"H^-1 norm needs a mean-zero field, mean={field.mean():.3e}")
    c = field.coeffs
    val = np.sum(c**2 / field.grid._mu_safe) - c[0, 0] ** 2
    return float(np.sqrt(max(val, 0.0)))


def h1_seminorm(field: SpectralField) -> float:
    """H^1 seminorm ||grad u||_L2 via the mu-weighted coefficient sum."""
    return float(np.sqrt(np.sum(field.grid.mu * field.coeffs**2)))


def lp_norm(field: SpectralField, p: float) -> float:
    """L^p norm by nodal quadrature with cell weight (Lx Ly)/(Nx Ny)."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    v = np.abs(field.values)
    return float((field.grid.cell_area * np.sum(v**p)) ** (1.0 / p))
