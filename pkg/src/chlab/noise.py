"""Mass-free Q-Wiener noise in the cosine eigenbasis.

The process is W(t) = sum_k alpha_k beta_k(t) phi_k over the L2-orthonormal
cosine eigenfunctions, with independent scalar Brownian motions beta_k and
alpha_(0,0) = 0 so every realization has exactly zero spatial mean.  The
canonical coefficient family is the power law

    alpha_k = a * (1 + |k|^2)^(-r/2),   k = (kx, ky) != (0, 0),

which spans white noise (r = 0) through smooth forcing and keeps the trace
condition on Laplace^-1 Q checkable.  Modes are truncated at the grid
Nyquist: unresolved modes cannot be represented (modeling cutoff).

Sampling uses the counter-based Philox generator keyed by
(master seed, ensemble member) with the step index in the counter block,
so identical (seed, member, step) reproduce identical increments regardless
of thread scheduling.  Within a step, modes are drawn as one block in fixed
row-major order, which stands in for a per-mode key.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .domain import DomainGrid, SpectralField

__all__ = ["NoiseSpec", "QWienerSampler", "TraceDiagnostics", "trace_diagnostics"]

# Partial sums at K_max/2 vs K_max may grow by at most this relative amount
# before the truncated trace is flagged divergent.
TRACE_RATIO_THRESHOLD = 0.02


@dataclass(frozen=True)
class NoiseSpec:
    """Coefficients and seeding of the Q-Wiener process."""

    amplitude: float = 1.0
    decay: float = 1.0
    seed: int = 0
    kmax: int | None = None
    table: np.ndarray | None = None

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if self.decay < 0:
            raise ValueError(f"decay exponent must be >= 0, got {self.decay}")
        if self.kmax is not None and self.kmax < 0:
            raise ValueError(f"kmax must be >= 0, got {self.kmax}")

    def alpha(self, grid: DomainGrid) -> np.ndarray:
        """Coefficient table alpha_k on the grid's mode lattice."""
        if self.table is not None:
            a = np.asarray(self.table, dtype=float)
            if a.shape != grid.shape:
                raise ValueError(f"table shape {a.shape} != grid {grid.shape}")
            if not np.all(np.isfinite(a)) or np.any(a < 0):
                raise ValueError("explicit coefficient table must be finite and >= 0")
            if a[0, 0] != 0.0:
                raise ValueError("alpha_(0,0) must be 0 (mass-free noise)")
            return a.copy()
        kx = np.arange(grid.nx)
        ky = np.arange(grid.ny)
        k2 = (kx**2)[:, None] + (ky**2)[None, :]
        a = self.amplitude * (1.0 + k2) ** (-self.decay / 2.0)
        a[0, 0] = 0.0
        if self.kmax is not None:
            cut = np.maximum(kx[:, None], ky[None, :]) > self.kmax
            a[cut] = 0.0
        return a


@dataclass(frozen=True)
class TraceDiagnostics:
    """Truncated traces of Q and Laplace^-1 Q with convergence verdicts."""

    trace_q: float
    trace_invlap_q: float
    trace_q_finite: bool
    trace_invlap_q_finite: bool
    trace_q_growth: float
    trace_invlap_q_growth: float
    kmax: int


def _partial_sums(weights: np.ndarray, kmax: int) -> tuple[float, float]:
    """Sums of `weights` over modes with max(kx,ky) <= kmax/2 and <= kmax."""
    nx, ny = weights.shape
    kx = np.arange(nx)[:, None]
    ky = np.arange(ny)[None, :]
    kk = np.maximum(kx, ky)
    half = float(np.sum(weights[kk <= kmax // 2]))
    full = float(np.sum(weights[kk <= kmax]))
    return half, full


def trace_diagnostics(spec: NoiseSpec, grid: DomainGrid) -> TraceDiagnostics:
    """Truncated trace(Q) and trace(Laplace^-1 Q) with a ratio-test verdict.

    A trace is flagged finite when the partial sum over modes up to K_max
    grows by at most TRACE_RATIO_THRESHOLD relative to the partial sum up
    to K_max/2; logarithmic divergences at desk-scale K_max exceed that.
    """
    a = spec.alpha(grid)
    kmax = spec.kmax if spec.kmax is not None else min(grid.nx, grid.ny) - 1
    a2 = a**2
    a2_over_mu = a2 / grid._mu_safe
    a2_over_mu[0, 0] = 0.0

    def verdict(weights):
        half, full = _partial_sums(weights, kmax)
        if full == 0.0:
            return full, True, 0.0
        growth = full / half - 1.0 if half > 0 else np.inf
        return full, bool(growth <= TRACE_RATIO_THRESHOLD), float(growth)

    tq, tq_ok, tq_growth = verdict(a2)
    ti, ti_ok, ti_growth = verdict(a2_over_mu)
    return TraceDiagnostics(
        trace_q=tq,
        trace_invlap_q=ti,
        trace_q_finite=tq_ok,
        trace_invlap_q_finite=ti_ok,
        trace_q_growth=tq_growth,
        trace_invlap_q_growth=ti_growth,
        kmax=kmax,
    )


class QWienerSampler:
    """Seeded increment generator for one ensemble member.

    Logically stateless: increments are a pure function of
    (spec.seed, member, step_index), so samplers can be used concurrently
    across ensemble members without shared mutable state.
    """

    def __init__(self, spec: NoiseSpec, grid: DomainGrid, member: int = 0):
        self.spec = spec
        self.grid = grid
        self.member = int(member)
        self._alpha = spec.alpha(grid)
        self._alpha.setflags(write=False)

    def increment_coeffs(self, step_index: int, dt: float) -> np.ndarray:
        """Spectral coefficients of Delta W = W(t+dt) - W(t)."""
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        rng = np.random.Generator(
            np.random.Philox(
                key=np.array([self.spec.seed, self.member], dtype=np.uint64),
                counter=np.array([0, 0, 0, int(step_index)], dtype=np.uint64),
            )
        )
        xi = rng.standard_normal(self.grid.shape)
        c = self._alpha * np.sqrt(dt) * xi
        c[0, 0] = 0.0
        return c

    def increment(self, step_index: int, dt: float) -> SpectralField:
        return SpectralField.from_coeffs(self.grid, self.increment_coeffs(step_index, dt))
