"""Time-frequency shifts and the short-time Fourier transform.

Conventions::

    M_w T_x g(t) = exp(2 pi i w t) g(t - x)
    S_g f(x, w)  = <f, M_w T_x g> = int f(t) conj(g(t - x)) exp(-2 pi i w t) dt

The time-frequency shift attached to a point ``(x, w, tau)`` of the reduced
Heisenberg group is ``tau * T_x M_w``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core import Signal, lattice_index, lp_norm, translate_samples
from .errors import PreconditionError, SpecError
from .fields import CoefField, field_l2

__all__ = [
    "HPoint",
    "TFGrid",
    "tf_shift",
    "heisenberg_compose",
    "stft",
    "istft",
    "field_l2",
]

# rows per block in the vectorised transforms, bounds temporary memory
_BLOCK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class HPoint:
    """Element ``(x, omega, tau)`` of the reduced Heisenberg group, ``|tau| = 1``."""

    x: float
    omega: float
    tau: complex = 1.0

    def __post_init__(self):
        if abs(abs(self.tau) - 1.0) > 1e-12:
            raise SpecError(f"tau must be unimodular, got |tau|={abs(self.tau)!r}")


@dataclass(frozen=True)
class TFGrid:
    """Lattice ``x_j = -X + j*x_step``, ``omega_k = -W + k*omega_step``."""

    x_half_width: float
    x_step: float
    omega_half_width: float
    omega_step: float

    def __post_init__(self):
        for name in ("x_half_width", "x_step", "omega_half_width", "omega_step"):
            if not getattr(self, name) > 0:
                raise SpecError(f"{name} must be positive", key=name)
        for half, step in (("x_half_width", "x_step"), ("omega_half_width", "omega_step")):
            n = lattice_index(2 * getattr(self, half), getattr(self, step), half)
            if n < 8 or n % 2:
                raise SpecError(f"{half}/{step} gives {n} points; need an even count >= 8", key=half)

    @property
    def x(self):
        n = int(round(2 * self.x_half_width / self.x_step))
        return -self.x_half_width + self.x_step * np.arange(n)

    @property
    def omega(self):
        n = int(round(2 * self.omega_half_width / self.omega_step))
        return -self.omega_half_width + self.omega_step * np.arange(n)

    @property
    def cell_measure(self):
        return self.x_step * self.omega_step


def tf_shift(f, p):
    """Apply ``tau * T_x M_omega`` to ``f`` (lattice translation, zero fill)."""
    modulated = Signal(f.grid, f.values * np.exp(2j * np.pi * p.omega * f.grid.t))
    shifted = translate_samples(modulated, p.x)
    return Signal(f.grid, p.tau * shifted.values)


def heisenberg_compose(a, b):
    """Group product matching :func:`tf_shift`.

    ``tau_a T_xa M_wa tau_b T_xb M_wb = tau_a tau_b e^{2 pi i xb wa} T_{xa+xb} M_{wa+wb}``
    """
    phase = cmath.exp(2j * np.pi * b.x * a.omega)
    tau = complex(a.tau) * complex(b.tau) * phase
    return HPoint(a.x + b.x, a.omega + b.omega, tau / abs(tau))


def _tf_layout(time_grid, grid):
    """Shared lattice bookkeeping for the forward and adjoint transforms."""
    step = time_grid.step
    if grid.omega_half_width > time_grid.nyquist * (1 + 1e-12):
        raise PreconditionError(
            f"frequency range {grid.omega_half_width} exceeds the Nyquist bound {time_grid.nyquist}")
    period = lattice_index(1.0, grid.omega_step * step, "1/(omega_step*step)")
    x_idx = np.array([lattice_index(x + time_grid.half_width, step, "x lattice point") for x in grid.x])
    k_idx = np.array([lattice_index(w, grid.omega_step, "omega lattice point") for w in grid.omega])
    return period, x_idx, k_idx


def _shifted_rows(g, x_idx):
    """Rows ``g(t_n - x_j)`` for the lattice offsets ``x_idx`` (as sample indices)."""
    n = g.size
    padded = np.zeros(3 * n, dtype=complex)
    padded[n:2 * n] = g
    # row j, column m holds g[m - (x_idx_j - x_idx_0)] where x_idx_0 corresponds to t = -T
    offs = np.clip(x_idx, -n, 2 * n)
    cols = np.arange(n)[None, :] - offs[:, None] + n
    valid = (cols >= 0) & (cols < 3 * n)
    out = np.zeros(cols.shape, dtype=complex)
    out[valid] = padded[cols[valid]]
    return out


def stft(f, g, grid, method="fft"):
    """Short-time Fourier transform of ``f`` with window ``g`` on ``grid``.

    ``method="fft"`` folds each windowed product to one period of the
    frequency lattice and applies an FFT; ``method="direct"`` evaluates the
    defining sum.  Both give

        values[j, k] = sum_n f(t_n) conj(g(t_n - x_j)) exp(-2 pi i omega_k t_n) * step
    """
    if f.grid != g.grid:
        raise SpecError("signal and window live on different time grids")
    tg = f.grid
    period, x_idx, k_idx = _tf_layout(tg, grid)
    # x_idx is the sample index of x_j, so t_n - x_j is sample n - x_idx_j + N/2
    shifts = x_idx - tg.count // 2
    n = tg.count
    omega = grid.omega
    out = np.empty((len(x_idx), len(omega)), dtype=complex)
    block = max(1, _BLOCK_ELEMENTS // n)
    if method == "fft":
        padded_len = -(-n // period) * period
        phase = np.exp(2j * np.pi * omega * tg.half_width) * tg.step
        bins = np.mod(k_idx, period)
        for start in range(0, len(x_idx), block):
            rows = _shifted_rows(g.values, shifts[start:start + block])
            h = np.zeros((rows.shape[0], padded_len), dtype=complex)
            h[:, :n] = f.values[None, :] * np.conj(rows)
            folded = h.reshape(rows.shape[0], -1, period).sum(axis=1)
            out[start:start + block] = np.fft.fft(folded, axis=1)[:, bins] * phase
    elif method == "direct":
        kernel = np.exp(-2j * np.pi * np.outer(tg.t, omega)) * tg.step
        for start in range(0, len(x_idx), block):
            rows = _shifted_rows(g.values, shifts[start:start + block])
            out[start:start + block] = (f.values[None, :] * np.conj(rows)) @ kernel
    else:
        raise SpecError(f"unknown method {method!r}")
    return CoefField(
        kind="tf",
        axes=("x", "omega"),
        coords=(grid.x, omega),
        weights=(np.full(len(x_idx), grid.x_step), np.full(len(omega), grid.omega_step)),
        values=out,
        inner_axis=0,
    )


def tf_grid_of(C):
    """Recover the :class:`TFGrid` a time-frequency field was computed on."""
    if C.kind != "tf":
        raise SpecError("expected a time-frequency field")
    x, w = C.coords
    dx, dw = float(C.weights[0][0]), float(C.weights[1][0])
    return TFGrid(-float(x[0]), dx, -float(w[0]), dw)


def istft(C, g):
    """Adjoint synthesis ``sum_jk C[j,k] M_wk T_xj g * x_step * omega_step``.

    For a window with ``||g||_2 = 1`` this inverts :func:`stft` up to the
    truncation of the coefficient grid.
    """
    tg = g.grid
    norm = lp_norm(g, 2)
    if abs(norm - 1.0) > 1e-8:
        raise PreconditionError(f"synthesis window must have unit L2 norm, got {norm!r}")
    grid = tf_grid_of(C)
    period, x_idx, k_idx = _tf_layout(tg, grid)
    shifts = x_idx - tg.count // 2
    n = tg.count
    reps = -(-n // period)
    bins = np.mod(k_idx, period)
    phase = np.exp(-2j * np.pi * grid.omega * tg.half_width)
    out = np.zeros(n, dtype=complex)
    block = max(1, _BLOCK_ELEMENTS // n)
    for start in range(0, len(x_idx), block):
        coeffs = C.values[start:start + block]
        spec = np.zeros((coeffs.shape[0], period), dtype=complex)
        spec[:, bins] = coeffs * phase
        # sum_k c_k e^{2 pi i k' n / P} = P * ifft
        waves = np.tile(np.fft.ifft(spec, axis=1) * period, (1, reps))[:, :n]
        rows = _shifted_rows(g.values, shifts[start:start + block])
        out += np.sum(waves * rows, axis=0)
    return Signal(tg, out * grid.x_step * grid.omega_step)
