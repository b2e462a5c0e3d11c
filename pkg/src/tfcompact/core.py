"""Sampled signals on a symmetric time interval.

A :class:`Signal` is a complex vector of samples ``f(t_k)`` on the lattice
``t_k = -T + k * step`` of a :class:`TimeGrid`.  Outside ``[-T, T)`` a signal
is taken to be zero, so translations fill the exposed edge with zeros
instead of wrapping around.

Analytic families (Gaussian, Hermite functions, the Mexican hat and their
translates, modulates and dilates) are described by
:class:`AnalyticSignalSpec` and sampled exactly by :func:`make_signal`.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from numpy.polynomial.hermite import hermval

from .errors import SpecError

__all__ = [
    "TimeGrid",
    "Signal",
    "AnalyticSignalSpec",
    "make_signal",
    "lp_norm",
    "translate_samples",
    "normalize",
    "lattice_index",
    "read_signal_csv",
]

# relative slack when deciding whether a real number sits on a lattice
LATTICE_RTOL = 1e-9


def lattice_index(value, step, what="value"):
    """Return ``value / step`` as an int, raising if it is not on the lattice."""
    ratio = value / step
    k = int(round(ratio))
    if abs(ratio - k) > LATTICE_RTOL * max(1.0, abs(ratio)):
        raise SpecError(f"{what}={value!r} is not a multiple of the lattice step {step!r}")
    return k


@dataclass(frozen=True)
class TimeGrid:
    """Uniform lattice on ``[-half_width, half_width)``."""

    half_width: float
    step: float

    def __post_init__(self):
        if not (self.half_width > 0 and self.step > 0):
            raise SpecError("half_width and step must be positive")
        count = lattice_index(2 * self.half_width, self.step, "2*half_width")
        if count < 8 or count % 2:
            raise SpecError(f"sample count must be even and >= 8, got {count}")

    @property
    def count(self) -> int:
        return int(round(2 * self.half_width / self.step))

    @property
    def t(self) -> np.ndarray:
        return -self.half_width + self.step * np.arange(self.count)

    @property
    def nyquist(self) -> float:
        return 0.5 / self.step


@dataclass(frozen=True)
class AnalyticSignalSpec:
    """Recipe for a signal.

    ``kind`` is one of ``gaussian``, ``hermite``, ``mexican_hat``,
    ``gaussian_derivative``, ``zero``, ``translate``, ``modulate``, ``dilate``
    or ``samples``.  The wrapper kinds
    apply ``T_x0``, ``M_omega0`` or ``D_s0`` to ``base``.  ``amplitude``
    multiplies the whole function.
    """

    kind: str
    n: int = 0
    x0: float = 0.0
    omega0: float = 0.0
    s0: float = 1.0
    base: AnalyticSignalSpec | None = None
    path: str | None = None
    amplitude: complex = 1.0

    KINDS = ("gaussian", "hermite", "mexican_hat", "gaussian_derivative", "zero", "translate", "modulate", "dilate", "samples")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise SpecError(f"unknown signal kind {self.kind!r}", key="kind")
        if self.kind in ("hermite", "gaussian_derivative") and (int(self.n) != self.n or self.n < 0):
            raise SpecError(f"{self.kind} order must be a non-negative integer, got {self.n!r}", key="n")
        if self.kind == "dilate" and not self.s0 > 0:
            raise SpecError(f"dilation must be positive, got {self.s0!r}", key="s0")
        if self.kind in ("translate", "modulate", "dilate") and self.base is None:
            raise SpecError(f"{self.kind} needs a base signal", key="base")
        if self.kind == "samples" and not self.path:
            raise SpecError("samples needs a path", key="path")
        if not np.isfinite(complex(self.amplitude)):
            raise SpecError("amplitude must be finite", key="amplitude")

    # constructors -----------------------------------------------------
    @classmethod
    def gaussian(cls):
        return cls("gaussian")

    @classmethod
    def hermite(cls, n):
        return cls("hermite", n=n)

    @classmethod
    def mexican_hat(cls):
        return cls("mexican_hat")

    @classmethod
    def gaussian_derivative(cls, n):
        """Even-order members are real, even wavelets with ``n`` vanishing moments."""
        return cls("gaussian_derivative", n=n)

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def samples(cls, path):
        return cls("samples", path=str(path))

    def translate(self, x0):
        return AnalyticSignalSpec("translate", x0=float(x0), base=self)

    def modulate(self, omega0):
        return AnalyticSignalSpec("modulate", omega0=float(omega0), base=self)

    def dilate(self, s0):
        return AnalyticSignalSpec("dilate", s0=float(s0), base=self)

    def scaled(self, c):
        return replace(self, amplitude=complex(self.amplitude) * c)

    # evaluation ---------------------------------------------------------
    @property
    def is_analytic(self) -> bool:
        if self.kind == "samples":
            return False
        return self.base is None or self.base.is_analytic

    def __call__(self, t):
        """Evaluate the function at arbitrary real points ``t``."""
        if not self.is_analytic:
            raise SpecError("sampled signals can only be evaluated on their grid")
        t = np.asarray(t, dtype=float)
        kind = self.kind
        if kind == "gaussian":
            out = np.exp(-np.pi * t * t)
        elif kind == "hermite":
            out = _hermite_function(int(self.n), t)
        elif kind == "mexican_hat":
            out = (1.0 - 2.0 * np.pi * t * t) * np.exp(-np.pi * t * t)
        elif kind == "gaussian_derivative":
            # (-1)^(n//2) 2^-(n//2) H_n(sqrt(pi) t) e^{-pi t^2}; n = 2 is the Mexican hat
            n = int(self.n)
            coef = np.zeros(n + 1)
            coef[n] = (-1) ** (n // 2) / 2 ** (n // 2)
            out = hermval(math.sqrt(np.pi) * t, coef) * np.exp(-np.pi * t * t)
        elif kind == "zero":
            out = np.zeros_like(t)
        elif kind == "translate":
            out = self.base(t - self.x0)
        elif kind == "modulate":
            out = np.exp(2j * np.pi * self.omega0 * t) * self.base(t)
        else:  # dilate
            out = self.base(t / self.s0) / math.sqrt(self.s0)
        return complex(self.amplitude) * np.asarray(out, dtype=complex)


def _hermite_function(n, t):
    # L2-normalised h_n(t) = (2 pi)^(1/4) psi_n(sqrt(2 pi) t), three-term recurrence
    x = math.sqrt(2 * np.pi) * t
    h_prev = np.zeros_like(x)
    h = 2 ** 0.25 * np.exp(-np.pi * t * t)
    for k in range(n):
        h_prev, h = h, math.sqrt(2.0 / (k + 1)) * x * h - math.sqrt(k / (k + 1)) * h_prev
    return h


@dataclass(frozen=True, eq=False)
class Signal:
    """Samples of a function on a :class:`TimeGrid`.

    ``spec`` is kept when the signal came from an analytic recipe so that
    transforms which need off-lattice values (dilations) can use it.
    """

    grid: TimeGrid
    values: np.ndarray
    spec: AnalyticSignalSpec | None = field(default=None, repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.count,):
            raise SpecError(f"expected {self.grid.count} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise SpecError("signal values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def t(self):
        return self.grid.t

    def scaled(self, c):
        spec = self.spec.scaled(c) if self.spec is not None else None
        return Signal(self.grid, self.values * c, spec)

    def _check_same_grid(self, other):
        if other.grid != self.grid:
            raise SpecError("signals live on different grids")

    def __add__(self, other):
        self._check_same_grid(other)
        return Signal(self.grid, self.values + other.values)

    def __sub__(self, other):
        self._check_same_grid(other)
        return Signal(self.grid, self.values - other.values)

    def __mul__(self, c):
        return self.scaled(c)

    __rmul__ = __mul__


def read_signal_csv(path, grid):
    """Read ``t,re[,im]`` rows (header optional) into a :class:`Signal`."""
    rows = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or not "".join(row).strip():
                continue
            try:
                nums = [float(c) for c in row]
            except ValueError:
                if i == 0 and not rows:
                    continue  # header
                raise SpecError(f"{path}: non-numeric row {i + 1}") from None
            if len(nums) not in (2, 3):
                raise SpecError(f"{path}: row {i + 1} must have 2 or 3 columns")
            rows.append(nums if len(nums) == 3 else nums + [0.0])
    if len(rows) != grid.count:
        raise SpecError(f"{path}: {len(rows)} rows, grid expects {grid.count}")
    data = np.asarray(rows)
    return Signal(grid, data[:, 1] + 1j * data[:, 2])


def make_signal(spec, grid, base_dir=None):
    """Sample ``spec`` on ``grid``.

    Analytic recipes are evaluated exactly at the lattice points.  Recipes
    built on sampled data apply translations on the lattice and modulations
    pointwise; dilating sampled data is refused.
    """
    if spec.is_analytic:
        return Signal(grid, spec(grid.t), spec)
    if spec.kind == "samples":
        path = Path(spec.path)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return read_signal_csv(path, grid).scaled(spec.amplitude)
    base = make_signal(spec.base, grid, base_dir)
    if spec.kind == "translate":
        out = translate_samples(base, spec.x0)
    elif spec.kind == "modulate":
        out = Signal(grid, base.values * np.exp(2j * np.pi * spec.omega0 * grid.t))
    else:
        raise SpecError("dilation of sampled data would need interpolation", key="s0")
    return out.scaled(spec.amplitude)


def lp_norm(f, p):
    """``(sum_k |f_k|^p * step)^(1/p)``."""
    if not p >= 1:
        raise SpecError(f"p must be >= 1, got {p!r}")
    a = np.abs(f.values)
    scale = a.max(initial=0.0)
    if scale == 0.0:
        return 0.0
    # np.sum uses pairwise summation on contiguous data: order is fixed
    return float(scale * (np.sum((a / scale) ** p) * f.grid.step) ** (1.0 / p))


def translate_samples(f, h):
    """Shift samples by ``h`` (a lattice multiple) with zero fill."""
    k = lattice_index(h, f.grid.step, "shift")
    n = f.grid.count
    out = np.zeros(n, dtype=complex)
    if k >= 0:
        if k < n:
            out[k:] = f.values[: n - k]
    elif -k < n:
        out[: n + k] = f.values[-k:]
    return Signal(f.grid, out)


def normalize(f):
    """Return ``f / ||f||_2``."""
    norm = lp_norm(f, 2)
    if norm == 0.0:
        raise SpecError("cannot normalise the zero signal")
    return f.scaled(1.0 / norm)
