"""Weighted mixed norms on coefficient fields.

    ||F||_{L^{p,q}_m} = ( sum_outer ( sum_inner |F|^p m^p w_inner )^{q/p} w_outer )^{1/q}

The inner axis is ``x`` for time-frequency and time-scale fields and
``theta`` for Fock-plane fields.  Every norm built here is solid and has
absolutely continuous norm for finite ``p, q``; mixed norms with moderate
weights also satisfy the convolution relation needed by the tightness
criterion, which is assumed rather than checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ScaleRangeError, SpecError
from .stft import stft
from .wavelet import cwt

__all__ = [
    "WeightSpec",
    "NormSpec",
    "mixed_norm",
    "modulation_norm",
    "besov_norm",
    "scale_boundary_fraction",
]

_DEFAULT_INNER = {"tf": "x", "scale": "x", "fock": "theta"}


@dataclass(frozen=True)
class WeightSpec:
    """``constant``, ``tf_polynomial`` ``(1 + |(x, w)|)^a`` or ``scale_power`` ``s^-(alpha + 1/2 - 1/q)``."""

    kind: str = "constant"
    a: float = 0.0
    alpha: float = 0.0
    q: float = 2.0

    def __post_init__(self):
        if self.kind not in ("constant", "tf_polynomial", "scale_power"):
            raise SpecError(f"unknown weight kind {self.kind!r}", key="kind")
        if self.kind == "scale_power" and not self.q >= 1:
            raise SpecError("scale_power needs q >= 1", key="q")

    @classmethod
    def constant(cls):
        return cls("constant")

    @classmethod
    def tf_polynomial(cls, a):
        return cls("tf_polynomial", a=float(a))

    @classmethod
    def scale_power(cls, alpha, q):
        return cls("scale_power", alpha=float(alpha), q=float(q))

    @property
    def exponent(self):
        """Power of ``s`` in the scale weight (d = 1)."""
        return -(self.alpha + 0.5 - 1.0 / self.q)

    def __call__(self, C):
        """Weight evaluated at the cell centres of ``C``."""
        if self.kind == "constant":
            m = np.ones(C.shape)
        elif self.kind == "tf_polynomial":
            if C.kind != "tf":
                raise SpecError("tf_polynomial weight needs a time-frequency field")
            m = (1.0 + np.hypot(C.mesh("x"), C.mesh("omega"))) ** self.a
        else:
            if C.kind != "scale":
                raise SpecError("scale_power weight needs a time-scale field")
            m = C.mesh("s") ** self.exponent
        if not np.all(np.isfinite(m)) or not np.all(m > 0):
            raise SpecError("weight is not finite and positive on the grid")
        return m


@dataclass(frozen=True)
class NormSpec:
    """Exponents, weight and (optionally) the name of the inner axis."""

    p: float = 2.0
    q: float = 2.0
    weight: WeightSpec = WeightSpec()
    inner_axis: str | None = None

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v >= 1):
                raise SpecError(f"{name} must be finite and >= 1, got {v!r}", key=name)


def _inner_index(C, spec):
    name = spec.inner_axis or _DEFAULT_INNER[C.kind]
    return C.axis(name)


def _row_powers(C, spec):
    """Per outer index: ``(sum_inner |F m|^p w_inner)^{q/p} * w_outer`` and the common scale."""
    inner = _inner_index(C, spec)
    a = np.abs(C.values) * spec.weight(C)
    if inner == 0:
        a = a.T
    w_in, w_out = C.weights[inner], C.weights[1 - inner]
    scale = a.max(initial=0.0)
    if scale == 0.0:
        return np.zeros(a.shape[0]), 0.0
    rows = np.sum((a / scale) ** spec.p * w_in[None, :], axis=1)
    return rows ** (spec.q / spec.p) * w_out, scale


def mixed_norm(C, spec):
    """Weighted ``L^{p,q}`` norm of ``C`` (inner axis first)."""
    rows, scale = _row_powers(C, spec)
    if scale == 0.0:
        return 0.0
    return float(scale * np.sum(rows) ** (1.0 / spec.q))


def modulation_norm(f, g, p, q, a, grid):
    """``|| S_g f ||_{L^{p,q}_m}`` with ``m = (1 + |z|)^a``."""
    return mixed_norm(stft(f, g, grid), NormSpec(p, q, WeightSpec.tf_polynomial(a)))


def scale_boundary_fraction(C, spec):
    """Share of ``||C||^q`` carried by the smallest and largest scale rows."""
    if C.kind != "scale":
        raise SpecError("expected a time-scale field")
    rows, scale = _row_powers(C, spec)
    total = np.sum(rows)
    if total == 0.0:
        return 0.0
    s_axis = C.axis("s")
    # rows are indexed by the outer axis, which is s for the default layout
    if _inner_index(C, spec) == s_axis:
        raise SpecError("boundary check needs x as the inner axis")
    return float((rows[0] + rows[-1]) / total)


def besov_norm(f, g, p, q, alpha, grid, max_boundary=1e-3):
    """Homogeneous Besov norm from wavelet coefficients (d = 1).

    Raises :class:`ScaleRangeError` when the extreme scale rows carry more
    than ``max_boundary`` of the q-th power of the norm.
    """
    C = cwt(f, g, grid)
    spec = NormSpec(p, q, WeightSpec.scale_power(alpha, q))
    frac = scale_boundary_fraction(C, spec)
    if frac > max_boundary:
        raise ScaleRangeError(
            f"scale range [{grid.s_min}, {grid.s_max}] too narrow: boundary rows carry "
            f"{frac:.2e} of the norm (limit {max_boundary:.0e})")
    return mixed_norm(C, spec)
