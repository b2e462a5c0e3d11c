"""Entire functions in the Bargmann-Fock space of one complex variable.

An :class:`EntireFn` stores coefficients ``c_n`` in the orthonormal basis

    e_n(z) = sqrt(pi^n / n!) z^n

of F^2, so the F^2 norm of a polynomial is the Euclidean norm of its
coefficients.  Fock p-norms

    ||F||_p = ( int |F(z)|^p exp(-p pi |z|^2 / 2) dz )^(1/p)

are computed by polar quadrature on a :class:`FockGrid`: Gauss-Legendre in
the radius and the periodic trapezoid rule in the angle.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PreconditionError, SpecError
from .fields import CoefField

__all__ = [
    "EntireFn",
    "FockGrid",
    "eval_entire",
    "fock_norm",
    "fock_inner",
    "beta_shift",
    "fock_rep_coeff",
    "fock_field",
    "kernel_fn",
]

# largest relative change of a Fock norm the region beyond r_max may cause
TAIL_RTOL = 1e-9
# beta_shift refuses truncations whose omitted F^2 mass exceeds this
TRUNCATION_TOL = 1e-6


def _basis_factors(n):
    """``sqrt(pi^k / k!)`` for ``k = 0..n-1``."""
    k = np.arange(n)
    return np.exp(0.5 * (k * math.log(math.pi) - np.array([math.lgamma(i + 1) for i in k])))


@dataclass(frozen=True, eq=False)
class EntireFn:
    """Polynomial ``sum_n coeffs[n] e_n(z)``; ``degree = len(coeffs) - 1``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.array(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise SpecError("coeffs must be a non-empty sequence", key="coeffs")
        if not np.all(np.isfinite(c)):
            raise SpecError("coefficients must be finite", key="coeffs")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def one(cls):
        return cls([1.0])

    @classmethod
    def basis(cls, n):
        """The orthonormal monomial ``e_n``."""
        c = np.zeros(n + 1, dtype=complex)
        c[n] = 1.0
        return cls(c)

    def monomial_coeffs(self):
        """Coefficients of ``1, z, z^2, ...``."""
        return self.coeffs * _basis_factors(self.coeffs.size)

    def l2(self):
        """F^2 norm, exact by orthonormality."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def __sub__(self, other):
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=complex)
        a[: self.coeffs.size] += self.coeffs
        a[: other.coeffs.size] -= other.coeffs
        return EntireFn(a)

    def to_json(self):
        return {"degree": self.degree, "coeffs": [[c.real, c.imag] for c in self.coeffs.tolist()]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            degree = obj["degree"]
            pairs = obj["coeffs"]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"entire function JSON is missing {exc}", key="coeffs") from None
        if int(degree) != degree or degree < 0:
            raise SpecError("degree must be a non-negative integer", key="degree")
        if len(pairs) != degree + 1:
            raise SpecError(f"degree {degree} needs {degree + 1} coefficients, got {len(pairs)}", key="coeffs")
        try:
            coeffs = [complex(re, im) for re, im in pairs]
        except (TypeError, ValueError):
            raise SpecError("each coefficient must be a [re, im] pair", key="coeffs") from None
        return cls(coeffs)


@dataclass(frozen=True)
class FockGrid:
    """Polar nodes on the disk ``|z| <= r_max``."""

    r_max: float = 4.0
    r_count: int = 512
    theta_count: int = 256

    def __post_init__(self):
        if not self.r_max > 0:
            raise SpecError("r_max must be positive", key="r_max")
        for name in ("r_count", "theta_count"):
            v = getattr(self, name)
            if int(v) != v or v < 8:
                raise SpecError(f"{name} must be an integer >= 8", key=name)

    def _radial(self):
        x, w = _leggauss(int(self.r_count))
        half = 0.5 * self.r_max
        return half * (x + 1.0), half * w

    @property
    def r(self):
        return self._radial()[0]

    @property
    def r_weights(self):
        """Radial weights including the Jacobian ``r``."""
        r, w = self._radial()
        return w * r

    @property
    def theta(self):
        return 2 * np.pi * np.arange(self.theta_count) / self.theta_count

    @property
    def theta_weights(self):
        return np.full(int(self.theta_count), 2 * np.pi / self.theta_count)

    def points(self):
        """Complex nodes, shape ``(r_count, theta_count)``."""
        return self.r[:, None] * np.exp(1j * self.theta)[None, :]


@lru_cache(maxsize=8)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _on_polar(mono, r, theta):
    """``sum_n mono[n] r_i^n e^{i n theta_j}`` as one matrix product."""
    n = np.arange(mono.size)
    radial = (r[:, None] ** n[None, :]) * mono[None, :]
    return radial @ np.exp(1j * np.outer(n, theta))


def _horner(mono, z):
    out = np.zeros_like(z, dtype=complex)
    for c in mono[::-1]:
        out = out * z + c
    return out


def eval_entire(F, z, r_max=FockGrid.r_max):
    """Evaluate ``F`` at ``z`` (scalar or array), refusing ``|z| > 2 r_max``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 2 * r_max):
        raise PreconditionError(f"|z| exceeds the evaluation bound 2*r_max = {2 * r_max}")
    out = _horner(F.monomial_coeffs(), z)
    return out[()] if out.ndim == 0 else out


def _tail_integral(F, p, grid, width=8.0, nodes=64):
    """Quadrature of ``|F|^p e^{-p pi r^2/2}`` over the annulus ``r_max < |z| < r_max + width``."""
    x, w = _leggauss(nodes)
    r = grid.r_max + 0.5 * width * (x + 1.0)
    shell = np.sum(np.abs(_on_polar(F.monomial_coeffs(), r, grid.theta)) ** p, axis=1) * (2 * np.pi / grid.theta_count)
    return float(0.5 * width * np.sum(w * r * shell * np.exp(-p * np.pi * r * r / 2)))


def fock_norm(F, p, grid=FockGrid()):
    """Fock ``p``-norm by polar quadrature.

    Raises
    ------
    PreconditionError
        If the integrand beyond ``r_max`` would change the norm by more
        than ``TAIL_RTOL`` (relative).
    """
    if not (np.isfinite(p) and p >= 1):
        raise SpecError(f"p must be finite and >= 1, got {p!r}", key="p")
    if not np.any(F.coeffs):
        return 0.0
    r = grid.r
    vals = _on_polar(F.monomial_coeffs(), r, grid.theta)
    shell = np.sum(np.abs(vals) ** p, axis=1) * (2 * np.pi / grid.theta_count)
    total = float(np.sum(shell * np.exp(-p * np.pi * r * r / 2) * grid.r_weights))
    # relative change of the p-th root is tail / (p * total) to first order
    tail = _tail_integral(F, p, grid)
    if tail > TAIL_RTOL * p * total:
        raise PreconditionError(
            f"r_max={grid.r_max} too small: tail estimate {tail:.2e} vs integral {total:.2e}")
    return total ** (1.0 / p)


def fock_inner(F, G, grid=FockGrid()):
    """``<F, G> = int F conj(G) exp(-pi |z|^2) dz`` by polar quadrature."""
    r = grid.r
    vals = _on_polar(F.monomial_coeffs(), r, grid.theta) * np.conj(_on_polar(G.monomial_coeffs(), r, grid.theta))
    shell = np.sum(vals, axis=1) * (2 * np.pi / grid.theta_count)
    return complex(np.sum(shell * np.exp(-np.pi * r * r) * grid.r_weights))


def kernel_fn(xi, degree):
    """Truncated reproducing kernel ``K_xi(z) = exp(pi z conj(xi))``.

    In the orthonormal basis its coefficients are ``(sqrt(pi) conj(xi))^n / sqrt(n!)``.
    """
    n = np.arange(degree + 1)
    b = complex(math.sqrt(math.pi) * np.conj(xi))
    lg = np.array([math.lgamma(k + 1) for k in n])
    with np.errstate(divide="ignore"):
        mag = np.exp(n * math.log(abs(b)) - 0.5 * lg) if b != 0 else (n == 0).astype(float)
    phase = np.exp(1j * n * cmath.phase(b))
    return EntireFn(mag * phase)


def beta_shift(F, z, tau=1.0, degree=None, r_max=FockGrid.r_max):
    """Truncated series of ``tau exp(pi z w) F(w - conj z) exp(-pi |z|^2 / 2)``.

    Parameters
    ----------
    F : EntireFn
    z : complex
    tau : complex
        Unimodular phase, applied as a plain multiplier.
    degree : int
        Degree of the returned polynomial; must be at least ``F.degree``.

    Raises
    ------
    PreconditionError
        If the F^2 mass of the dropped coefficients exceeds ``TRUNCATION_TOL``.
    """
    z = complex(z)
    if abs(abs(complex(tau)) - 1.0) > 1e-12:
        raise SpecError("tau must be unimodular", key="tau")
    if abs(z) > 2 * r_max:
        raise PreconditionError(f"|z| exceeds the evaluation bound 2*r_max = {2 * r_max}")
    if degree is None or int(degree) != degree or degree < F.degree:
        raise SpecError(f"degree must be an integer >= {F.degree}", key="degree")
    degree = int(degree)
    # extra terms to measure what the truncation drops; beyond them the
    # exponential series decays faster than any geometric rate
    extended = degree + 64 + int(4 * math.pi * abs(z) ** 2)
    # monomial coefficients of F(w - conj z)
    a = F.monomial_coeffs()
    shift = -np.conj(z)
    p = np.zeros(a.size, dtype=complex)
    for n, an in enumerate(a):
        if an == 0:
            continue
        for j in range(n + 1):
            p[j] += an * math.comb(n, j) * shift ** (n - j)
    # exp(pi z w) = sum (pi z)^k w^k / k!
    k = np.arange(extended + 1)
    lg = np.array([math.lgamma(i + 1) for i in k])
    if z == 0:
        ex = (k == 0).astype(complex)
    else:
        ex = np.exp(k * math.log(math.pi * abs(z)) - lg) * np.exp(1j * k * cmath.phase(z))
    mono = np.convolve(ex, p)[: extended + 1]
    coeffs = mono / _basis_factors(extended + 1) * (complex(tau) * math.exp(-math.pi * abs(z) ** 2 / 2))
    dropped = float(np.sqrt(np.sum(np.abs(coeffs[degree + 1:]) ** 2)))
    if dropped > TRUNCATION_TOL:
        raise PreconditionError(
            f"degree {degree} drops F^2 mass {dropped:.2e} (> {TRUNCATION_TOL:.0e}); raise the degree")
    return EntireFn(coeffs[: degree + 1])


def fock_rep_coeff(F, z, r_max=FockGrid.r_max):
    """``|F(z)| exp(-pi |z|^2 / 2)``, the modulus of ``<F, beta(conj z, 1) 1>``."""
    z = np.asarray(z, dtype=complex)
    out = np.abs(eval_entire(F, z, r_max)) * np.exp(-np.pi * np.abs(z) ** 2 / 2)
    return float(out) if out.ndim == 0 else out


def fock_field(F, grid=FockGrid()):
    """``F(z) exp(-pi |z|^2/2)`` on the polar nodes as a ``fock`` :class:`CoefField`.

    The moduli are :func:`fock_rep_coeff`; with ``p = q`` the mixed norm of
    this field (flat measure ``r dr dtheta``) is the Fock ``p``-norm.
    """
    r = grid.r
    vals = _on_polar(F.monomial_coeffs(), r, grid.theta) * np.exp(-np.pi * r * r / 2)[:, None]
    return CoefField(
        kind="fock",
        axes=("r", "theta"),
        coords=(r, grid.theta),
        weights=(grid.r_weights, grid.theta_weights),
        values=vals,
        inner_axis=1,
    )
