"""Coefficient fields on product grids.

A :class:`CoefField` holds complex values on a two-axis grid together with
per-axis quadrature weights; the weight of one cell is the product of its two
axis weights.  One axis is marked as the inner axis, the one a mixed norm
integrates first.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import SpecError

__all__ = ["CoefField", "field_l2", "format_float"]


def format_float(v):
    return format(float(v), ".17g")


@dataclass(frozen=True, eq=False)
class CoefField:
    """Values ``values[i, j]`` at ``(coords[0][i], coords[1][j])``.

    ``kind`` is ``"tf"`` (axes ``x, omega``), ``"scale"`` (axes ``s, x``) or
    ``"fock"`` (axes ``r, theta``).
    """

    kind: str
    axes: tuple
    coords: tuple
    weights: tuple
    values: np.ndarray
    inner_axis: int

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        shape = tuple(len(c) for c in self.coords)
        if values.shape != shape:
            raise SpecError(f"values shape {values.shape} does not match grid {shape}")
        for w, n in zip(self.weights, shape):
            if np.shape(w) != (n,) or not np.all(np.asarray(w) > 0):
                raise SpecError("axis weights must be positive and match the grid")
        if not np.all(np.isfinite(values)):
            raise SpecError("coefficient values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "coords", tuple(np.asarray(c, dtype=float) for c in self.coords))
        object.__setattr__(self, "weights", tuple(np.asarray(w, dtype=float) for w in self.weights))

    @property
    def shape(self):
        return self.values.shape

    @property
    def cell_measure(self):
        return np.outer(self.weights[0], self.weights[1])

    def axis(self, name):
        try:
            return self.axes.index(name)
        except ValueError:
            raise SpecError(f"{self.kind} field has no axis {name!r}") from None

    def mesh(self, name):
        """Coordinate ``name`` broadcast to the full value shape."""
        i = self.axis(name)
        c = self.coords[i]
        return np.broadcast_to(c[:, None] if i == 0 else c[None, :], self.shape)

    def with_values(self, values):
        return CoefField(self.kind, self.axes, self.coords, self.weights, values, self.inner_axis)

    def __sub__(self, other):
        if other.kind != self.kind or other.shape != self.shape:
            raise SpecError("fields live on different grids")
        return self.with_values(self.values - other.values)

    def to_csv(self, path, order=None):
        """Write rows ``a,b,re,im,measure`` in lexicographic ``order``.

        ``order`` names the two axes, outer loop first; it defaults to the
        storage order.
        """
        order = tuple(order or self.axes)
        vals, meas = self.values, self.cell_measure
        c0, c1 = self.coords
        if order != self.axes:
            vals, meas, c0, c1 = vals.T, meas.T, c1, c0
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([*order, "re", "im", "measure"])
            for i, a in enumerate(c0):
                for j, b in enumerate(c1):
                    v = vals[i, j]
                    w.writerow([format_float(a), format_float(b), format_float(v.real),
                                format_float(v.imag), format_float(meas[i, j])])


def field_l2(C):
    """``(sum |C|^2 * cell_measure)^(1/2)``."""
    a = np.abs(C.values)
    scale = a.max(initial=0.0)
    if scale == 0.0:
        return 0.0
    return float(scale * np.sqrt(np.sum((a / scale) ** 2 * C.cell_measure)))
