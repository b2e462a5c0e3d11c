"""Short-time Fourier transform of the Gaussian with itself.

Prints a few lattice values of |S_phi phi| next to the closed envelope
2^-1/2 exp(-pi (x^2 + w^2) / 2), then the tail profile over growing disks.
"""

import math

from tfcompact import AnalyticSignalSpec, NormSpec, RegionFamily, TFGrid, TimeGrid, make_signal, stft, tail_norm

grid = TimeGrid(8.0, 1 / 32)
tf = TFGrid(6.0, 1 / 8, 6.0, 1 / 8)
phi = make_signal(AnalyticSignalSpec.gaussian(), grid)
C = stft(phi, phi, tf)

print("   x     w     |S|            envelope")
for kx, kw in [(0, 0), (8, 0), (8, 8), (16, 4), (-12, 20)]:
    i, j = kx + 48, kw + 48
    x, w = C.coords[0][i], C.coords[1][j]
    env = 2 ** -0.5 * math.exp(-math.pi * (x * x + w * w) / 2)
    print(f"{x:5.2f} {w:5.2f}  {abs(C.values[i, j]):.12f} {env:.12f}")

region = RegionFamily("tf_ball", (0.5, 1.0, 1.5, 2.0, 3.0))
print("\n   r     tail on the lattice   continuous tail")
for r in region.radii:
    cont = math.sqrt(0.5 * math.exp(-math.pi * r * r))
    print(f"{r:5.2f}  {tail_norm(C, NormSpec(), region, r):.6e}         {cont:.6e}")
