"""Besov norms from wavelet coefficients scale like 2^(alpha - 1/p) under f -> f(2 .)."""

from tfcompact import AnalyticSignalSpec as S
from tfcompact import ScaleGrid, TimeGrid, besov_norm, make_signal, normalize_admissible

grid = TimeGrid(8.0, 1 / 32)
scales = ScaleGrid(8.0, 1 / 32, 1 / 8, 8.0, 48)
wavelet = normalize_admissible(make_signal(S.gaussian_derivative(8), grid))
spec = S.gaussian_derivative(4)
f = make_signal(spec, grid)
f2 = make_signal(spec.dilate(0.5).scaled(2 ** -0.5), grid)

for alpha, p, q in [(0.5, 2, 2), (1, 1, 1), (0.25, 2, 1)]:
    ratio = besov_norm(f2, wavelet, p, q, alpha, scales) / besov_norm(f, wavelet, p, q, alpha, scales)
    print(f"alpha={alpha:<5} p={p} q={q}  ratio {ratio:.6f}  expected {2 ** (alpha - 1 / p):.6f}")
