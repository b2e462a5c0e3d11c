"""Run the built-in benchmark families through the tightness diagnostic.

Hermite functions are tight; translates, modulates and dilates escape any
fixed region, and the classical translation/support conditions agree.
"""

from tfcompact import diagnose
from tfcompact.config import benchmark_config, benchmark_names

for name in benchmark_names():
    cfg = benchmark_config(name)
    (family,) = cfg.family_specs()
    report = diagnose(family, cfg.diagnose)
    flags = ", ".join(f"{k}={v}" for k, v in report.flags.items())
    radius = report.tight_radii[cfg.diagnose.eps0]
    print(f"{name:11s} tight radius at eps0: {radius!s:6s} {flags}")
