"""Tail norms, tightness profiles and finite-scale compactness diagnostics.

For a family of signals and a transform (STFT, CWT or the Fock-plane
representation coefficient) the profile

    eps(r) = max_f || chi_{complement of U_r} V f ||

measures how much coefficient mass escapes a nested sequence of compact
regions ``U_r``.  :func:`diagnose` sets it beside the two classical
conditions on the signals themselves (uniform smallness of translation
differences and of the mass outside ``[-r, r]``) and an epsilon-net count.

Every verdict is a statement about the listed radii and tolerances only:
"tight at (eps, r_max)".
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bargmann import EntireFn, FockGrid, fock_field
from .core import AnalyticSignalSpec, Signal, TimeGrid, lattice_index, lp_norm, make_signal, translate_samples
from .errors import SpecError
from .fields import format_float
from .norms import NormSpec, WeightSpec, mixed_norm
from .stft import TFGrid, stft
from .wavelet import ScaleGrid, cwt, normalize_admissible

__all__ = [
    "RegionFamily",
    "FamilySpec",
    "Grids",
    "DiagnoseConfig",
    "TightnessReport",
    "region_mask",
    "tail_norm",
    "analysis_window",
    "member_fields",
    "tightness_profile",
    "tight_radius",
    "weil_equicontinuity",
    "weil_tightness",
    "distance_matrix",
    "epsilon_net",
    "diagnose",
]

# cell centres within this relative distance of the boundary count as inside
MEMBERSHIP_RTOL = 1e-12

_FIELD_KIND = {"tf_ball": "tf", "tf_box": "tf", "scale_window": "scale", "fock_disk": "fock"}
TRANSFORMS = ("stft", "cwt", "fock")


@dataclass(frozen=True)
class RegionFamily:
    """Nested compact sets ``U_r`` for the listed radii.

    ``tf_ball``: ``|(x, w)| <= r``; ``tf_box``: ``max(|x|, |w|) <= r``;
    ``scale_window``: ``|x| <= r`` and ``1/r <= s <= r`` (``r > 1``);
    ``fock_disk``: ``|z| <= r``; ``time_interval``: ``|t| <= r``.
    """

    kind: str
    radii: tuple

    KINDS = ("tf_ball", "tf_box", "scale_window", "fock_disk", "time_interval")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise SpecError(f"unknown region kind {self.kind!r}", key="kind")
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise SpecError("at least one radius is needed", key="radii")
        if not all(np.isfinite(r) and r > 0 for r in radii):
            raise SpecError("radii must be positive and finite", key="radii")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise SpecError("radii must be strictly increasing", key="radii")
        if self.kind == "scale_window" and radii[0] <= 1:
            raise SpecError("scale_window radii must exceed 1", key="radii")
        object.__setattr__(self, "radii", radii)


def region_mask(C, region, r):
    """Boolean array, true where the cell centre of ``C`` lies in ``U_r``."""
    if not r > 0:
        raise SpecError(f"radius must be positive, got {r!r}", key="r")
    want = _FIELD_KIND.get(region.kind)
    if want != C.kind:
        raise SpecError(f"region {region.kind!r} does not apply to a {C.kind!r} field", key="kind")
    lim = r * (1 + MEMBERSHIP_RTOL)
    if region.kind == "tf_ball":
        return np.hypot(C.mesh("x"), C.mesh("omega")) <= lim
    if region.kind == "tf_box":
        return np.maximum(np.abs(C.mesh("x")), np.abs(C.mesh("omega"))) <= lim
    if region.kind == "scale_window":
        if r <= 1:
            raise SpecError("scale_window radius must exceed 1", key="r")
        s = C.mesh("s")
        return (np.abs(C.mesh("x")) <= lim) & (s <= lim) & (s >= (1 / r) * (1 - MEMBERSHIP_RTOL))
    return C.mesh("r") <= lim


def tail_norm(C, spec, region, r):
    """Mixed norm of ``C`` with every cell inside ``U_r`` set to zero."""
    inside = region_mask(C, region, r)
    return mixed_norm(C.with_values(np.where(inside, 0.0, C.values)), spec)


@dataclass(frozen=True)
class FamilySpec:
    """A finite family of signal recipes (or entire functions) and its window.

    ``window`` defaults to the Gaussian for the STFT and the Mexican hat
    for the CWT.  STFT windows are used as given (scale the recipe for a
    unit-norm window); CWT windows are rescaled to admissibility one.
    """

    label: str
    members: tuple
    member_labels: tuple | None = None
    window: AnalyticSignalSpec | None = None

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise SpecError("a family needs at least one member", key="members")
        object.__setattr__(self, "members", members)
        labels = self.member_labels
        if labels is None:
            labels = tuple(f"{self.label}_{i}" for i in range(len(members)))
        labels = tuple(str(x) for x in labels)
        if len(labels) != len(members) or len(set(labels)) != len(labels):
            raise SpecError("member labels must be unique, one per member", key="member_labels")
        object.__setattr__(self, "member_labels", labels)

    @property
    def is_fock(self):
        return all(isinstance(m, EntireFn) for m in self.members)

    def signals(self, grid, base_dir=None):
        if self.is_fock or any(isinstance(m, EntireFn) for m in self.members):
            raise SpecError("family holds entire functions, not signals", key="members")
        return [make_signal(m, grid, base_dir) for m in self.members]


@dataclass(frozen=True)
class Grids:
    """The grids one run works on; defaults are the desk-scale reference grids."""

    time: TimeGrid = TimeGrid(8.0, 1 / 32)
    tf: TFGrid = TFGrid(6.0, 1 / 8, 6.0, 1 / 8)
    scale: ScaleGrid = ScaleGrid(8.0, 1 / 8, 1 / 8, 8.0, 48)
    fock: FockGrid = FockGrid()


def analysis_window(family, transform, grid, base_dir=None):
    """The family's window: used as given for the STFT, admissibility-normalised for the CWT."""
    if transform == "stft":
        spec = family.window or AnalyticSignalSpec.gaussian()
        return make_signal(spec, grid, base_dir)
    spec = family.window or AnalyticSignalSpec.mexican_hat()
    return normalize_admissible(make_signal(spec, grid, base_dir))


def _map(fn, items, workers):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def member_fields(family, transform, grids=Grids(), workers=1, base_dir=None):
    """Coefficient field of every member, in member order."""
    if transform not in TRANSFORMS:
        raise SpecError(f"unknown transform {transform!r}", key="transform")
    if transform == "fock":
        if not family.is_fock:
            raise SpecError("the fock transform needs entire-function members", key="members")
        return _map(lambda F: fock_field(F, grids.fock), family.members, workers)
    signals = family.signals(grids.time, base_dir)
    g = analysis_window(family, transform, grids.time, base_dir)
    if transform == "stft":
        return _map(lambda f: stft(f, g, grids.tf), signals, workers)
    return _map(lambda f: cwt(f, g, grids.scale), signals, workers)


@dataclass
class TightnessReport:
    """Profile, Weil tables, net sizes and verdict flags for one family."""

    label: str
    transform: str
    region: str
    profile: list = field(default_factory=list)
    tight_radii: dict = field(default_factory=dict)
    equicontinuity: list = field(default_factory=list)
    spatial_tightness: list = field(default_factory=list)
    net_sizes: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    agreement: bool | None = None
    note: str = ""

    def to_dict(self):
        return {
            "label": self.label,
            "transform": self.transform,
            "region": self.region,
            "profile": [[r, e] for r, e in self.profile],
            "tight_radii": [[eps, r] for eps, r in self.tight_radii.items()],
            "equicontinuity": [[d, m] for d, m in self.equicontinuity],
            "spatial_tightness": [[r, v] for r, v in self.spatial_tightness],
            "net_sizes": [[eps, n] for eps, n in self.net_sizes.items()],
            "flags": dict(self.flags),
            "agreement": self.agreement,
            "note": self.note,
        }

    def to_json(self):
        """Deterministic JSON text (floats use the shortest round-trip repr)."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def profile_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["r", "eps"])
            for r, e in self.profile:
                w.writerow([format_float(r), format_float(e)])


def tightness_profile(family, transform, spec, region, grids=Grids(), workers=1, fields=None):
    """Report holding ``eps(r) = max_f tail_norm`` for every listed radius.

    ``fields`` may carry precomputed member fields to avoid recomputation.
    """
    if fields is None:
        fields = member_fields(family, transform, grids, workers)
    prof = _map(lambda r: (r, max(tail_norm(C, spec, region, r) for C in fields)), region.radii, workers)
    return TightnessReport(label=family.label, transform=transform, region=region.kind, profile=prof)


def tight_radius(profile, eps):
    """Smallest listed ``r`` with ``eps(r) < eps``, or ``None``.

    ``profile`` is a report or a sequence of ``(r, eps(r))`` pairs.
    """
    if isinstance(profile, TightnessReport):
        profile = profile.profile
    if not np.isfinite(eps) or eps < 0:
        raise SpecError(f"tolerance must be a non-negative number, got {eps!r}", key="eps")
    for r, e in profile:
        if e < eps:
            return r
    return None


def _check_p(p):
    if not (np.isfinite(p) and p >= 1):
        raise SpecError(f"p must be finite and >= 1, got {p!r}", key="p")


def weil_equicontinuity(family, p, deltas, grid=TimeGrid(8.0, 1 / 32), workers=1, base_dir=None):
    """``delta -> max_f max_{|h| <= delta} ||f(. - h) - f||_p`` over lattice shifts."""
    _check_p(p)
    signals = family.signals(grid, base_dir)
    ks = [lattice_index(d, grid.step, "delta") for d in deltas]
    if any(k < 0 for k in ks):
        raise SpecError("deltas must be non-negative", key="deltas")
    kmax = max(ks, default=0)

    def per_shift(k):
        h = k * grid.step
        return max(max(lp_norm(translate_samples(f, s) - f, p) for f in signals) for s in (h, -h))

    mods = _map(per_shift, range(1, kmax + 1), workers)
    running = np.maximum.accumulate([0.0] + mods)
    return [(float(d), float(running[k])) for d, k in zip(deltas, ks)]


def weil_tightness(family, p, radii, grid=TimeGrid(8.0, 1 / 32), base_dir=None):
    """``r -> max_f ||f chi_{|t| > r}||_p``."""
    _check_p(p)
    if not all(r > 0 for r in radii):
        raise SpecError("radii must be positive", key="radii")
    signals = family.signals(grid, base_dir)
    outside_all = np.abs(grid.t)
    out = []
    for r in radii:
        outside = outside_all > r * (1 + MEMBERSHIP_RTOL)
        out.append((float(r), max(lp_norm(Signal(grid, np.where(outside, f.values, 0.0)), p) for f in signals)))
    return out


def distance_matrix(family, metric="l2", grids=Grids(), base_dir=None, workers=1):
    """Pairwise distances between members.

    ``metric`` is ``"l2"``, ``"fock"`` (F^2 distance of entire functions)
    or a mapping ``{"kind": "modulation", "p":, "q":, "a":}``; the
    modulation distance is the weighted mixed norm of the STFT difference
    on ``grids.tf``.
    """
    n = len(family.members)
    D = np.zeros((n, n))
    kind = metric if isinstance(metric, str) else metric.get("kind")
    if kind == "fock":
        if not family.is_fock:
            raise SpecError("fock metric needs entire-function members", key="metric")
        items = list(family.members)
        dist = lambda a, b: (a - b).l2()  # noqa: E731
    elif kind == "l2":
        items = family.signals(grids.time, base_dir)
        dist = lambda a, b: lp_norm(a - b, 2)  # noqa: E731
    elif kind == "modulation":
        spec = NormSpec(metric.get("p", 2), metric.get("q", 2), WeightSpec.tf_polynomial(metric.get("a", 0.0)))
        items = member_fields(family, "stft", grids, workers, base_dir)
        dist = lambda a, b: mixed_norm(a - b, spec)  # noqa: E731
    else:
        raise SpecError(f"unknown metric {metric!r}", key="metric")
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = dist(items[i], items[j])
    return D


def epsilon_net(family, eps, metric="l2", grids=Grids(), base_dir=None, D=None):
    """Greedy epsilon-net: scan in index order, keep a member iff it is at
    distance ``>= eps`` from every member kept so far."""
    if not eps > 0:
        raise SpecError(f"eps must be positive, got {eps!r}", key="eps")
    if D is None:
        D = distance_matrix(family, metric, grids, base_dir)
    net = []
    for i in range(D.shape[0]):
        if all(D[i, j] >= eps for j in net):
            net.append(i)
    return net


@dataclass(frozen=True)
class DiagnoseConfig:
    """Everything :func:`diagnose` needs besides the family.

    ``eps0`` and ``r_max`` define the verdicts; ``tolerances`` are extra
    levels whose tight radii are reported.  ``deltas`` and ``weil_radii``
    are the probe points of the two classical conditions.
    """

    transform: str = "stft"
    norm: NormSpec = NormSpec()
    region: RegionFamily = RegionFamily("tf_ball", tuple(0.25 * k for k in range(1, 25)))
    eps0: float = 1e-2
    r_max: float = 6.0
    tolerances: tuple = ()
    weil_p: float = 2.0
    deltas: tuple = ()
    weil_radii: tuple = ()
    net_eps: float = 0.5
    net_metric: object = "l2"
    net_bound: int = 8
    grids: Grids = Grids()
    workers: int = 1

    def __post_init__(self):
        if self.transform not in TRANSFORMS:
            raise SpecError(f"unknown transform {self.transform!r}", key="transform")
        want = {"stft": "tf", "cwt": "scale", "fock": "fock"}[self.transform]
        if _FIELD_KIND.get(self.region.kind) != want:
            raise SpecError(f"region {self.region.kind!r} does not apply to the {self.transform} transform",
                            key="region.kind")
        if not self.eps0 > 0:
            raise SpecError("eps0 must be positive", key="eps0")
        if not self.r_max > 0:
            raise SpecError("r_max must be positive", key="r_max")
        if int(self.workers) != self.workers or self.workers < 1:
            raise SpecError("workers must be a positive integer", key="workers")


def diagnose(family, config=DiagnoseConfig(), base_dir=None):
    """Profile, Weil tables and net size with verdict flags.

    Flags
    -----
    ``<TRANSFORM>_TIGHT``
        ``eps(r) < eps0`` for some listed ``r <= r_max``.
    ``WEIL_OK``
        The translation modulus at the smallest positive delta is below
        ``eps0`` and the mass outside ``[-r, r]`` drops below ``eps0`` for
        some listed ``r <= r_max``.  ``None`` for entire-function families.
    ``NET_SMALL``
        The greedy net at ``net_eps`` has at most ``net_bound`` members.

    ``agreement`` compares the transform flag with ``WEIL_OK`` when both
    exist.
    """
    cfg = config
    fields = member_fields(family, cfg.transform, cfg.grids, cfg.workers, base_dir)
    report = tightness_profile(family, cfg.transform, cfg.norm, cfg.region, cfg.grids, cfg.workers, fields)
    levels = sorted({cfg.eps0, *cfg.tolerances}, reverse=True)
    report.tight_radii = {eps: tight_radius(report.profile, eps) for eps in levels}
    r0 = report.tight_radii[cfg.eps0]
    tf_flag = r0 is not None and r0 <= cfg.r_max * (1 + MEMBERSHIP_RTOL)
    flags = {f"{cfg.transform.upper()}_TIGHT": tf_flag}

    weil_ok = None
    if not family.is_fock:
        tg = cfg.grids.time
        deltas = tuple(cfg.deltas) or (tg.step, 2 * tg.step, 4 * tg.step, 8 * tg.step)
        radii = tuple(cfg.weil_radii) or tuple(r for r in cfg.region.radii if r <= cfg.r_max) or (cfg.r_max,)
        report.equicontinuity = weil_equicontinuity(family, cfg.weil_p, deltas, tg, cfg.workers, base_dir)
        report.spatial_tightness = weil_tightness(family, cfg.weil_p, radii, tg, base_dir)
        positive = [m for d, m in report.equicontinuity if d > 0]
        equi_ok = bool(positive) and positive[0] < cfg.eps0
        spatial_ok = any(v < cfg.eps0 for r, v in report.spatial_tightness
                         if r <= cfg.r_max * (1 + MEMBERSHIP_RTOL))
        weil_ok = equi_ok and spatial_ok
        flags["WEIL_EQUICONTINUOUS"] = equi_ok
        flags["WEIL_SPATIALLY_TIGHT"] = spatial_ok
    flags["WEIL_OK"] = weil_ok

    metric = "fock" if family.is_fock else cfg.net_metric
    D = distance_matrix(family, metric, cfg.grids, base_dir, cfg.workers)
    net = epsilon_net(family, cfg.net_eps, metric, D=D)
    report.net_sizes = {cfg.net_eps: len(net)}
    flags["NET_SMALL"] = len(net) <= cfg.net_bound
    report.flags = flags
    report.agreement = None if weil_ok is None else (tf_flag == weil_ok)
    report.note = f"finite-scale diagnostic: tight at (eps0={cfg.eps0!r}, r_max={cfg.r_max!r}) on the listed radii"
    return report
