"""Run configuration: JSON schema, validating loader and built-in benchmarks.

A configuration names the grids, one or more families, the transform, the
norm, the region family and the diagnostic thresholds.  Every key is
optional except ``families``; omitted grids fall back to the reference
grids of :class:`tfcompact.tightness.Grids`.  See ``README.md`` for an
annotated example.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .bargmann import EntireFn, FockGrid
from .core import AnalyticSignalSpec, TimeGrid
from .errors import SpecError
from .norms import NormSpec, WeightSpec
from .stft import TFGrid
from .tightness import DiagnoseConfig, FamilySpec, Grids, RegionFamily
from .wavelet import ScaleGrid

__all__ = ["SCHEMA", "RunConfig", "load_config", "parse_config", "benchmark_names", "benchmark_config",
           "signal_spec_from_json"]

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_INT8 = {"type": "integer", "minimum": 8}


def _obj(props, required=()):
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "complex": {"oneOf": [_NUM, {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}]},
        "signal": _obj({
            "label": {"type": "string"},
            "kind": {"enum": list(AnalyticSignalSpec.KINDS)},
            "n": {"type": "integer", "minimum": 0},
            "x0": _NUM,
            "omega0": _NUM,
            "s0": _POS,
            "base": {"$ref": "#/$defs/signal"},
            "path": {"type": "string"},
            "amplitude": {"$ref": "#/$defs/complex"},
        }, ["kind"]),
        "entire": _obj({
            "label": {"type": "string"},
            "degree": {"type": "integer", "minimum": 0},
            "coeffs": {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}},
        }, ["degree", "coeffs"]),
        "radii": {"oneOf": [
            {"type": "array", "items": _POS, "minItems": 1},
            _obj({"start": _POS, "stop": _POS, "step": _POS}, ["start", "stop", "step"]),
        ]},
    },
    **_obj({
        "time_grid": _obj({"half_width": _POS, "step": _POS}, ["half_width", "step"]),
        "tf_grid": _obj({"x_half_width": _POS, "x_step": _POS, "omega_half_width": _POS, "omega_step": _POS},
                        ["x_half_width", "x_step", "omega_half_width", "omega_step"]),
        "scale_grid": _obj({"x_half_width": _POS, "x_step": _POS, "s_min": _POS, "s_max": _POS, "s_count": _INT8},
                           ["x_half_width", "x_step", "s_min", "s_max", "s_count"]),
        "fock_grid": _obj({"r_max": _POS, "r_count": _INT8, "theta_count": _INT8}),
        "transform": {"enum": ["stft", "cwt", "fock"]},
        "families": {"type": "array", "items": _obj({
            "label": {"type": "string", "pattern": "^[A-Za-z0-9_.-]+$"},
            "window": {"$ref": "#/$defs/signal"},
            "members": {"type": "array", "items": {"oneOf": [{"$ref": "#/$defs/signal"}, {"$ref": "#/$defs/entire"}]}},
        }, ["label", "members"])},
        "norm": _obj({
            "p": {"type": "number", "minimum": 1},
            "q": {"type": "number", "minimum": 1},
            "weight": _obj({
                "kind": {"enum": ["constant", "tf_polynomial", "scale_power"]},
                "a": _NUM,
                "alpha": _NUM,
            }, ["kind"]),
        }),
        "region": _obj({
            "kind": {"enum": list(RegionFamily.KINDS)},
            "radii": {"$ref": "#/$defs/radii"},
        }, ["kind", "radii"]),
        "eps0": _POS,
        "r_max": _POS,
        "tolerances": {"type": "array", "items": _POS},
        "weil": _obj({
            "p": {"type": "number", "minimum": 1},
            "deltas": {"type": "array", "items": {"type": "number", "minimum": 0}},
            "radii": {"$ref": "#/$defs/radii"},
        }),
        "net": _obj({
            "eps": _POS,
            "metric": {"oneOf": [
                {"enum": ["l2", "fock"]},
                _obj({"kind": {"const": "modulation"}, "p": {"type": "number", "minimum": 1},
                      "q": {"type": "number", "minimum": 1}, "a": _NUM}, ["kind"]),
            ]},
            "max_size": {"type": "integer", "minimum": 1},
        }),
        "workers": {"type": "integer", "minimum": 1},
    }, ["families"]),
}


@dataclass(frozen=True)
class RunConfig:
    """A validated configuration.

    ``families`` keeps empty families (as ``(label, window, [], [])``)
    so that norm and transform runs can report empty tables.
    """

    grids: Grids
    transform: str
    families: tuple
    norm: NormSpec
    diagnose: DiagnoseConfig
    base_dir: Path | None = None
    raw: dict = field(default_factory=dict, repr=False, compare=False)

    def family_specs(self):
        """Non-empty families as :class:`FamilySpec`."""
        return [FamilySpec(label, tuple(members), tuple(labels), window)
                for label, window, members, labels in self.families if members]


def _complex(v):
    return complex(v[0], v[1]) if isinstance(v, list) else complex(v)


def signal_spec_from_json(obj):
    """Build an :class:`AnalyticSignalSpec` from its JSON object."""
    base = signal_spec_from_json(obj["base"]) if "base" in obj else None
    return AnalyticSignalSpec(
        kind=obj["kind"],
        n=obj.get("n", 0),
        x0=float(obj.get("x0", 0.0)),
        omega0=float(obj.get("omega0", 0.0)),
        s0=float(obj.get("s0", 1.0)),
        base=base,
        path=obj.get("path"),
        amplitude=_complex(obj.get("amplitude", 1.0)),
    )


def _radii(spec):
    if isinstance(spec, list):
        return tuple(float(r) for r in spec)
    start, stop, step = spec["start"], spec["stop"], spec["step"]
    count = int((stop - start) / step + 1e-9) + 1
    return tuple(start + k * step for k in range(count))


def _keyed(key, build):
    """Run ``build`` and prefix the key of any :class:`SpecError` with ``key``."""
    try:
        return build()
    except SpecError as exc:
        inner = exc.key
        if key:
            exc.key = key if inner is None else f"{key}.{inner}"
        raise


def _schema_error_key(err):
    path = [str(p) for p in err.absolute_path]
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        if extra:
            path.append(extra[0])
    elif err.validator == "required" and isinstance(err.instance, dict):
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            path.append(missing[0])
    return ".".join(path) or None


def parse_config(raw, base_dir=None):
    """Validate a decoded JSON object and build a :class:`RunConfig`.

    Raises
    ------
    SpecError
        With ``key`` set to the dotted path of the offending entry.
    """
    validator = jsonschema.Draft202012Validator(SCHEMA)
    err = jsonschema.exceptions.best_match(validator.iter_errors(raw))
    if err is not None:
        raise SpecError(f"invalid config: {err.message}", key=_schema_error_key(err))

    defaults = Grids()
    grids = Grids(
        time=_keyed("time_grid", lambda: TimeGrid(**raw["time_grid"])) if "time_grid" in raw else defaults.time,
        tf=_keyed("tf_grid", lambda: TFGrid(**raw["tf_grid"])) if "tf_grid" in raw else defaults.tf,
        scale=_keyed("scale_grid", lambda: ScaleGrid(**raw["scale_grid"])) if "scale_grid" in raw else defaults.scale,
        fock=_keyed("fock_grid", lambda: FockGrid(**raw.get("fock_grid", {}))),
    )
    transform = raw.get("transform", "stft")

    families = []
    for i, fam in enumerate(raw["families"]):
        key = f"families.{i}"
        window = _keyed(f"{key}.window", lambda: signal_spec_from_json(fam["window"])) if "window" in fam else None
        members, labels = [], []
        for j, m in enumerate(fam["members"]):
            if "degree" in m:
                members.append(_keyed(f"{key}.members.{j}", lambda: EntireFn.from_json(m)))
            else:
                members.append(_keyed(f"{key}.members.{j}", lambda: signal_spec_from_json(m)))
            labels.append(m.get("label", f"{fam['label']}_{j}"))
        if len(set(labels)) != len(labels):
            raise SpecError("member labels must be unique", key=f"{key}.members")
        families.append((fam["label"], window, members, labels))
    if len({f[0] for f in families}) != len(families):
        raise SpecError("family labels must be unique", key="families")

    nraw = raw.get("norm", {})
    p, q = nraw.get("p", 2.0), nraw.get("q", 2.0)
    wraw = nraw.get("weight", {"kind": "constant"})
    if wraw["kind"] == "tf_polynomial":
        weight = WeightSpec.tf_polynomial(wraw.get("a", 0.0))
    elif wraw["kind"] == "scale_power":
        weight = WeightSpec.scale_power(wraw.get("alpha", 0.0), q)
    else:
        weight = WeightSpec.constant()
    norm = _keyed("norm", lambda: NormSpec(p, q, weight))

    default_region = {"stft": "tf_ball", "cwt": "scale_window", "fock": "fock_disk"}[transform]
    rraw = raw.get("region", {"kind": default_region, "radii": {"start": 0.25 if transform != "cwt" else 1.25,
                                                                 "stop": 6.0, "step": 0.25}})
    region = _keyed("region", lambda: RegionFamily(rraw["kind"], _radii(rraw["radii"])))
    weil = raw.get("weil", {})
    net = raw.get("net", {})
    diag = _keyed("", lambda: DiagnoseConfig(
        transform=transform,
        norm=norm,
        region=region,
        eps0=float(raw.get("eps0", 1e-2)),
        r_max=float(raw.get("r_max", 6.0)),
        tolerances=tuple(raw.get("tolerances", ())),
        weil_p=float(weil.get("p", 2.0)),
        deltas=tuple(float(d) for d in weil.get("deltas", ())),
        weil_radii=_radii(weil["radii"]) if "radii" in weil else (),
        net_eps=float(net.get("eps", 0.5)),
        net_metric=net.get("metric", "l2"),
        net_bound=int(net.get("max_size", 8)),
        grids=grids,
        workers=int(raw.get("workers", 1)),
    ))
    return RunConfig(grids, transform, tuple(families), norm, diag, Path(base_dir) if base_dir else None, raw)


def load_config(path):
    """Read, validate and build the configuration stored at ``path``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read config {path}: {exc.strerror}", key=None) from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    return parse_config(raw, base_dir=path.parent)


def benchmark_names():
    files = resources.files("tfcompact").joinpath("benchmarks").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def benchmark_config(name):
    """The built-in configuration ``name`` (see :func:`benchmark_names`)."""
    names = benchmark_names()
    if name not in names:
        raise SpecError(f"unknown benchmark {name!r}; choose from {', '.join(names)}", key="benchmark")
    raw = json.loads(resources.files("tfcompact").joinpath("benchmarks", f"{name}.json").read_text())
    return parse_config(raw)
