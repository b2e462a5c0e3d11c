"""Command line: ``tfcompact transform|norm|diagnose``.

Exit codes: 0 on success, 2 for configuration errors, 3 when a numerical
precondition fails.  On failure a JSON object ``{"error", "message",
"key", "exit_code"}`` goes to stderr and, when possible, to
``<out>/error.json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bargmann import fock_norm
from .config import benchmark_config, benchmark_names, load_config
from .core import make_signal
from .errors import PreconditionError, SpecError
from .norms import besov_norm, mixed_norm
from .tightness import analysis_window, diagnose, member_fields

__all__ = ["main", "cmd_transform", "cmd_norm", "cmd_diagnose"]

EXIT_OK, EXIT_CONFIG, EXIT_PRECONDITION = 0, 2, 3


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_transform(cfg, out):
    """Write one coefficient CSV per member; returns the written paths."""
    written = []
    for fam in cfg.family_specs():
        fields = member_fields(fam, cfg.transform, cfg.grids, cfg.diagnose.workers, cfg.base_dir)
        for name, C in zip(fam.member_labels, fields):
            path = Path(out) / f"{cfg.transform}_{name}.csv"
            C.to_csv(path, order=("x", "s") if C.kind == "scale" else None)
            written.append(path)
    return written


def _member_norms(cfg, fam):
    spec = cfg.norm
    if cfg.transform == "fock":
        if spec.q != spec.p:
            raise SpecError("Fock norms take a single exponent; set q equal to p", key="norm.q")
        return [fock_norm(F, spec.p, cfg.grids.fock) for F in fam.members]
    if cfg.transform == "cwt" and spec.weight.kind == "scale_power":
        g = analysis_window(fam, "cwt", cfg.grids.time, cfg.base_dir)
        return [besov_norm(make_signal(m, cfg.grids.time, cfg.base_dir), g, spec.p, spec.q,
                           spec.weight.alpha, cfg.grids.scale) for m in fam.members]
    fields = member_fields(fam, cfg.transform, cfg.grids, cfg.diagnose.workers, cfg.base_dir)
    return [mixed_norm(C, spec) for C in fields]


def cmd_norm(cfg, out):
    """Write ``norms.json``: ``{family: {member: norm}}``; returns the table."""
    table = {}
    specs = {f.label: f for f in cfg.family_specs()}
    for label, _window_spec, members, _labels in cfg.families:
        fam = specs.get(label)
        table[label] = {} if fam is None else dict(zip(fam.member_labels, _member_norms(cfg, fam)))
    doc = {
        "transform": cfg.transform,
        "norm": {"p": cfg.norm.p, "q": cfg.norm.q, "weight": {
            "kind": cfg.norm.weight.kind, "a": cfg.norm.weight.a, "alpha": cfg.norm.weight.alpha}},
        "norms": table,
    }
    _write_text(Path(out) / "norms.json", json.dumps(doc, indent=2) + "\n")
    return table


def cmd_diagnose(cfg, out):
    """Write ``report_<family>.json`` and ``profile_<family>.csv``; returns the reports."""
    fams = cfg.family_specs()
    if not fams:
        raise SpecError("diagnose needs at least one non-empty family", key="families")
    reports = []
    for fam in fams:
        report = diagnose(fam, cfg.diagnose, cfg.base_dir)
        _write_text(Path(out) / f"report_{fam.label}.json", report.to_json())
        report.profile_csv(Path(out) / f"profile_{fam.label}.csv")
        reports.append(report)
    return reports


COMMANDS = {"transform": cmd_transform, "norm": cmd_norm, "diagnose": cmd_diagnose}


def build_parser():
    parser = argparse.ArgumentParser(prog="tfcompact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__.splitlines()[0])
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", type=Path, help="JSON run configuration")
        src.add_argument("--benchmark", help="built-in configuration: " + ", ".join(benchmark_names()))
        p.add_argument("--out", type=Path, required=True, help="output directory (created if missing)")
    return parser


def _fail(exc, code, out):
    doc = {"error": type(exc).__name__, "message": str(exc), "key": getattr(exc, "key", None), "exit_code": code}
    text = json.dumps(doc)
    print(text, file=sys.stderr)
    if out is not None:
        try:
            Path(out).mkdir(parents=True, exist_ok=True)
            _write_text(Path(out) / "error.json", text + "\n")
        except OSError:
            pass
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = benchmark_config(args.benchmark) if args.benchmark else load_config(args.config)
        try:
            args.out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise SpecError(f"cannot create output directory {args.out}: {exc.strerror}", key="out") from None
        COMMANDS[args.command](cfg, args.out)
    except PreconditionError as exc:
        return _fail(exc, EXIT_PRECONDITION, args.out)
    except SpecError as exc:
        return _fail(exc, EXIT_CONFIG, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
