"""Time-frequency, time-scale and Fock-plane coefficient transforms with
mixed-norm tightness diagnostics for finite families of functions."""

from .bargmann import EntireFn, FockGrid, beta_shift, eval_entire, fock_field, fock_inner, fock_norm, fock_rep_coeff, kernel_fn
from .core import AnalyticSignalSpec, Signal, TimeGrid, lp_norm, make_signal, normalize, read_signal_csv, translate_samples
from .errors import PreconditionError, ScaleRangeError, SpecError, TFCompactError
from .fields import CoefField, field_l2
from .norms import NormSpec, WeightSpec, besov_norm, mixed_norm, modulation_norm, scale_boundary_fraction
from .stft import HPoint, TFGrid, heisenberg_compose, istft, stft, tf_shift
from .tightness import (DiagnoseConfig, FamilySpec, Grids, RegionFamily, TightnessReport, diagnose, epsilon_net,
                        tail_norm, tight_radius, tightness_profile, weil_equicontinuity, weil_tightness)
from .wavelet import ScaleGrid, admissibility_constant, cwt, field_l2_hyperbolic, normalize_admissible

__version__ = "0.1.0"

__all__ = [
    "AnalyticSignalSpec", "CoefField", "DiagnoseConfig", "EntireFn", "FamilySpec", "FockGrid", "Grids", "HPoint",
    "NormSpec", "PreconditionError", "RegionFamily", "ScaleGrid", "ScaleRangeError", "Signal", "SpecError",
    "TFCompactError", "TFGrid", "TightnessReport", "TimeGrid", "WeightSpec", "admissibility_constant",
    "besov_norm", "beta_shift", "cwt", "diagnose", "epsilon_net", "eval_entire", "field_l2",
    "field_l2_hyperbolic", "fock_field", "fock_inner", "fock_norm", "fock_rep_coeff", "heisenberg_compose",
    "istft", "kernel_fn", "lp_norm", "make_signal", "mixed_norm", "modulation_norm", "normalize",
    "normalize_admissible", "read_signal_csv", "scale_boundary_fraction", "stft", "tail_norm", "tf_shift",
    "tight_radius", "tightness_profile", "translate_samples", "weil_equicontinuity", "weil_tightness",
]
