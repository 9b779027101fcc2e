"""Local-field (cavity) corrections to spontaneous-emission lifetimes.

The package reduces measured (lifetime, peak wavelength, refractive index)
records of 5d->4f emitters to effective dipole radial integrals, evaluates
the virtual-cavity and real-cavity local-field enhancement factors, and
fits/compares both models against a host-material corpus by weighted least
squares.  A CLI (``cavityfit``) wraps the calculators, the table pipeline,
the fit reports and a deterministic SVG figure.
"""

from .cavity import CavityModel, ChiFactor, RefractiveIndex, chi
from .corpus import (
    Corpus,
    DerivedRow,
    HostRecord,
    derive_rows,
    emit_table,
    make_record,
    parse_corpus,
    reference_corpus,
)
from .errors import (
    CavityFitError,
    FitTieError,
    InsufficientDataError,
    InvalidModelError,
    RowError,
    SchemaError,
    ValidationError,
)
from .figure import PlotSpec, render_figure
from .fit import FitResult, ModelComparison, WeightScheme, compare_models, fit_model
from .radiative import (
    DipoleLengthNm,
    EmissionRatePerSec,
    derive_reff,
    predicted_lifetime_ns,
    total_rate,
    transition_rate,
)
from .units import (
    PUBLISHED_RATE_CONSTANT,
    LifetimeNs,
    RadialIntegralNm,
    RateConstant,
    WavelengthNm,
    WavenumberInvCm,
    rate_constant,
    wavelength_to_wavenumber,
)

__version__ = "0.1.0"

__all__ = [
    "CavityFitError",
    "CavityModel",
    "ChiFactor",
    "Corpus",
    "DerivedRow",
    "DipoleLengthNm",
    "EmissionRatePerSec",
    "FitResult",
    "FitTieError",
    "HostRecord",
    "InsufficientDataError",
    "InvalidModelError",
    "LifetimeNs",
    "ModelComparison",
    "PlotSpec",
    "PUBLISHED_RATE_CONSTANT",
    "RadialIntegralNm",
    "RateConstant",
    "RefractiveIndex",
    "RowError",
    "SchemaError",
    "ValidationError",
    "WavelengthNm",
    "WavenumberInvCm",
    "WeightScheme",
    "chi",
    "compare_models",
    "derive_reff",
    "derive_rows",
    "emit_table",
    "fit_model",
    "make_record",
    "parse_corpus",
    "predicted_lifetime_ns",
    "rate_constant",
    "reference_corpus",
    "render_figure",
    "total_rate",
    "transition_rate",
    "wavelength_to_wavenumber",
    "__version__",
]
