"""Dimension-tagged scalar types and the emission-rate prefactor.

Every physical scalar crossing an API boundary in this package is wrapped in
one of the small frozen types below, because the rate formula is only correct
in one specific unit convention (radial integral in nm, wavenumber in cm^-1,
time in s) and silent unit mix-ups are the dominant failure mode.  Raw floats
are rejected by the consuming functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

from .errors import ValidationError, ensure_positive, expect_type

#: Rounded published value of the 5d->4f total-rate prefactor,
#: units s^-1 nm^-2 cm^3 (multiplies r^2 [nm^2] * chi * nu^3 [cm^-3]).
PUBLISHED_RATE_CONSTANT = 4.34e-4

#: Accepted modes for :func:`rate_constant`.
CONSTANT_MODES = ("paper", "precise")

# Gaussian-unit fundamental constants from the exact SI definitions:
# 1 C = 2.99792458e9 esu, 1 J s = 1e7 erg s.
_ELEMENTARY_CHARGE_ESU = 1.602176634e-19 * 2.99792458e9
_PLANCK_ERG_S = 6.62607015e-34 * 1e7
_CM2_PER_NM2 = 1e-14

# Values below this (in the unit of the type) are rejected outright rather
# than allowed to produce astronomically large rates downstream.
_NEAR_ZERO_GUARD = 1e-6


@dataclass(frozen=True)
class _PositiveScalar:
    """Base for single-field positive quantities; subclasses set the label/bound."""

    value: float
    _label: ClassVar[str] = "value"
    _minimum: ClassVar[float | None] = None

    def __post_init__(self):
        object.__setattr__(
            self, "value", ensure_positive(self._label, self.value, self._minimum)
        )

    def __float__(self) -> float:
        return self.value


class WavelengthNm(_PositiveScalar):
    """Peak emission wavelength in nanometres (vacuum value, no medium correction)."""

    _label = "wavelength_nm"
    _minimum = _NEAR_ZERO_GUARD


class WavenumberInvCm(_PositiveScalar):
    """Emission wavenumber in reciprocal centimetres."""

    _label = "wavenumber_invcm"


class LifetimeNs(_PositiveScalar):
    """Spontaneous-emission lifetime in nanoseconds."""

    _label = "lifetime_ns"
    _minimum = _NEAR_ZERO_GUARD


class RadialIntegralNm(_PositiveScalar):
    """Effective <5d|r|4f> radial integral in nanometres."""

    _label = "radial_integral_nm"


@dataclass(frozen=True)
class RateConstant:
    """The total-rate prefactor in s^-1 nm^-2 cm^3.

    Any instance must sit within 0.2% of the published rounded value; the
    type exists so the paper/precise choice travels explicitly through the
    rate kernels instead of via hidden global state.
    """

    value: float

    def __post_init__(self):
        v = ensure_positive("rate_constant", self.value)
        if abs(v - PUBLISHED_RATE_CONSTANT) / PUBLISHED_RATE_CONSTANT > 0.002:
            raise ValidationError(
                f"rate_constant must lie within 0.2% of {PUBLISHED_RATE_CONSTANT}, got {v!r}"
            )
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value


def rate_constant(mode: str = "paper") -> RateConstant:
    """Return the emission-rate prefactor.

    mode "paper"   -- the published rounded value 4.34e-4, kept as the default
                      so derived tables reproduce the published arithmetic.
    mode "precise" -- 64 pi^4 e^2 / (5 h) evaluated in Gaussian units from the
                      exact SI fundamental constants, with the cm^2 -> nm^2
                      conversion folded in; used for sensitivity checks.
    """
    if mode == "paper":
        return RateConstant(PUBLISHED_RATE_CONSTANT)
    if mode == "precise":
        value = (
            64.0
            * math.pi**4
            * _ELEMENTARY_CHARGE_ESU**2
            / (5.0 * _PLANCK_ERG_S)
            * _CM2_PER_NM2
        )
        return RateConstant(value)
    raise ValidationError(f"unknown rate-constant mode {mode!r}; expected one of {CONSTANT_MODES}")


def wavelength_to_wavenumber(wavelength: WavelengthNm) -> WavenumberInvCm:
    """Convert a wavelength in nm to a wavenumber in cm^-1 (nu = 1e7 / lambda)."""
    expect_type("wavelength", wavelength, WavelengthNm)
    return WavenumberInvCm(1e7 / wavelength.value)
