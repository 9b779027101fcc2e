"""Electric-dipole emission-rate kernel and its inversion.

The total 5d->4f rate is  1/tau = C * chi * nu^3 * r_eff^2  with C the
prefactor from :mod:`cavityfit.units` and units (nm, cm^-1, s).  A single
per-transition rate carries the same form scaled by 5/3 (its prefactor is
64 pi^4 e^2 / (3h) instead of the degeneracy-averaged / (5h) total).
"""

from __future__ import annotations

import math

from .cavity import CavityModel, ChiFactor, RefractiveIndex, chi
from .errors import expect_type
from .units import (
    LifetimeNs,
    RadialIntegralNm,
    RateConstant,
    WavelengthNm,
    WavenumberInvCm,
    _PositiveScalar,
    rate_constant,
    wavelength_to_wavenumber,
)

_NS_PER_S = 1e9


class EmissionRatePerSec(_PositiveScalar):
    """Spontaneous-emission rate in s^-1."""

    _label = "emission_rate_per_sec"


class DipoleLengthNm(_PositiveScalar):
    """Dipole matrix element expressed as a length |mu|/e, in nanometres."""

    _label = "dipole_length_nm"


def _constant_value(constant: RateConstant | None) -> float:
    if constant is None:
        return rate_constant().value
    return expect_type("constant", constant, RateConstant).value


def _rate_value(c: float, chi_value: float, nu: float, r_nm: float) -> float:
    # Fixed evaluation order keeps transition_rate == (5/3) * total_rate bitwise.
    return c * chi_value * nu**3 * r_nm**2


def total_rate(
    r_eff: RadialIntegralNm,
    nu_bar: WavenumberInvCm,
    chi_factor: ChiFactor,
    constant: RateConstant | None = None,
) -> EmissionRatePerSec:
    """Total 5d->4f emission rate C * chi * nu_bar^3 * r_eff^2, in s^-1."""
    expect_type("r_eff", r_eff, RadialIntegralNm)
    expect_type("nu_bar", nu_bar, WavenumberInvCm)
    expect_type("chi_factor", chi_factor, ChiFactor)
    c = _constant_value(constant)
    return EmissionRatePerSec(_rate_value(c, chi_factor.value, nu_bar.value, r_eff.value))


def transition_rate(
    r_if: DipoleLengthNm,
    nu: WavenumberInvCm,
    chi_factor: ChiFactor,
    constant: RateConstant | None = None,
) -> EmissionRatePerSec:
    """Single initial->final transition rate; exactly 5/3 of the total-rate form."""
    expect_type("r_if", r_if, DipoleLengthNm)
    expect_type("nu", nu, WavenumberInvCm)
    expect_type("chi_factor", chi_factor, ChiFactor)
    c = _constant_value(constant)
    return EmissionRatePerSec(
        5.0 / 3.0 * _rate_value(c, chi_factor.value, nu.value, r_if.value)
    )


def predicted_lifetime_ns(
    r_eff: RadialIntegralNm,
    wavelength: WavelengthNm,
    model: CavityModel,
    n: RefractiveIndex,
    constant: RateConstant | None = None,
) -> LifetimeNs:
    """Lifetime in ns for a given radial integral, wavelength and cavity model."""
    nu_bar = wavelength_to_wavenumber(wavelength)
    rate = total_rate(r_eff, nu_bar, chi(model, n), constant)
    return LifetimeNs(_NS_PER_S / rate.value)


def derive_reff(
    tau: LifetimeNs,
    wavelength: WavelengthNm,
    model: CavityModel,
    n: RefractiveIndex,
    constant: RateConstant | None = None,
) -> RadialIntegralNm:
    """Invert a measured lifetime into the effective radial integral (nm).

    Exact inverse of :func:`predicted_lifetime_ns` in r_eff:
    r_eff = sqrt(1e9 / (tau * C * chi * nu_bar^3)).
    """
    expect_type("tau", tau, LifetimeNs)
    nu_bar = wavelength_to_wavenumber(wavelength)
    chi_factor = chi(model, n)
    c = _constant_value(constant)
    r_sq = _NS_PER_S / (tau.value * c * chi_factor.value * nu_bar.value**3)
    return RadialIntegralNm(math.sqrt(r_sq))
