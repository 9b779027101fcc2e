"""Local-field enhancement factors chi(n) for the supported cavity models."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ValidationError, expect_type


class CavityModel(enum.Enum):
    """Which local-field law scales the vacuum emission rate."""

    VACUUM = "vacuum"
    VIRTUAL = "virtual"
    REAL = "real"

    @classmethod
    def from_token(cls, token: str) -> "CavityModel":
        for model in cls:
            if model.value == token:
                return model
        raise ValidationError(
            f"unknown cavity model {token!r}; expected one of "
            f"{[m.value for m in cls]}"
        )


@dataclass(frozen=True)
class RefractiveIndex:
    """Host refractive index (single scalar per host, no dispersion)."""

    value: float

    def __post_init__(self):
        v = self.value
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(f"refractive_index must be a real number, got {v!r}")
        v = float(v)
        if not math.isfinite(v) or v < 1.0:
            raise ValidationError(f"refractive_index must be finite and >= 1, got {self.value!r}")
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class ChiFactor:
    """Dimensionless rate-enhancement factor; >= 1 for any n >= 1."""

    value: float

    def __post_init__(self):
        v = self.value
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(f"chi_factor must be a real number, got {v!r}")
        v = float(v)
        if not math.isfinite(v) or v < 1.0:
            raise ValidationError(f"chi_factor must be finite and >= 1, got {self.value!r}")
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value


def chi(model: CavityModel, n: RefractiveIndex) -> ChiFactor:
    """Evaluate the enhancement factor for one cavity model.

    vacuum:  1
    virtual: n * ((n^2 + 2) / 3)^2       (Lorentz local field)
    real:    n * (3 n^2 / (2 n^2 + 1))^2 (empty-cavity local field)
    """
    expect_type("model", model, CavityModel)
    expect_type("n", n, RefractiveIndex)
    nv = n.value
    if model is CavityModel.VACUUM:
        return ChiFactor(1.0)
    if model is CavityModel.VIRTUAL:
        return ChiFactor(nv * ((nv * nv + 2.0) / 3.0) ** 2)
    return ChiFactor(nv * (3.0 * nv * nv / (2.0 * nv * nv + 1.0)) ** 2)
