"""Weighted least-squares estimation of r_eff^2 per cavity model.

The measured ordinate per row is y = r^2 * chi (nm^2), model-independent;
each cavity model predicts y = a * chi_model(n) with the single parameter
a = r_eff^2, so the minimizer of  sum_i w_i (y_i - a chi_i)^2  has the
closed form  a = sum(w chi y) / sum(w chi^2).  No iterative optimizer is
needed; a brute-force grid search over a confirms the closed form in the
test suite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .cavity import CavityModel
from .corpus import DerivedRow
from .errors import (
    FitTieError,
    InsufficientDataError,
    InvalidModelError,
    ValidationError,
    expect_type,
)
from .units import RadialIntegralNm

_TIE_REL_TOL = 1e-12


class WeightScheme(enum.Enum):
    """Row weighting for the least-squares objective.

    relative -- w = 1/y^2, equal relative errors (default; matches a flat
                percentage uncertainty on every measured lifetime)
    uniform  -- w = 1, equal absolute errors
    inverse  -- w = 1/y, intermediate
    """

    RELATIVE = "relative"
    UNIFORM = "uniform"
    INVERSE_VALUE = "inverse"

    @classmethod
    def from_token(cls, token: str) -> "WeightScheme":
        for scheme in cls:
            if scheme.value == token:
                return scheme
        raise ValidationError(
            f"unknown weight scheme {token!r}; expected one of {[s.value for s in cls]}"
        )

    def weight(self, y: float) -> float:
        if self is WeightScheme.RELATIVE:
            return 1.0 / (y * y)
        if self is WeightScheme.UNIFORM:
            return 1.0
        return 1.0 / y


@dataclass(frozen=True)
class FitResult:
    """One model's weighted least-squares fit of a = r_eff^2."""

    model: CavityModel
    reff_sq: float
    reff: RadialIntegralNm
    weighted_rss: float
    n_points: int
    scheme: WeightScheme
    included_vacuum_rows: bool
    # False when all chi values coincide: the fit is well defined but the
    # corpus cannot distinguish cavity models.
    discriminating: bool = True

    def to_json_dict(self) -> dict:
        return {
            "model": self.model.value,
            "reff_nm": self.reff.value,
            "reff_sq_nm2": self.reff_sq,
            "weighted_rss": self.weighted_rss,
            "n_points": self.n_points,
            "scheme": self.scheme.value,
            "include_vacuum": self.included_vacuum_rows,
        }


@dataclass(frozen=True)
class ModelComparison:
    """Paired fits on identical inputs, ranked by weighted RSS."""

    virtual: FitResult
    real: FitResult
    winner: CavityModel
    rss_ratio: float  # loser / winner, > 1

    def to_json_dict(self) -> dict:
        return {
            "virtual": self.virtual.to_json_dict(),
            "real": self.real.to_json_dict(),
            "winner": self.winner.value,
            "rss_ratio": self.rss_ratio,
        }


def _usable_rows(rows: Sequence[DerivedRow], include_vacuum: bool) -> list[DerivedRow]:
    usable = []
    for i, row in enumerate(rows):
        expect_type(f"rows[{i}]", row, DerivedRow)
        if row.base.n.value == 1.0 and not include_vacuum:
            continue
        usable.append(row)
    return usable


def fit_model(
    rows: Sequence[DerivedRow],
    model: CavityModel,
    scheme: WeightScheme = WeightScheme.RELATIVE,
    include_vacuum: bool = False,
) -> FitResult:
    """Fit a = r_eff^2 for one cavity model against the measured y values.

    Rows with n == 1 are excluded unless ``include_vacuum`` is set: they are
    not dielectric-medium measurements and both models coincide there.
    """
    expect_type("model", model, CavityModel)
    expect_type("scheme", scheme, WeightScheme)
    if model is CavityModel.VACUUM:
        raise InvalidModelError("cannot fit the vacuum model; choose 'virtual' or 'real'")
    usable = _usable_rows(rows, include_vacuum)
    if len(usable) < 2:
        raise InsufficientDataError(
            f"need at least 2 usable rows to fit, got {len(usable)}"
            + ("" if include_vacuum else " after excluding n == 1 rows")
        )
    # Fixed summation order: sort on a stable key so row order can never
    # change the accumulated sums.
    usable.sort(
        key=lambda r: (r.base.n.value, r.y_measured, r.base.host, r.base.source)
    )
    pts = []
    for row in usable:
        y = row.y_measured
        if y <= 0.0:
            raise ValidationError(f"non-positive y value {y!r} for host {row.base.host!r}")
        x = (row.chi_virtual if model is CavityModel.VIRTUAL else row.chi_real).value
        pts.append((scheme.weight(y), x, y))
    a = math.fsum(w * x * y for w, x, y in pts) / math.fsum(w * x * x for w, x, y in pts)
    rss = math.fsum(w * (y - a * x) ** 2 for w, x, y in pts)
    xs = [x for _, x, _ in pts]
    discriminating = (max(xs) - min(xs)) > 1e-12 * max(xs)
    return FitResult(
        model=model,
        reff_sq=a,
        reff=RadialIntegralNm(math.sqrt(a)),
        weighted_rss=rss,
        n_points=len(usable),
        scheme=scheme,
        included_vacuum_rows=include_vacuum,
        discriminating=discriminating,
    )


def compare_models(
    rows: Sequence[DerivedRow],
    scheme: WeightScheme = WeightScheme.RELATIVE,
    include_vacuum: bool = False,
) -> ModelComparison:
    """Fit both models on identical inputs and rank them by weighted RSS."""
    virtual = fit_model(rows, CavityModel.VIRTUAL, scheme, include_vacuum)
    real = fit_model(rows, CavityModel.REAL, scheme, include_vacuum)
    hi = max(virtual.weighted_rss, real.weighted_rss)
    if abs(virtual.weighted_rss - real.weighted_rss) <= _TIE_REL_TOL * hi:
        raise FitTieError(
            "models produced equal weighted RSS "
            f"({virtual.weighted_rss!r} vs {real.weighted_rss!r}); no winner"
        )
    if virtual.weighted_rss < real.weighted_rss:
        winner, loser = virtual, real
    else:
        winner, loser = real, virtual
    ratio = math.inf if winner.weighted_rss == 0.0 else loser.weighted_rss / winner.weighted_rss
    return ModelComparison(
        virtual=virtual, real=real, winner=winner.model, rss_ratio=ratio
    )
