"""Host-material dataset: records, CSV/JSON interchange, derived columns.

Input CSV schema (mandatory header, comma separator, '.' decimal, lines
starting with '#' skipped)::

    host,source,tau_ns,lambda_nm,n[,rel_uncertainty]

``emit_table`` appends the derived columns
``nu_bar_invcm,chi_virtual,chi_real,reff_nm,y_nm2``; a table emitted this way
parses straight back through :func:`parse_corpus` (extra columns after the
input schema are ignored), so the serialization is lossless for inputs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence, TextIO

from .cavity import CavityModel, ChiFactor, RefractiveIndex, chi
from .errors import (
    RowError,
    SchemaError,
    ValidationError,
    expect_type,
)
from .radiative import derive_reff
from .units import (
    LifetimeNs,
    RadialIntegralNm,
    RateConstant,
    WavelengthNm,
    WavenumberInvCm,
    rate_constant,
    wavelength_to_wavenumber,
)

INPUT_COLUMNS = ("host", "source", "tau_ns", "lambda_nm", "n", "rel_uncertainty")
DERIVED_COLUMNS = ("nu_bar_invcm", "chi_virtual", "chi_real", "reff_nm", "y_nm2")

# rel_uncertainty may be omitted from input files; this flat relative error
# feeds error bars and optional weighting only, never central values.
DEFAULT_REL_UNCERTAINTY = 0.10


@dataclass(frozen=True)
class HostRecord:
    """One measured row: host label, source tag, lifetime, wavelength, index."""

    host: str
    source: str
    tau_ns: LifetimeNs
    lambda_nm: WavelengthNm
    n: RefractiveIndex
    rel_uncertainty: float = DEFAULT_REL_UNCERTAINTY

    def __post_init__(self):
        if not isinstance(self.host, str) or not self.host.strip():
            raise ValidationError(f"host must be a non-empty string, got {self.host!r}")
        if not isinstance(self.source, str):
            raise ValidationError(f"source must be a string, got {self.source!r}")
        expect_type("tau_ns", self.tau_ns, LifetimeNs)
        expect_type("lambda_nm", self.lambda_nm, WavelengthNm)
        expect_type("n", self.n, RefractiveIndex)
        r = self.rel_uncertainty
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise ValidationError(f"rel_uncertainty must be a real number, got {r!r}")
        r = float(r)
        if not math.isfinite(r) or not 0.0 < r < 1.0:
            raise ValidationError(
                f"rel_uncertainty must lie strictly between 0 and 1, got {self.rel_uncertainty!r}"
            )
        object.__setattr__(self, "rel_uncertainty", r)


def make_record(
    host: str,
    source: str,
    tau_ns: float,
    lambda_nm: float,
    n: float,
    rel_uncertainty: float = DEFAULT_REL_UNCERTAINTY,
) -> HostRecord:
    """Build a validated HostRecord from plain scalars."""
    return HostRecord(
        host=host,
        source=source,
        tau_ns=LifetimeNs(tau_ns),
        lambda_nm=WavelengthNm(lambda_nm),
        n=RefractiveIndex(n),
        rel_uncertainty=rel_uncertainty,
    )


@dataclass(frozen=True)
class Corpus:
    """Ordered, immutable collection of host records.

    Duplicate host names are permitted: repeated measurements of one host
    from different sources are independent data points.  Fitting requires
    at least two usable rows, which is enforced at fit time, not here.
    """

    rows: tuple[HostRecord, ...]
    provenance: str = ""

    def __post_init__(self):
        rows = tuple(self.rows)
        for i, row in enumerate(rows):
            expect_type(f"rows[{i}]", row, HostRecord)
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class DerivedRow:
    """A host record plus its derived spectroscopic columns.

    ``y_measured`` (nm^2) is the model-independent ordinate
    1e9 / (tau * C * nu_bar^3), equal to reff_virtual^2 * chi_virtual.
    """

    base: HostRecord
    nu_bar: WavenumberInvCm
    chi_virtual: ChiFactor
    chi_real: ChiFactor
    reff_virtual: RadialIntegralNm
    y_measured: float

    def __post_init__(self):
        expect_type("base", self.base, HostRecord)
        expect_type("nu_bar", self.nu_bar, WavenumberInvCm)
        expect_type("chi_virtual", self.chi_virtual, ChiFactor)
        expect_type("chi_real", self.chi_real, ChiFactor)
        expect_type("reff_virtual", self.reff_virtual, RadialIntegralNm)
        nu_expected = 1e7 / self.base.lambda_nm.value
        if abs(self.nu_bar.value - nu_expected) > 1e-9 * nu_expected:
            raise ValidationError(
                f"nu_bar {self.nu_bar.value!r} inconsistent with lambda_nm "
                f"{self.base.lambda_nm.value!r}"
            )
        y = self.y_measured
        if isinstance(y, bool) or not isinstance(y, (int, float)):
            raise ValidationError(f"y_measured must be a real number, got {y!r}")
        y = float(y)
        y_expected = self.reff_virtual.value**2 * self.chi_virtual.value
        if not math.isfinite(y) or abs(y - y_expected) > 1e-10 * abs(y_expected):
            raise ValidationError(
                f"y_measured {y!r} inconsistent with reff_virtual^2 * chi_virtual "
                f"= {y_expected!r}"
            )
        object.__setattr__(self, "y_measured", y)


# Embedded reference dataset: measured 5d->4f decay parameters of Ce3+ in 23
# host materials plus the free-ion datum, (host, source, tau_ns, lambda_nm, n).
_REFERENCE_ROWS: tuple[tuple[str, str, float, float, float], ...] = (
    ("LaF3", "Lyu1991", 19.0, 292.0, 1.6),
    ("LaF3", "Ped1992", 21.0, 300.0, 1.6),
    ("YAG", "Lyu1991", 59.1, 550.0, 1.9),
    ("YAG", "Ham1989", 65.0, 550.0, 1.9),
    ("CaF2", "Mir1996", 40.0, 330.0, 1.43),
    ("YAlO3", "Lyu1991", 17.1, 362.0, 1.98),
    ("YLiF4", "Lyu1991", 35.7, 320.0, 1.49),
    ("Gd2SiO5", "Pid2003", 56.0, 430.0, 1.89),
    ("Lu2SiO5", "Pid2003", 40.0, 420.0, 1.81),
    ("Lu2SiO5", "Suz1993", 32.0, 400.0, 1.81),
    ("Lu2SiO5", "Suz1993", 54.0, 480.0, 1.81),
    ("LuAlO3", "Pid2003", 18.0, 365.0, 1.94),
    ("Lu2Si2O7", "Pid2003", 38.0, 385.0, 1.74),
    ("Li-Al-B glass", "Das1998", 38.0, 360.0, 1.528),
    ("Sr2B5O9Br", "Dot1999", 38.0, 390.0, 1.65),
    ("Sr2B5O9Br", "Dot1999", 29.0, 355.0, 1.65),
    ("LiSrAlF6", "Mar1994", 28.0, 292.0, 1.41),
    ("LiCaAlF6", "Mar1994", 25.0, 290.0, 1.45),
    ("CaS", "Hos1980", 36.0, 562.0, 2.12),
    ("SrGa2S4", "Hos1980", 20.0, 455.0, 2.17),
    ("BaF2", "Woj2000", 30.0, 320.0, 1.475),
    ("Ca2Al2SiO7", "Yam2002", 40.0, 410.0, 1.68),
    ("YPO4", "Lar2001", 23.0, 345.0, 1.75),
    ("Free ion", "Zha2001", 30.0, 201.0, 1.0),
)


def reference_corpus() -> Corpus:
    """Return the embedded 24-row reference dataset (23 hosts + free ion)."""
    rows = tuple(make_record(*row) for row in _REFERENCE_ROWS)
    return Corpus(rows=rows, provenance="reference")


def derive_rows(
    corpus: Corpus, constant: RateConstant | None = None
) -> list[DerivedRow]:
    """Compute nu_bar, both chi factors, reff (virtual-cavity) and y per row."""
    expect_type("corpus", corpus, Corpus)
    c = rate_constant() if constant is None else expect_type("constant", constant, RateConstant)
    out: list[DerivedRow] = []
    for rec in corpus.rows:
        nu_bar = wavelength_to_wavenumber(rec.lambda_nm)
        chi_v = chi(CavityModel.VIRTUAL, rec.n)
        chi_r = chi(CavityModel.REAL, rec.n)
        reff_v = derive_reff(rec.tau_ns, rec.lambda_nm, CavityModel.VIRTUAL, rec.n, c)
        y = 1e9 / (rec.tau_ns.value * c.value * nu_bar.value**3)
        out.append(
            DerivedRow(
                base=rec,
                nu_bar=nu_bar,
                chi_virtual=chi_v,
                chi_real=chi_r,
                reff_virtual=reff_v,
                y_measured=y,
            )
        )
    return out


def parse_corpus(source: str | TextIO, provenance: str = "") -> Corpus:
    """Parse a CSV stream into a validated Corpus; row order is preserved.

    Raises SchemaError for header problems (naming the offending column),
    RowError with the 1-based line number for unparsable cells, and
    ValidationError (with field name and line) for invariant violations.
    """
    if hasattr(source, "read"):
        content = source.read()
    elif isinstance(source, str):
        content = source
    else:
        raise ValidationError(f"corpus source must be text or a file object, got {type(source).__name__}")

    header: list[str] | None = None
    has_rel = False
    records: list[HostRecord] = []
    for lineno, raw in enumerate(content.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            cells = next(csv.reader([raw]))
        except csv.Error as exc:
            raise RowError(lineno, f"malformed CSV: {exc}") from exc
        if header is None:
            header = _check_header(cells)
            has_rel = len(header) >= 6
            continue
        if len(cells) != len(header):
            raise RowError(
                lineno, f"expected {len(header)} fields per the header, got {len(cells)}"
            )
        records.append(_parse_row(cells, lineno, has_rel))
    if header is None:
        raise SchemaError("no header row found (expected 'host,source,tau_ns,lambda_nm,n[,rel_uncertainty]')")
    return Corpus(rows=tuple(records), provenance=provenance)


def _check_header(cells: list[str]) -> list[str]:
    required = INPUT_COLUMNS[:5]
    for i, name in enumerate(required):
        if i >= len(cells):
            raise SchemaError(f"missing column '{name}'")
        if cells[i] != name:
            raise SchemaError(f"expected column '{name}' at position {i + 1}, got '{cells[i]}'")
    if len(cells) >= 6 and cells[5] != "rel_uncertainty":
        raise SchemaError(f"expected column 'rel_uncertainty' at position 6, got '{cells[5]}'")
    # Columns beyond the input schema (e.g. derived ones from emit_table) are ignored.
    return list(cells)


def _parse_row(cells: list[str], lineno: int, has_rel: bool) -> HostRecord:
    host, src = cells[0], cells[1]
    values: dict[str, float] = {}
    for name, cell in zip(("tau_ns", "lambda_nm", "n"), cells[2:5]):
        try:
            values[name] = float(cell)
        except ValueError as exc:
            raise RowError(lineno, f"column '{name}': could not parse {cell!r} as a number") from exc
    rel = DEFAULT_REL_UNCERTAINTY
    if has_rel and cells[5].strip():
        try:
            rel = float(cells[5])
        except ValueError as exc:
            raise RowError(
                lineno, f"column 'rel_uncertainty': could not parse {cells[5]!r} as a number"
            ) from exc
    try:
        return make_record(host, src, values["tau_ns"], values["lambda_nm"], values["n"], rel)
    except ValidationError as exc:
        raise ValidationError(f"line {lineno}: {exc}") from exc


def _plain(v: float) -> str:
    """Lossless float formatting; integral values print without a decimal point."""
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _sig3(v: float) -> str:
    """Three significant figures in fixed notation, trailing zeros kept."""
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    decimals = max(0, 2 - math.floor(math.log10(abs(v))))
    return f"{v:.{decimals}f}"


def _row_cells(row: DerivedRow) -> list[str]:
    rec = row.base
    return [
        rec.host,
        rec.source,
        _plain(rec.tau_ns.value),
        _plain(rec.lambda_nm.value),
        _plain(rec.n.value),
        _plain(rec.rel_uncertainty),
        f"{row.nu_bar.value:.2f}",
        _sig3(row.chi_virtual.value),
        _sig3(row.chi_real.value),
        f"{row.reff_virtual.value:.4f}",
        f"{row.y_measured:.6g}",
    ]


def _row_json(row: DerivedRow) -> dict:
    rec = row.base
    return {
        "host": rec.host,
        "source": rec.source,
        "tau_ns": rec.tau_ns.value,
        "lambda_nm": rec.lambda_nm.value,
        "n": rec.n.value,
        "rel_uncertainty": rec.rel_uncertainty,
        "nu_bar_invcm": row.nu_bar.value,
        "chi_virtual": row.chi_virtual.value,
        "chi_real": row.chi_real.value,
        "reff_nm": row.reff_virtual.value,
        "y_nm2": row.y_measured,
    }


def emit_table(rows: Sequence[DerivedRow], format: str = "csv") -> str:
    """Serialize derived rows to 'csv' (display rounding) or 'json' (full precision)."""
    rows = list(rows)
    if not rows:
        raise ValidationError("cannot emit an empty table")
    for i, row in enumerate(rows):
        expect_type(f"rows[{i}]", row, DerivedRow)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(INPUT_COLUMNS + DERIVED_COLUMNS)
        for row in rows:
            writer.writerow(_row_cells(row))
        return buf.getvalue()
    if format == "json":
        return json.dumps([_row_json(row) for row in rows], indent=2) + "\n"
    raise ValidationError(f"unknown table format {format!r}; expected 'csv' or 'json'")
