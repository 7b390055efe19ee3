"""Flood observation data: gaged annual peaks, historical floods, paleoflood
bounds, their measurement-error models, and empirical plotting positions.

Three classes of observation feed the likelihood machinery:

* gaged annual peaks, systematically recorded every water year;
* historical floods, known only because they exceeded a perception
  threshold during a pre-gage record of ``h`` years;
* paleoflood bounds, geologic evidence constraining peak discharge over a
  span of centuries, with uncertain age and discharge.

Datasets are immutable after construction and safe to share read-only.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DataError, ParseError

__all__ = [
    "ErrorModel",
    "NO_ERROR",
    "AnnualPeak",
    "HistoricalFlood",
    "PaleoBound",
    "CensoringSpec",
    "PeakDataset",
    "RdbParseResult",
    "parse_usgs_rdb",
    "write_usgs_rdb",
    "read_historical_paleo_csv",
    "write_historical_paleo_csv",
    "attach_error_models",
    "default_censoring",
    "PlottingPosition",
    "empirical_return_periods",
]


@dataclass(frozen=True)
class ErrorModel:
    """Measurement-error description attached to a single record.

    kind "none" is an exact observation (a single error node with weight 1);
    "normal_cv" is a Gaussian error with standard deviation ``cv * value``;
    "triangular" is a triangular distribution over ``bounds`` with the mode
    at ``mode`` (midpoint when not given).
    """

    kind: str = "none"
    cv: float = 0.0
    bounds: tuple[float, float] | None = None
    mode: float | None = None

    def __post_init__(self):
        if self.kind not in ("none", "normal_cv", "triangular"):
            raise ConfigError(f"unknown error model kind {self.kind!r}")
        if self.cv < 0:
            raise ConfigError(f"cv must be >= 0, got {self.cv}")
        if self.kind == "triangular":
            if self.bounds is None:
                raise ConfigError("triangular error model requires bounds")
            lo, hi = self.bounds
            if not (0 < lo < hi):
                raise ConfigError(f"triangular bounds must satisfy 0 < lower < upper, got {self.bounds}")
            if self.mode is not None and not (lo <= self.mode <= hi):
                raise ConfigError("triangular mode must lie within bounds")

    @property
    def triangle_mode(self) -> float:
        lo, hi = self.bounds
        return 0.5 * (lo + hi) if self.mode is None else self.mode


NO_ERROR = ErrorModel()


@dataclass(frozen=True)
class AnnualPeak:
    """One gaged annual maximum discharge."""

    water_year: int
    discharge: float  # m3/s
    error_model: ErrorModel = NO_ERROR

    def __post_init__(self):
        if not self.discharge > 0:
            raise DataError(f"peak discharge must be > 0, got {self.discharge} (WY {self.water_year})")


@dataclass(frozen=True)
class HistoricalFlood:
    """A pre-gage flood known because it exceeded the perception threshold."""

    year: int
    discharge: float  # m3/s
    error_model: ErrorModel = NO_ERROR

    def __post_init__(self):
        if not self.discharge > 0:
            raise DataError(f"historical discharge must be > 0, got {self.discharge} ({self.year})")


@dataclass(frozen=True)
class PaleoBound:
    """Geologic constraint: over roughly ``age`` years every annual peak fell
    inside the discharge window ``[discharge_lower, discharge_upper]``.

    ``discharge_dist`` describes the uncertain effective threshold within
    the window (triangular over the window by default); ``age_dist`` is
    either ``"uniform"`` or ``"triangular"`` over ``[age_lower, age_upper]``
    years before present.
    """

    discharge_lower: float  # m3/s
    discharge_upper: float  # m3/s
    age_lower: float  # years before present
    age_upper: float  # years before present
    discharge_dist: ErrorModel | None = None
    age_dist: str = "uniform"

    def __post_init__(self):
        if not (0 < self.discharge_lower < self.discharge_upper):
            raise DataError(
                f"paleo bound requires 0 < discharge_lower < discharge_upper, got "
                f"({self.discharge_lower}, {self.discharge_upper})"
            )
        if not (0 < self.age_lower < self.age_upper):
            raise DataError(
                f"paleo bound requires 0 < age_lower < age_upper, got "
                f"({self.age_lower}, {self.age_upper})"
            )
        if self.age_dist not in ("uniform", "triangular"):
            raise ConfigError(f"unknown age distribution {self.age_dist!r}")
        if self.discharge_dist is None:
            object.__setattr__(
                self,
                "discharge_dist",
                ErrorModel(kind="triangular", bounds=(self.discharge_lower, self.discharge_upper)),
            )
        elif self.discharge_dist.kind != "triangular":
            raise ConfigError("paleo discharge distribution must be triangular")

    @property
    def expected_age(self) -> float:
        if self.age_dist == "uniform":
            return 0.5 * (self.age_lower + self.age_upper)
        return (self.age_lower + self.age_upper + 0.5 * (self.age_lower + self.age_upper)) / 3.0

    @property
    def representative_discharge(self) -> float:
        lo, hi = self.discharge_lower, self.discharge_upper
        return (lo + hi + self.discharge_dist.triangle_mode) / 3.0


@dataclass(frozen=True)
class CensoringSpec:
    """Threshold censoring of the historical record.

    Over ``record_length`` years, exactly ``exceedance_count`` peaks exceeded
    ``threshold`` (and were recorded); every other year stayed below it.
    """

    threshold: float  # X0, m3/s
    record_length: float  # h, years
    exceedance_count: int  # k

    def __post_init__(self):
        if not self.threshold > 0:
            raise DataError(f"censoring threshold must be > 0, got {self.threshold}")
        if not self.record_length > 0:
            raise DataError(f"record length must be > 0, got {self.record_length}")
        if self.exceedance_count < 0 or self.exceedance_count > self.record_length:
            raise DataError(
                f"exceedance count {self.exceedance_count} must lie in [0, record length "
                f"{self.record_length}]"
            )


@dataclass(frozen=True)
class PeakDataset:
    """The three observation classes bundled for likelihood evaluation."""

    peaks: tuple[AnnualPeak, ...]
    historical: tuple[HistoricalFlood, ...] = ()
    censoring: CensoringSpec | None = None
    paleo: tuple[PaleoBound, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "peaks", tuple(self.peaks))
        object.__setattr__(self, "historical", tuple(self.historical))
        object.__setattr__(self, "paleo", tuple(self.paleo))
        years = [p.water_year for p in self.peaks]
        if len(set(years)) != len(years):
            dupes = sorted({y for y in years if years.count(y) > 1})
            raise DataError(f"duplicate water years in gage record: {dupes}")
        if self.historical:
            if self.censoring is None:
                raise DataError("historical floods require a CensoringSpec")
            if self.censoring.exceedance_count != len(self.historical):
                raise DataError(
                    f"censoring exceedance count {self.censoring.exceedance_count} != "
                    f"{len(self.historical)} historical records"
                )
            low = [h for h in self.historical if h.discharge < self.censoring.threshold]
            if low:
                raise DataError(
                    f"historical discharges below censoring threshold "
                    f"{self.censoring.threshold}: {[h.discharge for h in low]}"
                )

    @property
    def n_records(self) -> int:
        """Effective record count used by BIC: gaged + historical + paleo."""
        return len(self.peaks) + len(self.historical) + len(self.paleo)

    def gage_discharges(self) -> np.ndarray:
        return np.array([p.discharge for p in self.peaks], dtype=float)

    def observed_discharges(self) -> np.ndarray:
        """Gaged plus historical discharges (paleo bounds are not observations)."""
        vals = [p.discharge for p in self.peaks] + [h.discharge for h in self.historical]
        return np.array(vals, dtype=float)


# ---------------------------------------------------------------------------
# USGS NWIS RDB peak-flow parsing.
# ---------------------------------------------------------------------------

_REQUIRED_COLUMNS = ("site_no", "peak_dt", "peak_va")


@dataclass(frozen=True)
class RdbParseResult:
    """Parsed annual peaks plus the count of rows skipped for missing or
    non-numeric (or non-positive) peak values."""

    peaks: tuple[AnnualPeak, ...]
    skipped: int


def _water_year(date_str: str) -> int:
    # NWIS peak_dt is YYYY-MM-DD, sometimes truncated to YYYY-MM or YYYY.
    parts = date_str.strip().split("-")
    year = int(parts[0])
    month = int(parts[1]) if len(parts) > 1 and parts[1] else 1
    return year + 1 if month >= 10 else year


def parse_usgs_rdb(text) -> RdbParseResult:
    """Parse a USGS NWIS peak-flow export in tab-delimited RDB format.

    Comment lines start with ``#``; the first non-comment line is the header
    naming the columns, the second is the column-format row (skipped), and
    the rest are data rows.  Discharge values are taken as-is in the file's
    units.  Rows whose ``peak_va`` is missing, non-numeric, or non-positive
    are skipped and counted.

    Parameters
    ----------
    text : str or iterable of lines or file-like
        RDB content.

    Returns
    -------
    RdbParseResult
        Peaks in file order plus the skipped-row count.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    elif hasattr(text, "read"):
        lines = text.read().splitlines()
    else:
        lines = [str(line).rstrip("\n") for line in text]

    body = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise ParseError("empty RDB file: no header row found")
    header = [c.strip() for c in body[0].split("\t")]
    missing = [c for c in _REQUIRED_COLUMNS if c not in header]
    if missing:
        raise ParseError(f"RDB header is missing required column(s): {', '.join(missing)}")
    date_col = header.index("peak_dt")
    value_col = header.index("peak_va")

    peaks = []
    skipped = 0
    # body[1] is the column-format row (e.g. "5s 15d 8s"); data starts after.
    for row in body[2:]:
        cells = row.split("\t")
        date = cells[date_col].strip() if date_col < len(cells) else ""
        raw = cells[value_col].strip() if value_col < len(cells) else ""
        try:
            value = float(raw)
            year = _water_year(date)
        except (ValueError, IndexError):
            skipped += 1
            continue
        if not value > 0:
            skipped += 1
            continue
        peaks.append(AnnualPeak(water_year=year, discharge=value))
    return RdbParseResult(peaks=tuple(peaks), skipped=skipped)


def write_usgs_rdb(peaks, stream_or_path, site_no: str = "00000000") -> None:
    """Write peaks in the same RDB layout :func:`parse_usgs_rdb` reads.

    Re-serializing parsed records preserves (year, discharge) pairs exactly;
    peak dates are emitted as June 1 of the water year.
    """
    own = isinstance(stream_or_path, (str, bytes)) or hasattr(stream_or_path, "__fspath__")
    stream = open(stream_or_path, "w") if own else stream_or_path
    try:
        stream.write("# Synthetic peak streamflow export (RDB format)\n")
        stream.write("# Discharge units: m3/s\n")
        stream.write("agency_cd\tsite_no\tpeak_dt\tpeak_va\tpeak_cd\n")
        stream.write("5s\t15s\t10d\t8s\t33s\n")
        for p in peaks:
            value = p.discharge
            text = str(int(value)) if float(int(value)) == value else repr(value)
            stream.write(f"USGS\t{site_no}\t{p.water_year}-06-01\t{text}\t\n")
    finally:
        if own:
            stream.close()


# ---------------------------------------------------------------------------
# Historical / paleo CSV interface.
#
# Columns: kind, year_or_age_lower, age_upper, discharge_or_lower,
# discharge_upper.  kind "historical" fills (year, discharge); kind "paleo"
# fills all four numeric columns.
# ---------------------------------------------------------------------------

_CSV_HEADER = ("kind", "year_or_age_lower", "age_upper", "discharge_or_lower", "discharge_upper")


def read_historical_paleo_csv(stream_or_path):
    """Read the historical/paleo record CSV.

    Returns
    -------
    (list of HistoricalFlood, list of PaleoBound)
    """
    own = isinstance(stream_or_path, (str, bytes)) or hasattr(stream_or_path, "__fspath__")
    stream = open(stream_or_path, newline="") if own else stream_or_path
    try:
        reader = csv.reader(stream)
        rows = [r for r in reader if r and not r[0].lstrip().startswith("#")]
    finally:
        if own:
            stream.close()
    if not rows:
        raise ParseError("empty historical/paleo CSV")
    header = tuple(c.strip() for c in rows[0])
    if header != _CSV_HEADER:
        raise ParseError(f"historical/paleo CSV header must be {_CSV_HEADER}, got {header}")
    historical, paleo = [], []
    for row in rows[1:]:
        kind = row[0].strip().lower()
        if kind == "historical":
            historical.append(HistoricalFlood(year=int(float(row[1])), discharge=float(row[3])))
        elif kind == "paleo":
            paleo.append(
                PaleoBound(
                    age_lower=float(row[1]),
                    age_upper=float(row[2]),
                    discharge_lower=float(row[3]),
                    discharge_upper=float(row[4]),
                )
            )
        else:
            raise ParseError(f"unknown record kind {row[0]!r} (expected historical or paleo)")
    return historical, paleo


def write_historical_paleo_csv(historical, paleo, stream_or_path) -> None:
    own = isinstance(stream_or_path, (str, bytes)) or hasattr(stream_or_path, "__fspath__")
    stream = open(stream_or_path, "w", newline="") if own else stream_or_path
    try:
        writer = csv.writer(stream)
        writer.writerow(_CSV_HEADER)
        for h in historical:
            writer.writerow(["historical", h.year, "", h.discharge, ""])
        for b in paleo:
            writer.writerow(["paleo", b.age_lower, b.age_upper, b.discharge_lower, b.discharge_upper])
    finally:
        if own:
            stream.close()


# ---------------------------------------------------------------------------
# Error-model attachment and plotting positions.
# ---------------------------------------------------------------------------


def attach_error_models(
    dataset: PeakDataset, cv_gage: float = 0.10, cv_historical: float = 0.25
) -> PeakDataset:
    """Return a copy of the dataset with measurement-error models attached.

    Gaged and historical records get Gaussian errors with the given
    coefficients of variation (zero degenerates to an exact observation);
    paleo bounds already carry their triangular discharge distributions.
    """
    if cv_gage < 0 or cv_historical < 0:
        raise ConfigError(f"coefficients of variation must be >= 0, got ({cv_gage}, {cv_historical})")
    gage_err = NO_ERROR if cv_gage == 0 else ErrorModel(kind="normal_cv", cv=cv_gage)
    hist_err = NO_ERROR if cv_historical == 0 else ErrorModel(kind="normal_cv", cv=cv_historical)
    peaks = tuple(replace(p, error_model=gage_err) for p in dataset.peaks)
    historical = tuple(replace(h, error_model=hist_err) for h in dataset.historical)
    return replace(dataset, peaks=peaks, historical=historical)


def default_censoring(historical, gage_start_year: int) -> CensoringSpec:
    """Censoring defaults when the study does not state them: the threshold is
    the smallest historical discharge and the record spans from the earliest
    historical flood to the start of the gage record."""
    if not historical:
        raise DataError("cannot derive censoring defaults without historical floods")
    threshold = min(h.discharge for h in historical)
    earliest = min(h.year for h in historical)
    length = float(gage_start_year - earliest)
    if length <= 0:
        raise DataError(
            f"historical record must pre-date the gage record (earliest {earliest}, "
            f"gage start {gage_start_year})"
        )
    return CensoringSpec(threshold=threshold, record_length=length, exceedance_count=len(historical))


@dataclass(frozen=True)
class PlottingPosition:
    discharge: float  # m3/s
    return_period: float  # years
    kind: str  # "gage" | "historical" | "paleo"


def empirical_return_periods(dataset: PeakDataset) -> list[PlottingPosition]:
    """Weibull plotting positions for display.

    Gaged peaks are ranked descending over the gage record: the i-th largest
    of n peaks plots at T = (n + 1) / i.  Historical floods are ranked among
    themselves over the censoring record length h, at T = (h + 1) / i.  Each
    paleo bound plots at its expected age plus one, at its representative
    discharge.
    """
    if not dataset.peaks:
        raise DataError("plotting positions require at least one annual peak")
    out = []
    gage = np.sort(dataset.gage_discharges())[::-1]
    n = gage.size
    for rank, q in enumerate(gage, start=1):
        out.append(PlottingPosition(float(q), (n + 1) / rank, "gage"))
    if dataset.historical:
        h = dataset.censoring.record_length
        ordered = sorted((rec.discharge for rec in dataset.historical), reverse=True)
        for rank, q in enumerate(ordered, start=1):
            out.append(PlottingPosition(float(q), (h + 1) / rank, "historical"))
    for bound in dataset.paleo:
        out.append(
            PlottingPosition(bound.representative_discharge, bound.expected_age + 1.0, "paleo")
        )
    return out
