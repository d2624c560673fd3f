"""Weekly demand profiles on a 168-hour hour-of-week grid, plus trace ingestion.

Two profile kinds exist:

* ``peak_normalized`` -- shape of radio demand; the busy hour has value 1.
* ``daily_fraction`` -- each calendar day's 24 values are that day's share of
  requests and sum to 1 (a day with no observations stays all-zero, which only
  arises when ingesting traces that do not cover the full week).

Hour 0 is Monday 00:00 UTC.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

HOURS_PER_WEEK = 168
HOURS_PER_DAY = 24

PEAK_NORMALIZED = "peak_normalized"
DAILY_FRACTION = "daily_fraction"
_KINDS = (PEAK_NORMALIZED, DAILY_FRACTION)

_DAY_SUM_TOL = 1e-9

# The unix epoch fell on a Thursday; shift so hour-of-week 0 is Monday 00:00 UTC.
_EPOCH_HOUR_OFFSET = 72


@dataclass(frozen=True, eq=False)
class WeeklyProfile:
    """168 nonnegative hourly values with a normalization convention."""

    values: np.ndarray
    kind: str

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeeklyProfile)
            and self.kind == other.kind
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.values.tobytes()))

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.shape != (HOURS_PER_WEEK,):
            raise ValueError(f"profile must have exactly {HOURS_PER_WEEK} values, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("profile values must be finite")
        if np.any(arr < 0):
            raise ValueError("profile values must be nonnegative")
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.kind == PEAK_NORMALIZED:
            if abs(arr.max() - 1.0) > _DAY_SUM_TOL:
                raise ValueError("peak_normalized profile must have max value 1")
        else:
            sums = arr.reshape(7, HOURS_PER_DAY).sum(axis=1)
            bad = [d for d, s in enumerate(sums) if abs(s - 1.0) > _DAY_SUM_TOL and s != 0.0]
            if bad:
                raise ValueError(f"daily_fraction profile: day {bad[0]} sums to {sums[bad[0]]!r}, expected 1 or 0")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __getitem__(self, h: int) -> float:
        return float(self.values[h])


@dataclass(frozen=True)
class TraceRecord:
    """One timestamped inference request from a trace."""

    timestamp: float
    request_tokens: int
    response_tokens: int = 0

    def __post_init__(self) -> None:
        if not np.isfinite(self.timestamp):
            raise ValueError("timestamp must be finite")
        if self.request_tokens < 0 or self.response_tokens < 0:
            raise ValueError("token counts must be nonnegative")


@dataclass(frozen=True)
class TraceSummary:
    """Weekly shape and per-request statistics extracted from a trace."""

    profile: WeeklyProfile
    mean_tokens_per_request: float
    record_count: int


def normalize(values: Sequence[float] | np.ndarray, kind: str) -> WeeklyProfile:
    """Normalize 168 raw values into a WeeklyProfile of the given kind.

    peak_normalized divides by the maximum; daily_fraction divides each
    calendar day by that day's sum (all-zero days stay zero). All-zero input
    is rejected.
    """
    arr = np.asarray(values, dtype=np.float64).copy()
    if arr.shape != (HOURS_PER_WEEK,):
        raise ValueError(f"expected {HOURS_PER_WEEK} values, got {arr.shape}")
    if np.any(arr < 0):
        raise ValueError("values must be nonnegative")
    if not np.any(arr > 0):
        raise ValueError("cannot normalize an all-zero profile")
    if kind == PEAK_NORMALIZED:
        arr /= arr.max()
    elif kind == DAILY_FRACTION:
        days = arr.reshape(7, HOURS_PER_DAY)
        sums = days.sum(axis=1)
        nonzero = sums > 0
        days[nonzero] /= sums[nonzero, None]
        arr = days.reshape(HOURS_PER_WEEK)
    else:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    return WeeklyProfile(values=arr, kind=kind)


def load_profile(path: str | Path, kind: str) -> WeeklyProfile:
    """Load a ``hour,value`` CSV with 24 or 168 data rows.

    24-row files describe one day and are tiled across the week before
    normalization.
    """
    path = Path(path)
    values: list[float] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty file, expected 'hour,value' header")
        for i, row in enumerate(reader, start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: row {i}: expected 'hour,value', got {row!r}")
            try:
                v = float(row[1])
            except ValueError as exc:
                raise ValueError(f"{path}: row {i}: unparsable value {row[1]!r}") from exc
            if not np.isfinite(v):
                raise ValueError(f"{path}: row {i}: value must be finite")
            if v < 0:
                raise ValueError(f"{path}: row {i}: negative value {v}")
            values.append(v)
    if len(values) == HOURS_PER_DAY:
        values = values * 7
    elif len(values) != HOURS_PER_WEEK:
        raise ValueError(f"{path}: expected 24 or 168 rows, got {len(values)}")
    return normalize(values, kind)


def builtin_profile(name: str) -> WeeklyProfile:
    """Load one of the bundled default profiles: ``ran_default`` or ``llm_default``."""
    from importlib import resources

    kinds = {"ran_default": PEAK_NORMALIZED, "llm_default": DAILY_FRACTION}
    if name not in kinds:
        raise KeyError(f"unknown builtin profile {name!r}; available: {sorted(kinds)}")
    ref = resources.files("ranshare.data.profiles").joinpath(f"{name}.csv")
    with resources.as_file(ref) as p:
        return load_profile(p, kinds[name])


def hour_of_week(timestamp: float) -> int:
    """Hour-of-week index (Monday 00:00 UTC = 0) for an epoch timestamp."""
    return int((int(timestamp) // 3600 + _EPOCH_HOUR_OFFSET) % HOURS_PER_WEEK)


def ingest_trace(records: Iterable[TraceRecord], token_mode: str = "total") -> TraceSummary:
    """Aggregate a request trace into a weekly daily_fraction profile.

    Requests are bucketed by hour-of-week; each bucket is averaged over the
    number of times that hour-of-week occurs within the trace span, so traces
    covering partial weeks are not biased toward the hours they repeat.

    ``token_mode`` selects what counts toward the per-request token mean:
    ``total`` (request + response, the default) or ``request`` (input only).
    """
    if token_mode not in ("total", "request"):
        raise ValueError(f"token_mode must be 'total' or 'request', got {token_mode!r}")
    records = list(records)
    if not records:
        raise ValueError("trace is empty")

    ts = np.array([r.timestamp for r in records], dtype=np.int64) // 3600
    how = (ts + _EPOCH_HOUR_OFFSET) % HOURS_PER_WEEK
    counts = np.bincount(how, minlength=HOURS_PER_WEEK).astype(np.float64)

    h_min, h_max = int(ts.min()), int(ts.max())
    span_hours = h_max - h_min + 1
    if span_hours < 1:
        warnings.warn("trace spans less than one hour; profile will be a single bucket")
    full_weeks, rem = divmod(span_hours, HOURS_PER_WEEK)
    occurrences = np.full(HOURS_PER_WEEK, full_weeks, dtype=np.float64)
    start = (h_min + _EPOCH_HOUR_OFFSET) % HOURS_PER_WEEK
    for k in range(rem):
        occurrences[(start + k) % HOURS_PER_WEEK] += 1

    with np.errstate(invalid="ignore"):
        avg = np.where(occurrences > 0, counts / np.maximum(occurrences, 1), 0.0)

    profile = normalize(avg, DAILY_FRACTION)

    if token_mode == "total":
        tokens = [r.request_tokens + r.response_tokens for r in records]
    else:
        tokens = [r.request_tokens for r in records]
    mean_tokens = float(np.mean(tokens))
    return TraceSummary(profile=profile, mean_tokens_per_request=mean_tokens, record_count=len(records))


def read_trace_csv(
    path: str | Path,
    timestamp_col: str = "timestamp",
    request_tokens_col: str = "request_tokens",
    response_tokens_col: str = "response_tokens",
) -> list[TraceRecord]:
    """Read a trace CSV into records, with configurable column names.

    A missing response-tokens column is tolerated (treated as 0) with a
    warning, since trace variants differ in which columns they carry.
    """
    path = Path(path)
    out: list[TraceRecord] = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty trace file")
        fields = set(reader.fieldnames)
        for col, label in ((timestamp_col, "timestamp"), (request_tokens_col, "request tokens")):
            if col not in fields:
                raise ValueError(f"{path}: missing {label} column {col!r} (have: {sorted(fields)})")
        has_response = response_tokens_col in fields
        if not has_response:
            warnings.warn(f"{path}: no {response_tokens_col!r} column; treating response tokens as 0")
        for i, row in enumerate(reader, start=1):
            try:
                out.append(
                    TraceRecord(
                        timestamp=float(row[timestamp_col]),
                        request_tokens=int(float(row[request_tokens_col])),
                        response_tokens=int(float(row[response_tokens_col])) if has_response else 0,
                    )
                )
            except (ValueError, TypeError) as exc:
                raise ValueError(f"{path}: row {i}: {exc}") from exc
    return out


def write_profile_csv(profile: WeeklyProfile, path: str | Path) -> None:
    """Write a profile as the standard ``hour,value`` CSV."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["hour", "value"])
        for h, v in enumerate(profile.values):
            writer.writerow([h, f"{v:.9f}"])


def weekly_average(series) -> float:
    """Arithmetic mean of one week of hourly values."""
    arr = np.asarray(series, dtype=np.float64)
    if arr.shape != (HOURS_PER_WEEK,):
        raise ValueError(f"expected {HOURS_PER_WEEK} values, got {arr.shape}")
    return float(arr.mean())
