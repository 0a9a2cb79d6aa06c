"""Monthly series handling: the embedded wind-speed record, CSV input and
output, and a simple seasonal adjustment.

The CSV format is a ``year,month,value`` header followed by one row per
month, UTF-8, decimal point only.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, InsufficientDataError, InvariantError, ParseError

__all__ = [
    "MonthlySeries",
    "load_embedded_wind",
    "read_csv",
    "write_csv",
    "seasonal_adjust",
    "ADJUST_METHODS",
]

ADJUST_METHODS = ("none", "monthly_median")

# Monthly maximum wind speed (mph), January 1984 to November 2014.
_WIND_TABLE = {
    1984: (33, 40, 46, 41, 31, 37, 41, 56, 45, 31, 40, 35),
    1985: (33, 43, 36, 36, 48, 45, 51, 44, 38, 36, 40, 32),
    1986: (51, 37, 43, 33, 35, 44, 41, 41, 33, 45, 38, 43),
    1987: (62, 45, 51, 39, 35, 58, 48, 35, 43, 49, 43, 39),
    1988: (39, 40, 39, 45, 48, 43, 45, 36, 40, 36, 47, 35),
    1989: (40, 39, 44, 37, 36, 38, 37, 41, 38, 36, 36, 48),
    1990: (37, 40, 38, 37, 37, 38, 49, 66, 39, 45, 37, 35),
    1991: (39, 52, 66, 51, 39, 64, 59, 36, 36, 36, 41, 41),
    1992: (39, 45, 40, 37, 33, 66, 38, 59, 38, 41, 45, 35),
    1993: (43, 39, 74, 63, 37, 45, 52, 43, 44, 52, 36, 43),
    1994: (46, 40, 43, 29, 39, 53, 32, 41, 52, 31, 46, 48),
    1995: (49, 41, 32, 37, 29, 43, 40, 47, 45, 38, 28, 30),
    1996: (40, 36, 37, 38, 37, 33, 30, 34, 38, 45, 40, 31),
    1997: (39, 31, 31, 38, 32, 34, 45, 39, 31, 29, 39, 36),
    1998: (34, 55, 38, 37, 36, 34, 44, 32, 54, 30, 39, 30),
    1999: (41, 33, 36, 39, 33, 33, 30, 40, 44, 61, 34, 26),
    2000: (38, 26, 34, 36, 28, 36, 43, 35, 43, 37, 40, 35),
    2001: (36, 28, 41, 30, 31, 48, 43, 43, 49, 36, 38, 30),
    2002: (33, 35, 36, 45, 29, 43, 33, 39, 38, 29, 38, 41),
    2003: (31, 35, 40, 33, 51, 33, 40, 45, 32, 29, 35, 37),
    2004: (35, 30, 32, 39, 32, 39, 38, 39, 83, 30, 33, 39),
    2005: (33, 36, 39, 44, 31, 43, 44, 43, 41, 101, 37, 33),
    2006: (55, 43, 30, 32, 32, 46, 47, 43, 32, 31, 32, 41),
    2007: (37, 37, 44, 43, 33, 41, 49, 39, 40, 43, 36, 35),
    2008: (37, 44, 39, 47, 52, 39, 39, 48, 37, 35, 40, 33),
    2009: (38, 36, 36, 38, 40, 49, 54, 47, 37, 33, 39, 36),
    2010: (36, 62, 43, 32, 32, 58, 35, 35, 38, 32, 33, 46),
    2011: (40, 44, 51, 59, 33, 41, 36, 53, 45, 39, 32, 31),
    2012: (40, 35, 41, 38, 66, 49, 52, 61, 36, 52, 30, 37),
    2013: (31, 35, 45, 40, 40, 47, 38, 51, 37, 46, 39, 31),
    2014: (36, 36, 46, 44, 46, 58, 46, 50, 39, 44, 38),
}


@dataclass(frozen=True)
class MonthlySeries:
    """Consecutive monthly observations.

    Invariants: equal-length fields, months in 1..12, and each (year, month)
    exactly one month after its predecessor.
    """

    year: tuple
    month: tuple
    value: tuple

    def __post_init__(self):
        year = tuple(int(v) for v in self.year)
        month = tuple(int(v) for v in self.month)
        value = tuple(float(v) for v in self.value)
        if not (len(year) == len(month) == len(value)):
            raise InvariantError(f"field lengths differ: {len(year)}, {len(month)}, {len(value)}")
        for i, m in enumerate(month):
            if not 1 <= m <= 12:
                raise InvariantError(f"row {i + 1}: month must be in 1..12, got {m}")
        for i in range(1, len(year)):
            prev = year[i - 1] * 12 + month[i - 1]
            cur = year[i] * 12 + month[i]
            if cur != prev + 1:
                raise InvariantError(
                    f"row {i + 1}: ({year[i]}, {month[i]}) does not follow ({year[i - 1]}, {month[i - 1]}) by one month"
                )
        object.__setattr__(self, "year", year)
        object.__setattr__(self, "month", month)
        object.__setattr__(self, "value", value)

    @property
    def n(self) -> int:
        return len(self.value)

    def __len__(self):
        return len(self.value)

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.value, dtype=float)

    def at(self, year: int, month: int) -> float:
        """Value observed in ``year``/``month``."""
        for y, m, v in zip(self.year, self.month, self.value):
            if y == year and m == month:
                return v
        raise KeyError((year, month))


def load_embedded_wind() -> MonthlySeries:
    """The 371-month wind-speed record (Jan 1984 to Nov 2014)."""
    years, months, values = [], [], []
    for y, row in _WIND_TABLE.items():
        for m, v in enumerate(row, start=1):
            years.append(y)
            months.append(m)
            values.append(v)
    return MonthlySeries(tuple(years), tuple(months), tuple(values))


def read_csv(path, col_spec: Sequence[str] = ("year", "month", "value")) -> MonthlySeries:
    """Read a monthly series from CSV.

    Parameters
    ----------
    path : str or Path
    col_spec : (str, str, str)
        Header names of the year, month and value columns.

    Raises
    ------
    ParseError
        Missing columns or a cell that does not parse; the message names
        the row and column.
    InvariantError
        Months out of range, unordered or with interior gaps.
    """
    ycol, mcol, vcol = col_spec
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot open {path}: {exc}") from None
    years, months, values = [], [], []
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in (ycol, mcol, vcol) if c not in header]
        if missing:
            raise ParseError(f"{path}: missing column(s) {missing}; header is {header}")
        for lineno, row in enumerate(reader, start=2):
            for col, conv, out in ((ycol, int, years), (mcol, int, months), (vcol, float, values)):
                cell = (row.get(col) or "").strip()
                try:
                    v = conv(cell)
                except ValueError:
                    raise ParseError(f"{path}: line {lineno}, column {col!r}: cannot parse {cell!r}") from None
                if conv is float and not math.isfinite(v):
                    raise ParseError(f"{path}: line {lineno}, column {col!r}: non-finite value {cell!r}")
                out.append(v)
    return MonthlySeries(tuple(years), tuple(months), tuple(values))


def write_csv(series: MonthlySeries, path) -> None:
    """Write ``series`` as ``year,month,value`` CSV (values in shortest repr)."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["year", "month", "value"])
        for y, m, v in zip(series.year, series.month, series.value):
            w.writerow([y, m, repr(v)])


def seasonal_adjust(series: MonthlySeries, method: str = "monthly_median") -> np.ndarray:
    """Remove a monthly level pattern.

    ``monthly_median`` subtracts, for every calendar month, the difference
    between that month's median and the overall median, then shifts the
    result so its median equals the raw median exactly.  ``none`` returns
    the values unchanged.

    Raises
    ------
    InsufficientDataError
        Fewer than 24 observations for ``monthly_median``.
    """
    x = series.values
    if method == "none":
        return x.copy()
    if method != "monthly_median":
        raise DomainError(f"unknown adjustment {method!r}; expected one of {ADJUST_METHODS}")
    if x.size < 24:
        raise InsufficientDataError(f"monthly_median adjustment needs at least 24 observations, got {x.size}")
    month = np.asarray(series.month)
    overall = float(np.median(x))
    out = x.copy()
    for m in range(1, 13):
        sel = month == m
        if sel.any():
            out[sel] -= np.median(x[sel]) - overall
    out += overall - np.median(out)
    return out
