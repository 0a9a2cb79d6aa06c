import numpy as np
import pytest
from scipy import stats

from evdkit import MonthlySeries, load_embedded_wind, read_csv, seasonal_adjust, write_csv
from evdkit.errors import DomainError, InsufficientDataError, InvariantError, ParseError


def _series(n, start=(2000, 1), values=None):
    y, m = start
    ys, ms = [], []
    for _ in range(n):
        ys.append(y)
        ms.append(m)
        m += 1
        if m == 13:
            y, m = y + 1, 1
    vals = values if values is not None else np.arange(n, dtype=float)
    return MonthlySeries(tuple(ys), tuple(ms), tuple(vals))


def test_embedded_wind():
    w = load_embedded_wind()
    assert w.n == len(w) == 371
    assert w.at(1984, 1) == 33
    assert w.at(2005, 10) == 101
    assert w.value[-1] == 38 and (w.year[-1], w.month[-1]) == (2014, 11)
    assert w.values.max() == 101


def test_at_missing_month():
    with pytest.raises(KeyError):
        load_embedded_wind().at(2014, 12)


def test_round_trip(tmp_path):
    w = load_embedded_wind()
    p = tmp_path / "wind.csv"
    write_csv(w, p)
    back = read_csv(p)
    assert back == w
    assert p.read_text().splitlines()[0] == "year,month,value"


def test_custom_columns(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("yr,mo,speed,other\n2001,11,4.5,x\n2001,12,5,y\n2002,1,6.25,z\n")
    s = read_csv(p, ("yr", "mo", "speed"))
    assert s.value == (4.5, 5.0, 6.25)


def test_month_out_of_range(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("year,month,value\n2001,12,1\n2001,13,2\n")
    with pytest.raises(InvariantError):
        read_csv(p)


def test_gap_rejected():
    with pytest.raises(InvariantError):
        MonthlySeries((2001, 2001), (1, 3), (1.0, 2.0))
    with pytest.raises(InvariantError):
        MonthlySeries((2001,), (1, 2), (1.0,))


def test_non_numeric_cell(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("year,month,value\n2001,1,1.5\n2001,2,abc\n")
    with pytest.raises(ParseError, match=r"line 3, column 'value'.*'abc'"):
        read_csv(p)


def test_non_finite_cell(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("year,month,value\n2001,1,nan\n")
    with pytest.raises(ParseError):
        read_csv(p)


def test_missing_column_and_file(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("year,value\n2001,1\n")
    with pytest.raises(ParseError, match="month"):
        read_csv(p)
    with pytest.raises(ParseError):
        read_csv(tmp_path / "absent.csv")


def test_decimal_point_only(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text('year,month,value\n2001,1,"1,5"\n')
    with pytest.raises(ParseError):
        read_csv(p)


def test_adjust_none_is_identity():
    w = load_embedded_wind()
    np.testing.assert_array_equal(seasonal_adjust(w, "none"), w.values)


def test_adjust_constant_series():
    s = _series(36, values=[7.0] * 36)
    np.testing.assert_array_equal(seasonal_adjust(s), np.full(36, 7.0))


def test_adjust_pure_seasonal():
    s = _series(120, values=[float(m) for m in range(1, 13)] * 10)
    out = seasonal_adjust(s)
    np.testing.assert_allclose(out, np.full(120, np.median(s.values)), atol=1e-12)


def test_adjust_preserves_median():
    w = load_embedded_wind()
    out = seasonal_adjust(w)
    assert abs(np.median(out) - np.median(w.values)) <= 1e-9


def test_adjusted_wind_shape(wind):
    assert stats.skew(wind) > 1.5
    assert stats.kurtosis(wind, fisher=False) > 9


def test_adjust_errors():
    with pytest.raises(InsufficientDataError):
        seasonal_adjust(_series(20))
    with pytest.raises(DomainError):
        seasonal_adjust(_series(30), "stl")
