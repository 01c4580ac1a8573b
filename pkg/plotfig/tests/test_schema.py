import pytest

from plotfig.schema import SchemaError, load_fits, validate


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_validate_accepts_compare(tmp_path):
    p = write(tmp_path / "c.csv",
              "p,q,h,min_pd,min_sigma,min_pc,d,D\n1,2,0.5,1,1,1,1,1\n")
    rows = validate("ratio", p)
    assert rows[0]["d"] == "1"


@pytest.mark.parametrize("missing", ["p", "q", "h", "min_pd", "min_sigma",
                                     "min_pc", "d", "D"])
def test_validate_rejects_missing_compare_column(tmp_path, missing):
    cols = [c for c in ("p", "q", "h", "min_pd", "min_sigma", "min_pc",
                        "d", "D") if c != missing]
    p = write(tmp_path / "c.csv",
              ",".join(cols) + "\n" + ",".join("1" for _ in cols) + "\n")
    with pytest.raises(SchemaError):
        validate("loglog", p)


def test_validate_rejects_empty_csv(tmp_path):
    p = write(tmp_path / "empty.csv", "p,q,h,band_lo,band_hi\n")
    with pytest.raises(SchemaError):
        validate("butterfly", p)


def test_validate_rejects_unknown_kind(tmp_path):
    p = write(tmp_path / "c.csv", "a,b\n1,2\n")
    with pytest.raises(SchemaError):
        validate("pie-chart", p)


def test_butterfly_accepts_both_formats(tmp_path):
    bands = write(tmp_path / "b.csv",
                  "p,q,h,band_lo,band_hi\n1,2,0.5,0.76,2\n")
    long = write(tmp_path / "l.csv",
                 "p,q,h,theta1,theta2,k,lambda\n1,2,0.5,0,0,0,0.76\n")
    assert validate("butterfly", bands)[0]["band_lo"] == "0.76"
    assert validate("butterfly", long)[0]["lambda"] == "0.76"


def test_load_fits_rejects_garbage(tmp_path):
    p = write(tmp_path / "f.json", "[1, 2, 3]")
    with pytest.raises(SchemaError):
        load_fits(p)
    with pytest.raises(SchemaError):
        load_fits(tmp_path / "missing.json")
