import csv

import pytest

from desc_entropy.plotting import PlotError, PlotSpec, emit_plot


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def test_line_plot_is_byte_stable(tmp_path):
    src = tmp_path / "data.csv"
    write_csv(src, ["n", "a", "b"], [[1, 0.1, 2], [2, 0.5, 3], [3, 0.7, 5]])
    spec = PlotSpec("n", ["a", "b"], title="demo", marker_x=2, marker_label="mark")
    first = emit_plot(str(src), spec, str(tmp_path / "one.svg"))
    second = emit_plot(str(src), spec, str(tmp_path / "two.svg"))
    data = open(first, "rb").read()
    assert data.startswith(b"<?xml") and b"<svg" in data
    assert data == open(second, "rb").read()


def test_filter_and_log_axes(tmp_path):
    src = tmp_path / "data.csv"
    write_csv(src, ["n", "g", "y"], [[1, "x", 1], [10, "x", 10], [100, "z", 5]])
    out = tmp_path / "f.svg"
    emit_plot(str(src), PlotSpec("n", ["y"], where={"g": "x"}, logx=True, logy=True, scatter=True), str(out))
    assert out.exists()


def test_empty_csv_writes_nothing(tmp_path):
    src = tmp_path / "empty.csv"
    write_csv(src, ["n", "y"], [])
    out = tmp_path / "never.svg"
    with pytest.raises(PlotError):
        emit_plot(str(src), PlotSpec("n", ["y"]), str(out))
    assert not out.exists()


def test_missing_column(tmp_path):
    src = tmp_path / "d.csv"
    write_csv(src, ["n", "y"], [[1, 2]])
    with pytest.raises(PlotError, match="lacks column"):
        emit_plot(str(src), PlotSpec("n", ["z"]), str(tmp_path / "x.svg"))


def test_filter_without_matches(tmp_path):
    src = tmp_path / "d.csv"
    write_csv(src, ["n", "y", "g"], [[1, 2, "a"]])
    with pytest.raises(PlotError, match="match"):
        emit_plot(str(src), PlotSpec("n", ["y"], where={"g": "b"}), str(tmp_path / "x.svg"))
