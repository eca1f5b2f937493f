import math

import numpy as np
import pytest

from intrinsic_metrics.errors import DomainError
from intrinsic_metrics.inequality_lab import emit_figure_data, figure_columns, rows_ordered
from intrinsic_metrics.inequality_lab.figures import read_csv


def test_fig1_layout(tmp_path):
    path = tmp_path / "fig1.csv"
    text = emit_figure_data("fig1", path=path)
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.decode() == text
    header, data = read_csv(path)
    assert header == ["t", "half_t", "F_1", "min_upper", "upper_t", "upper_shift"]
    assert data.shape == (512, 6)
    assert data[0, 0] > 0 and data[-1, 0] == 6.0


def test_fig1_rows_ordered(tmp_path):
    path = tmp_path / "fig1.csv"
    emit_figure_data("fig1", path=path)
    header, data = read_csv(path)
    assert np.all(rows_ordered("fig1", header, data))


def test_seventeen_digits_round_trip():
    header, data = figure_columns("fig1")
    text = emit_figure_data("fig1")
    back = np.array([[float(v) for v in line.split(",")] for line in text.splitlines()[1:]])
    assert np.array_equal(back, data)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_fig2_rows_ordered(c):
    header, data = figure_columns("fig2", c)
    assert header == ["t", "l", "F_c", "u"]
    assert np.all(rows_ordered("fig2", header, data))


def test_fig2_touches_u_at_star():
    c = 2.0
    ts = 2 * math.log(2 * c)
    header, data = figure_columns("fig2", c, t=[ts])
    assert abs(data[0, 2] - data[0, 3]) <= 1e-12


def test_errors():
    with pytest.raises(DomainError):
        figure_columns("fig3")
    with pytest.raises(DomainError):
        figure_columns("fig2")


def test_deterministic():
    assert emit_figure_data("fig2", 0.5) == emit_figure_data("fig2", 0.5)
