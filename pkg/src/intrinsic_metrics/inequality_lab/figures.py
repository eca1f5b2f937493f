"""CSV curve data for the two function plots.

``fig1``: ``t/2``, ``F_1(t)`` and ``min(t, t/2 + log(5/4))`` (plus both
branches of the minimum). ``fig2``: ``l(c,t)``, ``F_c(t)`` and ``u(c,t)``
for one ``c``. Files are comma separated, ``t`` first, LF line endings,
17 significant digits.
"""

import csv
import io
import math
from pathlib import Path

import numpy as np

from ..errors import DomainError
from ..metrics import F_c
from .bounds import l_bound, u_bound

N_SAMPLES = 512
T_END = 6.0
LOG_5_4 = math.log(1.25)


def default_t():
    """512 equally spaced samples on ``(0, 6]``."""
    return T_END * np.arange(1, N_SAMPLES + 1) / N_SAMPLES


def figure_columns(which: str, c: float | None = None, t=None):
    """Return ``(header, columns)`` with ``columns`` of shape ``(len(t), k)``."""
    t = default_t() if t is None else np.atleast_1d(np.asarray(t, dtype=float))
    if which == "fig1":
        header = ["t", "half_t", "F_1", "min_upper", "upper_t", "upper_shift"]
        cols = [t, 0.5 * t, F_c(1.0, t), np.minimum(t, 0.5 * t + LOG_5_4), t, 0.5 * t + LOG_5_4]
    elif which == "fig2":
        if c is None or not c > 0:
            raise DomainError("fig2 needs a positive c")
        header = ["t", "l", "F_c", "u"]
        cols = [t, l_bound(c, t), F_c(c, t), u_bound(c, t)]
    else:
        raise DomainError(f"unknown figure {which!r}; expected fig1 or fig2")
    return header, np.column_stack([np.broadcast_to(col, t.shape) for col in cols])


def rows_ordered(which: str, header, data) -> np.ndarray:
    """Per-row check that the plotted curves are in the proven order."""
    col = {name: data[:, k] for k, name in enumerate(header)}
    if which == "fig1":
        return (col["half_t"] <= col["F_1"]) & (col["F_1"] <= col["min_upper"])
    return (col["l"] < col["F_c"]) & (col["F_c"] <= col["u"])


def to_csv(header, data) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in data:
        writer.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue()


def emit_figure_data(which: str, c: float | None = None, path=None) -> str:
    """Write the CSV for ``which`` to ``path`` (if given) and return its text."""
    header, data = figure_columns(which, c)
    text = to_csv(header, data)
    if path is not None:
        Path(path).write_text(text, newline="")
    return text


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)
