"""Intrinsic metrics: j_D, h_{D,c}, the hyperbolic metrics of B^n and H^n,
and the transform ``F_c(t) = log(1 + 2c sinh(t/2))`` that turns any base
metric into ``W_c = F_c o base``.

All functions accept single points ``(n,)`` or batches ``(N, n)``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .domains import Domain, Kind, as_point, boundary_distance
from .errors import DimensionMismatchError, DomainError, PointOutsideDomainError

__all__ = [
    "Base",
    "MetricSpec",
    "euclidean",
    "j_metric",
    "h_metric",
    "rho_ball",
    "rho_halfspace",
    "rho",
    "F_c",
    "F_c_excess",
    "W_metric",
    "base_metric",
    "mobius_T_a",
    "mobius_T_a_inverse",
]

# beyond this F_c switches to the form log c + t/2 + log1p(...)
_LARGE_T = 40.0


class Base(str, enum.Enum):
    J = "j"
    RHO = "rho"
    H = "h"


@dataclass(frozen=True)
class MetricSpec:
    """Selects the base metric and the parameter ``c`` of ``F_c``.

    ``c`` plays the role of lambda for the disk metric ``W_lambda``.
    ``h_c`` is the parameter of ``h_{D,c}`` when it is used as the base.
    The triangle inequality is only guaranteed for ``c >= 1`` (and, for
    ``h`` itself, ``h_c >= 2``); smaller values are allowed so the
    counterexamples can be evaluated.
    """

    base: Base
    c: float
    domain: Domain
    h_c: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "base", Base(self.base))
        if not self.c > 0:
            raise DomainError(f"c must be positive, got {self.c!r}")
        if self.base is Base.RHO and self.domain.kind is Kind.POLYGON:
            raise DomainError("the hyperbolic metric is only available on the ball and half-space")

    @property
    def is_metric(self) -> bool:
        if self.base is Base.H and self.h_c < 2.0:
            return False
        return self.c >= 1.0

    def describe(self) -> dict:
        return {"base": self.base.value, "c": self.c, "h_c": self.h_c,
                "domain": self.domain.describe()}


def _scalar_or_array(v, *points):
    if all(np.ndim(p) == 1 for p in points):
        return float(v)
    return v


def _pair(dom_dim, x, y):
    x = as_point(x, dom_dim)
    y = as_point(y, dom_dim if dom_dim is not None else x.shape[-1])
    if x.shape[-1] != y.shape[-1]:
        raise DimensionMismatchError("points have different dimensions")
    return x, y


def euclidean(x, y):
    x, y = _pair(None, x, y)
    return _scalar_or_array(np.linalg.norm(x - y, axis=-1), x, y)


def j_metric(dom: Domain, x, y):
    """Distance ratio metric ``log(1 + |x-y| / min(d(x), d(y)))``."""
    x, y = _pair(dom.dimension, x, y)
    dx = boundary_distance(dom, x)
    dy = boundary_distance(dom, y)
    v = np.log1p(np.linalg.norm(x - y, axis=-1) / np.minimum(dx, dy))
    return _scalar_or_array(v, x, y)


def h_metric(dom: Domain, c: float, x, y):
    """``log(1 + c |x-y| / sqrt(d(x) d(y)))``; a metric when ``c >= 2``."""
    if not c > 0:
        raise DomainError(f"c must be positive, got {c!r}")
    x, y = _pair(dom.dimension, x, y)
    dx = boundary_distance(dom, x)
    dy = boundary_distance(dom, y)
    v = np.log1p(c * np.linalg.norm(x - y, axis=-1) / np.sqrt(dx * dy))
    return _scalar_or_array(v, x, y)


def rho_ball(x, y):
    """Hyperbolic distance in the unit ball.

    Uses ``sinh(rho/2) = |x-y| / sqrt((1-|x|^2)(1-|y|^2))``, which is the
    tanh formula rewritten so nearby points keep full relative accuracy.
    """
    x, y = _pair(None, x, y)
    nx = np.linalg.norm(x, axis=-1)
    ny = np.linalg.norm(y, axis=-1)
    if np.any(nx >= 1.0) or np.any(ny >= 1.0):
        raise PointOutsideDomainError("point(s) outside the unit ball")
    gap = np.sqrt((1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny))
    v = 2.0 * np.arcsinh(np.linalg.norm(x - y, axis=-1) / gap)
    return _scalar_or_array(v, x, y)


def rho_halfspace(x, y):
    """Hyperbolic distance in ``{x_n > 0}`` via ``sinh(rho/2) = |x-y| / (2 sqrt(x_n y_n))``."""
    x, y = _pair(None, x, y)
    if np.any(x[..., -1] <= 0.0) or np.any(y[..., -1] <= 0.0):
        raise PointOutsideDomainError("point(s) outside the upper half-space")
    v = 2.0 * np.arcsinh(
        np.linalg.norm(x - y, axis=-1) / (2.0 * np.sqrt(x[..., -1] * y[..., -1])))
    return _scalar_or_array(v, x, y)


def rho(dom: Domain, x, y):
    x, y = _pair(dom.dimension, x, y)
    if dom.kind is Kind.UNIT_BALL:
        return rho_ball(x, y)
    if dom.kind is Kind.HALF_SPACE:
        return rho_halfspace(x, y)
    raise DomainError("no closed-form hyperbolic metric for polygons")


def F_c(c, t):
    """``log(1 + 2c sinh(t/2))`` for ``c > 0``, ``t >= 0``.

    Strictly increasing in both arguments, ``F_c(0) = 0``. For large ``t``
    the equivalent ``log c + t/2 + log1p(e^{-t/2}/c - e^{-t})`` is used so
    no intermediate overflows.
    """
    c_arr = np.asarray(c, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    if np.any(c_arr <= 0):
        raise DomainError("F_c needs c > 0")
    if np.any(t_arr < 0) or np.any(np.isnan(t_arr)):
        raise DomainError("F_c needs t >= 0")
    small = np.minimum(t_arr, _LARGE_T)
    big = np.maximum(t_arr, _LARGE_T)
    v = np.where(
        t_arr <= _LARGE_T,
        np.log1p(2.0 * c_arr * np.sinh(0.5 * small)),
        np.log(c_arr) + 0.5 * big + np.log1p(np.exp(-0.5 * big) / c_arr - np.exp(-big)),
    )
    return float(v) if v.ndim == 0 else v


def F_c_excess(c, t):
    """``F_c(t) - t/2`` evaluated without cancellation for large ``t``.

    ``F_c(t) - t/2 = log(c (1 - e^{-t}) + e^{-t/2})``; for ``t > 1`` it is
    computed as ``log1p((c - 1) + e^{-t/2} - c e^{-t})`` so that at ``c = 1``
    the tiny excess ``~ e^{-t/2}`` survives even when ``F_c(t)`` itself
    rounds to ``t/2``.
    """
    c_arr = np.asarray(c, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    lo = np.minimum(t_arr, 1.0)
    hi = np.maximum(t_arr, 1.0)
    v = np.where(
        t_arr <= 1.0,
        np.log1p(2.0 * c_arr * np.sinh(0.5 * lo)) - 0.5 * lo,
        np.log1p((c_arr - 1.0) + np.exp(-0.5 * hi) - c_arr * np.exp(-hi)),
    )
    return float(v) if v.ndim == 0 else v


def base_metric(spec: MetricSpec, x, y):
    if spec.base is Base.J:
        return j_metric(spec.domain, x, y)
    if spec.base is Base.RHO:
        return rho(spec.domain, x, y)
    return h_metric(spec.domain, spec.h_c, x, y)


def W_metric(spec: MetricSpec, x, y):
    """``F_c`` applied to the base metric of ``spec``.

    With base ``j`` this is the intrinsic metric ``log(1 + 2c sinh(j/2))``;
    with base ``rho`` on the disk and ``c = lambda`` it is ``W_lambda``.
    """
    return F_c(spec.c, base_metric(spec, x, y))


def _to_complex(p):
    p = as_point(p, 2)
    return p[..., 0] + 1j * p[..., 1]


def _from_complex(z):
    return np.stack([np.real(z), np.imag(z)], axis=-1)


def _check_disk(p, what):
    if not np.all(contains_disk(p)):
        raise PointOutsideDomainError(f"{what} must lie in the open unit disk")


def contains_disk(p):
    return np.linalg.norm(as_point(p, 2), axis=-1) < 1.0


def mobius_T_a(a, x):
    """Disk automorphism ``(x - a) / (1 - conj(a) x)``; sends ``a`` to 0.

    Planar only. ``a`` is one point; ``x`` may be a batch.
    """
    _check_disk(a, "a")
    _check_disk(x, "x")
    za, zx = _to_complex(a), _to_complex(x)
    w = (zx - za) / (1.0 - np.conj(za) * zx)
    return _from_complex(w)


def mobius_T_a_inverse(a, w):
    """Inverse of :func:`mobius_T_a`, which is ``T_{-a}``."""
    return mobius_T_a(-as_point(a, 2), w)
