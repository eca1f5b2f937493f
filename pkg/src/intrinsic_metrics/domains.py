"""Proper subdomains of R^n and their boundary distance ``d_D(x)``.

Three kinds are supported: the unit ball, the upper half-space
``{x : x_n > 0}``, and simple planar polygons. Domains are open, so
boundary points are outside.

Every query accepts a single point of shape ``(n,)`` or a batch of shape
``(N, n)``; batches return arrays.
"""

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DimensionMismatchError, DomainError, PointOutsideDomainError

__all__ = [
    "Kind",
    "Domain",
    "as_point",
    "unit_ball",
    "half_space",
    "polygon",
    "unit_square",
    "load_polygon",
    "contains",
    "boundary_distance",
    "sample_points",
    "bounding_box",
]


class Kind(str, enum.Enum):
    UNIT_BALL = "ball"
    HALF_SPACE = "halfspace"
    POLYGON = "polygon"


@dataclass(frozen=True, eq=False)
class Domain:
    kind: Kind
    dimension: int = 2
    vertices: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.dimension < 2:
            raise DomainError(f"dimension must be >= 2, got {self.dimension}")
        if self.kind is Kind.POLYGON:
            if self.dimension != 2:
                raise DomainError("polygons are planar (n = 2)")
            v = np.array(self.vertices, dtype=float)
            if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
                raise DomainError("a polygon needs at least 3 vertices [x, y]")
            if not np.all(np.isfinite(v)):
                raise DomainError("polygon vertices must be finite")
            if np.allclose(v[0], v[-1]) and len(v) > 3:
                v = v[:-1]
            _check_simple(v)
            v.setflags(write=False)
            object.__setattr__(self, "vertices", v)
        elif self.vertices is not None:
            raise DomainError(f"{self.kind.value} takes no vertices")

    @property
    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge start and end points, each of shape ``(E, 2)``."""
        return self.vertices, np.roll(self.vertices, -1, axis=0)

    def describe(self) -> dict:
        out = {"kind": self.kind.value, "dimension": self.dimension}
        if self.kind is Kind.POLYGON:
            out["vertices"] = self.vertices.tolist()
        return out


def unit_ball(n: int = 2) -> Domain:
    return Domain(Kind.UNIT_BALL, n)


def half_space(n: int = 2) -> Domain:
    return Domain(Kind.HALF_SPACE, n)


def polygon(vertices) -> Domain:
    return Domain(Kind.POLYGON, 2, np.asarray(vertices, dtype=float))


def unit_square() -> Domain:
    return polygon([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def load_polygon(path) -> Domain:
    """Read a polygon from a JSON array of ``[x, y]`` vertex pairs."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in data
    ):
        raise DomainError(f"{path}: expected a JSON array of [x, y] pairs")
    return polygon(data)


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, p):
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_intersect(p1, p2, q1, q2):
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
            and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
        return True
    return ((d1 == 0 and _on_segment(q1, q2, p1))
            or (d2 == 0 and _on_segment(q1, q2, p2))
            or (d3 == 0 and _on_segment(p1, p2, q1))
            or (d4 == 0 and _on_segment(p1, p2, q2)))


def _check_simple(v):
    n = len(v)
    for i in range(n):
        if np.array_equal(v[i], v[(i + 1) % n]):
            raise DomainError("polygon has a repeated vertex")
    twice_area = sum(_orient(v[0], v[i], v[i + 1]) for i in range(1, n - 1))
    if twice_area == 0:
        raise DomainError("polygon is degenerate (zero area)")
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        for j in range(i + 1, n):
            # adjacent edges share a vertex by construction
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_intersect(a, b, v[j], v[(j + 1) % n]):
                raise DomainError("polygon boundary is self-intersecting")


def as_point(x, dimension: int | None = None) -> np.ndarray:
    """Convert to a float array of shape ``(n,)`` or ``(N, n)``."""
    p = np.asarray(x, dtype=float)
    if p.ndim not in (1, 2) or p.shape[-1] < 2:
        raise DimensionMismatchError(f"points need n >= 2 coordinates, got shape {p.shape}")
    if dimension is not None and p.shape[-1] != dimension:
        raise DimensionMismatchError(
            f"expected {dimension}-dimensional points, got {p.shape[-1]}")
    if not np.all(np.isfinite(p)):
        raise DomainError("point coordinates must be finite")
    return p


def _polygon_contains(dom, p):
    # even-odd rule with a horizontal ray towards +x
    a, b = dom.edges
    px = p[..., 0, None]
    py = p[..., 1, None]
    straddles = (a[:, 1] > py) != (b[:, 1] > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = a[:, 0] + (py - a[:, 1]) * (b[:, 0] - a[:, 0]) / (b[:, 1] - a[:, 1])
    inside = np.count_nonzero(straddles & (px < x_cross), axis=-1) % 2 == 1
    # points on the boundary are outside the open set
    return inside & (_polygon_distance(dom, p) > 0.0)


def _polygon_distance(dom, p):
    a, b = dom.edges
    ab = b - a
    ap = p[..., None, :] - a
    t = np.clip(np.sum(ap * ab, axis=-1) / np.sum(ab * ab, axis=-1), 0.0, 1.0)
    nearest = a + t[..., None] * ab
    return np.min(np.linalg.norm(p[..., None, :] - nearest, axis=-1), axis=-1)


def _contains(dom, p):
    if dom.kind is Kind.UNIT_BALL:
        return np.linalg.norm(p, axis=-1) < 1.0
    if dom.kind is Kind.HALF_SPACE:
        return p[..., -1] > 0.0
    return _polygon_contains(dom, p)


def contains(dom: Domain, x):
    """True where ``x`` lies strictly inside ``dom``."""
    p = as_point(x, dom.dimension)
    out = _contains(dom, p)
    return bool(out) if p.ndim == 1 else out


def boundary_distance(dom: Domain, x, check: bool = True):
    """Euclidean distance ``d_D(x)`` from ``x`` to the boundary of ``dom``.

    Raises PointOutsideDomainError if any point is not inside ``dom``
    (skip the membership test with ``check=False`` when the caller already
    knows the points are inside).
    """
    p = as_point(x, dom.dimension)
    if check and not np.all(_contains(dom, p)):
        raise PointOutsideDomainError(f"point(s) outside {dom.kind.value} domain")
    if dom.kind is Kind.UNIT_BALL:
        d = 1.0 - np.linalg.norm(p, axis=-1)
    elif dom.kind is Kind.HALF_SPACE:
        d = p[..., -1].copy()
    else:
        d = _polygon_distance(dom, p)
    return float(d) if p.ndim == 1 else d


def bounding_box(dom: Domain) -> tuple[np.ndarray, np.ndarray]:
    """Box used for rejection sampling.

    The half-space is unbounded, so samples are drawn from
    ``[-1, 1]^(n-1) x (0, 2]``.
    """
    n = dom.dimension
    if dom.kind is Kind.UNIT_BALL:
        return -np.ones(n), np.ones(n)
    if dom.kind is Kind.HALF_SPACE:
        lo = -np.ones(n)
        lo[-1] = 0.0
        hi = np.ones(n)
        hi[-1] = 2.0
        return lo, hi
    return dom.vertices.min(axis=0), dom.vertices.max(axis=0)


def sample_points(dom: Domain, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` points uniformly from ``dom`` by rejection from its box."""
    lo, hi = bounding_box(dom)
    chunks, have = [], 0
    while have < count:
        batch = rng.uniform(lo, hi, size=(max(2 * (count - have), 64), dom.dimension))
        batch = batch[_contains(dom, batch)]
        chunks.append(batch)
        have += len(batch)
    return np.concatenate(chunks)[:count]
