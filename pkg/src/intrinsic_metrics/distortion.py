"""Distortion bounds for K-quasiregular self-maps of the unit disk.

Test maps have known maximal dilatation:

* ``RadialStretch(K)``: ``z -> |z|^(1/K - 1) z``, K-quasiconformal.
* ``Power(m)``: ``z -> z^m``, analytic (K = 1), not injective for m >= 2.
* ``MobiusConjugated(inner, a)``: ``T_a^-1 o inner o T_a``, same K as ``inner``.

The checks use the upper end of ``cK_bounds`` as the constant ``c(K)``.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .domains import as_point
from .errors import DomainError, PointOutsideDomainError
from .metrics import F_c, mobius_T_a, mobius_T_a_inverse, rho_ball
from .reports import VerificationReport, point_witness
from .special_functions import cK_bounds

__all__ = [
    "RadialStretch",
    "Power",
    "MobiusConjugated",
    "apply_map",
    "sample_disk",
    "operative_cK",
    "check_schwarz_hyperbolic",
    "check_Wlambda_distortion",
    "check_lipschitz_transfer",
    "check_schwarz_pick_strict",
    "check_mobius_invariance",
]

BATCH = 50_000


@dataclass(frozen=True)
class RadialStretch:
    K: float

    def __post_init__(self):
        if not self.K >= 1.0:
            raise DomainError(f"K must be >= 1, got {self.K!r}")

    @property
    def K_of_map(self) -> float:
        return float(self.K)

    def __call__(self, z):
        r = np.linalg.norm(z, axis=-1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            scale = np.where(r > 0.0, r ** (1.0 / self.K - 1.0), 0.0)
        return z * scale

    def describe(self) -> dict:
        return {"kind": "radial", "K": self.K}


@dataclass(frozen=True)
class Power:
    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")

    @property
    def K_of_map(self) -> float:
        return 1.0

    def __call__(self, z):
        w = (z[..., 0] + 1j * z[..., 1]) ** int(self.m)
        return np.stack([w.real, w.imag], axis=-1)

    def describe(self) -> dict:
        return {"kind": "power", "m": int(self.m)}


@dataclass(frozen=True)
class MobiusConjugated:
    inner: object
    a: tuple

    def __post_init__(self):
        a = as_point(self.a, 2)
        if np.linalg.norm(a) >= 1.0:
            raise DomainError("conjugating point must lie in the unit disk")
        object.__setattr__(self, "a", tuple(float(v) for v in a))

    @property
    def K_of_map(self) -> float:
        return self.inner.K_of_map

    def __call__(self, z):
        return mobius_T_a_inverse(self.a, self.inner(mobius_T_a(self.a, z)))

    def describe(self) -> dict:
        return {"kind": "mobius-conjugated", "a": list(self.a), "inner": self.inner.describe()}


def apply_map(f, z):
    """Evaluate a test map; both ``z`` and its image must lie in the open disk."""
    z = as_point(z, 2)
    if np.any(np.linalg.norm(z, axis=-1) >= 1.0):
        raise PointOutsideDomainError("z must lie in the open unit disk")
    w = f(z)
    if np.any(np.linalg.norm(w, axis=-1) >= 1.0):
        raise PointOutsideDomainError("image rounds onto the unit circle")
    return w


def sample_disk(n: int, rng: np.random.Generator, boundary_quota: float = 0.25,
                boundary_radius: float = 0.9, radius: float = 1.0) -> np.ndarray:
    """Area-uniform points in the disk of ``radius``, with a fixed share drawn
    from the annulus ``boundary_radius < |z| < radius``."""
    n_edge = int(round(boundary_quota * n))
    u = rng.random(n)
    lo = np.where(np.arange(n) < n_edge, boundary_radius ** 2, 0.0)
    r = radius * np.sqrt(lo + (1.0 - lo) * u)
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    z = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
    # guard the rare sample that rounds onto the circle
    return z[np.linalg.norm(z, axis=-1) < 1.0]


def operative_cK(K: float) -> float:
    return cK_bounds(K)[1]


def _pairs(rng, n):
    x = sample_disk(n, rng)
    y = sample_disk(len(x), rng)
    m = min(len(x), len(y))
    return x[:m], y[:m]


def _batches(total):
    done = 0
    while done < total:
        n = min(BATCH, total - done)
        yield n
        done += n


def _map_tag(f):
    d = f.describe()
    if d["kind"] == "radial":
        return f"radial(K={d['K']:g})"
    if d["kind"] == "power":
        return f"power(m={d['m']})"
    return f"mobius({_map_tag(f.inner)},a=({d['a'][0]:g},{d['a'][1]:g}))"


def check_schwarz_hyperbolic(f, n_pairs: int, seed: int, cK: float | None = None,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``rho(f x, f y) <= c(K) max(rho(x,y), rho(x,y)^(1/K))`` over random pairs.

    ``details['max_ratio']`` holds the largest ``lhs / rhs`` seen.
    """
    K = f.K_of_map
    cK = operative_cK(K) if cK is None else cK
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"schwarz[{_map_tag(f)}]", rng_seed=seed)
    worst = 0.0
    for n in _batches(n_pairs):
        x, y = _pairs(rng, n)
        fx, fy = apply_map(f, x), apply_map(f, y)
        d = rho_ball(x, y)
        lhs = rho_ball(fx, fy)
        rhs = cK * np.maximum(d, d ** (1.0 / K))
        rep.record(lhs - rhs - tol.slack, lambda i: point_witness(x=x[i], y=y[i]))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(rhs > 0, lhs / rhs, 0.0)
        worst = max(worst, float(ratio.max()))
    rep.details.update(max_ratio=worst, cK=cK)
    return rep


def check_Wlambda_distortion(f, lam: float, n_pairs: int, seed: int, cK: float | None = None,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``W(f x, f y) <= 2 lam c(K) max(W(x,y)^(1/K), W(x,y))`` with
    ``W = F_lam o rho``; also ``t/2 < F_lam(t) < lam t`` at every sampled
    ``t = rho(x, y)`` and ``t = rho(f x, f y)``."""
    if not lam >= 1.0:
        raise DomainError(f"lambda must be >= 1, got {lam!r}")
    K = f.K_of_map
    cK = operative_cK(K) if cK is None else cK
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"distow[{_map_tag(f)},lambda={lam:g}]", rng_seed=seed)
    worst = 0.0
    for n in _batches(n_pairs):
        x, y = _pairs(rng, n)
        fx, fy = apply_map(f, x), apply_map(f, y)
        d, fd = rho_ball(x, y), rho_ball(fx, fy)
        w, fw = F_c(lam, d), F_c(lam, fd)
        rhs = 2.0 * lam * cK * np.maximum(w ** (1.0 / K), w)
        wit = lambda i: point_witness(x=x[i], y=y[i])
        rep.record(fw - rhs - tol.slack, wit)
        for t, ft in ((d, w), (fd, fw)):
            pos = t > 0
            rep.record(np.where(pos, 0.5 * t - ft, -1.0), wit,
                       np.abs(0.5 * t - ft) <= tol.near_equal, strict=True)
            rep.record(np.where(pos, ft - lam * t, -1.0), wit,
                       np.abs(ft - lam * t) <= tol.near_equal, strict=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(rhs > 0, fw / rhs, 0.0)
        worst = max(worst, float(ratio.max()))
    rep.details.update(max_ratio=worst, cK=cK)
    return rep


def check_lipschitz_transfer(f, lam: float, L: float, n_pairs: int, seed: int,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """For ``f`` L-Lipschitz in ``rho``: ``W(f x, f y) <= L' W(x, y)`` with
    ``L' = L`` when ``L >= 1`` and ``L' = lam L`` otherwise."""
    L_prime = L if L >= 1.0 else lam * L
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"lipschitz[{_map_tag(f)},lambda={lam:g},L={L:g}]", rng_seed=seed)
    for n in _batches(n_pairs):
        x, y = _pairs(rng, n)
        fx, fy = apply_map(f, x), apply_map(f, y)
        lhs = F_c(lam, rho_ball(fx, fy))
        rhs = L_prime * F_c(lam, rho_ball(x, y))
        rep.record(lhs - rhs - tol.slack, lambda i: point_witness(x=x[i], y=y[i]))
    return rep


def check_schwarz_pick_strict(f, n_pairs: int, seed: int, min_radius: float = 0.05,
                              tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``rho(f x, f y) < rho(x, y)`` for a non-automorphic analytic ``f``,
    pairs with both points at least ``min_radius`` from 0."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"schwarz-pick-strict[{_map_tag(f)}]", rng_seed=seed)
    for n in _batches(n_pairs):
        x, y = _pairs(rng, n)
        keep = (np.linalg.norm(x, axis=-1) > min_radius) & (np.linalg.norm(y, axis=-1) > min_radius)
        x, y = x[keep], y[keep]
        lhs = rho_ball(apply_map(f, x), apply_map(f, y))
        rhs = rho_ball(x, y)
        rep.record(lhs - rhs, lambda i: point_witness(x=x[i], y=y[i]),
                   np.abs(lhs - rhs) <= tol.near_equal * np.maximum(1.0, rhs), strict=True)
    return rep


def check_mobius_invariance(lam: float, n_maps: int, seed: int, pairs_per_map: int = 16,
                            radius: float = 0.95,
                            tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``W(T_a x, T_a y) = W(x, y)`` to ``tol.slack`` for random ``a, x, y``.

    Points and centres are drawn from ``|z| < radius``: closer to the circle
    the rounding of the inputs alone moves ``rho`` by more than the slack.
    """
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"mobius-invariance[lambda={lam:g}]", rng_seed=seed)
    for _ in range(n_maps):
        a = sample_disk(1, rng, boundary_quota=0.0, radius=radius)[0]
        x = sample_disk(pairs_per_map, rng, boundary_quota=0.0, radius=radius)
        y = sample_disk(len(x), rng, boundary_quota=0.0, radius=radius)
        before = F_c(lam, rho_ball(x, y))
        after = F_c(lam, rho_ball(mobius_T_a(a, x), mobius_T_a(a, y)))
        rep.record(np.abs(after - before) - tol.slack,
                   lambda i: point_witness(a=a, x=x[i], y=y[i]))
    return rep
