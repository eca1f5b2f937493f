"""Complete elliptic integrals, the Grötzsch ring modulus and the distortion
function ``phi_K``.

Everything here is scalar and built on the arithmetic-geometric mean:

    K(r)  = pi / (2 * AGM(1, r'))          r' = sqrt(1 - r**2)
    mu(r) = (pi / 2) * K(r') / K(r) = (pi / 2) * AGM(1, r') / AGM(1, r)

Writing ``mu`` as a ratio of two AGMs avoids computing either integral near
its logarithmic singularity. The endpoints ``r = 0`` and ``r = 1`` are
rejected; the limits are ``mu(0+) = +inf`` and ``mu(1-) = 0`` with
``mu(r) ~ log(4/r)`` as ``r -> 0``.
"""

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ConvergenceError, DomainError
from .reports import VerificationReport

__all__ = [
    "ModulusValue",
    "DistortionParams",
    "agm",
    "agm_iterates",
    "complementary",
    "elliptic_K",
    "grotzsch_mu",
    "grotzsch_mu_inv",
    "phi_K",
    "cK_bounds",
    "check_special_identities",
    "CK_SLOPE",
]

HALF_PI = 0.5 * math.pi
# mu(r) * mu(r') = pi**2 / 4
MU_PRODUCT = 0.25 * math.pi ** 2
SELF_COMPLEMENTARY = math.sqrt(0.5)

#: Slope of the upper bound for c(K): log(2 (1 + sqrt(1 - e^-2))).
CK_SLOPE = math.log(2.0 * (1.0 + math.sqrt(1.0 - math.exp(-2.0))))


@dataclass(frozen=True)
class ModulusValue:
    r: float
    mu: float

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise DomainError(f"r must lie in (0, 1), got {self.r!r}")
        if not 0.0 < self.mu < math.inf:
            raise DomainError(f"mu must lie in (0, inf), got {self.mu!r}")

    @classmethod
    def at(cls, r: float) -> "ModulusValue":
        return cls(r, grotzsch_mu(r))


@dataclass(frozen=True)
class DistortionParams:
    K: float = 1.0
    lam: float = 1.0

    def __post_init__(self):
        if not self.K >= 1.0:
            raise DomainError(f"K must be >= 1, got {self.K!r}")
        if not self.lam >= 1.0:
            raise DomainError(f"lambda must be >= 1, got {self.lam!r}")


def _check_open_unit(r, name="r"):
    if not isinstance(r, (int, float)) or not 0.0 < r < 1.0:
        raise DomainError(f"{name} must lie in the open interval (0, 1), got {r!r}")
    return float(r)


def complementary(r: float) -> float:
    """Return ``sqrt(1 - r**2)`` without cancellation near ``r = 1``."""
    return math.sqrt((1.0 - r) * (1.0 + r))


def agm_iterates(a: float, b: float, tol: Tolerances = DEFAULT_TOLERANCES):
    """Return the list of AGM pairs ``(a_k, b_k)`` up to convergence.

    The first entry is the input pair. Raises ConvergenceError if
    ``tol.agm_max_iter`` steps do not bring ``|a - b|`` below
    ``tol.agm_tol * a``.
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError("AGM needs two positive arguments")
    pairs = [(a, b)]
    for _ in range(tol.agm_max_iter):
        if abs(a - b) <= tol.agm_tol * a:
            return pairs
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pairs.append((a, b))
    if abs(a - b) <= tol.agm_tol * a:
        return pairs
    raise ConvergenceError(f"AGM did not converge in {tol.agm_max_iter} steps")


def agm(a: float, b: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    a_n, b_n = agm_iterates(a, b, tol)[-1]
    return 0.5 * (a_n + b_n)


def elliptic_K(r: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Complete elliptic integral of the first kind, modulus ``r`` in (0, 1)."""
    r = _check_open_unit(r)
    return HALF_PI / agm(1.0, complementary(r), tol)


def grotzsch_mu(r: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Modulus of the planar Grötzsch ring, strictly decreasing on (0, 1).

    Grows like ``log(4/r)`` as ``r -> 0``, so it stays finite for every
    positive double (about 745 at the smallest subnormal).
    """
    r = _check_open_unit(r)
    return HALF_PI * agm(1.0, complementary(r), tol) / agm(1.0, r, tol)


def _solve_lower_half(target, tol):
    # Find s in (0, 1/sqrt 2] with mu(s) = target >= pi/2, working in log s
    # where mu is close to linear (mu ~ log 4 - log s).
    if target == HALF_PI:
        return SELF_COMPLEMENTARY
    u_hi = math.log(SELF_COMPLEMENTARY)
    # mu(s) < log(4/s) so mu(s) >= target forces log s <= log 4 - target.
    u_lo = min(math.log(4.0) - target - 1.0, u_hi - 1.0)
    if u_lo < math.log(math.ulp(0.0)) + 1.0:
        raise DomainError(f"mu^-1({target!r}) underflows double precision")

    def f(u):
        return grotzsch_mu(math.exp(u), tol) - target

    while f(u_lo) < 0.0:
        u_lo -= 1.0
    try:
        u = brentq(f, u_lo, u_hi, xtol=1e-300, rtol=4.0 * 2.0 ** -52,
                   maxiter=tol.mu_inv_max_iter)
    except RuntimeError as exc:
        raise ConvergenceError(str(exc)) from exc
    s = math.exp(u)
    if abs(grotzsch_mu(s, tol) - target) > tol.mu_inv_tol * max(1.0, target):
        raise ConvergenceError(f"mu^-1({target!r}) missed tolerance")
    return s


def grotzsch_mu_inv(m: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Inverse of :func:`grotzsch_mu`.

    For ``m < pi/2`` the root lies close to 1 and is found through the
    functional equation ``mu(r) mu(r') = pi^2/4``: solve for the
    complementary modulus ``s = r'`` and return ``sqrt(1 - s^2)``. The root
    finder therefore always works on the well-conditioned half
    ``(0, 1/sqrt 2]``.
    """
    if not isinstance(m, (int, float)) or not 0.0 < m < math.inf:
        raise DomainError(f"m must be a positive finite real, got {m!r}")
    m = float(m)
    if m >= HALF_PI:
        return _solve_lower_half(m, tol)
    s = _solve_lower_half(MU_PRODUCT / m, tol)
    r = complementary(s)
    if r >= 1.0:
        raise DomainError(f"mu^-1({m!r}) rounds to 1 in double precision")
    return r


def phi_K(K: float, r: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Distortion function ``mu^-1(mu(r) / K)``; increasing in ``r`` and ``K``."""
    if not isinstance(K, (int, float)) or not 0.0 < K < math.inf:
        raise DomainError(f"K must be positive, got {K!r}")
    r = _check_open_unit(r)
    if K == 1.0:
        return r
    return grotzsch_mu_inv(grotzsch_mu(r, tol) / K, tol)


def cK_bounds(K: float) -> tuple[float, float]:
    """Bracket ``K <= c(K) <= log(2(1+sqrt(1-e^-2)))(K-1) + K``.

    The exact constant is only known from the literature; callers
    that need a value that keeps distortion bounds valid use the upper end.
    """
    if not isinstance(K, (int, float)) or not 1.0 <= K < math.inf:
        raise DomainError(f"K must be >= 1, got {K!r}")
    K = float(K)
    return K, CK_SLOPE * (K - 1.0) + K


def _log_grid(lo, hi, n):
    step = (math.log(hi) - math.log(lo)) / (n - 1)
    return [math.exp(math.log(lo) + k * step) for k in range(n)]


def check_special_identities(n_nodes: int = 200, K_values=(1.5, 2.0, 5.0),
                             tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """Deterministic identity checks on a grid of moduli.

    ``mu(1/sqrt 2) = pi/2`` to 1e-12, ``mu(mu^-1(mu(r))) = mu(r)`` relative to
    1e-10, ``phi_1 = id`` to 1e-10 and ``phi_K(phi_{1/K}(r)) = r`` to 1e-9.
    The grid is log-spaced in ``r`` and in ``1 - r`` so both ends are covered.
    """
    lower = _log_grid(1e-6, 0.5, n_nodes)
    rs = lower + [1.0 - r for r in reversed(lower) if r < 0.5]
    rep = VerificationReport("special")
    rep.record(abs(grotzsch_mu(SELF_COMPLEMENTARY, tol) - HALF_PI) - 1e-12,
               lambda i: {"r": SELF_COMPLEMENTARY})
    for r in rs:
        wit = lambda i, r=r: {"r": r}
        m = grotzsch_mu(r, tol)
        back = grotzsch_mu(grotzsch_mu_inv(m, tol), tol)
        rep.record(abs(back - m) / m - 1e-10, wit)
        rep.record(abs(phi_K(1.0, r, tol) - r) - 1e-10, wit)
        for K in K_values:
            inner = phi_K(1.0 / K, r, tol)
            rep.record(abs(phi_K(K, inner, tol) - r) - 1e-9,
                       lambda i, r=r, K=K: {"r": r, "K": K})
    return rep
