import mpmath as mp
import numpy as np
import pytest

from intrinsic_metrics.config import DEFAULT_TOLERANCES
from intrinsic_metrics.errors import DomainError, SearchFailure
from intrinsic_metrics.inequality_lab import H, counterexample_report, find_counterexample, p, p_minus_r, q, r

mp.mp.dps = 60


def W_oracle(c, u, v):
    # F_c(j) on the unit disk, points on the real axis, in extended precision
    u, v = mp.mpf(u), mp.mpf(v)
    j = mp.log(1 + abs(u - v) / min(1 - abs(u), 1 - abs(v)))
    return mp.log(1 + 2 * mp.mpf(c) * mp.sinh(j / 2))


@pytest.mark.parametrize("c", [0.25, 0.5, 0.75, 0.9, 0.99])
def test_construction_finds_witness(c):
    found = find_counterexample(c)
    assert found.method == "construction"
    assert found.margin > 1e-9
    x, y, z = found.x[0], found.y[0], found.z[0]
    assert np.all(found.x[1:] == 0) and -1 < x < y < z < 1
    margin = W_oracle(c, x, z) - W_oracle(c, x, y) - W_oracle(c, y, z)
    assert margin > 1e-9
    assert float(margin) == pytest.approx(found.margin, rel=1e-6)


@pytest.mark.parametrize("c", [1.0, 1.5, 3.0])
def test_no_witness_for_c_ge_1(c):
    with pytest.raises(SearchFailure) as exc:
        find_counterexample(c, fallback_triples=20_000)
    assert exc.value.trace


def test_rejects_nonpositive_c():
    with pytest.raises(DomainError):
        find_counterexample(0.0)


@pytest.mark.parametrize("c", [0.3, 0.8])
@pytest.mark.parametrize("a", [0.5, 0.9, 0.999])
def test_p_minus_r_stable_form(c, a):
    direct = mp.mpf(p(c, a)) - mp.mpf(r(c, a))
    assert float(direct) == pytest.approx(p_minus_r(c, a), rel=1e-9)


@pytest.mark.parametrize("c", [0.5, 0.9])
def test_H_sign_matches_margin(c):
    # H < 0 exactly where the collinear triple (-a, a, b) breaks the triangle inequality
    for a in (0.9, 0.99, 0.999):
        for b in np.linspace(a, 1, 40)[1:-1]:
            margin = W_oracle(c, -a, b) - W_oracle(c, -a, a) - W_oracle(c, a, b)
            hv = H(c, a, b)
            if abs(hv) > 1e-8 and abs(margin) > 1e-12:
                assert (hv < 0) == (margin > 0)


def test_q_formula():
    assert q(0.5, 0.6) == pytest.approx(2 * 0.6 / np.sqrt(0.4 * 1.6), rel=1e-15)


def test_limit_of_p_minus_r():
    for c in (0.2, 0.7):
        assert p_minus_r(c, 1 - 1e-12) == pytest.approx(np.sqrt(2) * (c - 1), rel=1e-5)


def test_reports():
    ok = counterexample_report(0.5)
    assert ok.claim_id.endswith(":exists") and ok.passed and ok.witness["margin"] > 0
    none = counterexample_report(1.0)
    assert none.claim_id.endswith(":none") and none.passed and none.witness is None


def test_witness_margin_is_respected():
    tol = DEFAULT_TOLERANCES.replace(witness_margin=1.0)
    with pytest.raises(SearchFailure):
        find_counterexample(0.9, tol, fallback_triples=1000)
