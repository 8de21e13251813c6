import math
from fractions import Fraction

import pytest

import lcroots


def test_peak_law_matches_exact_rationals():
    for n in (1, 2, 9):
        exact = [Fraction(int(a), int(b)) for a, b in lcroots.peak_pmf_exact(n)]
        assert sum(exact) == 1
        approx = lcroots.peak_pmf(n)
        assert approx == pytest.approx([float(x) for x in exact], abs=1e-16)
    # Narayana row N(3, k) = 1, 3, 1 over C_3 = 5.
    assert [Fraction(int(a), int(b)) for a, b in lcroots.peak_pmf_exact(2)] == [
        Fraction(1, 5), Fraction(3, 5), Fraction(1, 5)]


def test_sample_is_deterministic_and_log_concave():
    a = lcroots.sample(50, model="beta", seed=3, index=1)
    b = lcroots.sample(50, model="beta", seed=3, index=1)
    assert a == b
    assert len(a["W"]) == 51
    assert a["log_coeffs"] == pytest.approx([-50 * w for w in a["W"]], rel=1e-15)
    L = a["log_coeffs"]
    assert all(L[k - 1] + L[k + 1] <= 2 * L[k] + 1e-12 for k in range(1, 50))
    with pytest.raises(ValueError):
        lcroots.sample(5, model="gauss")


def test_find_roots_of_known_quadratic():
    # 2 + 3z + z^2 = (z + 1)(z + 2)
    rs = lcroots.find_roots([math.log(2), math.log(3), 0.0])
    assert rs.converged and len(rs) == 2
    got = sorted(rs.values, key=lambda z: z.real)
    assert got[0] == pytest.approx(-2, abs=1e-13)
    assert got[1] == pytest.approx(-1, abs=1e-13)
    checks = lcroots.check_root_set([math.log(2), math.log(3), 0.0], rs)
    assert checks["ok"]


def test_solver_agrees_with_companion_oracle():
    s = lcroots.sample(20, model="uniform", seed=11)
    a = lcroots.find_roots(s["log_coeffs"])
    b = lcroots.companion_oracle(s["log_coeffs"])
    assert lcroots.matched_distance(a, b) <= 1e-8


def test_eval_log_and_newton_polygon():
    log_abs, phase = lcroots.eval_log([0.0, 0.0], 1.0)  # 1 + z at z = 1
    assert log_abs == pytest.approx(math.log(2), abs=1e-15)
    assert phase == pytest.approx(1)
    segments = lcroots.newton_polygon_radii([0.0, -1.0, -3.0])
    assert sum(m for _, m in segments) == 2


def test_theory_values():
    th = lcroots.theory
    assert th.big_g(1) == 0
    assert th.mu_radial_cdf(1.0) == 0.5
    assert th.psi(0.25) == pytest.approx(0.38629436111989057, abs=1e-15)
    assert th.log_radial_quantile(0.75) == pytest.approx(4.0, abs=1e-13)
    assert th.mu_density(1) == pytest.approx(1 / (16 * math.pi))
    with pytest.raises(ValueError):
        th.psi(0.5)


def test_stats_on_synthetic_inputs():
    st = lcroots.stats
    assert st.ks_log_radius([0.0] * 10) == pytest.approx(0.5)
    ks, kuiper = st.ks_angular([2 * math.pi * (j + 0.5) / 100 - math.pi for j in range(100)])
    assert kuiper <= 0.02
    assert st.modulus_concentration([0.0, 0.5, -0.5], 0.1) == pytest.approx(2 / 3)


def test_run_experiment_record():
    rec = lcroots.run_experiment(suite="all", model="beta", n_values=(10, 15), replicates=2, seed=5)
    assert len(rec["replicates"]) == 4
    assert [row["n"] for row in rec["aggregates"]] == [10, 15]
    again = lcroots.run_experiment(suite="all", model="beta", n_values=(10, 15), replicates=2, seed=5, threads=2)
    assert rec == again
