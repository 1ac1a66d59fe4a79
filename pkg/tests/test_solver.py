"""Node transforms, point evaluation and manufactured-solution solves."""

import numpy as np
import numpy.polynomial.chebyshev as cheb
import pytest

from pdekit.errors import ConvergenceFailure, ParameterError
from pdekit.solver import (
    analyze_values,
    convergence_study,
    error_metrics,
    evaluate_at,
    manufactured_problem,
    node_grids,
    nodes,
    solve_manufactured,
    solve_system,
    synthesize_nodes,
)
from pdekit.spectral_system import poisson_system


def test_node_sets():
    assert np.allclose(nodes("fourier", 3), np.array([-1.0, -0.5, 0.0, 0.5]))
    assert np.allclose(nodes("chebyshev", 4),
                       np.cos(np.pi * np.arange(5) / 4))
    got = nodes("chebyshev", 4)
    assert got[0] == 1.0 and got[-1] == -1.0 and np.all(np.diff(got) < 0)
    with pytest.raises(ParameterError):
        nodes("chebyshev", 0)
    with pytest.raises(ParameterError):
        nodes("legendre", 4)
    grids = node_grids("fourier", 3, 2)
    assert len(grids) == 2 and np.array_equal(grids[0], grids[1])


def fourier_synthesis_oracle(c, n):
    m = n // 2
    x = nodes("fourier", n)
    return np.array([sum(c[k] * np.exp(1j * np.pi * (k - m) * xl)
                         for k in range(n + 1)) for xl in x])


@pytest.mark.parametrize("n", [2, 3, 8, 13])
def test_fourier_synthesis_matches_direct_sum(rng, n):
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    got = synthesize_nodes("fourier", c, n)
    assert np.allclose(got, fourier_synthesis_oracle(c, n), atol=1e-12)
    back = analyze_values("fourier", got, n)
    assert np.allclose(back, c, atol=1e-12)


@pytest.mark.parametrize("n", [2, 5, 12])
def test_chebyshev_synthesis_matches_chebval(rng, n):
    c = rng.normal(size=n + 1)
    got = synthesize_nodes("chebyshev", c, n)
    assert np.allclose(got, cheb.chebval(nodes("chebyshev", n), c), atol=1e-12)
    assert np.allclose(analyze_values("chebyshev", got, n), c, atol=1e-12)


def test_two_dimensional_round_trip(rng):
    n = 5
    N = n + 1
    for basis in ("fourier", "chebyshev"):
        c = rng.normal(size=N * N)
        if basis == "fourier":
            c = c + 1j * rng.normal(size=N * N)
        vals = synthesize_nodes(basis, c, n, d=2)
        assert np.allclose(analyze_values(basis, vals, n, d=2), c, atol=1e-12)
    # chebyshev d=2 against the polynomial module's tensor evaluation
    c = rng.normal(size=N * N)
    x = nodes("chebyshev", n)
    X, Y = np.meshgrid(x, x, indexing="ij")
    want = cheb.chebval2d(X, Y, c.reshape(N, N)).reshape(-1)
    assert np.allclose(synthesize_nodes("chebyshev", c, n, d=2), want, atol=1e-12)


def test_evaluate_at_chebyshev_polynomials(rng):
    n = 6
    coeffs = np.zeros(7)
    coeffs[3] = 1.0
    pts = rng.uniform(-1.0, 1.0, size=(9, 1))
    got = evaluate_at("chebyshev", coeffs, n, 1, pts)
    assert np.allclose(got, cheb.chebval(pts[:, 0], coeffs), atol=1e-13)


def test_evaluate_at_fourier_modes(rng):
    n = 5
    c = rng.normal(size=6) + 1j * rng.normal(size=6)
    pts = rng.uniform(-1.0, 1.0, size=(7, 1))
    m = n // 2
    want = np.array([sum(c[k] * np.exp(1j * np.pi * (k - m) * x) for k in range(6))
                     for x in pts[:, 0]])
    assert np.allclose(evaluate_at("fourier", c, n, 1, pts), want, atol=1e-12)


def test_evaluate_at_two_dims_and_guards(rng):
    n = 4
    N = n + 1
    c = rng.normal(size=N * N)
    pts = rng.uniform(-1.0, 1.0, size=(6, 2))
    want = cheb.chebval2d(pts[:, 0], pts[:, 1], c.reshape(N, N))
    assert np.allclose(evaluate_at("chebyshev", c, n, 2, pts), want, atol=1e-12)
    # single point comes back as a scalar
    single = evaluate_at("chebyshev", c, n, 2, np.array([0.3, -0.2]))
    assert np.ndim(single) == 0
    with pytest.raises(ParameterError):
        evaluate_at("chebyshev", c, n, 2, np.array([[0.3, 1.5]]))
    with pytest.raises(ParameterError):
        evaluate_at("chebyshev", c, n, 2, np.array([[0.3]]))


def test_error_metrics_hand_values():
    exact = np.array([3.0, 4.0])
    m = error_metrics(exact, exact)
    assert m["l2_rel"] == 0.0 and m["l2_normalized"] == 0.0 and m["sup"] == 0.0
    # scaling collapses the normalized metric but not the relative one
    m2 = error_metrics(exact, 2.0 * exact)
    assert m2["l2_rel"] == pytest.approx(1.0)
    assert m2["l2_normalized"] == pytest.approx(0.0, abs=1e-15)
    assert m2["sup"] == pytest.approx(4.0)
    assert error_metrics(np.zeros(2), np.ones(2))["l2_rel"] == np.inf


def test_exact_coefficients_satisfy_assembled_system():
    # the analyzed exact solution must satisfy L c = rhs to truncation level
    for basis, name in (("fourier", "exp-sin-pi"), ("chebyshev", "exp-sin")):
        n = 24
        system, u_exact = manufactured_problem(name, np.eye(1), basis, n)
        c_exact = analyze_values(basis, u_exact, n, d=1)
        resid = np.linalg.norm(system.L @ c_exact - system.rhs)
        assert resid <= 1e-9 * max(np.linalg.norm(system.rhs), 1.0)


def test_solve_system_residual_certificate():
    system, _ = manufactured_problem("exp-sin-pi", np.eye(1), "fourier", 12)
    result = solve_system(system)
    assert result.residual <= 1e-12
    vals = result.node_values()
    assert np.allclose(vals, synthesize_nodes("fourier", result.coeffs, 12, 1),
                       atol=1e-13)


def test_singular_system_raises():
    system = poisson_system("chebyshev", 2, 3, np.ones(27))
    with pytest.raises(ConvergenceFailure):
        solve_system(system)


# measured anchors for the two smooth families (normalized l2 at the nodes);
# re-measured values must stay within 5% at the sharp sizes
FOURIER_D1 = {8: 1.750e-4, 12: 6.152e-7, 16: 1.523e-9}
CHEB_D1 = {8: 4.629e-6, 12: 1.012e-8, 16: 2.807e-12}
FOURIER_D2 = {8: 2.368e-4}
CHEB_D2 = {8: 2.846e-4, 16: 4.626e-10}


def test_fourier_convergence_one_dim():
    for n, want in FOURIER_D1.items():
        out = solve_manufactured("exp-sin-pi", np.eye(1), "fourier", n)
        assert out["l2_normalized"] == pytest.approx(want, rel=0.05)
        assert out["result"].residual <= 1e-12
    floor = solve_manufactured("exp-sin-pi", np.eye(1), "fourier", 24)
    assert floor["l2_normalized"] < 1e-13


def test_chebyshev_convergence_one_dim():
    for n, want in CHEB_D1.items():
        out = solve_manufactured("exp-sin", np.eye(1), "chebyshev", n)
        assert out["l2_normalized"] == pytest.approx(want, rel=0.05)
    floor = solve_manufactured("exp-sin", np.eye(1), "chebyshev", 24)
    assert floor["l2_normalized"] < 1e-14


def test_convergence_two_dims():
    for basis, name, anchors in (("fourier", "exp-sin-pi", FOURIER_D2),
                                 ("chebyshev", "exp-sin", CHEB_D2)):
        for n, want in anchors.items():
            out = solve_manufactured(name, np.eye(2), basis, n)
            assert out["l2_normalized"] == pytest.approx(want, rel=0.05)
        floor = solve_manufactured(name, np.eye(2), basis, 24)
        assert floor["l2_normalized"] < 1e-13


def test_mixed_coefficients_converge():
    A = np.array([[1.0, 0.2], [0.2, 1.0]])
    four = solve_manufactured("exp-sin-pi", A, "fourier", 20)
    assert four["l2_normalized"] == pytest.approx(3.873e-12, rel=0.2)
    chb = solve_manufactured("exp-sin", A, "chebyshev", 20)
    assert chb["l2_normalized"] == pytest.approx(4.351e-12, rel=0.2)
    assert four["system"].gdd["accepted"] and chb["system"].gdd["accepted"]


def test_point_closure_solves():
    out = solve_manufactured("exp-sin-pi", np.eye(1), "fourier", 16, closure="point")
    assert out["l2_normalized"] < 1e-8
    with pytest.raises(ParameterError):
        manufactured_problem("exp-sin-pi", np.eye(1), "fourier", 16, closure="pin")


def test_convergence_study_rows():
    rows = convergence_study("exp-sin", np.eye(1), "chebyshev", [8, 12, 16],
                             with_kappa=True)
    assert [r["n"] for r in rows] == [8, 12, 16]
    errs = [r["normalized_l2"] for r in rows]
    assert errs[0] > errs[1] > errs[2]
    for r in rows:
        assert r["basis"] == "chebyshev" and r["d"] == 1
        assert r["residual"] <= 1e-12
        assert r["runtime_ms"] > 0.0
        assert r["kappa"] >= 1.0
        assert r["raw_l2"] >= 0.0
    no_kappa = convergence_study("exp-sin", np.eye(1), "chebyshev", [8])
    assert np.isnan(no_kappa[0]["kappa"])
