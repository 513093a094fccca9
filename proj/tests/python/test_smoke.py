import numpy as np
import pytest
import scipy.sparse as sp

import qepsoar


def dense_qep_eigenvalues(m, c, k):
    n = m.shape[0]
    minv = np.linalg.inv(m)
    lin = np.block([[np.zeros((n, n)), np.eye(n)], [-minv @ k, -minv @ c]])
    return np.linalg.eigvals(lin)


def test_generators_match_their_stencils():
    p = qepsoar.gen_example_42(10.0, 5.0, 6)
    c = p.C.toarray()
    assert p.n == 6
    assert c[1, 1] == 30 and c[1, 2] == -10
    assert p.K.toarray()[2, 1] == -5
    c43 = qepsoar.gen_example_43(4).C.toarray().real
    assert np.array_equal(c43, [[8, -4, 0, 0], [2, 12, -4, 0], [0, 2, 12, -4], [0, 0, 2, 8]])
    assert qepsoar.gen_example_41(4).n == 12


def test_solve_small_problem_against_dense_oracle():
    rng = np.random.default_rng(7)
    n = 40
    m = np.eye(n) + 0.05 * rng.standard_normal((n, n))
    c = rng.standard_normal((n, n))
    k = rng.standard_normal((n, n))
    p = qepsoar.QepProblem(sp.csc_matrix(m.astype(complex)), sp.csc_matrix(c.astype(complex)),
                           sp.csc_matrix(k.astype(complex)))
    cfg = qepsoar.SolverConfig()
    cfg.m, cfg.f, cfg.k_wanted, cfg.l = 16, 8, 3, 1
    cfg.sigma = 0.3 + 0.1j
    res = qepsoar.solve(p, cfg)
    assert res.status == qepsoar.SolveStatus.Converged
    exact = dense_qep_eigenvalues(m, c, k)
    for pair in res.pairs:
        assert np.min(np.abs(exact - pair.lam)) < 1e-7 * max(1.0, abs(pair.lam))
        assert qepsoar.relative_residual(p, pair.lam, pair.y) <= 1e-10 * (1 + 1e-6)
    assert res.total_s >= 0.0
    assert len(res.history) == res.restarts + 1


def test_restore_hessenberg_properties():
    rng = np.random.default_rng(3)
    mdim = 12
    t = np.triu(rng.standard_normal((mdim, mdim)) + 1j * rng.standard_normal((mdim, mdim)), -1)
    b = rng.standard_normal(mdim) + 1j * rng.standard_normal(mdim)
    tr, w, b_last = qepsoar.restore_hessenberg(t, b.reshape(1, -1))
    assert np.linalg.norm(np.tril(tr, -2)) == 0.0
    assert np.linalg.norm(w.conj().T @ w - np.eye(mdim)) < 1e-12
    assert np.linalg.norm(w.conj().T @ t @ w - tr) < 1e-12 * np.linalg.norm(t)
    assert abs(abs(b_last) - np.linalg.norm(b)) < 1e-12


def test_errors_surface_as_python_exceptions():
    p = qepsoar.gen_example_42(10.0, 5.0, 20)
    cfg = qepsoar.SolverConfig()
    cfg.m = 40
    cfg.sigma = 0j
    with pytest.raises(qepsoar.QepError, match="InvalidConfig"):
        qepsoar.solve(p, cfg)
    with pytest.raises(qepsoar.QepError):
        qepsoar.example_config("nope")
