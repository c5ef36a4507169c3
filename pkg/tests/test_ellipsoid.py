import numpy as np
import pytest

from llolqs import ellipsoid as ell
from llolqs import potentials as pot
from llolqs import sampling as smp
from llolqs.hermitian import standard_chart
from llolqs.finitediff import fd_dir_deriv
from llolqs.verify import CutValidator

LAM, MU = 300.0, 10.0


def test_initial_ellipsoid_geometry():
    state = ell.initial_ellipsoid(2)
    assert state.n == 3
    assert np.array_equal(state.shape, np.eye(3))
    assert np.array_equal(state.center, np.zeros(3))
    with pytest.raises(ValueError):
        ell.initial_ellipsoid(1)


def test_density_chart_radii():
    rng = smp.rng_for(0)
    for d in (2, 3, 4):
        chart = standard_chart(d)
        assert np.linalg.norm(chart.traceless_coords(np.eye(d) / d)) == 0.0
        for _ in range(20):
            proj = smp.random_rank_one(rng, d)
            norm = np.linalg.norm(chart.traceless_coords(proj))
            assert norm == pytest.approx(np.sqrt(1 - 1 / d), abs=1e-12)
            assert norm < 1.0
            rho = smp.random_density(rng, d)
            assert np.linalg.norm(chart.traceless_coords(rho)) < 1.0


def test_step_matches_direct_formula():
    rng = smp.rng_for(1)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        shape = smp.random_psd(rng, n).real + n * np.eye(n)
        state = ell.EllipsoidState(center=rng.standard_normal(n), shape=shape)
        g = rng.standard_normal(n)
        nxt = ell.ellipsoid_step(state, ell.Cut(ell.GRADIENT, g))
        hg = shape @ g
        gam = float(np.sqrt(g @ hg))
        assert np.allclose(nxt.center, state.center - hg / ((n + 1) * gam), atol=1e-12)
        direct = n * n / (n * n - 1.0) * (shape - 2.0 / (n + 1) * np.outer(hg, hg) / gam**2)
        assert np.allclose(nxt.shape, (direct + direct.T) / 2, atol=1e-12)
        assert np.linalg.eigvalsh(nxt.shape)[0] > 0


def test_step_volume_ratio_and_mirror():
    n = 3
    state = ell.initial_ellipsoid(2)
    g = np.array([1.0, 0.0, 0.0])
    nxt = ell.ellipsoid_step(state, ell.Cut(ell.GRADIENT, g))
    per_step = n * np.log(n * n / (n * n - 1.0)) / 2 + 0.5 * np.log((n - 1) / (n + 1))
    # hand value of the one-step volume change, from the determinant update
    assert nxt.log_volume_ratio() == pytest.approx(per_step, rel=1e-12)
    assert nxt.log_volume_ratio() <= -1.0 / (2 * n + 2)
    mirrored = ell.ellipsoid_step(state, ell.Cut(ell.GRADIENT, -g))
    assert np.allclose((nxt.center + mirrored.center) / 2, state.center, atol=1e-14)


def test_step_rejects_zero_cut():
    with pytest.raises(ValueError):
        ell.Cut(ell.GRADIENT, np.zeros(3))


def test_separation_oracle_psd_cut():
    chart = standard_chart(2)
    oracle = pot.PotentialOracle.build([], LAM, MU, dim=2)
    x = chart.traceless_coords(np.diag([1.5, -0.5]))
    cut, value = ell.separation_oracle(x, oracle, chart)
    assert cut.kind == ell.PSD_EIGVEC and value is None
    # the cut keeps every density matrix
    rng = smp.rng_for(2)
    for _ in range(200):
        rho = smp.random_density(rng, 2)
        assert float(cut.g @ (chart.traceless_coords(rho) - x)) <= 1e-10


def test_separation_oracle_gradient_matches_fd():
    chart = standard_chart(2)
    rng = smp.rng_for(3)
    oracle = pot.PotentialOracle.build(smp.random_observables(rng, 2, 2), LAM, MU, dim=2)
    rho = smp.random_density(rng, 2, 0.2)
    x = chart.traceless_coords(rho)
    cut, value = ell.separation_oracle(x, oracle, chart)
    assert cut.kind == ell.GRADIENT
    assert value == pytest.approx(pot.potential_value(oracle, rho), rel=1e-12)
    f = lambda m: pot.potential_value(oracle, m)
    for k, b in enumerate(chart.basis[1:]):
        fd = fd_dir_deriv(f, rho, [b])
        assert cut.g[k] == pytest.approx(fd, rel=1e-5, abs=1e-7 * max(1.0, abs(fd)))


def test_separation_oracle_loss_domain_cut():
    chart = standard_chart(2)
    a = np.diag([1.0, 0.0]).astype(complex)
    oracle = pot.PotentialOracle.build([a], LAM, MU, dim=2)
    rho = np.diag([0.0, 1.0]).astype(complex)
    x = chart.traceless_coords(rho)
    config = ell.SolverConfig(tol_psd_cut=-1.0)  # force past the PSD branch
    cut, value = ell.separation_oracle(x, oracle, chart, config)
    assert cut.kind == ell.LOSS_DOMAIN and value is None
    # retained points are exactly those with tr(A rho') >= tr(A rho) = 0
    rng = smp.rng_for(4)
    for _ in range(100):
        rho2 = smp.random_density(rng, 2)
        lhs = float(cut.g @ (chart.traceless_coords(rho2) - x))
        keeps = float(np.vdot(a, rho2).real) >= float(np.vdot(a, rho).real)
        assert keeps == (lhs <= 1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_t0_solve_returns_mixed_state(d):
    oracle = pot.PotentialOracle.build([], LAM, MU, dim=d)
    res = ell.minimize_potential(oracle)
    assert np.linalg.norm(res.rho - np.eye(d) / d) < 1e-4


def test_solver_value_dominates_samples():
    rng = smp.rng_for(5)
    obs = smp.random_observables(rng, 2, 4)
    oracle = pot.PotentialOracle.build(obs, LAM, MU, dim=2)
    res = ell.minimize_potential(oracle)
    for _ in range(500):
        rho = smp.random_density(rng, 2, 1e-3)
        assert pot.potential_value(oracle, rho) >= res.value - 1e-9


def test_diagonal_instance_matches_grid_search():
    rng = smp.rng_for(6)
    obs = smp.random_observables(rng, 2, 6, kind="diagonal")
    oracle = pot.PotentialOracle.build(obs, LAM, MU, dim=2)
    res = ell.minimize_potential(oracle)
    assert abs(res.rho[0, 1]) < 1e-4
    ps = np.arange(1e-4, 1.0, 1e-4)
    vals = [pot.potential_value(oracle, np.diag([p, 1 - p]).astype(complex)) for p in ps]
    k = int(np.argmin(vals))
    assert abs(res.rho[0, 0].real - ps[k]) < 1e-3
    assert res.value <= vals[k] + 1e-9


def test_iterate_eigenvalue_floor():
    # minimizers of the barrier-free cumulative loss stay well inside
    rng = smp.rng_for(7)
    for t in (1, 3, 6):
        obs = smp.random_observables(rng, 2, t)
        oracle = pot.PotentialOracle.build(obs, LAM, 0.0, dim=2)
        res = ell.minimize_potential(oracle)
        assert np.linalg.eigvalsh(res.rho)[0] >= LAM / (2 * (t + LAM * 2))


def test_best_value_monotone_and_volume_decay():
    rng = smp.rng_for(8)
    obs = smp.random_observables(rng, 2, 3)
    oracle = pot.PotentialOracle.build(obs, LAM, MU, dim=2)
    n = 3
    log_vols = []
    states = []

    def observer(state, cut):
        states.append(state)
        log_vols.append(ell.ellipsoid_step(state, cut).log_volume_ratio())

    res = ell.minimize_potential(oracle, on_cut=observer)
    for k, lv in enumerate(log_vols):
        assert lv <= -(k + 1) / (2.0 * n + 2.0) + 1e-9
    for s in states:
        assert np.linalg.eigvalsh(s.shape)[0] > 0
    # best-so-far values never increase
    chart = standard_chart(2)
    best = np.inf
    for s in states:
        cut, value = ell.separation_oracle(s.center, oracle, chart)
        if value is not None:
            assert min(best, value) <= best
            best = min(best, value)
    assert res.value == pytest.approx(best, abs=1e-12)


def test_every_cut_is_valid():
    rng = smp.rng_for(9)
    obs = smp.random_observables(rng, 2, 2)
    oracle = pot.PotentialOracle.build(obs, LAM, MU, dim=2)
    chart = standard_chart(2)
    cuts = []
    res = ell.minimize_potential(oracle, on_cut=lambda s, c: cuts.append((s, c)))
    validator = CutValidator(oracle, chart, smp.rng_for(99))
    validator.set_best(chart.traceless_coords(res.rho))
    worst = max(validator.worst_violation(s, c) for s, c in cuts)
    assert worst <= 1e-10


def test_hindsight_boundary_and_grid():
    rho, value = ell.hindsight_optimum([np.diag([1.0, 0.0]).astype(complex)], 2)
    assert value < 1e-3
    assert rho[0, 0].real > 0.999
    rng = smp.rng_for(10)
    obs = smp.random_observables(rng, 2, 5, kind="diagonal")
    rho, value = ell.hindsight_optimum(obs, 2)
    ps = np.arange(0.0, 1.0 + 1e-9, 1e-4)
    avec = np.array([[a[0, 0].real, a[1, 1].real] for a in obs])
    grid_vals = -np.sum(np.log(np.outer(ps, avec[:, 0]) + np.outer(1 - ps, avec[:, 1])), axis=1)
    assert value <= float(np.min(grid_vals)) + 1e-3
    assert abs(rho[0, 0].real - ps[int(np.argmin(grid_vals))]) < 2e-3
    # minimality against random densities
    for _ in range(300):
        cand = smp.random_density(rng, 2, 1e-6)
        losses = sum(pot.loss_value(a, cand) for a in obs)
        assert losses >= value - 1e-3


def test_hindsight_requires_observables():
    with pytest.raises(ValueError):
        ell.hindsight_optimum([], 2)


def test_best_point_requirement():
    # an absurd PSD threshold makes every center infeasible
    oracle = pot.PotentialOracle.build([], LAM, MU, dim=2)
    bad = ell.SolverConfig(tol_psd_cut=1.0, max_iters=5)
    with pytest.raises(ell.SolverError):
        ell.minimize_potential(oracle, bad)
    relaxed = ell.SolverConfig(tol_psd_cut=1.0, max_iters=5, best_point_required=False)
    res = ell.minimize_potential(oracle, relaxed)
    assert res.status == "infeasible"
    assert res.value == np.inf
    assert abs(np.trace(res.rho).real - 1.0) < 1e-12


def test_solver_config_resolution():
    cfg = ell.SolverConfig()
    assert cfg.resolved_max_iters(3) == int(np.ceil(8 * 3 * np.log(1e8)))
    assert cfg.resolved_psd_tol(300.0, 5, 2) == pytest.approx(1e-9)
    # the guarantee-based branch wins when lambda is tiny
    assert cfg.resolved_psd_tol(1e-9, 1, 2) == pytest.approx(1e-9 / (2 * (1 + 2e-9)))
    cfg2 = ell.SolverConfig(max_iters=7, stall_window=3, tol_psd_cut=1e-6)
    assert cfg2.resolved_max_iters(3) == 7
    assert cfg2.resolved_stall_window(3) == 3
    assert cfg2.resolved_psd_tol(300.0, 5, 2) == 1e-6
