"""Seeded property suites behind the ``verify`` command.

Each suite returns a list of :class:`CheckResult`; a check records the
quantity compared, its tolerance, the comparison direction, and the instance
seed, so any failure is reproducible from the report line alone.

Tolerance conventions: identity checks compare an error against a small
bound; one-sided checks require gap >= -tol with tol scaled to the magnitude
of the terms compared (raw double precision makes absolute thresholds
meaningless across instances scaled by the regularization weight).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import checks, ellipsoid as ell, potentials as pot, sampling as smp
from .finitediff import fd_dir_deriv, fd_step, fd_noise_bound
from .hermitian import (
    hs_inner, is_density, kron, standard_chart, vec, vec_inv, eig_herm, hermitize,
)

SUITES = ("kron", "derivs", "vbc", "sc", "sandwich", "ineqs", "ellipsoid", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    seed: int
    gap: float
    tol: float
    cmp: str  # "<=" error checks, ">=" one-sided gap checks
    passed: bool

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{self.name:<44s} seed={self.seed:<8d} gap={self.gap:+.6e} "
                f"tol={self.tol:.1e} {self.cmp} {verdict}")


def _err(name: str, seed: int, err: float, tol: float) -> CheckResult:
    return CheckResult(name, seed, err, tol, "<=", err <= tol)


def _gap(name: str, seed: int, gap: float, tol: float) -> CheckResult:
    return CheckResult(name, seed, gap, tol, ">=", gap >= -tol)


# ---------------------------------------------------------------------------
# kron / vectorization / chart identities

def suite_kron(base_seed: int = 0, instances: int = 50) -> list[CheckResult]:
    out = []
    for i in range(instances):
        seed = base_seed * 100_000 + i
        rng = smp.rng_for(seed)
        d = int(rng.integers(2, 5))
        a, b, c, dd = (smp.random_complex(rng, d, d) for _ in range(4))
        out.append(_err("kron/product-rule", seed,
                        float(np.max(np.abs(kron(a, b) @ kron(c, dd) - kron(a @ c, b @ dd)))),
                        1e-12 * d * d))
        out.append(_err("kron/adjoint", seed,
                        float(np.max(np.abs(kron(a, b).conj().T - kron(a.conj().T, b.conj().T)))),
                        1e-12))
        pa, pb = smp.random_psd(rng, d), smp.random_psd(rng, d)
        out.append(_gap("kron/psd", seed, float(np.linalg.eigvalsh(kron(pa, pb))[0]), 1e-12))
        out.append(_err("vec/triple-product", seed,
                        float(np.max(np.abs(vec(a @ b @ c) - kron(c.T, a) @ vec(b)))),
                        1e-12 * d * d))
        m = smp.random_hermitian(rng, d)
        out.append(_err("vec/round-trip", seed, float(np.max(np.abs(vec_inv(vec(m)) - m))), 0.0))
        w, u = eig_herm(m)
        recon = (u * w) @ u.conj().T
        out.append(_err("eig/reconstruction", seed,
                        float(np.linalg.norm(recon - m) / max(np.linalg.norm(m), 1e-30)), 1e-10))
        out.append(_err("eig/unitary", seed,
                        float(np.max(np.abs(u.conj().T @ u - np.eye(d)))), 1e-10))
        out.append(_err("eig/trace-sum", seed,
                        abs(float(np.sum(w)) - float(np.trace(m).real))
                        / max(abs(float(np.trace(m).real)), 1.0), 1e-10))
        chart = standard_chart(d)
        gram = np.einsum("kij,lji->kl", chart.basis, chart.basis).real
        out.append(_err("chart/orthonormal", seed, float(np.max(np.abs(gram - np.eye(d * d)))), 1e-12))
        x = chart.to_coords(m)
        out.append(_err("chart/round-trip", seed,
                        float(np.max(np.abs(chart.from_coords(x) - m))), 1e-12))
        out.append(_err("chart/isometry", seed,
                        abs(float(np.linalg.norm(x)) - float(np.linalg.norm(m))), 1e-12))
        y = chart.to_coords(smp.random_hermitian(rng, d))
        m2 = chart.from_coords(y)
        out.append(_err("chart/inner-product", seed,
                        abs(float(x @ y) - hs_inner(m, m2)), 1e-12 * max(1.0, abs(float(x @ y)))))
        rho = smp.random_density(rng, d)
        out.append(_gap("density/accepts-valid", seed, 1.0 if is_density(rho) else -1.0, 0.0))
        bad = np.diag([1.5, -0.5] + [0.0] * (d - 2)).astype(complex)
        out.append(_gap("density/rejects-indefinite", seed, -1.0 if is_density(bad) else 1.0, 0.0))
    return out


# ---------------------------------------------------------------------------
# analytic derivatives vs finite differences

_DERIV_TOL = {1: 1e-6, 2: 1e-6, 3: 1e-4, 4: 1e-4}


def _fd_case(name, seed, value_fn, analytic, rho, dirs, order) -> CheckResult:
    fd = fd_dir_deriv(value_fn, rho, dirs)
    h = fd_step(rho, order)
    tol = _DERIV_TOL[order] * max(abs(analytic), abs(fd)) + fd_noise_bound(value_fn(rho), h, order)
    return _err(name, seed, abs(analytic - fd), tol)


def suite_derivs(base_seed: int = 0, instances: int = 100) -> list[CheckResult]:
    """Orders 1-2 for the loss, regularizer, cumulative loss, barrier and
    potential; orders 3-4 for the regularizer and cumulative loss."""
    out = []
    for i in range(instances):
        seed = base_seed * 100_000 + 1_000 + i
        rng = smp.rng_for(seed)
        for d in (2, 3):
            for t in (0, 1, 3):
                obs = smp.random_observables(rng, d, t)
                oracle = pot.PotentialOracle.build(obs, 300.0, 10.0, dim=d)
                rho = smp.random_density(rng, d, 0.1)
                u = smp.random_hermitian(rng, d)
                u /= np.linalg.norm(u)
                tag = f"d={d},t={t}"
                fL = lambda x: pot.cum_loss_value(oracle, x)
                fV = lambda x: pot.vb_value(oracle, x)
                fP = lambda x: pot.potential_value(oracle, x)
                for order in (1, 2):
                    dirs = [u] * order
                    if t:
                        a = obs[-1]
                        out.append(_fd_case(f"derivs/loss-D{order}[{tag}]", seed,
                                            lambda x, a=a: pot.loss_value(a, x),
                                            pot.loss_dir_deriv(a, rho, dirs), rho, dirs, order))
                    out.append(_fd_case(f"derivs/logdet-D{order}[{tag}]", seed, pot.logdet_value,
                                        pot.logdet_dir_deriv(rho, dirs), rho, dirs, order))
                    out.append(_fd_case(f"derivs/cumloss-D{order}[{tag}]", seed, fL,
                                        pot.cum_loss_dir_deriv(oracle, rho, dirs), rho, dirs, order))
                    an_v = (pot.vb_dir_deriv(oracle, rho, u) if order == 1
                            else pot.vb_second_deriv(oracle, rho, u, u))
                    out.append(_fd_case(f"derivs/barrier-D{order}[{tag}]", seed, fV, an_v,
                                        rho, dirs, order))
                    an_p = (pot.potential_dir_deriv(oracle, rho, u) if order == 1
                            else pot.potential_second_deriv(oracle, rho, u, u))
                    out.append(_fd_case(f"derivs/potential-D{order}[{tag}]", seed, fP, an_p,
                                        rho, dirs, order))
                for order in (3, 4):
                    dirs = [u] * order
                    out.append(_fd_case(f"derivs/logdet-D{order}[{tag}]", seed, pot.logdet_value,
                                        pot.logdet_dir_deriv(rho, dirs), rho, dirs, order))
                    out.append(_fd_case(f"derivs/cumloss-D{order}[{tag}]", seed, fL,
                                        pot.cum_loss_dir_deriv(oracle, rho, dirs), rho, dirs, order))
    return out


# ---------------------------------------------------------------------------
# fourth-order convexity condition

def suite_vbc(base_seed: int = 0, instances: int = 100) -> list[CheckResult]:
    out = []
    rng0 = smp.rng_for(base_seed * 100_000 + 2)
    # scalar -log x satisfies the condition with equality
    for i in range(10):
        x = np.array([[rng0.uniform(0.1, 3.0) + 0j]])
        u = np.array([[rng0.standard_normal() + 0j]])
        v = np.array([[rng0.standard_normal() + 0j]])
        oracle = checks.logdet_oracle()
        gap = checks.vbc_gap(oracle, x, u, v)
        scale = max(checks.vbc_gap_scale(oracle, x, u, v), 1e-30)
        out.append(_err("vbc/scalar-neg-log-equality", base_seed * 100_000 + 2,
                        abs(gap) / scale, 1e-12))
    for i in range(instances):
        seed = base_seed * 100_000 + 2_000 + i
        rng = smp.rng_for(seed)
        for d in (2, 3):
            for t in (0, 1, 3):
                obs = smp.random_observables(rng, d, t)
                oracle_t = pot.PotentialOracle.build(obs, 300.0, 10.0, dim=d)
                rho = smp.random_density(rng, d, 0.05)
                u = smp.random_hermitian(rng, d)
                v = smp.random_hermitian(rng, d)
                tag = f"d={d},t={t}"
                for name, orc in (("logdet", checks.logdet_oracle()),
                                  ("cumloss", checks.cum_loss_oracle(oracle_t))):
                    gap = checks.vbc_gap(orc, rho, u, v)
                    scale = max(checks.vbc_gap_scale(orc, rho, u, v), 1e-30)
                    out.append(_gap(f"vbc/{name}[{tag}]", seed, gap / scale, 1e-9))
                if t:
                    orc = checks.loss_oracle(obs[-1])
                    gap = checks.vbc_gap(orc, rho, u, v)
                    scale = max(checks.vbc_gap_scale(orc, rho, u, v), 1e-30)
                    out.append(_gap(f"vbc/loss[{tag}]", seed, gap / scale, 1e-9))
        # closure under positive combinations
        d = 2
        a1, a2 = smp.random_psd(rng, d), smp.random_psd(rng, d)
        rho = smp.random_density(rng, d, 0.05)
        u, v = smp.random_hermitian(rng, d), smp.random_hermitian(rng, d)
        alpha, beta = rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)
        gap = checks.vbc_sum_check(checks.loss_oracle(a1), checks.loss_oracle(a2),
                                   alpha, beta, rho, u, v)
        combined = checks.DerivOracle.add(checks.loss_oracle(a1).scaled(alpha),
                                          checks.loss_oracle(a2).scaled(beta))
        scale = max(checks.vbc_gap_scale(combined, rho, u, v), 1e-30)
        out.append(_gap("vbc/sum-closure", seed, gap / scale, 1e-9))
        # near the boundary of the density set
        rho_b = smp.random_density(rng, 2, 0.0)
        w, uu = np.linalg.eigh(rho_b)
        w = np.maximum(w, 1e-4)
        rho_b = hermitize((uu * (w / np.sum(w))) @ uu.conj().T)
        orc = checks.cum_loss_oracle(pot.PotentialOracle.build(smp.random_observables(rng, 2, 2),
                                                               300.0, 10.0, dim=2))
        u, v = smp.random_hermitian(rng, 2), smp.random_hermitian(rng, 2)
        gap = checks.vbc_gap(orc, rho_b, u, v)
        scale = max(checks.vbc_gap_scale(orc, rho_b, u, v), 1e-30)
        out.append(_gap("vbc/cumloss-near-boundary", seed, gap / scale, 1e-9))
    return out


# ---------------------------------------------------------------------------
# self-concordance

def suite_sc(base_seed: int = 0, instances: int = 100) -> list[CheckResult]:
    out = []
    for i in range(instances):
        seed = base_seed * 100_000 + 3_000 + i
        rng = smp.rng_for(seed)
        for d in (2, 3):
            rho = smp.random_density(rng, d, 0.05)
            u = smp.random_hermitian(rng, d)
            a = smp.random_psd(rng, d)
            for name, orc in (("logdet", checks.logdet_oracle()),
                              ("loss", checks.loss_oracle(a))):
                gap = checks.sc_gap(orc, rho, u, m_f=1.0)
                scale = max(checks.sc_gap_scale(orc, rho, u, m_f=1.0), 1e-30)
                out.append(_gap(f"sc/{name}[d={d}]", seed, gap / scale, 1e-8))
        # quadratic: vanishing third derivative, gap = 2M (D^2)^{3/2}
        x = np.array([[rng.standard_normal() + 0j]])
        u1 = np.array([[rng.standard_normal() + 0j]])
        quad = checks.DerivOracle(
            value=lambda m: float(m[0, 0].real) ** 2,
            dir_deriv=lambda m, dirs: (2.0 * float(dirs[0][0, 0].real) * float(dirs[1][0, 0].real)
                                       if len(dirs) == 2 else 0.0
                                       if len(dirs) > 2 else 2.0 * float(m[0, 0].real) * float(dirs[0][0, 0].real)),
        )
        out.append(_gap("sc/quadratic", seed, checks.sc_gap(quad, x, u1, m_f=1.0), 0.0))
    return out


# ---------------------------------------------------------------------------
# Hessian sandwich for the volumetric barrier

def suite_sandwich(base_seed: int = 0, instances: int = 50) -> list[CheckResult]:
    out = []
    # scalar closed form: lower = mid, upper = 3 mid
    rng0 = smp.rng_for(base_seed * 100_000 + 4)
    for _ in range(5):
        x = np.array([[rng0.uniform(0.2, 2.0) + 0j]])
        u = np.array([[np.sign(rng0.standard_normal()) + 0j]])
        lo, mid, up = checks.sandwich_check(checks.logdet_barrier(), x, u)
        expected = float(u[0, 0].real) ** 2 / float(x[0, 0].real) ** 2
        out.append(_err("sandwich/scalar-mid", base_seed * 100_000 + 4,
                        abs(mid - expected) / expected, 1e-6))
        out.append(_err("sandwich/scalar-bounds", base_seed * 100_000 + 4,
                        max(lo - mid, mid - up) / expected, 1e-6))
    for i in range(instances):
        seed = base_seed * 100_000 + 4_000 + i
        rng = smp.rng_for(seed)
        d = 2
        t = int(rng.integers(0, 4))
        obs = smp.random_observables(rng, d, t)
        oracle = pot.PotentialOracle.build(obs, 300.0, 10.0, dim=d)
        rho = smp.random_density(rng, d, 0.1)
        u = smp.random_hermitian(rng, d)
        u /= np.linalg.norm(u)
        lo, mid, up = checks.sandwich_check(checks.cum_loss_barrier(oracle), rho, u)
        scale = max(abs(mid), abs(up), 1e-30)
        out.append(_gap(f"sandwich/cumloss-lower[t={t}]", seed, (mid - lo) / scale, 1e-3))
        out.append(_gap(f"sandwich/cumloss-upper[t={t}]", seed, (up - mid) / scale, 1e-3))
        # scaled regularizer at the maximally mixed state
        lam = float(rng.uniform(1.0, 300.0))
        lo, mid, up = checks.sandwich_check(checks.logdet_barrier(lam), np.eye(d) / d, u)
        scale = max(abs(mid), abs(up), 1e-30)
        out.append(_gap("sandwich/logdet-lower", seed, (mid - lo) / scale, 1e-3))
        out.append(_gap("sandwich/logdet-upper", seed, (up - mid) / scale, 1e-3))
    return out


# ---------------------------------------------------------------------------
# matrix inequalities

def suite_ineqs(base_seed: int = 0, instances: int = 200) -> list[CheckResult]:
    out = []
    for i in range(instances):
        seed = base_seed * 100_000 + 5_000 + i
        rng = smp.rng_for(seed)
        d = 3
        a, b = smp.random_hermitian(rng, d), smp.random_hermitian(rng, d)
        out.append(_gap("ineq/anstreicher", seed, checks.anstreicher_gap(a, b), 1e-10))
        out.append(_gap("ineq/anstreicher-equal-args", seed, -abs(checks.anstreicher_gap(a, a)), 1e-10))
        da = np.diag(rng.standard_normal(d)).astype(complex)
        db = np.diag(rng.standard_normal(d)).astype(complex)
        out.append(_gap("ineq/anstreicher-commuting", seed, -abs(checks.anstreicher_gap(da, db)), 1e-10))
        # hypothesis-satisfying construction: A = C B^-1 C + PSD slack
        bb = smp.random_psd(rng, d) + 0.1 * np.eye(d)
        cc = smp.random_hermitian(rng, d)
        slack = smp.random_psd(rng, d)
        aa = hermitize(cc @ np.linalg.inv(bb) @ cc + slack)
        hyp = checks.sample_trace_ineq_hypothesis(aa, bb, cc, rng, samples=200)
        if hyp:
            out.append(_gap("ineq/trace-hypothesis-holds", seed, checks.trace_ineq_gap(aa, bb, cc), 1e-10))
        else:
            out.append(CheckResult("ineq/trace-hypothesis-unverified", seed, 0.0, 0.0, ">=", True))
        out.append(_gap("ineq/trace-zero-C", seed,
                        checks.trace_ineq_gap(smp.random_psd(rng, d), bb, np.zeros((d, d))), 1e-10))
    return out


# ---------------------------------------------------------------------------
# ellipsoid geometry and solves

class CutValidator:
    """Validate emitted cuts against sampled feasible-and-better points.

    PSD and loss-domain cuts must retain every feasible point.  Gradient cuts
    must retain every point at least as good as the center; candidates come
    from a precomputed pool of random densities, topped up with convex
    mixtures between the best-known point and the center (which are never
    worse than the center) when the center beats the whole pool.
    """

    def __init__(self, oracle, chart, rng, pool_size: int = 2000, samples: int = 200):
        self.oracle = oracle
        self.chart = chart
        self.samples = samples
        coords = []
        values = []
        for _ in range(pool_size):
            rho = smp.random_density(rng, oracle.dim, 1e-3)
            try:
                values.append(pot.potential_value(oracle, rho))
            except pot.DomainError:
                continue
            coords.append(chart.traceless_coords(rho))
        order = np.argsort(values)
        self.coords = np.array(coords)[order]
        self.values = np.array(values)[order]
        self.best_x: np.ndarray | None = None

    def set_best(self, x: np.ndarray) -> None:
        self.best_x = np.asarray(x, dtype=float)

    def worst_violation(self, state, cut) -> float:
        """max <g, x' - center> over the sample; nonpositive means the cut is valid."""
        if cut.kind == ell.GRADIENT:
            rho_c = self.chart.density_from_traceless(state.center)
            center_value = pot.potential_value(self.oracle, rho_c)
            k = int(np.searchsorted(self.values, center_value, side="right"))
            points = list(self.coords[: min(k, self.samples)])
            if len(points) < self.samples and self.best_x is not None:
                missing = self.samples - len(points)
                thetas = np.linspace(0.0, 1.0, missing + 1)[:-1]
                points.extend((1 - th) * self.best_x + th * state.center for th in thetas)
        else:
            points = list(self.coords[: self.samples])
        if not points:
            return -np.inf
        diffs = np.array(points) - state.center
        return float(np.max(diffs @ cut.g))


def suite_ellipsoid(base_seed: int = 0, instances: int = 20) -> list[CheckResult]:
    out = []
    # update formula against an independent transcription
    rng = smp.rng_for(base_seed * 100_000 + 6)
    for i in range(10):
        n = int(rng.integers(2, 9))
        shape = smp.random_psd(rng, n).real + n * np.eye(n)
        state = ell.EllipsoidState(center=rng.standard_normal(n), shape=shape)
        g = rng.standard_normal(n)
        step = ell.ellipsoid_step(state, ell.Cut(ell.GRADIENT, g))
        hg = shape @ g
        gam = np.sqrt(g @ hg)
        x_direct = state.center - hg / ((n + 1) * gam)
        h_direct = n * n / (n * n - 1.0) * (shape - 2.0 / (n + 1) * np.outer(hg, hg) / (gam * gam))
        out.append(_err("ellipsoid/step-center", base_seed * 100_000 + 6,
                        float(np.max(np.abs(step.center - x_direct))), 1e-12))
        out.append(_err("ellipsoid/step-shape", base_seed * 100_000 + 6,
                        float(np.max(np.abs(step.shape - (h_direct + h_direct.T) / 2))), 1e-12))
        # mirror symmetry of opposite cuts
        step_neg = ell.ellipsoid_step(state, ell.Cut(ell.GRADIENT, -g))
        out.append(_err("ellipsoid/mirror-cuts", base_seed * 100_000 + 6,
                        float(np.max(np.abs((step.center + step_neg.center) / 2 - state.center))),
                        1e-12))
    # projector chart norm: all densities start inside the unit ball
    for i in range(20):
        seed = base_seed * 100_000 + 6_100 + i
        rng = smp.rng_for(seed)
        d = int(rng.integers(2, 5))
        chart = standard_chart(d)
        proj = smp.random_rank_one(rng, d)
        norm = float(np.linalg.norm(chart.traceless_coords(proj)))
        out.append(_err("ellipsoid/projector-radius", seed,
                        abs(norm - np.sqrt(1.0 - 1.0 / d)), 1e-12))
        out.append(_gap("ellipsoid/projector-inside", seed, 1.0 - norm, 1e-12))
    # t=0 solve lands on the maximally mixed state
    for d in (2, 3):
        oracle = pot.PotentialOracle.build([], 300.0, 10.0, dim=d)
        res = ell.minimize_potential(oracle)
        out.append(_err(f"ellipsoid/mixed-state-solve[d={d}]", base_seed,
                        float(np.linalg.norm(res.rho - np.eye(d) / d)), 1e-4))
    # full solves: volume decay, cut validity, monotone best value
    for i in range(instances):
        seed = base_seed * 100_000 + 6_500 + i
        rng = smp.rng_for(seed)
        d = 2
        t = int(rng.integers(1, 5))
        obs = smp.random_observables(rng, d, t)
        oracle = pot.PotentialOracle.build(obs, 300.0, 10.0, dim=d)
        chart = standard_chart(d)
        n = d * d - 1
        log_vols = []
        cuts: list[tuple[ell.EllipsoidState, ell.Cut]] = []

        def observer(state, cut):
            cuts.append((state, cut))
            log_vols.append(ell.ellipsoid_step(state, cut).log_volume_ratio())

        res = ell.minimize_potential(oracle, on_cut=observer)
        worst_decay = max(
            lv - (-(k + 1) / (2.0 * n + 2.0)) for k, lv in enumerate(log_vols)
        )
        out.append(_err(f"ellipsoid/volume-decay[t={t}]", seed, worst_decay, 1e-9))
        shape_ok = all(np.linalg.eigvalsh(s.shape)[0] > 0 for s, _ in cuts)
        out.append(_gap("ellipsoid/shape-pd", seed, 1.0 if shape_ok else -1.0, 0.0))
        validator = CutValidator(oracle, chart, smp.rng_for(seed + 17))
        validator.set_best(chart.traceless_coords(res.rho))
        worst_cut = max(validator.worst_violation(s, c) for s, c in cuts)
        out.append(_err("ellipsoid/cut-validity-every-cut", seed, worst_cut, 1e-10))
        # regularized-leader iterate keeps eigenvalues above half the guarantee
        mu0 = pot.PotentialOracle.build(obs, 300.0, 0.0, dim=d)
        res0 = ell.minimize_potential(mu0)
        bound = 300.0 / (2.0 * (t + 300.0 * d))
        out.append(_gap(f"ellipsoid/iterate-floor[t={t}]", seed,
                        float(np.linalg.eigvalsh(res0.rho)[0]) - bound, 0.0))
    # hindsight boundary case
    rho_h, val_h = ell.hindsight_optimum([np.diag([1.0, 0.0]).astype(complex)], 2)
    out.append(_err("ellipsoid/hindsight-boundary", base_seed, abs(val_h), 1e-3))
    return out


SUITE_RUNNERS: dict[str, Callable[[int, int], list[CheckResult]]] = {
    "kron": suite_kron,
    "derivs": suite_derivs,
    "vbc": suite_vbc,
    "sc": suite_sc,
    "sandwich": suite_sandwich,
    "ineqs": suite_ineqs,
    "ellipsoid": suite_ellipsoid,
}

DEFAULT_INSTANCES = {
    "kron": 50,
    "derivs": 100,
    "vbc": 100,
    "sc": 100,
    "sandwich": 50,
    "ineqs": 200,
    "ellipsoid": 20,
}


def run_suites(
    selector: str, base_seed: int = 0, instances: int | None = None
) -> list[CheckResult]:
    if selector not in SUITES:
        raise ValueError(f"unknown suite {selector!r}; choose from {SUITES}")
    names = list(SUITE_RUNNERS) if selector == "all" else [selector]
    results: list[CheckResult] = []
    for name in names:
        count = instances if instances is not None else DEFAULT_INSTANCES[name]
        results.extend(SUITE_RUNNERS[name](base_seed, count))
    return results
