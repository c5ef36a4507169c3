"""Ellipsoid method over the trace-one slice of Hermitian space.

Density matrices sit inside the unit Frobenius ball around I/d in the
(d^2 - 1)-dimensional traceless chart: ||rho - I/d||_F^2 = tr(rho^2) - 1/d
is at most 1 - 1/d < 1, with equality exactly at rank-one projectors.  The
solver therefore runs central-cut ellipsoid iterations in that chart, with
three cut families:

* ``psd-eigvec``   the reconstructed matrix has an eigenvalue below the PSD
                   threshold; cut along the offending projector,
* ``loss-domain``  some observable trace is at the loss-domain boundary;
                   cut along that observable,
* ``gradient``     a plain objective-gradient cut at feasible centers.

The ambient dimension in the update formulas is the chart dimension
n = d^2 - 1, not d^2: the trace-one constraint makes the density set
volume-zero in the full vectorized space, so the textbook volume-decay
argument only applies on the slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .hermitian import Matrix, RealChart, hermitize, project_to_density, standard_chart
from . import potentials as pot

GRADIENT = "gradient"
PSD_EIGVEC = "psd-eigvec"
LOSS_DOMAIN = "loss-domain"

# gradient norms below this (relative) level mean the center is stationary
_STATIONARY_TOL = 1e-12


class SolverError(RuntimeError):
    """No feasible iterate found within the iteration budget."""


@dataclass(frozen=True)
class Cut:
    kind: str  # gradient | psd-eigvec | loss-domain
    g: np.ndarray

    def __post_init__(self):
        if not np.any(self.g):
            raise ValueError("cut vector must be nonzero")


@dataclass(frozen=True)
class EllipsoidState:
    """E_k = { x : (x - center)^T shape^-1 (x - center) <= 1 }."""

    center: np.ndarray
    shape: np.ndarray
    iteration: int = 0

    @property
    def n(self) -> int:
        return self.center.size

    def log_volume_ratio(self) -> float:
        """log vol(E_k) / vol(E_1); the initial shape is the identity."""
        sign, logdet = np.linalg.slogdet(self.shape)
        if sign <= 0:
            raise SolverError("shape matrix lost positive definiteness")
        return 0.5 * float(logdet)

    def enclosing_radius(self) -> float:
        return float(np.sqrt(max(np.linalg.eigvalsh(self.shape)[-1], 0.0)))


@dataclass(frozen=True)
class SolverConfig:
    """Iteration budget and cut thresholds.

    ``max_iters`` defaults to ceil((2n+2) n ln(1/eps_vol)) for chart dimension
    n.  ``tol_psd_cut`` defaults to min(1e-9, lam / (2 (t + lam d))), half the
    guaranteed smallest eigenvalue of the regularized-leader iterate, so PSD
    cuts can never remove the minimizer.  ``stall_window`` defaults to
    ceil(2 n (n+1) ln(1/stall_tol)): anything shorter is unsound, because the
    ellipsoid's value-gap certificate shrinks by e^(-1/(2n(n+1))) per
    iteration and the first improvement over the starting center can
    legitimately take several decades of that rate.
    """

    max_iters: int | None = None
    eps_vol: float = 1e-8
    tol_psd_cut: float | None = None
    best_point_required: bool = True
    radius_tol: float = 1e-7
    stall_window: int | None = None
    stall_tol: float = 1e-9
    domain_tol: float = pot.DOMAIN_TOL

    def resolved_max_iters(self, n: int) -> int:
        if self.max_iters is not None:
            return self.max_iters
        return math.ceil((2 * n + 2) * n * math.log(1.0 / self.eps_vol))

    def resolved_stall_window(self, n: int) -> int:
        if self.stall_window is not None:
            return self.stall_window
        return math.ceil(2 * n * (n + 1) * math.log(1.0 / self.stall_tol))

    def resolved_psd_tol(self, lam: float, t: int, d: int) -> float:
        if self.tol_psd_cut is not None:
            return self.tol_psd_cut
        return min(1e-9, lam / (2.0 * (t + lam * d)))


@dataclass(frozen=True)
class SolveResult:
    rho: Matrix
    value: float
    iters: int
    status: str  # stationary | radius | stalled | flat | max-iters | infeasible


def initial_ellipsoid(d: int) -> EllipsoidState:
    """Unit Frobenius ball around I/d in the traceless chart; contains every
    density matrix."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    n = d * d - 1
    return EllipsoidState(center=np.zeros(n), shape=np.eye(n), iteration=0)


def ellipsoid_step(state: EllipsoidState, cut: Cut) -> EllipsoidState:
    """Central-cut update retaining the half-space <g, x - center> <= 0."""
    n = state.n
    g = np.asarray(cut.g, dtype=float)
    hg = state.shape @ g
    gamma_sq = float(g @ hg)
    if gamma_sq <= 0.0:
        raise SolverError(f"cut normal has nonpositive ellipsoid norm ({gamma_sq:.3e})")
    gamma = np.sqrt(gamma_sq)
    center = state.center - hg / ((n + 1) * gamma)
    shape = (n * n) / (n * n - 1.0) * (state.shape - (2.0 / (n + 1)) * np.outer(hg, hg) / gamma_sq)
    shape = (shape + shape.T) / 2.0
    return EllipsoidState(center=center, shape=shape, iteration=state.iteration + 1)


def separation_oracle(
    x: np.ndarray,
    oracle: pot.PotentialOracle,
    chart: RealChart,
    config: SolverConfig | None = None,
) -> tuple[Cut | None, float | None]:
    """Classify a chart point and produce a cut.

    Returns (cut, value): the value is set only at feasible points, where the
    cut is the potential gradient.  A ``None`` cut means the gradient vanished
    to working precision, i.e. the point is the minimizer.
    """
    config = config or SolverConfig()
    rho = chart.density_from_traceless(x)
    w, vecs = np.linalg.eigh(rho)
    psd_tol = config.resolved_psd_tol(oracle.lam, oracle.t, oracle.dim)
    if w[0] < psd_tol:
        v = vecs[:, 0]
        g = chart.project_traceless(-np.outer(v, v.conj()))
        return Cut(PSD_EIGVEC, g), None
    for a in oracle.observables:
        if float(np.vdot(a, rho).real) <= config.domain_tol:
            return Cut(LOSS_DOMAIN, chart.project_traceless(-a)), None
    value, g = pot.potential_value_and_grad_chart(oracle, rho, chart)
    if np.linalg.norm(g) <= _STATIONARY_TOL * (1.0 + abs(value)):
        return None, value
    return Cut(GRADIENT, g), value


CutObserver = Callable[[EllipsoidState, Cut], None]


def _run(
    separate: Callable[[np.ndarray], tuple[Cut | None, float | None]],
    d: int,
    config: SolverConfig,
    on_cut: CutObserver | None = None,
) -> tuple[np.ndarray | None, float, int, str, np.ndarray]:
    n = d * d - 1
    max_iters = config.resolved_max_iters(n)
    stall_window = config.resolved_stall_window(n)
    state = initial_ellipsoid(d)
    best_x: np.ndarray | None = None
    best_value = np.inf
    last_improvement = 0
    status = "max-iters"
    iters = 0
    for k in range(1, max_iters + 1):
        iters = k
        cut, value = separate(state.center)
        if value is not None and value < best_value:
            if value < best_value - config.stall_tol:
                last_improvement = k
            best_value = value
            best_x = state.center.copy()
        if cut is None:
            status = "stationary"
            break
        if on_cut is not None:
            on_cut(state, cut)
        try:
            state = ellipsoid_step(state, cut)
        except SolverError:
            # ellipsoid lost all width along the cut normal; common at boundary
            # optima where the same constraint face is cut repeatedly
            if best_x is None:
                raise
            status = "flat"
            break
        if state.enclosing_radius() < config.radius_tol:
            status = "radius"
            break
        if best_x is not None and k - last_improvement >= stall_window:
            status = "stalled"
            break
    return best_x, best_value, iters, status, state.center


def minimize_potential(
    oracle: pot.PotentialOracle,
    config: SolverConfig | None = None,
    on_cut: CutObserver | None = None,
) -> SolveResult:
    """Minimize the round potential over density matrices.

    Returns the best strictly feasible center encountered, symmetrized and
    trace-renormalized.
    """
    config = config or SolverConfig()
    d = oracle.dim
    chart = standard_chart(d)

    def separate(x: np.ndarray) -> tuple[Cut | None, float | None]:
        return separation_oracle(x, oracle, chart, config)

    best_x, best_value, iters, status = _finish_run(
        _run(separate, d, config, on_cut), chart, config)
    rho = hermitize(chart.density_from_traceless(best_x))
    rho = rho / float(np.trace(rho).real)
    return SolveResult(rho=rho, value=best_value, iters=iters, status=status)


def _finish_run(run_result, chart: RealChart, config: SolverConfig):
    best_x, best_value, iters, status, final_center = run_result
    if best_x is None:
        if config.best_point_required:
            raise SolverError(
                f"no feasible iterate within {iters} iterations; check the solver budget"
            )
        # caller opted out of the guarantee: hand back the projected center
        rho = project_to_density(chart.density_from_traceless(final_center))
        best_x = chart.traceless_coords(rho)
        best_value = np.inf
        status = "infeasible"
    return best_x, best_value, iters, status


def hindsight_optimum(
    observables: Sequence[Matrix],
    d: int,
    config: SolverConfig | None = None,
    on_cut: CutObserver | None = None,
) -> tuple[Matrix, float]:
    """Minimize the plain cumulative loss (no regularizer, no barrier).

    The optimum generally sits on the boundary of the density set, so the PSD
    cut threshold is zero here: centers are cut only when an eigenvalue is
    actually negative, and boundary optima survive every cut.
    """
    if not observables:
        raise ValueError("at least one observable is required")
    obs = [hermitize(a) for a in observables]
    config = config or SolverConfig()
    chart = standard_chart(d)

    def separate(x: np.ndarray) -> tuple[Cut | None, float | None]:
        rho = chart.density_from_traceless(x)
        w, vecs = np.linalg.eigh(rho)
        if w[0] < 0.0:
            v = vecs[:, 0]
            return Cut(PSD_EIGVEC, chart.project_traceless(-np.outer(v, v.conj()))), None
        traces = np.array([float(np.vdot(a, rho).real) for a in obs])
        if np.min(traces) <= config.domain_tol:
            k = int(np.argmin(traces))
            return Cut(LOSS_DOMAIN, chart.project_traceless(-obs[k])), None
        value = -float(np.sum(np.log(traces)))
        grad_herm = -sum(a / c for a, c in zip(obs, traces))
        g = chart.project_traceless(grad_herm)
        if np.linalg.norm(g) <= _STATIONARY_TOL * (1.0 + abs(value)):
            return None, value
        return Cut(GRADIENT, g), value

    best_x, _, _, _ = _finish_run(_run(separate, d, config, on_cut), chart, config)
    rho = hermitize(chart.density_from_traceless(best_x))
    rho = rho / float(np.trace(rho).real)
    try:
        value = float(sum(pot.loss_value(a, rho) for a in obs))
    except pot.DomainError:
        # only reachable through the best_point_required=False fallback
        value = np.inf
    return rho, value
