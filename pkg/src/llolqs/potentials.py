"""Analytic values and directional derivatives of the per-round potential.

The objects here are functions of a density matrix rho, evaluated in the
column-major complex vectorization:

* the log loss  -log tr(A rho)  of an observable A,
* the log-determinant regularizer  -log det rho,
* their regularized cumulative sum  L_t = sum_tau f_tau + lambda R,
* the volumetric barrier  V_t = (1/2) log det of the Hessian of L_t,
* the potential  P_t = L_t + mu V_t  minimized by the learner each round.

Derivative formulas:

* loss, order n:           (-1)^n (n-1)! prod_i tr(A U_i) / tr(A rho)^n
* regularizer, order n:    ((-1)^n / n) sum over permutations sigma of
                           tr(rho^-1 U_sigma(1) ... rho^-1 U_sigma(n))
* regularizer Hessian:     (rho^-1)^T kron rho^-1
* third/fourth derivatives of the regularizer as operators on the vectorized
  space: see ``logdet_third_op`` / ``logdet_fourth_op``.

All H^-1-weighted quantities go through a Cholesky factorization of the
cumulative Hessian; the only explicit inverse formed is rho^-1 (d x d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np
import scipy.linalg

from .hermitian import Matrix, RealChart, hermitize, kron, vec

DOMAIN_TOL = 1e-14


class DomainError(ValueError):
    """Evaluation outside the domain: boundary trace, singular or non-PD matrix."""


def _trace_product(a: Matrix, b: Matrix) -> float:
    # tr(A B) for Hermitian A, B; the imaginary part is numerical noise
    return float(np.vdot(a, b).real)


def _require_pd_inverse(rho: Matrix) -> Matrix:
    w = np.linalg.eigvalsh(hermitize(rho))
    if w[0] <= 0.0:
        raise DomainError(f"matrix is not strictly positive definite (min eig {w[0]:.3e})")
    return np.linalg.inv(rho)


# ---------------------------------------------------------------------------
# single-round log loss

def loss_value(a: Matrix, rho: Matrix) -> float:
    c = _trace_product(a, rho)
    if c <= DOMAIN_TOL:
        raise DomainError(f"tr(A rho) = {c:.3e} is out of the loss domain")
    return -float(np.log(c))


def loss_grad_vec(a: Matrix, rho: Matrix) -> np.ndarray:
    """Gradient of the loss in the vectorized representation: -vec(A)/tr(A rho)."""
    c = _trace_product(a, rho)
    if c <= DOMAIN_TOL:
        raise DomainError(f"tr(A rho) = {c:.3e} is out of the loss domain")
    return -vec(a) / c


def loss_hess(a: Matrix, rho: Matrix) -> Matrix:
    """Rank-one loss Hessian vec(A) vec(A)^* / tr(A rho)^2, equal to grad grad^*."""
    g = loss_grad_vec(a, rho)
    return np.outer(g, g.conj())


def loss_dir_deriv(a: Matrix, rho: Matrix, dirs: Sequence[Matrix]) -> float:
    n = len(dirs)
    if not 1 <= n <= 4:
        raise ValueError(f"order must be between 1 and 4, got {n}")
    c = _trace_product(a, rho)
    if c <= DOMAIN_TOL:
        raise DomainError(f"tr(A rho) = {c:.3e} is out of the loss domain")
    prod = 1.0
    for u in dirs:
        prod *= _trace_product(a, u)
    sign = -1.0 if n % 2 else 1.0
    return sign * math.factorial(n - 1) * prod / c**n


# ---------------------------------------------------------------------------
# log-determinant regularizer  R(rho) = -log det rho

def logdet_value(rho: Matrix) -> float:
    """Value of the regularizer -log det rho (nonnegative on density matrices)."""
    w = np.linalg.eigvalsh(hermitize(rho))
    if w[0] <= 0.0:
        raise DomainError(f"matrix is not strictly positive definite (min eig {w[0]:.3e})")
    return -float(np.sum(np.log(w)))


def logdet_dir_deriv(rho: Matrix, dirs: Sequence[Matrix]) -> float:
    """D^n of -log det at rho along 1 to 4 Hermitian directions.

    Symmetric in the directions by construction: the permutation sum is
    evaluated literally (at most 24 trace terms).
    """
    n = len(dirs)
    if not 1 <= n <= 4:
        raise ValueError(f"order must be between 1 and 4, got {n}")
    rho_inv = _require_pd_inverse(rho)
    x = [rho_inv @ np.asarray(u, dtype=complex) for u in dirs]
    total = 0.0
    for sigma in permutations(range(n)):
        prod = x[sigma[0]]
        for k in sigma[1:]:
            prod = prod @ x[k]
        total += float(np.trace(prod).real)
    return (-1.0) ** n / n * total


def logdet_hess(rho: Matrix) -> Matrix:
    rho_inv = _require_pd_inverse(rho)
    return kron(rho_inv.T, rho_inv)


def logdet_third_op(rho: Matrix, u: Matrix) -> Matrix:
    """Third derivative of -log det with one slot fixed at U, as a d^2 x d^2 operator."""
    rho_inv = _require_pd_inverse(rho)
    x = rho_inv @ u @ rho_inv
    return -kron(x.T, rho_inv) - kron(rho_inv.T, x)


def logdet_fourth_op(rho: Matrix, u: Matrix, v: Matrix) -> Matrix:
    """Fourth derivative of -log det with two slots fixed at U and V."""
    rho_inv = _require_pd_inverse(rho)
    xu = rho_inv @ u @ rho_inv
    xv = rho_inv @ v @ rho_inv
    xuv = rho_inv @ (u @ rho_inv @ v + v @ rho_inv @ u) @ rho_inv
    return kron(xuv.T, rho_inv) + kron(xu.T, xv) + kron(xv.T, xu) + kron(rho_inv.T, xuv)


# ---------------------------------------------------------------------------
# oracle over the full history

@dataclass(frozen=True)
class PotentialOracle:
    """Bound state (observables A_1..A_t, lambda, mu) for the round-t potential.

    ``mu = 0`` is allowed so the plain log-det-regularized leader shares this
    code path.
    """

    observables: tuple[Matrix, ...]
    lam: float
    mu: float
    dim: int

    @staticmethod
    def build(
        observables: Sequence[Matrix],
        lam: float,
        mu: float,
        dim: int | None = None,
        tol_psd: float = 1e-9,
    ) -> "PotentialOracle":
        if lam <= 0.0:
            raise ValueError(f"lambda must be positive, got {lam}")
        if mu < 0.0:
            raise ValueError(f"mu must be nonnegative, got {mu}")
        obs = tuple(hermitize(a) for a in observables)
        if dim is None:
            if not obs:
                raise ValueError("dim is required when there are no observables")
            dim = obs[0].shape[0]
        for k, a in enumerate(obs):
            if a.shape != (dim, dim):
                raise ValueError(f"observable {k} has shape {a.shape}, expected {(dim, dim)}")
            if np.linalg.norm(a) == 0.0:
                raise ValueError(f"observable {k} is the zero matrix")
            w = np.linalg.eigvalsh(a)
            if w[0] < -tol_psd:
                raise ValueError(f"observable {k} is not PSD (min eig {w[0]:.3e})")
        return PotentialOracle(observables=obs, lam=float(lam), mu=float(mu), dim=int(dim))

    @property
    def t(self) -> int:
        return len(self.observables)

    def without_last(self) -> "PotentialOracle":
        if not self.observables:
            raise ValueError("no observable to drop")
        return PotentialOracle(self.observables[:-1], self.lam, self.mu, self.dim)

    def with_history(self, observables: Sequence[Matrix]) -> "PotentialOracle":
        return PotentialOracle.build(observables, self.lam, self.mu, self.dim)


class _Point:
    """Per-(oracle, rho) workspace: traces, Hessian factorization, dual norms."""

    __slots__ = ("oracle", "rho", "rho_inv", "stack", "vecs", "traces", "hess",
                 "cho", "dual_sq")

    def __init__(self, oracle: PotentialOracle, rho: Matrix):
        self.oracle = oracle
        self.rho = hermitize(rho)
        self.rho_inv = _require_pd_inverse(self.rho)
        d = oracle.dim
        t = oracle.t
        if t:
            self.stack = np.stack(oracle.observables)            # (t, d, d)
            self.vecs = self.stack.transpose(0, 2, 1).reshape(t, d * d).T  # vec columns
            self.traces = np.einsum("tij,ji->t", self.stack, self.rho).real
            if np.min(self.traces) <= DOMAIN_TOL:
                k = int(np.argmin(self.traces))
                raise DomainError(
                    f"tr(A_{k + 1} rho) = {self.traces[k]:.3e} is out of the loss domain"
                )
            hess = (self.vecs / self.traces**2) @ self.vecs.conj().T
        else:
            self.stack = np.zeros((0, d, d), dtype=complex)
            self.vecs = np.zeros((d * d, 0), dtype=complex)
            self.traces = np.zeros(0)
            hess = np.zeros((d * d, d * d), dtype=complex)
        self.hess = hermitize(hess + oracle.lam * kron(self.rho_inv.T, self.rho_inv))
        try:
            self.cho = scipy.linalg.cho_factor(self.hess, lower=True)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
            raise DomainError("cumulative Hessian is not positive definite") from exc
        if t:
            solved = scipy.linalg.cho_solve(self.cho, self.vecs)
            self.dual_sq = np.einsum("it,it->t", self.vecs.conj(), solved).real
        else:
            self.dual_sq = np.zeros(0)

    def obs_traces_along(self, u: Matrix) -> np.ndarray:
        """tr(A_tau U) for every observable."""
        if not self.traces.size:
            return np.zeros(0)
        return np.einsum("tij,ji->t", self.stack, u).real

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(self.cho, rhs)

    def inv_weighted_trace(self, op: Matrix) -> float:
        """tr(H^-1 op) via the Cholesky factorization."""
        return float(np.trace(self.solve(op)).real)

    def third_op(self, u: Matrix) -> Matrix:
        """D^3 of the vectorized cumulative loss with one slot fixed at U."""
        rho_inv = self.rho_inv
        x = rho_inv @ u @ rho_inv
        op = -self.oracle.lam * (kron(x.T, rho_inv) + kron(rho_inv.T, x))
        if self.traces.size:
            w = -2.0 * self.obs_traces_along(u) / self.traces**3
            op = op + (self.vecs * w) @ self.vecs.conj().T
        return op

    def fourth_op(self, u: Matrix, v: Matrix) -> Matrix:
        """D^4 of the vectorized cumulative loss with two slots fixed at U, V."""
        rho_inv = self.rho_inv
        xu = rho_inv @ u @ rho_inv
        xv = rho_inv @ v @ rho_inv
        xuv = rho_inv @ (u @ rho_inv @ v + v @ rho_inv @ u) @ rho_inv
        op = self.oracle.lam * (kron(xuv.T, rho_inv) + kron(xu.T, xv)
                                + kron(xv.T, xu) + kron(rho_inv.T, xuv))
        if self.traces.size:
            w = 6.0 * self.obs_traces_along(u) * self.obs_traces_along(v) / self.traces**4
            op = op + (self.vecs * w) @ self.vecs.conj().T
        return op

    def cum_loss_grad_along(self, u: Matrix) -> float:
        """D L_t[u] = -sum_tau tr(A_tau U)/tr(A_tau rho) - lambda tr(rho^-1 U)."""
        total = -self.oracle.lam * float(np.trace(self.rho_inv @ u).real)
        if self.traces.size:
            total -= float(np.sum(self.obs_traces_along(u) / self.traces))
        return total

    def vb_grad_along(self, u: Matrix) -> float:
        """D V_t[u] = (1/2) tr(H^-1 D^3 L_t[u])."""
        total = 0.0
        if self.traces.size:
            tu = self.obs_traces_along(u)
            total -= float(np.sum(tu / self.traces**3 * self.dual_sq))
        rho_inv = self.rho_inv
        x = rho_inv @ u @ rho_inv
        total -= 0.5 * self.oracle.lam * self.inv_weighted_trace(kron(x.T, rho_inv))
        total -= 0.5 * self.oracle.lam * self.inv_weighted_trace(kron(rho_inv.T, x))
        return total

    def potential_grad_along(self, u: Matrix) -> float:
        total = self.cum_loss_grad_along(u)
        if self.oracle.mu != 0.0:
            total += self.oracle.mu * self.vb_grad_along(u)
        return total


def cum_hess(oracle: PotentialOracle, rho: Matrix) -> Matrix:
    """H_t(rho): sum of the loss Hessians plus lambda times the regularizer Hessian."""
    return _Point(oracle, rho).hess


def cum_loss_value(oracle: PotentialOracle, rho: Matrix) -> float:
    total = oracle.lam * logdet_value(rho)
    for a in oracle.observables:
        total += loss_value(a, rho)
    return total


def cum_loss_dir_deriv(oracle: PotentialOracle, rho: Matrix, dirs: Sequence[Matrix]) -> float:
    total = oracle.lam * logdet_dir_deriv(rho, dirs)
    for a in oracle.observables:
        total += loss_dir_deriv(a, rho, dirs)
    return total


def cum_third_op(oracle: PotentialOracle, rho: Matrix, u: Matrix) -> Matrix:
    """D^3 of the vectorized cumulative loss with one slot fixed at U."""
    return _Point(oracle, rho).third_op(u)


def cum_fourth_op(oracle: PotentialOracle, rho: Matrix, u: Matrix, v: Matrix) -> Matrix:
    """D^4 of the vectorized cumulative loss with two slots fixed at U and V."""
    return _Point(oracle, rho).fourth_op(u, v)


def vb_value(oracle: PotentialOracle, rho: Matrix) -> float:
    """Volumetric barrier (1/2) log det H_t(rho), from the eigenvalues of H_t."""
    point = _Point(oracle, rho)
    w = np.linalg.eigvalsh(point.hess)
    if w[0] <= 0.0:
        raise DomainError(f"cumulative Hessian is not PD (min eig {w[0]:.3e})")
    return 0.5 * float(np.sum(np.log(w)))


def vb_dir_deriv(oracle: PotentialOracle, rho: Matrix, u: Matrix) -> float:
    return _Point(oracle, rho).vb_grad_along(u)


def vb_second_deriv(oracle: PotentialOracle, rho: Matrix, u: Matrix, v: Matrix) -> float:
    """D^2 of the volumetric barrier along (u, v):
    (1/2) tr(H^-1 D^4 L[u,v]) - (1/2) tr(H^-1 D^3 L[u] H^-1 D^3 L[v])."""
    point = _Point(oracle, rho)
    quad = point.solve(point.fourth_op(u, v))
    su = point.solve(point.third_op(u))
    sv = point.solve(point.third_op(v))
    return 0.5 * float(np.trace(quad).real) - 0.5 * float(np.trace(su @ sv).real)


def potential_value(oracle: PotentialOracle, rho: Matrix) -> float:
    value = cum_loss_value(oracle, rho)
    if oracle.mu != 0.0:
        value += oracle.mu * vb_value(oracle, rho)
    return value


def potential_dir_deriv(oracle: PotentialOracle, rho: Matrix, u: Matrix) -> float:
    return _Point(oracle, rho).potential_grad_along(u)


def potential_second_deriv(oracle: PotentialOracle, rho: Matrix, u: Matrix, v: Matrix) -> float:
    total = cum_loss_dir_deriv(oracle, rho, [u, v])
    if oracle.mu != 0.0:
        total += oracle.mu * vb_second_deriv(oracle, rho, u, v)
    return total


def potential_grad_chart(oracle: PotentialOracle, rho: Matrix, chart: RealChart) -> np.ndarray:
    """Gradient of the potential in the traceless chart coordinates.

    One workspace (Hessian factorization, traces, dual norms) is shared across
    all d^2 - 1 basis directions; the result matches independent directional
    derivatives to high accuracy.
    """
    point = _Point(oracle, rho)
    return np.array([point.potential_grad_along(b) for b in chart.basis[1:]])


def potential_value_and_grad_chart(
    oracle: PotentialOracle, rho: Matrix, chart: RealChart
) -> tuple[float, np.ndarray]:
    """Potential value and traceless-chart gradient sharing one workspace."""
    point = _Point(oracle, rho)
    value = oracle.lam * logdet_value(rho)
    if point.traces.size:
        value -= float(np.sum(np.log(point.traces)))
    if oracle.mu != 0.0:
        w = np.linalg.eigvalsh(point.hess)
        if w[0] <= 0.0:
            raise DomainError(f"cumulative Hessian is not PD (min eig {w[0]:.3e})")
        value += oracle.mu * 0.5 * float(np.sum(np.log(w)))
    grad = np.array([point.potential_grad_along(b) for b in chart.basis[1:]])
    return value, grad


def pi_value(oracle: PotentialOracle, rho: Matrix) -> float:
    """Squared H_t^-1 norm of the gradient of the latest loss at rho."""
    if not oracle.observables:
        raise ValueError("pi requires at least one observable")
    point = _Point(oracle, rho)
    return float(point.dual_sq[-1] / point.traces[-1] ** 2)


def last_obs_dual_sq(oracle: PotentialOracle, rho: Matrix) -> float:
    """Squared H_t(rho)^-1 norm of vec(A_t); its gradient drives the
    miss-term diagnostic."""
    if not oracle.observables:
        raise ValueError("requires at least one observable")
    return float(_Point(oracle, rho).dual_sq[-1])


def gain_value(oracle: PotentialOracle, rho: Matrix) -> float:
    """mu (V_{t-1}(rho) - V_t(rho)), the per-round barrier gain."""
    if not oracle.observables:
        raise ValueError("gain requires at least one observable")
    return oracle.mu * (vb_value(oracle.without_last(), rho) - vb_value(oracle, rho))


def mix_with_uniform(rho: Matrix, alpha: float) -> Matrix:
    """(1 - alpha) rho + (alpha / d) I, a strictly interior density matrix."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    return hermitize((1.0 - alpha) * rho + (alpha / d) * np.eye(d))
