"""Property checkers for the structural facts behind the learner.

Each checker returns a signed gap whose nonnegativity (within a tolerance
scaled to the magnitudes involved) is the property being verified:

* ``vbc_gap``       fourth-order convexity condition that makes the
                    volumetric barrier of a function convex,
* ``sc_gap``        self-concordance of a function at a point,
* ``sandwich_check`` two-sided bound on the Hessian of the volumetric
                    barrier through the trace form Q,
* ``trace_ineq_gap`` / ``anstreicher_gap``  the auxiliary matrix
                    inequalities the proofs lean on.

Checkers are oracle-agnostic: they consume a :class:`DerivOracle`, which can
be analytic or finite-difference backed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .finitediff import fd_dir_deriv
from .hermitian import Matrix, hermitize
from . import potentials as pot


@dataclass(frozen=True)
class DerivOracle:
    """Scalar function with directional derivatives of orders 1 to 4.

    ``dir_deriv(x, dirs)`` must be symmetric in ``dirs`` (it realizes a
    symmetric multilinear form).
    """

    value: Callable[[Matrix], float]
    dir_deriv: Callable[[Matrix, Sequence[Matrix]], float]

    def scaled(self, alpha: float) -> "DerivOracle":
        return DerivOracle(
            value=lambda x: alpha * self.value(x),
            dir_deriv=lambda x, dirs: alpha * self.dir_deriv(x, dirs),
        )

    @staticmethod
    def add(a: "DerivOracle", b: "DerivOracle") -> "DerivOracle":
        return DerivOracle(
            value=lambda x: a.value(x) + b.value(x),
            dir_deriv=lambda x, dirs: a.dir_deriv(x, dirs) + b.dir_deriv(x, dirs),
        )


def logdet_oracle() -> DerivOracle:
    """Analytic oracle for the regularizer -log det."""
    return DerivOracle(value=pot.logdet_value,
                       dir_deriv=lambda x, dirs: pot.logdet_dir_deriv(x, dirs))


def loss_oracle(a: Matrix) -> DerivOracle:
    """Analytic oracle for the log loss of a fixed observable."""
    return DerivOracle(value=lambda x: pot.loss_value(a, x),
                       dir_deriv=lambda x, dirs: pot.loss_dir_deriv(a, x, dirs))


def cum_loss_oracle(oracle: pot.PotentialOracle) -> DerivOracle:
    """Analytic oracle for the regularized cumulative loss L_t."""
    return DerivOracle(value=lambda x: pot.cum_loss_value(oracle, x),
                       dir_deriv=lambda x, dirs: pot.cum_loss_dir_deriv(oracle, x, dirs))


def fd_oracle(value: Callable[[Matrix], float]) -> DerivOracle:
    """Finite-difference backed oracle around any scalar function."""
    return DerivOracle(value=value,
                       dir_deriv=lambda x, dirs: fd_dir_deriv(value, x, dirs))


# ---------------------------------------------------------------------------
# fourth-order convexity of the volumetric barrier's parent function

def vbc_gap(oracle: DerivOracle, x: Matrix, u: Matrix, v: Matrix) -> float:
    """D^4[u,u,v,v] D^2[v,v] - (3/2) (D^3[u,v,v])^2; nonnegative iff the
    condition holds at (x, u, v)."""
    d4 = oracle.dir_deriv(x, [u, u, v, v])
    d2 = oracle.dir_deriv(x, [v, v])
    d3 = oracle.dir_deriv(x, [u, v, v])
    return d4 * d2 - 1.5 * d3 * d3


def vbc_gap_scale(oracle: DerivOracle, x: Matrix, u: Matrix, v: Matrix) -> float:
    """Magnitude of the terms compared in ``vbc_gap``, for relative tolerances."""
    d4 = oracle.dir_deriv(x, [u, u, v, v])
    d2 = oracle.dir_deriv(x, [v, v])
    d3 = oracle.dir_deriv(x, [u, v, v])
    return abs(d4 * d2) + 1.5 * d3 * d3


def vbc_sum_check(
    oracle1: DerivOracle,
    oracle2: DerivOracle,
    alpha: float,
    beta: float,
    x: Matrix,
    u: Matrix,
    v: Matrix,
) -> float:
    """Gap of the positive combination alpha f1 + beta f2 (closure under addition)."""
    if alpha <= 0.0 or beta <= 0.0:
        raise ValueError("combination weights must be positive")
    combined = DerivOracle.add(oracle1.scaled(alpha), oracle2.scaled(beta))
    return vbc_gap(combined, x, u, v)


# ---------------------------------------------------------------------------
# self-concordance

def sc_gap(oracle: DerivOracle, x: Matrix, u: Matrix, m_f: float = 1.0) -> float:
    """2 M (D^2[u,u])^{3/2} - |D^3[u,u,u]|; nonnegative iff M-self-concordant
    at (x, u)."""
    d2 = oracle.dir_deriv(x, [u, u])
    if d2 < 0.0:
        raise ValueError(f"second derivative is negative ({d2:.3e}); not convex here")
    d3 = oracle.dir_deriv(x, [u, u, u])
    return 2.0 * m_f * d2**1.5 - abs(d3)


def sc_gap_scale(oracle: DerivOracle, x: Matrix, u: Matrix, m_f: float = 1.0) -> float:
    d2 = max(oracle.dir_deriv(x, [u, u]), 0.0)
    d3 = oracle.dir_deriv(x, [u, u, u])
    return 2.0 * m_f * d2**1.5 + abs(d3)


# ---------------------------------------------------------------------------
# two-sided Hessian bound for the volumetric barrier

@dataclass(frozen=True)
class BarrierOracle:
    """Matrix-level interface needed by the sandwich check.

    ``hess(x)`` is the Hessian of the parent function in the vectorized
    representation; ``fourth_op(x, u)`` is its fourth derivative with two
    slots fixed at u, as an operator on the same space.
    """

    hess: Callable[[Matrix], Matrix]
    fourth_op: Callable[[Matrix, Matrix], Matrix]

    def vb_value(self, x: Matrix) -> float:
        w = np.linalg.eigvalsh(hermitize(self.hess(x)))
        if w[0] <= 0.0:
            raise pot.DomainError(f"Hessian is not PD (min eig {w[0]:.3e})")
        return 0.5 * float(np.sum(np.log(w)))


def cum_loss_barrier(oracle: pot.PotentialOracle) -> BarrierOracle:
    return BarrierOracle(
        hess=lambda x: pot.cum_hess(oracle, x),
        fourth_op=lambda x, u: pot.cum_fourth_op(oracle, x, u, u),
    )


def logdet_barrier(lam: float = 1.0) -> BarrierOracle:
    return BarrierOracle(
        hess=lambda x: lam * pot.logdet_hess(x),
        fourth_op=lambda x, u: lam * pot.logdet_fourth_op(x, u, u),
    )


def sandwich_check(oracle: BarrierOracle, x: Matrix, u: Matrix) -> tuple[float, float, float]:
    """Return (lower, mid, upper) with lower = <u,Qu>/3, upper = <u,Qu>,
    mid = the finite-difference second derivative of the volumetric barrier.

    <u,Qu> = (1/2) tr(H^-1 D^4[u,u]); the contract is lower <= mid <= upper
    up to finite-difference slack.
    """
    h = hermitize(oracle.hess(x))
    try:
        cho = scipy.linalg.cho_factor(h, lower=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise pot.DomainError("Hessian is not positive definite") from exc
    quad = 0.5 * float(np.trace(scipy.linalg.cho_solve(cho, oracle.fourth_op(x, u))).real)
    mid = fd_dir_deriv(oracle.vb_value, x, [u, u])
    return quad / 3.0, mid, quad


# ---------------------------------------------------------------------------
# auxiliary matrix inequalities

def trace_ineq_gap(a: Matrix, b: Matrix, c: Matrix) -> float:
    """tr(A B^-1) - tr(B^-1 C B^-1 C); nonnegative under the quadratic-form
    hypothesis <v,Av><v,Bv> >= <v,Cv>^2 (check it with
    ``sample_trace_ineq_hypothesis`` first)."""
    b_inv = np.linalg.inv(hermitize(b))
    t1 = float(np.trace(a @ b_inv).real)
    t2 = float(np.trace(b_inv @ c @ b_inv @ c).real)
    return t1 - t2


def sample_trace_ineq_hypothesis(
    a: Matrix, b: Matrix, c: Matrix, rng: np.random.Generator, samples: int = 200
) -> bool:
    """Sample random unit vectors to certify <v,Av><v,Bv> >= <v,Cv>^2.

    Sampling cannot prove the premise; a False return means "hypothesis
    unverified", not a failure of the inequality.
    """
    d = a.shape[0]
    for _ in range(samples):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v /= np.linalg.norm(v)
        qa = float(np.vdot(v, a @ v).real)
        qb = float(np.vdot(v, b @ v).real)
        qc = float(np.vdot(v, c @ v).real)
        if qa * qb < qc * qc - 1e-10 * (abs(qa * qb) + qc * qc):
            return False
    return True


def anstreicher_gap(a: Matrix, b: Matrix) -> float:
    """tr(A^2 B^2) - tr(ABAB); nonnegative for Hermitian A, B."""
    a = hermitize(a)
    b = hermitize(b)
    t1 = float(np.trace(a @ a @ b @ b).real)
    t2 = float(np.trace(a @ b @ a @ b).real)
    return t1 - t2


def anstreicher_scale(a: Matrix, b: Matrix) -> float:
    a = hermitize(a)
    b = hermitize(b)
    return abs(float(np.trace(a @ a @ b @ b).real)) + abs(float(np.trace(a @ b @ a @ b).real))
