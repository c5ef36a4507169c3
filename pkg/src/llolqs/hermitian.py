"""Dense complex Hermitian linear algebra.

Column-major vectorization, Kronecker products, eigendecomposition, the
Hilbert-Schmidt inner product, and an orthonormal real coordinate chart for
the space of d x d Hermitian matrices.  Everything works on plain complex
``numpy`` arrays; matrices are symmetrized on construction to absorb
floating-point drift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Matrix = np.ndarray

DEFAULT_TOL_PSD = 1e-9
DEFAULT_TOL_TRACE = 1e-9


class DimensionMismatchError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


def hermitize(m: Matrix) -> Matrix:
    """Return the Hermitian part (M + M*) / 2 as a complex array."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return (m + m.conj().T) / 2


def frob_norm(m: Matrix) -> float:
    return float(np.linalg.norm(m))


def vec(m: Matrix) -> np.ndarray:
    """Column-stacking vectorization of a matrix (d x d -> d^2)."""
    return np.asarray(m, dtype=complex).flatten(order="F")


def vec_inv(v: np.ndarray, tol: float = 1e-8) -> Matrix:
    """Invert ``vec``: reshape a length-d^2 vector back to a Hermitian matrix.

    Rejects lengths that are not perfect squares and reshapes whose
    anti-Hermitian part exceeds ``tol`` (relative to the matrix norm).
    The returned matrix is symmetrized.
    """
    v = np.asarray(v, dtype=complex).ravel()
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise DimensionMismatchError(f"length {v.size} is not a perfect square")
    m = v.reshape(d, d, order="F")
    skew = np.linalg.norm(m - m.conj().T)
    if skew > tol * max(1.0, np.linalg.norm(m)):
        raise NotHermitianError(f"reshaped matrix is not Hermitian (defect {skew:.3e})")
    return hermitize(m)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with the standard block structure A[i][j] * B."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def eig_herm(m: Matrix) -> tuple[np.ndarray, Matrix]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary eigenvector matrix U) with
    M = U diag(w) U*.  Non-convergence surfaces as numpy.linalg.LinAlgError.
    """
    w, u = np.linalg.eigh(hermitize(m))
    return w, u


def hs_inner(a: Matrix, b: Matrix) -> float:
    """Hilbert-Schmidt inner product tr(A* B), real part.

    For Hermitian inputs the imaginary part is floating-point noise and is
    discarded.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.vdot(a, b).real)


def min_eig(m: Matrix) -> float:
    return float(np.linalg.eigvalsh(hermitize(m))[0])


def is_density(
    m: Matrix,
    tol_psd: float = DEFAULT_TOL_PSD,
    tol_trace: float = DEFAULT_TOL_TRACE,
) -> bool:
    """True iff the smallest eigenvalue is >= -tol_psd and |tr - 1| <= tol_trace."""
    m = hermitize(m)
    if min_eig(m) < -tol_psd:
        return False
    return abs(float(np.trace(m).real) - 1.0) <= tol_trace


def project_to_density(m: Matrix) -> Matrix:
    """Nearest-in-spirit density matrix: clip eigenvalues at 0, renormalize trace."""
    w, u = eig_herm(m)
    w = np.maximum(w, 0.0)
    s = float(np.sum(w))
    if s <= 0:
        raise ValueError("matrix has no positive spectral mass")
    rho = (u * (w / s)) @ u.conj().T
    return hermitize(rho)


@dataclass(frozen=True)
class RealChart:
    """Orthonormal Hermitian basis realizing the real coordinates of H^d.

    ``basis[0]`` is I/sqrt(d); the remaining d^2 - 1 elements are traceless.
    Coordinates are Hilbert-Schmidt inner products against the basis, so the
    chart is a linear isometry between R^{d^2} and (H^d, <.,.>_HS).
    """

    dim: int
    basis: np.ndarray  # (dim^2, dim, dim) complex

    @property
    def n_traceless(self) -> int:
        return self.dim * self.dim - 1

    def to_coords(self, m: Matrix) -> np.ndarray:
        coords = np.einsum("kij,ji->k", self.basis, np.asarray(m, dtype=complex))
        return coords.real.copy()

    def from_coords(self, x: np.ndarray) -> Matrix:
        x = np.asarray(x, dtype=float)
        return np.einsum("k,kij->ij", x, self.basis)

    def traceless_coords(self, rho: Matrix) -> np.ndarray:
        """Coordinates of rho - I/d in the traceless part of the basis."""
        return self.to_coords(rho)[1:]

    def density_from_traceless(self, x: np.ndarray) -> Matrix:
        """Affine reconstruction I/d + sum_i x[i] basis[1 + i]; trace is 1 exactly."""
        x = np.asarray(x, dtype=float)
        m = np.einsum("k,kij->ij", x, self.basis[1:])
        return m + np.eye(self.dim) / self.dim

    def project_traceless(self, m: Matrix) -> np.ndarray:
        """Traceless-chart coordinates of the projection of a Hermitian matrix."""
        return self.to_coords(m)[1:]


def standard_chart(d: int) -> RealChart:
    """Generalized Gell-Mann basis in a fixed deterministic order.

    Order: I/sqrt(d); diagonal traceless D_k = diag(1,..,1,-k,0,..)/sqrt(k(k+1))
    for k = 1..d-1; then for each pair i < j (lexicographic) the symmetric and
    antisymmetric off-diagonal generators, each normalized to unit HS norm.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    mats: list[np.ndarray] = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for k in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for i in range(k):
            m[i, i] = 1.0
        m[k, k] = -k
        mats.append(m / np.sqrt(k * (k + 1)))
    for i in range(d):
        for j in range(i + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[i, j] = sym[j, i] = 1.0 / np.sqrt(2.0)
            mats.append(sym)
            asym = np.zeros((d, d), dtype=complex)
            asym[i, j] = -1j / np.sqrt(2.0)
            asym[j, i] = 1j / np.sqrt(2.0)
            mats.append(asym)
    return RealChart(dim=d, basis=np.stack(mats))


def chart_to_herm(coords: np.ndarray, chart: RealChart) -> Matrix:
    coords = np.asarray(coords, dtype=float)
    if coords.size != chart.dim * chart.dim:
        raise DimensionMismatchError(
            f"expected {chart.dim * chart.dim} coordinates, got {coords.size}"
        )
    return chart.from_coords(coords)


def herm_to_chart(m: Matrix, chart: RealChart) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (chart.dim, chart.dim):
        raise DimensionMismatchError(f"expected shape {(chart.dim, chart.dim)}, got {m.shape}")
    return chart.to_coords(m)
