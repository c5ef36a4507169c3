"""Seeded random instances: Hermitian matrices, densities, observables.

All draws go through ``numpy.random.Generator`` so every check and test can
report the exact seed that produced an instance.
"""

from __future__ import annotations

import numpy as np

from .hermitian import Matrix, hermitize


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_complex(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng: np.random.Generator, d: int, scale: float = 1.0) -> Matrix:
    return hermitize(scale * random_complex(rng, d, d))


def random_unit_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = random_complex(rng, d)
    return v / np.linalg.norm(v)


def random_psd(rng: np.random.Generator, d: int) -> Matrix:
    g = random_complex(rng, d, d)
    return hermitize(g @ g.conj().T)


def random_density(
    rng: np.random.Generator, d: int, min_eig_floor: float = 0.0
) -> Matrix:
    """Random strictly positive density matrix.

    With ``min_eig_floor`` > 0 the spectrum is pushed away from the boundary
    by mixing with I/d, so instances near the boundary can be generated by
    passing a small floor.
    """
    w = random_psd(rng, d)
    rho = w / float(np.trace(w).real)
    if min_eig_floor > 0.0:
        alpha = min(1.0, min_eig_floor * d)
        rho = (1 - alpha) * rho + alpha * np.eye(d) / d
    return hermitize(rho)


def random_rank_one(rng: np.random.Generator, d: int) -> Matrix:
    v = random_unit_vector(rng, d)
    return hermitize(np.outer(v, v.conj()))


def random_observables(
    rng: np.random.Generator, d: int, t: int, kind: str = "psd"
) -> list[Matrix]:
    if kind == "psd":
        return [random_psd(rng, d) for _ in range(t)]
    if kind == "rank-one":
        return [random_rank_one(rng, d) for _ in range(t)]
    if kind == "diagonal":
        return [np.diag(rng.uniform(0.1, 1.0, size=d)).astype(complex) for _ in range(t)]
    raise ValueError(f"unknown observable kind {kind!r}")
