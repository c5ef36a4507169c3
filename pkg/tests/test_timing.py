"""Per-iteration cost diagnostics.

The design cost model for one ellipsoid iteration at round t is
t d^6 + d^8 (gradient assembly dominates).  At desk scale the Python and
BLAS dispatch overhead of tiny matrices swamps the flop count, so the
strict factor-4 fit is reported but not enforced; the monotone-growth
sanity check is.
"""

import time

import pytest

from llolqs import ellipsoid as ell
from llolqs import potentials as pot
from llolqs import sampling as smp


def _per_iteration_seconds(d: int, t: int) -> float:
    rng = smp.rng_for(100 + d)
    obs = smp.random_observables(rng, d, t)
    oracle = pot.PotentialOracle.build(obs, 300.0, 10.0, dim=d)
    config = ell.SolverConfig(max_iters=60)
    ell.minimize_potential(oracle, config)  # warm caches
    start = time.perf_counter()
    res = ell.minimize_potential(oracle, config)
    return (time.perf_counter() - start) / max(res.iters, 1)


def test_iteration_time_grows_with_dimension():
    t = 3
    times = {d: _per_iteration_seconds(d, t) for d in (2, 3, 4)}
    print({d: f"{s * 1e6:.0f}us" for d, s in times.items()})
    assert times[4] > times[2]


@pytest.mark.xfail(strict=False,
                   reason="interpreter and BLAS dispatch overhead dominates the "
                          "t d^6 + d^8 flop model at desk-scale matrix sizes")
def test_iteration_time_fits_cost_model_within_factor_four():
    t = 3
    coeffs = []
    for d in (2, 3, 4):
        model = t * d**6 + d**8
        coeffs.append(_per_iteration_seconds(d, t) / model)
    print("fitted constants:", coeffs)
    assert max(coeffs) / min(coeffs) < 4.0
