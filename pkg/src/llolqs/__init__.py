"""Online learning of quantum states under log loss: a follow-the-regularized-
leader learner with a volumetric-barrier potential, an ellipsoid solver over
density matrices, adversary simulation, regret measurement, and a numerical
verification suite for the underlying matrix analysis."""

from .hermitian import (
    RealChart, chart_to_herm, eig_herm, herm_to_chart, hermitize, hs_inner,
    is_density, kron, standard_chart, vec, vec_inv,
)
from .potentials import (
    DomainError, PotentialOracle, cum_hess, cum_loss_value, gain_value,
    logdet_dir_deriv, logdet_hess, logdet_third_op, loss_grad_vec, loss_hess,
    loss_value, mix_with_uniform, pi_value, potential_dir_deriv,
    potential_value, vb_dir_deriv, vb_value,
)
from .finitediff import fd_dir_deriv
from .checks import (
    BarrierOracle, DerivOracle, anstreicher_gap, sandwich_check, sc_gap,
    trace_ineq_gap, vbc_gap, vbc_sum_check,
)
from .ellipsoid import (
    Cut, EllipsoidState, SolveResult, SolverConfig, SolverError,
    ellipsoid_step, hindsight_optimum, initial_ellipsoid, minimize_potential,
    separation_oracle,
)
from .game import (
    GameTrace, RealityStrategy, RoundRecord, gen_observable, play_game,
    prefix_regret, regret_sweep, uniform_next, vbftrl_next, ftrl_logdet_next,
)
from .config import ConfigError, RunConfig, load_config, parse_config_text

__version__ = "0.1.0"
