"""The T-round game between a learner and an observable-producing adversary.

Each round the learner announces a density matrix, the adversary announces a
PSD observable, and the learner pays the log loss.  The reference learner
plays the minimizer of the running potential; baselines share the same code
path with the barrier weight zeroed out, or play the maximally mixed state.

Randomness is counter-based: round t of a strategy with seed s draws from a
Philox generator keyed by (s, t), with Gaussians produced by an explicit
Box-Muller transform over uniform doubles.  Streams are therefore stable
across platforms and runs, and a strategy cannot observe the learner's play.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .ellipsoid import SolveResult, SolverConfig, SolverError, hindsight_optimum, minimize_potential
from .hermitian import Matrix, hermitize
from . import potentials as pot

DEFAULT_LAMBDA = 300.0
DEFAULT_MU = 10.0

REALITY_KINDS = ("rank-one-random", "psd-random", "diagonal-random", "replay-file")
LEARNERS = ("vbftrl", "ftrl-logdet", "uniform")


class GameAborted(RuntimeError):
    """Solver failure mid-game; carries the partial trace for persistence."""

    def __init__(self, message: str, partial: "GameTrace"):
        super().__init__(message)
        self.partial = partial


# ---------------------------------------------------------------------------
# adversary strategies

@dataclass(frozen=True)
class RealityStrategy:
    kind: str
    seed: int = 0
    diag_lo: float = 0.1
    diag_hi: float = 1.0
    replay: tuple[Matrix, ...] | None = None

    def __post_init__(self):
        if self.kind not in REALITY_KINDS:
            raise ValueError(f"unknown reality kind {self.kind!r}")
        if self.kind == "replay-file" and not self.replay:
            raise ValueError("replay-file strategy requires parsed observables")
        if not 0.0 <= self.diag_lo < self.diag_hi:
            raise ValueError("diagonal range must satisfy 0 <= lo < hi")


def round_rng(seed: int, t: int) -> np.random.Generator:
    """Counter-based generator for round t: Philox keyed by (seed, t)."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(t)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def box_muller(rng: np.random.Generator, n: int) -> np.ndarray:
    """n standard normals from uniform doubles: z = sqrt(-2 ln(1-u1)) cis(2 pi u2)."""
    k = (n + 1) // 2
    u1 = rng.random(k)
    u2 = rng.random(k)
    r = np.sqrt(-2.0 * np.log1p(-u1))
    return np.concatenate([r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)])[:n]


def complex_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    z = box_muller(rng, 2 * n)
    return z[:n] + 1j * z[n:]


def gen_observable(strategy: RealityStrategy, t: int, d: int) -> Matrix:
    """Observable for round t.  Sees only (strategy, t, d), never the learner's play."""
    if t < 1:
        raise ValueError(f"round index must be at least 1, got {t}")
    if strategy.kind == "replay-file":
        if t > len(strategy.replay):
            raise ValueError(f"replay has only {len(strategy.replay)} records, round {t} requested")
        a = strategy.replay[t - 1]
        if a.shape != (d, d):
            raise ValueError(f"replay record {t} has shape {a.shape}, expected {(d, d)}")
        return a
    rng = round_rng(strategy.seed, t)
    if strategy.kind == "rank-one-random":
        v = complex_gaussian(rng, d)
        v /= np.linalg.norm(v)
        return hermitize(np.outer(v, v.conj()))
    if strategy.kind == "psd-random":
        g = complex_gaussian(rng, d * d).reshape(d, d)
        w = hermitize(g @ g.conj().T)
        return w / float(np.trace(w).real)
    if strategy.kind == "diagonal-random":
        entries = strategy.diag_lo + (strategy.diag_hi - strategy.diag_lo) * rng.random(d)
        return np.diag(entries).astype(complex)
    raise ValueError(f"unknown reality kind {strategy.kind!r}")


# ---------------------------------------------------------------------------
# learners

def vbftrl_next(
    history: list[Matrix],
    d: int,
    lam: float = DEFAULT_LAMBDA,
    mu: float = DEFAULT_MU,
    solver_config: SolverConfig | None = None,
) -> SolveResult:
    """Minimizer of the running potential built from the observed history."""
    oracle = pot.PotentialOracle.build(history, lam, mu, dim=d)
    return minimize_potential(oracle, solver_config)


def ftrl_logdet_next(
    history: list[Matrix],
    d: int,
    lam: float = DEFAULT_LAMBDA,
    solver_config: SolverConfig | None = None,
) -> SolveResult:
    """Regularized leader without the barrier term (mu = 0 ablation)."""
    return vbftrl_next(history, d, lam, 0.0, solver_config)


def uniform_next(d: int) -> Matrix:
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return np.eye(d, dtype=complex) / d


def _next_play(
    learner: str,
    history: list[Matrix],
    d: int,
    lam: float,
    mu: float,
    solver_config: SolverConfig | None,
) -> tuple[Matrix, int, float]:
    start = time.perf_counter()
    if learner == "vbftrl":
        res = vbftrl_next(history, d, lam, mu, solver_config)
        rho, iters = res.rho, res.iters
    elif learner == "ftrl-logdet":
        res = ftrl_logdet_next(history, d, lam, solver_config)
        rho, iters = res.rho, res.iters
    elif learner == "uniform":
        rho, iters = uniform_next(d), 0
    else:
        raise ValueError(f"unknown learner {learner!r}")
    return rho, iters, time.perf_counter() - start


# ---------------------------------------------------------------------------
# traces

@dataclass
class RoundRecord:
    t: int
    rho: Matrix
    observable: Matrix
    loss: float
    pi: float
    gain: float
    miss: float = float("nan")
    solve_iters: int = 0
    solve_seconds: float = 0.0


@dataclass
class GameTrace:
    d: int
    T: int
    lam: float
    mu: float
    seed: int
    learner: str
    reality: str
    rounds: list[RoundRecord] = field(default_factory=list)
    hindsight_value: float = float("nan")
    regret: float = float("nan")

    @property
    def observables(self) -> list[Matrix]:
        return [r.observable for r in self.rounds]

    @property
    def total_loss(self) -> float:
        return float(sum(r.loss for r in self.rounds))


def play_game(
    d: int,
    T: int,
    reality: RealityStrategy,
    learner: str = "vbftrl",
    lam: float = DEFAULT_LAMBDA,
    mu: float = DEFAULT_MU,
    solver_config: SolverConfig | None = None,
) -> GameTrace:
    """Run the full protocol: play, observe, pay, and certify each round.

    The miss term of round t needs the round-(t+1) play, so the final round
    triggers one extra terminal solve.  Solver failures raise
    :class:`GameAborted` carrying the partial trace.
    """
    if T < 1:
        raise ValueError(f"T must be at least 1, got {T}")
    trace = GameTrace(d=d, T=T, lam=lam, mu=mu, seed=reality.seed,
                      learner=learner, reality=reality.kind)
    history: list[Matrix] = []
    prev_oracle: pot.PotentialOracle | None = None
    for t in range(1, T + 1):
        try:
            rho, iters, seconds = _next_play(learner, history, d, lam, mu, solver_config)
        except SolverError as exc:
            _finish(trace, solver_config)
            raise GameAborted(f"solver failed at round {t}: {exc}", trace) from None
        a = gen_observable(reality, t, d)
        history.append(a)
        oracle = pot.PotentialOracle.build(history, lam, mu, dim=d)
        loss = pot.loss_value(a, rho)
        pi = pot.pi_value(oracle, rho)
        gain = pot.gain_value(oracle, rho)
        if prev_oracle is not None:
            # previous round's miss: P_{t-1}(rho_{t-1}) - P_{t-1}(rho_t)
            prev = trace.rounds[-1]
            prev.miss = pot.potential_value(prev_oracle, prev.rho) - pot.potential_value(prev_oracle, rho)
        trace.rounds.append(RoundRecord(t=t, rho=rho, observable=a, loss=loss, pi=pi,
                                        gain=gain, solve_iters=iters, solve_seconds=seconds))
        prev_oracle = oracle
    try:
        rho_next, _, _ = _next_play(learner, history, d, lam, mu, solver_config)
        last = trace.rounds[-1]
        last.miss = pot.potential_value(prev_oracle, last.rho) - pot.potential_value(prev_oracle, rho_next)
    except SolverError as exc:
        _finish(trace, solver_config)
        raise GameAborted(f"terminal solve failed: {exc}", trace) from None
    _finish(trace, solver_config)
    return trace


def _finish(trace: GameTrace, solver_config: SolverConfig | None) -> None:
    if not trace.rounds:
        return
    try:
        _, value = hindsight_optimum(trace.observables, trace.d, solver_config)
    except SolverError:
        return
    trace.hindsight_value = value
    trace.regret = trace.total_loss - value


def prefix_regret(trace: GameTrace, T_prefix: int, solver_config: SolverConfig | None = None) -> float:
    """Regret of the first ``T_prefix`` rounds of a finished game.

    Valid because the learner is online: its round-t play depends only on
    rounds before t, so a length-T game contains every shorter game with the
    same seed as a prefix.
    """
    if not 1 <= T_prefix <= len(trace.rounds):
        raise ValueError(f"prefix length {T_prefix} out of range")
    _, value = hindsight_optimum(trace.observables[:T_prefix], trace.d, solver_config)
    partial_loss = float(sum(r.loss for r in trace.rounds[:T_prefix]))
    return partial_loss - value


# ---------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepCell:
    d: int
    T: int
    seed: int
    learner: str
    reality: str
    regret: float
    ratio: float  # regret / (d^2 log(d + T))
    wall_seconds: float


def regret_ratio(regret: float, d: int, T: int) -> float:
    return regret / (d * d * np.log(d + T))


def run_sweep_cell(
    d: int,
    T: int,
    seed: int,
    learner: str,
    reality_kind: str,
    lam: float = DEFAULT_LAMBDA,
    mu: float = DEFAULT_MU,
    solver_config: SolverConfig | None = None,
    diag_lo: float = 0.1,
    diag_hi: float = 1.0,
) -> SweepCell:
    strategy = RealityStrategy(kind=reality_kind, seed=seed, diag_lo=diag_lo, diag_hi=diag_hi)
    start = time.perf_counter()
    trace = play_game(d, T, strategy, learner, lam, mu, solver_config)
    wall = time.perf_counter() - start
    return SweepCell(d=d, T=T, seed=seed, learner=learner, reality=reality_kind,
                     regret=trace.regret, ratio=regret_ratio(trace.regret, d, T),
                     wall_seconds=wall)


def regret_sweep(
    d_list: list[int],
    T_list: list[int],
    reality_kinds: list[str],
    seeds: list[int],
    learners: list[str] | None = None,
    lam: float = DEFAULT_LAMBDA,
    mu: float = DEFAULT_MU,
    solver_config: SolverConfig | None = None,
) -> list[SweepCell]:
    if not d_list or not T_list or not reality_kinds or not seeds:
        raise ValueError("sweep grids must be nonempty")
    learners = learners or ["vbftrl"]
    cells = []
    for d in d_list:
        for T in T_list:
            for kind in reality_kinds:
                for seed in seeds:
                    for learner in learners:
                        cells.append(run_sweep_cell(d, T, seed, learner, kind,
                                                    lam, mu, solver_config))
    return cells
