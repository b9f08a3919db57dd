"""Exact and Monte Carlo analysis of spatially dependent Parrondo games on a ring.

Two games are played by N players arranged on a circle, one uniformly chosen
player per turn: a fair duel with a random neighbour (redistributes wealth,
collective profit 0) and a coin toss whose bias depends on the two
neighbours' current status bits (collective profit +-1).  Mixing or
alternating the two can turn a losing coin game into a winning compound game
— the spatially dependent Parrondo effect.

Subpackage map: :mod:`.rules` (states, parameters, schedulers, single-turn
moves), :mod:`.exact` (distribution-level kernels, stationary laws, exact
mean profits for small N), :mod:`.generators` (continuum generators on
cylinder functions and the finite-N embedding residuals), :mod:`.ergodicity`
(basic-inequality constants and parameter-volume estimates),
:mod:`.montecarlo` (large-N path simulation), :mod:`.cli` (command-line
front end).
"""

from .rules import (
    Configuration,
    GameParams,
    PeriodicPattern,
    PureGame,
    RandomMixture,
    SchedulerSpec,
    scheduler_label,
)
from .exact import (
    ConvergenceRow,
    NotConverged,
    PairMarginal,
    ProfitResult,
    RingOperator,
    StateDistribution,
    apply_coin_game,
    apply_cycle,
    apply_duel_game,
    apply_mixture,
    coin_game_operator,
    convergence_table,
    cycle_operator,
    duel_game_operator,
    is_irreducible,
    mean_profit,
    mean_profit_mixture,
    mean_profit_periodic,
    mean_profit_pure,
    mixture_operator,
    pair_marginal,
    profit_field,
    reflect_distribution,
    rotate_distribution,
    scheduler_operator,
    stationary,
)
from .ergodicity import (
    ErgodicityReport,
    LocalRateTable,
    VolumeEstimate,
    coin_game_ergodicity,
    influence_sum,
    influence_sum_bruteforce,
    min_rate_sum,
    min_rate_sum_bruteforce,
    mixture_ergodicity,
    volume_estimate,
)
from .generators import (
    CylinderFunction,
    RingFunction,
    coin_generator,
    continuum_generator,
    discrete_generator,
    duel_generator,
    embed_on_ring,
    embedding_residual,
    mixture_generator,
    periodic_residual,
)
from .montecarlo import (
    ScanRecord,
    SimConfig,
    SimResult,
    default_burnin,
    parrondo_scan,
    simulate,
    simulate_periodic,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Configuration",
    "GameParams",
    "RandomMixture",
    "PeriodicPattern",
    "PureGame",
    "SchedulerSpec",
    "scheduler_label",
    "StateDistribution",
    "PairMarginal",
    "ProfitResult",
    "ConvergenceRow",
    "NotConverged",
    "RingOperator",
    "apply_coin_game",
    "apply_duel_game",
    "apply_mixture",
    "apply_cycle",
    "coin_game_operator",
    "duel_game_operator",
    "mixture_operator",
    "cycle_operator",
    "scheduler_operator",
    "is_irreducible",
    "profit_field",
    "stationary",
    "pair_marginal",
    "mean_profit",
    "mean_profit_mixture",
    "mean_profit_periodic",
    "mean_profit_pure",
    "convergence_table",
    "rotate_distribution",
    "reflect_distribution",
    "CylinderFunction",
    "RingFunction",
    "embed_on_ring",
    "duel_generator",
    "coin_generator",
    "mixture_generator",
    "continuum_generator",
    "discrete_generator",
    "embedding_residual",
    "periodic_residual",
    "LocalRateTable",
    "ErgodicityReport",
    "influence_sum",
    "influence_sum_bruteforce",
    "min_rate_sum",
    "min_rate_sum_bruteforce",
    "mixture_ergodicity",
    "coin_game_ergodicity",
    "VolumeEstimate",
    "volume_estimate",
    "SimConfig",
    "SimResult",
    "ScanRecord",
    "default_burnin",
    "simulate",
    "simulate_periodic",
    "parrondo_scan",
]
