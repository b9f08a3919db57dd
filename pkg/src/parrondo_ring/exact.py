"""Exact finite-n engine: transition operators, stationary laws, mean profits.

The state space is all ``2**n`` configurations, bit-packed: bit ``x`` of a
state index is player ``x``'s status.  Distributions are dense float64
vectors indexed the same way.  Operators act matrix-free, scattering mass
over the at most ``3n + 1`` successors of each state; nothing here builds a
``2**n x 2**n`` matrix (the test suite keeps its own small dense oracle for
cross-checks).

Memory: one distribution vector at the hard cap ``n = 24`` is 128 MiB and an
operator application allocates a handful of scratch vectors of the same
size, so the cap is about 1 GiB of traffic; ``n <= 16`` stays below a few
MiB.  The cap is enforced, not advisory.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .rules import (
    Configuration,
    GameParams,
    PeriodicPattern,
    PureGame,
    RandomMixture,
    SchedulerSpec,
    scheduler_label,
)

__all__ = [
    "STATE_CAP",
    "StateDistribution",
    "PairMarginal",
    "RingOperator",
    "NotConverged",
    "ProfitResult",
    "ConvergenceRow",
    "coin_game_operator",
    "duel_game_operator",
    "mixture_operator",
    "cycle_operator",
    "scheduler_operator",
    "apply_coin_game",
    "apply_duel_game",
    "apply_mixture",
    "apply_cycle",
    "stationary",
    "is_irreducible",
    "profit_field",
    "pair_marginal",
    "mean_profit",
    "mean_profit_mixture",
    "mean_profit_periodic",
    "mean_profit_pure",
    "convergence_table",
    "rotate_distribution",
    "reflect_distribution",
]

STATE_CAP = 24  # 2**24 states; one float64 vector per 16.7M states = 128 MiB

_DUEL_FORM_TOL = 1e-13  # the 4-event and 2-event kernels agree up to summation order
_CODE_CACHE_MAX_N = 16


def _check_n(n: int) -> None:
    if n < 3:
        raise ValueError(f"need at least 3 players, got n={n}")
    if n > STATE_CAP:
        raise ValueError(
            f"n={n} exceeds the exact-engine cap of {STATE_CAP} "
            f"(2**{n} states would need {8 * 2 ** n / 2 ** 20:.0f} MiB per vector)"
        )


def _xor_permuted(v: np.ndarray, x: int) -> np.ndarray:
    """Permute a state-indexed vector by XOR with bit ``x`` (flip at site x)."""
    half = 1 << x
    return v.reshape(-1, 2, half)[:, ::-1, :].reshape(v.shape[0])


@lru_cache(maxsize=3)
def _coin_codes_cached(n: int) -> tuple[np.ndarray, ...]:
    states = np.arange(1 << n, dtype=np.int64)
    out = []
    for x in range(n):
        m = 2 * ((states >> ((x - 1) % n)) & 1) + ((states >> ((x + 1) % n)) & 1)
        out.append((m + 4 * ((states >> x) & 1)).astype(np.uint8))
    return tuple(out)


def _coin_code_arrays(n: int) -> Iterable[np.ndarray]:
    """Per-site code arrays ``m_x + 4*eta(x)`` (values 0..7), one per site.

    Cached up to n=16; streamed one site at a time above that to keep memory
    proportional to a single vector.
    """
    if n <= _CODE_CACHE_MAX_N:
        return _coin_codes_cached(n)

    def gen() -> Iterator[np.ndarray]:
        states = np.arange(1 << n, dtype=np.int64)
        for x in range(n):
            m = 2 * ((states >> ((x - 1) % n)) & 1) + ((states >> ((x + 1) % n)) & 1)
            yield (m + 4 * ((states >> x) & 1)).astype(np.uint8)

    return gen()


@lru_cache(maxsize=3)
def _duel_targets_cached(n: int) -> tuple[np.ndarray, ...]:
    states = np.arange(1 << n, dtype=np.int64)
    out = []
    for x in range(n):
        left, right = (x - 1) % n, (x + 1) % n
        # chosen player x loses to the left neighbour: pair (x-1, x) -> (1, 0)
        out.append((states | (1 << left)) & ~np.int64(1 << x))
        # chosen player x loses to the right neighbour: pair (x, x+1) -> (0, 1)
        out.append((states & ~np.int64(1 << x)) | (1 << right))
    return tuple(out)


def _duel_target_arrays(n: int) -> Iterable[np.ndarray]:
    if n <= _CODE_CACHE_MAX_N:
        return _duel_targets_cached(n)

    def gen() -> Iterator[np.ndarray]:
        states = np.arange(1 << n, dtype=np.int64)
        for x in range(n):
            left, right = (x - 1) % n, (x + 1) % n
            yield (states | (1 << left)) & ~np.int64(1 << x)
            yield (states & ~np.int64(1 << x)) | (1 << right)

    return gen()


def _win_table(params: GameParams) -> np.ndarray:
    """Flip rates indexed by code ``m + 4*eta(x)``: p_m for a loser, q_m for a winner."""
    p = params.as_tuple()
    return np.array(p + tuple(1.0 - v for v in p))


# -- raw vector kernels -------------------------------------------------------


def _coin_dist_raw(n: int, table: np.ndarray, w: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(w)
    stay = np.full(w.shape[0], float(n))
    for x, code in enumerate(_coin_code_arrays(n)):
        c = table[code]
        stay -= c
        acc += _xor_permuted(w * c, x)
    # stay = n - sum_x c_x >= 0 up to rounding; clamp to keep outputs nonnegative
    return (acc + w * np.maximum(stay, 0.0)) / n


def _coin_fn_raw(n: int, table: np.ndarray, g: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(g)
    stay = np.full(g.shape[0], float(n))
    for x, code in enumerate(_coin_code_arrays(n)):
        c = table[code]
        stay -= c
        acc += c * _xor_permuted(g, x)
    return (acc + g * np.maximum(stay, 0.0)) / n


def _duel_dist_raw(n: int, w: np.ndarray) -> np.ndarray:
    size = w.shape[0]
    acc = np.zeros(size)
    for t in _duel_target_arrays(n):
        acc += np.bincount(t, weights=w, minlength=size)
    return acc / (2 * n)


def _duel_fn_raw(n: int, g: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(g)
    for t in _duel_target_arrays(n):
        acc += g[t]
    return acc / (2 * n)


def _duel_dist_raw_events(n: int, w: np.ndarray) -> np.ndarray:
    """Duel kernel built from the four explicit events per chosen player
    (duel left/right, win/lose), each with probability 1/(4n).  Used only to
    cross-check the collapsed two-event form."""
    size = w.shape[0]
    states = np.arange(size, dtype=np.int64)
    acc = np.zeros(size)
    for x in range(n):
        left, right = (x - 1) % n, (x + 1) % n
        for partner in (left, right):
            for winner, loser in ((x, partner), (partner, x)):
                t = (states | (1 << winner)) & ~np.int64(1 << loser)
                acc += np.bincount(t, weights=w, minlength=size)
    return acc / (4 * n)


# -- distributions ------------------------------------------------------------


@dataclass(frozen=True)
class StateDistribution:
    """Probability vector over all ``2**n`` bit-packed configurations."""

    n: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        _check_n(self.n)
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (1 << self.n,):
            raise ValueError(f"weights shape {w.shape} != (2**{self.n},)")
        if w.min() < 0.0:
            raise ValueError(f"negative weight {w.min()!r}")
        total = float(w.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, expected 1 within 1e-12")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, n: int) -> "StateDistribution":
        return cls(n, np.full(1 << n, 2.0 ** -n))

    @classmethod
    def point_mass(cls, n: int, state: "int | Configuration") -> "StateDistribution":
        code = state.to_int() if isinstance(state, Configuration) else int(state)
        w = np.zeros(1 << n)
        w[code] = 1.0
        return cls(n, w)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "StateDistribution":
        w = np.asarray(weights, dtype=np.float64)
        n = int(w.shape[0]).bit_length() - 1
        return cls(n, w)


@dataclass(frozen=True)
class PairMarginal:
    """Joint law of two status bits; ``probs[k, l] = P(eta(i) = k, eta(j) = l)``."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        q = np.asarray(self.probs, dtype=np.float64)
        if q.shape != (2, 2):
            raise ValueError(f"expected a 2x2 table, got shape {q.shape}")
        if q.min() < 0.0:
            raise ValueError(f"negative probability {q.min()!r}")
        if abs(float(q.sum()) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {float(q.sum())!r}")
        q = q.copy()
        q.setflags(write=False)
        object.__setattr__(self, "probs", q)

    def prob(self, k: int, l: int) -> float:
        return float(self.probs[k, l])

    def as_flat(self) -> tuple[float, float, float, float]:
        """Probabilities in code order (0,0), (0,1), (1,0), (1,1)."""
        return tuple(float(v) for v in self.probs.reshape(-1))


def _pair_marginal_raw(w: np.ndarray, n: int, i: int, j: int) -> np.ndarray:
    states = np.arange(w.shape[0], dtype=np.int64)
    bi = (states >> i) & 1
    bj = (states >> j) & 1
    out = np.zeros((2, 2))
    for k in (0, 1):
        for l in (0, 1):
            out[k, l] = float(w[(bi == k) & (bj == l)].sum())
    return out


def pair_marginal(dist: StateDistribution, i: int, j: int) -> PairMarginal:
    """Joint law of ``(eta(i), eta(j))`` under ``dist`` (distinct sites)."""
    for site in (i, j):
        if not 0 <= site < dist.n:
            raise IndexError(f"site {site} out of range for n={dist.n}")
    if i == j:
        raise ValueError("pair marginal needs two distinct sites")
    return PairMarginal(_pair_marginal_raw(dist.weights, dist.n, i, j))


# -- operators ----------------------------------------------------------------


@dataclass(frozen=True)
class RingOperator:
    """One Markov step on the ``2**n`` state space.

    ``apply_dist`` is the left action on row distributions (one step of the
    chain); ``apply_fn`` is the right action on observables (conditional
    expectation after one step).  Calling the operator applies ``apply_dist``.
    """

    n: int
    label: str
    apply_dist: Callable[[np.ndarray], np.ndarray]
    apply_fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, w: np.ndarray) -> np.ndarray:
        return self.apply_dist(w)


def coin_game_operator(n: int, params: GameParams) -> RingOperator:
    _check_n(n)
    table = _win_table(params)
    return RingOperator(
        n,
        "pure-coin",
        lambda w: _coin_dist_raw(n, table, w),
        lambda g: _coin_fn_raw(n, table, g),
    )


def duel_game_operator(n: int) -> RingOperator:
    _check_n(n)
    return RingOperator(
        n,
        "pure-duel",
        lambda w: _duel_dist_raw(n, w),
        lambda g: _duel_fn_raw(n, g),
    )


def mixture_operator(n: int, gamma: float, params: GameParams) -> RingOperator:
    _check_n(n)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma={gamma} must lie strictly inside (0, 1)")
    table = _win_table(params)

    def apply_dist(w: np.ndarray) -> np.ndarray:
        return gamma * _duel_dist_raw(n, w) + (1.0 - gamma) * _coin_dist_raw(n, table, w)

    def apply_fn(g: np.ndarray) -> np.ndarray:
        return gamma * _duel_fn_raw(n, g) + (1.0 - gamma) * _coin_fn_raw(n, table, g)

    return RingOperator(n, f"mixture({gamma:g})", apply_dist, apply_fn)


def cycle_operator(n: int, r: int, s: int, params: GameParams) -> RingOperator:
    """The full-period kernel of the periodic pattern: r duel steps then s
    coin steps (as seen by distributions)."""
    _check_n(n)
    if r < 1 or s < 1:
        raise ValueError(f"pattern lengths must be >= 1, got r={r}, s={s}")
    table = _win_table(params)

    def apply_dist(w: np.ndarray) -> np.ndarray:
        for _ in range(r):
            w = _duel_dist_raw(n, w)
        for _ in range(s):
            w = _coin_dist_raw(n, table, w)
        return w

    def apply_fn(g: np.ndarray) -> np.ndarray:
        # right action composes in the reverse order
        for _ in range(s):
            g = _coin_fn_raw(n, table, g)
        for _ in range(r):
            g = _duel_fn_raw(n, g)
        return g

    return RingOperator(n, f"periodic({r},{s})", apply_dist, apply_fn)


def scheduler_operator(n: int, sched: SchedulerSpec, params: GameParams) -> RingOperator:
    if isinstance(sched, RandomMixture):
        return mixture_operator(n, sched.gamma, params)
    if isinstance(sched, PeriodicPattern):
        return cycle_operator(n, sched.r, sched.s, params)
    if isinstance(sched, PureGame):
        return duel_game_operator(n) if sched.game == "duel" else coin_game_operator(n, params)
    raise TypeError(f"not a scheduler: {sched!r}")


# -- public one-step applications ---------------------------------------------


def apply_coin_game(params: GameParams, dist: StateDistribution) -> StateDistribution:
    """One coin-game step: ``dist`` times the kernel with off-diagonal entries
    ``c(x, eta)/n`` and the complementary mass on the diagonal."""
    table = _win_table(params)
    return StateDistribution(dist.n, _coin_dist_raw(dist.n, table, dist.weights))


def apply_duel_game(dist: StateDistribution) -> StateDistribution:
    """One duel-game step.

    The kernel is computed both from the four explicit duel events per
    chosen player and from the collapsed two-event form (player loses to the
    left / to the right); the two constructions are algebraically identical
    term by term, and this function verifies they agree to within float
    summation-order noise (1e-13) on every call before returning the
    two-event result.
    """
    w2 = _duel_dist_raw(dist.n, dist.weights)
    w4 = _duel_dist_raw_events(dist.n, dist.weights)
    worst = float(np.abs(w2 - w4).max())
    if worst > _DUEL_FORM_TOL:
        raise RuntimeError(f"duel kernel forms disagree by {worst!r}")
    return StateDistribution(dist.n, w2)


def apply_mixture(gamma: float, params: GameParams, dist: StateDistribution) -> StateDistribution:
    """One step of the gamma-mixture: duel with probability gamma, else coin."""
    op = mixture_operator(dist.n, gamma, params)
    return StateDistribution(dist.n, op.apply_dist(dist.weights))


def apply_cycle(r: int, s: int, params: GameParams, dist: StateDistribution) -> StateDistribution:
    """Apply the duel kernel ``r`` times, then the coin kernel ``s`` times."""
    op = cycle_operator(dist.n, r, s, params)
    return StateDistribution(dist.n, op.apply_dist(dist.weights))


# -- stationary solver --------------------------------------------------------


class NotConverged(RuntimeError):
    """Power iteration did not reach the residual tolerance.

    Usually a sign that the chain is reducible or periodic for the supplied
    parameters (degenerate coin probabilities); consider an irreducibility
    check before retrying with a larger budget.
    """

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no stationary distribution within {iterations} iterations "
            f"(last L1 residual {residual:.3e})"
        )


def _power_iteration(
    apply_dist: Callable[[np.ndarray], np.ndarray],
    size: int,
    tol: float,
    max_iters: int,
    start: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, float, int, bool]:
    """Iterate ``w -> wP`` until ``||wP - w||_1 <= tol``.

    Returns ``(w, residual, iterations, damped)`` where ``w`` is the iterate
    whose measured residual passed the test.  If the residual stalls (as it
    does for kernels with eigenvalues near -1), the iteration switches to the
    half-lazy step ``w -> (w + wP)/2``, which has the same fixed points.
    """
    w = np.full(size, 1.0 / size) if start is None else start / start.sum()
    best, stall, damped = np.inf, 0, False
    res = np.inf
    for it in range(1, max_iters + 1):
        nxt = apply_dist(w)
        res = float(np.abs(nxt - w).sum())
        if res <= tol:
            return w, res, it, damped
        if damped:
            nxt = 0.5 * (w + nxt)
        nxt /= nxt.sum()
        w = nxt
        if res < 0.999 * best:
            best, stall = res, 0
        else:
            stall += 1
            if stall >= 200 and not damped:
                damped, stall, best = True, 0, np.inf
    raise NotConverged(max_iters, res)


def stationary(
    step: Union[RingOperator, Callable[[np.ndarray], np.ndarray]],
    n: Optional[int] = None,
    tol: float = 1e-13,
    max_iters: int = 10 ** 6,
    start: Optional[StateDistribution] = None,
) -> StateDistribution:
    """Stationary distribution of a stochastic step operator.

    Power iteration from the uniform distribution (or ``start``), stopping
    when the total-variation residual ``||pi P - pi||_1`` drops to ``tol``.
    Deterministic given its inputs.  Raises :class:`NotConverged` after
    ``max_iters`` steps, which usually signals a reducible or periodic chain.

    ``step`` is a :class:`RingOperator` (``n`` optional) or any map of raw
    weight vectors (``n`` required).
    """
    if isinstance(step, RingOperator):
        apply_dist = step.apply_dist
        n_val = step.n if n is None else n
    else:
        if n is None:
            raise ValueError("n is required when step is a bare callable")
        apply_dist, n_val = step, n
    w0 = None if start is None else np.array(start.weights)
    w, _, _, _ = _power_iteration(apply_dist, 1 << n_val, tol, max_iters, w0)
    return StateDistribution(n_val, w / w.sum())


# -- irreducibility -----------------------------------------------------------


def _one_step_pattern(n: int, sched: SchedulerSpec, params: GameParams) -> sp.csr_matrix:
    size = 1 << n
    states = np.arange(size, dtype=np.int64)

    def coin_pattern() -> sp.csr_matrix:
        table = _win_table(params)
        rows, cols = [], []
        stay = np.full(size, float(n))
        for x, code in enumerate(_coin_code_arrays(n)):
            c = table[code]
            stay -= c
            hit = c > 0.0
            rows.append(states[hit])
            cols.append(states[hit] ^ (1 << x))
        keep = stay > 0.0
        rows.append(states[keep])
        cols.append(states[keep])
        data = np.ones(sum(len(r) for r in rows), dtype=bool)
        return sp.csr_matrix((data, (np.concatenate(rows), np.concatenate(cols))), shape=(size, size))

    def duel_pattern() -> sp.csr_matrix:
        rows, cols = [], []
        for t in _duel_target_arrays(n):
            rows.append(states)
            cols.append(t)
        data = np.ones(2 * n * size, dtype=bool)
        return sp.csr_matrix((data, (np.concatenate(rows), np.concatenate(cols))), shape=(size, size))

    if isinstance(sched, RandomMixture):
        return ((coin_pattern() + duel_pattern()) > 0).tocsr()
    if isinstance(sched, PureGame):
        return coin_pattern() if sched.game == "coin" else duel_pattern()
    if isinstance(sched, PeriodicPattern):
        A, B = duel_pattern(), coin_pattern()
        P = sp.identity(size, dtype=bool, format="csr")
        for _ in range(sched.r):
            P = (P @ A) > 0
        for _ in range(sched.s):
            P = (P @ B) > 0
        return P.tocsr()
    raise TypeError(f"not a scheduler: {sched!r}")


def is_irreducible(n: int, sched: SchedulerSpec, params: GameParams, cap: int = 14) -> bool:
    """True iff the positive-probability one-step graph of the scheduled
    chain is strongly connected.

    Enumerates the full state graph, so it is capped (default n <= 14;
    periodic patterns additionally at n <= 12 because the pattern of the
    composed kernel can densify).
    """
    _check_n(n)
    effective_cap = min(cap, 12) if isinstance(sched, PeriodicPattern) else cap
    if n > effective_cap:
        raise ValueError(f"state graph too large to enumerate (n={n} > cap {effective_cap})")
    pattern = _one_step_pattern(n, sched, params)
    ncomp, _ = connected_components(pattern, directed=True, connection="strong")
    return ncomp == 1


# -- profits ------------------------------------------------------------------


def profit_field(n: int, params: GameParams) -> np.ndarray:
    """Expected ensemble profit of one coin-game turn from each state:
    ``(1/n) * sum_x (2 p_{m_x} - 1)``.  Duel turns contribute exactly zero
    profit from every state and have no field of their own."""
    _check_n(n)
    p = params.as_tuple()
    tilt = np.array([2.0 * v - 1.0 for v in p] * 2)  # code m + 4*eta(x) -> 2 p_m - 1
    acc = np.zeros(1 << n)
    for code in _coin_code_arrays(n):
        acc += tilt[code]
    return acc / n


@dataclass(frozen=True)
class ProfitResult:
    """Equilibrium mean profit per turn, with solver diagnostics attached.

    ``formula_delta`` is the disagreement between the full-state expectation
    and the neighbour-pair-marginal formula (mixture schedulers only; the two
    must match by rotation invariance of the stationary law).
    """

    value: float
    n: int
    scheduler: str
    solver_residual: float
    iterations: int
    formula_delta: Optional[float] = None

    def __float__(self) -> float:
        return self.value


def _pair_formula(w: np.ndarray, n: int, params: GameParams) -> float:
    """Mean coin-turn profit via the two-site marginal at the chosen
    player's neighbours (labels -1 and +1, internal sites n-1 and 1)."""
    pm = _pair_marginal_raw(w, n, n - 1, 1)
    p = params.as_tuple()
    return sum(pm[k, l] * (2.0 * p[2 * k + l] - 1.0) for k in (0, 1) for l in (0, 1))


def mean_profit_mixture(
    n: int,
    gamma: float,
    params: GameParams,
    tol: float = 1e-13,
    max_iters: int = 10 ** 6,
) -> ProfitResult:
    """Equilibrium mean profit per turn of the gamma-mixture.

    Computed as ``(1 - gamma) * E_pi[profit field]`` and, as a cross-check,
    via the stationary pair marginal at the chosen player's neighbours; the
    two formulas must agree to 1e-10 (they coincide analytically by rotation
    invariance) and the full-state value is returned.
    """
    op = mixture_operator(n, gamma, params)
    w, res, iters, _ = _power_iteration(op.apply_dist, 1 << n, tol, max_iters)
    full = (1.0 - gamma) * float(w @ profit_field(n, params))
    paired = (1.0 - gamma) * _pair_formula(w, n, params)
    delta = abs(full - paired)
    if delta > 1e-10:
        raise RuntimeError(
            f"full-state and pair-marginal profit formulas disagree by {delta:.3e} "
            f"(n={n}, gamma={gamma})"
        )
    return ProfitResult(full, n, scheduler_label(RandomMixture(gamma)), res, iters, delta)


def mean_profit_periodic(
    n: int,
    r: int,
    s: int,
    params: GameParams,
    tol: float = 1e-13,
    max_iters: int = 10 ** 6,
) -> ProfitResult:
    """Equilibrium mean profit per turn of the periodic pattern.

    The stationary law of the full-cycle kernel is pushed through the ``r``
    duel steps, then the one-turn coin profit is averaged over the ``s`` coin
    phases and divided by the cycle length ``r + s`` (duel turns contribute
    zero).
    """
    op = cycle_operator(n, r, s, params)
    w, res, iters, _ = _power_iteration(op.apply_dist, 1 << n, tol, max_iters)
    phi = profit_field(n, params)
    law = w
    for _ in range(r):
        law = _duel_dist_raw(n, law)
    table = _win_table(params)
    total = 0.0
    for v in range(s):
        total += float(law @ phi)
        if v + 1 < s:
            law = _coin_dist_raw(n, table, law)
    value = total / (r + s)
    return ProfitResult(value, n, scheduler_label(PeriodicPattern(r, s)), res, iters, None)


def mean_profit_pure(
    n: int,
    game: str,
    params: GameParams,
    tol: float = 1e-13,
    max_iters: int = 10 ** 6,
) -> ProfitResult:
    """Mean profit of a single repeated game.

    The duel game is exactly neutral — every duel moves one unit from loser
    to winner — so its mean profit is literally 0.0 at every distribution and
    no solve is performed.  The pure coin game is solved like any other chain.
    """
    if game == "duel":
        return ProfitResult(0.0, n, "pure-duel", 0.0, 0, None)
    if game != "coin":
        raise ValueError(f"unknown game {game!r}")
    op = coin_game_operator(n, params)
    w, res, iters, _ = _power_iteration(op.apply_dist, 1 << n, tol, max_iters)
    value = float(w @ profit_field(n, params))
    return ProfitResult(value, n, "pure-coin", res, iters, None)


def mean_profit(
    n: int,
    sched: SchedulerSpec,
    params: GameParams,
    tol: float = 1e-13,
    max_iters: int = 10 ** 6,
) -> ProfitResult:
    """Dispatch on the scheduler type; see the per-scheduler functions."""
    if isinstance(sched, RandomMixture):
        return mean_profit_mixture(n, sched.gamma, params, tol, max_iters)
    if isinstance(sched, PeriodicPattern):
        return mean_profit_periodic(n, sched.r, sched.s, params, tol, max_iters)
    if isinstance(sched, PureGame):
        return mean_profit_pure(n, sched.game, params, tol, max_iters)
    raise TypeError(f"not a scheduler: {sched!r}")


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: Optional[float]
    delta_prev: Optional[float]
    solver_residual: Optional[float]
    error: Optional[str] = None


def convergence_table(
    params: GameParams,
    sched: SchedulerSpec,
    n_values: Sequence[int],
    tol: float = 1e-13,
    max_iters: int = 10 ** 6,
) -> list[ConvergenceRow]:
    """Exact mean profit per ring size, with successive absolute differences.

    Failures (reducible chains, cap violations) are recorded per row and do
    not abort the rest of the table; a failed row resets the difference
    column.
    """
    rows: list[ConvergenceRow] = []
    prev: Optional[float] = None
    for n in n_values:
        try:
            result = mean_profit(n, sched, params, tol, max_iters)
        except (NotConverged, ValueError, RuntimeError) as exc:
            rows.append(ConvergenceRow(n, None, None, None, str(exc)))
            prev = None
            continue
        delta = None if prev is None else abs(result.value - prev)
        rows.append(ConvergenceRow(n, result.value, delta, result.solver_residual))
        prev = result.value
    return rows


# -- symmetries ---------------------------------------------------------------


def rotate_distribution(dist: StateDistribution, shift: int) -> StateDistribution:
    """Law of the rotated configuration: site ``x`` of the new state carries
    the old site ``(x - shift) % n``."""
    n = dist.n
    shift %= n
    if shift == 0:
        return dist
    states = np.arange(1 << n, dtype=np.int64)
    mask = (1 << n) - 1
    rotated = ((states << shift) | (states >> (n - shift))) & mask
    out = np.empty_like(dist.weights)
    out[rotated] = dist.weights
    return StateDistribution(n, out)


def reflect_distribution(dist: StateDistribution) -> StateDistribution:
    """Law of the reflected configuration (site relabelling x -> -x mod n)."""
    n = dist.n
    states = np.arange(1 << n, dtype=np.int64)
    reflected = states & 1  # bit 0 is fixed by the reflection
    for x in range(1, n):
        reflected = reflected | (((states >> x) & 1) << (n - x))
    out = np.empty_like(dist.weights)
    out[reflected] = dist.weights
    return StateDistribution(n, out)
