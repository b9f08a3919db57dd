"""Basic-inequality ergodicity bounds for the mixed game on the infinite line.

The mixture of the duel and coin games is a spin system with an exclusion
component: single-site flips at rate ``gamma c'(x, eta) + (1-gamma) c(x, eta)``
plus adjacent swaps at rate ``gamma/2``.  For such finite-range systems the
basic inequality (Liggett, *Interacting Particle Systems*, 1985) guarantees
ergodicity when the total influence ``M`` of any site on the update kernels
around it stays below the uniform rate floor ``epsilon``.

Both constants have closed forms here:

``M = max(|g/2 + (1-g)(p0-p1)|, |g/2 + (1-g)(p2-p3)|)
    + max(|g/2 + (1-g)(p0-p2)|, |g/2 + (1-g)(p1-p3)|) + g``

``epsilon = 1 + g``

and both are re-derived in this module by brute-force enumeration of the
finitely many local kernels, which is what makes the closed forms testable.
The sufficient condition ``M < epsilon`` reduces to the two maxima summing
below 1.  Monte Carlo estimates of the parameter-space volume where the
condition holds complete the picture.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal, NamedTuple

import numpy as np

from .rules import GameParams

__all__ = [
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
]

Method = Literal["closed_form", "brute_force"]


@dataclass(frozen=True)
class LocalRateTable:
    """Local rates of the mixed spin/exclusion system.

    ``flip_rates[left, center, right]`` is the combined single-site flip rate
    ``gamma c' + (1-gamma) c`` for the pattern ``(eta(x-1), eta(x), eta(x+1))``;
    ``swap_rate`` is the constant ``gamma/2`` carried by each adjacent-pair
    exchange family (active only when the pair disagrees, since swapping
    equal values is no jump).
    """

    flip_rates: np.ndarray
    swap_rate: float

    def __post_init__(self) -> None:
        rates = np.asarray(self.flip_rates, dtype=np.float64)
        if rates.shape != (2, 2, 2):
            raise ValueError(f"flip_rates shape {rates.shape} != (2, 2, 2)")
        if rates.min() < 0.0 or rates.max() > 1.0:
            raise ValueError("flip rates must lie in [0, 1]")
        rates = rates.copy()
        rates.setflags(write=False)
        object.__setattr__(self, "flip_rates", rates)

    @classmethod
    def from_mixture(cls, gamma: float, params: GameParams) -> "LocalRateTable":
        rates = np.empty((2, 2, 2))
        for left, center, right in product((0, 1), repeat=3):
            duel = 0.5 * (int(center == left) + int(center == right))
            m = 2 * left + right
            coin = params.win_prob(m) if center == 0 else params.loss_prob(m)
            rates[left, center, right] = gamma * duel + (1.0 - gamma) * coin
        return cls(rates, gamma / 2.0)

    def flip_rate(self, left: int, center: int, right: int) -> float:
        return float(self.flip_rates[left, center, right])


@dataclass(frozen=True)
class ErgodicityReport:
    """Outcome of the basic-inequality test.

    The condition is sufficient only: ``ergodic=False`` means the criterion
    fails, never that the system is non-ergodic.  ``lhs`` is the reduced form
    ``M - gamma`` whose comparison against 1 is equivalent to ``M < epsilon``.
    """

    M: float
    epsilon: float
    ergodic: bool
    margin: float
    method: Method
    gamma: float
    lhs: float


def _check_gamma_range(gamma: float) -> None:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma} outside [0, 1]")


def influence_sum(gamma: float, params: GameParams) -> float:
    """Closed-form influence constant M of the basic inequality.

    Defined on all of [0, 1]: gamma = 0 gives the coin-game-only constant and
    gamma = 1 the duel-only one, even though the mixture theorem itself needs
    gamma strictly inside.
    """
    _check_gamma_range(gamma)
    half = gamma / 2.0
    rest = 1.0 - gamma
    p0, p1, p2, p3 = params.as_tuple()
    right = max(abs(half + rest * (p0 - p1)), abs(half + rest * (p2 - p3)))
    left = max(abs(half + rest * (p0 - p2)), abs(half + rest * (p1 - p3)))
    return right + left + gamma


def min_rate_sum(gamma: float) -> float:
    """Closed-form rate floor epsilon = 1 + gamma, independent of the coin
    probabilities thanks to the complement identities of the local rates."""
    _check_gamma_range(gamma)
    return 1.0 + gamma


def _tv(d1: dict, d2: dict) -> float:
    atoms = set(d1) | set(d2)
    return sum(abs(d1.get(a, 0.0) - d2.get(a, 0.0)) for a in atoms)


def influence_sum_bruteforce(gamma: float, params: GameParams) -> float:
    """M evaluated straight from its definition.

    For every update family T containing site 0 (the flip at 0 and the two
    adjacent swaps) and every other site u, take the sup over local patterns
    of the total-variation distance between the update kernels seen from two
    configurations differing only at u, then add everything up.  All sups run
    over the finitely many patterns on the family's support plus u.
    """
    _check_gamma_range(gamma)
    table = LocalRateTable.from_mixture(gamma, params)

    def flip_kernel(eta: dict) -> dict:
        rate = table.flip_rate(eta[-1], eta[0], eta[1])
        return {(1 - eta[0],): rate} if rate != 0.0 else {}

    def swap_kernel(a: int, b: int):
        def kernel(eta: dict) -> dict:
            if eta[a] != eta[b]:
                return {(eta[b], eta[a]): table.swap_rate}
            return {}

        return kernel

    families = [
        (flip_kernel, (-1, 0, 1)),
        (swap_kernel(-1, 0), (-1, 0)),
        (swap_kernel(0, 1), (0, 1)),
    ]
    total = 0.0
    for kernel, support in families:
        for u in (-2, -1, 1, 2):
            sites = sorted(set(support) | {u})
            worst = 0.0
            for bits in product((0, 1), repeat=len(sites)):
                eta = dict(zip(sites, bits))
                eta.setdefault(-1, 0)
                eta.setdefault(0, 0)
                eta.setdefault(1, 0)
                flipped = dict(eta)
                flipped[u] = 1 - flipped[u]
                worst = max(worst, _tv(kernel(eta), kernel(flipped)))
            total += worst
    return total


def min_rate_sum_bruteforce(gamma: float, params: GameParams) -> float:
    """epsilon evaluated from its definition, in exact rational arithmetic.

    For each local pattern around a site u, sum the flip rates available at
    the configuration and at its flip, plus the swap mass that moves the bit
    at u (each adjacent family fires from exactly one of the two
    configurations).  The complement identities make the sum equal 1 + gamma
    for every pattern, so the inf is 1 + gamma; doing the arithmetic in
    :class:`fractions.Fraction` and converting once at the end makes the
    float result exactly ``1.0 + gamma``.
    """
    _check_gamma_range(gamma)
    g = Fraction(gamma)
    ps = [Fraction(p) for p in params.as_tuple()]

    def coin(left: int, center: int, right: int) -> Fraction:
        m = 2 * left + right
        return ps[m] if center == 0 else 1 - ps[m]

    def duel(left: int, center: int, right: int) -> Fraction:
        return Fraction(int(center == left) + int(center == right), 2)

    best = None
    for left, center, right in product((0, 1), repeat=3):
        flips = sum(
            g * duel(left, c, right) + (1 - g) * coin(left, c, right)
            for c in (center, 1 - center)
        )
        swaps = (g / 2) * (
            int(center != left)
            + int(1 - center != left)
            + int(center != right)
            + int(1 - center != right)
        )
        value = flips + swaps
        best = value if best is None else min(best, value)
    return float(best)


def mixture_ergodicity(
    gamma: float, params: GameParams, method: Method = "closed_form"
) -> ErgodicityReport:
    """Basic-inequality test for the gamma-mixture (requires 0 < gamma < 1)."""
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma={gamma} must lie strictly inside (0, 1)")
    return _report(gamma, params, method)


def coin_game_ergodicity(params: GameParams, method: Method = "closed_form") -> ErgodicityReport:
    """Basic-inequality test for the coin game alone: the gamma = 0 constants,
    i.e. M = max(|p0-p1|, |p2-p3|) + max(|p0-p2|, |p1-p3|) against epsilon = 1."""
    return _report(0.0, params, method)


def _report(gamma: float, params: GameParams, method: Method) -> ErgodicityReport:
    if method == "closed_form":
        M = influence_sum(gamma, params)
        epsilon = min_rate_sum(gamma)
    elif method == "brute_force":
        M = influence_sum_bruteforce(gamma, params)
        epsilon = min_rate_sum_bruteforce(gamma, params)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ErgodicityReport(
        M=M,
        epsilon=epsilon,
        ergodic=M < epsilon,
        margin=epsilon - M,
        method=method,
        gamma=gamma,
        lhs=M - gamma,
    )


# -- parameter-space volume ----------------------------------------------------

_BLOCK = 1 << 16


class VolumeEstimate(NamedTuple):
    estimate: float
    stderr: float


def _condition_holds(gamma: float, p0, p1, p2, p3) -> np.ndarray:
    half = gamma / 2.0
    rest = 1.0 - gamma
    right = np.maximum(np.abs(half + rest * (p0 - p1)), np.abs(half + rest * (p2 - p3)))
    left = np.maximum(np.abs(half + rest * (p0 - p2)), np.abs(half + rest * (p1 - p3)))
    return right + left < 1.0


def volume_estimate(
    gamma: float,
    constraint: Literal["none", "p1_eq_p2"] = "none",
    samples: int = 10 ** 6,
    seed: int = 0,
    threads: int = 1,
) -> VolumeEstimate:
    """Monte Carlo volume of the parameter region where the basic-inequality
    condition holds, over [0,1]^4 or (with ``p1_eq_p2``) over [0,1]^3.

    Sampling is blocked, with one counter-based substream per block derived
    from ``seed``, and the blocks contribute integer hit counts, so the
    result is bit-identical for every ``threads`` value and extending
    ``samples`` refines the same sample rather than redrawing it.
    ``stderr`` is the binomial standard error.
    """
    _check_gamma_range(gamma)
    if constraint not in ("none", "p1_eq_p2"):
        raise ValueError(f"unknown constraint {constraint!r}")
    if samples < 1:
        raise ValueError("need at least one sample")
    n_blocks = (samples + _BLOCK - 1) // _BLOCK
    children = np.random.SeedSequence(seed).spawn(n_blocks)

    def block_hits(index: int) -> int:
        size = min(_BLOCK, samples - index * _BLOCK)
        rng = np.random.Generator(np.random.Philox(children[index]))
        if constraint == "none":
            draws = rng.random((size, 4))
            ok = _condition_holds(gamma, draws[:, 0], draws[:, 1], draws[:, 2], draws[:, 3])
        else:
            draws = rng.random((size, 3))
            ok = _condition_holds(gamma, draws[:, 0], draws[:, 1], draws[:, 1], draws[:, 2])
        return int(ok.sum())

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(block_hits, range(n_blocks)))
    else:
        hits = sum(block_hits(i) for i in range(n_blocks))
    estimate = hits / samples
    stderr = float(np.sqrt(estimate * (1.0 - estimate) / samples))
    return VolumeEstimate(estimate, stderr)
