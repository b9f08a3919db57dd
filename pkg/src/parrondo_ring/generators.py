"""Cylinder functions, limiting generators, and their finite-ring versions.

A cylinder function is a real function of the ``2k + 1`` lattice coordinates
``-k..k`` around the origin, stored as a dense table (index bit ``j + k`` is
coordinate ``j``).  The limiting generators of the duel game, the coin game
and their mixture map a half-width-``k`` cylinder function to a half-width
``k + 1`` one:

* duel:    ``sum_x c'(x, eta) [f(eta_x) - f(eta)]
           + 1/2 sum_x [f(swap_x eta) - f(eta)]``
* coin:    ``sum_x c(x, eta) [f(eta_x) - f(eta)]``
* mixture: ``gamma * duel + (1 - gamma) * coin``

where ``c'`` and ``c`` are the local flip rates of :mod:`.rules` and
``swap_x`` exchanges coordinates ``x`` and ``x + 1``.  All sums truncate to
finitely many ``x`` because terms that do not touch the window vanish.

The finite-ring counterpart of a generator is ``n (P g - g)`` for a one-step
kernel ``P`` (scaled by ``1/(r + s)`` for an ``(r, s)`` periodic pattern),
and ``embed_on_ring`` transports cylinder functions onto the ring by reading
the centred window, padding with winner statuses where the window leaves the
labelled range.  ``embedding_residual`` and ``periodic_residual`` measure how
far the two sides of the generator/embedding exchange identity are apart:
zero (to rounding) for single-game and mixture steps once ``n >= 2k + 4``,
and O(1/n) for periodic patterns.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .exact import scheduler_operator
from .rules import (
    GameParams,
    PeriodicPattern,
    PureGame,
    RandomMixture,
    SchedulerSpec,
)

__all__ = [
    "CylinderFunction",
    "RingFunction",
    "embed_on_ring",
    "duel_generator",
    "duel_generator_events",
    "coin_generator",
    "mixture_generator",
    "continuum_generator",
    "discrete_generator",
    "embedding_residual",
    "periodic_residual",
]

_INPUT_K_CAP = 3  # generator inputs; outputs then reach half-width 4


@dataclass(frozen=True)
class CylinderFunction:
    """Function of the lattice window ``-k..k``, as a dense value table.

    ``table[w]`` is the value on the window whose coordinate ``j`` equals bit
    ``j + k`` of ``w``.  Half-widths are capped (storage up to ``k = 4``,
    generator inputs up to ``k = 3``) so that every check in this module can
    enumerate windows exhaustively.
    """

    k: int
    table: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.k <= _INPUT_K_CAP + 1:
            raise ValueError(f"half-width k={self.k} outside 0..{_INPUT_K_CAP + 1}")
        t = np.asarray(self.table, dtype=np.float64)
        if t.shape != (1 << (2 * self.k + 1),):
            raise ValueError(f"table shape {t.shape} != (2**{2 * self.k + 1},)")
        if not np.all(np.isfinite(t)):
            raise ValueError("table values must be finite")
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def constant(cls, value: float, k: int = 0) -> "CylinderFunction":
        return cls(k, np.full(1 << (2 * k + 1), float(value)))

    @classmethod
    def coordinate(cls, j: int = 0) -> "CylinderFunction":
        """The projection ``eta -> eta(j)``, stored at the minimal half-width."""
        k = abs(j)
        w = np.arange(1 << (2 * k + 1))
        return cls(k, ((w >> (j + k)) & 1).astype(np.float64))

    @classmethod
    def random(cls, k: int, seed: int, low: float = -1.0, high: float = 1.0) -> "CylinderFunction":
        rng = np.random.default_rng(seed)
        return cls(k, rng.uniform(low, high, size=1 << (2 * k + 1)))

    def __call__(self, window: int) -> float:
        return float(self.table[window])


@dataclass(frozen=True)
class RingFunction:
    """A real observable on the full ``2**n`` ring state space."""

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (1 << self.n,):
            raise ValueError(f"values shape {v.shape} != (2**{self.n},)")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def embed_on_ring(f: CylinderFunction, n: int) -> RingFunction:
    """Read ``f`` on the centred window of each ring configuration.

    Ring sites carry centred labels ``-(n//2) .. (n-1)//2`` (label 0 is
    internal site 0).  Coordinates of the window that fall outside the
    labelled range are padded with winner statuses (1s); with the enforced
    ``n >= 2k + 1`` the centred window always fits, so the padding convention
    is only visible through the label wrap-around.
    """
    if n < 2 * f.k + 1:
        raise ValueError(f"ring of {n} sites too small for a half-width-{f.k} window")
    lo, hi = -(n // 2), (n - 1) // 2
    states = np.arange(1 << n, dtype=np.int64)
    windex = np.zeros(1 << n, dtype=np.int64)
    for j in range(-f.k, f.k + 1):
        if lo <= j <= hi:
            bit = (states >> (j % n)) & 1
            windex |= bit << (j + f.k)
        else:  # pragma: no cover - unreachable once n >= 2k + 1
            windex |= 1 << (j + f.k)
    return RingFunction(n, f.table[windex])


# -- limiting generators ------------------------------------------------------


def _restricted(f: CylinderFunction, windows: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on half-width ``k+1`` windows by dropping the edge coordinates."""
    mask = (1 << (2 * f.k + 1)) - 1
    return f.table[(windows >> 1) & mask]


def _check_generator_input(f: CylinderFunction) -> None:
    if f.k > _INPUT_K_CAP:
        raise ValueError(f"generator inputs are capped at half-width {_INPUT_K_CAP}")


def duel_generator(f: CylinderFunction) -> CylinderFunction:
    """Limiting duel-game generator, in flip + swap form.

    The output has half-width exactly ``k + 1``: flips at ``|x| <= k`` and
    swaps of the pairs ``(x, x+1)`` with ``-k-1 <= x <= k`` are the only
    terms that touch the window.
    """
    _check_generator_input(f)
    k = f.k
    width = 2 * k + 3
    w = np.arange(1 << width, dtype=np.int64)
    fbase = _restricted(f, w)
    g = np.zeros(w.shape[0])
    for x in range(-k, k + 1):
        pos = x + k + 1
        bx = (w >> pos) & 1
        same_left = (bx == ((w >> (pos - 1)) & 1)).astype(np.float64)
        same_right = (bx == ((w >> (pos + 1)) & 1)).astype(np.float64)
        rate = 0.5 * (same_left + same_right)
        g += rate * (_restricted(f, w ^ (1 << pos)) - fbase)
    for x in range(-k - 1, k + 1):
        pos = x + k + 1
        diff = ((w >> pos) ^ (w >> (pos + 1))) & 1
        swapped = w ^ ((diff << pos) | (diff << (pos + 1)))
        g += 0.5 * (_restricted(f, swapped) - fbase)
    return CylinderFunction(k + 1, g)


def duel_generator_events(f: CylinderFunction) -> CylinderFunction:
    """Duel generator assembled from the four duel events per site (duel the
    left or right neighbour, win or lose, weight 1/4 each) instead of the
    collapsed flip + swap form.  Kept as an independent construction; the two
    agree up to float summation order."""
    _check_generator_input(f)
    k = f.k
    width = 2 * k + 3
    w = np.arange(1 << width, dtype=np.int64)
    fbase = _restricted(f, w)
    g = np.zeros(w.shape[0])

    def with_pair(values: np.ndarray, winner: int, loser: int) -> np.ndarray:
        out = values
        pos = winner + k + 1
        if 0 <= pos < width:
            out = out | (np.int64(1) << pos)
        pos = loser + k + 1
        if 0 <= pos < width:
            out = out & ~(np.int64(1) << pos)
        return out

    for x in range(-k - 1, k + 2):
        for partner in (x - 1, x + 1):
            for winner, loser in ((x, partner), (partner, x)):
                g += 0.25 * (_restricted(f, with_pair(w, winner, loser)) - fbase)
    return CylinderFunction(k + 1, g)


def coin_generator(params: GameParams, f: CylinderFunction) -> CylinderFunction:
    """Limiting coin-game generator ``sum_x c(x, eta) [f(eta_x) - f(eta)]``."""
    _check_generator_input(f)
    k = f.k
    w = np.arange(1 << (2 * k + 3), dtype=np.int64)
    fbase = _restricted(f, w)
    p = params.as_tuple()
    table = np.array(p + tuple(1.0 - v for v in p))
    g = np.zeros(w.shape[0])
    for x in range(-k, k + 1):
        pos = x + k + 1
        bx = (w >> pos) & 1
        m = 2 * ((w >> (pos - 1)) & 1) + ((w >> (pos + 1)) & 1)
        rate = table[m + 4 * bx]
        g += rate * (_restricted(f, w ^ (1 << pos)) - fbase)
    return CylinderFunction(k + 1, g)


def mixture_generator(gamma: float, params: GameParams, f: CylinderFunction) -> CylinderFunction:
    """``gamma * duel_generator(f) + (1 - gamma) * coin_generator(params, f)``.

    Linear in ``f``; the swap part therefore enters with coefficient
    ``gamma / 2``, inheriting the 1/2 inside the duel generator.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma={gamma} must lie strictly inside (0, 1)")
    duel = duel_generator(f)
    coin = coin_generator(params, f)
    return CylinderFunction(f.k + 1, gamma * duel.table + (1.0 - gamma) * coin.table)


def continuum_generator(sched: SchedulerSpec, params: GameParams, f: CylinderFunction) -> CylinderFunction:
    """The limiting generator matching a single-step scheduler."""
    if isinstance(sched, PureGame):
        return duel_generator(f) if sched.game == "duel" else coin_generator(params, f)
    if isinstance(sched, RandomMixture):
        return mixture_generator(sched.gamma, params, f)
    raise TypeError(
        "periodic patterns have no single-step limiting generator; "
        "compare against the (r, s)-weighted combination via periodic_residual"
    )


# -- finite-ring generators and residuals --------------------------------------


def discrete_generator(
    n: int, sched: SchedulerSpec, params: GameParams, g: RingFunction
) -> RingFunction:
    """Finite-ring generator ``n (P g - g)``, with ``P`` the scheduler's
    kernel; periodic patterns use the full-cycle kernel scaled by
    ``n / (r + s)``."""
    if g.n != n:
        raise ValueError(f"function lives on a ring of {g.n} sites, not {n}")
    op = scheduler_operator(n, sched, params)
    scale = n / (sched.r + sched.s) if isinstance(sched, PeriodicPattern) else float(n)
    return RingFunction(n, scale * (op.apply_fn(g.values) - g.values))


def embedding_residual(
    f: CylinderFunction, n: int, sched: SchedulerSpec, params: GameParams
) -> float:
    """Sup over ring states of |ring generator of the embedded function -
    embedded limiting generator|.

    Exactly zero (rounding aside) whenever ``n >= 2k + 4``; smaller rings are
    still computable but outside that regime, so a warning is emitted and the
    wrap-around may produce a genuinely nonzero value.
    """
    if isinstance(sched, PeriodicPattern):
        raise TypeError("periodic patterns are handled by periodic_residual")
    if n < 2 * f.k + 4:
        warnings.warn(
            f"n={n} is below 2k+4={2 * f.k + 4}: outside the exact-commutation regime",
            stacklevel=2,
        )
    lhs = discrete_generator(n, sched, params, embed_on_ring(f, n))
    rhs = embed_on_ring(continuum_generator(sched, params, f), n)
    return float(np.abs(lhs.values - rhs.values).max())


def periodic_residual(
    f: CylinderFunction,
    n: int,
    r: int,
    s: int,
    params: GameParams,
    margin: int | None = None,
) -> float:
    """Sup-norm gap between the ``(r, s)`` ring generator of the embedded
    function and the embedded ``(r/(r+s), s/(r+s))``-weighted limiting
    generator.  Decays like O(1/n) as the ring grows.

    ``margin`` optionally declares the bookkeeping half-width ``K`` used for
    the support requirement ``k <= K - 2``; by default ``K = k + 2``.
    """
    if margin is not None and f.k > margin - 2:
        raise ValueError(f"half-width {f.k} exceeds the declared margin K-2={margin - 2}")
    if n < 2 * f.k + 4:
        raise ValueError(f"need n >= 2k+4={2 * f.k + 4} sites, got {n}")
    weighted = CylinderFunction(
        f.k + 1,
        (r * duel_generator(f).table + s * coin_generator(params, f).table) / (r + s),
    )
    lhs = discrete_generator(n, PeriodicPattern(r, s), params, embed_on_ring(f, n))
    rhs = embed_on_ring(weighted, n)
    return float(np.abs(lhs.values - rhs.values).max())
