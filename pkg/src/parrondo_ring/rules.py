"""Game rules on the ring: configurations, neighbour codes, and local rates.

Players sit on a circle of ``n >= 3`` sites.  A configuration records each
player's status bit (1 = winner, 0 = loser); index arithmetic is circular, so
site 0 neighbours sites ``n - 1`` and 1.

Two elementary games drive every chain in this package:

* the *duel game*: the chosen player and a uniformly random nearest
  neighbour stake one unit on a fair coin; the duel winner's site becomes 1,
  the loser's becomes 0, and the collective wealth of the ring is unchanged.
* the *coin game*: the chosen player tosses a biased coin whose win
  probability ``p_m`` is indexed by the neighbour code
  ``m = 2*eta(x-1) + eta(x+1)``; the player's bit records the outcome and
  the ensemble gains or loses one unit.

Everything here is a plain value type or a pure function; the exact engine,
the generator checks, the ergodicity bounds and the Monte Carlo sampler all
build on this vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Union

__all__ = [
    "Configuration",
    "GameParams",
    "RandomMixture",
    "PeriodicPattern",
    "PureGame",
    "SchedulerSpec",
    "scheduler_label",
    "label_bounds",
    "label_of_site",
    "site_of_label",
    "neighbor_code",
    "flip",
    "duel",
    "swap",
    "coin_flip_rate",
    "duel_flip_rate",
]


@dataclass(frozen=True)
class Configuration:
    """Status bits of the ``n`` players, circularly indexed.

    ``bits[x]`` is player ``x``'s status (0 or 1).  Sites are stored with
    internal indices ``0..n-1``; the centred labelling used by the window
    embeddings (see :func:`label_bounds`) is a documented bijection onto the
    same storage, with label 0 mapped to internal site 0.
    """

    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need at least 3 players, got n={self.n}")
        if len(self.bits) != self.n:
            raise ValueError(f"bits has length {len(self.bits)}, expected {self.n}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must consist of 0/1 values")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Configuration":
        t = tuple(int(b) for b in bits)
        return cls(len(t), t)

    @classmethod
    def from_int(cls, n: int, code: int) -> "Configuration":
        """Decode a bit-packed state: bit ``x`` of ``code`` is ``bits[x]``."""
        if not 0 <= code < (1 << n):
            raise ValueError(f"state code {code} out of range for n={n}")
        return cls(n, tuple((code >> x) & 1 for x in range(n)))

    @classmethod
    def all_zeros(cls, n: int) -> "Configuration":
        return cls(n, (0,) * n)

    @classmethod
    def all_ones(cls, n: int) -> "Configuration":
        return cls(n, (1,) * n)

    def to_int(self) -> int:
        code = 0
        for x, b in enumerate(self.bits):
            code |= b << x
        return code

    def rotated(self, shift: int) -> "Configuration":
        """Cyclic rotation: site ``x`` of the result carries ``bits[(x - shift) % n]``."""
        return Configuration(self.n, tuple(self.bits[(x - shift) % self.n] for x in range(self.n)))

    def reflected(self) -> "Configuration":
        """Relabel sites ``x -> -x`` (mod n); fixes site 0."""
        return Configuration(self.n, tuple(self.bits[(-x) % self.n] for x in range(self.n)))


@dataclass(frozen=True)
class GameParams:
    """The four coin-game win probabilities, indexed by neighbour code.

    ``p0`` applies when both neighbours are losers, ``p1`` when only the
    right neighbour is a winner, ``p2`` when only the left one is, and ``p3``
    when both are.  Loss probabilities are the complements ``1 - p_m``.
    Degenerate values 0 and 1 are accepted; chains built from them may be
    reducible, which the exact engine reports rather than hides.
    """

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self) -> None:
        for name, value in zip(("p0", "p1", "p2", "p3"), self.as_tuple()):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")

    @classmethod
    def fair(cls) -> "GameParams":
        return cls(0.5, 0.5, 0.5, 0.5)

    @classmethod
    def from_winner_count(cls, p_none: float, p_one: float, p_both: float) -> "GameParams":
        """Three-parameter restriction: probability depends only on the
        *number* of winning neighbours, i.e. ``p1 = p2``."""
        return cls(p_none, p_one, p_one, p_both)

    @classmethod
    def from_iterable(cls, values: Iterable[float]) -> "GameParams":
        vals = tuple(float(v) for v in values)
        if len(vals) != 4:
            raise ValueError(f"expected 4 probabilities, got {len(vals)}")
        return cls(*vals)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)

    def win_prob(self, m: int) -> float:
        return self.as_tuple()[m]

    def loss_prob(self, m: int) -> float:
        return 1.0 - self.as_tuple()[m]


@dataclass(frozen=True)
class RandomMixture:
    """Each turn is a duel-game turn with probability ``gamma``, else a coin-game turn."""

    gamma: float

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma={self.gamma} must lie strictly inside (0, 1)")


@dataclass(frozen=True)
class PeriodicPattern:
    """Deterministic cycle: ``r`` duel-game turns followed by ``s`` coin-game turns."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 1:
            raise ValueError(f"pattern lengths must be >= 1, got r={self.r}, s={self.s}")


@dataclass(frozen=True)
class PureGame:
    """Degenerate scheduler that always plays one game ('duel' or 'coin')."""

    game: Literal["duel", "coin"]

    def __post_init__(self) -> None:
        if self.game not in ("duel", "coin"):
            raise ValueError(f"unknown game {self.game!r}")


SchedulerSpec = Union[RandomMixture, PeriodicPattern, PureGame]


def scheduler_label(sched: SchedulerSpec) -> str:
    """Short human/CSV label, e.g. ``mixture(0.5)`` or ``periodic(2,1)``."""
    if isinstance(sched, RandomMixture):
        return f"mixture({sched.gamma:g})"
    if isinstance(sched, PeriodicPattern):
        return f"periodic({sched.r},{sched.s})"
    if isinstance(sched, PureGame):
        return f"pure-{sched.game}"
    raise TypeError(f"not a scheduler: {sched!r}")


# -- centred labels ----------------------------------------------------------
#
# Window-based constructions index sites by labels l..r around 0 with
# l = -(n // 2) and r = (n - 1) // 2 (one extra label on the negative side
# when n is even).  Label j lives at internal site j % n, so label 0 is
# internal site 0 for every n.


def label_bounds(n: int) -> tuple[int, int]:
    """Inclusive centred label range ``(l, r)`` for a ring of ``n`` sites."""
    return -(n // 2), (n - 1) // 2


def site_of_label(n: int, label: int) -> int:
    lo, hi = label_bounds(n)
    if not lo <= label <= hi:
        raise IndexError(f"label {label} outside [{lo}, {hi}] for n={n}")
    return label % n


def label_of_site(n: int, x: int) -> int:
    if not 0 <= x < n:
        raise IndexError(f"site {x} out of range for n={n}")
    hi = (n - 1) // 2
    return x if x <= hi else x - n


def _check_site(cfg: Configuration, x: int) -> None:
    if not 0 <= x < cfg.n:
        raise IndexError(f"site {x} out of range for n={cfg.n}")


# -- local observables and updates -------------------------------------------


def neighbor_code(cfg: Configuration, x: int) -> int:
    """``m = 2*eta(x-1) + eta(x+1)`` with circular indices; values 0..3."""
    _check_site(cfg, x)
    return 2 * cfg.bits[(x - 1) % cfg.n] + cfg.bits[(x + 1) % cfg.n]


def flip(cfg: Configuration, x: int) -> Configuration:
    """Complement the status bit at site ``x``."""
    _check_site(cfg, x)
    bits = list(cfg.bits)
    bits[x] = 1 - bits[x]
    return Configuration(cfg.n, tuple(bits))


def duel(
    cfg: Configuration,
    x: int,
    neighbor: Literal["left", "right"],
    outcome: Literal["win", "lose"],
) -> Configuration:
    """Resolve a duel between player ``x`` and a nearest neighbour.

    ``neighbor`` picks the partner (``left`` is ``x-1``, ``right`` is
    ``x+1``); ``outcome`` is from ``x``'s point of view, ``"win"`` meaning
    ``x`` wins.  The duel winner's site becomes 1 and the loser's becomes 0
    whatever their previous statuses; one unit moves from loser to winner, so
    the ring's collective wealth never changes.
    """
    _check_site(cfg, x)
    if neighbor not in ("left", "right"):
        raise ValueError(f"neighbor must be 'left' or 'right', got {neighbor!r}")
    if outcome not in ("win", "lose"):
        raise ValueError(f"outcome must be 'win' or 'lose', got {outcome!r}")
    partner = (x + 1) % cfg.n if neighbor == "right" else (x - 1) % cfg.n
    winner, loser = (x, partner) if outcome == "win" else (partner, x)
    bits = list(cfg.bits)
    bits[winner] = 1
    bits[loser] = 0
    return Configuration(cfg.n, tuple(bits))


def swap(cfg: Configuration, x: int) -> Configuration:
    """Exchange the values at sites ``x`` and ``x+1`` (circular)."""
    _check_site(cfg, x)
    y = (x + 1) % cfg.n
    bits = list(cfg.bits)
    bits[x], bits[y] = bits[y], bits[x]
    return Configuration(cfg.n, tuple(bits))


def coin_flip_rate(params: GameParams, cfg: Configuration, x: int) -> float:
    """Probability that a coin-game play at ``x`` changes the bit there.

    Equals ``p_m`` when ``eta(x) = 0`` (a win flips a loser up) and
    ``1 - p_m`` when ``eta(x) = 1``.  Satisfies the exact complement identity
    ``coin_flip_rate(cfg, x) + coin_flip_rate(flip(cfg, x), x) == 1``.
    """
    m = neighbor_code(cfg, x)
    return params.win_prob(m) if cfg.bits[x] == 0 else params.loss_prob(m)


def duel_flip_rate(cfg: Configuration, x: int) -> float:
    """Spin-flip rate of the duel game at ``x``: half the number of
    neighbours agreeing with ``eta(x)``.  Takes values 0, 1/2 or 1 and obeys
    the same complement identity as :func:`coin_flip_rate`."""
    _check_site(cfg, x)
    b = cfg.bits
    same_right = b[x] == b[(x + 1) % cfg.n]
    same_left = b[x] == b[(x - 1) % cfg.n]
    return 0.5 * (int(same_right) + int(same_left))
