"""Core model of the parking spot selection game.

Drivers choose between two actions: compete for one of ``r_spots`` cheap
curbside spots ("public") or head straight for the private lot ("private").
A driver that competes and wins pays ``c_pub_s``; a driver that competes and
loses ends up in the private lot anyway, paying ``gamma * c_pub_s`` (fee plus
the cruising overhead of the failed attempt); a driver that never competes
pays ``beta * c_pub_s``. The game is anonymous: every cost in the model
depends on the action profile only through the number of competitors.

This module holds the game configuration, the per-action cost functions, the
social cost under pure and mixed profiles, and the derived scalar quantities
(``delta``, ``sigma0``) used by the equilibrium and efficiency solvers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom


@dataclass(frozen=True)
class GameConfig:
    """Parameters of one parking spot selection game.

    Parameters
    ----------
    n_drivers : int
        Number of drivers seeking a spot. Must exceed 1.
    r_spots : int
        Number of public (curbside) spots, at least 1. Private capacity is
        treated as unbounded and is not a parameter.
    beta : float
        Private-lot fee as a multiple of ``c_pub_s``. Must satisfy
        ``1 < beta < gamma``.
    gamma : float
        Total cost multiple paid after a failed public attempt (private fee
        plus cruising overhead).
    c_pub_s : float
        Monetary cost of successfully parking in a public spot.
    """

    n_drivers: int
    r_spots: int
    beta: float
    gamma: float
    c_pub_s: float = 1.0

    def __post_init__(self) -> None:
        if self.n_drivers <= 1:
            raise ValueError(f"requires n_drivers > 1, got {self.n_drivers}")
        if self.r_spots < 1:
            raise ValueError(f"requires r_spots >= 1, got {self.r_spots}")
        if self.c_pub_s <= 0:
            raise ValueError(f"requires c_pub_s > 0, got {self.c_pub_s}")
        if not (1.0 < self.beta < self.gamma):
            raise ValueError(
                f"requires 1 < beta < gamma, got beta={self.beta}, gamma={self.gamma}"
            )

    @property
    def delta(self) -> float:
        """Excess cost multiple of a failed public attempt (``gamma - beta``)."""
        return self.gamma - self.beta

    @property
    def sigma0(self) -> float:
        """Competition threshold ``r_spots * (gamma - 1) / delta``.

        At this many competitors the expected cost of competing equals the
        private-lot cost. Always strictly greater than ``r_spots`` because
        ``beta > 1``.
        """
        return self.r_spots * (self.gamma - 1.0) / self.delta

    @property
    def c_priv(self) -> float:
        """Fixed cost of going straight to the private lot."""
        return self.beta * self.c_pub_s

    @property
    def c_pub_f(self) -> float:
        """Cost after competing and failing (private fee plus cruising)."""
        return self.gamma * self.c_pub_s


@dataclass(frozen=True)
class BayesianConfig:
    """Game with probabilistic demand: each driver is independently active
    (actually seeking a spot) with probability ``p_act``."""

    game: GameConfig
    p_act: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p_act <= 1.0):
            raise ValueError(f"requires 0 <= p_act <= 1, got {self.p_act}")


def cost_public_vec(cfg: GameConfig, k: np.ndarray) -> np.ndarray:
    """Expected cost of the public action for each competitor count in ``k``.

    Vectorized form of :func:`cost_public`; ``k`` entries must be >= 1.
    """
    k = np.asarray(k, dtype=float)
    p_win = np.minimum(1.0, cfg.r_spots / k)
    return p_win * cfg.c_pub_s + (1.0 - p_win) * cfg.c_pub_f


def cost_public(cfg: GameConfig, k: int) -> float:
    """Expected cost of competing when ``k`` drivers compete in total.

    Each of the ``k`` competitors wins a spot with probability
    ``min(1, r_spots / k)`` and otherwise pays the failed-attempt cost.
    ``k = 0`` is rejected: the cost of an action nobody takes is undefined.
    """
    if not 1 <= k <= cfg.n_drivers:
        raise ValueError(f"requires 1 <= k <= n_drivers, got k={k}")
    return float(cost_public_vec(cfg, np.array([k]))[0])


def cost_private(cfg: GameConfig) -> float:
    """Cost of heading straight to the private lot (independent of occupancy)."""
    return cfg.c_priv


def _check_sigma(cfg: GameConfig, sigma_pub: int) -> None:
    if not 0 <= sigma_pub <= cfg.n_drivers:
        raise ValueError(
            f"requires 0 <= sigma_pub <= n_drivers, got sigma_pub={sigma_pub}"
        )


def social_cost_pure(cfg: GameConfig, sigma_pub: int) -> float:
    """Total cost over all drivers when exactly ``sigma_pub`` compete.

    Piecewise linear in ``sigma_pub``: decreasing while spots remain
    (slope ``-(beta-1)``), increasing once competition exceeds capacity
    (slope ``delta``). The two branches agree at ``sigma_pub = r_spots``.
    """
    _check_sigma(cfg, sigma_pub)
    n, r, c = cfg.n_drivers, cfg.r_spots, cfg.c_pub_s
    if sigma_pub <= r:
        return c * (n * cfg.beta - sigma_pub * (cfg.beta - 1.0))
    return c * (sigma_pub * cfg.delta - r * (cfg.gamma - 1.0) + cfg.beta * n)


def social_cost_mixed(cfg: GameConfig, p_pub: float) -> float:
    """Expected total cost when every driver competes with probability ``p_pub``.

    The number of competitors is Binomial(``n_drivers``, ``p_pub``); the
    expectation weights each outcome's total cost by its probability.
    """
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    n, r = cfg.n_drivers, cfg.r_spots
    sigma = np.arange(n + 1)
    per_profile = (
        np.minimum(sigma, r)
        + np.maximum(0, sigma - r) * cfg.gamma
        + (n - sigma) * cfg.beta
    )
    pmf = binom.pmf(sigma, n, p_pub)
    return cfg.c_pub_s * float(pmf @ per_profile)


def optimal_social_cost(cfg: GameConfig) -> float:
    """Minimum total cost achievable by a coordinator.

    Fill the public spots with ``min(n_drivers, r_spots)`` drivers and send
    the rest directly to the private lot; nobody pays the failed-attempt
    premium.
    """
    n, r = cfg.n_drivers, cfg.r_spots
    return cfg.c_pub_s * (min(n, r) + cfg.beta * max(0, n - r))
