"""Price of Anarchy and pricing-policy analysis.

The Price of Anarchy (PoA) is the worst-case equilibrium social cost divided
by the coordinated optimum. It is computed as that ratio from the cost model,
never as a free-standing formula, so it cannot drift from the costs it
summarizes. The closed-form special case for integer thresholds and the
capacity bound ``1 / (1 - r_spots / n_drivers)`` are provided for
cross-checking. Two pricing thresholds locate where PoA stops responding to
the private fee and to the excess cost, and the less-is-more crossover gives
the demand level at which uncertainty-driven caution lands the population on
the optimal cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .equilibria import EPS_INT
from .model import GameConfig, optimal_social_cost, social_cost_pure


@dataclass(frozen=True)
class PoaReport:
    """Price of Anarchy with the quantities that produce it.

    ``bound`` is ``1 / (1 - r_spots / n_drivers)`` when demand exceeds
    capacity and ``math.inf`` otherwise (the bound statement needs
    ``n_drivers > r_spots``).
    """

    poa: float
    worst_sigma: int
    c_worst: float
    c_opt: float
    bound: float


def _worst_sigma(cfg: GameConfig, eps_int: float) -> int:
    # Worst-case equilibrium competitor count. Snap sigma0 to an integer
    # within eps_int before flooring so float noise cannot shift the count.
    s0 = cfg.sigma0
    if s0 >= cfg.n_drivers:
        return cfg.n_drivers
    s_int = round(s0)
    if abs(s0 - s_int) < eps_int:
        return s_int
    return math.floor(s0)


def price_of_anarchy(cfg: GameConfig, eps_int: float = EPS_INT) -> PoaReport:
    """Pure Price of Anarchy as the ratio worst-equilibrium / optimum.

    The worst equilibrium has all ``n_drivers`` competing when
    ``sigma0 >= n_drivers`` and ``floor(sigma0)`` competing otherwise.
    Underdemanded games (``n_drivers <= r_spots``) come out at exactly 1
    through the same ratio.
    """
    worst = _worst_sigma(cfg, eps_int)
    c_worst = social_cost_pure(cfg, worst)
    c_opt = optimal_social_cost(cfg)
    n, r = cfg.n_drivers, cfg.r_spots
    bound = 1.0 / (1.0 - r / n) if n > r else math.inf
    return PoaReport(
        poa=c_worst / c_opt, worst_sigma=worst, c_worst=c_worst, c_opt=c_opt, bound=bound
    )


def poa_continuous(cfg: GameConfig) -> float:
    """PoA with the threshold left real-valued (no flooring).

    In the overdemand regime (``sigma0 < n_drivers``) the threshold terms
    cancel algebraically, leaving ``beta*n / (r + beta*(n - r))``, which is
    exactly independent of the excess cost. Used to separate the monotone
    trends of PoA from the flooring staircase.
    """
    n, r = cfg.n_drivers, cfg.r_spots
    if cfg.sigma0 >= n:
        return social_cost_pure(cfg, n) / optimal_social_cost(cfg)
    return cfg.beta * n / (r + cfg.beta * (n - r))


def poa_integer_case(cfg: GameConfig, eps_int: float = EPS_INT) -> float:
    """Closed-form PoA ``1 / (1 - (beta-1)*r / (beta*n))`` for integer thresholds.

    Only valid when ``sigma0`` is an integer in ``[r_spots + 1, n_drivers)``
    (the two-branch equilibrium regime with the threshold interior); raises
    otherwise.
    """
    n, r, s0 = cfg.n_drivers, cfg.r_spots, cfg.sigma0
    s_int = round(s0)
    if abs(s0 - s_int) >= eps_int or not (r + 1 <= s_int) or n <= s0:
        raise ValueError(
            "requires an integer sigma0 with r_spots + 1 <= sigma0 < n_drivers, "
            f"got sigma0={s0}, n_drivers={n}"
        )
    return 1.0 / (1.0 - (cfg.beta - 1.0) * r / (cfg.beta * n))


def poa_bound(cfg: GameConfig) -> float:
    """Strict upper bound ``1 / (1 - r_spots / n_drivers)`` on the PoA.

    Requires ``n_drivers > r_spots``.
    """
    n, r = cfg.n_drivers, cfg.r_spots
    if n <= r:
        raise ValueError(f"requires n_drivers > r_spots, got n={n}, r={r}")
    return 1.0 / (1.0 - r / n)


def pricing_thresholds(cfg: GameConfig) -> tuple[float, float]:
    """Sensitivity thresholds ``(beta_star, delta_star)`` of the PoA.

    ``beta_star = (delta*(n-r) + r) / r``: below it PoA increases with the
    private fee, above it PoA decreases (the fee is high enough that everyone
    competes). ``delta_star = r*(beta-1) / (n-r)``: below it PoA increases
    with the excess cost, above it PoA is insensitive to it. Both require
    ``n_drivers > r_spots``.
    """
    n, r = cfg.n_drivers, cfg.r_spots
    if n <= r:
        raise ValueError(f"requires n_drivers > r_spots, got n={n}, r={r}")
    beta_star = (cfg.delta * (n - r) + r) / r
    delta_star = r * (cfg.beta - 1.0) / (n - r)
    return beta_star, delta_star


def less_is_more_population(cfg_max: GameConfig) -> tuple[int, float]:
    """Demand level at which the safety-level strategy hits the optimal cost.

    When ``k`` drivers each play the safety-level competition probability
    ``sigma0 / n_drivers`` (derived from the demand upper bound), the
    expected number of competitors is ``k * sigma0 / n_drivers``; it equals
    the public capacity at ``k = delta * n_drivers / (gamma - 1)``. Returns
    that crossover rounded to the nearest integer together with the exact
    real value. Requires an interior safety-level equilibrium
    (``n_drivers > sigma0``).
    """
    n = cfg_max.n_drivers
    if n <= cfg_max.sigma0:
        raise ValueError(
            f"requires n_drivers > sigma0 for an interior equilibrium, "
            f"got n={n}, sigma0={cfg_max.sigma0}"
        )
    k_real = cfg_max.delta * n / (cfg_max.gamma - 1.0)
    return math.floor(k_real + 0.5), k_real
