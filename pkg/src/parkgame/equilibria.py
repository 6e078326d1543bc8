"""Equilibrium solvers for the parking spot selection game.

Pure equilibria follow from a single threshold ``sigma0``: below it a
bystander gains by joining the competition, above it a competitor gains by
leaving. The game is an exact potential game, so the pure equilibria are also
recoverable as the local minima of a scalar potential over the competitor
count. The unique symmetric mixed equilibrium makes each driver indifferent
between the two actions; the same indifference logic extends to the Bayesian
variant (random demand) and to the safety-level strategy of the pre-Bayesian
variant (unknown demand bounded by ``n_drivers``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Literal

import numpy as np
from scipy.stats import binom

from .model import (
    BayesianConfig,
    GameConfig,
    cost_private,
    cost_public,
    cost_public_vec,
)

#: Absolute tolerance for deciding that a real threshold is an integer.
EPS_INT = 1e-9
#: Absolute tolerance for cost comparisons in deviation checks.
EPS_COST = 1e-9


class Regime(Enum):
    """Which branch of the pure-equilibrium characterization applies."""

    ALL_COMPETE = "AllCompete"
    NON_INTEGER_THRESHOLD = "NonIntegerThreshold"
    INTEGER_THRESHOLD = "IntegerThreshold"


class Method(Enum):
    """Provenance of a mixed equilibrium probability."""

    CLOSED_FORM = "ClosedForm"
    ROOT_FOUND = "RootFound"


@dataclass(frozen=True)
class EquilibriumBranch:
    sigma_ne: int
    profile_count: int  # exact count of action profiles, arbitrary precision


@dataclass(frozen=True)
class EquilibriumSet:
    """Complete description of the pure Nash equilibria of one game."""

    regime: Regime
    branches: tuple[EquilibriumBranch, ...]

    def sigma_values(self) -> set[int]:
        return {b.sigma_ne for b in self.branches}


@dataclass(frozen=True)
class MixedEquilibrium:
    """Symmetric mixed equilibrium: compete with probability ``p_pub``."""

    p_pub: float
    method: Method

    @property
    def p_priv(self) -> float:
        return 1.0 - self.p_pub


class BoundaryEquilibriumError(ValueError):
    """Raised when a root is requested but the equilibrium is the boundary
    ``p_pub = 1`` (no interior root exists because ``n_drivers <= sigma0``)."""


Action = Literal["public", "private"]


def deviation_incentive(
    cfg: GameConfig, sigma_pub: int, action: Action, eps_cost: float = EPS_COST
) -> bool:
    """Whether a driver playing ``action`` strictly gains by switching.

    With ``sigma_pub`` competitors in total, a competitor compares her
    expected cost against the private fee, and a bystander compares the
    private fee against the cost of joining as the ``sigma_pub + 1``-th
    competitor. Comparisons use the absolute tolerance ``eps_cost``.
    """
    if action == "public":
        if sigma_pub < 1:
            raise ValueError("requires sigma_pub >= 1 for a public-action deviator")
        if sigma_pub > cfg.n_drivers:
            raise ValueError(f"requires sigma_pub <= n_drivers, got {sigma_pub}")
        return cost_public(cfg, sigma_pub) > cost_private(cfg) + eps_cost
    if action == "private":
        if not 0 <= sigma_pub <= cfg.n_drivers - 1:
            raise ValueError(
                "requires 0 <= sigma_pub <= n_drivers - 1 for a private-action deviator"
            )
        return cost_public(cfg, sigma_pub + 1) < cost_private(cfg) - eps_cost
    raise ValueError(f"unknown action {action!r}")


def equilibria_for_threshold(
    n: int, r: int, sigma0: float, eps_int: float = EPS_INT
) -> EquilibriumSet:
    """Branch selection of :func:`pure_equilibria` for an explicit threshold.

    Split out so verification code can feed a deliberately corrupted
    threshold through the same logic as a negative control.
    """
    s_int = round(sigma0)
    if abs(sigma0 - s_int) < eps_int and r + 1 <= s_int <= n:
        return EquilibriumSet(
            regime=Regime.INTEGER_THRESHOLD,
            branches=(
                EquilibriumBranch(s_int, math.comb(n, s_int)),
                EquilibriumBranch(s_int - 1, math.comb(n, s_int - 1)),
            ),
        )
    if n <= sigma0:
        return EquilibriumSet(
            regime=Regime.ALL_COMPETE, branches=(EquilibriumBranch(n, 1),)
        )
    s_floor = math.floor(sigma0)
    return EquilibriumSet(
        regime=Regime.NON_INTEGER_THRESHOLD,
        branches=(EquilibriumBranch(s_floor, math.comb(n, s_floor)),),
    )


def pure_equilibria(cfg: GameConfig, eps_int: float = EPS_INT) -> EquilibriumSet:
    """All pure Nash equilibria, grouped by competitor count.

    Three regimes, keyed on the threshold ``sigma0``:

    * ``sigma0 >= n_drivers``: everyone competes; a single profile.
    * ``sigma0 < n_drivers`` and non-integer: the unique equilibrium count is
      ``floor(sigma0)``, realized by C(n, floor(sigma0)) profiles.
    * ``sigma0`` integer with ``sigma0 <= n_drivers``: the indifference at
      the threshold is exact, so both ``sigma0`` and ``sigma0 - 1`` are
      equilibrium counts. This includes the boundary ``sigma0 = n_drivers``,
      where the count ``n_drivers - 1`` is an equilibrium alongside the
      all-compete profile.

    ``sigma0`` is declared integer when within ``eps_int`` of one, so that
    floating-point noise cannot flip the regime.
    """
    return equilibria_for_threshold(cfg.n_drivers, cfg.r_spots, cfg.sigma0, eps_int)


def potential_curve(cfg: GameConfig) -> np.ndarray:
    """Exact potential evaluated at every competitor count 0..n_drivers.

    For counts beyond capacity the potential involves the partial harmonic
    sum over ``r_spots + 1 .. m``, accumulated term by term (no asymptotic
    approximation) so that successive differences reproduce the deviating
    driver's cost change exactly.
    """
    n, r, c = cfg.n_drivers, cfg.r_spots, cfg.c_pub_s
    m = np.arange(n + 1, dtype=float)
    phi = c * (cfg.beta * n - (cfg.beta - 1.0) * m)
    if n > r:
        tail = np.arange(r + 1, n + 1, dtype=float)
        harmonic = np.cumsum(1.0 / tail)
        phi[r + 1 :] = c * (
            cfg.beta * n
            + cfg.delta * tail
            - r * (cfg.gamma - 1.0)
            + r * (1.0 - cfg.gamma) * harmonic
        )
    return phi


def potential(cfg: GameConfig, m: int) -> float:
    """Exact potential of the meta-profile with ``m`` competitors."""
    if not 0 <= m <= cfg.n_drivers:
        raise ValueError(f"requires 0 <= m <= n_drivers, got m={m}")
    n, r, c = cfg.n_drivers, cfg.r_spots, cfg.c_pub_s
    if m <= r:
        return c * (cfg.beta * n - (cfg.beta - 1.0) * m)
    harmonic = float(np.sum(1.0 / np.arange(r + 1, m + 1, dtype=float)))
    return c * (
        cfg.beta * n
        + cfg.delta * m
        - r * (cfg.gamma - 1.0)
        + r * (1.0 - cfg.gamma) * harmonic
    )


def potential_minimizers(cfg: GameConfig, eps_cost: float = EPS_COST) -> set[int]:
    """Local minimizers of the potential over 0..n_drivers.

    Ties within ``eps_cost * c_pub_s`` count as minima, matching the
    tolerance of the deviation checks (an exact threshold tie makes two
    adjacent counts simultaneously stable).
    """
    phi = potential_curve(cfg)
    tol = eps_cost * cfg.c_pub_s
    left_ok = np.empty(len(phi), dtype=bool)
    right_ok = np.empty(len(phi), dtype=bool)
    left_ok[0] = True
    left_ok[1:] = phi[1:] <= phi[:-1] + tol
    right_ok[-1] = True
    right_ok[:-1] = phi[:-1] <= phi[1:] + tol
    return set(np.nonzero(left_ok & right_ok)[0].tolist())


def _public_coeffs(cfg: GameConfig) -> np.ndarray:
    # Expected public cost (in units of c_pub_s) when k opponents compete,
    # for k = 0 .. n_drivers - 1; the focal driver is the (k+1)-th competitor.
    k = np.arange(cfg.n_drivers)
    win = np.minimum(1.0, cfg.r_spots / (k + 1.0))
    return cfg.gamma - win * (cfg.gamma - 1.0)


def f_indifference(cfg: GameConfig, p_pub: float) -> float:
    """Indifference gap (in units of ``c_pub_s``) under complete information.

    The expected cost of competing against n-1 opponents who each compete
    with probability ``p_pub``, minus the private cost. Strictly increasing
    in ``p_pub`` whenever ``n_drivers > r_spots``; the symmetric mixed
    equilibrium is its root.
    """
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    n = cfg.n_drivers
    pmf = binom.pmf(np.arange(n), n - 1, p_pub)
    return -cfg.beta + float(pmf @ _public_coeffs(cfg))


def h_indifference(bcfg: BayesianConfig, p_pub: float) -> float:
    """Indifference gap under Bernoulli(``p_act``) demand.

    Conditioning on the focal driver being active, each opponent competes
    independently with probability ``p_act * p_pub``, so the Bayesian double
    expectation collapses to a single binomial sum with that thinned
    probability. The literal double sum is kept in the oracle module as the
    cross-check.
    """
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    cfg = bcfg.game
    n = cfg.n_drivers
    pmf = binom.pmf(np.arange(n), n - 1, bcfg.p_act * p_pub)
    return -cfg.beta + float(pmf @ _public_coeffs(cfg))


def bisect_root(
    fn: Callable[[float], float],
    lo: float = 1e-12,
    hi: float = 1.0 - 1e-12,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Bisection root of a continuous increasing function on [lo, hi].

    Stops when the bracket width or the function value drops below ``tol``.
    Unconditionally convergent for the indifference functions here, which
    are strictly increasing with a sign change on the bracket.
    """
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo > 0.0 or f_hi < 0.0:
        raise ValueError(
            f"requires a sign change on the bracket, got f({lo})={f_lo}, f({hi})={f_hi}"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if abs(f_mid) < tol or hi - lo < tol:
            return mid
        if f_mid < 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def mixed_equilibrium(
    cfg: GameConfig, method: Method = Method.CLOSED_FORM
) -> MixedEquilibrium:
    """The unique symmetric mixed Nash equilibrium.

    Closed form: ``p_pub = 1`` when ``n_drivers <= sigma0``, else
    ``sigma0 / n_drivers``. Root finding bisects the indifference function
    and is only available when an interior root exists
    (``n_drivers > sigma0``); otherwise :class:`BoundaryEquilibriumError`
    signals the boundary equilibrium.
    """
    n, s0 = cfg.n_drivers, cfg.sigma0
    if method is Method.CLOSED_FORM:
        p = 1.0 if n <= s0 else s0 / n
        return MixedEquilibrium(p_pub=p, method=Method.CLOSED_FORM)
    if method is Method.ROOT_FOUND:
        if n <= s0:
            raise BoundaryEquilibriumError(
                "no interior root: n_drivers <= sigma0, "
                "the equilibrium is the boundary p_pub = 1"
            )
        p = bisect_root(lambda q: f_indifference(cfg, q))
        return MixedEquilibrium(p_pub=p, method=Method.ROOT_FOUND)
    raise ValueError(f"unknown method {method!r}")


def bayesian_equilibrium(bcfg: BayesianConfig) -> MixedEquilibrium:
    """Symmetric equilibrium strategy of the active drivers under random demand.

    When the expected number of active drivers ``n_drivers * p_act`` does not
    exceed ``sigma0``, competing is dominant and ``p_pub = 1``. Otherwise the
    indifference root is ``sigma0 / (n_drivers * p_act)``, which the thinning
    identity reduces to the complete-information problem.
    """
    if bcfg.p_act == 0.0:
        raise ValueError(
            "requires p_act > 0: with no active drivers the equilibrium is undefined"
        )
    cfg = bcfg.game
    expected_active = cfg.n_drivers * bcfg.p_act
    if expected_active <= cfg.sigma0:
        return MixedEquilibrium(p_pub=1.0, method=Method.CLOSED_FORM)
    p = min(1.0, cfg.sigma0 / expected_active)
    return MixedEquilibrium(p_pub=p, method=Method.CLOSED_FORM)


def safety_level_equilibrium(cfg_max: GameConfig) -> MixedEquilibrium:
    """Safety-level strategy when only an upper bound on demand is known.

    With non-decreasing resource costs, minimizing the worst-case expected
    cost over all opponent counts up to ``n_drivers`` coincides with the
    symmetric mixed equilibrium of the complete-information game at that
    upper bound.
    """
    return mixed_equilibrium(cfg_max, Method.CLOSED_FORM)
