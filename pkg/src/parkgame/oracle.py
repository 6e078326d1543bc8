"""Independent verification oracles.

Everything here recomputes model quantities by a route that does not share
code with the closed-form solvers: pure equilibria by checking both unilateral
deviations at every competitor count directly from the cost functions, mixed
expectations by literal binomial sums or full profile enumeration, Bayesian
costs by the literal double sum over demand realizations, and all of it again
by seeded Monte-Carlo simulation of the parking lottery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .model import BayesianConfig, GameConfig, cost_public_vec

#: Largest game for exhaustive per-count deviation certification.
BRUTE_FORCE_CAP = 200
#: Largest game for full 2^n profile enumeration.
ENUMERATION_CAP = 16


@dataclass(frozen=True)
class SimOutcome:
    """Monte-Carlo estimates for one mixed profile.

    ``std_error`` is the standard error of the social-cost mean (sample
    standard deviation over ``sqrt(n_samples)``); ``std_error_public`` is the
    delta-method standard error of the per-driver public-action cost, which
    is a ratio estimate (total cost paid by competitors over total number of
    competitors).
    """

    mean_cost_public_action: float
    mean_cost_private_action: float
    mean_social_cost: float
    n_samples: int
    std_error: float
    std_error_public: float


def brute_force_pure_equilibria(
    cfg: GameConfig, eps_cost: float = 1e-9, n_cap: int = BRUTE_FORCE_CAP
) -> set[int]:
    """Equilibrium competitor counts found by direct deviation checking.

    For every count sigma in 0..n_drivers, tests both unilateral switches
    against the raw cost functions: a competitor leaves if the private fee
    undercuts her expected cost, a bystander joins if competing as the
    (sigma+1)-th driver undercuts the fee. No threshold formula involved.
    """
    n = cfg.n_drivers
    if n > n_cap:
        raise ValueError(f"requires n_drivers <= {n_cap} for brute force, got {n}")
    w = cost_public_vec(cfg, np.arange(1, n + 1))  # w[k-1] = cost of competing among k
    c_priv = cfg.c_priv
    public_gains = np.zeros(n + 1, dtype=bool)
    private_gains = np.zeros(n + 1, dtype=bool)
    public_gains[1:] = w > c_priv + eps_cost
    private_gains[:-1] = w < c_priv - eps_cost
    stable = ~public_gains & ~private_gains
    return set(np.nonzero(stable)[0].tolist())


def exact_expected_public_cost(cfg: GameConfig, p_pub: float) -> float:
    """Expected cost of competing against n-1 opponents who mix with ``p_pub``.

    Literal binomial sum over the opponent count; at an interior mixed
    equilibrium this equals the private fee.
    """
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    n = cfg.n_drivers
    k = np.arange(n)
    w = cost_public_vec(cfg, k + 1.0)
    return float(binom.pmf(k, n - 1, p_pub) @ w)


def _profile_costs(cfg: GameConfig, sigma: np.ndarray) -> np.ndarray:
    r = cfg.r_spots
    winners = np.minimum(sigma, r)
    return (
        winners * cfg.c_pub_s
        + (sigma - winners) * cfg.c_pub_f
        + (cfg.n_drivers - sigma) * cfg.c_priv
    )


def exhaustive_social_cost(
    cfg: GameConfig, p_pub: float, n_cap: int = ENUMERATION_CAP
) -> float:
    """Expected social cost by enumerating all 2^n action profiles."""
    n = cfg.n_drivers
    if n > n_cap:
        raise ValueError(f"requires n_drivers <= {n_cap} for enumeration, got {n}")
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    total = 0.0
    for mask in range(1 << n):
        sigma = mask.bit_count()
        prob = p_pub**sigma * (1.0 - p_pub) ** (n - sigma)
        total += prob * float(_profile_costs(cfg, np.array(sigma)))
    return total


def exhaustive_expected_public_cost(
    cfg: GameConfig, p_pub: float, n_cap: int = ENUMERATION_CAP
) -> float:
    """Focal competitor's expected cost by enumerating the opponents' profiles."""
    n = cfg.n_drivers
    if n > n_cap:
        raise ValueError(f"requires n_drivers <= {n_cap} for enumeration, got {n}")
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    w = cost_public_vec(cfg, np.arange(1, n + 1))
    total = 0.0
    for mask in range(1 << (n - 1)):
        k = mask.bit_count()  # opponents competing alongside the focal driver
        prob = p_pub**k * (1.0 - p_pub) ** (n - 1 - k)
        total += prob * w[k]
    return total


def monte_carlo_profile(
    cfg: GameConfig, p_pub: float, n_samples: int, seed: int
) -> SimOutcome:
    """Simulate the parking lottery under the symmetric mixed profile.

    Each sample draws the competitor count from Binomial(n_drivers, p_pub);
    min(count, r_spots) uniformly chosen winners pay the public fee, the rest
    of the competitors pay the failed-attempt cost, bystanders pay the
    private fee. The aggregate statistics depend on the draw only through the
    count, so the uniform winner lottery needs no explicit sampling. The
    generator is PCG64 seeded with ``seed``; identical inputs reproduce the
    outcome bit for bit.

    The public-action mean weights every competitor in every sample equally
    (total cost over total competitors), which makes it converge to the focal
    driver's expected cost rather than the per-sample average, whose sample
    sizes are themselves random.
    """
    if n_samples < 1:
        raise ValueError(f"requires n_samples >= 1, got {n_samples}")
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    rng = np.random.Generator(np.random.PCG64(seed))
    sigma = rng.binomial(cfg.n_drivers, p_pub, size=n_samples)
    winners = np.minimum(sigma, cfg.r_spots)
    public_totals = winners * cfg.c_pub_s + (sigma - winners) * cfg.c_pub_f
    social = public_totals + (cfg.n_drivers - sigma) * cfg.c_priv

    mean_social = float(np.mean(social))
    if n_samples > 1:
        std_error = float(np.std(social, ddof=1) / np.sqrt(n_samples))
    else:
        std_error = 0.0

    competitors = int(np.sum(sigma))
    if competitors > 0:
        mean_public = float(np.sum(public_totals)) / competitors
        if n_samples > 1:
            residuals = public_totals - mean_public * sigma
            se_public = float(
                np.std(residuals, ddof=1)
                / (np.sqrt(n_samples) * np.mean(sigma))
            )
        else:
            se_public = 0.0
    else:
        mean_public = float("nan")
        se_public = float("nan")

    return SimOutcome(
        mean_cost_public_action=mean_public,
        mean_cost_private_action=cfg.c_priv,
        mean_social_cost=mean_social,
        n_samples=n_samples,
        std_error=std_error,
        std_error_public=se_public,
    )


def certification_grid(
    n_min: int = 2, n_max: int = BRUTE_FORCE_CAP
) -> Iterator[GameConfig]:
    """Standard certification grid: small games crossed with the charging grid.

    Spot counts cover the under-, half-, quarter- and fully-supplied cases
    for every population size.
    """
    if not 2 <= n_min <= n_max <= BRUTE_FORCE_CAP:
        raise ValueError(
            f"requires 2 <= n_min <= n_max <= {BRUTE_FORCE_CAP}, "
            f"got n_min={n_min}, n_max={n_max}"
        )
    for n in range(n_min, n_max + 1):
        spot_counts = sorted({1, math.ceil(n / 4), math.ceil(n / 2), n})
        for beta in (1.5, 2.0, 3.0, 5.0, 8.0):
            for delta in (0.5, 1.0, 2.0, 4.0):
                for r in spot_counts:
                    yield GameConfig(
                        n_drivers=n, r_spots=r, beta=beta, gamma=beta + delta
                    )


def certify_config(
    cfg: GameConfig, eps_cost: float = 1e-9, sigma0_offset: float = 0.0
) -> list[str]:
    """Cross-check one game's closed-form equilibria against the oracles.

    Verifies that the threshold characterization, the brute-force deviation
    scan, and the potential's local minimizers all name the same competitor
    counts, and that the potential's increments reproduce the deviating
    driver's cost change. ``sigma0_offset`` feeds a shifted threshold into
    the closed-form side; nonzero values are a negative-control hook that a
    healthy verifier must flag.
    """
    from .equilibria import equilibria_for_threshold, potential_curve, potential_minimizers

    label = (
        f"GameConfig(n_drivers={cfg.n_drivers}, r_spots={cfg.r_spots}, "
        f"beta={cfg.beta}, gamma={cfg.gamma})"
    )
    failures = []
    theorem = equilibria_for_threshold(
        cfg.n_drivers, cfg.r_spots, cfg.sigma0 + sigma0_offset
    ).sigma_values()
    brute = brute_force_pure_equilibria(cfg, eps_cost=eps_cost)
    if theorem != brute:
        failures.append(
            f"{label}: closed-form equilibria {sorted(theorem)} != "
            f"brute force {sorted(brute)}"
        )
    minima = potential_minimizers(cfg, eps_cost=eps_cost)
    if minima != brute:
        failures.append(
            f"{label}: potential minimizers {sorted(minima)} != "
            f"brute force {sorted(brute)}"
        )
    phi = potential_curve(cfg)
    w = cost_public_vec(cfg, np.arange(1, cfg.n_drivers + 1))
    worst = float(np.max(np.abs(np.diff(phi) - (w - cfg.c_priv))))
    if worst > 1e-9:
        failures.append(
            f"{label}: potential increment mismatch {worst:.3e} exceeds 1e-9"
        )
    return failures


def bayesian_oracle_cost(bcfg: BayesianConfig, p_pub: float) -> float:
    """Active driver's expected public cost by the literal double sum.

    Outer sum over the number of active opponents (Binomial on p_act), inner
    sum over how many of them compete (Binomial on p_pub). Quadratic in
    n_drivers by construction; certifies the thinned single-sum fast path.
    """
    if not 0.0 <= p_pub <= 1.0:
        raise ValueError(f"requires 0 <= p_pub <= 1, got {p_pub}")
    cfg = bcfg.game
    n = cfg.n_drivers
    w = cost_public_vec(cfg, np.arange(1, n + 1))
    activity_pmf = binom.pmf(np.arange(n), n - 1, bcfg.p_act)
    total = 0.0
    for n_act in range(n):
        k = np.arange(n_act + 1)
        total += float(activity_pmf[n_act] * (binom.pmf(k, n_act, p_pub) @ w[k]))
    return total
