"""Monte Carlo oracles that validate the analytic shot formulas.

Each simulator replays the physical acceptance process of a test at a
known ground truth and estimates the probability the formulas predict:
miss rates for the inverse and swap tests, rejection rates for the
chi-square and binomial tests.  Randomness comes exclusively from the
splitmix64 substreams in `rng`, so a (seed, trials) configuration
reproduces bit-identical results on any platform and any chunking.

Sampling contracts (fixed, documented, test-pinned):
  Bernoulli(p)      one uniform u, success iff u < p.
  Binomial(n, p)    count of n consecutive stream uniforms below p.
  Multinomial(N, q) sequential binomial conditioning: bins 0..k-2 in
                    order draw Binomial(remaining, q_i / tail_i) from
                    the trial stream, the last bin takes the remainder.
  Inverse/swap      each trial consumes exactly n_shots uniforms.

A dense-grid Chernoff oracle lives here too: it evaluates the objective
through the eigenbasis overlap matrix, a different computational route
from the production minimizer, so the two cross-validate each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BaselineNotAboveTarget, DomainError
from .rng import TrialStream, sub_seeds, uniform_block
from .states import PureState, _support_mask
from .stat_power import (
    Distribution,
    binomial_rejection_threshold,
    chi2_quantile,
    chisq_validity,
)

__all__ = [
    "RNG_ALGORITHM",
    "McConfig",
    "McResult",
    "simulate_inverse_miss_rate",
    "simulate_swap_miss_rate",
    "simulate_chisq_power",
    "simulate_binomial_detection",
    "qcb_grid_oracle",
]

RNG_ALGORITHM = "splitmix64"

# Cap on elements held per vectorized chunk; results do not depend on it.
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class McConfig:
    """Trial count and master seed; the RNG itself is fixed by the package."""

    trials: int
    seed: int = 20_260_822

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class McResult:
    """Estimated probability with its binomial standard error and 95% CI."""

    estimate: float
    std_error: float
    trials: int
    ci_low: float
    ci_high: float
    warnings: tuple[str, ...] = ()


def _finish(hits: int, config: McConfig, warnings: tuple[str, ...] = ()) -> McResult:
    n = config.trials
    est = hits / n
    se = math.sqrt(est * (1.0 - est) / n)
    return McResult(
        estimate=est,
        std_error=se,
        trials=n,
        ci_low=max(0.0, est - 1.96 * se),
        ci_high=min(1.0, est + 1.96 * se),
        warnings=warnings,
    )


def _all_below_rate(threshold: float, n_shots: int, config: McConfig) -> int:
    """Trials in which every one of n_shots uniforms falls below threshold."""
    hits = 0
    chunk = max(1, _CHUNK_ELEMENTS // max(1, n_shots))
    done = 0
    while done < config.trials:
        take = min(chunk, config.trials - done)
        seeds = sub_seeds(config.seed, done, take)
        u = uniform_block(seeds, 0, n_shots)
        hits += int(np.sum(np.all(u < threshold, axis=1)))
        done += take
    return hits


def _count_below(threshold: float, n_shots: int, config: McConfig) -> np.ndarray:
    """Per-trial count of uniforms below threshold, one block per trial."""
    counts = np.empty(config.trials, dtype=np.int64)
    chunk = max(1, _CHUNK_ELEMENTS // max(1, n_shots))
    done = 0
    while done < config.trials:
        take = min(chunk, config.trials - done)
        seeds = sub_seeds(config.seed, done, take)
        u = uniform_block(seeds, 0, n_shots)
        counts[done : done + take] = np.sum(u < threshold, axis=1)
        done += take
    return counts


def simulate_inverse_miss_rate(fid: float, n_shots: int, config: McConfig) -> McResult:
    """Miss rate of the inverse test: every shot accepts although F < 1.

    Each shot accepts with probability F; the test only flags a defect on
    the first reject, so a miss is n_shots straight accepts.  The
    estimate should sit within sampling error of F^n_shots.
    """
    if not 0.0 <= fid < 1.0:
        raise DomainError(f"fidelity must lie in [0, 1) to have misses, got {fid}")
    if n_shots < 1:
        raise DomainError(f"n_shots must be >= 1, got {n_shots}")
    return _finish(_all_below_rate(fid, n_shots, config), config)


def simulate_swap_miss_rate(fid: float, n_shots: int, config: McConfig) -> McResult:
    """Miss rate of the swap test: all ancilla reads come up 0.

    Per-shot acceptance is 1/2 + F/2; expect (1/2 + F/2)^n_shots.
    """
    if not 0.0 <= fid < 1.0:
        raise DomainError(f"fidelity must lie in [0, 1) to have misses, got {fid}")
    if n_shots < 1:
        raise DomainError(f"n_shots must be >= 1, got {n_shots}")
    return _finish(_all_below_rate(0.5 + 0.5 * fid, n_shots, config), config)


def _multinomial_counts(stream: TrialStream, n_shots: int, probs: np.ndarray) -> np.ndarray:
    counts = np.zeros(probs.size, dtype=np.int64)
    remaining = n_shots
    tail = 1.0
    for i in range(probs.size - 1):
        if remaining == 0:
            break
        p_cond = 1.0 if tail <= probs[i] else probs[i] / tail
        drawn = int(np.sum(stream.uniforms(remaining) < p_cond))
        counts[i] = drawn
        remaining -= drawn
        tail = max(tail - probs[i], 0.0)
    counts[probs.size - 1] = remaining
    return counts


def simulate_chisq_power(p, q, n_shots: int, alpha: float, config: McConfig) -> McResult:
    """Rejection rate of the chi-square test when data follow p and q is tested.

    Each trial samples a multinomial of n_shots outcomes from p, forms
    the Pearson statistic against q, and rejects above the central
    1 - alpha quantile at k - 1 degrees of freedom.  With p = q this
    estimates the realized Type I rate; with p != q, the power.  Results
    carry the chi-square validity warnings for the planned shot count.
    """
    if n_shots < 1:
        raise DomainError(f"n_shots must be >= 1, got {n_shots}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    p_dist = p if isinstance(p, Distribution) else Distribution(np.asarray(p))
    q_dist = q if isinstance(q, Distribution) else Distribution(np.asarray(q))
    if p_dist.k != q_dist.k:
        raise DomainError(f"bin count mismatch: {p_dist.k} vs {q_dist.k}")
    crit = chi2_quantile(1.0 - alpha, float(q_dist.k - 1))
    expected = n_shots * q_dist.probs
    rejections = 0
    for trial in range(config.trials):
        stream = TrialStream(config.seed, trial)
        counts = _multinomial_counts(stream, n_shots, p_dist.probs)
        stat = float(np.sum((counts - expected) ** 2 / expected))
        if stat > crit:
            rejections += 1
    return _finish(rejections, config, warnings=chisq_validity(n_shots, q_dist))


def simulate_binomial_detection(
    q0: float, q1: float, n_shots: int, alpha: float, config: McConfig
) -> McResult:
    """Detection rate of the exact binomial test when the true rate is q1.

    Each trial draws the all-zeros count from Binomial(n_shots, q1) and
    applies the one-sample decision against baseline q0.  The rule is
    monotone in the count, so trials are classified by the precomputed
    rejection threshold.
    """
    if n_shots < 1:
        raise DomainError(f"n_shots must be >= 1, got {n_shots}")
    if not 0.0 < q0 <= 1.0:
        raise DomainError(f"baseline q0 must lie in (0, 1], got {q0}")
    if not 0.0 <= q1 <= 1.0:
        raise DomainError(f"true rate q1 must lie in [0, 1], got {q1}")
    if q1 > q0:
        raise BaselineNotAboveTarget(f"true rate q1={q1} exceeds baseline q0={q0}")
    threshold = binomial_rejection_threshold(n_shots, q0, alpha)
    counts = _count_below(q1, n_shots, config)
    return _finish(int(np.sum(counts <= threshold)), config)


def qcb_grid_oracle(rho, sigma, grid_points: int = 100_001) -> tuple[float, float]:
    """Brute-force Chernoff minimum over a uniform s-grid with endpoints.

    Evaluates Tr(rho^s sigma^(1-s)) through the spectral overlap matrix
    O_ij = |<u_i|v_j>|^2 as sum_ij l_i^s O_ij m_j^(1-s), vectorized over
    the whole grid.  Zero eigenvalues contribute nothing at any s (the
    0^0 = 0 support convention).  Returns (q_min, s_at_min).
    """
    if grid_points < 2:
        raise DomainError(f"grid needs at least 2 points, got {grid_points}")
    dm_rho = rho.to_density() if isinstance(rho, PureState) else rho
    dm_sigma = sigma.to_density() if isinstance(sigma, PureState) else sigma
    if dm_rho.dim != dm_sigma.dim:
        raise DomainError(f"dimension mismatch: {dm_rho.dim} vs {dm_sigma.dim}")
    eig_r = dm_rho.eigensystem()
    eig_s = dm_sigma.eigensystem()
    overlap = np.abs(eig_r.vectors.conj().T @ eig_s.vectors) ** 2
    s = np.linspace(0.0, 1.0, grid_points)

    def spectrum_powers(vals: np.ndarray, exponents: np.ndarray) -> np.ndarray:
        out = np.zeros((vals.size, exponents.size))
        pos = _support_mask(vals)  # rank cut, same convention as qcb_q
        if np.any(pos):
            out[pos, :] = np.exp(np.outer(np.log(vals[pos]), exponents))
        return out

    lam_pow = spectrum_powers(eig_r.values, s)
    mu_pow = spectrum_powers(eig_s.values, 1.0 - s)
    g = np.einsum("ig,ij,jg->g", lam_pow, overlap, mu_pow)
    best = int(np.argmin(g))
    q = float(min(1.0, max(0.0, g[best])))
    return q, float(s[best])
