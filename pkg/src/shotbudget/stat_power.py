"""Chi-square and binomial power machinery for output-distribution tests.

The chi-square path: a discrepancy between an observed distribution p and
a reference q is summarized by w^2 = sum (p_i - q_i)^2 / q_i, the test
detects it at significance alpha and power 1 - beta once the shot count
reaches lambda / w^2, where lambda is the noncentrality at which the
noncentral chi-square clears the central critical value with the target
power.  Hellinger distance connects w^2 to fidelity: w^2 >= (1/4) d_H^4
always, w^2 ~= 8 d_H^2 <= 8 (1 - sqrt(F)) for small discrepancies, and
(1/4)(1 - sqrt(F))^2 for the distribution pair that attains the fidelity
bound.

The binomial path plans and decides a success-probability drop from a
baseline q0 to a degraded q1: planning uses the two-sample normal
approximation (one-sided, no continuity correction); the decision applies
the exact one-sample binomial test, which is the sharper tool once the
baseline is known analytically.  The planner is therefore conservative
for the one-sample use.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BaselineNotAboveTarget,
    DegenerateStates,
    DimensionMismatch,
    DomainError,
    NoConvergence,
    ZeroExpectedBin,
)
from .numerics import normal_quantile, regularized_gamma_p, solve_increasing
from . import tolerances as tol

__all__ = [
    "Distribution",
    "ChiSquarePlan",
    "BinomialPlan",
    "chi2_distance",
    "hellinger_distance",
    "bhattacharyya_coefficient",
    "chi2_cdf",
    "chi2_quantile",
    "noncentral_chi2_cdf",
    "lambda_noncentral",
    "shots_chisq",
    "w2_fidelity_attaining",
    "w2_small_discrepancy",
    "pearson_statistic",
    "chisq_validity",
    "two_proportion_shots",
    "binomial_decision",
    "binomial_rejection_threshold",
    "parse_distribution",
    "load_distribution",
]


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability distribution over k >= 2 measurement bins.

    Entries must be nonnegative and sum to 1 within 1e-8; the stored
    vector is renormalized to sum to 1 exactly.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64).reshape(-1)
        if probs.size < 2:
            raise DomainError(f"a distribution needs at least 2 bins, got {probs.size}")
        if np.any(probs < 0.0):
            raise DomainError(f"negative probability {float(probs.min())!r}")
        total = float(probs.sum())
        if abs(total - 1.0) > tol.DISTRIBUTION_SUM_ATOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1 within {tol.DISTRIBUTION_SUM_ATOL:.1e}")
        object.__setattr__(self, "probs", probs / total)

    @property
    def k(self) -> int:
        return self.probs.size


def _as_probs(dist) -> np.ndarray:
    return dist.probs if isinstance(dist, Distribution) else Distribution(np.asarray(dist)).probs


def chi2_distance(p, q) -> float:
    """Chi-square discrepancy w^2 = sum (p_i - q_i)^2 / q_i against reference q."""
    pa, qa = _as_probs(p), _as_probs(q)
    if pa.size != qa.size:
        raise DimensionMismatch(f"bin count mismatch: {pa.size} vs {qa.size}")
    if np.any(qa == 0.0):
        raise ZeroExpectedBin(f"reference bin {int(np.argmin(qa))} has zero probability")
    return float(np.sum((pa - qa) ** 2 / qa))


def bhattacharyya_coefficient(p, q) -> float:
    """Overlap sum of sqrt(p_i q_i); equals 1 only for identical distributions."""
    pa, qa = _as_probs(p), _as_probs(q)
    if pa.size != qa.size:
        raise DimensionMismatch(f"bin count mismatch: {pa.size} vs {qa.size}")
    return min(1.0, float(np.sum(np.sqrt(pa * qa))))


def hellinger_distance(p, q) -> float:
    """Hellinger distance sqrt(1 - sum sqrt(p_i q_i))."""
    return math.sqrt(max(0.0, 1.0 - bhattacharyya_coefficient(p, q)))


def chi2_cdf(x: float, df: float) -> float:
    """Central chi-square CDF via the regularized lower incomplete gamma."""
    if df <= 0.0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    if x <= 0.0:
        return 0.0
    return regularized_gamma_p(df / 2.0, x / 2.0)


def chi2_quantile(prob: float, df: float) -> float:
    """Central chi-square quantile, solved by bisection on the CDF."""
    if not 0.0 < prob < 1.0:
        raise DomainError(f"quantile probability must lie in (0, 1), got {prob}")
    hi = df + 10.0 * math.sqrt(2.0 * df) + 10.0
    return solve_increasing(lambda x: chi2_cdf(x, df), prob, 0.0, hi)


def noncentral_chi2_cdf(x: float, df: float, noncentrality: float, _cache: dict | None = None) -> float:
    """Noncentral chi-square CDF as a Poisson mixture of central CDFs.

    F(x; df, lam) = sum_j Pois(lam/2)(j) * F_central(x; df + 2j), summed
    outward from the Poisson mode in log space until all but 1e-12 of the
    mixture weight is covered, which keeps it stable out to lam ~= 1e4.
    """
    if noncentrality < 0.0:
        raise DomainError(f"noncentrality must be nonnegative, got {noncentrality}")
    if x <= 0.0:
        return 0.0
    if noncentrality == 0.0:
        return chi2_cdf(x, df)
    cache = _cache if _cache is not None else {}

    def central_term(j: int) -> float:
        if j not in cache:
            cache[j] = chi2_cdf(x, df + 2.0 * j)
        return cache[j]

    half = noncentrality / 2.0
    log_half = math.log(half)

    def log_weight(j: int) -> float:
        return -half + j * log_half - math.lgamma(j + 1.0)

    mode = int(half)
    total = 0.0
    weight_covered = 0.0
    down, up = mode, mode + 1
    for _ in range(tol.GAMMA_MAX_ITER):
        advanced = False
        if down >= 0:
            w = math.exp(log_weight(down))
            total += w * central_term(down)
            weight_covered += w
            down -= 1
            advanced = True
        if weight_covered < 1.0 - tol.POISSON_TAIL:
            w = math.exp(log_weight(up))
            total += w * central_term(up)
            weight_covered += w
            up += 1
            advanced = True
        if weight_covered >= 1.0 - tol.POISSON_TAIL or not advanced:
            return min(1.0, total)
    raise NoConvergence(f"Poisson mixture did not cover its mass for lam={noncentrality}")


def lambda_noncentral(df: int, alpha: float, power: float) -> float:
    """Noncentrality at which the chi-square test reaches the target power.

    Solves P[ncx2(df, lam) > q_{1-alpha}(df)] = power for lam, with the
    critical value taken from the central distribution.  At lam = 0 the
    left side equals alpha, so power must exceed alpha.
    """
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if not alpha < power < 1.0:
        raise DomainError(f"power must lie in (alpha, 1), got {power}")
    crit = chi2_quantile(1.0 - alpha, float(df))
    cache: dict = {}

    def attained_power(lam: float) -> float:
        return 1.0 - noncentral_chi2_cdf(crit, float(df), lam, _cache=cache)

    return solve_increasing(attained_power, power, 0.0, 8.0)


@dataclass(frozen=True)
class ChiSquarePlan:
    """Chi-square shot plan: N = ceil(lambda / w^2) for the given test size."""

    w2: float
    bins: int
    alpha: float
    beta: float
    noncentrality: float
    raw: float
    shots: int


def shots_chisq(w2: float, bins: int, alpha: float, beta: float) -> ChiSquarePlan:
    """Shots for the chi-square test to detect discrepancy w^2.

    Raises DegenerateStates when w2 = 0: identical distributions produce
    no detectable effect at any shot count.
    """
    if bins < 2:
        raise DomainError(f"need at least 2 bins, got {bins}")
    if w2 < 0.0:
        raise DomainError(f"w^2 must be nonnegative, got {w2}")
    if w2 == 0.0:
        raise DegenerateStates("w^2 = 0: no discrepancy to detect")
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    lam = lambda_noncentral(bins - 1, alpha, 1.0 - beta)
    raw = lam / w2
    return ChiSquarePlan(
        w2=w2, bins=bins, alpha=alpha, beta=beta, noncentrality=lam,
        raw=raw, shots=max(1, math.ceil(raw)),
    )


def w2_fidelity_attaining(fid: float) -> float:
    """w^2 of the distribution pair attaining the fidelity bound: (1-sqrt(F))^2 / 4."""
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    return 0.25 * (1.0 - math.sqrt(fid)) ** 2


def w2_small_discrepancy(fid: float) -> float:
    """Small-discrepancy ceiling w^2 ~= 8 d_H^2 <= 8 (1 - sqrt(F))."""
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    return 8.0 * (1.0 - math.sqrt(fid))


def pearson_statistic(observed, expected) -> tuple[float, int]:
    """Pearson chi-square statistic of observed counts against expected probs.

    Returns (statistic, degrees of freedom = k - 1).
    """
    counts = np.asarray(observed, dtype=np.float64).reshape(-1)
    qa = _as_probs(expected)
    if counts.size != qa.size:
        raise DimensionMismatch(f"bin count mismatch: {counts.size} vs {qa.size}")
    if np.any(counts < 0.0):
        raise DomainError("observed counts must be nonnegative")
    if np.any(qa == 0.0):
        raise ZeroExpectedBin(f"expected bin {int(np.argmin(qa))} has zero probability")
    n = float(counts.sum())
    if n <= 0.0:
        raise DomainError("observed counts sum to zero")
    exp_counts = n * qa
    stat = float(np.sum((counts - exp_counts) ** 2 / exp_counts))
    return stat, qa.size - 1


def chisq_validity(n_shots: float, expected) -> tuple[str, ...]:
    """Cochran-style validity heuristics for the chi-square approximation.

    Advisory only: flags shot counts below 13 and bins whose expected
    count N q_i falls below 5.
    """
    qa = _as_probs(expected)
    warnings: list[str] = []
    if n_shots < 13:
        warnings.append(f"only {n_shots:g} shots planned; chi-square approximation wants at least 13")
    low = np.flatnonzero(n_shots * qa < 5.0)
    if low.size:
        shown = ", ".join(str(int(i)) for i in low[:8])
        more = "" if low.size <= 8 else f" (+{low.size - 8} more)"
        warnings.append(
            f"expected count below 5 in {low.size} of {qa.size} bins ({shown}{more}); "
            "merge bins or raise shots"
        )
    return tuple(warnings)


@dataclass(frozen=True)
class BinomialPlan:
    """Two-proportion plan for detecting a success-rate drop q0 -> q1."""

    q0: float
    q1: float
    alpha: float
    beta: float
    one_sided: bool
    raw: float
    shots: int


def two_proportion_shots(
    q0: float, q1: float, alpha: float, beta: float, *, one_sided: bool = True
) -> BinomialPlan:
    """Shots for a normal-approximation two-proportion test of q0 vs q1.

    n = [z_{1-a} sqrt(2 pbar (1-pbar)) + z_{1-b} sqrt(q0(1-q0) + q1(1-q1))]^2
        / (q0 - q1)^2,  pbar = (q0 + q1)/2,
    with no continuity correction.  One-sided by default; the two-sided
    variant swaps z_{1-a} for z_{1-a/2}.
    """
    if not 0.0 <= q1 <= 1.0 or not 0.0 <= q0 <= 1.0:
        raise DomainError(f"success probabilities must lie in [0, 1], got q0={q0}, q1={q1}")
    if q1 >= q0:
        raise BaselineNotAboveTarget(f"baseline q0={q0} must exceed degraded q1={q1}")
    if not 0.0 < alpha < 1.0 or not 0.0 < beta < 1.0:
        raise DomainError(f"alpha and beta must lie in (0, 1), got alpha={alpha}, beta={beta}")
    z_a = normal_quantile(1.0 - (alpha if one_sided else alpha / 2.0))
    z_b = normal_quantile(1.0 - beta)
    pbar = (q0 + q1) / 2.0
    numerator = (
        z_a * math.sqrt(2.0 * pbar * (1.0 - pbar))
        + z_b * math.sqrt(q0 * (1.0 - q0) + q1 * (1.0 - q1))
    ) ** 2
    raw = numerator / (q0 - q1) ** 2
    return BinomialPlan(
        q0=q0, q1=q1, alpha=alpha, beta=beta, one_sided=one_sided,
        raw=raw, shots=max(1, math.ceil(raw)),
    )


def _log_add(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def binomial_decision(zero_count: int, n_shots: int, q0: float, alpha: float) -> tuple[bool, float]:
    """Exact one-sample binomial test of observed successes against baseline q0.

    p_value = P[Bin(n_shots, q0) <= zero_count], accumulated in log space
    so baselines near 1 do not underflow.  Rejects (the success rate has
    dropped below q0) when p_value <= alpha.
    """
    if n_shots < 1:
        raise DomainError(f"shot count must be >= 1, got {n_shots}")
    if not 0 <= zero_count <= n_shots:
        raise DomainError(f"observed count {zero_count} outside [0, {n_shots}]")
    if not 0.0 < q0 <= 1.0:
        raise DomainError(f"baseline q0 must lie in (0, 1], got {q0}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if q0 == 1.0:
        p_value = 1.0 if zero_count == n_shots else 0.0
        return p_value <= alpha, p_value
    log_q, log_1mq = math.log(q0), math.log1p(-q0)
    log_cdf = -math.inf
    log_pmf = n_shots * log_1mq
    for i in range(zero_count + 1):
        if i > 0:
            log_pmf += math.log(n_shots - i + 1) - math.log(i) + log_q - log_1mq
        log_cdf = _log_add(log_cdf, log_pmf)
    p_value = min(1.0, math.exp(log_cdf))
    return p_value <= alpha, p_value


def binomial_rejection_threshold(n_shots: int, q0: float, alpha: float) -> int:
    """Largest observed count still rejected by binomial_decision, or -1.

    The decision rule is monotone in the observed count, so a single
    threshold characterizes it; simulation code uses this to classify
    many trials without recomputing tail sums.
    """
    if n_shots < 1:
        raise DomainError(f"shot count must be >= 1, got {n_shots}")
    if not 0.0 < q0 <= 1.0:
        raise DomainError(f"baseline q0 must lie in (0, 1], got {q0}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if q0 == 1.0:
        return n_shots - 1
    log_q, log_1mq = math.log(q0), math.log1p(-q0)
    log_alpha = math.log(alpha)
    log_cdf = -math.inf
    log_pmf = n_shots * log_1mq
    for i in range(n_shots + 1):
        if i > 0:
            log_pmf += math.log(n_shots - i + 1) - math.log(i) + log_q - log_1mq
        log_cdf = _log_add(log_cdf, log_pmf)
        if log_cdf > log_alpha:
            return i - 1
    return n_shots


# ---------------------------------------------------------------------------
# Distribution file format: a JSON array of bin probabilities.


def parse_distribution(obj) -> Distribution:
    """Build a Distribution from its JSON array form."""
    if not isinstance(obj, list):
        raise DomainError(f"distribution document must be a JSON array, got {type(obj).__name__}")
    try:
        probs = np.array([float(x) for x in obj], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"distribution entries must be numbers: {exc}") from None
    return Distribution(probs=probs)


def load_distribution(path: str) -> Distribution:
    """Load a distribution file (see parse_distribution for the schema)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: not valid JSON ({exc})") from None
    return parse_distribution(obj)
