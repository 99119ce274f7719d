"""Shot-count formulas for state discrimination and equivalence tests.

Every estimator returns a ShotEstimate carrying the raw real-valued
formula output and the schedulable integer count ceil(raw) floored at
one shot.  The underlying model is symmetric hypothesis testing: with N
copies the best error probability decays like Q^N, so driving it below
p_e needs N >= ln(p_e) / ln(Q) with Q the relevant per-shot acceptance
or Chernoff quantity.

The `conservative` flag does not change any number; it flips the
interpretation label from an asymptotic estimate to a lower-bound
requirement for reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateStates, DomainError

__all__ = [
    "Formula",
    "ShotEstimate",
    "ShotBounds",
    "shots_from_q",
    "shots_pure",
    "shots_mixed_bounds",
    "shots_inverse_ideal",
    "shots_inverse_real",
    "shots_swap_ideal",
    "shots_swap_real",
    "swap_to_inverse_ratio",
    "shots_pure_from_trace_distance",
    "shots_pure_mixed_bounds_from_trace_distance",
    "shots_mixed_bounds_from_trace_distance",
]


class Formula(str, Enum):
    """Identifies which discrimination formula produced an estimate."""

    QCB = "qcb"
    PURE = "pure"
    MIXED_LOWER = "mixed_lower"
    MIXED_UPPER = "mixed_upper"
    INVERSE_IDEAL = "inverse_ideal"
    INVERSE_REAL = "inverse_real"
    SWAP_IDEAL = "swap_ideal"
    SWAP_REAL = "swap_real"
    TRACE_PURE = "trace_pure"
    TRACE_PURE_MIXED_LOWER = "trace_pure_mixed_lower"
    TRACE_PURE_MIXED_UPPER = "trace_pure_mixed_upper"
    TRACE_MIXED_LOWER = "trace_mixed_lower"
    TRACE_MIXED_UPPER = "trace_mixed_upper"


@dataclass(frozen=True)
class ShotEstimate:
    """Raw formula value plus the integer shot count ceil(raw), >= 1."""

    raw: float
    shots: int
    formula: Formula
    conservative: bool = False

    @property
    def interpretation(self) -> str:
        return "lower-bound requirement" if self.conservative else "asymptotic estimate"


@dataclass(frozen=True)
class ShotBounds:
    """Lower and upper shot estimates bracketing the true requirement."""

    lower: ShotEstimate
    upper: ShotEstimate

    def __post_init__(self) -> None:
        if self.lower.raw > self.upper.raw * (1.0 + 1e-12) + 1e-12:
            raise DomainError(
                f"shot bounds inverted: lower {self.lower.raw} > upper {self.upper.raw}"
            )


def _estimate(raw: float, formula: Formula, conservative: bool) -> ShotEstimate:
    shots = max(1, math.ceil(raw))
    return ShotEstimate(raw=raw, shots=shots, formula=formula, conservative=conservative)


def _check_pe(p_e: float) -> None:
    if not 0.0 < p_e < 1.0:
        raise DomainError(f"error probability must lie in (0, 1), got {p_e}")


def _check_regime(regime_factor: float) -> None:
    if not 1.0 <= regime_factor <= 2.0:
        raise DomainError(f"regime factor must lie in [1, 2], got {regime_factor}")


def _log_ratio(p_e: float, per_shot: float) -> float:
    # ln(p_e) / ln(per_shot) with the per_shot -> 0 limit taken as 0 shots.
    if per_shot == 0.0:
        return 0.0
    return math.log(p_e) / math.log(per_shot)


def shots_from_q(q: float, p_e: float, *, conservative: bool = False) -> ShotEstimate:
    """Shots from a known Chernoff quantity: N = ln(p_e) / ln(Q).

    Raises DomainError for q <= 0 (orthogonal states are short-circuited
    to a single shot by callers before reaching this) and
    DegenerateStates for q >= 1.
    """
    _check_pe(p_e)
    if q <= 0.0:
        raise DomainError(f"Q must be positive, got {q}; orthogonal states need one shot")
    if q >= 1.0:
        raise DegenerateStates("Q = 1: the states are indistinguishable at any shot count")
    return _estimate(_log_ratio(p_e, q), Formula.QCB, conservative)


def shots_pure(fid: float, p_e: float, *, conservative: bool = False) -> ShotEstimate:
    """Pure-state discrimination shots, N = ln(p_e) / ln(F)."""
    _check_pe(p_e)
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    if fid == 1.0:
        raise DegenerateStates("fidelity 1: identical states cannot be distinguished")
    return _estimate(_log_ratio(p_e, fid), Formula.PURE, conservative)


def shots_mixed_bounds(fid: float, p_e: float, *, conservative: bool = False) -> ShotBounds:
    """Fidelity-only shot bracket for mixed states.

    ln(p_e)/ln(1 - sqrt(1-F))  <=  N  <=  2 ln(p_e)/ln(F), from the
    sandwich 1 - sqrt(1-F) <= Q <= sqrt(F).
    """
    _check_pe(p_e)
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    if fid == 1.0:
        raise DegenerateStates("fidelity 1: identical states cannot be distinguished")
    q_lo = 1.0 - math.sqrt(1.0 - fid)
    lower = _estimate(_log_ratio(p_e, q_lo), Formula.MIXED_LOWER, conservative)
    upper = _estimate(2.0 * _log_ratio(p_e, fid), Formula.MIXED_UPPER, conservative)
    return ShotBounds(lower=lower, upper=upper)


def shots_inverse_ideal(fid: float, p_e: float, *, conservative: bool = False) -> ShotEstimate:
    """Inverse (compute-uncompute) test on ideal hardware.

    The test accepts with per-shot probability F, so
    N = ln(p_e) / ln(F); misses are certain once any shot fails.
    """
    _check_pe(p_e)
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    if fid == 1.0:
        raise DegenerateStates("fidelity 1: the inverse test always accepts")
    return _estimate(_log_ratio(p_e, fid), Formula.INVERSE_IDEAL, conservative)


def shots_inverse_real(
    fid: float, p_e: float, regime_factor: float, *, conservative: bool = False
) -> ShotEstimate:
    """Inverse test on fault-prone hardware: ideal count times R in [1, 2]."""
    _check_pe(p_e)
    _check_regime(regime_factor)
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    if fid == 1.0:
        raise DegenerateStates("fidelity 1: the inverse test always accepts")
    return _estimate(regime_factor * _log_ratio(p_e, fid), Formula.INVERSE_REAL, conservative)


def shots_swap_ideal(fid: float, p_e: float, *, conservative: bool = False) -> ShotEstimate:
    """Swap test on ideal hardware: N = ln(p_e) / ln(1/2 + F/2).

    The ancilla reads 0 with probability 1/2 + F/2, which is also the
    Chernoff quantity of the test, so the same log ratio applies.
    """
    _check_pe(p_e)
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    if fid == 1.0:
        raise DegenerateStates("fidelity 1: the swap test always accepts")
    return _estimate(_log_ratio(p_e, 0.5 + 0.5 * fid), Formula.SWAP_IDEAL, conservative)


def shots_swap_real(
    fid: float, p_e: float, regime_factor: float, *, conservative: bool = False
) -> ShotEstimate:
    """Swap test on fault-prone hardware: ideal count times R in [1, 2]."""
    _check_pe(p_e)
    _check_regime(regime_factor)
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    if fid == 1.0:
        raise DegenerateStates("fidelity 1: the swap test always accepts")
    return _estimate(
        regime_factor * _log_ratio(p_e, 0.5 + 0.5 * fid), Formula.SWAP_REAL, conservative
    )


def swap_to_inverse_ratio(fid: float) -> float:
    """Shot-count ratio swap/inverse, ln(F) / ln(1/2 + F/2).

    Approaches 2 as F -> 1 (each swap shot carries half the evidence of
    an inverse shot there) and drops toward ln F / ln(1/2) as F -> 0.
    Defined for F strictly inside (0, 1).
    """
    if not 0.0 < fid < 1.0:
        raise DomainError(f"ratio needs fidelity strictly inside (0, 1), got {fid}")
    return math.log(fid) / math.log(0.5 + 0.5 * fid)


def shots_pure_from_trace_distance(
    dist: float, p_e: float, *, conservative: bool = False
) -> ShotEstimate:
    """Pure-state shots from trace distance T: N = ln(p_e) / ln(1 - T^2).

    Uses T = sqrt(1 - F) for pure pairs, so this is the pure-state
    formula in trace-distance coordinates.
    """
    _check_pe(p_e)
    if not 0.0 <= dist <= 1.0:
        raise DomainError(f"trace distance must lie in [0, 1], got {dist}")
    if dist == 0.0:
        raise DegenerateStates("trace distance 0: identical states cannot be distinguished")
    return _estimate(_log_ratio(p_e, 1.0 - dist * dist), Formula.TRACE_PURE, conservative)


def shots_pure_mixed_bounds_from_trace_distance(
    dist: float, p_e: float, *, conservative: bool = False
) -> ShotBounds:
    """Shot bracket for a pure-vs-mixed pair at trace distance T.

    ln(p_e)/ln(1 - T) <= N <= ln(p_e)/ln(1 - T^2); the upper limit
    coincides with the pure-pair formula.
    """
    _check_pe(p_e)
    if not 0.0 <= dist <= 1.0:
        raise DomainError(f"trace distance must lie in [0, 1], got {dist}")
    if dist == 0.0:
        raise DegenerateStates("trace distance 0: identical states cannot be distinguished")
    lower = _estimate(_log_ratio(p_e, 1.0 - dist), Formula.TRACE_PURE_MIXED_LOWER, conservative)
    upper = _estimate(
        _log_ratio(p_e, 1.0 - dist * dist), Formula.TRACE_PURE_MIXED_UPPER, conservative
    )
    return ShotBounds(lower=lower, upper=upper)


def shots_mixed_bounds_from_trace_distance(
    dist: float, p_e: float, *, conservative: bool = False
) -> ShotBounds:
    """Shot bracket for general mixed pairs at trace distance T.

    ln(p_e)/ln(1 - sqrt(2T - T^2)) <= N <= 2 ln(p_e)/ln(1 - T^2).
    """
    _check_pe(p_e)
    if not 0.0 <= dist <= 1.0:
        raise DomainError(f"trace distance must lie in [0, 1], got {dist}")
    if dist == 0.0:
        raise DegenerateStates("trace distance 0: identical states cannot be distinguished")
    q_lo = 1.0 - math.sqrt(dist * (2.0 - dist))
    lower = _estimate(_log_ratio(p_e, q_lo), Formula.TRACE_MIXED_LOWER, conservative)
    upper = _estimate(
        2.0 * _log_ratio(p_e, 1.0 - dist * dist), Formula.TRACE_MIXED_UPPER, conservative
    )
    return ShotBounds(lower=lower, upper=upper)
