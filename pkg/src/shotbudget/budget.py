"""Program-level verification budgeting in Bures-angle space.

A program fidelity target F_prog buys a total error angle
Theta* = arccos(sqrt(F_prog)).  The angle is an additive budget: it is
split over block instances in proportion to hardware-calibrated weights,
each block gets a per-instance target angle theta_j and the equivalent
per-block fidelity target cos^2(theta_j), and the per-block shot formulas
then price the verification of every block.  The allocation identity
sum_j n_j theta_j = Theta* holds by construction.

Weights default to g1 * r1 + g2 * r2 + depth * gamma (error mass from
one- and two-qubit gate counts, optionally depth), and a block may pin
an explicit weight instead, which is how hybrid policies are expressed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import DomainError, ZeroBudget, ZeroWeight
from .shot_estimators import shots_inverse_real, shots_swap_real
from .stat_power import lambda_noncentral, w2_fidelity_attaining, w2_small_discrepancy
from . import tolerances as tol

__all__ = [
    "HardwareRates",
    "BlockSpec",
    "BlockAllocation",
    "BudgetReport",
    "ProgramSpec",
    "theta_star",
    "block_weight",
    "fidelity_target_from_angle",
    "allocate",
    "allocate_program",
    "parse_program_spec",
    "load_program_spec",
]

_TEST_KINDS = ("inverse", "swap", "chisq_small", "chisq_attaining")


@dataclass(frozen=True)
class HardwareRates:
    """Per-gate error rates: r1 one-qubit, r2 two-qubit, gamma per depth layer."""

    r1: float
    r2: float
    gamma: float = 0.0

    def __post_init__(self) -> None:
        for name in ("r1", "r2", "gamma"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"hardware rate {name} must be nonnegative, got {getattr(self, name)}")


@dataclass(frozen=True)
class BlockSpec:
    """One program block archetype and how often it is instantiated."""

    name: str
    multiplicity: int
    g1: float = 0.0
    g2: float = 0.0
    depth: float = 0.0
    explicit_weight: float | None = None

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise DomainError(f"block {self.name!r}: multiplicity must be >= 1, got {self.multiplicity}")
        for attr in ("g1", "g2", "depth"):
            if getattr(self, attr) < 0.0:
                raise DomainError(f"block {self.name!r}: {attr} must be nonnegative")


@dataclass(frozen=True)
class BlockAllocation:
    """Angle share and shot prices for one block archetype (per instance)."""

    name: str
    multiplicity: int
    weight: float
    theta: float
    f_target: float
    shots_inverse: int
    shots_swap: int
    shots_chisq_small: int
    shots_chisq_attaining: int
    raw_inverse: float
    raw_swap: float
    raw_chisq_small: float
    raw_chisq_attaining: float
    taylor_shots_inverse: float
    taylor_shots_swap: float
    taylor_shots_chisq_small: float
    taylor_shots_chisq_attaining: float
    infeasible: tuple[str, ...] = ()


@dataclass(frozen=True)
class BudgetReport:
    """Full allocation: Theta*, per-block rows, and program-wide totals."""

    f_prog: float
    p_e: float
    regime_factor: float
    chisq_bins: int
    chisq_alpha: float
    chisq_beta: float
    noncentrality: float
    theta_star: float
    total_weight: float
    total_angle: float
    allocations: tuple[BlockAllocation, ...]
    totals: dict = field(default_factory=dict)

    @property
    def any_infeasible(self) -> bool:
        return any(a.infeasible for a in self.allocations)


def theta_star(f_prog: float) -> float:
    """Total Bures-angle budget arccos(sqrt(F_prog)) for F_prog in (0, 1]."""
    if not 0.0 < f_prog <= 1.0:
        raise DomainError(f"program fidelity target must lie in (0, 1], got {f_prog}")
    return math.acos(min(1.0, math.sqrt(f_prog)))


def fidelity_target_from_angle(theta: float) -> float:
    """Per-block fidelity target cos^2(theta) for theta in [0, pi/2]."""
    if not 0.0 <= theta <= math.pi / 2.0:
        raise DomainError(f"angle must lie in [0, pi/2], got {theta}")
    return math.cos(theta) ** 2


def block_weight(block: BlockSpec, rates: HardwareRates) -> float:
    """Weight of one block instance: explicit, or g1 r1 + g2 r2 + depth gamma.

    Raises ZeroWeight when the result is not strictly positive; a block
    with no error mass cannot receive an angle share.
    """
    if block.explicit_weight is not None:
        weight = block.explicit_weight
    else:
        weight = block.g1 * rates.r1 + block.g2 * rates.r2 + block.depth * rates.gamma
    if weight <= 0.0:
        raise ZeroWeight(f"block {block.name!r} resolves to weight {weight!r}")
    return weight


def _count(raw: float) -> tuple[int, bool]:
    if not math.isfinite(raw) or raw > tol.MAX_SCHEDULABLE_SHOTS:
        return (0 if not math.isfinite(raw) else math.ceil(raw)), True
    return max(1, math.ceil(raw)), False


def allocate(
    blocks,
    rates: HardwareRates,
    f_prog: float,
    p_e: float,
    regime_factor: float = 1.0,
    chisq_bins: int = 16,
    chisq_alpha: float = 0.01,
    chisq_beta: float = 0.01,
) -> BudgetReport:
    """Split the program error-angle budget over blocks and price each test.

    Per-instance angle theta_j = (w_j / W) Theta* with W = sum n_j w_j,
    so instances of heavier blocks get proportionally more of the budget.
    Each block row carries the exact shot formulas at its fidelity target
    cos^2(theta_j) plus their small-angle Taylor forms
    (-R ln p_e / theta^2, doubled for swap, lambda/(4 theta^2) and
    16 lambda / theta^4 for the chi-square pair) as cross-checks.  Counts
    beyond 2^63 are flagged infeasible with the raw value retained.

    Raises ZeroBudget for f_prog = 1 and ZeroWeight for weightless blocks.
    """
    blocks = tuple(blocks)
    if not blocks:
        raise DomainError("no blocks to allocate over")
    if not 0.0 < p_e < 1.0:
        raise DomainError(f"error probability must lie in (0, 1), got {p_e}")
    if not 1.0 <= regime_factor <= 2.0:
        raise DomainError(f"regime factor must lie in [1, 2], got {regime_factor}")
    big_theta = theta_star(f_prog)
    if big_theta == 0.0:
        raise ZeroBudget("program fidelity target 1 leaves no error angle to allocate")

    weights = [block_weight(b, rates) for b in blocks]
    total_weight = sum(b.multiplicity * w for b, w in zip(blocks, weights))
    lam = lambda_noncentral(chisq_bins - 1, chisq_alpha, 1.0 - chisq_beta)
    log_pe = math.log(p_e)

    rows = []
    totals: dict[str, int] = {kind: 0 for kind in _TEST_KINDS}
    total_angle = 0.0
    for block, weight in zip(blocks, weights):
        theta = weight / total_weight * big_theta
        f_target = fidelity_target_from_angle(theta)
        if f_target >= 1.0:
            # theta below float resolution: cos^2 rounds to 1 and every
            # count overflows, so the whole block prices as infeasible
            raw_inverse = raw_swap = math.inf
            raw_chisq_small = raw_chisq_attaining = math.inf
        else:
            raw_inverse = shots_inverse_real(f_target, p_e, regime_factor).raw
            raw_swap = shots_swap_real(f_target, p_e, regime_factor).raw
            raw_chisq_small = lam / w2_small_discrepancy(f_target)
            raw_chisq_attaining = lam / w2_fidelity_attaining(f_target)
        counts = {}
        infeasible = []
        for kind, raw in (
            ("inverse", raw_inverse),
            ("swap", raw_swap),
            ("chisq_small", raw_chisq_small),
            ("chisq_attaining", raw_chisq_attaining),
        ):
            shots, over = _count(raw)
            counts[kind] = shots
            if over:
                infeasible.append(kind)
            else:
                totals[kind] += block.multiplicity * shots
        theta_sq = theta * theta
        rows.append(
            BlockAllocation(
                name=block.name,
                multiplicity=block.multiplicity,
                weight=weight,
                theta=theta,
                f_target=f_target,
                shots_inverse=counts["inverse"],
                shots_swap=counts["swap"],
                shots_chisq_small=counts["chisq_small"],
                shots_chisq_attaining=counts["chisq_attaining"],
                raw_inverse=raw_inverse,
                raw_swap=raw_swap,
                raw_chisq_small=raw_chisq_small,
                raw_chisq_attaining=raw_chisq_attaining,
                taylor_shots_inverse=-regime_factor * log_pe / theta_sq,
                taylor_shots_swap=-2.0 * regime_factor * log_pe / theta_sq,
                taylor_shots_chisq_small=lam / (4.0 * theta_sq),
                taylor_shots_chisq_attaining=16.0 * lam / (theta_sq * theta_sq),
                infeasible=tuple(infeasible),
            )
        )
        total_angle += block.multiplicity * theta

    return BudgetReport(
        f_prog=f_prog,
        p_e=p_e,
        regime_factor=regime_factor,
        chisq_bins=chisq_bins,
        chisq_alpha=chisq_alpha,
        chisq_beta=chisq_beta,
        noncentrality=lam,
        theta_star=big_theta,
        total_weight=total_weight,
        total_angle=total_angle,
        allocations=tuple(rows),
        totals=totals,
    )


@dataclass(frozen=True)
class ProgramSpec:
    """Everything needed to budget one program: target, tolerances, blocks."""

    fidelity_target: float
    p_e: float
    regime_factor: float
    hardware: HardwareRates
    blocks: tuple[BlockSpec, ...]
    chisq_bins: int = 16
    chisq_alpha: float = 0.01
    chisq_beta: float = 0.01


def allocate_program(spec: ProgramSpec) -> BudgetReport:
    """Run the allocator on a parsed ProgramSpec."""
    return allocate(
        spec.blocks,
        spec.hardware,
        spec.fidelity_target,
        spec.p_e,
        spec.regime_factor,
        spec.chisq_bins,
        spec.chisq_alpha,
        spec.chisq_beta,
    )


def _spec_number(obj: dict, key: str, path: str, *, default=None, required: bool = True):
    if key not in obj:
        if required:
            raise DomainError(f"{path}/{key}: missing")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"{path}/{key}: expected a number, got {value!r}")
    return float(value)


def parse_program_spec(obj: dict) -> ProgramSpec:
    """Build a ProgramSpec from its JSON object form.

    Error messages carry the JSON-pointer-style path of the offending
    field so a bad spec file is easy to fix.
    """
    if not isinstance(obj, dict):
        raise DomainError(f"program spec must be a JSON object, got {type(obj).__name__}")
    fidelity_target = _spec_number(obj, "fidelity_target", "")
    p_e = _spec_number(obj, "p_e", "")
    regime_factor = _spec_number(obj, "regime_factor", "", default=1.0, required=False)

    chisq = obj.get("chisq", {})
    if not isinstance(chisq, dict):
        raise DomainError("/chisq: expected an object")
    bins = chisq.get("bins", 16)
    if isinstance(bins, bool) or not isinstance(bins, int):
        raise DomainError(f"/chisq/bins: expected an integer, got {bins!r}")
    if bins < 2:
        raise DomainError(f"/chisq/bins: need at least 2 bins, got {bins}")
    alpha = _spec_number(chisq, "alpha", "/chisq", default=0.01, required=False)
    beta = _spec_number(chisq, "beta", "/chisq", default=0.01, required=False)

    hw = obj.get("hardware")
    if not isinstance(hw, dict):
        raise DomainError("/hardware: missing or not an object")
    rates = HardwareRates(
        r1=_spec_number(hw, "r1", "/hardware"),
        r2=_spec_number(hw, "r2", "/hardware"),
        gamma=_spec_number(hw, "gamma", "/hardware", default=0.0, required=False),
    )

    raw_blocks = obj.get("blocks")
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise DomainError("/blocks: missing or empty")
    blocks = []
    for i, entry in enumerate(raw_blocks):
        path = f"/blocks/{i}"
        if not isinstance(entry, dict):
            raise DomainError(f"{path}: expected an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise DomainError(f"{path}/name: expected a nonempty string, got {name!r}")
        multiplicity = entry.get("multiplicity", 1)
        if isinstance(multiplicity, bool) or not isinstance(multiplicity, int):
            raise DomainError(f"{path}/multiplicity: expected an integer, got {multiplicity!r}")
        blocks.append(
            BlockSpec(
                name=name,
                multiplicity=multiplicity,
                g1=_spec_number(entry, "g1", path, default=0.0, required=False),
                g2=_spec_number(entry, "g2", path, default=0.0, required=False),
                depth=_spec_number(entry, "depth", path, default=0.0, required=False),
                explicit_weight=_spec_number(entry, "weight", path, default=None, required=False),
            )
        )
    return ProgramSpec(
        fidelity_target=fidelity_target,
        p_e=p_e,
        regime_factor=regime_factor,
        hardware=rates,
        blocks=tuple(blocks),
        chisq_bins=bins,
        chisq_alpha=alpha,
        chisq_beta=beta,
    )


def load_program_spec(path: str) -> ProgramSpec:
    """Load a program spec file (see parse_program_spec for the schema)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: not valid JSON ({exc})") from None
    return parse_program_spec(obj)
