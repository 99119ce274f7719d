"""Quantum state containers and distinguishability functionals.

PureState and DensityMatrix validate their invariants at construction and
report exactly which one failed.  On top of them sit the Uhlmann fidelity,
trace distance, the quantum Chernoff bound Q with its error exponent, the
fidelity-only sandwich bounds on Q, Fuchs-van de Graaf bounds, and the
Bures angle.  All matrix functionals run through the Jacobi kernels in
`numerics`; eigendecompositions of validated density matrices are cached
on the instance because every functional needs them again.

Support convention: 0^0 = 0 in matrix powers, so states with disjoint
support yield Q = 0 (perfect one-shot distinguishability) instead of an
error.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidState
from .numerics import (
    EigenDecomposition,
    hermitian_eigendecomposition,
    minimize_unimodal,
)
from . import tolerances as tol

__all__ = [
    "PureState",
    "DensityMatrix",
    "NoiseModel",
    "QcbResult",
    "fidelity",
    "fidelity_pure",
    "trace_distance",
    "qcb_q",
    "q_bounds_mixed",
    "fuchs_van_de_graaf_bounds",
    "bures_angle",
    "swap_acceptance",
    "inverse_success_probability",
    "parse_state",
    "load_state",
]


def _qubit_count(dim: int, what: str) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise InvalidState(f"{what} dimension {dim} is not 2**n for n >= 1")
    return n


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector on n qubits."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        _qubit_count(amps.size, "state vector")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tol.NORM_ATOL:
            raise InvalidState(f"state vector norm {norm!r} differs from 1 beyond {tol.NORM_ATOL:.1e}")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def qubits(self) -> int:
        return self.dim.bit_length() - 1

    def to_density(self) -> "DensityMatrix":
        """Rank-1 projector |psi><psi| as a DensityMatrix.

        The projector is Hermitian, unit-trace and PSD by construction,
        so the eigenvalue validation is skipped.
        """
        mat = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(matrix=(mat + mat.conj().T) / 2.0, _validated=True)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density matrix on n qubits: Hermitian, unit trace, PSD.

    Validation reports the first failed invariant by name.  Eigenvalues in
    [-1e-10, 0] are tolerated as round-off and clamped to zero wherever
    the spectrum is consumed.
    """

    matrix: np.ndarray
    _validated: bool = field(default=False, repr=False, compare=False)
    _eig: EigenDecomposition | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvalidState(f"density matrix must be square, got shape {mat.shape}")
        _qubit_count(mat.shape[0], "density matrix")
        if self._validated:
            return
        dev = float(np.max(np.abs(mat - mat.conj().T)))
        if dev > tol.HERMITICITY_ATOL:
            raise InvalidState(f"not Hermitian: max |rho - rho^dagger| = {dev:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > tol.TRACE_ATOL:
            raise InvalidState(f"trace {tr!r} differs from 1 beyond {tol.TRACE_ATOL:.1e}")
        decomp = hermitian_eigendecomposition(mat)
        if float(decomp.values[0]) < tol.PSD_CLAMP_FLOOR:
            raise InvalidState(
                f"not positive semidefinite: eigenvalue {decomp.values[0]:.3e} "
                f"below {tol.PSD_CLAMP_FLOOR:.1e}"
            )
        object.__setattr__(self, "_eig", decomp)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def qubits(self) -> int:
        return self.dim.bit_length() - 1

    def eigensystem(self) -> EigenDecomposition:
        """Cached eigendecomposition with the spectrum clamped to >= 0."""
        decomp = self._eig
        if decomp is None:
            decomp = hermitian_eigendecomposition(self.matrix)
            object.__setattr__(self, "_eig", decomp)
        clamped = np.where(decomp.values > 0.0, decomp.values, 0.0)
        return EigenDecomposition(values=clamped, vectors=decomp.vectors)


@dataclass(frozen=True)
class NoiseModel:
    """Process-fidelity summary of the executing hardware.

    p_f is the probability that a run of the circuit is fault-free; the
    regime factor R in [1, 2] multiplies ideal shot counts to cover the
    gap between the ideal and fault-prone analyses.  R = 2 is the
    worst-case limit, so larger values are rejected rather than
    extrapolated.
    """

    p_f: float
    regime_factor: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_f <= 1.0:
            raise DomainError(f"p_f must lie in [0, 1], got {self.p_f}")
        if not 1.0 <= self.regime_factor <= 2.0:
            raise DomainError(f"regime_factor must lie in [1, 2], got {self.regime_factor}")


@dataclass(frozen=True)
class QcbResult:
    """Quantum Chernoff bound value with its minimizer and error exponent.

    q is min over s in [0, 1] of Tr(rho^s sigma^(1-s)); exponent is
    -ln(q), infinite when the supports are disjoint and q = 0.
    """

    q: float
    s_star: float
    exponent: float


def _as_density(state: PureState | DensityMatrix) -> DensityMatrix:
    return state.to_density() if isinstance(state, PureState) else state


def _check_same_dim(a, b) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def _clamp_unit(value: float, what: str) -> float:
    if value > 1.0 + tol.UNIT_INTERVAL_SLACK:
        raise InvalidState(f"{what} = {value!r} exceeds 1 beyond numerical slack")
    if value < -tol.UNIT_INTERVAL_SLACK:
        raise InvalidState(f"{what} = {value!r} is negative beyond numerical slack")
    return min(1.0, max(0.0, value))


def _support_mask(vals: np.ndarray) -> np.ndarray:
    """Eigenvalues that count as support: a rank cut, not a sign test.

    The eigensolver leaves junk of either sign near 1e-16 on
    rank-deficient inputs.  A positive speck would pass a plain > 0
    test and contribute speck^s -> 1 as s -> 0, wrecking the boundary
    of the Chernoff objective.
    """
    cut = float(vals.max()) * vals.size * np.finfo(float).eps
    return vals > cut


def fidelity_pure(psi: PureState, phi: PureState) -> float:
    """Overlap fidelity |<phi|psi>|^2 of two pure states."""
    _check_same_dim(psi, phi)
    overlap = complex(np.vdot(phi.amplitudes, psi.amplitudes))
    return _clamp_unit(abs(overlap) ** 2, "fidelity")


def inverse_success_probability(ideal: PureState, actual: PureState) -> float:
    """All-zeros probability of the inverse (compute-uncompute) test.

    Appending the inverse of the ideal circuit to the actual one and
    measuring every qubit returns the all-zeros string with probability
    |<ideal|actual>|^2, which is exactly the pure-state fidelity.
    """
    return fidelity_pure(ideal, actual)


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity of two states, (trace norm of sqrt(rho) sqrt(sigma))^2.

    Computed as the squared sum of the singular values of
    sqrt(rho) sqrt(sigma); those are the square roots of the eigenvalues
    of sqrt(sigma) rho sqrt(sigma), so two eigendecompositions suffice.
    Accepts PureState or DensityMatrix on either side.
    """
    if isinstance(rho, PureState) and isinstance(sigma, PureState):
        return fidelity_pure(rho, sigma)
    # One pure argument reduces to an expectation value, which is exact;
    # the general route below would add ~sqrt(eps) noise from the square
    # roots of the rank-deficient inner matrix's junk eigenvalues.
    for pure, other in ((rho, sigma), (sigma, rho)):
        if isinstance(pure, PureState):
            dm = _as_density(other)
            _check_same_dim(pure, dm)
            amp = pure.amplitudes
            return _clamp_unit(float(np.real(amp.conj() @ dm.matrix @ amp)), "fidelity")
    dm_rho = _as_density(rho)
    dm_sigma = _as_density(sigma)
    _check_same_dim(dm_rho, dm_sigma)
    eig_sigma = dm_sigma.eigensystem()
    sqrt_sigma = (eig_sigma.vectors * np.sqrt(eig_sigma.values)) @ eig_sigma.vectors.conj().T
    inner = sqrt_sigma @ dm_rho.matrix @ sqrt_sigma
    vals = hermitian_eigendecomposition((inner + inner.conj().T) / 2.0).values
    vals = np.where(vals > 0.0, vals, 0.0)
    return _clamp_unit(float(np.sum(np.sqrt(vals))) ** 2, "fidelity")


def trace_distance(rho, sigma) -> float:
    """Trace distance, half the trace norm of rho - sigma."""
    dm_rho = _as_density(rho)
    dm_sigma = _as_density(sigma)
    _check_same_dim(dm_rho, dm_sigma)
    diff = dm_rho.matrix - dm_sigma.matrix
    vals = hermitian_eigendecomposition(diff).values
    return _clamp_unit(0.5 * float(np.sum(np.abs(vals))), "trace distance")


def qcb_q(rho, sigma) -> QcbResult:
    """Quantum Chernoff bound Q = min_s Tr(rho^s sigma^(1-s)) on [0, 1].

    Both spectra are decomposed once; each objective evaluation applies
    fractional powers to the stored spectra and takes the trace of the
    product.  A 33-point scan over s (endpoints included) locates the
    basin and golden-section refinement tightens the minimizer to 1e-10.
    For commuting states this reduces to the classical Chernoff bound;
    if either state is pure the objective is flat-to-increasing and the
    minimum is Tr(rho sigma).
    """
    dm_rho = _as_density(rho)
    dm_sigma = _as_density(sigma)
    _check_same_dim(dm_rho, dm_sigma)
    eig_r = dm_rho.eigensystem()
    eig_s = dm_sigma.eigensystem()
    lam, u = eig_r.values, eig_r.vectors
    mu, v = eig_s.values, eig_s.vectors

    def powered(vals: np.ndarray, basis: np.ndarray, s: float) -> np.ndarray:
        support = _support_mask(vals)
        p = np.where(support, np.power(vals, s, where=support), 0.0)
        return (basis * p) @ basis.conj().T

    def objective(s: float) -> float:
        a = powered(lam, u, s)
        b = powered(mu, v, 1.0 - s)
        return float(np.einsum("ij,ji->", a, b).real)

    grid = np.linspace(0.0, 1.0, tol.QCB_GRID_POINTS)
    values = [objective(float(s)) for s in grid]
    best = int(np.argmin(values))
    lo = grid[max(0, best - 1)]
    hi = grid[min(len(grid) - 1, best + 1)]
    s_ref, q_ref = minimize_unimodal(objective, float(lo), float(hi), tol.QCB_S_TOL)
    if values[best] < q_ref:
        s_ref, q_ref = float(grid[best]), values[best]
    q = _clamp_unit(q_ref, "Chernoff Q")
    # + 0.0 normalizes the -0.0 that -log(1.0) would produce
    exponent = math.inf if q == 0.0 else -math.log(q) + 0.0
    return QcbResult(q=q, s_star=s_ref, exponent=exponent)


def q_bounds_mixed(fid: float) -> tuple[float, float]:
    """Fidelity-only sandwich on Q: 1 - sqrt(1 - F) <= Q <= sqrt(F)."""
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    return 1.0 - math.sqrt(1.0 - fid), math.sqrt(fid)


def fuchs_van_de_graaf_bounds(fid: float) -> tuple[float, float]:
    """Fuchs-van de Graaf bounds on trace distance: 1 - sqrt(F) <= T <= sqrt(1 - F)."""
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    return 1.0 - math.sqrt(fid), math.sqrt(1.0 - fid)


def bures_angle(fid: float) -> float:
    """Bures angle arccos(sqrt(F)), the metric the budget allocator splits."""
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    return math.acos(min(1.0, math.sqrt(fid)))


def swap_acceptance(fid: float) -> float:
    """Swap-test acceptance probability 1/2 + F/2."""
    if not 0.0 <= fid <= 1.0:
        raise DomainError(f"fidelity must lie in [0, 1], got {fid}")
    return 0.5 + 0.5 * fid


# ---------------------------------------------------------------------------
# State file format: {"kind": "pure"|"density", "n": qubits,
#                     "data": [[re, im], ...]} with density data row-major.


def parse_state(obj: dict) -> PureState | DensityMatrix:
    """Build a state from its JSON object form, validating invariants."""
    if not isinstance(obj, dict):
        raise InvalidState(f"state document must be a JSON object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind not in ("pure", "density"):
        raise InvalidState(f'state "kind" must be "pure" or "density", got {kind!r}')
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise InvalidState(f'state "n" must be a positive integer qubit count, got {n!r}')
    data = obj.get("data")
    if not isinstance(data, list):
        raise InvalidState('state "data" must be a list of [re, im] pairs')
    try:
        flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidState(f'state "data" entries must be [re, im] pairs: {exc}') from None
    dim = 2**n
    if kind == "pure":
        if flat.size != dim:
            raise InvalidState(f"pure state on {n} qubits needs {dim} amplitudes, got {flat.size}")
        return PureState(amplitudes=flat)
    if flat.size != dim * dim:
        raise InvalidState(f"density matrix on {n} qubits needs {dim * dim} entries, got {flat.size}")
    return DensityMatrix(matrix=flat.reshape(dim, dim))


def load_state(path: str) -> PureState | DensityMatrix:
    """Load a state file (see parse_state for the schema)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidState(f"{path}: not valid JSON ({exc})") from None
    return parse_state(obj)
