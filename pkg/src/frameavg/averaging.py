"""Irreversibility maps built from frame averaging.

Three channels: the uniform cyclic average over all chain translations, the
exponentially weighted spatial average at coarse-graining scale R, and the
temporal average with Lorentzian weight 1 / (1 + i omega tau) in the energy
eigenbasis (exact dephasing over degenerate blocks at tau = infinity).  Each
is a convex mixture of unitary conjugations, hence trace preserving,
positivity preserving, and entropy non-decreasing.

The module also builds the conjugated-kick pair u = e^{beta H/2} U e^{-beta H/2}
and E = u u^dag whose frame average tending to the identity controls how the
averaged entropy production dies off with system size.

Summation order inside every average is fixed left to right, so repeated runs
produce bit-identical results.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import (
    DensityMatrix,
    HermitianOperator,
    OverflowGuardError,
    SpectralDecomposition,
    UnitaryOperator,
    frobenius_norm,
    max_norm,
    trace_product,
)
from .thermal import ThermalState

UNIFORM_SPATIAL = "uniform-spatial"
WEIGHTED_SPATIAL = "weighted-spatial"
TEMPORAL = "temporal"

# below this, the Lorentzian weights are indistinguishable from 1
TAU_IDENTITY_FLOOR = 1e-12

# eigenvalues closer than this fraction of the spectral width dephase as one block
DEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class AveragingKind:
    """Channel selector: kind tag plus its scale parameter.

    parameter is the coarse-graining scale R for weighted-spatial, the memory
    time tau for temporal (may be inf), and absent for uniform-spatial.
    """

    kind: str
    parameter: float | None = None

    def __post_init__(self):
        if self.kind == UNIFORM_SPATIAL:
            if self.parameter is not None:
                raise ValueError("uniform-spatial takes no parameter")
            return
        if self.kind == WEIGHTED_SPATIAL:
            if self.parameter is None or not np.isfinite(self.parameter) or self.parameter <= 0:
                raise ValueError(f"weighted-spatial needs a finite R > 0, got {self.parameter!r}")
        elif self.kind == TEMPORAL:
            if self.parameter is None or np.isnan(self.parameter) or self.parameter <= 0:
                raise ValueError(f"temporal needs tau > 0 (inf allowed), got {self.parameter!r}")
        else:
            raise ValueError(
                f"unknown averaging kind {self.kind!r}, expected one of "
                f"{UNIFORM_SPATIAL!r}, {WEIGHTED_SPATIAL!r}, {TEMPORAL!r}"
            )
        object.__setattr__(self, "parameter", float(self.parameter))

    @classmethod
    def uniform_spatial(cls) -> "AveragingKind":
        return cls(UNIFORM_SPATIAL)

    @classmethod
    def weighted_spatial(cls, R: float) -> "AveragingKind":
        return cls(WEIGHTED_SPATIAL, R)

    @classmethod
    def temporal(cls, tau: float) -> "AveragingKind":
        return cls(TEMPORAL, tau)


def _translate_conjugations(a: np.ndarray, t: UnitaryOperator, n_terms: int, weights):
    """sum_n w_n T^n a T^-n with fixed left-to-right accumulation.

    Verifies T^n_terms = 1 along the way and raises if the order is off.
    """
    dim = a.shape[0]
    if t.dim != dim:
        raise ValueError(f"dimension mismatch: matrix {dim}, translation {t.dim}")
    if n_terms < 1:
        raise ValueError("need at least one term")
    if t.permutation is not None:
        perm = t.permutation
        inv = np.empty_like(perm)
        inv[perm] = np.arange(dim)
        acc = weights[0] * a
        cur = inv
        for n in range(1, n_terms):
            if weights[n] != 0.0:
                acc = acc + weights[n] * a[np.ix_(cur, cur)]
            cur = cur[inv]
        if not np.array_equal(cur, np.arange(dim)):
            raise ValueError(f"translation operator does not have order {n_terms}")
        return acc
    tm = t.matrix
    td = tm.conj().T
    acc = weights[0] * a
    cur = a
    power = tm
    for n in range(1, n_terms):
        cur = tm @ cur @ td
        if weights[n] != 0.0:
            acc = acc + weights[n] * cur
        if n < n_terms - 1:
            power = tm @ power
    if max_norm(tm @ power - np.eye(dim)) > 1e-10:
        raise ValueError(f"translation operator does not have order {n_terms}")
    return acc


def average_translates(a: np.ndarray, t: UnitaryOperator, n_terms: int) -> np.ndarray:
    """(1/N) sum_n T^n a T^-n for an arbitrary square matrix."""
    return _translate_conjugations(a, t, n_terms, np.full(n_terms, 1.0 / n_terms))


def distance_weights(n_terms: int, scale: float) -> np.ndarray:
    """Normalized weights exp(-min(n, N-n) / R) over the cyclic shifts."""
    if not np.isfinite(scale) or scale <= 0:
        raise ValueError(f"scale must be finite and positive, got {scale!r}")
    n = np.arange(n_terms)
    dist = np.minimum(n, n_terms - n)
    w = np.exp(-dist / scale)
    return w / w.sum()


def weighted_average_translates(
    a: np.ndarray, t: UnitaryOperator, n_terms: int, scale: float
) -> np.ndarray:
    """Distance-weighted mixture of translates at coarse-graining scale R."""
    return _translate_conjugations(a, t, n_terms, distance_weights(n_terms, scale))


def temporal_average_matrix(
    a: np.ndarray, decomp: SpectralDecomposition, tau: float
) -> np.ndarray:
    """Damp energy-basis off-diagonals by 1 / (1 + i (E_m - E_n) tau).

    tau below TAU_IDENTITY_FLOOR returns the input unchanged; tau = inf keeps
    only matrix elements inside degenerate blocks (gap below DEGENERACY_RTOL
    of the spectral width), the exact long-memory dephasing limit.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape[0] != decomp.dim:
        raise ValueError(f"dimension mismatch: matrix {a.shape[0]}, spectrum {decomp.dim}")
    if not np.isinf(tau) and tau < TAU_IDENTITY_FLOOR:
        return a.copy()
    energies = decomp.eigenvalues
    gaps = energies[:, np.newaxis] - energies[np.newaxis, :]
    if np.isinf(tau):
        width = energies[-1] - energies[0]
        if width == 0.0:
            return a.copy()
        weights = (np.abs(gaps) < DEGENERACY_RTOL * width).astype(complex)
    else:
        weights = 1.0 / (1.0 + 1j * gaps * tau)
    return decomp.from_eigenbasis(decomp.to_eigenbasis(a) * weights)


def frame_average(rho: DensityMatrix, t: UnitaryOperator, n_terms: int) -> DensityMatrix:
    """Uniform mixture of all cyclic translates of a state."""
    return DensityMatrix(average_translates(rho.matrix, t, n_terms))


def weighted_frame_average(
    rho: DensityMatrix, t: UnitaryOperator, n_terms: int, scale: float
) -> DensityMatrix:
    """Distance-weighted mixture of translates; flat as R grows, identity as R -> 0."""
    return DensityMatrix(weighted_average_translates(rho.matrix, t, n_terms, scale))


def temporal_average(
    rho: DensityMatrix, decomp: SpectralDecomposition, tau: float
) -> DensityMatrix:
    """Time-averaged state with exponential memory tau."""
    return DensityMatrix(temporal_average_matrix(rho.matrix, decomp, tau))


@dataclass(frozen=True)
class ConjugatedPerturbation:
    """The pair u = e^{beta H/2} U e^{-beta H/2} and E = u u^dag.

    Carries the thermal state it was built from so the normalization
    tr(rho E) = 1 can be certified here and reused by deviation reports.
    The dense trace here can only be trusted to round-off at the scale of
    the largest entry of E, so the tolerance grows with that scale; the
    factory certifies the same identity to 1e-9 at every beta through a
    positive-term evaluation in the energy eigenbasis.
    """

    u: np.ndarray
    E: HermitianOperator
    state: ThermalState

    def __post_init__(self):
        norm = trace_product(self.state.rho.matrix, self.E.matrix).real
        slack = 1e-9 + self.E.dim * np.finfo(np.float64).eps * max_norm(self.E.matrix)
        if abs(norm - 1.0) > slack:
            raise ValueError(f"tr(rho E) = {norm!r} is not 1 within {slack:.3e}")


def conjugate_normalization(state: ThermalState, u: UnitaryOperator) -> float:
    """tr(rho E) evaluated as a sum of positive terms in the energy eigenbasis.

    The gap factors of u_beta cancel analytically against the populations,
    leaving sum_j p_j |column j of the eigenbasis kick|^2, which stays fully
    conditioned however large beta gets.  Averaging never changes the value:
    rho is a fixed point of every frame average, so tr(rho ME) = tr(rho E)
    for each averaging kind.
    """
    if u.dim != state.dim:
        raise ValueError(f"dimension mismatch: state {state.dim}, unitary {u.dim}")
    u_tilde = state.hamiltonian_decomp.to_eigenbasis(u.matrix)
    return float((state.populations[np.newaxis, :] * np.abs(u_tilde) ** 2).sum())


def conjugated_perturbation(state: ThermalState, u: UnitaryOperator) -> ConjugatedPerturbation:
    """Build u and E = u u^dag through the analytic gap form.

    In the energy eigenbasis the conjugation is the entrywise factor
    e^{beta (E_i - E_j) / 2}, so no matrix exponential or inverse square root
    of rho is ever formed.
    """
    if u.dim != state.dim:
        raise ValueError(f"dimension mismatch: state {state.dim}, unitary {u.dim}")
    energies = state.hamiltonian_decomp.eigenvalues
    radius = max(abs(energies[0]), abs(energies[-1]))
    if state.beta * radius > 700.0:
        raise OverflowGuardError(
            f"beta times the spectral radius is {state.beta * radius:.1f}, beyond "
            "the 700 overflow guard; reduce beta or the chain size"
        )
    stable_norm = conjugate_normalization(state, u)
    if abs(stable_norm - 1.0) > 1e-9:
        raise ValueError(f"tr(rho E) = {stable_norm!r} is not 1 within 1e-9")
    grow = np.exp(state.beta * energies / 2)
    shrink = np.exp(-state.beta * energies / 2)
    u_tilde = state.hamiltonian_decomp.to_eigenbasis(u.matrix)
    conj = (grow[:, np.newaxis] * u_tilde) * shrink[np.newaxis, :]
    u_full = state.hamiltonian_decomp.from_eigenbasis(conj)
    e_full = u_full @ u_full.conj().T
    return ConjugatedPerturbation(u_full, HermitianOperator(e_full), state)


@dataclass(frozen=True)
class DeviationReport:
    """How far an averaged E sits from the identity.

    op_norm and frobenius_norm measure the raw operator distance;
    state_weighted is sqrt(tr(rho (ME - 1)^2)), the distance seen by the
    thermal state; state_trace is tr(rho ME), identically 1 up to round-off.
    """

    op_norm: float
    frobenius_norm: float
    state_weighted: float
    state_trace: float


def deviation_report(averaged_e: np.ndarray, state: ThermalState) -> DeviationReport:
    """Distance of an already-averaged E from the identity."""
    rho = state.rho.matrix
    dev = averaged_e - np.eye(averaged_e.shape[0])
    dev = (dev + dev.conj().T) / 2
    op = float(np.abs(np.linalg.eigvalsh(dev)).max())
    fro = frobenius_norm(dev)
    weighted = float(np.sqrt(max(trace_product(rho, dev @ dev).real, 0.0)))
    tr = trace_product(rho, averaged_e).real
    return DeviationReport(op, fro, weighted, tr)


def averaged_E_deviation(
    cp: ConjugatedPerturbation, t: UnitaryOperator, n_terms: int
) -> DeviationReport:
    """Deviation of the uniform frame average of E from the identity."""
    return deviation_report(average_translates(cp.E.matrix, t, n_terms), cp.state)
