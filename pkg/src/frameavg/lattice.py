"""Finite periodic spin chains.

Site-local operator embedding, the cyclic translation unitary, and the model
Hamiltonians.  Basis convention: site 0 is the most significant digit of the
computational-basis index, so for qubits the index bits read left to right as
sites 0 .. N-1.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .operators import (
    HermitianOperator,
    UnitaryOperator,
    as_square_complex,
    max_norm,
)

DIM_GUARD = 2**14
DIM_GUARD_ENV = "FRAMEAVG_MAX_DIM"

sigma_x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
sigma_y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
sigma_z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

_PAULI = {"X": sigma_x, "Y": sigma_y, "Z": sigma_z}

FREE_SPINS = "free-spins"
TRANSVERSE_FIELD_ISING = "transverse-field-ising"
HEISENBERG_XXZ = "heisenberg-xxz"

MODEL_COUPLINGS = {
    FREE_SPINS: ("h",),
    TRANSVERSE_FIELD_ISING: ("J", "g"),
    HEISENBERG_XXZ: ("J", "delta"),
}


class LatticeSizeError(ValueError):
    """Requested chain exceeds the Hilbert-space dimension guard."""


def pauli(name: str) -> np.ndarray:
    """Pauli matrix by letter, one of X, Y, Z."""
    try:
        return _PAULI[name].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli name {name!r}, expected one of X, Y, Z") from None


def _dim_guard() -> int:
    raw = os.environ.get(DIM_GUARD_ENV)
    if raw is None:
        return DIM_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{DIM_GUARD_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{DIM_GUARD_ENV} must be positive, got {value}")
    # the environment may only lower the guard, never raise it
    return min(value, DIM_GUARD)


@dataclass(frozen=True)
class LatticeSpec:
    """Periodic chain geometry: N sites of local dimension d."""

    sites: int
    local_dim: int = 2
    periodic: bool = True

    def __post_init__(self):
        if self.sites < 2:
            raise ValueError(f"need at least 2 sites, got {self.sites}")
        if self.local_dim < 1:
            raise ValueError(f"local_dim must be >= 1, got {self.local_dim}")
        if not self.periodic:
            raise ValueError("only periodic chains are supported")
        guard = _dim_guard()
        if self.dim > guard:
            raise LatticeSizeError(
                f"chain of {self.sites} sites with local dimension {self.local_dim} "
                f"has Hilbert dimension {self.dim}, above the guard {guard}"
            )

    @property
    def dim(self) -> int:
        return self.local_dim**self.sites


@dataclass(frozen=True)
class HamiltonianSpec:
    """Model tag plus named coupling constants."""

    model: str
    couplings: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in MODEL_COUPLINGS:
            raise ValueError(
                f"unknown model {self.model!r}, expected one of {sorted(MODEL_COUPLINGS)}"
            )
        required = MODEL_COUPLINGS[self.model]
        missing = [k for k in required if k not in self.couplings]
        if missing:
            raise ValueError(f"model {self.model!r} is missing couplings {missing}")
        unknown = [k for k in self.couplings if k not in required]
        if unknown:
            raise ValueError(f"model {self.model!r} does not take couplings {unknown}")
        clean = {}
        for key in required:
            value = float(self.couplings[key])
            if not np.isfinite(value):
                raise ValueError(f"coupling {key!r} must be finite, got {value!r}")
            clean[key] = value
        object.__setattr__(self, "couplings", clean)


@dataclass(frozen=True)
class SiteOperator:
    """A local matrix attached to one site of the chain."""

    site: int
    local_matrix: np.ndarray

    def __post_init__(self):
        if self.site < 0:
            raise ValueError(f"site must be nonnegative, got {self.site}")
        object.__setattr__(
            self, "local_matrix", as_square_complex(self.local_matrix, "local_matrix")
        )


def embed_site_operator(lattice: LatticeSpec, op: SiteOperator) -> np.ndarray:
    """1 x ... x a x ... x 1 with a at position op.site."""
    if op.site >= lattice.sites:
        raise ValueError(f"site {op.site} out of range for {lattice.sites} sites")
    d = lattice.local_dim
    if op.local_matrix.shape[0] != d:
        raise ValueError(
            f"local matrix has dim {op.local_matrix.shape[0]}, lattice expects {d}"
        )
    left = np.eye(d**op.site, dtype=complex)
    right = np.eye(d ** (lattice.sites - 1 - op.site), dtype=complex)
    return np.kron(np.kron(left, op.local_matrix), right)


def _embed_factors(lattice: LatticeSpec, factors: dict[int, np.ndarray]) -> np.ndarray:
    """Kronecker chain with the given site factors, identity elsewhere."""
    out = np.eye(1, dtype=complex)
    eye = np.eye(lattice.local_dim, dtype=complex)
    for site in range(lattice.sites):
        out = np.kron(out, factors.get(site, eye))
    return out


def translation_operator(lattice: LatticeSpec) -> UnitaryOperator:
    """Right cyclic shift of site contents.

    T maps |s_0 s_1 ... s_{N-1}> to |s_{N-1} s_0 ... s_{N-2}>, so on basis
    indices T e_i = e_{perm[i]} with perm[i] = (i mod d) * d^(N-1) + i div d.
    The permutation rides along on the operator for fast conjugation.
    """
    d, dim = lattice.local_dim, lattice.dim
    idx = np.arange(dim)
    perm = (idx % d) * (dim // d) + idx // d
    mat = np.zeros((dim, dim), dtype=complex)
    mat[perm, idx] = 1.0
    return UnitaryOperator(mat, permutation=perm)


def _diagonal_zz_field(lattice: LatticeSpec, field_coeff: float, bond_coeff: float) -> np.ndarray:
    """Diagonal of field_coeff * sum_i Z_i + bond_coeff * sum_bonds Z_i Z_j for qubits."""
    n, dim = lattice.sites, lattice.dim
    idx = np.arange(dim)
    z = np.empty((n, dim))
    for i in range(n):
        bits = (idx >> (n - 1 - i)) & 1
        z[i] = 1.0 - 2.0 * bits
    diag = field_coeff * z.sum(axis=0)
    if bond_coeff != 0.0:
        for i, j in _bonds(n):
            diag = diag + bond_coeff * z[i] * z[j]
    return diag


def _bonds(n: int) -> list[tuple[int, int]]:
    # periodic wrap; for N=2 the wraparound bond coincides with the bulk bond
    # and is counted once
    if n == 2:
        return [(0, 1)]
    return [(i, (i + 1) % n) for i in range(n)]


def build_hamiltonian(lattice: LatticeSpec, spec: HamiltonianSpec) -> HermitianOperator:
    """Translation-invariant chain Hamiltonian for the named model.

    free-spins:             h * sum_i Z_i
    transverse-field-ising: -J * sum_i Z_i Z_{i+1} - g * sum_i X_i
    heisenberg-xxz:         J * sum_i (X_i X_{i+1} + Y_i Y_{i+1} + delta * Z_i Z_{i+1})
    """
    if lattice.local_dim != 2:
        raise ValueError("the chain models are defined for local dimension 2")
    c = spec.couplings
    n = lattice.sites
    if spec.model == FREE_SPINS:
        h = np.diag(_diagonal_zz_field(lattice, c["h"], 0.0).astype(complex))
    elif spec.model == TRANSVERSE_FIELD_ISING:
        h = np.diag(_diagonal_zz_field(lattice, 0.0, -c["J"]).astype(complex))
        for i in range(n):
            h -= c["g"] * embed_site_operator(lattice, SiteOperator(i, sigma_x))
    else:
        h = np.diag(_diagonal_zz_field(lattice, 0.0, c["J"] * c["delta"]).astype(complex))
        for i, j in _bonds(n):
            h += c["J"] * _embed_factors(lattice, {i: sigma_x, j: sigma_x})
            h += c["J"] * _embed_factors(lattice, {i: sigma_y, j: sigma_y})
    out = HermitianOperator(h)
    t = translation_operator(lattice)
    if translation_defect(out.matrix, t) > 1e-10:
        raise AssertionError("built Hamiltonian does not commute with translation")
    return out


def translation_defect(matrix: np.ndarray, t: UnitaryOperator) -> float:
    """max-norm of T A T^dag - A, via the permutation when available."""
    if t.permutation is not None:
        inv = np.empty_like(t.permutation)
        inv[t.permutation] = np.arange(t.permutation.size)
        return max_norm(matrix[np.ix_(inv, inv)] - matrix)
    return max_norm(t.matrix @ matrix @ t.matrix.conj().T - matrix)


def reduce_to_site(lattice: LatticeSpec, matrix: np.ndarray, site: int) -> np.ndarray:
    """Partial trace down to one site's d x d operator."""
    if not 0 <= site < lattice.sites:
        raise ValueError(f"site {site} out of range for {lattice.sites} sites")
    n, d = lattice.sites, lattice.local_dim
    a = np.asarray(matrix, dtype=complex).reshape([d] * (2 * n))
    letters = "abcdefghijklmnop"
    rows = letters[:n]
    cols = rows[:site] + "z" + rows[site + 1 :]
    return np.einsum(f"{rows}{cols}->{rows[site]}z", a)
