"""Dense Hermitian linear algebra kernel.

Spectral decompositions, matrix functions, operator norms, and seeded
generators for randomized property tests.  Operators are plain complex
numpy arrays wrapped in thin validated containers.  Every matrix function
goes through a full eigendecomposition, which keeps results exactly
Hermitian and is affordable at the dimensions this package targets.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# construction tolerances
HERMITICITY_RTOL = 1e-12
UNITARITY_ATOL = 1e-10
RECONSTRUCTION_RTOL = 1e-10
TRACE_ATOL = 1e-10
PSD_EIGENVALUE_FLOOR = -1e-12

# relative cutoff separating a genuine spectral kernel from round-off
SUPPORT_RTOL = 1e-14


class EigensolverError(RuntimeError):
    """Eigendecomposition failed to converge."""

    def __init__(self, dim: int, scale: float):
        self.dim = dim
        self.scale = scale
        super().__init__(
            f"eigensolver failed to converge on a {dim}x{dim} Hermitian matrix "
            f"(entry scale {scale:.3e})"
        )


class MatrixFunctionDomainError(ValueError):
    """A scalar function evaluated to a non-finite value on an eigenvalue."""

    def __init__(self, eigenvalue: float):
        self.eigenvalue = eigenvalue
        super().__init__(
            f"matrix function is not finite at eigenvalue {eigenvalue!r}; "
            "clamp or shift the spectrum before applying it"
        )


class OverflowGuardError(ValueError):
    """An exponential-scaling step would overflow double precision."""


def as_square_complex(matrix, name: str = "matrix") -> np.ndarray:
    """Validate and return a finite square complex128 array."""
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"{name} must be square with dim >= 1, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    return a


def max_norm(a) -> float:
    """Largest entry magnitude."""
    return float(np.abs(a).max())


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(a))


def operator_norm(a) -> float:
    """Largest singular value.

    Hermitian inputs are routed through the real eigensolver; anything else
    falls back to a singular value computation.
    """
    a = np.asarray(a, dtype=np.complex128)
    scale = max_norm(a)
    if scale == 0.0:
        return 0.0
    if max_norm(a - a.conj().T) <= 1e-12 * scale:
        return float(np.abs(np.linalg.eigvalsh((a + a.conj().T) / 2)).max())
    return float(np.linalg.norm(a, 2))


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def trace_product(a, b) -> complex:
    """tr(a @ b) without forming the product matrix."""
    return complex(np.einsum("ij,ji->", a, b))


@dataclass(frozen=True)
class HermitianOperator:
    """Square complex matrix certified Hermitian at construction.

    The stored matrix is exactly (A + A^dag) / 2; construction rejects inputs
    whose anti-Hermitian part exceeds HERMITICITY_RTOL relative to the entry
    scale.
    """

    matrix: np.ndarray

    def __post_init__(self):
        a = as_square_complex(self.matrix)
        scale = max_norm(a)
        defect = max_norm(a - a.conj().T)
        if defect > HERMITICITY_RTOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: anti-Hermitian defect {defect:.3e} "
                f"exceeds {HERMITICITY_RTOL:g} * scale {scale:.3e}"
            )
        object.__setattr__(self, "matrix", (a + a.conj().T) / 2)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class UnitaryOperator:
    """Square complex matrix certified unitary at construction.

    When the matrix is a basis permutation, `permutation` holds the index map
    (column i carries a single unit entry in row permutation[i]).  Conjugation
    by a permutation reduces to fancy indexing, which downstream averaging
    exploits; the dense product check is skipped in that case because a
    verified bijection is unitary by construction.
    """

    matrix: np.ndarray
    permutation: np.ndarray | None = None

    def __post_init__(self):
        a = as_square_complex(self.matrix)
        object.__setattr__(self, "matrix", a)
        if self.permutation is not None:
            perm = np.asarray(self.permutation, dtype=np.intp)
            dim = a.shape[0]
            if perm.shape != (dim,) or np.bincount(perm, minlength=dim).max() != 1:
                raise ValueError("permutation is not a bijection on the basis")
            cols = np.arange(dim)
            if max_norm(a[perm, cols] - 1.0) > 1e-12:
                raise ValueError("permutation does not match the matrix entries")
            object.__setattr__(self, "permutation", perm)
            return
        defect = max_norm(a.conj().T @ a - np.eye(a.shape[0]))
        if defect > UNITARITY_ATOL:
            raise ValueError(
                f"matrix is not unitary: |U^dag U - 1| = {defect:.3e} "
                f"exceeds {UNITARITY_ATOL:g}"
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class SpectralDecomposition:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian operator.

    Operators that are diagonal in the computational basis get a compact
    representation: `basis_permutation` records which basis vector carries
    each eigenvalue and the dense eigenvector matrix is materialized lazily.
    All basis rotations go through the helper methods so both representations
    share one code path at call sites.
    """

    def __init__(self, eigenvalues, eigenvectors=None, basis_permutation=None):
        w = np.asarray(eigenvalues, dtype=np.float64)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("eigenvalues must form a nonempty 1d array")
        if np.any(np.diff(w) < 0):
            raise ValueError("eigenvalues must be sorted ascending")
        if (eigenvectors is None) == (basis_permutation is None):
            raise ValueError("provide exactly one of eigenvectors or basis_permutation")
        self.eigenvalues = w
        self._vectors = None
        self.basis_permutation = None
        if eigenvectors is not None:
            v = as_square_complex(eigenvectors, "eigenvectors")
            if v.shape[0] != w.size:
                raise ValueError("eigenvector block does not match eigenvalue count")
            self._vectors = v
        else:
            perm = np.asarray(basis_permutation, dtype=np.intp)
            if perm.shape != (w.size,) or np.bincount(perm, minlength=w.size).max() != 1:
                raise ValueError("basis_permutation is not a bijection")
            self.basis_permutation = perm

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def eigenvectors(self) -> np.ndarray:
        if self._vectors is None:
            v = np.zeros((self.dim, self.dim), dtype=np.complex128)
            v[self.basis_permutation, np.arange(self.dim)] = 1.0
            self._vectors = v
        return self._vectors

    def to_eigenbasis(self, a: np.ndarray) -> np.ndarray:
        """V^dag a V."""
        if self.basis_permutation is not None:
            p = self.basis_permutation
            return a[np.ix_(p, p)]
        v = self._vectors
        return v.conj().T @ a @ v

    def from_eigenbasis(self, b: np.ndarray) -> np.ndarray:
        """V b V^dag."""
        if self.basis_permutation is not None:
            inv = np.empty(self.dim, dtype=np.intp)
            inv[self.basis_permutation] = np.arange(self.dim)
            return b[np.ix_(inv, inv)]
        v = self._vectors
        return v @ b @ v.conj().T

    def diagonal_from_eigenbasis(self, values) -> np.ndarray:
        """V diag(values) V^dag as a dense matrix."""
        values = np.asarray(values)
        if self.basis_permutation is not None:
            d = np.zeros(self.dim, dtype=values.dtype)
            d[self.basis_permutation] = values
            return np.diag(d.astype(np.complex128))
        v = self._vectors
        return (v * values[np.newaxis, :]) @ v.conj().T

    def reconstruct(self) -> np.ndarray:
        return self.diagonal_from_eigenbasis(self.eigenvalues)


def spectral_decompose(a: HermitianOperator) -> SpectralDecomposition:
    """Full eigendecomposition of a Hermitian operator.

    Exactly diagonal inputs take a sort-only path that stores a basis
    permutation instead of a dense eigenvector matrix; the chain models with
    purely diagonal Hamiltonians rely on this to stay cheap at large dims.
    """
    m = a.matrix
    diag = np.diagonal(m)
    if max_norm(m - np.diag(diag)) == 0.0:
        order = np.argsort(diag.real, kind="stable")
        return SpectralDecomposition(
            diag.real[order], basis_permutation=np.asarray(order, dtype=np.intp)
        )
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(m.shape[0], max_norm(m)) from exc
    decomp = SpectralDecomposition(w, eigenvectors=v)
    resid = max_norm(decomp.reconstruct() - m)
    if resid > RECONSTRUCTION_RTOL * max(1.0, max_norm(m)):
        raise EigensolverError(m.shape[0], max_norm(m))
    return decomp


def matrix_function(decomp: SpectralDecomposition, f) -> HermitianOperator:
    """Apply a real scalar function through the eigendecomposition.

    f may be vectorized over a float array or a plain scalar function; the
    result is V f(Lambda) V^dag, Hermitian by construction.  Non-finite values
    of f on the spectrum raise MatrixFunctionDomainError naming the offending
    eigenvalue; callers that need a kernel convention (such as eta(0) = 0)
    clamp the spectrum before calling.
    """
    w = decomp.eigenvalues
    # non-finite values become a typed error below, so numpy need not warn
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = np.asarray(f(w), dtype=np.float64)
        if values.shape != w.shape:
            values = np.array([float(f(x)) for x in w], dtype=np.float64)
    bad = ~np.isfinite(values)
    if bad.any():
        raise MatrixFunctionDomainError(float(w[np.nonzero(bad)[0][0]]))
    return HermitianOperator(decomp.diagonal_from_eigenbasis(values))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator.

    Positivity is checked by a shifted Cholesky factorization (fast) with an
    eigenvalue fallback near the boundary; eigenvalues may dip to
    PSD_EIGENVALUE_FLOOR to absorb round-off from channel arithmetic.
    """

    matrix: np.ndarray

    def __post_init__(self):
        a = HermitianOperator(self.matrix).matrix
        tr = a.trace().real
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr!r} is not 1 within {TRACE_ATOL:g}")
        shift = -PSD_EIGENVALUE_FLOOR
        try:
            np.linalg.cholesky(a + 2 * shift * np.eye(a.shape[0]))
        except np.linalg.LinAlgError:
            lo = float(np.linalg.eigvalsh(a).min())
            if lo < PSD_EIGENVALUE_FLOOR:
                raise ValueError(
                    f"matrix is not positive semidefinite: min eigenvalue {lo:.3e}"
                ) from None
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def random_density_matrix(dim: int, seed: int) -> DensityMatrix:
    """Full-rank random state G G^dag / tr(G G^dag), G complex standard Gaussian."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace().real)


def random_unitary(dim: int, seed: int) -> UnitaryOperator:
    """Haar-style random unitary from the QR factorization of a Gaussian matrix.

    The R diagonal is rephased to unit modulus so the draw does not depend on
    the QR sign convention.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return UnitaryOperator(q * (d / np.abs(d))[np.newaxis, :])
