"""Complex hermitian matrix algebra: spectra, norms, power limits, splittings.

All matrices are dense ``complex128`` numpy arrays. Functions validate
hermiticity where the operation requires it and raise the shared error
types otherwise. Everything here is a pure function of its inputs.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConsistencyError,
    DomainError,
    StructuralError,
    ValidationError,
)

HERMITICITY_ATOL = 1e-12
DECOMPOSITION_TOL = 1e-10
CLUSTER_TOL = 1e-9
PHONE_EIG_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-8
VANISHING_TOL = 1e-10
SPLIT_RESIDUAL_TOL = 1e-8


def as_matrix(M):
    """Coerce to a square complex128 array."""
    A = np.ascontiguousarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ValidationError("matrix dimension must be at least 1")
    return A


def hermiticity_defect(M):
    """Worst |M[i,j] - conj(M[j,i])| together with the offending index pair."""
    D = np.abs(M - M.conj().T)
    i, j = np.unravel_index(np.argmax(D), D.shape)
    return float(D[i, j]), (int(i), int(j))


def require_hermitian(M, atol=HERMITICITY_ATOL):
    """Validate hermiticity entrywise and return the coerced array."""
    A = as_matrix(M)
    defect, (i, j) = hermiticity_defect(A)
    if defect > atol:
        raise ValidationError(
            f"matrix is not hermitian: entries ({i}, {j}) and ({j}, {i}) "
            f"differ by {defect:.3e} (tolerance {atol:.1e})"
        )
    return A


def is_hermitian(M, atol=HERMITICITY_ATOL):
    try:
        require_hermitian(M, atol)
    except ValidationError:
        return False
    return True


def mat_norm(M):
    """Spectral norm (largest singular value) of an arbitrary matrix."""
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def direct_sum(*blocks):
    """Block-diagonal direct sum of square matrices."""
    mats = [as_matrix(b) for b in blocks if np.asarray(b).size > 0]
    if not mats:
        return np.zeros((0, 0), dtype=np.complex128)
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for m in mats:
        d = m.shape[0]
        out[pos : pos + d, pos : pos + d] = m
        pos += d
    return out


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending with the matching orthonormal basis."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self):
        U = self.basis
        return U @ np.diag(self.eigenvalues.astype(np.complex128)) @ U.conj().T


def spectral(M):
    """Hermitian eigendecomposition, eigenvalues descending.

    The orthonormality and reconstruction residuals are verified against
    the declared tolerances; the eigensolver itself is interchangeable.
    """
    A = require_hermitian(M)
    vals, vecs = np.linalg.eigh(A)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    sd = SpectralDecomposition(eigenvalues=vals, basis=vecs)
    n = A.shape[0]
    ortho = np.abs(vecs.conj().T @ vecs - np.eye(n)).max()
    if ortho > DECOMPOSITION_TOL:
        raise ConsistencyError(f"eigenbasis not orthonormal: defect {ortho:.3e}")
    recon = np.abs(sd.reconstruct() - A).max()
    scale = max(1.0, float(np.abs(vals).max(initial=0.0)))
    if recon > DECOMPOSITION_TOL * scale:
        raise ConsistencyError(f"spectral reconstruction residual {recon:.3e}")
    return sd


def operator_norm(M, positive=False):
    """Largest |eigenvalue| of a hermitian matrix.

    With ``positive`` set, a genuinely negative eigenvalue (< -1e-8) is a
    domain error, and the result equals the largest eigenvalue.
    """
    A = require_hermitian(M)
    vals = np.linalg.eigvalsh(A)
    if positive and vals[0] < -NEGATIVE_EIG_TOL:
        raise DomainError(f"matrix has negative eigenvalue {vals[0]:.3e}")
    return float(np.abs(vals).max())


def schatten_norm(M, p):
    """(sum of eigenvalue^p)^(1/p) for positive hermitian M; operator norm at p=inf."""
    if p != np.inf and p < 1:
        raise DomainError(f"p-norm requires p >= 1, got {p}")
    A = require_hermitian(M)
    vals = np.linalg.eigvalsh(A)
    if vals[0] < -NEGATIVE_EIG_TOL:
        raise DomainError(f"matrix has negative eigenvalue {vals[0]:.3e}")
    vals = np.clip(vals, 0.0, None)
    if p == np.inf:
        return float(vals.max())
    return float(np.sum(vals**p) ** (1.0 / p))


def fractional_power(M, p):
    """M^p for positive hermitian M via spectral functional calculus.

    Eigenvalues are clipped at 0 before powering, absorbing negative
    round-off of magnitude up to the validation tolerance.
    """
    sd = spectral(M)
    vals = sd.eigenvalues
    if vals[-1] < -NEGATIVE_EIG_TOL:
        raise DomainError(f"matrix has negative eigenvalue {vals[-1]:.3e}")
    powered = np.clip(vals, 0.0, None) ** p
    U = sd.basis
    out = U @ np.diag(powered.astype(np.complex128)) @ U.conj().T
    return 0.5 * (out + out.conj().T)


def is_phone(M, tol=PHONE_EIG_TOL):
    """Positive hermitian with largest eigenvalue 1, within tolerance."""
    try:
        A = require_hermitian(M)
    except ValidationError:
        return False
    vals = np.linalg.eigvalsh(A)
    return bool(vals[0] >= -tol and vals[-1] <= 1.0 + tol and abs(vals[-1] - 1.0) <= tol)


def require_phone(M, tol=PHONE_EIG_TOL):
    A = require_hermitian(M)
    vals = np.linalg.eigvalsh(A)
    if vals[0] < -tol or vals[-1] > 1.0 + tol or abs(vals[-1] - 1.0) > tol:
        raise ValidationError(
            "matrix is not norm-1 positive: eigenvalues in "
            f"[{vals[0]:.3e}, {vals[-1]:.6f}]"
        )
    return A


def power_limit(M):
    """Limit of M^i: the spectral projector onto the eigenvalue-1 cluster.

    Requires eigenvalues <= 1 (up to round-off); eigenvalues within 1e-9
    of 1 count as exactly 1. The result P is idempotent and satisfies
    M P = P = P M within the same tolerance.
    """
    sd = spectral(M)
    vals = sd.eigenvalues
    if vals[0] > 1.0 + NEGATIVE_EIG_TOL:
        raise DomainError(
            f"largest eigenvalue {vals[0]:.12f} exceeds 1; the power limit diverges"
        )
    cluster = np.abs(vals - 1.0) <= CLUSTER_TOL
    U = sd.basis[:, cluster]
    P = U @ U.conj().T
    return 0.5 * (P + P.conj().T)


def eigenspace_dim(M, eigenvalue, tol=CLUSTER_TOL):
    """Number of eigenvalues within the clustering tolerance of ``eigenvalue``."""
    A = require_hermitian(M)
    vals = np.linalg.eigvalsh(A)
    return int(np.count_nonzero(np.abs(vals - eigenvalue) <= tol))


def common_top_eigenspace_dim(A, B):
    """Dimension of the intersection of the two top (eigenvalue-1) eigenspaces.

    Computed as the nullity of (1 - P_A) + (1 - P_B), whose kernel is
    exactly the intersection of the two projector images.
    """
    A = require_phone(A)
    B = require_phone(B)
    n = A.shape[0]
    Q = (np.eye(n) - power_limit(A)) + (np.eye(n) - power_limit(B))
    vals = np.linalg.eigvalsh(Q)
    return int(np.count_nonzero(np.abs(vals) <= CLUSTER_TOL))


def vanishing_product_tests(A, B, k):
    """The four equivalent vanishing predicates for a norm-1 positive pair.

    Evaluates AB = 0, trace(AB) = 0, trace((AB)^k) = 0 and ABA = 0 at
    tolerance 1e-10 on norms/traces. The four answers must agree; any
    disagreement signals a tolerance misconfiguration.
    """
    A = require_phone(A)
    B = require_phone(B)
    if k < 1:
        raise ValidationError(f"k must be a positive integer, got {k}")
    AB = A @ B
    preds = (
        mat_norm(AB) <= VANISHING_TOL,
        abs(np.trace(AB)) <= VANISHING_TOL,
        abs(np.trace(np.linalg.matrix_power(AB, k))) <= VANISHING_TOL,
        mat_norm(A @ B @ A) <= VANISHING_TOL,
    )
    if len(set(preds)) != 1:
        raise ConsistencyError(
            f"vanishing predicates disagree: {preds}; tolerance misconfigured"
        )
    return preds


@dataclass(frozen=True)
class SplitDecomposition:
    """Simultaneous block form U^H A U = 1_{n-l} (+) alpha A', U^H B U = 0 (+) B'."""

    basis: np.ndarray
    l: int
    alpha: float
    a_prime: np.ndarray
    b_prime: np.ndarray

    def reconstruct(self):
        n = self.basis.shape[0]
        top = np.eye(n - self.l, dtype=np.complex128)
        A = self.basis @ direct_sum(top, self.alpha * self.a_prime) @ self.basis.conj().T
        zero = np.zeros((n - self.l, n - self.l), dtype=np.complex128)
        B = self.basis @ direct_sum(zero, self.b_prime) @ self.basis.conj().T
        return A, B


def split_on_power_limit(A, B):
    """Split a pair with vanishing trace(P_A B) into the canonical block form.

    Returns None when trace(P_A B) > 1e-10 (no split exists). Otherwise
    builds the basis from the spectral basis of A, eigenvalue-1 vectors
    first, and returns blocks with A = 1_{n-l} (+) alpha A' and
    B = 0_{n-l} (+) B' for some 0 <= alpha < 1 and 0 < l < n.
    """
    A = require_phone(A)
    B = require_phone(B)
    if A.shape != B.shape:
        raise ValidationError(f"dimension mismatch: {A.shape} vs {B.shape}")
    n = A.shape[0]
    P = power_limit(A)
    if float(np.trace(P @ B).real) > VANISHING_TOL:
        return None
    sd = spectral(A)
    rank = int(np.count_nonzero(np.abs(sd.eigenvalues - 1.0) <= CLUSTER_TOL))
    if rank == n:
        raise StructuralError(
            "split requested but the power limit is the identity; "
            "trace(P_A B) can only vanish with B = 0"
        )
    l = n - rank
    U = sd.basis
    tail = sd.eigenvalues[rank:]
    alpha = float(max(tail[0], 0.0))
    if alpha > 0.0:
        a_prime = np.diag((tail / alpha).astype(np.complex128))
    else:
        a_prime = np.eye(l, dtype=np.complex128)
    b_prime = U.conj().T @ B @ U
    b_prime = b_prime[rank:, rank:]
    b_prime = 0.5 * (b_prime + b_prime.conj().T)
    out = SplitDecomposition(basis=U, l=l, alpha=alpha, a_prime=a_prime, b_prime=b_prime)
    Arec, Brec = out.reconstruct()
    residual = max(np.abs(Arec - A).max(), np.abs(Brec - B).max())
    if residual > SPLIT_RESIDUAL_TOL:
        raise StructuralError(f"split reconstruction residual {residual:.3e}")
    return out


def decompose_common_top(A, B):
    """Strip the shared top eigenspace: A = A' (+) 1_l, B = B' (+) 1_l.

    l is the dimension of the intersection of the two top eigenspaces and
    the primed blocks satisfy norm(A' B') < 1 strictly. Returns
    (a_prime, b_prime, l); the primed blocks are empty when l = n.
    """
    A = require_phone(A)
    B = require_phone(B)
    if A.shape != B.shape:
        raise ValidationError(f"dimension mismatch: {A.shape} vs {B.shape}")
    n = A.shape[0]
    Q = (np.eye(n) - power_limit(A)) + (np.eye(n) - power_limit(B))
    sq = spectral(Q)
    l = int(np.count_nonzero(np.abs(sq.eigenvalues) <= CLUSTER_TOL))
    V = sq.basis
    m = n - l
    a_prime = V.conj().T @ A @ V
    a_prime = a_prime[:m, :m]
    a_prime = 0.5 * (a_prime + a_prime.conj().T)
    b_prime = V.conj().T @ B @ V
    b_prime = b_prime[:m, :m]
    b_prime = 0.5 * (b_prime + b_prime.conj().T)
    if m > 0:
        product_norm = mat_norm(a_prime @ b_prime)
        if product_norm >= 1.0 - VANISHING_TOL:
            raise StructuralError(
                f"primed product norm {product_norm:.12f} is not below 1 "
                "after stripping the shared top eigenspace"
            )
    return a_prime, b_prime, l


def matrix_to_json(M):
    """Serialize to the interchange format {'n': ..., 're': ..., 'im': ...}."""
    A = as_matrix(M)
    return {
        "n": int(A.shape[0]),
        "re": A.real.tolist(),
        "im": A.imag.tolist(),
    }


def matrix_from_json(obj):
    """Parse the interchange format and validate hermiticity."""
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValidationError(
            f"matrix arrays must be {n}x{n}, got re {re.shape} and im {im.shape}"
        )
    return require_hermitian(re + 1j * im)


def load_matrix(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read matrix file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_json(obj)


def save_matrix(M, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(M), fh)
        fh.write("\n")
