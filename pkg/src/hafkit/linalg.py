"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The Hermitian
eigensolver is a cyclic complex Jacobi iteration; everything spectral
(PSD tests, square roots, spectral norm, Loewner order) is built on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionError,
    PreconditionError,
    SingularMatrixError,
)

#: Relative tolerance for Hermitian / symmetric / PSD checks.
DEFAULT_TOL = 1e-9
#: Absolute floor so that zero matrices still get a usable tolerance.
ABS_TOL_FLOOR = 1e-14

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_THRESHOLD = 1e-14

#: Condition number beyond which ``inverse`` refuses to proceed.
CONDITION_CAP = 1e13


def as_matrix(m, *, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-D ``complex128`` array (a copy is made)."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError(f"{name} has non-finite entries")
    return arr


def _require_square(m: np.ndarray, name: str = "matrix") -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")


def relative_tol(m: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """``tol`` scaled by the spectral norm of ``m``, floored for zero input."""
    return max(tol * spectral_norm(m), ABS_TOL_FLOOR)


def is_hermitian(m, tol: float | None = None) -> bool:
    """True iff ``max |m[i,j] - conj(m[j,i])| <= tol``.

    With ``tol=None`` the module default relative to ``||m||_2`` is used.
    """
    m = np.asarray(m, dtype=np.complex128)
    _require_square(m)
    if tol is None:
        tol = relative_tol(m)
    if m.size == 0:
        return True
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def is_symmetric(m, tol: float | None = None) -> bool:
    """True iff ``max |m[i,j] - m[j,i]| <= tol`` (plain transpose)."""
    m = np.asarray(m, dtype=np.complex128)
    _require_square(m)
    if tol is None:
        tol = relative_tol(m)
    if m.size == 0:
        return True
    return float(np.max(np.abs(m - m.T))) <= tol


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, one eigenvector per column

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def _jacobi_hermitian(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.copy()
    u = np.eye(n, dtype=np.complex128)
    norm_f = np.linalg.norm(a)
    threshold = JACOBI_REL_THRESHOLD * norm_f
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold:
            return np.real(np.diag(a)).copy(), u
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0 or mag <= 1e-300:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # negligible relative to both diagonals: zero it outright
                if abs(app) + 1e18 * mag == abs(app) and abs(aqq) + 1e18 * mag == abs(aqq):
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / mag
                theta = (aqq - app) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # W = diag(1, conj(phase)) @ [[c, s], [-s, c]]; A <- W* A W
                w10 = -s * phase.conjugate()
                w11 = c * phase.conjugate()
                for mat in (a, u):
                    cp = mat[:, p].copy()
                    cq = mat[:, q]
                    mat[:, p] = c * cp + w10 * cq
                    mat[:, q] = s * cp + w11 * cq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp + w10.conjugate() * rq
                a[q, :] = s * rp + w11.conjugate() * rq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
    )


def eigh(m, tol: float | None = None) -> HermitianEigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues are returned ascending with matching eigenvector columns.
    The input is symmetrized as ``(m + m^*)/2`` after the Hermitian check so
    that round-off asymmetry does not leak into the result.
    """
    m = as_matrix(m)
    _require_square(m)
    if not is_hermitian(m, tol):
        raise PreconditionError("eigh requires a Hermitian matrix")
    n = m.shape[0]
    if n == 0:
        return HermitianEigenDecomposition(np.zeros(0), np.eye(0, dtype=np.complex128))
    h = 0.5 * (m + m.conj().T)
    vals, vecs = _jacobi_hermitian(h)
    order = np.argsort(vals, kind="stable")
    return HermitianEigenDecomposition(vals[order], vecs[:, order])


def eigvalsh(m, tol: float | None = None) -> np.ndarray:
    return eigh(m, tol).eigenvalues


def spectral_norm(m) -> float:
    """Largest singular value, ``sqrt(lambda_max(m^* m))``."""
    m = np.asarray(m, dtype=np.complex128)
    if m.size == 0:
        return 0.0
    gram = m.conj().T @ m
    gram = 0.5 * (gram + gram.conj().T)
    vals, _ = _jacobi_hermitian(gram)
    return float(np.sqrt(max(float(np.max(vals)), 0.0)))


def is_psd(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``lambda_min(m) >= -tol * max(1, ||m||_2)``."""
    m = as_matrix(m)
    _require_square(m)
    if m.shape[0] == 0:
        return True
    vals = eigvalsh(m)
    scale = max(1.0, float(np.max(np.abs(vals))))
    return float(vals[0]) >= -tol * scale


def psd_sqrt(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The PSD square root of a PSD matrix.

    Eigenvalues in ``[-tol * max(1, ||m||_2), 0)`` are clamped to zero before
    rooting; anything more negative is rejected.
    """
    m = as_matrix(m)
    _require_square(m)
    dec = eigh(m)
    vals = dec.eigenvalues
    if vals.size == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if vals[0] < -tol * scale:
        raise PreconditionError(
            f"psd_sqrt requires a PSD matrix (min eigenvalue {vals[0]:.3e})"
        )
    u = dec.eigenvectors
    root = (u * np.sqrt(np.clip(vals, 0.0, None))) @ u.conj().T
    return 0.5 * (root + root.conj().T)


def inverse(m) -> np.ndarray:
    """Inverse by LU with partial pivoting, guarded by a condition estimate."""
    m = as_matrix(m)
    _require_square(m)
    n = m.shape[0]
    if n == 0:
        return m.copy()
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > CONDITION_CAP:
        raise SingularMatrixError(f"matrix is singular or ill-conditioned (cond={cond:.3e})")
    try:
        return np.linalg.solve(m, np.eye(n, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc


def determinant(m) -> complex:
    """Determinant via LU elimination with partial pivoting."""
    m = as_matrix(m)
    _require_square(m)
    if m.shape[0] == 0:
        return 1.0 + 0.0j
    return complex(np.linalg.det(m))


def loewner_geq(l, b, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``l - b`` is PSD, i.e. ``l >= b`` in the Loewner order."""
    l = as_matrix(l, name="l")
    b = as_matrix(b, name="b")
    if l.shape != b.shape:
        raise DimensionError(f"shape mismatch {l.shape} vs {b.shape}")
    return is_psd(l - b, tol)


def swap_matrix(m: int) -> np.ndarray:
    """The 2m x 2m block swap ``[[0, I], [I, 0]]``."""
    x = np.zeros((2 * m, 2 * m), dtype=np.complex128)
    x[:m, m:] = np.eye(m)
    x[m:, :m] = np.eye(m)
    return x
