"""Encoding complex symmetric matrices into Gaussian covariance matrices.

A 2M x 2M complex symmetric ``R`` is encodable when there is a physical
covariance matrix ``sigma`` (ordering ``a_1..a_M, a_1^+..a_M^+``) with

    c R = X [I - (sigma + I/2)^{-1}],    X = [[0, I], [I, 0]],

for some ``c > 0``. That happens iff ``R11 = conj(R22)``, ``R12 = R21^T``,
``R12`` is Hermitian PSD, and ``0 < c < 1/||R||_2``. Solving for sigma gives
``sigma = (I - c X R)^{-1} - I/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, ParityError, PreconditionError
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    eigvalsh,
    inverse,
    is_hermitian,
    is_psd,
    is_symmetric,
    psd_sqrt,
    relative_tol,
    spectral_norm,
    swap_matrix,
)

PHYS_TOL = 1e-9
ROUND_TRIP_TOL = 1e-9
# c must stay this far (relatively) below 1/||R||_2
C_MARGIN = 1e-12


@dataclass(frozen=True)
class CovarianceMatrix:
    sigma: np.ndarray
    symplectic_eigenvalues: np.ndarray

    @classmethod
    def from_sigma(cls, sigma) -> "CovarianceMatrix":
        sigma = as_matrix(sigma, name="sigma")
        return cls(sigma, symplectic_spectrum(sigma))

    @property
    def m(self) -> int:
        return self.sigma.shape[0] // 2

    def is_physical(self, tol: float = PHYS_TOL) -> bool:
        """Hermitian, ``sigma + K/2`` PSD, and every symplectic eigenvalue >= 1/2."""
        if not is_hermitian(self.sigma):
            return False
        if self.symplectic_eigenvalues.size and self.symplectic_eigenvalues.min() < 0.5 - tol:
            return False
        return is_psd(self.sigma + 0.5 * _k_matrix(self.m), tol)

    def boundary_modes(self, tol: float = PHYS_TOL) -> list[int]:
        """Indices of symplectic eigenvalues within ``tol`` of 1/2."""
        return [i for i, v in enumerate(self.symplectic_eigenvalues) if abs(v - 0.5) <= tol]


@dataclass(frozen=True)
class ConditionFailure:
    condition: int
    message: str
    worst: float


@dataclass(frozen=True)
class EncodabilityReport:
    encodable: bool
    failures: list[ConditionFailure]
    c_max: float
    sigma: CovarianceMatrix | None = None
    c: float | None = None

    def failed_conditions(self) -> set[int]:
        return {f.condition for f in self.failures}


def _k_matrix(m: int) -> np.ndarray:
    return np.diag(np.concatenate([np.ones(m), -np.ones(m)])).astype(np.complex128)


def _check_input(r) -> np.ndarray:
    r = as_matrix(r, name="R")
    if r.shape[0] != r.shape[1]:
        raise PreconditionError(f"R must be square, got shape {r.shape}")
    if r.shape[0] % 2:
        raise ParityError(f"R must have even order, got {r.shape[0]}")
    if not is_symmetric(r):
        raise PreconditionError("R must be complex symmetric")
    return r


def scale_interval(r) -> tuple[float, float]:
    """The admissible open interval ``(0, 1/||R||_2)``; ``(0, inf)`` for R = 0."""
    r = _check_input(r)
    norm = spectral_norm(r)
    return 0.0, (math.inf if norm == 0.0 else 1.0 / norm)


def _c_is_admissible(c: float, c_max: float) -> bool:
    return c > 0.0 and math.isfinite(c) and c < c_max * (1.0 - C_MARGIN)


def check_encodable(r, c: float | None = None, tol: float = DEFAULT_TOL) -> EncodabilityReport:
    """Evaluate the three encodability conditions for ``R``.

    Conditions 1 and 2 concern the blocks of ``R``. Condition 3 is a
    constraint on the scale ``c``: it is only checked when ``c`` is given,
    in which case the covariance matrix is also built on success.
    """
    r = _check_input(r)
    m = r.shape[0] // 2
    r11, r12 = r[:m, :m], r[:m, m:]
    r21, r22 = r[m:, :m], r[m:, m:]
    atol = relative_tol(r, tol)
    failures: list[ConditionFailure] = []

    if m:
        d_diag = float(np.max(np.abs(r11 - r22.conj())))
        d_off = float(np.max(np.abs(r12 - r21.T)))
        if max(d_diag, d_off) > atol:
            which = "R11 != conj(R22)" if d_diag >= d_off else "R12 != R21^T"
            failures.append(ConditionFailure(
                1, f"condition 1 violated: {which} (max deviation {max(d_diag, d_off):.3e})",
                max(d_diag, d_off)))

        d_herm = float(np.max(np.abs(r12 - r12.conj().T)))
        if d_herm > atol:
            failures.append(ConditionFailure(
                2, f"condition 2 violated: R12 is not Hermitian (max deviation {d_herm:.3e})",
                d_herm))
        else:
            vals = eigvalsh(0.5 * (r12 + r12.conj().T))
            scale = max(1.0, float(np.max(np.abs(vals))))
            if vals[0] < -tol * scale:
                failures.append(ConditionFailure(
                    2, f"condition 2 violated: R12 not PSD (min eigenvalue {vals[0]:.6g})",
                    float(-vals[0])))

    norm = spectral_norm(r)
    c_max = math.inf if norm == 0.0 else 1.0 / norm
    sigma = None
    if c is not None and not _c_is_admissible(c, c_max):
        failures.append(ConditionFailure(
            3, f"condition 3 violated: c={c!r} not in (0, {c_max!r})", float(c)))
    if c is not None and not failures:
        sigma = _build(r, c)
    return EncodabilityReport(not failures, failures, c_max, sigma, c)


def _build(r: np.ndarray, c: float) -> CovarianceMatrix:
    n = r.shape[0]
    x = swap_matrix(n // 2)
    eye = np.eye(n, dtype=np.complex128)
    sigma = inverse(eye - c * (x @ r)) - 0.5 * eye
    sigma = 0.5 * (sigma + sigma.conj().T)
    residual = covariance_residual(r, c, sigma)
    if residual > ROUND_TRIP_TOL:
        raise NumericalError(f"covariance round-trip residual {residual:.3e} exceeds {ROUND_TRIP_TOL}")
    return CovarianceMatrix.from_sigma(sigma)


def covariance_residual(r, c: float, sigma) -> float:
    """``max |c R - X (I - (sigma + I/2)^{-1})|``."""
    r = np.asarray(r, dtype=np.complex128)
    n = r.shape[0]
    if n == 0:
        return 0.0
    eye = np.eye(n, dtype=np.complex128)
    rebuilt = swap_matrix(n // 2) @ (eye - inverse(np.asarray(sigma) + 0.5 * eye))
    return float(np.max(np.abs(c * r - rebuilt)))


def build_covariance(r, c: float) -> CovarianceMatrix:
    """Solve ``c R = X [I - (sigma + I/2)^{-1}]`` for sigma.

    Raises ``PreconditionError`` if R fails conditions 1-2 and ``DomainError``
    if ``c`` lies outside ``(0, 1/||R||_2)``.
    """
    report = check_encodable(r)
    if not report.encodable:
        raise PreconditionError("; ".join(f.message for f in report.failures))
    if not _c_is_admissible(c, report.c_max):
        raise DomainError(f"c={c!r} outside the open interval (0, {report.c_max!r})")
    return _build(as_matrix(r), c)


def symplectic_spectrum(sigma) -> np.ndarray:
    """Symplectic eigenvalues of a 2M x 2M covariance matrix, ascending.

    These are the moduli of the eigenvalues of ``K sigma`` with
    ``K = diag(I, -I)``, which come in +/- pairs. For PSD sigma the spectrum
    is read off the Hermitian matrix ``sigma^{1/2} K sigma^{1/2}``, whose
    top M eigenvalues are the positive members of the pairs.
    """
    sigma = as_matrix(sigma, name="sigma")
    n = sigma.shape[0]
    if sigma.shape[0] != sigma.shape[1] or n % 2:
        raise PreconditionError(f"sigma must be square of even order, got {sigma.shape}")
    if not is_hermitian(sigma):
        raise PreconditionError("sigma must be Hermitian")
    m = n // 2
    if m == 0:
        return np.zeros(0)
    k = _k_matrix(m)
    if is_psd(sigma):
        root = psd_sqrt(sigma)
        vals = eigvalsh(0.5 * ((root @ k @ root) + (root @ k @ root).conj().T))
        return np.sort(np.abs(vals[m:]))
    # indefinite sigma is unphysical anyway; fall back to a general solver
    moduli = np.sort(np.abs(np.linalg.eigvals(k @ sigma)))
    return 0.5 * (moduli[0::2] + moduli[1::2])
