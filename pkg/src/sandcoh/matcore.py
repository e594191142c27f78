"""Dense Hermitian linear algebra for small density matrices.

Everything here routes through a single eigendecomposition: fractional
powers act on the support only (eigenvalues below a relative cutoff are
treated as exact zeros), and the two sandwiched trace functionals are
evaluated spectrally.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphaOutOfRange,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    SupportViolation,
)

HERMITICITY_TOL = 1e-9
PSD_TOL = 1e-10
SUPPORT_CUTOFF = 1e-12  # relative to the largest eigenvalue


def _as_matrix(m) -> np.ndarray:
    """Accept a raw ndarray or any object with a .mat attribute."""
    mat = getattr(m, "mat", m)
    return np.asarray(mat, dtype=complex)


def _as_probs(p) -> np.ndarray:
    v = getattr(p, "probs", p)
    return np.asarray(v, dtype=float)


@dataclass(frozen=True)
class HermEigen:
    """Eigen-pairs of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns are eigenvectors


def herm_eig(m) -> HermEigen:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (M + M†)/2 before decomposition to strip
    accumulated round-off asymmetry; inputs farther than HERMITICITY_TOL
    from Hermitian are rejected.
    """
    mat = _as_matrix(m)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {mat.shape}")
    if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2.0)
    return HermEigen(w, v)


def _clamped_psd_eigs(w: np.ndarray) -> np.ndarray:
    """Clamp round-off negatives to zero; reject genuinely negative spectra."""
    scale = max(float(w[-1]), 0.0)
    if float(w[0]) < -PSD_TOL * max(scale, 1.0):
        raise NotPSD(f"eigenvalue {w[0]} below PSD tolerance")
    return np.where(w < 0.0, 0.0, w)


def frac_power(m, p: float) -> np.ndarray:
    """Fractional power M^p of a PSD matrix, acting on the support only.

    Eigenvalues below SUPPORT_CUTOFF relative to the largest are treated as
    exact zeros, with the convention 0^p := 0 for every p (including p <= 0).
    """
    eig = herm_eig(m)
    w = _clamped_psd_eigs(eig.eigenvalues)
    tau = SUPPORT_CUTOFF * max(float(w[-1]), 0.0)
    wp = np.zeros_like(w)
    keep = w > tau
    wp[keep] = w[keep] ** p
    v = eig.eigenvectors
    return (v * wp) @ v.conj().T


def trace_power_psd(m, alpha: float) -> float:
    """tr[M^alpha] for PSD M, support-restricted (0^alpha := 0)."""
    mat = _as_matrix(m)
    w = _clamped_psd_eigs(np.linalg.eigvalsh((mat + mat.conj().T) / 2.0))
    tau = SUPPORT_CUTOFF * max(float(w[-1]), 0.0)
    keep = w > tau
    return float(np.sum(w[keep] ** alpha))


def diag_power(s: np.ndarray, c: float) -> np.ndarray:
    """Entrywise power of a nonnegative vector on its support."""
    s = np.asarray(s, dtype=float)
    tau = SUPPORT_CUTOFF * max(float(s.max(initial=0.0)), 0.0)
    out = np.zeros_like(s)
    on = s > tau
    out[on] = s[on] ** c
    return out


def q_rho_sandwich(rho, sigma, alpha) -> float:
    """tr[(rho^c sigma rho^c)^alpha] with c = (1-alpha)/(2 alpha).

    `sigma` is the diagonal of an incoherent state, given as a probability
    vector. Valid for alpha in [1/2, 1); the result lies in [0, 1] with
    equality to 1 exactly when sigma equals the diagonal of rho and rho is
    itself diagonal.
    """
    a = float(alpha)
    if not 0.5 <= a < 1.0:
        raise AlphaOutOfRange(f"alpha={a} outside [1/2, 1)")
    mat = _as_matrix(rho)
    s = _as_probs(sigma)
    if s.shape[0] != mat.shape[0]:
        raise DimensionMismatch("sigma dimension does not match rho")
    c = (1.0 - a) / (2.0 * a)
    big_a = frac_power(mat, c)
    sandwich = (big_a * s) @ big_a
    return trace_power_psd(sandwich, a)


def q_sigma_sandwich(sigma, rho, alpha) -> float:
    """tr[(sigma^c rho sigma^c)^alpha] with c = (1-alpha)/(2 alpha).

    For alpha > 1 the support of rho must lie inside the support of sigma,
    otherwise sigma^c (c < 0) is undefined on the part of rho it must act on.
    """
    a = float(alpha)
    if not (0.5 <= a < 1.0 or a > 1.0):
        raise AlphaOutOfRange(f"alpha={a} outside [1/2,1) u (1,inf)")
    s = _as_probs(sigma)
    mat = _as_matrix(rho)
    if s.shape[0] != mat.shape[0]:
        raise DimensionMismatch("sigma dimension does not match rho")
    if a > 1.0:
        diag_rho = np.real(np.diagonal(mat))
        tau_rho = SUPPORT_CUTOFF * max(float(diag_rho.max(initial=0.0)), 0.0)
        tau_sig = SUPPORT_CUTOFF * max(float(s.max(initial=0.0)), 0.0)
        if np.any((diag_rho > tau_rho) & (s <= tau_sig)):
            raise SupportViolation("supp(rho) not contained in supp(sigma)")
    c = (1.0 - a) / (2.0 * a)
    b = diag_power(s, c)
    sandwich = mat * np.outer(b, b)
    return trace_power_psd(sandwich, a)


def fidelity(rho, sigma_m) -> float:
    """Quantum fidelity tr[(sigma^{1/2} rho sigma^{1/2})^{1/2}], in [0, 1]."""
    rmat = _as_matrix(rho)
    smat = _as_matrix(sigma_m)
    if rmat.shape != smat.shape:
        raise DimensionMismatch("fidelity arguments must share a dimension")
    root = frac_power(smat, 0.5)
    return trace_power_psd(root @ rmat @ root, 0.5)
