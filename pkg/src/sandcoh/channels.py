"""CPTP maps as Kraus sets; incoherent-operation generation and checks."""

import json
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import DimensionMismatch, InvalidDimension
from .states import DensityMatrix

COMPLETENESS_TOL = 1e-9
OUTCOME_PRUNE = 1e-12  # selective outcomes below this probability are dropped


@dataclass(frozen=True)
class KrausSet:
    """A CPTP map given by Kraus operators; `incoherent` marks ICPTP sets.

    An incoherent Kraus operator has at most one nonzero entry per column,
    which is exactly the structural condition for K sigma K† to stay
    diagonal on every diagonal sigma.
    """

    kraus: tuple
    incoherent: bool = False

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not ops:
            raise InvalidDimension("a Kraus set needs at least one operator")
        d = ops[0].shape
        if any(k.shape != d for k in ops):
            raise DimensionMismatch("all Kraus operators must share a shape")
        total = sum(k.conj().T @ k for k in ops)
        if np.linalg.norm(total - np.eye(d[1])) > COMPLETENESS_TOL:
            raise ValueError("Kraus set violates completeness within 1e-9")
        if self.incoherent and not _column_sparse(ops, 1e-12):
            raise ValueError("incoherent flag set but some column has 2+ nonzeros")
        object.__setattr__(self, "kraus", ops)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[1]


def _column_sparse(ops, tol) -> bool:
    return all(np.all(np.sum(np.abs(k) > tol, axis=0) <= 1) for k in ops)


def apply_channel(k: KrausSet, rho: DensityMatrix) -> DensityMatrix:
    """Phi(rho) = sum_n K_n rho K_n†."""
    if k.dim != rho.dim:
        raise DimensionMismatch("channel and state dimensions differ")
    out = sum(op @ rho.mat @ op.conj().T for op in k.kraus)
    return DensityMatrix(out)


def is_incoherent_kraus(k: KrausSet, tol: float = 1e-12) -> bool:
    """True iff every operator has at most one entry above tol per column."""
    return _column_sparse(k.kraus, tol)


def random_incoherent_channel(d: int, n_kraus: int, seed: int) -> KrausSet:
    """Random ICPTP map, complete by construction.

    Per input column j, a random unit vector over the n_kraus outcomes
    supplies the amplitudes; each outcome relabels the basis by a random
    permutation. Permutations keep the row targets injective within each
    operator, so the completeness sum has no off-diagonal cross terms.
    """
    if d < 1 or n_kraus < 1:
        raise InvalidDimension("d and n_kraus must be >= 1")
    rng = np.random.default_rng(seed)
    ops = np.zeros((n_kraus, d, d), dtype=complex)
    amps = np.empty((d, n_kraus), dtype=complex)
    for j in range(d):
        v = rng.standard_normal(n_kraus) + 1j * rng.standard_normal(n_kraus)
        amps[j] = v / np.linalg.norm(v)
    for n in range(n_kraus):
        perm = rng.permutation(d)
        for j in range(d):
            ops[n, perm[j], j] = amps[j, n]
    return KrausSet(tuple(ops), incoherent=True)


def random_cptp_channel(d: int, n_kraus: int, seed: int) -> KrausSet:
    """Generic CPTP map from a Haar-random isometry split into blocks."""
    if d < 1 or n_kraus < 1:
        raise InvalidDimension("d and n_kraus must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n_kraus * d, d)) + 1j * rng.standard_normal((n_kraus * d, d))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diagonal(r))  # fix the phase convention
    ops = tuple(q[n * d : (n + 1) * d, :] for n in range(n_kraus))
    return KrausSet(ops, incoherent=False)


def dephasing_channel(d: int) -> KrausSet:
    """Full dephasing: projectors onto the reference basis."""
    if d < 1:
        raise InvalidDimension("d must be >= 1")
    eye = np.eye(d, dtype=complex)
    return KrausSet(tuple(np.outer(eye[j], eye[j]) for j in range(d)), incoherent=True)


def selective_outcomes(
    k: KrausSet, rho: DensityMatrix
) -> List[Tuple[float, DensityMatrix]]:
    """Outcome-wise action: [(p_n, K_n rho K_n† / p_n)], pruning p_n ~ 0."""
    if k.dim != rho.dim:
        raise DimensionMismatch("channel and state dimensions differ")
    outcomes = []
    for op in k.kraus:
        post = op @ rho.mat @ op.conj().T
        p = float(np.trace(post).real)
        if p < OUTCOME_PRUNE:
            continue
        outcomes.append((p, DensityMatrix(post / p)))
    return outcomes


# --- channel file format (shared with the CLI) ------------------------------
#
# JSON document: "dim", "kraus" (list of dim x dim matrices of [re, im]
# pairs), optional "incoherent" boolean revalidated on load.


def save_channel(path, k: KrausSet) -> None:
    doc = {
        "dim": k.dim,
        "kraus": [
            [[[float(z.real), float(z.imag)] for z in row] for row in op]
            for op in k.kraus
        ],
        "incoherent": k.incoherent,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_channel(path) -> KrausSet:
    with open(path) as fh:
        doc = json.load(fh)
    dim = int(doc["dim"])
    ops = tuple(
        np.array([[complex(re, im) for re, im in row] for row in op])
        for op in doc["kraus"]
    )
    if any(op.shape != (dim, dim) for op in ops):
        raise DimensionMismatch("kraus operator shape does not match dim")
    flagged = bool(doc.get("incoherent", False))
    if flagged and not _column_sparse(ops, 1e-12):
        raise ValueError("file claims incoherent but operators are not")
    return KrausSet(ops, incoherent=flagged)
