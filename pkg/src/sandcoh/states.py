"""Density matrices, pure states and incoherent states in a fixed basis.

All diagonality statements refer to the computational basis of the stored
array (the reference basis). Random generators take an explicit seed and
use numpy's default PCG64 bit generator, so every draw is replayable.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, InvalidRank, InvalidWeights
from .matcore import HERMITICITY_TOL


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace complex matrix."""

    mat: np.ndarray

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch(f"expected square matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-9")
        if np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)[0] < -1e-10:
            raise ValueError("density matrix has a negative eigenvalue")
        if abs(np.trace(mat).real - 1.0) > 1e-9 or abs(np.trace(mat).imag) > 1e-9:
            raise ValueError("density matrix trace is not 1 within 1e-9")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class PureState:
    """Unit vector of complex amplitudes in the reference basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        if amps.size == 0:
            raise InvalidDimension("pure state needs at least one amplitude")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
            raise ValueError("pure state norm is not 1 within 1e-10")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class ProbVector:
    """Probability vector; the diagonal of an incoherent state."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).ravel()
        if p.size == 0:
            raise InvalidDimension("probability vector needs at least one entry")
        if np.any(p < 0.0):
            raise ValueError("probability vector has a negative entry")
        if abs(p.sum() - 1.0) > 1e-10:
            raise ValueError("probability vector does not sum to 1 within 1e-10")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def dim(self) -> int:
        return self.probs.shape[0]

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.diag(self.probs.astype(complex)))


def random_pure(d: int, seed: int) -> PureState:
    """Haar-random pure state: normalized complex standard normal vector."""
    if d < 1:
        raise InvalidDimension(f"d={d} must be >= 1")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v))


def random_density(d: int, rank: int, seed: int) -> DensityMatrix:
    """Ginibre-induced random density matrix of the given rank.

    rho = G G† / tr(G G†) with G a d x rank complex standard normal matrix;
    the rank equals `rank` almost surely.
    """
    if d < 1:
        raise InvalidDimension(f"d={d} must be >= 1")
    if not 1 <= rank <= d:
        raise InvalidRank(f"rank={rank} must lie in [1, {d}]")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def dephase(rho: DensityMatrix) -> ProbVector:
    """Diagonal of rho in the reference basis, as a probability vector."""
    d = np.real(np.diagonal(rho.mat)).copy()
    d[d < 0.0] = 0.0
    return ProbVector(d / d.sum())


def block_direct_sum(
    p1: float, rho1: DensityMatrix, p2: float, rho2: DensityMatrix
) -> DensityMatrix:
    """Block-diagonal state p1*rho1 (+) p2*rho2, block-1 indices first."""
    if p1 <= 0.0 or p2 <= 0.0 or abs(p1 + p2 - 1.0) > 1e-10:
        raise InvalidWeights(f"weights ({p1}, {p2}) invalid")
    d1, d2 = rho1.dim, rho2.dim
    out = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    out[:d1, :d1] = p1 * rho1.mat
    out[d1:, d1:] = p2 * rho2.mat
    return DensityMatrix(out)


def maximally_coherent(d: int) -> PureState:
    """Pure state with all amplitudes 1/sqrt(d)."""
    if d < 1:
        raise InvalidDimension(f"d={d} must be >= 1")
    return PureState(np.full(d, 1.0 / np.sqrt(d), dtype=complex))


# --- state file format (shared with the CLI) -------------------------------
#
# JSON document with integer field "dim" and either "matrix" (dim x dim array
# of [re, im] pairs, row-major) or "vector" ([re, im] pairs) for pure states.


def _encode_complex(arr: np.ndarray):
    return [[float(z.real), float(z.imag)] for z in arr]


def save_state(path, state) -> None:
    """Write a DensityMatrix or PureState to the text state format."""
    if isinstance(state, PureState):
        doc = {"dim": state.dim, "vector": _encode_complex(state.amplitudes)}
    elif isinstance(state, DensityMatrix):
        doc = {"dim": state.dim, "matrix": [_encode_complex(row) for row in state.mat]}
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_state(path):
    """Read a state file; returns a DensityMatrix or PureState."""
    with open(path) as fh:
        doc = json.load(fh)
    dim = int(doc["dim"])
    if "vector" in doc:
        amps = np.array([complex(re, im) for re, im in doc["vector"]])
        if amps.shape[0] != dim:
            raise DimensionMismatch(f"vector length {amps.shape[0]} != dim {dim}")
        return PureState(amps)
    if "matrix" in doc:
        rows = doc["matrix"]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise DimensionMismatch(f"matrix is not {dim}x{dim}")
        mat = np.array([[complex(re, im) for re, im in row] for row in rows])
        return DensityMatrix(mat)
    raise ValueError("state file has neither 'matrix' nor 'vector'")
