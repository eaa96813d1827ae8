"""
Dense complex linear algebra for state vectors and square matrices
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from config import Config
from services.errors import BasisMismatchError, DimensionMismatchError, NormalizationError, ZeroVectorError


def _unit_norm(amplitudes):
    return abs(float(np.vdot(amplitudes, amplitudes).real) - 1) <= Config.MATRIX_TOL


def _frozen(values, ndim):
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != ndim:
        raise DimensionMismatchError(f"Expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes of a state in the basis named by basis_tag"""

    amplitudes: np.ndarray
    basis_tag: str
    normalized: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'amplitudes', _frozen(self.amplitudes, 1))
        if self.amplitudes.size == 0:
            raise DimensionMismatchError("State vector needs at least one amplitude")
        if self.normalized and not _unit_norm(self.amplitudes):
            raise NormalizationError(
                f"State in {self.basis_tag!r} is flagged normalized but has norm {np.linalg.norm(self.amplitudes):.12g}"
            )

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def with_amplitudes(self, amplitudes):
        return StateVector(amplitudes, self.basis_tag, self.normalized)


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """
    Square matrix mapping col_basis_tag amplitudes to row_basis_tag amplitudes

    Unitarity is not enforced on construction; see is_unitary().
    """

    entries: np.ndarray
    row_basis_tag: str
    col_basis_tag: str

    def __post_init__(self):
        entries = _frozen(self.entries, 2)
        if entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(f"Matrix must be square, got shape {entries.shape}")
        object.__setattr__(self, 'entries', entries)

    @property
    def dim(self):
        return self.entries.shape[0]

    def adjoint(self):
        return UnitaryMatrix(self.entries.conj().T, self.col_basis_tag, self.row_basis_tag)


class UnitarityCheck(NamedTuple):
    ok: bool
    max_deviation: float


def inner_product(u: StateVector, v: StateVector) -> complex:
    """<u|v> = sum conj(u_i) v_i"""
    if u.dim != v.dim:
        raise DimensionMismatchError(f"Dimensions differ: {u.dim} vs {v.dim}")
    if u.basis_tag != v.basis_tag:
        raise BasisMismatchError(f"Basis mismatch: {u.basis_tag!r} vs {v.basis_tag!r}")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def apply(U: UnitaryMatrix, v: StateVector) -> StateVector:
    """U applied to v; the result stays flagged normalized only if the norm survived"""
    if U.dim != v.dim:
        raise DimensionMismatchError(f"Matrix of dimension {U.dim} applied to vector of dimension {v.dim}")
    if U.col_basis_tag != v.basis_tag:
        raise BasisMismatchError(f"Matrix expects {U.col_basis_tag!r}, vector is in {v.basis_tag!r}")
    amplitudes = U.entries @ v.amplitudes
    return StateVector(amplitudes, U.row_basis_tag, v.normalized and _unit_norm(amplitudes))


def is_unitary(U: UnitaryMatrix, tol=Config.MATRIX_TOL) -> UnitarityCheck:
    """Max entrywise deviation of U U^dagger from the identity"""
    gram = U.entries @ U.entries.conj().T
    deviation = float(np.max(np.abs(gram - np.eye(U.dim))))
    return UnitarityCheck(deviation <= tol, deviation)


def canonical_phase(v: StateVector) -> StateVector:
    """Rotate v so its first amplitude of modulus > 1e-12 is real and positive"""
    moduli = np.abs(v.amplitudes)
    significant = np.flatnonzero(moduli > Config.SCALAR_TOL)
    if significant.size == 0:
        raise ZeroVectorError(f"Zero vector in basis {v.basis_tag!r} has no phase")
    lead = v.amplitudes[significant[0]]
    return v.with_amplitudes(v.amplitudes * (np.conj(lead) / abs(lead)))


def equal_up_to_global_phase(u: StateVector, v: StateVector, tol=Config.SCALAR_TOL) -> bool:
    """Compare after rotating both vectors to canonical phase"""
    if u.dim != v.dim:
        raise DimensionMismatchError(f"Dimensions differ: {u.dim} vs {v.dim}")
    a = canonical_phase(u).amplitudes
    b = canonical_phase(v).amplitudes
    return bool(np.max(np.abs(a - b)) <= tol)
