"""
Zak (kq) bases and the tau / T operator matrices in the x representation

Conventions:
    x grid is x = s*c, s = 1..M, stored at array index s - 1.
    (T(L) psi)(x) = psi(x + L*c), a cyclic shift on the grid.
    Side A is built on the length a = M_a*c, side ATILDE on atilde = M_atilde*c.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

import numpy as np

from config import Config
from services.algebra import StateVector, UnitaryMatrix, apply
from services.arith import Bipartition
from services.errors import DimensionMismatchError, IndexRangeError, InvalidDimensionError

logger = logging.getLogger(__name__)

X_TAG = 'x'


class Side(str, Enum):
    A = 'A'
    ATILDE = 'ATILDE'


@dataclass(frozen=True)
class PhaseSpaceConfig:
    """
    Dimension M and scaling constant c

    c is metadata only; every phase is a rational multiple of 2*pi.
    """

    m: int
    c: Fraction = Fraction(1)

    def __post_init__(self):
        if self.m < 1:
            raise InvalidDimensionError(f"M must be >= 1, got {self.m}")
        object.__setattr__(self, 'c', Fraction(self.c))
        if self.c <= 0:
            raise InvalidDimensionError(f"Scaling constant c must be positive, got {self.c}")

    def lengths(self, b: Bipartition):
        """(a, atilde) = (M_a*c, M_atilde*c)"""
        return b.m_a * self.c, b.m_atilde * self.c

    def x_grid(self):
        return [s * self.c for s in range(1, self.m + 1)]

    def p_grid(self):
        return 2 * np.pi * np.arange(1, self.m + 1) / (self.m * float(self.c))

    def check(self, b: Bipartition):
        """Validate b and require b.m == M"""
        b.validate()
        if b.m != self.m:
            raise DimensionMismatchError(f"Bipartition {b.m_a}*{b.m_atilde} does not match M={self.m}")


@dataclass(frozen=True)
class KQIndex:
    """
    (f, g) labels of one basis vector

    Side A: f in 1..M_atilde (k = 2*pi*f/(M*c)), g in 1..M_a (q = g*c).
    Side ATILDE: the ranges swap.
    """

    f: int
    g: int
    side: Side = Side.A


@dataclass(frozen=True, eq=False)
class KQBasis:
    bipartition: Bipartition
    side: Side
    vectors: Dict[KQIndex, StateVector] = field(repr=False)

    @property
    def label(self):
        return basis_tag(self.bipartition, self.side)

    @property
    def indices(self):
        return kq_indices(self.bipartition, self.side)

    def __len__(self):
        return len(self.vectors)

    def matrix(self):
        """x-amplitudes as columns, in lexicographic (f, g) order"""
        return np.column_stack([self.vectors[idx].amplitudes for idx in self.indices])


class OperatorAlgebraReport(NamedTuple):
    commutator_a: float
    commutator_atilde: float
    twist_a: float
    twist_atilde: float
    eigen_residual: float
    orbit_size: int


def _sizes(b: Bipartition, side: Side) -> Tuple[int, int]:
    """(number of comb teeth, cell length in grid steps) for the side"""
    if side is Side.A:
        return b.m_atilde, b.m_a
    return b.m_a, b.m_atilde


def basis_tag(b: Bipartition, side: Side):
    """Basis label, kq(a=..) for side A and KQ(ã=..) for ATILDE"""
    if side is Side.A:
        return f'kq(a={b.m_a}|{b.m})'
    return f'KQ(ã={b.m_atilde}|{b.m})'


def check_index(b: Bipartition, idx: KQIndex):
    """Range check of (f, g) for the side; returns (teeth, cell)"""
    teeth, cell = _sizes(b, idx.side)
    if not (1 <= idx.f <= teeth and 1 <= idx.g <= cell):
        raise IndexRangeError(
            f"{idx} out of range for {basis_tag(b, idx.side)}: f in 1..{teeth}, g in 1..{cell}"
        )
    return teeth, cell


def kq_indices(b: Bipartition, side: Side) -> List[KQIndex]:
    """All labels of the side in lexicographic (f, g) order"""
    teeth, cell = _sizes(b, side)
    return [KQIndex(f, g, side) for f in range(1, teeth + 1) for g in range(1, cell + 1)]


def _unit_phase(numerator, denominator):
    """exp(2*pi*i*numerator/denominator) with the integer reduced first"""
    return np.exp(2j * np.pi * (np.asarray(numerator) % denominator) / denominator)


def build_kq_state(cfg: PhaseSpaceConfig, b: Bipartition, idx: KQIndex) -> StateVector:
    """
    <x|k,q> = (1/sqrt(M_atilde)) sum_s exp(i*k*s*a) Delta(x - q - s*a), s = 1..M_atilde

    For side A, k*s*a = 2*pi*f*s/M_atilde; ATILDE swaps the roles of the factors.
    """
    cfg.check(b)
    teeth, cell = check_index(b, idx)
    s = np.arange(1, teeth + 1)
    positions = (idx.g + s * cell - 1) % cfg.m
    amplitudes = np.zeros(cfg.m, dtype=np.complex128)
    amplitudes[positions] = _unit_phase(idx.f * s, teeth) / np.sqrt(teeth)
    return StateVector(amplitudes, X_TAG)


def build_basis(cfg: PhaseSpaceConfig, b: Bipartition, side: Side) -> KQBasis:
    """Every kq state of one side, keyed by its index"""
    cfg.check(b)
    vectors = {idx: build_kq_state(cfg, b, idx) for idx in kq_indices(b, side)}
    logger.debug("Built %s with %d vectors", basis_tag(b, side), len(vectors))
    return KQBasis(b, side, vectors)


def _check_steps(cfg: PhaseSpaceConfig, steps):
    if steps < 1 or cfg.m % steps:
        raise InvalidDimensionError(f"Length {steps}*c must divide the period {cfg.m}*c")


def build_tau(cfg: PhaseSpaceConfig, steps) -> UnitaryMatrix:
    """tau(L) = exp(i*x*2*pi/L) on the grid, L = steps*c"""
    _check_steps(cfg, steps)
    s = np.arange(1, cfg.m + 1)
    return UnitaryMatrix(np.diag(_unit_phase(s, steps)), X_TAG, X_TAG)


def build_T(cfg: PhaseSpaceConfig, steps) -> UnitaryMatrix:
    """T(L) = exp(i*p*L): translation by L with period M*c; T(M*c) is the identity"""
    _check_steps(cfg, steps)
    rows = np.arange(cfg.m)
    entries = np.zeros((cfg.m, cfg.m), dtype=np.complex128)
    entries[rows, (rows + steps) % cfg.m] = 1
    return UnitaryMatrix(entries, X_TAG, X_TAG)


def side_operators(cfg: PhaseSpaceConfig, b: Bipartition, side: Side):
    """(tau, T) whose joint eigenbasis is the given side"""
    _, cell = _sizes(b, side)
    return build_tau(cfg, cell), build_T(cfg, cell)


def expected_eigenvalues(b: Bipartition, idx: KQIndex):
    """
    (tau eigenvalue, T eigenvalue) of the basis vector labelled idx

    tau(a)|k,q> = exp(i*q*2*pi/a)|k,q>, T(a)|k,q> = exp(i*k*a)|k,q>.
    """
    teeth, cell = _sizes(b, idx.side)
    return complex(_unit_phase(idx.g, cell)), complex(_unit_phase(idx.f, teeth))


def _phase_label(value, modulus):
    """Integer n in 1..modulus with value = exp(2*pi*i*n/modulus)"""
    n = int(round(np.angle(value) * modulus / (2 * np.pi))) % modulus
    return n or modulus


def conjugate_orbit(cfg: PhaseSpaceConfig, b: Bipartition, idx: KQIndex) -> List[Tuple[int, int]]:
    """
    Eigen-labels reached from one ATILDE vector by T(a)^j tau(a)^l

    Each T(a) moves Q by -a (mod atilde) and each tau(a) moves K, so the
    M products visit every (f_bar, g_bar) slot exactly once.
    """
    if idx.side is not Side.ATILDE:
        raise IndexRangeError("conjugate_orbit starts from an ATILDE vector")
    tau_a, t_a = side_operators(cfg, b, Side.A)
    tau_at, t_at = side_operators(cfg, b, Side.ATILDE)
    start = build_kq_state(cfg, b, idx)
    labels = []
    for l in range(b.m_a):
        v = start
        for _ in range(l):
            v = apply(tau_a, v)
        for _ in range(b.m_atilde):
            q_eig = np.vdot(v.amplitudes, apply(tau_at, v).amplitudes)
            k_eig = np.vdot(v.amplitudes, apply(t_at, v).amplitudes)
            labels.append((_phase_label(k_eig, b.m_a), _phase_label(q_eig, b.m_atilde)))
            v = apply(t_a, v)
    return labels


def operator_algebra_report(cfg: PhaseSpaceConfig, b: Bipartition) -> OperatorAlgebraReport:
    """Max entrywise deviations of the commutation and twist identities"""
    cfg.check(b)
    tau_a, t_a = (u.entries for u in side_operators(cfg, b, Side.A))
    tau_at, t_at = (u.entries for u in side_operators(cfg, b, Side.ATILDE))

    def deviation(lhs, rhs):
        return float(np.max(np.abs(lhs - rhs)))

    commutator_a = deviation(tau_a @ t_a, t_a @ tau_a)
    commutator_atilde = deviation(tau_at @ t_at, t_at @ tau_at)
    twist_a = deviation(t_a @ tau_at, tau_at @ t_a * _unit_phase(b.m_a, b.m_atilde))
    twist_atilde = deviation(t_at @ tau_a, tau_a @ t_at * _unit_phase(b.m_atilde, b.m_a))

    residual = 0.0
    for side, (tau, t) in ((Side.A, (tau_a, t_a)), (Side.ATILDE, (tau_at, t_at))):
        for idx, v in build_basis(cfg, b, side).vectors.items():
            tau_eig, t_eig = expected_eigenvalues(b, idx)
            residual = max(
                residual,
                float(np.max(np.abs(tau @ v.amplitudes - tau_eig * v.amplitudes))),
                float(np.max(np.abs(t @ v.amplitudes - t_eig * v.amplitudes))),
            )

    orbit = conjugate_orbit(cfg, b, KQIndex(1, 1, Side.ATILDE))
    report = OperatorAlgebraReport(commutator_a, commutator_atilde, twist_a, twist_atilde,
                                   residual, len(set(orbit)))
    if max(report[:5]) > Config.SCALAR_TOL or report.orbit_size != cfg.m:
        logger.warning("⚠️ Operator algebra off for %s: %s", b.label, report)
    return report
