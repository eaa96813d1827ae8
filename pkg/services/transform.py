"""
Conjugate overlaps between the two members of a Zak pair
Closed form, x-sum oracle, mutual unbiasedness and the localization law
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from config import Config
from services.algebra import StateVector, UnitaryMatrix, apply, is_unitary
from services.arith import Bipartition, mod_inverse, solve_st
from services.errors import BasisMismatchError, IndexRangeError, LocalizationPreconditionError
from services.kq import (
    KQIndex,
    PhaseSpaceConfig,
    Side,
    basis_tag,
    build_basis,
    build_kq_state,
    check_index,
    kq_indices,
)

logger = logging.getLogger(__name__)

CLOSED_FORM = 'closed_form'
BRUTEFORCE = 'bruteforce'
METHODS = (CLOSED_FORM, BRUTEFORCE)


@dataclass
class OverlapReport:
    bipartition: Bipartition
    modulus_min: float
    modulus_max: float
    mub_flat: bool
    unitarity_deviation: float
    oracle_max_abs_diff: float
    tolerance: float

    def passed(self):
        """Flat, and both the oracle and unitarity deviations within tolerance"""
        return (
            self.mub_flat
            and self.oracle_max_abs_diff <= self.tolerance
            and self.unitarity_deviation <= self.tolerance
        )

    def to_dict(self):
        return {
            'm_a': self.bipartition.m_a,
            'm_atilde': self.bipartition.m_atilde,
            'label': self.bipartition.label,
            'modulus_min': self.modulus_min,
            'modulus_max': self.modulus_max,
            'expected_modulus': float(1 / np.sqrt(self.bipartition.m)),
            'mub_flat': self.mub_flat,
            'unitarity_deviation': self.unitarity_deviation,
            'oracle_max_abs_diff': self.oracle_max_abs_diff,
            'tolerance': self.tolerance,
            'passed': self.passed(),
        }


@dataclass
class LocalizationReport:
    bipartition: Bipartition
    source_side: Side
    support_size: int
    support_amplitude: float
    amplitude_spread: float
    support_mass: float
    expected_support: int
    expected_amplitude: float
    support_indices: List[Tuple[int, int]] = field(default_factory=list)
    index_set_matches: bool = True
    notes: List[str] = field(default_factory=list)

    def law_holds(self, tol=Config.MATRIX_TOL):
        """Support size, amplitude and mass match M_a^2, 1/M_a and 1"""
        return (
            self.support_size == self.expected_support
            and abs(self.support_amplitude - self.expected_amplitude) <= tol
            and self.amplitude_spread <= tol
            and abs(self.support_mass - 1) <= tol
        )

    def to_dict(self, tol=Config.MATRIX_TOL):
        return {
            'm_a': self.bipartition.m_a,
            'm_atilde': self.bipartition.m_atilde,
            'label': self.bipartition.label,
            'source_side': self.source_side.value,
            'support_size': self.support_size,
            'expected_support': self.expected_support,
            'support_amplitude': self.support_amplitude,
            'expected_amplitude': self.expected_amplitude,
            'amplitude_spread': self.amplitude_spread,
            'support_mass': self.support_mass,
            'support_indices': [list(ix) for ix in self.support_indices],
            'index_set_matches': self.index_set_matches,
            'law_holds': self.law_holds(tol),
            'notes': list(self.notes),
        }


def _check_pair(b: Bipartition, idx_a: KQIndex, idx_atilde: KQIndex):
    if idx_a.side is not Side.A or idx_atilde.side is not Side.ATILDE:
        raise IndexRangeError(f"Expected an A index and an ATILDE index, got {idx_a.side} and {idx_atilde.side}")
    check_index(b, idx_a)
    check_index(b, idx_atilde)


def overlap_closed_form(cfg: PhaseSpaceConfig, b: Bipartition, idx_a: KQIndex, idx_atilde: KQIndex) -> complex:
    """
    <k,q|K,Q> = exp(-i*k*s*a + i*K*t*atilde) / sqrt(M)

    (s, t) is the unique solution of t*M_atilde - s*M_a = (q - Q)/c (mod M).
    The phase is 2*pi*n/M with n reduced exactly as an integer.
    """
    cfg.check(b)
    _check_pair(b, idx_a, idx_atilde)
    m = cfg.m
    solution = solve_st(b, idx_a.g - idx_atilde.g)
    s, t = solution.s, solution.t
    assert (idx_atilde.g + t * b.m_atilde - idx_a.g - s * b.m_a) % m == 0
    n = (-idx_a.f * s * b.m_a + idx_atilde.f * t * b.m_atilde) % m
    return complex(np.exp(2j * np.pi * n / m) / np.sqrt(m))


def overlap_bruteforce(cfg: PhaseSpaceConfig, b: Bipartition, idx_a: KQIndex, idx_atilde: KQIndex) -> complex:
    """sum over the x grid of conj(<x|k,q>) <x|K,Q>"""
    _check_pair(b, idx_a, idx_atilde)
    kq = build_kq_state(cfg, b, idx_a)
    KQ = build_kq_state(cfg, b, idx_atilde)
    return complex(np.vdot(kq.amplitudes, KQ.amplitudes))


def _closed_form_entries(cfg: PhaseSpaceConfig, b: Bipartition):
    """Closed form over every index pair at once; rows (f_bar, g_bar), columns (f, g)"""
    m, m_a, m_at = cfg.m, b.m_a, b.m_atilde
    cols = kq_indices(b, Side.A)
    rows = kq_indices(b, Side.ATILDE)
    f = np.array([idx.f for idx in cols], dtype=np.int64)[None, :]
    g = np.array([idx.g for idx in cols], dtype=np.int64)[None, :]
    f_bar = np.array([idx.f for idx in rows], dtype=np.int64)[:, None]
    g_bar = np.array([idx.g for idx in rows], dtype=np.int64)[:, None]

    r = g - g_bar
    t = (r * mod_inverse(m_at, m_a)) % m_a
    t[t == 0] = m_a
    s = (-r * mod_inverse(m_a, m_at)) % m_at
    s[s == 0] = m_at

    n = (-((f * s) % m_at) * m_a + ((f_bar * t) % m_a) * m_at) % m
    # row (K,Q), column (k,q) holds <K,Q|k,q>, the conjugate of the closed form
    return np.exp(-2j * np.pi * n / m) / np.sqrt(m)


def build_overlap_matrix(cfg: PhaseSpaceConfig, b: Bipartition, method=CLOSED_FORM) -> UnitaryMatrix:
    """
    Change of basis from side A amplitudes to side ATILDE amplitudes

    Rows follow the ATILDE (f_bar, g_bar) lexicographic order, columns the A (f, g) order.
    """
    cfg.check(b)
    if method == CLOSED_FORM:
        entries = _closed_form_entries(cfg, b)
    elif method == BRUTEFORCE:
        entries = build_basis(cfg, b, Side.ATILDE).matrix().conj().T @ build_basis(cfg, b, Side.A).matrix()
    else:
        raise ValueError(f"Unknown overlap method {method!r}, expected one of {METHODS}")
    return UnitaryMatrix(entries, basis_tag(b, Side.ATILDE), basis_tag(b, Side.A))


def modulus_spread(U: UnitaryMatrix, tol=Config.MATRIX_TOL):
    """(flat, modulus_min, modulus_max); flat when every |entry| is within tol of 1/sqrt(M)"""
    moduli = np.abs(U.entries)
    target = 1 / np.sqrt(U.dim)
    flat = bool(np.max(np.abs(moduli - target)) <= tol)
    return flat, float(moduli.min()), float(moduli.max())


def mub_check(cfg: PhaseSpaceConfig, b: Bipartition, tol=Config.MATRIX_TOL) -> OverlapReport:
    """
    Conjugacy report for one pair

    Flatness is judged at Config.MATRIX_TOL; tol gates the oracle and unitarity checks.
    """
    closed = build_overlap_matrix(cfg, b, CLOSED_FORM)
    brute = build_overlap_matrix(cfg, b, BRUTEFORCE)
    flat, lo, hi = modulus_spread(closed, Config.MATRIX_TOL)
    report = OverlapReport(
        bipartition=b,
        modulus_min=lo,
        modulus_max=hi,
        mub_flat=flat,
        unitarity_deviation=is_unitary(closed, tol).max_deviation,
        oracle_max_abs_diff=float(np.max(np.abs(closed.entries - brute.entries))),
        tolerance=tol,
    )
    if not report.passed():
        logger.warning("⚠️ %s is not conjugate within %g: %s", b.label, tol, report.to_dict())
    return report


def delocalized_state(cfg: PhaseSpaceConfig, b: Bipartition, side=Side.A) -> StateVector:
    """Uniform amplitude 1/sqrt(M) over every kq index of the side"""
    cfg.check(b)
    return StateVector(np.full(cfg.m, 1 / np.sqrt(cfg.m)), basis_tag(b, side))


def _check_uniform(cfg: PhaseSpaceConfig, psi: StateVector):
    amps = psi.amplitudes
    if abs(abs(amps[0]) - 1 / np.sqrt(cfg.m)) > Config.MATRIX_TOL or np.max(np.abs(amps - amps[0])) > Config.MATRIX_TOL:
        raise LocalizationPreconditionError(f"State in {psi.basis_tag} is not uniformly delocalized")


def expected_support(b: Bipartition):
    """Q = g*c and K = 2*pi*f/(M*c) with f, g in 1..M_a"""
    return [(f, g) for f in range(1, b.m_a + 1) for g in range(1, b.m_a + 1)]


def localize(cfg: PhaseSpaceConfig, b: Bipartition, psi: StateVector, tol=Config.SUPPORT_TOL):
    """
    Express a state delocalized over side A in the ATILDE basis

    Requires M_a < M_atilde. The result is supported on M_a^2 slots with modulus 1/M_a.

    Returns:
        (state in the ATILDE basis, LocalizationReport)
    """
    cfg.check(b)
    if b.m_a >= b.m_atilde:
        raise LocalizationPreconditionError(
            f"Localization needs M_a < M_atilde, got {b.m_a} >= {b.m_atilde}; "
            f"use the mirrored pair a={b.m_atilde} instead"
        )
    if psi.basis_tag != basis_tag(b, Side.A):
        raise BasisMismatchError(f"Expected a state in {basis_tag(b, Side.A)}, got {psi.basis_tag}")
    _check_uniform(cfg, psi)

    logger.info("🔄 Localizing uniform %s state into %s", psi.basis_tag, basis_tag(b, Side.ATILDE))
    out = apply(build_overlap_matrix(cfg, b, CLOSED_FORM), psi)
    moduli = np.abs(out.amplitudes)
    support = moduli > tol
    rows = kq_indices(b, Side.ATILDE)
    support_indices = [(rows[i].f, rows[i].g) for i in np.flatnonzero(support)]
    on_support = moduli[support]

    report = LocalizationReport(
        bipartition=b,
        source_side=Side.A,
        support_size=int(support.sum()),
        support_amplitude=float(on_support.mean()) if on_support.size else 0.0,
        amplitude_spread=float(on_support.max() - on_support.min()) if on_support.size else 0.0,
        support_mass=float(np.sum(on_support ** 2)),
        expected_support=b.m_a ** 2,
        expected_amplitude=1 / b.m_a,
        support_indices=support_indices,
    )
    report.index_set_matches = set(support_indices) == set(expected_support(b))
    if not report.index_set_matches:
        report.notes.append('support differs from the slots f, g in 1..M_a')
    return out, report


def conjugate_grid(b: Bipartition, state: StateVector):
    """ATILDE amplitude moduli as an M_a x M_atilde grid (f_bar rows, g_bar columns)"""
    if state.basis_tag != basis_tag(b, Side.ATILDE):
        raise BasisMismatchError(f"Expected a state in {basis_tag(b, Side.ATILDE)}, got {state.basis_tag}")
    return np.abs(state.amplitudes).reshape(b.m_a, b.m_atilde)


def double_transform_error(cfg: PhaseSpaceConfig, b: Bipartition, psi: StateVector) -> float:
    """Max deviation of U^dagger U psi from psi"""
    U = build_overlap_matrix(cfg, b, CLOSED_FORM)
    back = apply(U.adjoint(), apply(U, psi))
    return float(np.max(np.abs(back.amplitudes - psi.amplitudes)))
