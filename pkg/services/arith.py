"""
Exact integer machinery
Factorization, coprime bipartitions, CRT solving and square-free rescaling
"""

import logging
import math
from dataclasses import dataclass
from numbers import Integral
from typing import List, NamedTuple, Tuple

from config import Config
from services.errors import InvalidDimensionError, NotCoprimeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factorization:
    """Prime decomposition of the dimension M"""

    m: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def n(self):
        """Number of distinct primes"""
        return len(self.factors)

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    def prime_powers(self):
        return [p ** e for p, e in self.factors]

    def pair_count(self):
        return 1 if self.n == 0 else 2 ** (self.n - 1)

    def __str__(self):
        if not self.factors:
            return '1'
        return ' * '.join(f'{p}^{e}' if e > 1 else str(p) for p, e in self.factors)


@dataclass(frozen=True)
class Bipartition:
    """
    Coprime split M = M_a * M_atilde

    subset_mask has bit i set when the i-th distinct prime of M belongs to m_a.
    Construction does not validate; use bipartition_for() or validate().
    """

    m_a: int
    m_atilde: int
    subset_mask: int = 0

    @property
    def m(self):
        return self.m_a * self.m_atilde

    @property
    def label(self):
        return f'a={self.m_a}|{self.m}'

    @property
    def kind(self):
        if self.m_a == 1:
            return 'fourier'
        if distinct_prime_count(self.m_a) == 1:
            return 'prime'
        return 'composite'

    def is_canonical(self):
        return self.m_a <= self.m_atilde

    def mirrored(self):
        """Same split with the two sides swapped"""
        full = (1 << factorize(self.m).n) - 1
        return Bipartition(self.m_atilde, self.m_a, full & ~self.subset_mask)

    def validate(self):
        """Raise unless both factors are positive and coprime"""
        if self.m_a < 1 or self.m_atilde < 1:
            raise InvalidDimensionError(f"Bipartition factors must be positive, got ({self.m_a}, {self.m_atilde})")
        if math.gcd(self.m_a, self.m_atilde) != 1:
            raise NotCoprimeError(
                f"M_a={self.m_a} and M_atilde={self.m_atilde} are not coprime; "
                f"t*M_atilde - s*M_a = 0 (mod {self.m}) has non-trivial solutions"
            )
        return self

    def to_dict(self):
        return {
            'm_a': self.m_a,
            'm_atilde': self.m_atilde,
            'subset_mask': self.subset_mask,
            'kind': self.kind,
            'label': self.label,
        }


class CRTSolution(NamedTuple):
    r: int
    s: int
    t: int


class Rescaling(NamedTuple):
    m_bar: int
    c_multiplier: int


def _check_dimension(m):
    if isinstance(m, bool) or not isinstance(m, Integral):
        raise InvalidDimensionError(f"Dimension must be an integer, got {m!r}")
    m = int(m)
    if m < 1:
        raise InvalidDimensionError(f"Dimension must be >= 1, got {m}")
    if m > Config.M_LIMIT:
        raise InvalidDimensionError(f"Dimension {m} exceeds the supported limit {Config.M_LIMIT}")
    return m


def factorize(m):
    """
    Factorize m by trial division up to sqrt(m)

    Args:
        m: Positive integer dimension

    Returns:
        Factorization with primes in increasing order
    """
    m = _check_dimension(m)
    factors = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(m, tuple(factors))


def distinct_prime_count(m):
    """Number N of distinct primes dividing m"""
    return factorize(m).n


def is_prime(n):
    """Trial division; any integer size, non-integers are not prime"""
    if isinstance(n, bool) or not isinstance(n, Integral) or n < 2:
        return False
    n = int(n)
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % p for p in range(3, math.isqrt(n) + 1, 2))


def is_square_free(m):
    """True when no prime divides m twice"""
    return all(e == 1 for _, e in factorize(m).factors)


def enumerate_bipartitions(f: Factorization) -> List[Bipartition]:
    """
    Canonical coprime bipartitions of f.m, 2^(N-1) of them

    Each prime power goes wholly to one side; mirrored pairs are dropped by
    keeping m_a <= m_atilde. M = 1 yields the single pair (1, 1).
    """
    powers = f.prime_powers()
    pairs = []
    for mask in range(1 << f.n):
        m_a = 1
        for i, pk in enumerate(powers):
            if mask >> i & 1:
                m_a *= pk
        m_atilde = f.m // m_a
        if m_a <= m_atilde:
            pairs.append(Bipartition(m_a, m_atilde, mask))
    pairs.sort(key=lambda b: (b.m_a, b.m_atilde))
    logger.debug("M=%d: %d bipartitions", f.m, len(pairs))
    return pairs


def bipartition_for(m, m_a):
    """
    Bipartition selected explicitly by its M_a

    The result keeps the requested orientation, so it may be non-canonical.
    """
    f = factorize(m)
    if isinstance(m_a, bool) or not isinstance(m_a, Integral) or m_a < 1 or f.m % m_a:
        raise InvalidDimensionError(f"M_a={m_a} does not divide M={f.m}")
    m_atilde = f.m // m_a
    mask = 0
    for i, p in enumerate(f.primes):
        if m_a % p == 0:
            mask |= 1 << i
    return Bipartition(int(m_a), m_atilde, mask).validate()


def extended_gcd(a, b):
    """
    Extended Euclidean Algorithm.

    Returns (gcd, x, y) such that a*x + b*y = gcd(a, b).
    """
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def mod_inverse(a, m):
    """Inverse of a modulo m; m = 1 gives 0"""
    g, x, _ = extended_gcd(a % m, m)
    if g != 1:
        raise NotCoprimeError(f"No inverse: gcd({a}, {m}) = {g}")
    return x % m


def solve_st(b: Bipartition, r) -> CRTSolution:
    """
    Unique (s, t) with t*M_atilde - s*M_a = r (mod M)

    s is taken in 1..M_atilde and t in 1..M_a (residue 0 maps to the modulus).
    Reducing mod M_a fixes t, reducing mod M_atilde fixes s.
    """
    b.validate()
    m = b.m
    t = (r * mod_inverse(b.m_atilde, b.m_a)) % b.m_a or b.m_a
    s = (-r * mod_inverse(b.m_a, b.m_atilde)) % b.m_atilde or b.m_atilde
    assert (t * b.m_atilde - s * b.m_a - r) % m == 0
    return CRTSolution(r % m, s, t)


def radical_rescale(f: Factorization) -> Rescaling:
    """Split M = m_bar * c_multiplier with m_bar the product of the distinct primes"""
    m_bar = math.prod(f.primes)
    return Rescaling(m_bar, f.m // m_bar)
