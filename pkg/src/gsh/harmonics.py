"""Representation coefficients of SU(2) in Euler angles.

Provides the matrix elements t^l_{mn}(phi, theta, psi) of the
(2l+1)-dimensional irreducible unitary representations (l in (1/2)N_0),
their symmetries, and the spectral action of the invariant vector fields
D1, D2, D3 on the column index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import HalfInt


@dataclass(frozen=True)
class EulerAngles:
    """Angles (phi, theta, psi) with phi in [0,2pi), theta in [0,pi], psi in [-2pi,2pi)."""

    phi: float
    theta: float
    psi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi + 1e-12):
            raise ValueError("theta out of range [0, pi]")


@dataclass(frozen=True)
class WignerIndex:
    """Index (l, m, n) stored as twice-values; -l <= m,n <= l, steps of 1."""

    l2: int
    m2: int
    n2: int

    def __post_init__(self):
        if self.l2 < 0:
            raise ValueError("l must be >= 0")
        for v2 in (self.m2, self.n2):
            if abs(v2) > self.l2 or (self.l2 - v2) % 2 != 0:
                raise ValueError(f"invalid Wigner index {self}")

    @staticmethod
    def of(l, m, n) -> "WignerIndex":
        return WignerIndex(HalfInt.of(l).twice, HalfInt.of(m).twice,
                           HalfInt.of(n).twice)

    @property
    def l(self) -> Fraction:
        return Fraction(self.l2, 2)

    @property
    def m(self) -> Fraction:
        return Fraction(self.m2, 2)

    @property
    def n(self) -> Fraction:
        return Fraction(self.n2, 2)


def _phase_i_power(k: int) -> complex:
    return (1j) ** (k % 4)


def legendre_P(idx: WignerIndex, x: float) -> complex:
    """The function P^l_{mn}(x) for x = cos(theta), finite at x = +-1.

    Evaluated via the finite Leibniz expansion of the (l-m)-fold derivative
    of (1-x)^{l-n} (1+x)^{l+n}; integer factors are carried as big integers
    and converted to float once.
    """
    l2, m2, n2 = idx.l2, idx.m2, idx.n2
    lm = (l2 - m2) // 2      # l - m
    lp = (l2 + m2) // 2      # l + m
    ln_ = (l2 - n2) // 2     # l - n
    lpn = (l2 + n2) // 2     # l + n
    mn_sum = (m2 + n2) // 2  # m + n  (always an integer)
    nm_diff = (n2 - m2) // 2 # n - m

    # prefactor magnitude 2^{-l} sqrt((l+m)! / ((l-m)! (l-n)! (l+n)!))
    ratio = Fraction(math.factorial(lp),
                     math.factorial(lm) * math.factorial(ln_) * math.factorial(lpn))
    mag = (2.0 ** (-l2 / 2.0)) * math.sqrt(float(ratio))
    phase = ((-1.0) ** ln_) * _phase_i_power(nm_diff)

    j_lo = max(0, -mn_sum)
    j_hi = min(lm, ln_)
    total = 0.0
    for j in range(j_lo, j_hi + 1):
        coef = math.comb(lm, j)
        coef *= math.factorial(ln_) // math.factorial(ln_ - j)
        coef *= math.factorial(lpn) // math.factorial(mn_sum + j)
        if j % 2:
            coef = -coef
        e1 = (2 * (ln_ - j) + nm_diff) / 2.0   # exponent of (1-x)
        e2 = (2 * j + mn_sum) / 2.0            # exponent of (1+x)
        term = float(coef)
        base1 = 1.0 - x
        base2 = 1.0 + x
        if e1 != 0.0:
            term *= 0.0 if base1 <= 0.0 else base1 ** e1
        if e2 != 0.0:
            term *= 0.0 if base2 <= 0.0 else base2 ** e2
        total += term
    return phase * mag * total


def wigner_t(idx: WignerIndex, y: EulerAngles) -> complex:
    """Matrix element t^l_{mn} at the Euler angles y.

    Satisfies conj(t^l_{mn}) = (-1)^{n-m} t^l_{-m,-n} and equals the
    identity matrix delta_{mn} at y = (0, 0, 0).
    """
    m = idx.m2 / 2.0
    n = idx.n2 / 2.0
    return np.exp(-1j * (m * y.phi + n * y.psi)) * legendre_P(idx, math.cos(y.theta))


def wigner_matrix(l, y: EulerAngles) -> np.ndarray:
    """The unitary (2l+1) x (2l+1) matrix [t^l_{mn}(y)]_{m,n}."""
    l2 = HalfInt.of(l).twice
    dim = l2 + 1
    out = np.empty((dim, dim), dtype=complex)
    for i, m2 in enumerate(range(-l2, l2 + 1, 2)):
        for j, n2 in enumerate(range(-l2, l2 + 1, 2)):
            out[i, j] = wigner_t(WignerIndex(l2, m2, n2), y)
    return out


D1, D2, D3 = "D1", "D2", "D3"


def invariant_field_action(which: str, idx: WignerIndex) -> list[tuple[complex, WignerIndex]]:
    """Action of the invariant field on t^l_{mn} as a combination of indices.

    D3 is diagonal with eigenvalue i*n on the column index; D1 and D2 are
    the two-term ladders shifting n by +-1, with terms outside [-l, l]
    dropped (their coefficients vanish).
    """
    l2, m2, n2 = idx.l2, idx.m2, idx.n2
    if which == D3:
        return [(1j * (n2 / 2.0), idx)]
    ln_ = (l2 - n2) // 2     # l - n
    lpn = (l2 + n2) // 2     # l + n
    up = math.sqrt(ln_ * (lpn + 1))      # sqrt((l-n)(l+n+1))
    down = math.sqrt(lpn * (ln_ + 1))    # sqrt((l+n)(l-n+1))
    terms: list[tuple[complex, WignerIndex]] = []
    if which == D2:
        if up:
            terms.append((up / 2.0, WignerIndex(l2, m2, n2 + 2)))
        if down:
            terms.append((-down / 2.0, WignerIndex(l2, m2, n2 - 2)))
        return terms
    if which == D1:
        # 1/(-2i) = i/2
        if up:
            terms.append((0.5j * up, WignerIndex(l2, m2, n2 + 2)))
        if down:
            terms.append((0.5j * down, WignerIndex(l2, m2, n2 - 2)))
        return terms
    raise ValueError(f"unknown field {which}")


def random_angles(rng: np.random.Generator) -> EulerAngles:
    return EulerAngles(phi=float(rng.uniform(0.0, 2.0 * math.pi)),
                       theta=float(rng.uniform(0.0, math.pi)),
                       psi=float(rng.uniform(-2.0 * math.pi, 2.0 * math.pi)))
