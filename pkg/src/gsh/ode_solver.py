"""The scalar periodic ODE u' + theta(t) u = g on the circle.

Non-resonant modes (mean of theta not in iZ) have a unique periodic
solution given by either of two equivalent integral formulas; resonant
modes are solvable iff a compatibility integral vanishes, with a
one-parameter solution family.  All s-integrals are evaluated exactly per
Fourier mode of the periodized integrand, which keeps both branches
spectrally accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .trigpoly import TrigPoly

TWO_PI = 2.0 * math.pi

MINUS, PLUS, AUTO = "MINUS", "PLUS", "AUTO"


class NotPeriodicError(ValueError):
    """Raised when a non-resonant homogeneous solution is requested."""


class ModeUnsolvable(ValueError):
    """Resonant mode whose compatibility integral does not vanish."""

    def __init__(self, compatibility: complex):
        super().__init__(f"resonant mode with nonzero compatibility {compatibility}")
        self.compatibility = compatibility


@dataclass
class ModeODE:
    """One scalar mode: theta = theta0 + oscillation, right-hand side g.

    ``theta0_exact`` carries the exact complex-rational mean when known, in
    which case resonance (theta0 in iZ) is decided exactly; otherwise the
    caller must pass ``resonant`` explicitly.
    """

    theta_osc: TrigPoly
    theta0: complex
    g: Union[TrigPoly, np.ndarray]
    n: int = 512
    theta0_exact: Optional[tuple[Fraction, Fraction]] = None
    resonant: Optional[bool] = None
    resonant_m: Optional[int] = None
    osc_primitive_samples: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.theta_osc.coefficient(0) != (Fraction(0), Fraction(0)):
            raise ValueError("theta_osc must have zero mean")
        if self.resonant is None:
            if self.theta0_exact is None:
                raise ValueError("resonance undecidable without exact mean")
            re, im = self.theta0_exact
            self.resonant = (re == 0 and im.denominator == 1)
            if self.resonant:
                self.resonant_m = int(im)
        if self.resonant and self.resonant_m is None:
            m = round(float(np.imag(self.theta0)))
            if abs(np.imag(self.theta0) - m) > 1e-9 or abs(np.real(self.theta0)) > 1e-9:
                raise ValueError("resonant flag inconsistent with theta0")
            self.resonant_m = m

    # -- shared precomputation --------------------------------------------

    def _grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    def _g_samples(self) -> np.ndarray:
        if isinstance(self.g, TrigPoly):
            return np.asarray(self.g.sample(self.n), dtype=complex)
        g = np.asarray(self.g, dtype=complex)
        if g.shape == ():
            return np.full(self.n, complex(g))
        if g.shape != (self.n,):
            raise ValueError("g samples must have length n")
        return g

    def _osc_primitive(self) -> np.ndarray:
        if self.osc_primitive_samples is not None:
            return self.osc_primitive_samples
        return np.asarray(self.theta_osc.primitive()(self._grid()), dtype=complex)

    def _p_hat(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """FFT coefficients of g * exp(primitive of oscillation)."""
        osc = self._osc_primitive()
        p = self._g_samples() * np.exp(osc)
        hat = np.fft.fft(p) / self.n
        freqs = np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)
        return hat, freqs, osc


def _expm1c(z: np.ndarray) -> np.ndarray:
    """exp(z) - 1 for complex arrays, accurate near zero."""
    z = np.asarray(z, dtype=complex)
    out = np.exp(z) - 1.0
    small = np.abs(z) < 1e-8
    if np.any(small):
        zs = z[small]
        out[small] = zs * (1.0 + zs / 2.0 * (1.0 + zs / 3.0))
    return out


@dataclass
class ModeSolution:
    values: np.ndarray
    branch: str
    compatibility: Optional[complex] = None


def compatibility(ode: ModeODE) -> complex:
    """The integral over the period of g * exp(integral of theta)."""
    if not ode.resonant:
        raise ValueError("compatibility is defined for resonant modes")
    hat, freqs, _ = ode._p_hat()
    m = ode.resonant_m
    idx = np.where(freqs == -m)[0]
    value = complex(hat[idx[0]]) if len(idx) else 0.0 + 0.0j
    return TWO_PI * value


def homogeneous(ode: ModeODE) -> np.ndarray:
    """exp(-integral_0^t theta); periodic exactly in the resonant case."""
    if not ode.resonant:
        raise NotPeriodicError("homogeneous solution is not periodic: mean not in iZ")
    ts = ode._grid()
    return np.exp(-1j * ode.resonant_m * ts - ode._osc_primitive())


def resonant_profile_value(ode: ModeODE, t: float) -> complex:
    """V(t) = sum_{k != -m} p_k (e^{i(k+m)t} - 1)/(i(k+m)) at an arbitrary t.

    The resonant solution family is u = e^{-imt - osc} (lam + V); choosing
    lam = -V(t*) normalizes u(t*) = 0 at any basepoint t*.
    """
    if not ode.resonant:
        raise ValueError("profile value is defined for resonant modes")
    hat, freqs, _ = ode._p_hat()
    m = ode.resonant_m
    km = freqs + m
    mask = km != 0
    kmm = km[mask]
    terms = hat[mask] * (np.exp(1j * kmm * t) - 1.0) / (1j * kmm)
    return complex(terms.sum())


def solve_mode(ode: ModeODE, branch: str = AUTO, lam: complex = 0.0,
               tol: float = 1e-9, check_compat: bool = True) -> ModeSolution:
    """Solve u' + theta u = g on the uniform n-grid.

    Non-resonant modes: the two integral-formula branches divide the exact
    per-frequency s-integral by 1 - e^{-2 pi theta0} (MINUS) or
    e^{2 pi theta0} - 1 (PLUS); AUTO picks the branch whose kernel stays
    bounded (MINUS when Re theta0 >= 0).  Resonant modes return the
    lambda-parametrized family after the compatibility gate.
    """
    hat, freqs, osc = ode._p_hat()
    ts = ode._grid()
    if ode.resonant:
        m = ode.resonant_m
        comp = TWO_PI * complex(hat[np.where(freqs == -m)[0][0]]) \
            if np.any(freqs == -m) else 0.0 + 0.0j
        if check_compat:
            gnorm = float(np.abs(ode._g_samples()).max())
            if abs(comp) > tol * (gnorm + 1.0):
                raise ModeUnsolvable(comp)
        km = freqs + m
        with np.errstate(divide="ignore", invalid="ignore"):
            vk = np.where(km != 0, hat / (1j * km), 0.0)
        # V(t) = sum_{k != -m} p_k (e^{i(k+m)t} - 1)/(i(k+m))
        #      = e^{imt} * idft(vk) - sum_k vk
        V = np.exp(1j * m * ts) * np.fft.ifft(vk * ode.n) - vk.sum()
        u = np.exp(-1j * m * ts - osc) * (lam + V)
        return ModeSolution(u, "RESONANT", compatibility=comp)

    th0 = complex(ode.theta0)
    if branch == AUTO:
        branch = MINUS if th0.real >= 0.0 else PLUS
    w = th0 + 1j * freqs
    if branch == MINUS:
        ratio = -_expm1c(-TWO_PI * w) / (w * (-_expm1c(np.array(-TWO_PI * th0))))
    elif branch == PLUS:
        ratio = _expm1c(TWO_PI * w) / (w * _expm1c(np.array(TWO_PI * th0)))
    else:
        raise ValueError(f"unknown branch {branch}")
    vhat = hat * ratio
    u = np.exp(-osc) * np.fft.ifft(vhat * ode.n)
    return ModeSolution(u, branch)


def residual(ode: ModeODE, u: np.ndarray) -> float:
    """sup |u' + theta u - g| evaluated spectrally on the mode grid."""
    n = ode.n
    freqs = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    du = np.fft.ifft(np.fft.fft(u) * (1j * freqs))
    theta_vals = ode.theta0 + ode.theta_osc(ode._grid())
    return float(np.abs(du + theta_vals * u - ode._g_samples()).max())
