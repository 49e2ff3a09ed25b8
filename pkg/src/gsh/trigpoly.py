"""Finite Fourier series on the circle with exact rational coefficients.

A TrigPoly is sum_k c_k e^{ikt} with c_k complex and both parts rational.
This is the only admitted class of coefficient functions: it makes means,
primitives, linear spans and sign changes exactly decidable.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .numerics import format_rational, parse_rational


class TrigPoly:
    """Finitely supported map frequency -> complex rational coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs: dict[int, tuple[Fraction, Fraction]] = {}
        if coeffs:
            for k, c in coeffs.items():
                re, im = c if isinstance(c, tuple) else (c, Fraction(0))
                re, im = Fraction(re), Fraction(im)
                if re != 0 or im != 0:
                    self.coeffs[int(k)] = (re, im)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value) -> "TrigPoly":
        if isinstance(value, tuple):
            return TrigPoly({0: value})
        return TrigPoly({0: (Fraction(value), Fraction(0))})

    @staticmethod
    def zero() -> "TrigPoly":
        return TrigPoly()

    @staticmethod
    def cos(k: int, amplitude=1) -> "TrigPoly":
        a = Fraction(amplitude) / 2
        return TrigPoly({k: (a, Fraction(0)), -k: (a, Fraction(0))})

    @staticmethod
    def sin(k: int, amplitude=1) -> "TrigPoly":
        a = Fraction(amplitude) / 2
        # sin kt = (e^{ikt} - e^{-ikt}) / (2i)
        return TrigPoly({k: (Fraction(0), -a), -k: (Fraction(0), a)})

    # -- structure ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.coeffs)

    def is_real_valued(self) -> bool:
        for k, (re, im) in self.coeffs.items():
            cre, cim = self.coeffs.get(-k, (Fraction(0), Fraction(0)))
            if cre != re or cim != -im:
                return False
        return True

    @property
    def bandwidth(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    def coefficient(self, k: int) -> tuple[Fraction, Fraction]:
        return self.coeffs.get(int(k), (Fraction(0), Fraction(0)))

    def mean(self) -> tuple[Fraction, Fraction]:
        return self.coefficient(0)

    def mean_real(self) -> Fraction:
        return self.coefficient(0)[0]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for k, (re, im) in other.coeffs.items():
            cre, cim = out.get(k, (Fraction(0), Fraction(0)))
            out[k] = (cre + re, cim + im)
        return TrigPoly(out)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + other.scale(-1)

    def __neg__(self) -> "TrigPoly":
        return self.scale(-1)

    def scale(self, factor) -> "TrigPoly":
        """Multiply by an exact complex rational scalar."""
        if isinstance(factor, tuple):
            fre, fim = Fraction(factor[0]), Fraction(factor[1])
        else:
            fre, fim = Fraction(factor), Fraction(0)
        out = {}
        for k, (re, im) in self.coeffs.items():
            out[k] = (re * fre - im * fim, re * fim + im * fre)
        return TrigPoly(out)

    def times_i(self) -> "TrigPoly":
        return self.scale((0, 1))

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        out: dict[int, tuple[Fraction, Fraction]] = {}
        for k1, (a, b) in self.coeffs.items():
            for k2, (c, d) in other.coeffs.items():
                k = k1 + k2
                re, im = out.get(k, (Fraction(0), Fraction(0)))
                out[k] = (re + a * c - b * d, im + a * d + b * c)
        return TrigPoly(out)

    def conj(self) -> "TrigPoly":
        out = {}
        for k, (re, im) in self.coeffs.items():
            out[-k] = (re, -im)
        return TrigPoly(out)

    def real_part(self) -> "TrigPoly":
        return (self + self.conj()).scale(Fraction(1, 2))

    def imag_part(self) -> "TrigPoly":
        return (self - self.conj()).scale((0, Fraction(-1, 2)))

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "TrigPoly":
        out = {}
        for k, (re, im) in self.coeffs.items():
            # d/dt e^{ikt} = ik e^{ikt}
            out[k] = (-k * im, k * re)
        return TrigPoly(out)

    def oscillatory_part(self) -> "TrigPoly":
        out = {k: c for k, c in self.coeffs.items() if k != 0}
        return TrigPoly(out)

    def primitive(self) -> "TrigPoly":
        """Periodic primitive of the mean-zero part, normalized to F(0)=0.

        Returns G with G' = self - mean(self) and G(0) = 0; the caller
        tracks the linear slope (the mean) separately.
        """
        out: dict[int, tuple[Fraction, Fraction]] = {}
        const_re, const_im = Fraction(0), Fraction(0)
        for k, (re, im) in self.coeffs.items():
            if k == 0:
                continue
            # c_k / (ik) = (im/k) - i(re/k)
            gre, gim = Fraction(im, k), Fraction(-re, k)
            out[k] = (gre, gim)
            const_re -= gre
            const_im -= gim
        if const_re != 0 or const_im != 0:
            out[0] = (const_re, const_im)
        return TrigPoly(out)

    # -- evaluation --------------------------------------------------------

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for k, (re, im) in self.coeffs.items():
            out = out + complex(re, im) * np.exp(1j * k * t)
        if out.shape == ():
            return complex(out)
        return out

    def sample(self, n: int) -> np.ndarray:
        """Values on the uniform grid t_j = 2 pi j / n."""
        return self(2.0 * math.pi * np.arange(n) / n)

    def sup_norm_bound(self) -> float:
        """Upper bound sum |c_k| for the sup norm."""
        return float(sum(math.hypot(float(re), float(im))
                         for re, im in self.coeffs.values()))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for k in sorted(self.coeffs):
            re, im = self.coeffs[k]
            entries.append({"freq": k, "re": format_rational(re),
                            "im": format_rational(im)})
        return {"coeffs": entries}

    @staticmethod
    def from_json(obj) -> "TrigPoly":
        out = {}
        for entry in obj.get("coeffs", []):
            k = int(entry["freq"])
            re = parse_rational(entry.get("re", "0"))
            im = parse_rational(entry.get("im", "0"))
            out[k] = (re, im)
        return TrigPoly(out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TrigPoly(0)"
        parts = []
        for k in sorted(self.coeffs):
            re, im = self.coeffs[k]
            parts.append(f"({format_rational(re)}+{format_rational(im)}i)e^{{{k}it}}")
        return "TrigPoly(" + " + ".join(parts) + ")"


def real_root_isolation(p: TrigPoly, samples_per_band: int = 64,
                        tol: float = 1e-12) -> list[float]:
    """Sign-change roots of a real-valued TrigPoly on [0, 2pi).

    Samples densely (64 per unit bandwidth by default) and bisects each
    bracketing interval.  A degree-D trig polynomial has at most 2D roots,
    so the dense sweep is complete for simple roots.
    """
    if p.is_zero():
        return []
    n = max(samples_per_band * max(p.bandwidth, 1), 64)
    ts = 2.0 * math.pi * np.arange(n + 1) / n
    vals = np.real(p(ts))
    roots = []
    for i in range(n):
        a, b = ts[i], ts[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0.0:
            lo, hi, flo = a, b, fa
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = float(np.real(p(mid)))
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))
    return roots


def changes_sign(p: TrigPoly, rel_margin: float = 1e-12) -> bool:
    """Whether a real-valued TrigPoly takes both signs on the circle."""
    if p.is_zero():
        return False
    n = max(64 * max(p.bandwidth, 1), 64)
    vals = np.real(p(2.0 * math.pi * np.arange(n) / n))
    scale = float(np.max(np.abs(vals))) + p.sup_norm_bound() * 1e-15
    return bool(vals.min() < -rel_margin * scale and vals.max() > rel_margin * scale)
