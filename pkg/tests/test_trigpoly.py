"""Exact trigonometric polynomials against direct numpy evaluation."""

import math
from fractions import Fraction

import numpy as np
import pytest

from gsh.trigpoly import TrigPoly, changes_sign, real_root_isolation

TS = 2.0 * math.pi * np.arange(257) / 257


def test_evaluation_matches_numpy():
    p = (TrigPoly.cos(3, 2) - TrigPoly.sin(1) + TrigPoly.constant(5))
    oracle = 2 * np.cos(3 * TS) - np.sin(TS) + 5
    assert np.abs(p(TS) - oracle).max() < 1e-13
    assert p.is_real_valued()
    assert p.bandwidth == 3
    assert p.mean_real() == 5


def test_arithmetic_matches_pointwise():
    p = TrigPoly.cos(2) + TrigPoly.sin(1, Fraction(1, 3))
    q = TrigPoly.sin(3, 2) - TrigPoly.constant(Fraction(1, 2))
    assert np.abs((p * q)(TS) - p(TS) * q(TS)).max() < 1e-13
    assert np.abs((p - q)(TS) - (p(TS) - q(TS))).max() < 1e-13
    assert np.abs(p.scale(Fraction(-7, 2))(TS) + 3.5 * p(TS)).max() < 1e-13
    assert np.abs(p.times_i()(TS) - 1j * p(TS)).max() < 1e-13


def test_derivative_and_primitive():
    p = TrigPoly.cos(4, 3) + TrigPoly.sin(2, Fraction(1, 5))
    dp = p.derivative()
    oracle = -12 * np.sin(4 * TS) + Fraction(2, 5) * np.cos(2 * TS)
    assert np.abs(dp(TS) - oracle).max() < 1e-13

    F = p.primitive()
    assert abs(F(0.0)) < 1e-15
    assert np.abs(F.derivative()(TS) - p(TS)).max() < 1e-13

    # a nonzero mean is dropped: the periodic primitive covers only the
    # oscillation, the caller tracks the linear slope separately
    G = (p + TrigPoly.constant(3)).primitive()
    assert np.abs(G(TS) - F(TS)).max() < 1e-13


def test_oscillatory_part_and_mean():
    p = TrigPoly.sin(1) + TrigPoly.constant(Fraction(7, 3))
    assert p.mean() == (Fraction(7, 3), Fraction(0))
    assert p.oscillatory_part() == TrigPoly.sin(1)


def test_root_isolation_sin_2t():
    roots = real_root_isolation(TrigPoly.sin(2))
    expected = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
    assert len(roots) == 4
    for got, want in zip(sorted(roots), expected):
        assert got == pytest.approx(want, abs=1e-10)


def test_changes_sign():
    assert changes_sign(TrigPoly.sin(1) + TrigPoly.constant(Fraction(1, 2)))
    # touching zero without crossing is not a sign change
    assert not changes_sign(TrigPoly.sin(1) + TrigPoly.constant(1))
    assert not changes_sign(TrigPoly.sin(1) + TrigPoly.constant(2))
    assert not changes_sign(TrigPoly.zero())


def test_sup_norm_bound():
    p = TrigPoly.cos(1, 2) + TrigPoly.sin(5, Fraction(1, 2))
    actual = float(np.abs(p(TS)).max())
    assert p.sup_norm_bound() >= actual - 1e-12


def test_json_round_trip():
    p = TrigPoly.cos(2, Fraction(3, 7)) + TrigPoly.sin(1).times_i()
    q = TrigPoly.from_json(p.to_json())
    assert q == p


def test_conj_real_imag_split():
    p = TrigPoly.cos(1) + TrigPoly.sin(2).times_i()
    assert np.abs(p.conj()(TS) - np.conj(p(TS))).max() < 1e-13
    recon = p.real_part()(TS) + 1j * p.imag_part()(TS)
    assert np.abs(recon - p(TS)).max() < 1e-13
