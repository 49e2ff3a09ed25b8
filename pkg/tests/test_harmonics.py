"""Representation coefficients on the 3-sphere.

Oracle: sympy's quantum-rotation matrix elements. The conventions differ
by the fixed phase i^(n-m), which the comparison applies explicitly.
"""

import numpy as np
import pytest
from sympy import N as sympy_N
from sympy import Rational
from sympy.physics.quantum.spin import Rotation

from gsh.harmonics import (EulerAngles, WignerIndex, invariant_field_action,
                           random_angles, wigner_matrix, wigner_t)

ANGLES = EulerAngles(0.7, 1.1, -2.3)


def _sympy_oracle(l2, m2, n2, y):
    val = Rotation.D(Rational(l2, 2), Rational(m2, 2), Rational(n2, 2),
                     y.phi, y.theta, y.psi).doit()
    return (1j ** ((n2 - m2) // 2)) * complex(sympy_N(val))


@pytest.mark.parametrize("l2", [1, 2, 3])
def test_matches_sympy_rotation(l2):
    for m2 in range(-l2, l2 + 1, 2):
        for n2 in range(-l2, l2 + 1, 2):
            ours = wigner_t(WignerIndex(l2, m2, n2), ANGLES)
            assert ours == pytest.approx(_sympy_oracle(l2, m2, n2, ANGLES),
                                         abs=1e-12)


def test_angle_factorization():
    # the phi and psi dependence is a pure phase e^{-i(m phi + n psi)}
    idx = WignerIndex(3, 1, -3)
    base = wigner_t(idx, EulerAngles(0.0, 0.9, 0.0))
    got = wigner_t(idx, EulerAngles(0.4, 0.9, 1.3))
    want = np.exp(-1j * (idx.m * 0.4 + idx.n * 1.3)) * base
    assert got == pytest.approx(want, abs=1e-13)


def test_unitarity_and_conjugation():
    rng = np.random.default_rng(7)
    for _ in range(5):
        y = random_angles(rng)
        for l2 in (1, 2, 4, 5):
            T = wigner_matrix(l2 / 2, y)
            d = l2 + 1
            assert np.abs(T @ T.conj().T - np.eye(d)).max() < 1e-12
            for m2 in range(-l2, l2 + 1, 2):
                for n2 in range(-l2, l2 + 1, 2):
                    lhs = np.conj(wigner_t(WignerIndex(l2, m2, n2), y))
                    rhs = ((-1.0) ** ((n2 - m2) // 2)
                           * wigner_t(WignerIndex(l2, -m2, -n2), y))
                    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_neutral_field_is_psi_derivative():
    # D3 = -d/dpsi acts diagonally with eigenvalue i*n
    idx = WignerIndex(4, 2, -2)
    action = invariant_field_action("D3", idx)
    assert len(action) == 1
    coef, out_idx = action[0]
    assert out_idx == idx
    assert coef == pytest.approx(1j * idx.n, abs=1e-14)

    h = 1e-6
    up = wigner_t(idx, EulerAngles(0.3, 1.0, 0.5 + h))
    dn = wigner_t(idx, EulerAngles(0.3, 1.0, 0.5 - h))
    numeric = -(up - dn) / (2 * h)
    center = wigner_t(idx, EulerAngles(0.3, 1.0, 0.5))
    assert numeric == pytest.approx(coef * center, abs=1e-7)


def test_raising_lowering_shift_structure():
    idx = WignerIndex(4, 0, 2)
    for which, shift in (("D1", 2), ("D2", 2)):
        action = invariant_field_action(which, idx)
        assert {abs(out.n2 - idx.n2) for _, out in action} == {shift}
        for _, out in action:
            assert out.l2 == idx.l2 and out.m2 == idx.m2


def test_half_integer_spin_edge():
    y = EulerAngles(0.2, 0.4, 0.6)
    T = wigner_matrix(0.5, y)
    assert T.shape == (2, 2)
    assert np.abs(T @ T.conj().T - np.eye(2)).max() < 1e-14
    # trivial representation
    assert wigner_t(WignerIndex(0, 0, 0), y) == pytest.approx(1.0)
