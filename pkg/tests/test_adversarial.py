"""Constructive counterexample data: singular right-hand sides, dual
pairs, Liouville tables and kernel ladders."""

import math

import numpy as np
import pytest

from conftest import (op_disconnected_sublevel, op_liouville,
                      op_neutral_rotation, op_oscillatory_solvable,
                      op_sign_change_witness)
from gsh import fourier, ode_solver
from gsh.adversarial import (cs_singular_rhs, dc_violation_singular_data,
                             homogeneous_kernel_family, hormander_pair)

TWO_PI = 2.0 * math.pi


def test_cs_certificate():
    rep = cs_singular_rhs(op_sign_change_witness(), xi=(), alpha2=(2,),
                          n_max=8)
    assert rep.A > 0.0
    assert rep.g_decay.kind == fourier.RAPID_DECAY
    # solved values concentrate: only polynomial loss at the hot spot
    assert rep.u_t0_exponent >= -0.6
    for e in rep.entries:
        assert e.u_sup_log <= e.sup_bound_log + 1e-9


def test_cs_needs_nonresonant_shifted_symbol():
    with pytest.raises(ValueError):
        # alpha = 0 mode: theta is identically zero, no sign change to use
        cs_singular_rhs(op_sign_change_witness(), xi=(), alpha2=(0,), n_max=3)


def test_hormander_pair_constant_pairing():
    rep = hormander_pair(op_disconnected_sublevel(), xi=(0,), alpha2=(2,),
                         ns=(1, 3), lambdas=(1, 2), nt=256)
    assert rep.omega < 0.0
    assert rep.expected == pytest.approx(TWO_PI)
    vals = [e.pairing for e in rep.entries]
    for v in vals:
        assert v.real == pytest.approx(rep.expected, rel=1e-8)
    # pairing is constant across n while the bound curve's linear-in-n
    # part decreases with the exact negative slope omega
    assert abs(vals[0] - vals[1]) <= 1e-9 * abs(rep.expected)
    s = 1
    for lam in (1, 2):
        linear = [e.bound_curves[lam] - (4 * lam + 3 + s) * math.log(e.n)
                  for e in rep.entries]
        slope = (linear[1] - linear[0]) / (rep.entries[1].n - rep.entries[0].n)
        assert slope == pytest.approx(rep.omega, rel=1e-9)
        assert slope < 0.0


def test_dc_violation_tables():
    rep = dc_violation_singular_data(op_liouville(), n_max=6)
    assert rep.sequence.recognized
    assert rep.g_decay.kind == fourier.RAPID_DECAY
    assert rep.u_decay.kind == fourier.SUPRAPOLYNOMIAL
    assert len(rep.table) == 6
    for row in rep.table:
        assert row["log_g_amp"] == pytest.approx(-row["log_u_amp"])


def test_kernel_ladder():
    rep = homogeneous_kernel_family(op_neutral_rotation(), bound=6, nt=64)
    assert rep.infinite_ladder
    assert rep.elements
    for el in rep.elements:
        assert el.mode.alpha2 == (0,)
        assert abs(el.values[0] - 1.0) < 1e-12
        # mode-wise annihilation
        osc = op_neutral_rotation().theta_osc(el.mode.xi, el.mode.alpha2)
        th0, exact, _ = op_neutral_rotation().theta_mean(el.mode.xi,
                                                        el.mode.alpha2)
        ode = ode_solver.ModeODE(theta_osc=osc, theta0=th0,
                                 g=np.zeros(64, dtype=complex), n=64,
                                 theta0_exact=exact)
        assert ode_solver.residual(ode, el.values) < 1e-10
    ells = sorted({el.mode.l2[0] for el in rep.elements})
    assert ells[0] == 0 and len(ells) >= 3


def test_kernel_empty_when_never_resonant():
    rep = homogeneous_kernel_family(op_sign_change_witness(), bound=4)
    assert not rep.elements and not rep.infinite_ladder


def test_oscillatory_kernel_matches_solver_conventions():
    # resonant modes of the oscillatory operator still produce periodic
    # kernel elements despite nonconstant coefficients
    rep = homogeneous_kernel_family(op_oscillatory_solvable(), bound=2,
                                    nt=128)
    assert rep.elements
    el = rep.elements[0]
    assert abs(el.values[0] - 1.0) < 1e-12
