"""Lower bounds for the frozen-coefficient symbol and their failure."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from conftest import (op_exact_floor, op_liouville, op_rational_constant,
                      op_sqrt2_hypoelliptic)
from gsh.diophantine import (FAILS, HOLDS, METHOD_EXACT, METHOD_QUALITATIVE,
                             METHOD_SEQUENCE, UNKNOWN, dc_check,
                             exp_gap_lower_bound,
                             liouville_violation_sequence)
from gsh.numerics import TaggedReal
from gsh.operator_model import EvolutionOperator


def test_exact_floor_value():
    rep = dc_check(op_exact_floor())
    assert rep.status == HOLDS and rep.method == METHOD_EXACT and rep.exact
    assert rep.eps == Fraction(1, 30)
    assert rep.N == 0.0


def test_exact_floor_sweep():
    op = op_exact_floor()
    eps = float(dc_check(op).eps)
    worst = math.inf
    hits = 0
    for tau in range(-12, 13):
        for x1 in range(-12, 13):
            for x2 in range(-12, 13):
                sigma = op.symbol_L0(tau, (x1, x2), ())
                if sigma != 0:
                    worst = min(worst, abs(sigma))
                    hits += 1
    assert hits > 0
    assert worst >= eps - 1e-12


def test_exp_gap_against_mpmath():
    rng = np.random.default_rng(2)
    zs = [complex(rng.normal(), rng.normal()) for _ in range(10)]
    zs += [1e-9 + 1e-9j, -3.0 + 0.25j, 5.0 - 0.125j, 0.25j, 1e-12j + 1e-13]
    for z in zs:
        got = exp_gap_lower_bound(z)
        with mpmath.workdps(60):
            w = mpmath.mpc(z.real, z.imag)
            oracle = float(mpmath.log(abs(1 - mpmath.e ** (-2 * mpmath.pi * w))))
        assert got == pytest.approx(oracle, rel=1e-9, abs=1e-9)


def test_non_liouville_qualitative_holds():
    rep = dc_check(op_sqrt2_hypoelliptic())
    assert rep.status == HOLDS and rep.method == METHOD_QUALITATIVE
    assert not rep.exact


def test_rational_constant_holds():
    assert dc_check(op_rational_constant()).status == HOLDS


def test_liouville_sequence_structure():
    seq = liouville_violation_sequence(op_liouville(), n_max=6)
    assert seq.recognized
    assert seq.direction["xi"] == [1]
    assert [int(a) for a in seq.direction["alpha"]] == [-1]
    for e in seq.entries:
        # certified bound sits below the super-polynomial decay curve
        assert e.log_abs_upper <= e.log_curve + 1e-9
        # the imaginary combination cancels exactly on the chosen modes
        assert e.xi[0] + e.alpha2[0] // 2 == 0


def test_liouville_sequence_certificate_oracle():
    # high-precision check: the actual symbol modulus at the emitted modes
    # is no larger than the certified log upper bound
    seq = liouville_violation_sequence(op_liouville(), n_max=5)
    with mpmath.workdps(900):
        mu = mpmath.mpf(0)
        for k in range(1, 8):
            mu += mpmath.mpf(10) ** (-mpmath.factorial(k))
        for e in seq.entries:
            # re = tau + mu*xi, im = xi + alpha (zero by construction)
            re = mpmath.mpf(e.tau) + mu * e.xi[0]
            assert abs(re) <= mpmath.e ** mpmath.mpf(e.log_abs_upper) * (1 + mpmath.mpf("1e-12"))


def test_liouville_dc_fails():
    rep = dc_check(op_liouville())
    assert rep.status == FAILS and rep.method == METHOD_SEQUENCE
    assert rep.witness is not None and len(rep.witness["entries"]) == 6


def test_two_irrational_keys_unknown():
    op = EvolutionOperator(
        2, 0,
        a=[TaggedReal.non_liouville(math.sqrt(2.0), key="sqrt2"),
           TaggedReal.non_liouville(math.sqrt(3.0), key="sqrt3")],
        b=[0, 0], e=[], f=[], q_re=0, q_im=0)
    rep = dc_check(op, bound=6)
    assert rep.status == UNKNOWN
    assert rep.sweep_min is not None and rep.sweep_min > 0
