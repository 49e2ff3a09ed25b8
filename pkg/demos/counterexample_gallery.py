"""Constructive NO certificates, one of each kind.

1. Singular right-hand side for a sign-changing imaginary coefficient:
   g has rapidly decaying coefficients but every solution concentrates at
   one time, losing only a polynomial factor there.
2. Liouville violation: a specially tuned irrational speed makes the
   symbol collapse super-polynomially along an explicit frequency
   sequence, shown in big-integer/log arithmetic.
3. Kernel ladder: a neutral rotation operator annihilates one explicit
   mode per sphere level, so smoothing can never be inferred.
4. Dual pair: for the disconnected-sublevel operator, a bump/plateau pair
   keeps a duality pairing constant while the seminorm product that any
   a-priori inequality would need decays at an exact negative rate.
"""

from fractions import Fraction

from gsh import adversarial, sublevel
from gsh.numerics import TaggedReal, standard_liouville
from gsh.operator_model import EvolutionOperator
from gsh.trigpoly import TrigPoly


def main():
    # 1. sign change: d/dt + i sin(t) D + 1/2
    op_cs = EvolutionOperator(0, 1, a=[], b=[], e=[0], f=[TrigPoly.sin(1)],
                              q_re=Fraction(1, 2), q_im=0)
    cs = adversarial.cs_singular_rhs(op_cs, xi=(), alpha2=(2,), n_max=12)
    print("== singular right-hand side")
    print(f"   g decay:    {cs.g_decay.kind}")
    print(f"   |u(t0)| ~ n^{cs.u_t0_exponent:.2f} at the hot spot t0={cs.t0:.3f}")
    print()

    # 2. Liouville violation
    op_dc = EvolutionOperator(
        1, 1, a=[TaggedReal.liouville(standard_liouville())],
        b=[1], e=[0], f=[1], q_re=0, q_im=0)
    dc = adversarial.dc_violation_singular_data(op_dc, n_max=6)
    print("== Liouville violation sequence")
    for row in dc.table:
        print(f"   n={row['n']}: log|g_n| = {row['log_g_amp']:.1f}, "
              f"log|u_n| = {row['log_u_amp']:.1f}")
    print(f"   g decay: {dc.g_decay.kind}, u growth: {dc.u_decay.kind}")
    print()

    # 3. kernel ladder: d/dt + i D
    op_k = EvolutionOperator(0, 1, a=[], b=[], e=[0], f=[1], q_re=0, q_im=0)
    ladder = adversarial.homogeneous_kernel_family(op_k, bound=8, nt=64)
    levels = sorted({el.mode.l2[0] for el in ladder.elements})
    print("== homogeneous kernel ladder")
    print(f"   {len(ladder.elements)} kernel elements, "
          f"sphere levels 2l = {levels}")
    print(f"   infinite ladder: {ladder.infinite_ladder}")
    print()

    # 4. dual pair on the disconnected-sublevel operator
    sin3 = TrigPoly.sin(2, Fraction(3, 4)) - TrigPoly.sin(6, Fraction(1, 4))
    op_h = EvolutionOperator(
        1, 1,
        a=[TrigPoly.cos(1) + TrigPoly.constant(1)], b=[TrigPoly.sin(1)],
        e=[TrigPoly.sin(1) + TrigPoly.constant(2)], f=[sin3],
        q_re=0, q_im=-1)
    fam = sublevel.connectedness_family(op_h, bound=8)
    pair = adversarial.hormander_pair(op_h, fam.xi, fam.alpha2,
                                      ns=(1, 4, 8), lambdas=(1, 2))
    print("== dual pair (disconnected sublevel witness)")
    print(f"   witness frequencies xi={fam.xi}, alpha2={fam.alpha2}, "
          f"split level m={fam.m_witness:.4f}")
    print(f"   pairing expected {pair.expected:.6f}, decay rate "
          f"omega = {pair.omega:.4f} < 0")
    for e in pair.entries:
        print(f"   n={e.n}: pairing drift {e.drift:.2e}")


if __name__ == "__main__":
    main()
