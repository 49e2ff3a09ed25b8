"""A gallery of operators and their GS/GH verdicts.

Builds eight reference operators spanning every branch of the classifier:
exact rational constants, a non-Liouville irrational speed, oscillatory
coefficients with and without sign changes, and a sublevel-set geometry
that disconnects. Prints the verdict, the deciding clause and the witness
for each.
"""

import time
from fractions import Fraction

from gsh.numerics import TaggedReal
from gsh.operator_model import EvolutionOperator, classify
from gsh.trigpoly import TrigPoly

SQRT2 = 2 ** 0.5


def sin3_2t():
    return TrigPoly.sin(2, Fraction(3, 4)) - TrigPoly.sin(6, Fraction(1, 4))


GALLERY = {
    "rational constants, q = 3i": EvolutionOperator(
        1, 1, a=[1], b=[1], e=[2], f=[2], q_re=0, q_im=3),
    "rational constants, q = 0": EvolutionOperator(
        1, 1, a=[1], b=[0], e=[1], f=[0], q_re=0, q_im=0),
    "sqrt(2) i d/dx + i D + 1/4": EvolutionOperator(
        1, 1, a=[0], b=[TaggedReal.non_liouville(SQRT2, key="sqrt2")],
        e=[0], f=[1], q_re=Fraction(1, 4), q_im=0),
    "oscillatory, solvable": EvolutionOperator(
        1, 1,
        a=[TrigPoly.cos(1) + TrigPoly.constant(1)], b=[TrigPoly.sin(1)],
        e=[TrigPoly.sin(1) + TrigPoly.constant(2)], f=[TrigPoly.cos(1)],
        q_re=0, q_im=3),
    "odd sphere mean, not solvable": EvolutionOperator(
        1, 1,
        a=[TrigPoly.cos(1) + TrigPoly.constant(2)], b=[TrigPoly.sin(1)],
        e=[TrigPoly.sin(1) + TrigPoly.constant(1)], f=[TrigPoly.cos(1)],
        q_re=0, q_im=0),
    "sin^3(2t) profile, disconnected sublevels": EvolutionOperator(
        1, 1,
        a=[TrigPoly.cos(1) + TrigPoly.constant(1)], b=[TrigPoly.sin(1)],
        e=[TrigPoly.sin(1) + TrigPoly.constant(2)], f=[sin3_2t()],
        q_re=0, q_im=-1),
}


def main():
    for name, op in GALLERY.items():
        t0 = time.monotonic()
        gs, gh = classify(op)
        dt = time.monotonic() - t0
        print(f"== {name}  ({dt:.2f}s)")
        print(f"   GS: {gs.status:3s} via {gs.clause}")
        if gs.witness:
            print(f"       witness: {gs.witness}")
        print(f"   GH: {gh.status:3s} via {gh.clause}")
        if gh.witness:
            print(f"       witness: {gh.witness}")
        print()


if __name__ == "__main__":
    main()
