"""Transfer resistance of a Wheatstone bridge, symbolically and numerically.

The bridge has a source port across a-d and a detector port across b-c.
The transfer resistance vanishes exactly when the bridge is balanced.

    python demos/bridge_transfer.py
"""

from fractions import Fraction

from extutte.circuits import maxwell_rho21, parse_network
from extutte.ring import render

BRIDGE = """\
edge p1 a d port
edge p2 b c port
edge e1 a b r=1
edge e2 a c r=1
edge e3 b d r=1
edge e4 c d r=1
"""


def main():
    net = parse_network(BRIDGE)
    m = maxwell_rho21(net)
    print("rho21 numerator:  ", render(m.numerator))
    print("rho21 denominator:", render(m.denominator))
    print("forest formula agrees:", m.agree)

    for label, g in [("balanced", {"g1": 1, "g2": 2, "g3": 1, "g4": 2}), ("unbalanced", {"g1": 1, "g2": 2, "g3": 3, "g4": 1})]:
        value = m.numerator.eval(g) / m.denominator.eval(g)
        print(f"{label:>10}: g = {g} -> rho21 = {Fraction(value)}")


if __name__ == "__main__":
    main()
