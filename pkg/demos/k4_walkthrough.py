"""Walk through the three-port K4 network step by step.

    python demos/k4_walkthrough.py
"""

from extutte import data
from extutte.circuits import incidence_extensor, parse_network, signed_forest_contributions
from extutte.exterior import dual
from extutte.ported import m_e, subset_expansion
from extutte.ring import render


def main():
    net = parse_network(data.K4_NET)
    n = incidence_extensor(net)
    o = data.k4_orientation()
    print("Network:")
    print(net.to_text())

    # N is the cut space of the graph; its dual is the cycle space
    print("N has rank", n.tensor.rank, "on", " ".join(n.ground))
    perp = dual(n.tensor, o)
    print("N^perp has rank", perp.rank, "and", len(perp.support()), "nonzero coordinates")

    me = m_e(n, o)
    print(f"\nM_E(N) lives on {' '.join(me.ground)} with rank {me.rank}.")
    print("Each coordinate is a polynomial in the conductances g and resistances r:")
    for key in data.K4_COORDS:
        print(f"  [{' '.join(key)}] = {render(me.coord(key))}")

    # the same answer from a sum over all 16 subsets of resistors
    print("\nsubset expansion agrees:", subset_expansion(n, o) == me)

    print("\nWhere [v1 i1 v3] comes from (one term per forest):")
    for c in signed_forest_contributions(n, ("v1", "i1", "v3"), o):
        sign = "+" if c.sign > 0 else "-"
        print(f"  {sign} {render(c.weight):<14} from A = {{{', '.join(c.subset)}}}")


if __name__ == "__main__":
    main()
