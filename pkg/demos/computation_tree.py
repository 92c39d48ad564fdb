"""Computation trees, activities and three routes to the same polynomial.

    python demos/computation_tree.py
"""

import itertools

from extutte import data
from extutte.activities import build_tree, check_partitions, flat_expansion, tree_to_text, tutte_expression
from extutte.matroid import rank_poly
from extutte.ring import render


def main():
    n = data.k4_extensor()
    tree = build_tree(n)
    print("Tree for the default order (the greatest element is reduced first):")
    print(tree_to_text(tree))

    r = rank_poly(n)
    print(f"\nR has {len(r.terms)} terms; the first few:")
    for line in render(r).split(" + ")[:4]:
        print("  ", line)

    same = 0
    for perm in itertools.permutations(n.nonports):
        t = build_tree(n, n.ports + perm)
        if check_partitions(t) == (True, True) and tutte_expression(t) == r:
            same += 1
    print(f"\n{same} of 24 orders tile both interval partitions and reproduce R.")
    print("The lattice-of-flats expansion reproduces R:", flat_expansion(n) == r)


if __name__ == "__main__":
    main()
