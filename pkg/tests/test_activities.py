import itertools
import json
import random

import pytest

from extutte import data
from extutte.activities import (
    build_tree,
    check_partitions,
    flat_expansion,
    flats,
    leaf_for,
    mobius,
    order_activities,
    p_subbases,
    tree_to_dict,
    tree_to_json,
    tree_to_text,
    tutte_expression,
)
from extutte.errors import LaurentResidue, ZeroTensorError
from extutte.exterior import AltTensor
from extutte.matroid import rank_poly
from extutte.ported import PortedExtensor
from extutte.ring import Poly
from extutte.suites import random_ported


def _portless(n):
    return PortedExtensor(n.tensor, (), n.ports + n.nonports)


def test_k4_tree_shape():
    tree = build_tree(data.k4_extensor())
    text = tree_to_text(tree)
    assert text.splitlines()[0] == "reduce e4"
    assert "  /e4: reduce e3" in text
    assert len(tree.leaves()) == len(p_subbases(data.k4_extensor()))


def test_k4_every_order():
    n = data.k4_extensor()
    r0 = rank_poly(n)
    for perm in itertools.permutations(n.nonports):
        tree = build_tree(n, n.ports + perm)
        assert check_partitions(tree) == (True, True)
        assert tutte_expression(tree) == r0


def test_leaves_are_p_subbases():
    n = data.k4_extensor()
    tree = build_tree(n)
    leaf_sets = {leaf.activities().F for leaf in tree.leaves()}
    assert leaf_sets == set(p_subbases(n))
    for f in leaf_sets:
        leaf, acts = leaf_for(tree, f)
        assert acts.F == f


@pytest.mark.parametrize("seed", range(10))
def test_activities_match_classical_definition(seed):
    rng = random.Random(seed)
    n = _portless(random_ported(rng, 5, rational=False)[0])
    for perm in itertools.permutations(n.nonports):
        for leaf in build_tree(n, perm).leaves():
            a = leaf.activities()
            assert order_activities(n, a.F, perm) == (a.IA, a.EA)


@pytest.mark.parametrize("seed", range(10))
def test_random_partitions_and_expression(seed):
    rng = random.Random(seed)
    n, _ = random_ported(rng, 6, rational=False)
    r0 = rank_poly(n)
    for perm in itertools.permutations(n.nonports):
        tree = build_tree(n, n.ports + perm)
        assert check_partitions(tree) == (True, True)
        assert tutte_expression(tree) == r0


def test_tutte_expression_with_classical_values():
    # at g = r = 1 the leaves give the classical Tutte polynomial of the triangle
    n = PortedExtensor.from_matrix((), ("e1", "e2", "e3"), [[1, 1, 0], [0, 1, 1]], {e: (1, 1) for e in ("e1", "e2", "e3")})
    x, y = Poly.parse("g_x"), Poly.parse("g_y")
    tree = build_tree(n)
    value = tutte_expression(tree, {e: x for e in n.nonports}, {e: y for e in n.nonports})
    assert value == x * x + x + y


@pytest.mark.parametrize("seed", range(10))
def test_flat_expansion(seed):
    rng = random.Random(seed)
    n, _ = random_ported(rng, 6, rational=False)
    assert flat_expansion(n) == rank_poly(n)


def test_flat_expansion_literal_form():
    coloop = PortedExtensor.from_matrix((), ("e1",), [[1]])
    with pytest.raises(LaurentResidue):
        flat_expansion(coloop, literal=True)
    unit = PortedExtensor.from_matrix((), ("e1", "e2", "e3"), [[1, 1, 0], [0, 1, 1]], {e: (Poly.g(e[1:]), 1) for e in ("e1", "e2", "e3")})
    assert flat_expansion(unit, literal=True) == rank_poly(unit)


def test_flats_and_mobius_of_triangle():
    n = PortedExtensor.from_matrix((), ("e1", "e2", "e3"), [[1, 1, 0], [0, 1, 1]])
    lattice = flats(n)
    assert len(lattice) == 5
    mu = mobius(lattice)
    bottom, top = lattice[0], lattice[-1]
    assert mu[(bottom, top)] == 2
    assert all(mu[(bottom, F)] == -1 for F in lattice[1:4])


def test_zero_extensor_rejected():
    z = PortedExtensor(AltTensor.zero(("e1",)), (), ("e1",))
    with pytest.raises(ZeroTensorError):
        build_tree(z)
    with pytest.raises(ZeroTensorError):
        flat_expansion(z)


def test_json_dump():
    tree = build_tree(data.k4_extensor())
    d = json.loads(tree_to_json(tree))
    assert d == tree_to_dict(tree)
    assert d["root"]["element"] == "e4"
    assert tree_to_json(tree) == tree_to_json(build_tree(data.k4_extensor()))
