import itertools
import random

import pytest
import sympy

from extutte import data
from extutte.errors import NonUnimodularKey, SymbolicCoordinates, ZeroTensorError
from extutte.exterior import AltTensor, Orientation, from_matrix, rational_rows
from extutte.matroid import (
    bracket_key,
    chirotope,
    classical_corank_nullity,
    closure,
    connected_components,
    is_separator,
    is_unimodular,
    key_extensor,
    normalize_unimodular,
    parse_component_key,
    port_minor,
    rank_poly,
    subset_rank,
    verify_rank_poly_tutte,
    verify_substitution,
)
from extutte.ported import PortedExtensor
from extutte.ring import U_VAR, V_VAR, Poly, render
from extutte.suites import random_graphic_ported, random_ported
from extutte.circuits import incidence_extensor


def _sympy_rank(rows, cols):
    if not rows:
        return 0
    return sympy.Matrix([[row[c] for c in cols] for row in rows]).rank()


def _corank_nullity_oracle(n):
    """Classical sum over subsets with ranks computed by sympy."""
    rows = rational_rows(n.tensor)
    E = n.nonports
    idx = {e: j for j, e in enumerate(n.tensor.ground)}
    full = _sympy_rank(rows, list(range(len(E))))
    u, v = Poly.var(U_VAR), Poly.var(V_VAR)
    total = Poly()
    for size in range(len(E) + 1):
        for A in itertools.combinations(E, size):
            rk = _sympy_rank(rows, [idx[e] for e in A])
            term = u ** (full - rk) * v ** (size - rk)
            for e in E:
                term = term * (n.g(e) if e in A else n.r(e))
            total = total + term
    return total


@pytest.mark.parametrize("seed", range(25))
def test_portless_rank_poly_matches_sympy_ranks(seed):
    rng = random.Random(seed)
    n, _ = random_ported(rng, 6, rational=False)
    n = PortedExtensor(n.tensor, (), n.ports + n.nonports)
    assert rank_poly(n) == classical_corank_nullity(n) == _corank_nullity_oracle(n)


def test_triangle_tutte():
    n = PortedExtensor.from_matrix((), ("e1", "e2", "e3"), [[1, 1, 0], [0, 1, 1]])
    expected = Poly.parse("r1 r2 r3 u^2 + g1 g2 g3 v + g1 r2 r3 u + g2 r1 r3 u + g3 r1 r2 u + g1 g2 r3 + g1 g3 r2 + g2 g3 r1")
    assert rank_poly(n) == expected


def test_one_port_brackets():
    n = PortedExtensor.from_matrix(("p1",), ("e1",), [[1, 1]])
    assert render(rank_poly(n)) == "1 g1 [ports=p1;signs=:+] + 1 r1 [ports=p1;signs=p1:+]"


def test_bracket_key_sign_normalized():
    c = chirotope(from_matrix([[1, -1]], ("p1", "p2")))
    assert bracket_key(c) == ("ports=p1,p2;signs=p1:+,p2:-",)
    assert bracket_key(c.negated()) == bracket_key(c)
    two = chirotope(from_matrix([[1, 0], [0, 1]], ("p1", "p2")))
    assert bracket_key(two) == ("ports=p1;signs=p1:+", "ports=p2;signs=p2:+")


def test_key_parsing_and_extensors():
    key = "ports=p1,p2;signs=p1:+,p2:-"
    assert parse_component_key(key) == (("p1", "p2"), 1, {("p1",): 1, ("p2",): -1})
    assert key_extensor(key) == from_matrix([[1, -1]], ("p1", "p2"))
    assert key_extensor("ports=p1;signs=:+") == AltTensor.scalar(("p1",), 1)


def test_non_unimodular_key_rejected():
    with pytest.raises(NonUnimodularKey):
        key_extensor("ports=p1,p2,p3,p4;signs=p1.p2:+,p3.p4:+")


def test_chirotope_and_errors():
    k = data.k4_extensor()
    c = chirotope(k.tensor)
    assert c.rank == 3
    assert len(c.bases()) == 24
    assert c(("p1", "p2", "e1")) == -c(("p2", "p1", "e1"))
    assert chirotope(c.to_tensor()).bases() == c.bases()
    with pytest.raises(ZeroTensorError):
        chirotope(AltTensor.zero(("a",)))
    with pytest.raises(SymbolicCoordinates):
        chirotope(from_matrix([[Poly.g("1"), 1]], ("a", "b")))


def test_rank_and_closure():
    t = data.k4_extensor().tensor
    assert subset_rank(t, ("e1", "e2")) == 2
    assert closure(t, ("e1", "e3")) == {"e1", "e3", "p1", "p3"}


def test_unimodular_scale():
    k = data.k4_extensor()
    assert is_unimodular(k.tensor)
    assert not is_unimodular(from_matrix([[1, 2]], ("a", "b")))
    normalized, c = normalize_unimodular(k.scaled(-3))
    assert c == 3
    assert normalized.tensor == k.scaled(-1).tensor


def test_components():
    t = from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]], ("a", "b", "c", "d"))
    comps = connected_components(chirotope(t))
    assert sorted(map(sorted, comps)) == [["a", "b"], ["c", "d"]]


def test_port_minor():
    k = data.k4_extensor()
    assert port_minor(k, ("e1",)) == AltTensor(("p1", "p2", "p3"), {("p1", "p2"): 1})


def test_tutte_recursion_on_k4():
    k = data.k4_extensor()
    for e in k.nonports:
        assert not is_separator(k.tensor, e)
        assert verify_rank_poly_tutte(k, e)


@pytest.mark.parametrize("seed", range(15))
def test_substitution_on_graphs(seed):
    rng = random.Random(seed)
    net = random_graphic_ported(rng, 5, 6)
    if not net.edges:
        return
    n = incidence_extensor(net)
    if n.is_zero():
        return
    ref = list(n.ground)
    rng.shuffle(ref)
    assert verify_substitution(n, Orientation(ref))


def test_substitution_on_k4():
    assert verify_substitution(data.k4_extensor(), data.k4_orientation())
    assert verify_substitution(data.k4_extensor().scaled(-2), data.k4_orientation())


def test_rank_poly_at_origin_counts_bases():
    k = data.k4_extensor()
    n = PortedExtensor(k.tensor, (), k.ground)
    r0 = rank_poly(n)
    ones = {v: 1 for v in r0.variables()}
    ones.update({U_VAR: 0, V_VAR: 0})
    assert r0.eval(ones) == len(chirotope(k.tensor).bases()) == 24


def test_k4_chirotope_signs_are_determinants():
    c = chirotope(data.k4_extensor().tensor)
    assert c(("p1", "p2", "p3")) == 1
    cols = [data.K4_GROUND.index(e) for e in ("p1", "p2", "e1")]
    d = sympy.Matrix([[row[j] for j in cols] for row in data.K4_N]).det()
    assert c(("p1", "p2", "e1")) == sympy.sign(d)
