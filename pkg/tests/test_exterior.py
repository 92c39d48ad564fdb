from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from extutte import suites
from extutte.errors import (
    DuplicateElement,
    GroundSetMismatch,
    GroundSetOverlap,
    RankMismatch,
    UnknownElement,
    ZeroTensorError,
)
from extutte.exterior import (
    AltTensor,
    Orientation,
    add,
    contract,
    delete,
    dual,
    from_matrix,
    gp_check,
    loops_and_coloops,
    matrix_presentation,
    product,
    rational_rows,
    wedge,
)
from extutte.ring import Poly

from strategies import extensors, matrices, orientations, sympy_minors


@given(matrices())
def test_coordinates_match_sympy(m):
    ground = tuple(f"s{i}" for i in range(1, (len(m[0]) if m else 3) + 1))
    t = from_matrix(m, ground)
    expected = sympy_minors(m, ground)
    assert {k: t.coord(k).constant_value() for k in t.support()} == expected


def test_coord_is_alternating():
    t = from_matrix([[1, 2, 0], [0, 1, 3]], ("a", "b", "c"))
    assert t.coord(("a", "b")) == Poly.const(1)
    assert t.coord(("b", "a")) == Poly.const(-1)
    assert t.coord(("a", "a")) == Poly.const(0)
    with pytest.raises(UnknownElement):
        t.coord(("a", "z"))


def test_small_worked_minors():
    t = from_matrix([[1, 2, 0], [0, 1, 3]], ("a", "b", "c"))
    assert t == AltTensor(("a", "b", "c"), {("a", "b"): 1, ("a", "c"): 3, ("b", "c"): 6})
    assert dual(t, Orientation(("a", "b", "c"))) == AltTensor(("a", "b", "c"), {("a",): 6, ("b",): -3, ("c",): 1})
    assert contract(t, ("a",)) == AltTensor(("b", "c"), {("b",): -1, ("c",): -3})
    assert delete(t, "c") == AltTensor(("a", "b"), {("a", "b"): 1})


def test_contract_definition():
    t = from_matrix([[1, 0, 2, 1], [0, 1, 1, -1]], ("a", "b", "c", "d"))
    x = contract(t, ("c", "a"))
    for k in [("b",), ("d",)]:
        assert x.coord(k) == t.coord(k + ("c", "a"))
    with pytest.raises(DuplicateElement):
        contract(t, ("a", "a"))


@given(extensors(max_cols=5), extensors(max_cols=5))
@settings(max_examples=60)
def test_anticommutation(x, y):
    assume(x.ground == y.ground)
    assert suites.anticommutes(x, y)


@given(st.data())
@settings(max_examples=60)
def test_duality_identities(data):
    x = data.draw(extensors(max_cols=6))
    o = data.draw(orientations(x.ground))
    assert suites.perp_perp(x, o)
    X = tuple(data.draw(st.lists(st.sampled_from(x.ground), unique=True, max_size=3)))
    assert suites.delete_perp(x, o, X)
    assert suites.contract_perp(x, o, X)
    assert suites.orthogonal(x, o)


@given(st.data())
@settings(max_examples=40)
def test_product_perp(data):
    x = data.draw(extensors(max_cols=3, prefix="a"))
    y = data.draw(extensors(max_cols=3, prefix="b"))
    o = data.draw(orientations(x.ground + y.ground))
    assert suites.prod_perp(x, y, o)


@given(extensors(max_cols=5), st.data())
@settings(max_examples=60)
def test_expansion_along_element(x, data):
    e = data.draw(st.sampled_from(x.ground))
    assert suites.ext_decomposition(x, e)


@given(extensors(max_cols=6))
@settings(max_examples=60)
def test_wedges_of_vectors_are_decomposable(x):
    assert gp_check(x)


def test_gp_detects_indecomposable():
    ground = ("a", "b", "c", "d")
    t = AltTensor(ground, {("a", "b"): 1, ("c", "d"): 1})
    assert not gp_check(t)


@given(extensors(max_cols=6))
@settings(max_examples=60)
def test_matrix_presentation_roundtrip(x):
    assume(not x.is_zero())
    assert from_matrix(rational_rows(x), x.ground) == x


def test_symbolic_presentation():
    g = Poly.g("1")
    t = from_matrix([[g, 1, 0], [0, 1, g]], ("a", "b", "c"))
    rows, num, den = matrix_presentation(t)
    assert from_matrix(rows, t.ground).scale(num) == t.scale(den)


def test_loops_and_coloops():
    t = from_matrix([[1, 0, 0, 1], [0, 0, 1, 0]], ("a", "b", "c", "d"))
    assert loops_and_coloops(t) == ({"b"}, {"c"})
    with pytest.raises(ZeroTensorError):
        loops_and_coloops(AltTensor.zero(("a",)))


def test_errors():
    x = AltTensor.vector(("a", "b"), [1, 2])
    y = AltTensor.vector(("a", "c"), [1, 2])
    with pytest.raises(GroundSetMismatch):
        wedge(x, y)
    with pytest.raises(RankMismatch):
        add(x, AltTensor.scalar(("a", "b"), 1))
    with pytest.raises(GroundSetOverlap):
        product(x, y)
    with pytest.raises(DuplicateElement):
        Orientation(("a", "a"))
    with pytest.raises(GroundSetMismatch):
        dual(x, Orientation(("a",)))


def test_orientation_signs():
    o = Orientation(("a", "b", "c"))
    assert o.eps(("a", "b", "c")) == 1
    assert o.eps(("b", "a", "c")) == -1
    assert o.eps(("c", "a", "b")) == 1
    assert o.flipped().eps(("a", "b", "c")) == -1


def test_json_roundtrip():
    t = from_matrix([[1, Fraction(1, 2), 0], [0, 1, Poly.g("1")]], ("a", "b", "c"))
    assert AltTensor.from_json(t.to_json()) == t


def test_reground():
    t = from_matrix([[1, 2, 3]], ("a", "b", "c"))
    u = t.reground(("c", "a", "b"))
    assert u == t
    assert u.coord(("c",)) == Poly.const(3)
