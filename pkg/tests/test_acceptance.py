"""Acceptance criteria 1-10, each recorded as one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` to print them directly.
"""

import io
import itertools
import time

import pytest

from acceptance_report import record
from extutte import cli, data, suites
from extutte.activities import build_tree, check_partitions, flat_expansion, tutte_expression
from extutte.circuits import id_laplacian_presentation_check, maxwell_rho21, parse_network
from extutte.matroid import rank_poly, verify_substitution
from extutte.ported import m_e, m_empty, subset_expansion
from extutte.ring import ONE, Poly, render

SEED = 20261016


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def _run(kind, count, max_size, seed=SEED):
    res, seconds = _timed(lambda: suites.SUITES[kind](count=count, seed=seed, max_size=max_size))
    assert res.instances >= count
    return res, seconds


def test_criterion_1_k4_coordinates():
    out = io.StringIO()
    status, seconds = _timed(lambda: cli.main(["k4-demo"], out=out))
    text = out.getvalue()
    me = m_e(data.k4_extensor(), data.k4_orientation())
    exact = all(render(me.coord(k)) == v for k, v in data.K4_COORDS.items())
    shown = all(f"[{' '.join(k)}] = {v}" in text for k, v in data.K4_COORDS.items())
    g, r = Poly.g, Poly.r
    factored = (g("1") * r("3") + g("3") * r("1")) * (g("2") * r("4") + g("4") * r("2"))
    ok = status == 0 and exact and shown and me.coord(("i1", "v2", "v3")) == factored and seconds < 1
    record(1, ok, "K4 Pluecker coordinates [v1v2v3], [i1v2v3], [v1i1v3] exact via k4-demo", seconds)
    assert ok


def _two_port_values():
    values = {}
    for name, rows, printed in data.TWO_PORT_TABLE:
        value = m_empty(data.two_port_extensor(rows), None)
        values[name] = (value, printed)
    return values


def _matches(value, printed):
    keys = set(value.support()) | set(printed)
    return all(value.coord(k) == printed.get(k, 0) for k in keys)


def test_criterion_2_two_port_table():
    values, seconds = _timed(_two_port_values)
    matched = [name for name, (value, printed) in values.items() if _matches(value, printed)]
    value, printed = values[data.TWO_PORT_MISPRINT]
    negated = {k: -c for k, c in printed.items()}
    # every row except the known one matches exactly, and that one is off by a sign only
    assert set(matched) == set(values) - {data.TWO_PORT_MISPRINT}
    assert _matches(value, negated)
    assert {"N1-", "N1+"} <= set(matched)
    assert seconds < 1
    ok = len(matched) == len(values)
    record(
        2,
        ok,
        f"two-port M_0 table: {len(matched)}/6 rows exact (N1+/N1- signs included); "
        f"row {data.TWO_PORT_MISPRINT} printed +i2v1, the definition gives -i2v1",
        seconds,
    )


@pytest.mark.xfail(strict=True, reason="printed sign of one two-port table row contradicts the M_0 definition")
def test_criterion_2_literal_row():
    value, printed = _two_port_values()[data.TWO_PORT_MISPRINT]
    assert _matches(value, printed)


def test_criterion_3_sum_and_product():
    s, t1 = _run("sum", 200, 7)
    p, t2 = _run("product", 200, 7)
    ok = s.ok and p.ok and t1 + t2 < 60
    record(3, ok, f"sum rule {s.instances} + product rule {p.instances} random extensors, |S|<=7, rational", t1 + t2)
    assert ok, (s.failures + p.failures)[:1]


def test_criterion_4_duality_identities():
    res, seconds = _run("identities", 200, 7)
    ok = res.ok and seconds < 60
    record(4, ok, f"PerpPerp/DeletePerp/ContractPerp/ProdPerp on {res.instances} random extensors", seconds)
    assert ok, res.failures[:1]


def test_criterion_5_oracle():
    def k4_all():
        n, o = data.k4_extensor(), data.k4_orientation()
        return m_e(n, o) == subset_expansion(n, o)

    k4_ok, t0 = _timed(k4_all)
    res, seconds = _run("oracle", 100, 8)
    ok = k4_ok and res.ok and t0 + seconds < 60
    record(5, ok, f"m_e == subset_expansion on all K4 coordinates and {res.instances} random, |P|+|E|<=8", t0 + seconds)
    assert ok, res.failures[:1]


def test_criterion_6_substitution():
    k4_ok = verify_substitution(data.k4_extensor(), data.k4_orientation())
    res, seconds = _run("substitution", 50, 7)
    ok = k4_ok and res.ok
    record(6, ok, f"extensor substitution into R equals m_e on K4 and {res.instances} unimodular instances", seconds)
    assert ok, res.failures[:1]


def test_criterion_7_matrix_tree():
    tri = parse_network("edge e1 a b r=1\nedge e2 b c r=1\nedge e3 c a r=1\n")
    k4 = parse_network(data.K4_NET)
    k4 = type(k4)(k4.vertices, k4.resistors).with_unit_r()
    il_ok = id_laplacian_presentation_check(tri) and id_laplacian_presentation_check(k4)
    res, seconds = _run("matrixtree", 50, 6)
    ok = il_ok and res.ok
    record(7, ok, f"det(reduced Laplacian) == tree sum on {res.instances} graphs; [I L] on triangle and K4", seconds)
    assert ok, res.failures[:1]


def test_criterion_8_maxwell():
    g1, g2 = Poly.g("1"), Poly.g("2")
    series = maxwell_rho21(parse_network("edge p1 a c port\nedge p2 a c port\nedge e1 a b r=1\nedge e2 b c r=1\n"))
    parallel = maxwell_rho21(parse_network("edge p1 a b port\nedge p2 a b port\nedge e1 a b r=1\nedge e2 a b r=1\n"))
    closed = (
        series.agree
        and parallel.agree
        and series.numerator * (g1 * g2) == (g1 + g2) * series.denominator
        and parallel.numerator * (g1 + g2) == ONE * parallel.denominator
    )
    res, seconds = _run("maxwell", 50, 6)
    ok = closed and res.ok
    record(8, ok, f"rho21 extensor ratio == signed forests on {res.instances} two-ports; series and parallel closed forms", seconds)
    assert ok, res.failures[:1]


def test_criterion_9_activities():
    def k4_orders():
        n = data.k4_extensor()
        r0 = rank_poly(n)
        good = True
        for perm in itertools.permutations(n.nonports):
            tree = build_tree(n, n.ports + perm)
            good = good and check_partitions(tree) == (True, True) and tutte_expression(tree) == r0
        return good and flat_expansion(n) == r0

    k4_ok, t0 = _timed(k4_orders)
    acts, t1 = _run("activities", 30, 4)
    fl, t2 = _run("flats", 30, 5)
    ok = k4_ok and acts.ok and fl.ok
    record(
        9,
        ok,
        f"interval partitions tile and Tutte expression == R for every order ({acts.instances} instances |E|<=4 + K4); "
        f"flat expansion == R ({fl.instances} instances |E|<=5)",
        t0 + t1 + t2,
    )
    assert ok, (acts.failures + fl.failures)[:1]


def test_criterion_10_homogeneity_and_signs():
    res, seconds = _run("homogeneity", 100, 7)
    ok = res.ok
    record(10, ok, f"square-free degrees, N -> -N invariance, eps flip and E reorder on {res.instances} instances", seconds)
    assert ok, res.failures[:1]


if __name__ == "__main__":
    checks = [
        (int(name.split("_")[2]), fn)
        for name, fn in globals().items()
        if name.startswith("test_criterion_") and not name.endswith("literal_row")
    ]
    for _, fn in sorted(checks, key=lambda c: c[0]):
        try:
            fn()
        except AssertionError:
            pass
