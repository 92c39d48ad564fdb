"""Resistive networks: parsing, incidence extensors, Laplacians, Maxwell's rule.

Edges are either ports or resistors.  A port ``p`` from ``tail`` to ``head``
carries current ``i_p`` from tail to head and voltage
``v_p = potential(tail) - potential(head)``.

Network file grammar, one statement per line, ``#`` starts a comment::

    vertex a
    edge p1 c a port
    edge e1 a b g=g1 r=1
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import (
    DegenerateDenominator,
    DuplicateEdge,
    EmptyGraph,
    NonUnitR,
    ParseError,
    UnknownVertex,
)
from .exterior import AltTensor, contract, delete_all, dual, from_matrix, matrix_presentation
from .matroid import bracket_key, chirotope
from .ported import PortedExtensor, default_params, iota_name, m_e, m_empty, parse_param, upsilon_name
from .ring import ONE, ZERO, Poly, natural_key, render


@dataclass(frozen=True)
class Edge:
    name: str
    tail: str
    head: str
    port: bool = False
    g: object = None  # Poly, or None for the default symbol
    r: object = None


@dataclass
class Network:
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)

    @property
    def ports(self):
        return [e for e in self.edges if e.port]

    @property
    def resistors(self):
        return [e for e in self.edges if not e.port]

    def edge(self, name):
        for e in self.edges:
            if e.name == name:
                return e
        raise KeyError(name)

    def params(self):
        """``{name: (g, r)}`` for resistors with defaults filled in."""
        names = [e.name for e in self.resistors]
        defaults = default_params(names)
        out = {}
        for e in self.resistors:
            g, r = defaults[e.name]
            out[e.name] = (g if e.g is None else e.g, r if e.r is None else e.r)
        return out

    def with_unit_r(self):
        edges = [e if e.port else Edge(e.name, e.tail, e.head, False, e.g, ONE) for e in self.edges]
        return Network(list(self.vertices), edges)

    def to_text(self):
        lines = [f"vertex {v}" for v in self.vertices]
        for e in self.edges:
            parts = ["edge", e.name, e.tail, e.head]
            if e.port:
                parts.append("port")
            if e.g is not None:
                parts.append("g=" + _param_text(e.g))
            if e.r is not None:
                parts.append("r=" + _param_text(e.r))
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"


def _param_text(p):
    if p.is_constant():
        c = p.constant_value()
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    (var,) = p.variables()
    return var.name


def parse_network(text, strict=False):
    """Read the line grammar above into a :class:`Network`.

    Vertices named only by edges are added in order of first use, unless
    ``strict`` is set, in which case they must be declared first.
    """
    net = Network()
    seen_vertices = set()
    seen_edges = set()

    def use_vertex(v, lineno):
        if v not in seen_vertices:
            if strict:
                raise UnknownVertex(f"undeclared vertex {v!r}", lineno)
            seen_vertices.add(v)
            net.vertices.append(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "vertex":
            if len(toks) != 2:
                raise ParseError("expected 'vertex <name>'", lineno)
            if toks[1] not in seen_vertices:
                seen_vertices.add(toks[1])
                net.vertices.append(toks[1])
            continue
        if toks[0] != "edge":
            raise ParseError(f"unknown statement {toks[0]!r}", lineno)
        if len(toks) < 4:
            raise ParseError("expected 'edge <name> <tail> <head> [port] [g=..] [r=..]'", lineno)
        name, tail, head = toks[1:4]
        if name in seen_edges:
            raise DuplicateEdge(f"edge {name!r} defined twice", lineno)
        port = False
        params = {}
        for tok in toks[4:]:
            if tok == "port":
                port = True
            elif tok == "resistor":
                pass
            elif "=" in tok:
                key, _, value = tok.partition("=")
                if key not in ("g", "r") or key in params or not value:
                    raise ParseError(f"bad parameter {tok!r}", lineno)
                try:
                    params[key] = parse_param(value, key)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            else:
                raise ParseError(f"unexpected token {tok!r}", lineno)
        if port and params:
            raise ParseError("ports take no g/r parameters", lineno)
        use_vertex(tail, lineno)
        use_vertex(head, lineno)
        seen_edges.add(name)
        net.edges.append(Edge(name, tail, head, port, params.get("g"), params.get("r")))
    return net


def _components(vertices, edges):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        parent[find(e.tail)] = find(e.head)
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def incidence_rows(net):
    """Reduced signed incidence rows over ``ports + resistors``.

    The lex-least vertex of each connected component is dropped; the row
    of vertex ``w`` has ``+1`` where ``w`` is a tail and ``-1`` where it is a
    head.  Self-loops give zero columns.
    """
    if not net.edges:
        raise EmptyGraph("network has no edges")
    order = net.ports + net.resistors
    dropped = {min(comp, key=natural_key) for comp in _components(net.vertices, net.edges)}
    rows = []
    for w in net.vertices:
        if w in dropped:
            continue
        row = []
        for e in order:
            if e.tail == e.head:
                row.append(0)
            elif e.tail == w:
                row.append(1)
            elif e.head == w:
                row.append(-1)
            else:
                row.append(0)
        rows.append(row)
    return rows


def incidence_extensor(net):
    rows = incidence_rows(net)
    ports = tuple(e.name for e in net.ports)
    resistors = tuple(e.name for e in net.resistors)
    return PortedExtensor.from_matrix(ports, resistors, rows, net.params())


class Equations(NamedTuple):
    columns: tuple
    K: list
    C: list


def network_equations(net, o=None):
    """Current rows ``K`` (presenting iota(N)) and voltage rows ``C``.

    Columns are ``P_iota + P_upsilon + E``; the wedge of all rows is M(N).
    """
    n = incidence_extensor(net)
    o = n.default_orientation() if o is None else o
    space = n.space
    columns = space.ground + n.nonports
    zeros_p = [ZERO] * len(n.ports)

    def lift(rows, scale_kind, port_first):
        out = []
        for row in rows:
            row = [Poly.const(x) if not isinstance(x, Poly) else x for x in row]
            pvals = row[: len(n.ports)]
            evals = [
                val * (n.g(e) if scale_kind == "g" else n.r(e))
                for val, e in zip(row[len(n.ports):], n.nonports)
            ]
            left = pvals + zeros_p if port_first else zeros_p + pvals
            out.append(left + evals)
        return out

    K = lift(incidence_rows(net), "g", True)
    perp = dual(n.tensor, o)
    C = []
    if not perp.is_zero() and perp.rank:
        rows, _, _ = matrix_presentation(perp.reground(n.ground))
        C = lift(rows, "r", False)
    return Equations(columns, K, C)


@dataclass
class PortConstraint:
    tensor: AltTensor
    matrix: list = None
    numerator: Poly = ONE
    denominator: Poly = ONE

    def to_json(self):
        out = {"coords": self.tensor.to_json()}
        if self.matrix is not None:
            out["matrix"] = [[render(x) for x in row] for row in self.matrix]
            out["columns"] = list(self.tensor.ground)
            out["numerator-scalar"] = render(self.numerator)
            out["denominator-scalar"] = render(self.denominator)
        return out


def port_solution(net, o=None):
    """``M_E`` of the network's incidence extensor, with a matrix if one is cheap.

    The matrix rows satisfy ``tensor * denominator == numerator * wedge(rows)``.
    """
    n = incidence_extensor(net)
    me = m_e(n, o)
    if me.is_zero():
        return PortConstraint(me)
    if me.rank == 0:
        return PortConstraint(me, [], me.coord(()), ONE)
    rows, num, den = matrix_presentation(me)
    return PortConstraint(me, rows, num, den)


def _require_unit_r(net):
    for e in net.resistors:
        if e.r is None or not e.r.is_constant() or e.r.constant_value() != 1:
            raise NonUnitR(f"resistor {e.name} needs r=1 (got {render(e.r) if e.r else 'r' + e.name})")


def laplacian(net, ground_vertex=None, unit_r=False):
    """Weighted Laplacian ``L(g, 1)`` with the grounded vertex's row and column removed.

    Ports are ignored.  ``unit_r`` treats every resistance as 1 instead of
    checking that it is.
    """
    if not unit_r:
        _require_unit_r(net)
    params = net.params()
    verts = list(net.vertices)
    if ground_vertex is not None:
        verts = [v for v in verts if v != ground_vertex]
    idx = {v: i for i, v in enumerate(verts)}
    L = [[ZERO] * len(verts) for _ in verts]
    for e in net.resistors:
        if e.tail == e.head:
            continue
        g = params[e.name][0]
        a, b = idx.get(e.tail), idx.get(e.head)
        if a is not None:
            L[a][a] = L[a][a] + g
        if b is not None:
            L[b][b] = L[b][b] + g
        if a is not None and b is not None:
            L[a][b] = L[a][b] - g
            L[b][a] = L[b][a] - g
    return L


def det(matrix):
    """Determinant by memoized cofactor expansion along rows."""
    n = len(matrix)
    if n == 0:
        return ONE
    rows = [[x if isinstance(x, Poly) else Poly.const(x) for x in row] for row in matrix]

    @lru_cache(maxsize=None)
    def minor(i, cols):
        if i == n:
            return ONE
        total = ZERO
        for k, j in enumerate(cols):
            a = rows[i][j]
            if not a:
                continue
            sub = minor(i + 1, cols[:k] + cols[k + 1:])
            total = total + (a * sub if k % 2 == 0 else -(a * sub))
        return total

    return minor(0, tuple(range(n)))


def _is_forest(vertices, edges, components):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        a, b = find(e.tail), find(e.head)
        if a == b:
            return None
        parent[a] = b
    roots = {find(v) for v in vertices}
    return find if len(roots) == components else None


def _weight(params, F, resistors):
    w = ONE
    chosen = {e.name for e in F}
    for e in resistors:
        g, r = params[e.name]
        w = w * (g if e.name in chosen else r)
    return w


def spanning_tree_enumerator(net, with_r=False):
    """``sum_T g_T`` (times ``r`` of the complement when ``with_r``) by brute force."""
    params = net.params()
    res = net.resistors
    total = ZERO
    for T in itertools.combinations(res, len(net.vertices) - 1):
        if _is_forest(net.vertices, T, 1):
            total = total + (_weight(params, T, res) if with_r else _g_only(params, T))
    return total


def _g_only(params, F):
    w = ONE
    for e in F:
        w = w * params[e.name][0]
    return w


def two_forest_enumerator(net, together, apart, with_r=False):
    """``sum g_F`` over two-tree spanning forests separating two vertex pairs.

    ``together = (i, k)`` share one tree and ``apart = (j, l)`` share the other.
    """
    params = net.params()
    res = net.resistors
    i, k = together
    j, l = apart
    total = ZERO
    for F in itertools.combinations(res, len(net.vertices) - 2):
        find = _is_forest(net.vertices, F, 2)
        if not find:
            continue
        if find(i) == find(k) and find(j) == find(l) and find(i) != find(j):
            total = total + (_weight(params, F, res) if with_r else _g_only(params, F))
    return total


def matrix_tree_check(net, ground_vertex=None):
    """``det`` of the reduced Laplacian against the brute-force tree sum."""
    if ground_vertex is None:
        ground_vertex = min(net.vertices, key=natural_key)
    return det(laplacian(net, ground_vertex)) == spanning_tree_enumerator(net)


def star_network(net, hub="0"):
    """Resistors of ``net`` plus a hub vertex and ports ``hub -> v`` for each vertex."""
    while hub in net.vertices:
        hub = hub + "'"
    taken = {e.name for e in net.resistors}
    edges = []
    for k, v in enumerate(net.vertices, start=1):
        name = f"p{k}"
        if name in taken:
            raise DuplicateEdge(f"port name {name!r} clashes with a resistor")
        edges.append(Edge(name, hub, v, True))
    edges.extend(net.resistors)
    return Network([hub] + list(net.vertices), edges)


def _proportional(a, b):
    """Exact test that coordinate maps ``a`` and ``b`` differ by one nonzero factor."""
    keys = sorted(set(a) | set(b))
    pivot = next((k for k in keys if a.get(k) and b.get(k)), None)
    if pivot is None:
        return False
    for k in keys:
        if a.get(k, ZERO) * b[pivot] != b.get(k, ZERO) * a[pivot]:
            return False
    return True


def id_laplacian_presentation_check(net):
    """Maximal minors of ``[I_n  L]`` are proportional to ``M_E`` of the star network.

    Columns are ``(i_1..i_n, v_1..v_n)`` for the hub ports in vertex order.
    """
    _require_unit_r(net)
    star = star_network(net)
    n = len(net.vertices)
    L = laplacian(net, None)
    rows = [[ONE if i == j else ZERO for j in range(n)] + L[i] for i in range(n)]
    me = m_e(incidence_extensor(star))
    ports = [e.name for e in star.ports]
    columns = tuple(iota_name(p) for p in ports) + tuple(upsilon_name(p) for p in ports)
    pres = from_matrix(rows, columns)
    a = {k: v for k, v in pres.items()}
    b = {k: me.reground(columns).coord(k) for k in me.reground(columns).keys()}
    return _proportional(a, b)


class Maxwell(NamedTuple):
    numerator: Poly
    denominator: Poly
    forest_numerator: Poly
    forest_denominator: Poly

    @property
    def agree(self):
        return self.numerator * self.forest_denominator == self.forest_numerator * self.denominator


def maxwell_rho21(net, p1=None, p2=None, o=None):
    """Transfer resistance ``rho21 = -v2 / i1`` at ``i2 = 0``, computed twice.

    From the extensor, ``rho21 = M[v1 i1] / M[v1 v2]``.  From forests, it is
    the difference of the ``B_{ac,bd}`` and ``B_{ad,bc}`` sums over the tree
    sum, weighted by ``g_F r_(E-F)`` so that symbolic ``r`` is allowed.
    """
    ports = net.ports
    if p1 is None and p2 is None:
        if len(ports) != 2:
            raise ValueError("maxwell_rho21 needs exactly two ports")
        p1, p2 = ports[0].name, ports[1].name
    e1, e2 = net.edge(p1), net.edge(p2)
    if not (e1.port and e2.port) or p1 == p2:
        raise ValueError("p1 and p2 must be two distinct ports")
    others = [e for e in ports if e.name not in (p1, p2)]
    if others:
        raise ValueError("the network may only have the two given ports")
    n = incidence_extensor(net)
    me = m_e(n, o)
    v1, i1, v2 = upsilon_name(p1), iota_name(p1), upsilon_name(p2)
    num = me.coord((v1, i1))
    den = me.coord((v1, v2))
    if not den:
        raise DegenerateDenominator("no spanning tree: M[v1 v2] = 0")
    a, b, c, d = e1.tail, e1.head, e2.tail, e2.head
    fnum = two_forest_enumerator(net, (a, c), (b, d), True) - two_forest_enumerator(net, (a, d), (b, c), True)
    fden = spanning_tree_enumerator(net, True)
    if not fden:
        raise DegenerateDenominator("no spanning tree")
    return Maxwell(num, den, fnum, fden)


class Contribution(NamedTuple):
    subset: tuple
    key: tuple
    sign: int
    weight: Poly

    @property
    def value(self):
        return self.weight if self.sign > 0 else -self.weight


def signed_forest_contributions(net_or_ported, coord, o=None):
    """Per-subset terms ``A`` whose sum is ``M_E[coord]``.

    Each term is ``eps(PE) eps(P) M_0(N/A minus the rest)[coord] g_A r_Abar``;
    the sign comes from the oriented matroid of the port-only minor.
    """
    n = net_or_ported if isinstance(net_or_ported, PortedExtensor) else incidence_extensor(net_or_ported)
    o = n.default_orientation() if o is None else o
    P, E = n.ports, n.nonports
    prefactor = o.eps(P + E) * o.eps(P)
    coord = tuple(coord)
    out = []
    for size in range(len(E) + 1):
        for A in itertools.combinations(E, size):
            minor = contract(n.tensor, A)
            minor = delete_all(minor, [e for e in E if e not in A])
            if minor.is_zero():
                continue
            value = m_empty(PortedExtensor(minor, P, ()), o).coord(coord)
            if not value:
                continue
            c = value.constant_value() * prefactor
            weight = ONE
            for e in E:
                weight = weight * (n.g(e) if e in A else n.r(e))
            out.append(Contribution(A, bracket_key(chirotope(minor)), 1 if c > 0 else -1, weight * abs(c)))
    return out


__all__ = [
    "Edge",
    "Network",
    "parse_network",
    "incidence_rows",
    "incidence_extensor",
    "Equations",
    "network_equations",
    "PortConstraint",
    "port_solution",
    "laplacian",
    "det",
    "spanning_tree_enumerator",
    "two_forest_enumerator",
    "matrix_tree_check",
    "star_network",
    "id_laplacian_presentation_check",
    "Maxwell",
    "maxwell_rho21",
    "Contribution",
    "signed_forest_contributions",
]
