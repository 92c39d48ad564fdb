"""Seeded random instances and the property suites run by ``verify``.

Each suite returns a :class:`SuiteResult`; a failing case records a short
text description of the input so it can be reproduced.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .activities import build_tree, check_partitions, flat_expansion, tutte_expression
from .circuits import (
    Edge,
    Network,
    det,
    id_laplacian_presentation_check,
    incidence_extensor,
    laplacian,
    maxwell_rho21,
    parse_network,
    spanning_tree_enumerator,
)
from .data import K4_NET, k4_extensor, k4_orientation
from .exterior import (
    AltTensor,
    Orientation,
    add,
    contract,
    delete,
    delete_all,
    dual,
    from_matrix,
    product,
    rational_rows,
    wedge,
)
from .matroid import (
    classical_corank_nullity,
    is_separator,
    rank_poly,
    verify_rank_poly_tutte,
    verify_substitution,
)
from .ported import (
    PortedExtensor,
    basis_enumerator_coords,
    m_e,
    subset_expansion,
    verify_product_rule,
    verify_sum_rule,
)
from .ring import G, R, ONE, Poly, natural_key


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, passed, describe):
        self.cases += 1
        if not passed:
            self.failures.append(describe() if callable(describe) else describe)

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status} ({self.instances} instances, {self.cases} checks, {len(self.failures)} failures)"


# ---------------------------------------------------------------- generators

def random_matrix(rng, rows, cols, lo=-2, hi=2, rational=False):
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            x = Fraction(rng.randint(lo, hi))
            if rational and rng.random() < 0.2:
                x = x / rng.randint(2, 3)
            row.append(x)
        out.append(row)
    return out


def random_extensor(rng, ground, rank=None, rational=True):
    """A nonzero extensor of the given rank (random if None) over ``ground``."""
    ground = tuple(ground)
    rank = rng.randint(0, len(ground)) if rank is None else rank
    for _ in range(50):
        t = from_matrix(random_matrix(rng, rank, len(ground), rational=rational), ground)
        if not t.is_zero():
            return t
    rows = [[1 if j == i else 0 for j in range(len(ground))] for i in range(rank)]
    return from_matrix(rows, ground)


def random_ported(rng, max_size=7, min_size=1, shuffle=True, prefix=("p", "e"), rational=True):
    """Random ported extensor; P and E are shuffled when ``shuffle``.

    Returns ``(n, orientation)`` with a reference order independent of the
    declared P and E orders.
    """
    size = rng.randint(min_size, max_size)
    k = rng.randint(0, min(3, size))
    ports = [f"{prefix[0]}{i}" for i in range(1, k + 1)]
    nonports = [f"{prefix[1]}{i}" for i in range(1, size - k + 1)]
    ground = ports + nonports
    t = random_extensor(rng, ground, rational=rational)
    if shuffle:
        rng.shuffle(ports)
        rng.shuffle(nonports)
    reference = list(ground)
    if shuffle:
        rng.shuffle(reference)
    n = PortedExtensor(t, tuple(ports), tuple(nonports))
    return n, Orientation(reference)


def random_graph(rng, max_vertices=6, max_edges=9, min_vertices=2, connected=True, unit_r=False, prefix="e"):
    """Random multigraph; a random spanning tree first when ``connected``."""
    nv = rng.randint(min_vertices, max_vertices)
    verts = [f"v{i}" for i in range(1, nv + 1)]
    pairs = []
    if connected:
        for i in range(1, nv):
            pairs.append((verts[i], verts[rng.randrange(i)]))
    extra = rng.randint(0, max(0, max_edges - len(pairs)))
    for _ in range(extra):
        pairs.append((rng.choice(verts), rng.choice(verts)))
    rng.shuffle(pairs)
    edges = []
    for k, (a, b) in enumerate(pairs, start=1):
        if rng.random() < 0.5:
            a, b = b, a
        edges.append(Edge(f"{prefix}{k}", a, b, False, None, ONE if unit_r else None))
    return Network(verts, edges)


def random_two_port(rng, max_vertices=6, max_edges=8, unit_r=False):
    net = random_graph(rng, max_vertices, max_edges, min_vertices=2, unit_r=unit_r)
    ports = []
    for name in ("p1", "p2"):
        a, b = rng.sample(net.vertices, 2)
        ports.append(Edge(name, a, b, True))
    return Network(net.vertices, ports + net.edges)


def random_graphic_ported(rng, max_vertices=5, max_edges=6, max_ports=3):
    """A graph with some edges turned into ports; presents a unimodular matroid."""
    net = random_graph(rng, max_vertices, max_edges, connected=rng.random() < 0.8)
    k = rng.randint(0, min(max_ports, len(net.edges)))
    chosen = set(rng.sample(range(len(net.edges)), k))
    edges = []
    pi = ei = 0
    for i, e in enumerate(net.edges):
        if i in chosen:
            pi += 1
            edges.append(Edge(f"p{pi}", e.tail, e.head, True))
        else:
            ei += 1
            edges.append(Edge(f"e{ei}", e.tail, e.head, False))
    return Network(net.vertices, edges)


def describe_ported(n, o=None):
    rows = rational_rows(n.tensor) if not n.is_zero() else "zero"
    ref = o.reference if o is not None else n.ground
    return f"ports={list(n.ports)} nonports={list(n.nonports)} ground={list(n.tensor.ground)} rows={rows!r} reference={list(ref)}"


def describe_network(net):
    return net.to_text().replace("\n", "; ")


# ---------------------------------------------------------------- suites

def suite_sum(count=100, seed=0, max_size=7):
    rng = random.Random(seed)
    res = SuiteResult("sum")
    res.check(all(verify_sum_rule(k4_extensor(), e, k4_orientation()) for e in k4_extensor().nonports), "K4")
    while res.instances < count:
        n, o = random_ported(rng, max_size)
        if not n.nonports:
            continue
        e = rng.choice(n.nonports)
        res.instances += 1
        res.check(verify_sum_rule(n, e, o), lambda: f"e={e} " + describe_ported(n, o))
    return res


def suite_product(count=100, seed=0, max_size=7):
    rng = random.Random(seed)
    res = SuiteResult("product")
    while res.instances < count:
        n1, _ = random_ported(rng, max(1, max_size // 2), prefix=("p", "e"))
        n2, _ = random_ported(rng, max(1, max_size - len(n1.ground)), prefix=("q", "f"))
        if len(n1.ground) + len(n2.ground) > max_size:
            continue
        reference = list(n1.ground + n2.ground)
        rng.shuffle(reference)
        o = Orientation(reference)
        E = list(n1.nonports + n2.nonports)
        if rng.random() < 0.5:
            rng.shuffle(E)
        if rng.random() < 0.1:
            n1 = n1.replace(tensor=AltTensor.zero(n1.tensor.ground))
        res.instances += 1
        res.check(
            verify_product_rule(n1, n2, o, E),
            lambda: f"E={E} | " + describe_ported(n1, o) + " | " + describe_ported(n2, o),
        )
    return res


def _restrict(o, elements):
    keep = set(elements)
    return Orientation([s for s in o.reference if s in keep], o.flip)


def _ordered(o, elements):
    keep = set(elements)
    return tuple(s for s in o.reference if s in keep)


def perp_perp(x, o):
    rho = 0 if x.is_zero() else x.rank
    sign = -1 if (rho * (len(x.ground) - rho)) % 2 else 1
    return dual(dual(x, o), o) == x.scale(sign)


def delete_perp(x, o, X):
    """``(x minus X)^perp = eps(S') eps(S'X) (x^perp / X)``."""
    S1 = _ordered(o, [s for s in x.ground if s not in set(X)])
    o1 = _restrict(o, S1)
    lhs = dual(delete_all(x, X), o1)
    rhs = contract(dual(x, o), X).scale(o.eps(S1) * o.eps(S1 + tuple(X)))
    return lhs == rhs


def contract_perp(x, o, X):
    """``(x / X)^perp = eps(S') eps(S'X) (-1)^(|X|(|S|-rho)) (x^perp minus X)``."""
    S1 = _ordered(o, [s for s in x.ground if s not in set(X)])
    o1 = _restrict(o, S1)
    lhs = dual(contract(x, X), o1)
    rho = 0 if x.is_zero() else x.rank
    sign = o.eps(S1) * o.eps(S1 + tuple(X))
    if (len(X) * (len(x.ground) - rho)) % 2:
        sign = -sign
    rhs = delete_all(dual(x, o), X).scale(sign)
    return lhs == rhs


def prod_perp(x, y, o):
    """``(xy)^perp = eps(S1) eps(S2) eps(S1 S2) (-1)^(rho(x^perp) rho(y)) x^perp y^perp``."""
    S1, S2 = _ordered(o, x.ground), _ordered(o, y.ground)
    lhs = dual(product(x, y), o)
    xp, yp = dual(x, _restrict(o, S1)), dual(y, _restrict(o, S2))
    sign = o.eps(S1) * o.eps(S2) * o.eps(S1 + S2)
    if not xp.is_zero() and not y.is_zero() and (xp.rank * y.rank) % 2:
        sign = -sign
    rhs = product(xp, yp).scale(sign)
    if rhs.is_zero():
        return lhs.is_zero()
    return lhs == rhs


def dual_linear(x, y, a, b, o):
    return dual(add(x.scale(a), y.scale(b)), o) == add(dual(x, o).scale(a), dual(y, o).scale(b))


def ext_decomposition(x, e):
    """``x = (x/e) e + (x minus e) 1(e)`` after aligning ground sets."""
    single = (e,)
    first = product(contract(x, (e,)), AltTensor.basis_vector(single, e))
    second = product(delete(x, e), AltTensor.scalar(single, 1))
    if first.is_zero():
        total = second.reground(x.ground)
    elif second.is_zero():
        total = first.reground(x.ground)
    else:
        total = add(first.reground(x.ground), second.reground(x.ground))
    return total == x


def orthogonal(x, o):
    if x.is_zero():
        return True
    xp = dual(x, o)
    rows = rational_rows(x)
    rows_p = rational_rows(xp) if not xp.is_zero() else []
    if from_matrix(rows, x.ground) != x:
        return False
    for a in rows:
        for b in rows_p:
            if sum(p * q for p, q in zip(a, b)) != 0:
                return False
    return True


def anticommutes(x, y):
    if x.is_zero() or y.is_zero():
        return wedge(x, y).is_zero() and wedge(y, x).is_zero()
    sign = -1 if (x.rank * y.rank) % 2 else 1
    return wedge(x, y) == wedge(y, x).scale(sign)


def suite_identities(count=200, seed=0, max_size=7):
    rng = random.Random(seed)
    res = SuiteResult("identities")
    while res.instances < count:
        res.instances += 1
        size = rng.randint(1, max_size)
        ground = tuple(f"s{i}" for i in range(1, size + 1))
        x = random_extensor(rng, ground)
        reference = list(ground)
        rng.shuffle(reference)
        o = Orientation(reference, flip=rng.random() < 0.3)
        X = tuple(rng.sample(ground, rng.randint(0, size)))
        d = lambda: f"X={X} rows={rational_rows(x)!r} ground={list(ground)} reference={reference} flip={o.flip}"
        res.check(perp_perp(x, o), lambda: "PerpPerp " + d())
        res.check(delete_perp(x, o, X), lambda: "DeletePerp " + d())
        res.check(contract_perp(x, o, X), lambda: "ContractPerp " + d())
        split = rng.randint(0, size)
        g1, g2 = ground[:split], ground[split:]
        y1, y2 = random_extensor(rng, g1), random_extensor(rng, g2)
        res.check(prod_perp(y1, y2, o), lambda: f"ProdPerp split={split} " + d())
        e = rng.choice(ground)
        res.check(ext_decomposition(x, e), lambda: f"ExtDC e={e} " + d())
        res.check(orthogonal(x, o), lambda: "Orthogonality " + d())
        z = random_extensor(rng, ground, rank=x.rank)
        a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        res.check(dual_linear(x, z, a, b, o), lambda: "Linearity " + d())
        w = random_extensor(rng, ground, rank=rng.randint(0, size))
        res.check(anticommutes(x, w), lambda: "Anticommutativity " + d())
    return res


def suite_oracle(count=100, seed=0, max_size=8):
    rng = random.Random(seed)
    res = SuiteResult("oracle")
    res.check(m_e(k4_extensor(), k4_orientation()) == subset_expansion(k4_extensor(), k4_orientation()), "K4")
    while res.instances < count:
        n, o = random_ported(rng, max_size)
        res.instances += 1
        res.check(m_e(n, o) == subset_expansion(n, o), lambda: describe_ported(n, o))
    return res


def homogeneity_ok(n, o):
    me = m_e(n, o)
    if n.is_zero():
        return me.is_zero()
    rho = n.tensor.rank
    corank = len(n.ground) - rho
    space = n.space
    iota_set = set(space.iota)
    for key, value in me.items():
        k_i = sum(1 for s in key if s in iota_set)
        k_v = len(key) - k_i
        if not value.is_square_free():
            return False
        if value.degree(G) != {rho - k_i} or value.degree(R) != {corank - k_v}:
            return False
    return True


def sign_behaviour_ok(n, o, rng):
    me = m_e(n, o)
    # N -> -N
    if m_e(n.scaled(-1), o) != me:
        return False
    # alpha^2 scaling
    alpha = Fraction(rng.randint(1, 4), rng.randint(1, 3)) * rng.choice([-1, 1])
    if m_e(n.scaled(alpha), o) != me.scale(alpha * alpha):
        return False
    base = o.eps(n.ports + n.nonports)
    # E reorder
    E2 = list(n.nonports)
    rng.shuffle(E2)
    n2 = n.replace(nonports=tuple(E2))
    if m_e(n2, o).scale(o.eps(n.ports + tuple(E2))) != me.scale(base):
        return False
    # eps -> -eps
    if m_e(n, o.flipped()).scale(o.flipped().eps(n.ports + n.nonports)) != me.scale(base):
        return False
    # nonvanishing at all parameters 1
    if not n.is_zero():
        ones = n.replace(params={e: (1, 1) for e in n.nonports})
        if m_e(ones, o).is_zero():
            return False
    return True


def suite_homogeneity(count=100, seed=0, max_size=7):
    rng = random.Random(seed)
    res = SuiteResult("homogeneity")
    res.check(homogeneity_ok(k4_extensor(), k4_orientation()), "K4")
    while res.instances < count:
        res.instances += 1
        n, o = random_ported(rng, max_size)
        res.check(homogeneity_ok(n, o), lambda: "degrees " + describe_ported(n, o))
        res.check(sign_behaviour_ok(n, o, rng), lambda: "signs " + describe_ported(n, o))
    return res


def suite_rankpoly(count=50, seed=0, max_size=6):
    rng = random.Random(seed)
    res = SuiteResult("rankpoly")
    k4 = k4_extensor()
    res.check(all(verify_rank_poly_tutte(k4, e) for e in k4.nonports), "K4")
    while res.instances < count:
        n, o = random_ported(rng, max_size, rational=False)
        if n.is_zero():
            continue
        res.instances += 1
        choices = [e for e in n.nonports if not is_separator(n.tensor, e)]
        if choices:
            e = rng.choice(choices)
            res.check(verify_rank_poly_tutte(n, e), lambda: f"e={e} " + describe_ported(n, o))
        if not n.ports:
            res.check(
                rank_poly(n) == classical_corank_nullity(n),
                lambda: "classical " + describe_ported(n, o),
            )
        m, _ = random_ported(rng, max(1, max_size - len(n.ground)), prefix=("q", "f"), rational=False)
        if not m.is_zero():
            res.check(verify_rank_poly_tutte(n, other=m), lambda: "product " + describe_ported(n, o))
    return res


def _graphic(rng, max_vertices=5, max_edges=6):
    while True:
        net = random_graphic_ported(rng, max_vertices, max_edges)
        if not net.edges:
            continue
        n = incidence_extensor(net)
        if not n.is_zero() and len(n.ground) <= 7:
            if rng.random() < 0.3:
                n = n.scaled(rng.choice([-1, 2, Fraction(-1, 3)]))
            return net, n


def suite_substitution(count=50, seed=0, max_size=7):
    rng = random.Random(seed)
    res = SuiteResult("substitution")
    res.check(verify_substitution(k4_extensor(), k4_orientation()), "K4")
    while res.instances < count:
        net, n = _graphic(rng, 5, max(1, max_size - 1))
        reference = list(n.ground)
        rng.shuffle(reference)
        o = Orientation(reference)
        res.instances += 1
        res.check(verify_substitution(n, o), lambda: describe_network(net) + f" reference={reference}")
    return res


def suite_activities(count=30, seed=0, max_size=4):
    rng = random.Random(seed)
    res = SuiteResult("activities")
    while res.instances < count:
        n, o = random_ported(rng, max_size + 2, rational=False)
        if n.is_zero() or len(n.nonports) > max_size:
            continue
        res.instances += 1
        R0 = rank_poly(n)
        for perm in itertools.permutations(n.nonports):
            tree = build_tree(n, n.ports + perm)
            res.check(check_partitions(tree) == (True, True), lambda: f"partition order={perm} " + describe_ported(n, o))
            res.check(tutte_expression(tree) == R0, lambda: f"tutte order={perm} " + describe_ported(n, o))
    return res


def suite_flats(count=30, seed=0, max_size=5):
    rng = random.Random(seed)
    res = SuiteResult("flats")
    while res.instances < count:
        n, o = random_ported(rng, max_size + 2, rational=False)
        if n.is_zero() or len(n.nonports) > max_size:
            continue
        res.instances += 1
        res.check(flat_expansion(n) == rank_poly(n), lambda: describe_ported(n, o))
    return res


def suite_maxwell(count=50, seed=0, max_size=6):
    rng = random.Random(seed)
    res = SuiteResult("maxwell")

    closed = [
        ("edge p1 a c port\nedge p2 a c port\nedge e1 a b r=1\nedge e2 b c r=1\n", "1/g1 + 1/g2"),
        ("edge p1 a b port\nedge p2 a b port\nedge e1 a b r=1\nedge e2 a b r=1\n", "1/(g1 + g2)"),
    ]
    g1, g2 = Poly.g("1"), Poly.g("2")
    targets = [(g1 + g2, g1 * g2), (ONE, g1 + g2)]
    for (text, label), (num, den) in zip(closed, targets):
        m = maxwell_rho21(parse_network(text))
        res.check(m.agree and m.numerator * den == num * m.denominator, label)
    while res.instances < count:
        net = random_two_port(rng, max_size, max_size + 2, unit_r=rng.random() < 0.5)
        if not spanning_tree_enumerator(net):
            continue
        res.instances += 1
        m = maxwell_rho21(net)
        res.check(m.agree, lambda: describe_network(net))
        ref = list(incidence_extensor(net).ground)
        rng.shuffle(ref)
        m2 = maxwell_rho21(net, o=Orientation(ref))
        res.check(m2.numerator * m.denominator == m.numerator * m2.denominator, lambda: "orientation " + describe_network(net))
    return res


def suite_matrixtree(count=50, seed=0, max_size=6):
    rng = random.Random(seed)
    res = SuiteResult("matrixtree")
    tri = parse_network("edge e1 a b r=1\nedge e2 b c r=1\nedge e3 c a r=1\n")
    k4 = parse_network(K4_NET)
    k4 = Network(k4.vertices, k4.resistors).with_unit_r()
    res.check(id_laplacian_presentation_check(tri), "[I L] triangle")
    res.check(id_laplacian_presentation_check(k4), "[I L] K4")
    while res.instances < count:
        net = random_graph(rng, max_size, max_size + 3, unit_r=True)
        ground = min(net.vertices, key=natural_key)
        d = det(laplacian(net, ground))
        trees = spanning_tree_enumerator(net)
        n = incidence_extensor(net)
        scalar = m_e(n).coord(()) * n.default_orientation().eps(n.ground)
        res.instances += 1
        res.check(d == trees == scalar, lambda: describe_network(net))
    return res


SUITES = {
    "sum": suite_sum,
    "product": suite_product,
    "identities": suite_identities,
    "oracle": suite_oracle,
    "homogeneity": suite_homogeneity,
    "rankpoly": suite_rankpoly,
    "substitution": suite_substitution,
    "activities": suite_activities,
    "flats": suite_flats,
    "maxwell": suite_maxwell,
    "matrixtree": suite_matrixtree,
}


def basis_enumerator_check(n, o):
    """The two basis enumerators against brute-force sums over bases."""
    be = basis_enumerator_coords(n, o)
    t = n.tensor
    first = second = Poly()
    P = set(n.ports)
    for key, value in t.items():
        B = [s for s in key if s not in P]
        w = ONE
        for e in n.nonports:
            w = w * (n.g(e) if e in B else n.r(e))
        if P <= set(key):
            first = first + w * value * value
        if not (P & set(key)):
            second = second + w * value * value
    return be.contracted == first and be.deleted == second
