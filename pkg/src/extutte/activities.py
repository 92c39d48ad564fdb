"""Computation trees, activities and the expansions of ``R`` they give.

A ported computation tree reduces the greatest non-separating non-port
element at each node (contract on one branch, delete on the other) until
every remaining non-port is a loop or a coloop.  Each leaf is indexed by a
P-subbasis F, and the walk to it sorts E into the four activity classes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ZeroTensorError
from .exterior import contract, delete_all, loops_and_coloops
from .matroid import bracket_monomial, closure, port_minor, subset_rank
from .ring import U_VAR, V_VAR, ZERO, Poly


class ActivitySets(NamedTuple):
    F: frozenset
    IA: frozenset
    IP: frozenset
    EA: frozenset
    EP: frozenset


@dataclass
class TreeNode:
    minor: object  # PortedExtensor
    contracted: tuple = ()
    deleted: tuple = ()
    element: object = None
    children: dict = field(default_factory=dict)

    @property
    def is_leaf(self):
        return self.element is None

    def activities(self):
        loops, coloops = loops_and_coloops(self.minor.tensor)
        rest = set(self.minor.nonports)
        IA = frozenset(rest & coloops)
        EA = frozenset(rest & loops)
        IP = frozenset(self.contracted)
        EP = frozenset(self.deleted)
        return ActivitySets(IP | IA, IA, IP, EA, EP)


@dataclass
class CompTree:
    root: TreeNode
    ported: object
    order: tuple

    def leaves(self):
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.append(node.children["deleted"])
                stack.append(node.children["contracted"])
        return out


def _is_separator(t, e):
    inside = [e in k for k in t.keys()]
    return all(inside) or not any(inside)


def build_tree(n, order=None):
    """The computation tree that always reduces the greatest non-separator.

    ``order`` lists the elements (ports first); it defaults to ``P + E``.
    """
    if n.is_zero():
        raise ZeroTensorError("no computation tree for the zero extensor")
    order = tuple(n.ground if order is None else order)
    rank_of = {e: i for i, e in enumerate(order)}

    def grow(minor, contracted, deleted):
        node = TreeNode(minor, contracted, deleted)
        candidates = [e for e in minor.nonports if not _is_separator(minor.tensor, e)]
        if candidates:
            e = max(candidates, key=rank_of.__getitem__)
            node.element = e
            node.children["contracted"] = grow(minor.contract(e), contracted + (e,), deleted)
            node.children["deleted"] = grow(minor.delete(e), contracted, deleted + (e,))
        return node

    return CompTree(grow(n, (), ()), n, order)


def p_subbases(n):
    """Independent ``F ⊆ E`` with ``F + P`` spanning, by brute force."""
    t = n.tensor
    if t.is_zero():
        raise ZeroTensorError("the zero extensor has no subbases")
    rho = t.rank
    out = []
    for size in range(len(n.nonports) + 1):
        for F in itertools.combinations(n.nonports, size):
            if subset_rank(t, F) == len(F) and subset_rank(t, F + n.ports) == rho:
                out.append(frozenset(F))
    return out


def leaf_for(tree, f):
    """Descend by membership in ``f``; returns ``(leaf, ActivitySets)``."""
    f = set(f)
    node = tree.root
    while not node.is_leaf:
        node = node.children["contracted" if node.element in f else "deleted"]
    return node, node.activities()


def leaf_activities(tree):
    return [leaf.activities() for leaf in tree.leaves()]


def interval_partitions(tree):
    """Primal ``[IP, F + EA]`` and dual ``[EP, (E - F) + IA]`` intervals."""
    primal, dual = [], []
    for a in leaf_activities(tree):
        primal.append((a.IP, a.F | a.EA))
        dual.append((a.EP, a.EP | a.EA | a.IA))
    return primal, dual


def _subsets(elements):
    for size in range(len(elements) + 1):
        for s in itertools.combinations(elements, size):
            yield frozenset(s)


def tiles(intervals, ground):
    """True iff every subset of ``ground`` lies in exactly one interval."""
    for s in _subsets(tuple(ground)):
        hits = sum(1 for lo, hi in intervals if lo <= s <= hi)
        if hits != 1:
            return False
    return True


def check_partitions(tree):
    primal, dual = interval_partitions(tree)
    E = tree.ported.nonports
    return tiles(primal, E), tiles(dual, E)


def binomial_pointvalues(n):
    """``x_e = g_e + r_e u`` and ``y_e = r_e + g_e v``."""
    u, v = Poly.var(U_VAR), Poly.var(V_VAR)
    x = {e: n.g(e) + n.r(e) * u for e in n.nonports}
    y = {e: n.r(e) + n.g(e) * v for e in n.nonports}
    return x, y


def leaf_bracket(leaf, a):
    """``[N/F|P]`` read from a leaf: contract its coloops, drop its loops."""
    minor = leaf.minor
    t = contract(minor.tensor, tuple(e for e in minor.nonports if e in a.IA))
    t = delete_all(t, [e for e in minor.nonports if e in a.EA])
    return bracket_monomial(t)


def tutte_expression(tree, x=None, y=None):
    """``sum_F [N/F|P] x_IA g_IP y_EA r_EP`` over the leaves."""
    n = tree.ported
    if x is None or y is None:
        bx, by = binomial_pointvalues(n)
        x = bx if x is None else x
        y = by if y is None else y
    total = ZERO
    for leaf in tree.leaves():
        a = leaf.activities()
        term = leaf_bracket(leaf, a)
        for e in a.IA:
            term = term * x[e]
        for e in a.IP:
            term = term * n.g(e)
        for e in a.EA:
            term = term * y[e]
        for e in a.EP:
            term = term * n.r(e)
        total = total + term
    return total


def order_activities(n, basis, order):
    """Classical activities of a basis when ``P = ∅``.

    ``e`` in the basis is internally active when it is the least element of
    its fundamental cocircuit; ``e`` outside is externally active when it is
    the least element of its fundamental circuit.
    """
    rank_of = {e: i for i, e in enumerate(order)}
    bases = {frozenset(k) for k in n.tensor.keys()}
    B = frozenset(basis)
    IA, EA = set(), set()
    for e in n.nonports:
        if e in B:
            cocircuit = {e} | {f for f in n.nonports if f not in B and (B - {e}) | {f} in bases}
            if min(cocircuit, key=rank_of.__getitem__) == e:
                IA.add(e)
        else:
            circuit = {e} | {b for b in B if (B - {b}) | {e} in bases}
            if min(circuit, key=rank_of.__getitem__) == e:
                EA.add(e)
    return frozenset(IA), frozenset(EA)


def flats(n):
    """Closures ``cl(A) ∩ E`` of all ``A ⊆ E``, sorted by size then order."""
    E = n.nonports
    seen = set()
    for A in _subsets(E):
        seen.add(frozenset(closure(n.tensor, A, within=E)))
    pos = {e: i for i, e in enumerate(E)}
    return sorted(seen, key=lambda F: (len(F), sorted(pos[e] for e in F)))


def mobius(lattice):
    """``mu[(G, F)]`` for ``G <= F`` in an inclusion-ordered family."""
    mu = {}
    for G in lattice:
        above = [F for F in lattice if G <= F]
        above.sort(key=len)
        for F in above:
            if F == G:
                mu[(G, F)] = 1
            else:
                mu[(G, F)] = -sum(mu[(G, H)] for H in above if H < F and (G, H) in mu)
    return mu


def flat_expansion(n, literal=False):
    """``R`` summed over the lattice of flats, with Laurent terms in ``v``.

    By default each inner term carries the factor ``r_(E-G)`` that the
    Möbius inversion of ``g_A r_Abar`` produces.  ``literal=True`` leaves it
    out; the result then only agrees with ``R`` when every ``r_e = 1``, and
    negative powers of ``v`` may survive.
    """
    t = n.tensor
    if t.is_zero():
        raise ZeroTensorError("R is undefined for the zero extensor")
    E, P = n.nonports, n.ports
    rho = t.rank
    lattice = flats(n)
    mu = mobius(lattice)
    v = Poly.var(V_VAR)
    total = Poly(laurent=True)
    for F in lattice:
        Fseq = tuple(e for e in E if e in F)
        rf = subset_rank(t, Fseq)
        inner = ZERO
        for G in lattice:
            if not G <= F:
                continue
            term = Poly.const(mu[(G, F)])
            for e in E:
                if e in G:
                    term = term * (n.r(e) + n.g(e) * v)
                elif not literal:
                    term = term * n.r(e)
            inner = inner + term
        if not inner:
            continue
        term = bracket_monomial(port_minor(n, Fseq)) * inner
        upow = rho - subset_rank(t, P + Fseq)
        if upow:
            term = term * Poly.var(U_VAR, upow)
        if rf:
            term = term * Poly.var(V_VAR, -rf)
        total = total + term
    return total.without_laurent()


def tree_to_dict(tree):
    def node_dict(node):
        a = node.activities() if node.is_leaf else None
        out = {
            "contracted": list(node.contracted),
            "deleted": list(node.deleted),
            "nonports": list(node.minor.nonports),
            "rank": node.minor.tensor.rank,
        }
        if node.is_leaf:
            pos = {e: i for i, e in enumerate(tree.order)}
            out["leaf"] = {k: sorted(getattr(a, k), key=pos.__getitem__) for k in ("F", "IA", "IP", "EA", "EP")}
        else:
            out["element"] = node.element
            out["children"] = {k: node_dict(node.children[k]) for k in ("contracted", "deleted")}
        return out

    return {"order": list(tree.order), "root": node_dict(tree.root)}


def tree_to_json(tree):
    return json.dumps(tree_to_dict(tree), indent=2, sort_keys=True)


def _fmt_set(s, order):
    pos = {e: i for i, e in enumerate(order)}
    return "{" + ",".join(sorted(s, key=lambda e: pos.get(e, len(pos)))) + "}"


def tree_to_text(tree):
    lines = []

    def walk(node, depth, label):
        pad = "  " * depth
        head = f"{pad}{label}" if label else pad.rstrip()
        if node.is_leaf:
            a = node.activities()
            parts = [f"{k}={_fmt_set(getattr(a, k), tree.order)}" for k in ("F", "IA", "IP", "EA", "EP")]
            lines.append(f"{head}leaf " + " ".join(parts))
        else:
            lines.append(f"{head}reduce {node.element}")
            walk(node.children["contracted"], depth + 1, f"/{node.element}: ")
            walk(node.children["deleted"], depth + 1, f"\\{node.element}: ")

    walk(tree.root, 0, "")
    return "\n".join(lines)


__all__ = [
    "ActivitySets",
    "TreeNode",
    "CompTree",
    "build_tree",
    "p_subbases",
    "leaf_for",
    "leaf_activities",
    "interval_partitions",
    "tiles",
    "check_partitions",
    "binomial_pointvalues",
    "tutte_expression",
    "order_activities",
    "flats",
    "mobius",
    "flat_expansion",
    "tree_to_dict",
    "tree_to_json",
    "tree_to_text",
]
