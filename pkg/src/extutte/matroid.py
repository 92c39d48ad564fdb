"""Oriented-matroid layer: chirotopes, ranks, bracket keys and ``R``.

Bracket variables stand for oriented matroids on port subsets.  A minor
``[N/A|P]`` is split into connected components; each component becomes one
bracket variable whose key records its ports and the sign-normalized
chirotope, e.g. ``ports=p1,p2;signs=p1:+,p2:-``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonUnimodularKey, SymbolicCoordinates, ZeroTensorError
from .exterior import AltTensor, Orientation, contract, delete_all, gp_check, product
from .ported import PortSpace, PortedExtensor, direct_sum, m_e, m_empty
from .ring import BRACKET, ONE, U_VAR, V_VAR, ZERO, Poly


@dataclass(frozen=True)
class Chirotope:
    """Sign map of the Plücker coordinates of a parameter-free extensor."""

    ground: tuple
    rank: int
    signs: dict

    def __post_init__(self):
        object.__setattr__(self, "_pos", {s: i for i, s in enumerate(self.ground)})

    def sign(self, seq):
        seq = tuple(seq)
        if len(seq) != self.rank or len(set(seq)) != len(seq):
            return 0
        order = sorted(range(len(seq)), key=lambda i: self._pos[seq[i]])
        key = tuple(seq[i] for i in order)
        s = self.signs.get(key, 0)
        if not s:
            return 0
        inversions = sum(1 for i in range(len(order)) for j in range(i + 1, len(order)) if order[i] > order[j])
        return -s if inversions % 2 else s

    __call__ = sign

    def bases(self):
        return sorted(self.signs, key=lambda k: [self._pos[s] for s in k])

    def negated(self):
        return Chirotope(self.ground, self.rank, {k: -s for k, s in self.signs.items()})

    def to_tensor(self):
        return AltTensor(self.ground, dict(self.signs))


def _constant_coords(x):
    if x.is_zero():
        raise ZeroTensorError("the zero tensor presents no matroid")
    out = {}
    for k, v in x.items():
        if not v.is_constant():
            raise SymbolicCoordinates("specialize parameters before extracting a chirotope")
        out[k] = v.constant_value()
    return out


def chirotope(x):
    coords = _constant_coords(x)
    signs = {k: (1 if c > 0 else -1) for k, c in coords.items()}
    return Chirotope(x.ground, x.rank, signs)


def _as_bases(x):
    if isinstance(x, Chirotope):
        return [set(b) for b in x.signs]
    if isinstance(x, PortedExtensor):
        x = x.tensor
    if x.is_zero():
        raise ZeroTensorError("the zero tensor presents no matroid")
    return [set(k) for k in x.keys()]


def subset_rank(x, a):
    """Matroid rank of ``a``: the largest overlap with a basis."""
    a = set(a)
    return max(len(a & b) for b in _as_bases(x))


def closure(x, a, within=None):
    """Elements ``e`` with ``rank(a + e) == rank(a)``, optionally restricted."""
    bases = _as_bases(x)
    a = set(a)
    r = max(len(a & b) for b in bases)
    ground = x.ground if not isinstance(x, PortedExtensor) else x.tensor.ground
    pool = ground if within is None else [s for s in ground if s in set(within)]
    return {e for e in pool if max(len((a | {e}) & b) for b in bases) == r}


def unimodular_scale(x):
    """The common absolute value ``c`` of the nonzero coordinates, or None."""
    coords = _constant_coords(x)
    values = {abs(c) for c in coords.values()}
    return values.pop() if len(values) == 1 else None


def is_unimodular(x):
    if isinstance(x, PortedExtensor):
        x = x.tensor
    try:
        return unimodular_scale(x) is not None
    except ZeroTensorError:
        return False


def normalize_unimodular(n):
    """Divide a unimodular (ported) extensor by its uniform scale ``c``.

    Returns ``(normalized, c)``; ``M_E`` of the input is ``c^2`` times that of
    the result.
    """
    t = n.tensor if isinstance(n, PortedExtensor) else n
    c = unimodular_scale(t)
    if c is None:
        raise NonUnimodularKey("coordinates are not all of one absolute value")
    scaled = t.scale(Fraction(1) / c)
    if isinstance(n, PortedExtensor):
        return n.replace(tensor=scaled), c
    return scaled, c


def connected_components(c):
    """Partition of the ground set into matroid components.

    Two elements share a component iff they lie on a common circuit; the
    fundamental circuits of any one basis generate that relation.
    """
    if isinstance(c, AltTensor):
        c = chirotope(c)
    parent = {s: s for s in c.ground}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    basis = c.bases()[0] if c.signs else ()
    bases = {frozenset(b) for b in c.signs}
    bset = set(basis)
    for e in c.ground:
        if e in bset:
            continue
        for b in basis:
            if frozenset(bset - {b} | {e}) in bases:
                parent[find(e)] = find(b)
    groups = {}
    for s in c.ground:
        groups.setdefault(find(s), []).append(s)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: c.ground.index(g[0]))


def _component_signs(c, comp):
    """Sign-normalized chirotope of ``c`` restricted to a component."""
    comp_set = set(comp)
    rest_basis = tuple(s for s in c.bases()[0] if s not in comp_set)
    r = c.rank - len(rest_basis)
    signs = {}
    for X in itertools.combinations(comp, r):
        s = c.sign(X + rest_basis)
        if s:
            signs[X] = s
    first = min(signs, key=lambda k: [c.ground.index(s) for s in k])
    if signs[first] < 0:
        signs = {k: -s for k, s in signs.items()}
    return r, signs


def component_key(ports, signs):
    body = ",".join(".".join(k) + (":+" if s > 0 else ":-") for k, s in signs)
    return f"ports={','.join(ports)};signs={body}"


def bracket_key(c):
    """Canonical keys, one per connected component, sorted by port labels.

    Both global signs of a chirotope give the same key.
    """
    if isinstance(c, AltTensor):
        c = chirotope(c)
    keys = []
    for comp in connected_components(c):
        r, signs = _component_signs(c, comp)
        ordered = sorted(signs.items(), key=lambda kv: [c.ground.index(s) for s in kv[0]])
        keys.append((tuple(c.ground.index(s) for s in comp), component_key(comp, ordered)))
    return tuple(k for _, k in sorted(keys))


def bracket_monomial(c):
    out = ONE
    for k in bracket_key(c):
        out = out * Poly.bracket(k)
    return out


def parse_component_key(key):
    """Inverse of :func:`component_key`: ``(ports, rank, signs)``."""
    try:
        head, body = key.split(";", 1)
        assert head.startswith("ports=") and body.startswith("signs=")
        ports = tuple(p for p in head[6:].split(",") if p)
        signs = {}
        rank = None
        for item in body[6:].split(","):
            elems, _, s = item.rpartition(":")
            k = tuple(e for e in elems.split(".") if e)
            rank = len(k) if rank is None else rank
            signs[k] = 1 if s == "+" else -1
    except (ValueError, AssertionError):
        raise NonUnimodularKey(f"malformed bracket key {key!r}") from None
    return ports, rank, signs


def key_extensor(key):
    """The ±1 extensor whose coordinates are the key's signs."""
    ports, _, signs = parse_component_key(key)
    t = AltTensor(ports, signs)
    if not gp_check(t):
        raise NonUnimodularKey(f"bracket {key!r} is not realized by its signs")
    return t


def port_minor(n, a):
    """The oriented matroid minor ``[N/A|P]`` as an extensor on P.

    Contract a basis of ``A`` plus a set ``C`` outside ``A`` that extends a
    basis of ``P + A`` to a basis of N, then delete everything else in E.
    """
    t = n.tensor
    a = [e for e in n.nonports if e in set(a)]
    bases = [set(k) for k in t.keys()]
    if not bases:
        raise ZeroTensorError("the zero tensor presents no matroid")
    # greedy basis of A, then extend within P + A, then within E \ A
    chosen = []
    for group in (a, list(n.ports), [e for e in n.nonports if e not in set(a)]):
        for e in group:
            if any(set(chosen) | {e} <= b for b in bases):
                chosen.append(e)
    port_set = set(n.ports)
    seq = tuple(e for e in chosen if e not in port_set)
    minor = contract(t, seq)
    return delete_all(minor, [e for e in n.nonports if e not in set(seq)])


def rank_poly(n):
    """Parametrized ported corank-nullity polynomial with bracket variables."""
    t = n.tensor
    if t.is_zero():
        raise ZeroTensorError("R is undefined for the zero extensor")
    E, P = n.nonports, n.ports
    rho = t.rank
    total = ZERO
    for size in range(len(E) + 1):
        for A in itertools.combinations(E, size):
            minor = port_minor(n, A)
            term = bracket_monomial(minor)
            for e in E:
                term = term * (n.g(e) if e in A else n.r(e))
            ra = subset_rank(t, A)
            rpa = subset_rank(t, P + A)
            term = term * Poly.var(U_VAR, rho - rpa) if rho > rpa else term
            term = term * Poly.var(V_VAR, len(A) - ra) if len(A) > ra else term
            total = total + term
    return total


def substitute_extensors(r, o, ports, nonports):
    """Set ``u = v = 0`` and replace brackets by ``eps(P) eps(PE) M_0``."""
    ports, nonports = tuple(ports), tuple(nonports)
    r = r.subs({U_VAR: 0, V_VAR: 0})
    sign = o.eps(ports) * o.eps(ports + nonports)
    result = None
    for mono, cof in r.split(BRACKET).items():
        t = AltTensor.scalar((), 1)
        for var, exp in mono:
            if exp != 1:
                raise NonUnimodularKey(f"repeated bracket {var.name}")
            t = product(t, key_extensor(var.label))
        if set(t.ground) != set(ports):
            raise NonUnimodularKey("bracket components do not cover the ports")
        t = t.reground(ports)
        me = m_empty(PortedExtensor(t, ports, ()), o).scale(cof * sign)
        result = me if result is None else result + me
    if result is None:
        return AltTensor.zero(PortSpace(ports).ground)
    return result


def verify_substitution(n, o=None):
    """``substitute_extensors(rank_poly(n)) == m_e(n)`` after unit normalization."""
    o = n.default_orientation() if o is None else o
    unit, _ = normalize_unimodular(n)
    lhs = substitute_extensors(rank_poly(unit), o, n.ports, n.nonports)
    return lhs == m_e(unit, o)


def is_separator(t, e):
    keys = list(t.keys())
    inside = [e in k for k in keys]
    return all(inside) or not any(inside)


def verify_rank_poly_tutte(n, e=None, other=None):
    """Deletion-contraction for a non-separator ``e`` or multiplicativity with ``other``."""
    if other is not None:
        return rank_poly(direct_sum(n, other)) == rank_poly(n) * rank_poly(other)
    if is_separator(n.tensor, e):
        raise ValueError(f"{e!r} is a loop or coloop")
    return rank_poly(n) == n.g(e) * rank_poly(n.contract(e)) + n.r(e) * rank_poly(n.delete(e))


def classical_corank_nullity(n):
    """Oracle for ``P = ∅``: ``sum_A g_A r_Abar u^(rho - rho A) v^(|A| - rho A)``."""
    t = n.tensor
    rho = t.rank
    total = ZERO
    for size in range(len(n.nonports) + 1):
        for A in itertools.combinations(n.nonports, size):
            term = ONE
            for e in n.nonports:
                term = term * (n.g(e) if e in A else n.r(e))
            ra = subset_rank(t, A + n.ports)
            if rho > ra:
                term = term * Poly.var(U_VAR, rho - ra)
            if len(A) > subset_rank(t, A):
                term = term * Poly.var(V_VAR, len(A) - subset_rank(t, A))
            total = total + term
    return total


__all__ = [
    "Chirotope",
    "chirotope",
    "subset_rank",
    "closure",
    "is_unimodular",
    "normalize_unimodular",
    "unimodular_scale",
    "connected_components",
    "bracket_key",
    "bracket_monomial",
    "component_key",
    "parse_component_key",
    "key_extensor",
    "port_minor",
    "rank_poly",
    "substitute_extensors",
    "verify_substitution",
    "verify_rank_poly_tutte",
    "classical_corank_nullity",
    "is_separator",
    "Orientation",
]
