"""Ported extensors and the extensor-valued Tutte function ``M_E``.

``M(N) = iota_g(N) ^ upsilon_r(N^perp)`` lives on two copies of the ports
plus the non-port elements; ``M_E(N) = M(N)/E`` contracts the non-ports away
and leaves a rank-``|P|`` extensor on the port copies.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import DuplicateElement, GroundSetMismatch, GroundSetOverlap
from .exterior import AltTensor, Orientation, add, contract, delete, dual, from_matrix, product, wedge
from .ring import ONE, ZERO, Poly, as_poly


def short_label(e):
    m = re.fullmatch(r"[A-Za-z]+(\d+)", str(e))
    return m.group(1) if m else str(e)


def default_params(nonports):
    """Symbolic ``(g_e, r_e)`` for each element.

    ``e3`` gets ``g3``/``r3``; ids that would collide keep their full name.
    """
    labels = [short_label(e) for e in nonports]
    if len(set(labels)) != len(labels):
        labels = [str(e) for e in nonports]
    return {e: (Poly.g(lab), Poly.r(lab)) for e, lab in zip(nonports, labels)}


def _copy_tag(p):
    p = str(p)
    return p[1:] if len(p) > 1 and p[0] == "p" else p


def iota_name(p):
    return "i" + _copy_tag(p)


def upsilon_name(p):
    return "v" + _copy_tag(p)


@dataclass(frozen=True)
class PortSpace:
    """The doubled port ground ``P_iota + P_upsilon`` (each ordered like P)."""

    ports: tuple

    @property
    def iota(self):
        return tuple(iota_name(p) for p in self.ports)

    @property
    def upsilon(self):
        return tuple(upsilon_name(p) for p in self.ports)

    @property
    def ground(self):
        return self.iota + self.upsilon


@dataclass(frozen=True)
class PortedExtensor:
    """An extensor whose ground set is split into ports and non-ports.

    ``ports`` and ``nonports`` are the declared sequences P and E; every sign
    prefactor is computed from them.  ``params`` maps each non-port to a
    ``(g, r)`` pair of polynomials.
    """

    tensor: AltTensor
    ports: tuple
    nonports: tuple
    params: dict = field(default=None, compare=False)

    def __post_init__(self):
        ports, nonports = tuple(self.ports), tuple(self.nonports)
        object.__setattr__(self, "ports", ports)
        object.__setattr__(self, "nonports", nonports)
        if set(ports) & set(nonports):
            raise GroundSetOverlap("ports and non-ports overlap")
        if len(set(ports + nonports)) != len(ports + nonports):
            raise DuplicateElement("repeated element in ports or non-ports")
        if set(ports) | set(nonports) != set(self.tensor.ground):
            raise GroundSetMismatch("P and E must partition the ground set")
        params = dict(default_params(nonports))
        for e, (g, r) in (self.params or {}).items():
            if e not in params:
                raise GroundSetMismatch(f"parameter for unknown element {e!r}")
            params[e] = (as_poly(g), as_poly(r))
        object.__setattr__(self, "params", params)
        space = PortSpace(ports)
        if len(set(space.ground + nonports)) != 2 * len(ports) + len(nonports):
            raise DuplicateElement("port copy names collide with other elements")

    @classmethod
    def from_matrix(cls, ports, nonports, rows, params=None):
        """Columns of ``rows`` are ``ports + nonports`` in that order."""
        ground = tuple(ports) + tuple(nonports)
        return cls(from_matrix(rows, ground), ports, nonports, params)

    @property
    def ground(self):
        return self.ports + self.nonports

    @property
    def space(self):
        return PortSpace(self.ports)

    def g(self, e):
        return self.params[e][0]

    def r(self, e):
        return self.params[e][1]

    def _minor(self, tensor, e):
        nonports = tuple(x for x in self.nonports if x != e)
        params = {x: self.params[x] for x in nonports}
        return PortedExtensor(tensor, self.ports, nonports, params)

    def contract(self, e):
        return self._minor(contract(self.tensor, (e,)), e)

    def delete(self, e):
        return self._minor(delete(self.tensor, e), e)

    def replace(self, tensor=None, ports=None, nonports=None, params=None):
        return PortedExtensor(
            self.tensor if tensor is None else tensor,
            self.ports if ports is None else ports,
            self.nonports if nonports is None else nonports,
            self.params if params is None else params,
        )

    def scaled(self, alpha):
        return self.replace(tensor=self.tensor.scale(alpha))

    def is_zero(self):
        return self.tensor.is_zero()

    def default_orientation(self):
        return Orientation(self.ground)


def _rename_scale(t, ground, rename, weights):
    coords = {}
    for key, v in t.items():
        w = v
        for s in key:
            if s in weights:
                w = w * weights[s]
        coords[tuple(rename.get(s, s) for s in key)] = w
    return AltTensor(ground, coords)


def iota(n):
    """Rename ports to their current copies and scale each non-port by g."""
    space = n.space
    rename = dict(zip(n.ports, space.iota))
    weights = {e: n.g(e) for e in n.nonports}
    return _rename_scale(n.tensor, space.iota + n.nonports, rename, weights)


def upsilon(n, nperp):
    """Rename ports of ``nperp`` to their voltage copies and scale by r."""
    space = n.space
    rename = dict(zip(n.ports, space.upsilon))
    weights = {e: n.r(e) for e in n.nonports}
    return _rename_scale(nperp, space.upsilon + n.nonports, rename, weights)


def _orientation(n, o):
    return n.default_orientation() if o is None else o


def big_m(n, o=None):
    """``M(N)`` over ``P_iota + P_upsilon + E``."""
    o = _orientation(n, o)
    ground = n.space.ground + n.nonports
    left = iota(n).reground(ground)
    right = upsilon(n, dual(n.tensor, o)).reground(ground)
    return wedge(left, right)


def m_e(n, o=None):
    """``M_E(N) = M(N)/E`` with E contracted in its declared order."""
    o = _orientation(n, o)
    if n.is_zero():
        return AltTensor.zero(n.space.ground)
    return contract(big_m(n, o), n.nonports)


def _port_index_pairs(ports):
    k = len(ports)
    for size in range(k + 1):
        for I in itertools.combinations(ports, size):
            for V in itertools.combinations(ports, k - size):
                yield I, V


def m_empty(n, o=None):
    """Closed form for ``E = ∅``: ``M[I_iota V_upsilon] = eps(Vbar V) N[I] N[Vbar]``."""
    if n.nonports:
        raise ValueError("m_empty needs E = ∅")
    o = _orientation(n, o)
    space = n.space
    ci = dict(zip(n.ports, space.iota))
    cv = dict(zip(n.ports, space.upsilon))
    coords = {}
    for I, V in _port_index_pairs(n.ports):
        Vbar = tuple(p for p in n.ports if p not in V)
        value = n.tensor.coord(I) * n.tensor.coord(Vbar)
        if value:
            key = tuple(ci[p] for p in I) + tuple(cv[p] for p in V)
            coords[key] = value * o.eps(Vbar + V)
    return AltTensor(space.ground, coords)


def subset_expansion(n, o=None):
    """Independent route to ``M_E`` by summing over all ``A ⊆ E``.

    ``eps(Vbar V) eps(PE) M_E[I V] = eps(P) sum_A N[IA] N[Vbar A] g_A r_Abar``.
    """
    o = _orientation(n, o)
    P, E = n.ports, n.nonports
    space = n.space
    ci = dict(zip(P, space.iota))
    cv = dict(zip(P, space.upsilon))
    prefactor = o.eps(P + E) * o.eps(P)
    subsets = []
    for size in range(len(E) + 1):
        for A in itertools.combinations(E, size):
            weight = ONE
            for e in E:
                weight = weight * (n.g(e) if e in A else n.r(e))
            subsets.append((A, weight))
    coords = {}
    N = n.tensor
    for I, V in _port_index_pairs(P):
        Vbar = tuple(p for p in P if p not in V)
        total = ZERO
        for A, weight in subsets:
            a = N.coord(I + A)
            if not a:
                continue
            b = N.coord(Vbar + A)
            if b:
                total = total + a * b * weight
        if total:
            key = tuple(ci[p] for p in I) + tuple(cv[p] for p in V)
            coords[key] = total * (prefactor * o.eps(Vbar + V))
    return AltTensor(space.ground, coords)


def sum_rule_rhs(n, e, o=None):
    """``eps(PE) eps(PE') (g_e M_E'(N/e) + r_e M_E'(N\\e))``."""
    o = _orientation(n, o)
    P, E = n.ports, n.nonports
    Ep = tuple(x for x in E if x != e)
    sign = o.eps(P + E) * o.eps(P + Ep)
    contracted = m_e(n.contract(e), o).scale(n.g(e))
    deleted = m_e(n.delete(e), o).scale(n.r(e))
    return add(contracted, deleted).scale(sign)


def verify_sum_rule(n, e, o=None):
    if e not in n.nonports:
        raise ValueError(f"{e!r} is not a non-port element")
    return m_e(n, o) == sum_rule_rhs(n, e, o)


def direct_sum(n1, n2, nonports=None):
    """The ported extensor ``N1 N2`` on ``P1+P2`` and ``E1+E2`` (or ``nonports``)."""
    tensor = product(n1.tensor, n2.tensor)
    params = dict(n1.params)
    params.update(n2.params)
    E = n1.nonports + n2.nonports if nonports is None else tuple(nonports)
    return PortedExtensor(tensor, n1.ports + n2.ports, E, params)


def product_rule_sides(n1, n2, o, nonports=None):
    if set(n1.ground) & set(n2.ground):
        raise GroundSetOverlap("direct sum needs disjoint ground sets")
    n12 = direct_sum(n1, n2, nonports)
    lhs = m_e(n12, o)
    sign = o.eps(n1.ports + n2.ports + n12.nonports) * o.eps(n1.ground) * o.eps(n2.ground)
    rhs = product(m_e(n1, o), m_e(n2, o)).scale(sign)
    if rhs.is_zero():
        rhs = AltTensor.zero(lhs.ground)
    return lhs, rhs


def verify_product_rule(n1, n2, o, nonports=None):
    lhs, rhs = product_rule_sides(n1, n2, o, nonports)
    return lhs == rhs


class BasisEnumerators(NamedTuple):
    contracted: Poly
    deleted: Poly
    ports_independent: bool
    ports_coindependent: bool


def basis_enumerator_coords(n, o=None):
    """``(eps(PE) M_E[P_iota], eps(PE) M_E[P_upsilon])`` with validity flags.

    The first value enumerates bases of ``N/P`` when P is independent; the
    second enumerates bases of ``N\\P`` when P is coindependent.
    """
    o = _orientation(n, o)
    me = m_e(n, o)
    sign = o.eps(n.ports + n.nonports)
    space = n.space
    first = me.coord(space.iota) * sign
    second = me.coord(space.upsilon) * sign
    N = n.tensor
    independent = coindependent = False
    if not N.is_zero():
        P = set(n.ports)
        independent = any(P <= set(k) for k in N.keys())
        coindependent = any(not (P & set(k)) for k in N.keys())
    return BasisEnumerators(first, second, independent, coindependent)


def parse_param(text, kind):
    """A g- or r-parameter from text: a rational, or a symbol.

    ``"g3"`` (for kind ``"g"``) is the variable ``g3``; any other name ``x``
    becomes ``gx``.  Numbers may be written ``"2"``, ``"1/3"`` or ``"0.5"``.
    """
    if isinstance(text, (int, Fraction)):
        return Poly.const(text)
    text = str(text).strip()
    try:
        return Poly.const(Fraction(text))
    except ValueError:
        pass
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", text):
        raise ValueError(f"bad parameter {text!r}")
    label = text[1:] if len(text) > 1 and text[0] == kind else text
    return Poly.g(label) if kind == "g" else Poly.r(label)


def ported_from_json(data):
    """``{"ports": [...], "nonports": [...], "matrix": [[...]], "params": {...}}``."""
    ports = tuple(data.get("ports", ()))
    nonports = tuple(data.get("nonports", ()))
    rows = [[Fraction(str(v)) for v in row] for row in data.get("matrix", [])]
    width = len(ports) + len(nonports)
    for row in rows:
        if len(row) != width:
            raise GroundSetMismatch(f"matrix row has {len(row)} entries, expected {width}")
    params = {}
    for e, spec in (data.get("params") or {}).items():
        defaults = default_params(nonports).get(e)
        if defaults is None:
            raise GroundSetMismatch(f"parameter for unknown element {e!r}")
        g = parse_param(spec["g"], "g") if "g" in spec else defaults[0]
        r = parse_param(spec["r"], "r") if "r" in spec else defaults[1]
        params[e] = (g, r)
    return PortedExtensor.from_matrix(ports, nonports, rows, params)
