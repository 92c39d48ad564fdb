"""Homogeneous alternating tensors with an explicit ground set.

A tensor stores its Plücker coordinates sparsely, keyed by subsets written in
the ground set's reference order.  Reading a coordinate through an arbitrary
sequence applies the permutation sign (and returns zero on repeats), so
storage order never leaks into values.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    DuplicateElement,
    GroundSetMismatch,
    GroundSetOverlap,
    RankMismatch,
    UnknownElement,
    ZeroTensorError,
)
from .ring import ONE, ZERO, Poly, as_poly, render


def _inversion_sign(positions):
    """Sign of the permutation given by ``positions``; 0 if any repeat."""
    if len(set(positions)) != len(positions):
        return 0
    inv = 0
    n = len(positions)
    for i in range(n):
        pi = positions[i]
        for j in range(i + 1, n):
            if pi > positions[j]:
                inv += 1
    return -1 if inv & 1 else 1


class Orientation:
    """Ground set orientation derived from a reference order.

    ``eps(X) = (-1)^(inversions of X)``, zero on sequences with repeats.
    ``flip=True`` gives the negated function ``-eps``, used to test claims
    that are alternating in the orientation.
    """

    def __init__(self, reference, flip=False):
        reference = tuple(reference)
        if len(set(reference)) != len(reference):
            raise DuplicateElement("reference order has repeated elements")
        self.reference = reference
        self.flip = bool(flip)
        self._pos = {s: i for i, s in enumerate(reference)}

    def __call__(self, seq):
        return self.eps(seq)

    def eps(self, seq):
        try:
            positions = [self._pos[s] for s in seq]
        except KeyError as exc:
            raise UnknownElement(exc.args[0]) from None
        s = _inversion_sign(positions)
        return -s if self.flip else s

    def flipped(self):
        return Orientation(self.reference, not self.flip)

    def covers(self, elements):
        return all(e in self._pos for e in elements)

    def __repr__(self):
        flip = ", flip=True" if self.flip else ""
        return f"Orientation({list(self.reference)!r}{flip})"


def eps(o, seq):
    return o.eps(seq)


class AltTensor:
    """A homogeneous element of the exterior algebra over a labeled ground set.

    ``coords`` maps subsets (tuples in reference order) to nonzero
    :class:`~extutte.ring.Poly` values.  The zero tensor has no rank.
    """

    __slots__ = ("ground", "rank", "_coords", "_pos")

    def __init__(self, ground, coords=None):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise DuplicateElement("ground set has repeated elements")
        self.ground = ground
        self._pos = {s: i for i, s in enumerate(ground)}
        store = {}
        rank = None
        for seq, value in (coords or {}).items():
            seq = (seq,) if isinstance(seq, str) else tuple(seq)
            key, sign = self._canon(seq)
            value = as_poly(value)
            if not sign or not value:
                continue
            if rank is None:
                rank = len(key)
            elif rank != len(key):
                raise RankMismatch("coordinates of mixed sizes")
            total = store.get(key, ZERO) + (value if sign > 0 else -value)
            if total:
                store[key] = total
            else:
                del store[key]
        self._coords = store
        self.rank = len(next(iter(store))) if store else None

    @classmethod
    def _make(cls, ground, coords, pos=None):
        t = cls.__new__(cls)
        t.ground = ground
        t._pos = pos if pos is not None else {s: i for i, s in enumerate(ground)}
        t._coords = coords
        t.rank = len(next(iter(coords))) if coords else None
        return t

    @classmethod
    def zero(cls, ground):
        return cls._make(tuple(ground), {})

    @classmethod
    def scalar(cls, ground, value=1):
        """Rank-0 tensor ``value * 1`` over ``ground``."""
        value = as_poly(value)
        return cls._make(tuple(ground), {(): value} if value else {})

    @classmethod
    def vector(cls, ground, entries):
        """Rank-1 tensor from a mapping (or sequence aligned with ``ground``)."""
        ground = tuple(ground)
        if not isinstance(entries, dict):
            if len(entries) != len(ground):
                raise GroundSetMismatch("vector length does not match ground set")
            entries = dict(zip(ground, entries))
        return cls(ground, {(s,): c for s, c in entries.items()})

    @classmethod
    def basis_vector(cls, ground, s):
        return cls.vector(ground, {s: 1})

    def _canon(self, seq):
        try:
            positions = [self._pos[s] for s in seq]
        except KeyError as exc:
            raise UnknownElement(exc.args[0]) from None
        sign = _inversion_sign(positions)
        if not sign:
            return None, 0
        key = tuple(self.ground[p] for p in sorted(positions))
        return key, sign

    # access
    def coord(self, seq):
        """Plücker coordinate at an arbitrary sequence of ground elements."""
        seq = (seq,) if isinstance(seq, str) else tuple(seq)
        key, sign = self._canon(seq)
        if not sign or self.rank is None or len(key) != self.rank:
            return ZERO
        value = self._coords.get(key)
        if value is None:
            return ZERO
        return value if sign > 0 else -value

    __getitem__ = coord

    def items(self):
        return self._coords.items()

    def keys(self):
        return self._coords.keys()

    def support(self):
        """Sorted list of subsets (tuples) with nonzero coordinate."""
        return sorted(self._coords, key=lambda k: [self._pos[s] for s in k])

    def is_zero(self):
        return not self._coords

    def __bool__(self):
        return bool(self._coords)

    def __len__(self):
        return len(self._coords)

    def is_constant(self):
        return all(v.is_constant() for v in self._coords.values())

    def position(self, s):
        return self._pos[s]

    # arithmetic
    def scale(self, c):
        c = as_poly(c)
        if not c:
            return AltTensor.zero(self.ground)
        out = {}
        for k, v in self._coords.items():
            w = v * c
            if w:
                out[k] = w
        return AltTensor._make(self.ground, out, self._pos)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, AltTensor):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, AltTensor):
            return NotImplemented
        return add(self, -other)

    def __mul__(self, c):
        if isinstance(c, AltTensor):
            return wedge(self, c)
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def reground(self, ground):
        """Same tensor over a reordered or enlarged ground set."""
        ground = tuple(ground)
        if ground == self.ground:
            return self
        t = AltTensor._make(ground, {})
        if not set(self.ground) <= set(ground):
            raise GroundSetMismatch("new ground set must contain the old one")
        out = {}
        for k, v in self._coords.items():
            key, sign = t._canon(k)
            out[key] = v if sign > 0 else -v
        t._coords = out
        t.rank = self.rank
        return t

    def same_ground(self, other):
        return set(self.ground) == set(other.ground)

    def __eq__(self, other):
        if not isinstance(other, AltTensor):
            return NotImplemented
        if not self.same_ground(other):
            return False
        if other.ground != self.ground:
            other = other.reground(self.ground)
        return self._coords == other._coords

    def __hash__(self):
        return hash((frozenset(self.ground), frozenset(
            (frozenset(k), v if self._canon(k)[1] > 0 else -v) for k, v in self._coords.items()
        )))

    def map_coords(self, fn):
        """Apply ``fn`` to every coordinate value (e.g. a substitution)."""
        out = {}
        for k, v in self._coords.items():
            w = as_poly(fn(v))
            if w:
                out[k] = w
        return AltTensor._make(self.ground, out, self._pos)

    def __repr__(self):
        if not self._coords:
            return f"AltTensor(zero over {list(self.ground)})"
        body = ", ".join(f"{','.join(map(str, k)) or '∅'}: {render(v)}"
                         for k, v in ((k, self._coords[k]) for k in self.support()))
        return f"AltTensor(rank={self.rank}, {{{body}}})"

    # serialization
    def to_json(self):
        return {
            "ground": [str(s) for s in self.ground],
            "rank": self.rank,
            "coords": {",".join(map(str, k)): render(self._coords[k]) for k in self.support()},
        }

    @classmethod
    def from_json(cls, data):
        ground = list(data["ground"])
        coords = {}
        for key, text in data["coords"].items():
            seq = tuple(key.split(",")) if key else ()
            coords[seq] = Poly.parse(text)
        t = cls(ground, coords)
        if data.get("rank") is not None and t.rank is not None and t.rank != data["rank"]:
            raise RankMismatch("declared rank does not match coordinates")
        return t


Extensor = AltTensor


def coord(t, seq):
    return t.coord(seq)


def _check_same_ground(x, y):
    if not x.same_ground(y):
        raise GroundSetMismatch(f"{list(x.ground)} vs {list(y.ground)}")
    return y if y.ground == x.ground else y.reground(x.ground)


def add(x, y):
    """Coordinate-wise sum; the result need not be decomposable."""
    y = _check_same_ground(x, y)
    if not y._coords:
        return x
    if not x._coords:
        return y
    if x.rank != y.rank:
        raise RankMismatch(f"rank {x.rank} + rank {y.rank}")
    out = dict(x._coords)
    for k, v in y._coords.items():
        s = out.get(k, ZERO) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return AltTensor._make(x.ground, out, x._pos)


def wedge(x, y):
    """Exterior product over a common ground set."""
    y = _check_same_ground(x, y)
    if not x._coords or not y._coords:
        return AltTensor.zero(x.ground)
    pos = x._pos
    out = {}
    for a, va in x._coords.items():
        sa = set(a)
        pa = [pos[s] for s in a]
        for b, vb in y._coords.items():
            if sa.intersection(b):
                continue
            pb = [pos[s] for s in b]
            inv = sum(1 for i in pa for j in pb if i > j)
            key = tuple(x.ground[p] for p in sorted(pa + pb))
            term = va * vb
            if inv & 1:
                term = -term
            s = out.get(key, ZERO) + term
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return AltTensor._make(x.ground, out, pos)


def product(x, y):
    """Exterior product of tensors on disjoint ground sets (direct sum).

    The result's ground set is ``x.ground + y.ground``.
    """
    if set(x.ground) & set(y.ground):
        raise GroundSetOverlap(sorted(map(str, set(x.ground) & set(y.ground))))
    ground = x.ground + y.ground
    out = {}
    for a, va in x._coords.items():
        for b, vb in y._coords.items():
            out[a + b] = va * vb
    return AltTensor._make(ground, out)


def from_matrix(rows, ground):
    """Extensor whose coordinates are the maximal minors of ``rows``.

    Rows are sequences aligned with ``ground`` (or dicts keyed by element).
    An empty row list gives the rank-0 extensor ``1``; dependent rows give
    zero.
    """
    ground = tuple(ground)
    t = AltTensor.scalar(ground, 1)
    for row in rows:
        t = wedge(t, AltTensor.vector(ground, row))
        if not t:
            break
    return t


def delete(x, e):
    """Restrict coordinates to subsets avoiding ``e``."""
    if e not in x._pos:
        raise UnknownElement(e)
    ground = tuple(s for s in x.ground if s != e)
    out = {k: v for k, v in x._coords.items() if e not in k}
    return AltTensor._make(ground, out)


def delete_all(x, elements):
    for e in elements:
        x = delete(x, e)
    return x


def contract(x, seq):
    """``(x/A)[X] = x[XA]`` for the sequence ``A = seq``."""
    seq = (seq,) if isinstance(seq, str) else tuple(seq)
    for e in seq:
        if e not in x._pos:
            raise UnknownElement(e)
    if len(set(seq)) != len(seq):
        raise DuplicateElement("contraction sequence has repeats")
    drop = set(seq)
    ground = tuple(s for s in x.ground if s not in drop)
    pos = x._pos
    out = {}
    seq_pos = [pos[s] for s in seq]
    for k, v in x._coords.items():
        if not drop.issubset(k):
            continue
        rest = tuple(s for s in k if s not in drop)
        sign = _inversion_sign([pos[s] for s in rest] + seq_pos)
        out[rest] = v if sign > 0 else -v
    return AltTensor._make(ground, out)


def dual(x, o):
    """Canonical dual ``x^perp[X] = x[Xbar] * eps(Xbar X)``."""
    if not o.covers(x.ground):
        raise GroundSetMismatch("orientation does not cover the ground set")
    out = {}
    for a, v in x._coords.items():
        sa = set(a)
        comp = tuple(s for s in x.ground if s not in sa)
        sign = o.eps(a + comp)
        out[comp] = v if sign > 0 else -v
    return AltTensor._make(x.ground, out, x._pos)


def gp_check(t):
    """Exhaustive Grassmann-Plücker test.

    For every ``A = a1 a2..ar`` and ``B = b1..br``::

        t[A] t[B] == sum_i t[b_i a2..ar] * t[b1..(a1 in slot i)..br]

    Permuting ``a2..ar`` or ``B`` multiplies both sides by the same sign, so
    ``a1`` ranges over all elements and the rest over sorted subsets.
    """
    if not t._coords or t.rank <= 1:
        return True
    r = t.rank
    ground = t.ground
    for a1 in ground:
        others = [s for s in ground if s != a1]
        for arest in itertools.combinations(others, r - 1):
            A = (a1,) + arest
            for B in itertools.combinations(ground, r):
                lhs = t.coord(A) * t.coord(B)
                rhs = ZERO
                for i, bi in enumerate(B):
                    first = t.coord((bi,) + arest)
                    if not first:
                        continue
                    second = t.coord(B[:i] + (a1,) + B[i + 1:])
                    if second:
                        rhs = rhs + first * second
                if lhs != rhs:
                    return False
    return True


is_decomposable = gp_check


def loops_and_coloops(x):
    if not x._coords:
        raise ZeroTensorError("the zero tensor presents no matroid")
    used = set()
    common = None
    for k in x._coords:
        used.update(k)
        common = set(k) if common is None else common & set(k)
    loops = {s for s in x.ground if s not in used}
    return loops, set(common)


def lex_least_basis(x):
    if not x._coords:
        raise ZeroTensorError("the zero tensor has no basis")
    return x.support()[0]


def matrix_presentation(x):
    """Rows whose wedge is proportional to ``x``.

    Returns ``(rows, numerator, denominator)`` with
    ``x * denominator == numerator * from_matrix(rows)``.  Rows are read from
    the lex-least basis ``B``: row ``j`` holds ``x[B with b_j -> s]``.  When
    ``x[B]`` is a constant the rows are rescaled so that the presentation is
    exact (``numerator == denominator == 1``).
    """
    if not x._coords:
        raise ZeroTensorError("the zero tensor has no row space")
    if x.rank == 0:
        return [], x._coords[()], ONE
    B = lex_least_basis(x)
    xb = x._coords[B]
    rows = []
    for j in range(len(B)):
        rows.append([x.coord(B[:j] + (s,) + B[j + 1:]) for s in x.ground])
    if xb.is_constant():
        c = xb.constant_value()
        rows = [[v / c for v in row] for row in rows]
        rows[0] = [v * c for v in rows[0]]
        return rows, ONE, ONE
    return rows, ONE, xb ** (len(B) - 1)


def rational_rows(x):
    """Exact rational matrix presenting a constant extensor."""
    if x.rank == 0:
        return []
    rows, num, den = matrix_presentation(x)
    if num != ONE or den != ONE:
        raise ValueError("extensor has symbolic coordinates")
    return [[Fraction(v.constant_value()) for v in row] for row in rows]
