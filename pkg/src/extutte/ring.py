"""Exact coefficient arithmetic.

Coefficients are :class:`fractions.Fraction`; polynomials are sparse maps from
monomials to nonzero rationals over a fixed, global variable order::

    g-variables < r-variables < u < v < bracket variables

with ties broken by a natural sort of the label (so ``g2 < g10``).  Monomials
are rendered in graded-lex order, largest first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, LaurentError, LaurentResidue, MissingAssignment

G, R, U, V, BRACKET = range(5)
_KIND_PREFIX = {G: "g", R: "r"}


def natural_key(text):
    """Sort key that orders embedded integers numerically."""
    return tuple(
        (0, int(tok), "") if tok.isdigit() else (1, 0, tok)
        for tok in re.findall(r"\d+|\D+", str(text))
    )


@dataclass(frozen=True, order=True)
class Variable:
    """A polynomial indeterminate.

    ``label`` is the element id for g/r variables and the canonical key for
    bracket variables; it is ignored for ``u`` and ``v``.
    """

    kind: int
    _nat: tuple = field(repr=False, compare=True)
    label: str = ""

    def __init__(self, kind, label=""):
        if kind not in (G, R, U, V, BRACKET):
            raise ValueError(f"unknown variable kind {kind!r}")
        label = "" if kind in (U, V) else str(label)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_nat", natural_key(label))

    @property
    def name(self):
        if self.kind == U:
            return "u"
        if self.kind == V:
            return "v"
        if self.kind == BRACKET:
            return f"[{self.label}]"
        return _KIND_PREFIX[self.kind] + self.label

    @classmethod
    def from_name(cls, name):
        if name == "u":
            return cls(U)
        if name == "v":
            return cls(V)
        if name.startswith("[") and name.endswith("]"):
            return cls(BRACKET, name[1:-1])
        if len(name) > 1 and name[0] in "gr":
            return cls(G if name[0] == "g" else R, name[1:])
        raise ValueError(f"cannot interpret variable name {name!r}")

    def __repr__(self):
        return f"Variable({self.name})"


U_VAR = Variable(U)
V_VAR = Variable(V)


def _mono_mul(a, b):
    # merge two sorted (var, exp) tuples
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            if ea + eb:
                out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_key(mono):
    deg = sum(e for _, e in mono)
    return (-deg, tuple((v, -e) for v, e in mono))


def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Poly:
    """Immutable sparse multivariate polynomial with rational coefficients.

    Negative exponents are rejected unless ``laurent=True``; only ``v`` may
    carry them.
    """

    __slots__ = ("_terms", "laurent", "_hash")

    def __init__(self, terms=None, laurent=False):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                c = _coerce_coeff(c)
                if not c:
                    continue
                mono = tuple(sorted((v, int(e)) for v, e in mono if e))
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self.laurent = bool(laurent)
        self._hash = None
        for mono in clean:
            for v, e in mono:
                if e < 0 and not (self.laurent and v.kind == V):
                    raise LaurentError(f"negative exponent on {v.name}")

    @classmethod
    def _raw(cls, terms, laurent=False):
        p = cls.__new__(cls)
        p._terms = terms
        p.laurent = laurent
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, c):
        c = _coerce_coeff(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v, exp=1):
        return cls({((v, exp),): 1}, laurent=exp < 0)

    @classmethod
    def g(cls, label):
        return cls.var(Variable(G, label))

    @classmethod
    def r(cls, label):
        return cls.var(Variable(R, label))

    @classmethod
    def bracket(cls, key):
        return cls.var(Variable(BRACKET, key))

    # inspection
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return all(mono == () for mono in self._terms)

    def constant_value(self):
        """The rational value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def variables(self):
        return sorted({v for mono in self._terms for v, _ in mono})

    def degree(self, kind=None):
        """Set of total degrees of the monomials, optionally in one variable kind."""
        return {
            sum(e for v, e in mono if kind is None or v.kind == kind) for mono in self._terms
        }

    def is_square_free(self):
        return all(e == 1 for mono in self._terms for _, e in mono)

    def has_negative_exponents(self):
        return any(e < 0 for mono in self._terms for _, e in mono)

    # arithmetic
    @staticmethod
    def _lift(other):
        if isinstance(other, Poly):
            return other
        try:
            return Poly.const(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return Poly._raw(terms, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()}, self.laurent)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return Poly._raw({})
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Poly._raw(terms, self.laurent or other.laurent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by nonzero constants only
        other = self._lift(other)
        if other is None:
            return NotImplemented
        c = other.constant_value()
        if not c:
            raise DivisionByZero("division by zero")
        return Poly._raw({m: v / c for m, v in self._terms.items()}, self.laurent)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation and substitution
    def eval(self, assignment):
        """Exact rational value under a full assignment of the variables.

        Keys may be :class:`Variable` instances or their rendered names.
        """
        values = {}
        for k, val in assignment.items():
            values[Variable.from_name(k) if isinstance(k, str) else k] = _coerce_coeff(val)
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                if v not in values:
                    raise MissingAssignment(v.name)
                x = values[v]
                if e < 0 and x == 0:
                    raise DivisionByZero(f"{v.name}^{e} at 0")
                term *= x**e
            total += term
        return total

    def subs(self, mapping):
        """Substitute polynomials (or numbers) for some variables."""
        mapping = {
            (Variable.from_name(k) if isinstance(k, str) else k): self._lift(val)
            for k, val in mapping.items()
        }
        out = Poly()
        for mono, c in self._terms.items():
            term = Poly._raw({(): c})
            rest = []
            for v, e in mono:
                if v in mapping:
                    if e < 0:
                        raise LaurentError(f"cannot substitute into {v.name}^{e}")
                    term = term * mapping[v] ** e
                else:
                    rest.append((v, e))
            out = out + term * Poly._raw({tuple(rest): 1}, self.laurent)
        return out

    def split(self, kind):
        """Group terms by their part in variables of ``kind``.

        Returns a dict mapping the ``kind``-monomial (a sorted tuple of
        ``(Variable, exp)``) to the polynomial cofactor.
        """
        groups = {}
        for mono, c in self._terms.items():
            key = tuple((v, e) for v, e in mono if v.kind == kind)
            rest = tuple((v, e) for v, e in mono if v.kind != kind)
            groups.setdefault(key, {})[rest] = c
        return {k: Poly._raw(t, self.laurent) for k, t in groups.items()}

    def without_laurent(self):
        """Drop the Laurent flag; raises if negative powers remain."""
        if self.has_negative_exponents():
            raise LaurentResidue(f"negative powers of v remain in {render(self)}")
        return Poly._raw(dict(self._terms), False)

    # text and JSON
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: _mono_key(mc[0]))

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({render(self)!r})"

    def to_json(self):
        return {
            "terms": [
                {"coeff": _fmt_coeff(c), "monomial": {v.name: e for v, e in mono}}
                for mono, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data, laurent=False):
        terms = []
        for t in data["terms"]:
            mono = tuple((Variable.from_name(k), int(e)) for k, e in t["monomial"].items())
            terms.append((mono, Fraction(t["coeff"])))
        return cls(terms, laurent=laurent)

    @classmethod
    def parse(cls, text, laurent=False):
        """Inverse of :func:`render`; a missing coefficient means 1."""
        toks = text.split()
        if toks == ["0"]:
            return cls()
        terms = []
        sign = 1
        coeff = None
        mono = []
        for tok in toks:
            if tok in ("+", "-"):
                if coeff is None:
                    raise ValueError(f"dangling operator in {text!r}")
                terms.append((tuple(mono), coeff))
                sign, coeff, mono = (1 if tok == "+" else -1), None, []
            elif coeff is None and not tok[:1].isalpha() and not tok.startswith("["):
                coeff = sign * Fraction(tok)
            else:
                if coeff is None:
                    coeff = Fraction(sign)
                name, _, exp = tok.partition("^")
                mono.append((Variable.from_name(name), int(exp) if exp else 1))
        if coeff is None:
            raise ValueError(f"empty term in {text!r}")
        terms.append((tuple(mono), coeff))
        return cls(terms, laurent=laurent)


RingElem = Poly
ZERO = Poly()
ONE = Poly.const(1)


def _fmt_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_mono(mono):
    parts = []
    for v, e in mono:
        parts.append(v.name if e == 1 else f"{v.name}^{e}")
    return " ".join(parts)


def render(p):
    """Canonical text form: ``"-1 g1 g4 r2 r3 + 1 g2 g3 r1 r4"``."""
    p = Poly._lift(p)
    if not p._terms:
        return "0"
    out = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        body = _fmt_mono(mono)
        if i == 0:
            head = _fmt_coeff(c)
        else:
            out.append("+" if c > 0 else "-")
            head = _fmt_coeff(abs(c))
        out.append(f"{head} {body}" if body else head)
    return " ".join(out)


def ring_add(a, b):
    return Poly._lift(a) + b


def ring_mul(a, b):
    return Poly._lift(a) * b


def ring_eval(a, assignment):
    return Poly._lift(a).eval(assignment)


ring_render = render


def as_poly(x):
    """Coerce ints, Fractions, numeric strings or Polys to :class:`Poly`."""
    p = Poly._lift(x)
    if p is None:
        raise TypeError(f"cannot coerce {x!r} to a polynomial")
    return p
