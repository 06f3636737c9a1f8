"""Polynomials and truncated power series in non-commuting variables.

Terms are stored sparsely as ``{multi_index: coefficient}``.  Coefficients
are normally Fractions; an NcSeries may also carry NcPolynomial
coefficients, which models series in ``z`` over polynomials in a second,
commuting set of variables ``x`` (the ring the generating function of the
orthogonal polynomials lives in).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import fmt, parse_word, q, word_key

__all__ = [
    "NcPolynomial", "NcSeries", "SeriesTuple",
    "multiply", "star", "left_derivative", "mul_inverse", "compose", "comp_inverse",
    "identity_tuple", "variable",
]


class NcPolynomial:
    """A finite linear combination of non-commutative monomials ``x_u``."""

    max_degree = None

    def __init__(self, d: int, terms: Mapping | None = None):
        self.d = int(d)
        clean = {}
        for u, c in (terms or {}).items():
            u = tuple(u)
            if any(not 1 <= i <= self.d for i in u):
                raise ValueError(f"multi-index {u} has entries outside 1..{self.d}")
            if not isinstance(c, NcPolynomial):
                c = q(c)
            if c:
                clean[u] = c
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, d, value=1, **kw):
        return cls(d, {(): value}, **kw)

    def _new(self, terms):
        return type(self)(self.d, terms)

    def _check(self, other):
        if not isinstance(other, NcPolynomial):
            raise TypeError(f"expected a polynomial or series, got {type(other).__name__}")
        if other.d != self.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")
        if type(other) is not type(self) or other.max_degree != self.max_degree:
            raise ValueError(
                f"cannot combine {type(self).__name__}(max_degree={self.max_degree}) "
                f"with {type(other).__name__}(max_degree={other.max_degree})"
            )

    def _lift(self, other):
        if isinstance(other, NcPolynomial):
            self._check(other)
            return other
        return self._new({(): other})

    # container protocol ---------------------------------------------------
    def __getitem__(self, u):
        return self.terms.get(tuple(u), Fraction(0))

    def __iter__(self):
        return iter(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, NcPolynomial):
            return self.d == other.d and self.max_degree == other.max_degree and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.max_degree, frozenset(self.terms.items())))

    def degree(self) -> int:
        return max((len(u) for u in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def homogeneous(self, n: int):
        return self._new({u: c for u, c in self.terms.items() if len(u) == n})

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for u, c in other.terms.items():
            out[u] = out[u] + c if u in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, NcPolynomial):
            other = q(other)
            return self._new({u: c * other for u, c in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, NcPolynomial):
            return multiply(other, self)
        other = q(other)
        return self._new({u: other * c for u, c in self.terms.items()})

    def scale(self, c):
        return self._new({u: c * v for u, v in self.terms.items()})

    def star(self):
        return star(self)

    def __repr__(self):
        return f"{type(self).__name__}(d={self.d}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for u in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[u]
            mono = "*".join(f"x{i}" for i in u)
            coeff = f"({c})" if isinstance(c, NcPolynomial) else fmt(c)
            if mono and coeff == "1":
                parts.append(mono)
            elif mono and coeff == "-1":
                parts.append("-" + mono)
            else:
                parts.append(coeff + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "d": self.d,
            "max_degree": self.max_degree,
            "terms": {word_key(u): fmt(c) for u, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))},
        }

    @staticmethod
    def from_json(data) -> "NcPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {parse_word(k): Fraction(v) for k, v in data["terms"].items()}
        if data.get("max_degree") is None:
            return NcPolynomial(data["d"], terms)
        return NcSeries(data["d"], data["max_degree"], terms)


class NcSeries(NcPolynomial):
    """Power series truncated at a declared total degree.

    Every operation closes within ``max_degree``; combining series of
    different truncation degrees is an error rather than a silent coercion.
    """

    def __init__(self, d: int, max_degree: int, terms: Mapping | None = None):
        self.max_degree = int(max_degree)
        super().__init__(d, {u: c for u, c in (terms or {}).items() if len(tuple(u)) <= self.max_degree})

    @classmethod
    def constant(cls, d, value=1, max_degree=0):
        return cls(d, max_degree, {(): value})

    def _new(self, terms):
        return NcSeries(self.d, self.max_degree, terms)

    def truncate(self, n: int) -> "NcSeries":
        if n > self.max_degree:
            raise ValueError(f"cannot raise truncation degree from {self.max_degree} to {n}")
        return NcSeries(self.d, n, self.terms)

    @classmethod
    def from_polynomial(cls, p: NcPolynomial, max_degree: int) -> "NcSeries":
        return cls(p.d, max_degree, p.terms)


SeriesTuple = tuple  # tuple[NcSeries, ...] sharing d and max_degree


def variable(d: int, i: int, max_degree: int | None = None):
    if max_degree is None:
        return NcPolynomial(d, {(i,): 1})
    return NcSeries(d, max_degree, {(i,): 1})


def identity_tuple(d: int, max_degree: int) -> SeriesTuple:
    return tuple(variable(d, i, max_degree) for i in range(1, d + 1))


def multiply(a: NcPolynomial, b: NcPolynomial) -> NcPolynomial:
    """Concatenation product, truncated for series."""
    a._check(b)
    cap = a.max_degree
    out: dict = {}
    for u, c in a.terms.items():
        for v, e in b.terms.items():
            if cap is not None and len(u) + len(v) > cap:
                continue
            w = u + v
            t = c * e
            out[w] = out[w] + t if w in out else t
    return a._new(out)


def star(p: NcPolynomial) -> NcPolynomial:
    """Reverse every monomial (the involution fixing each variable)."""
    return p._new({tuple(reversed(u)): c for u, c in p.terms.items()})


def left_derivative(i: int, g: NcPolynomial) -> NcPolynomial:
    if not 1 <= i <= g.d:
        raise ValueError(f"variable index {i} outside 1..{g.d}")
    return g._new({u[1:]: c for u, c in g.terms.items() if u and u[0] == i})


def _as_scalar(c):
    if isinstance(c, NcPolynomial):
        if set(c.terms) - {()}:
            raise ValueError("constant term must be a scalar to be inverted")
        return c.constant_term()
    return c


def mul_inverse(g: NcSeries) -> NcSeries:
    """Multiplicative inverse via ``g0^{-1} * sum_k (1 - g/g0)^k``."""
    if not isinstance(g, NcSeries):
        raise TypeError("mul_inverse needs a truncated series")
    g0 = _as_scalar(g.constant_term())
    if not g0:
        raise ZeroDivisionError("series with zero constant term has no multiplicative inverse")
    inv0 = 1 / Fraction(g0)
    one = g._new({(): 1})
    nilpotent = one - g * inv0
    if nilpotent.constant_term():
        nilpotent = nilpotent._new({u: c for u, c in nilpotent.terms.items() if u})
    result = one
    for _ in range(g.max_degree):
        result = one + nilpotent * result
    return result * inv0


def _check_tuple(h: Sequence[NcSeries], d: int | None = None):
    if not h:
        raise ValueError("empty series tuple")
    first = h[0]
    for s in h:
        if not isinstance(s, NcSeries) or s.d != first.d or s.max_degree != first.max_degree:
            raise ValueError("series tuple members must share d and max_degree")
    if d is not None and len(h) != d:
        raise ValueError(f"expected {d} series, got {len(h)}")


def compose(g: NcSeries, h: Sequence[NcSeries]) -> NcSeries:
    """Substitute ``h[j-1]`` for ``z_j`` in every monomial of ``g``, keeping order."""
    _check_tuple(h, g.d)
    if h[0].max_degree != g.max_degree:
        raise ValueError("composition requires equal truncation degrees")
    for j, s in enumerate(h, 1):
        if s.constant_term():
            raise ValueError(f"component {j} of the inner tuple has a nonzero constant term")
    cap = g.max_degree
    one = h[0]._new({(): 1})
    prefix = {(): one}

    def power(u):
        if u not in prefix:
            prefix[u] = power(u[:-1]) * h[u[-1] - 1]
        return prefix[u]

    out = h[0]._new({})
    for u, c in sorted(g.terms.items(), key=lambda t: len(t[0])):
        if len(u) > cap:
            continue
        p = power(u)
        if p:
            out = out + p * c if not isinstance(c, NcPolynomial) else out + _coeff_times(c, p)
    return out


def _coeff_times(c: NcPolynomial, p: NcSeries) -> NcSeries:
    return p._new({u: c * v for u, v in p.terms.items()})


def compose_tuple(g: Sequence[NcSeries], h: Sequence[NcSeries]) -> SeriesTuple:
    return tuple(compose(gi, h) for gi in g)


def comp_inverse(h: Sequence[NcSeries]) -> SeriesTuple:
    """Compositional inverse of a tuple ``h_i = z_i + higher order terms``.

    Fixed-point iteration ``k_i <- z_i - H_i(k)`` with ``H_i = h_i - z_i``;
    each pass fixes one more degree.
    """
    _check_tuple(h)
    d, cap = h[0].d, h[0].max_degree
    if len(h) != d:
        raise ValueError("tuple length must equal the number of variables")
    ident = identity_tuple(d, cap)
    for i, s in enumerate(h):
        linear = s.homogeneous(1)
        if s.constant_term() or linear != ident[i].homogeneous(1):
            raise ValueError(f"component {i + 1} does not start with z_{i + 1}")
    higher = tuple(s - z for s, z in zip(h, ident))
    k = ident
    for _ in range(cap):
        k = tuple(z - compose(hi, k) for z, hi in zip(ident, higher))
    return k
