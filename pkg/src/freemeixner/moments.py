"""Moment and free cumulant functionals, truncated at a fixed degree.

A functional is stored as a table of its values on monomials ``x_u`` with
``|u| <= max_degree``; absent multi-indices have value zero.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from . import exactla
from .ncpoly import NcPolynomial, NcSeries
from .partitions import NcPartition, PartitionClass, enumerate_partitions
from .scalars import fmt, parse_word, q, word_key, words, words_upto


class FunctionalError(ValueError):
    pass


class _Functional:
    def __init__(self, d: int, max_degree: int, values: Mapping):
        self.d = int(d)
        self.max_degree = int(max_degree)
        table = {}
        for u, v in values.items():
            u = tuple(u)
            if len(u) > self.max_degree:
                continue
            if any(not 1 <= i <= self.d for i in u):
                raise FunctionalError(f"multi-index {u} has entries outside 1..{self.d}")
            v = q(v)
            if v:
                table[u] = v
        self.values = table

    def __getitem__(self, u) -> Fraction:
        u = tuple(u)
        if len(u) > self.max_degree:
            raise KeyError(f"|u| = {len(u)} exceeds max_degree {self.max_degree}")
        return self.values.get(u, Fraction(0))

    def __eq__(self, other):
        return (type(self) is type(other) and self.d == other.d
                and self.max_degree == other.max_degree and self.values == other.values)

    def __repr__(self):
        return f"{type(self).__name__}(d={self.d}, max_degree={self.max_degree}, {len(self.values)} nonzero)"

    def truncate(self, n: int):
        if n > self.max_degree:
            raise ValueError("cannot extend a truncated functional")
        return type(self)(self.d, n, self.values)

    def apply(self, p: NcPolynomial) -> Fraction:
        """Evaluate on a polynomial by linearity."""
        return sum((c * self[u] for u, c in p.terms.items()), Fraction(0))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "max_degree": self.max_degree,
            "terms": {word_key(u): fmt(v) for u, v in sorted(self.values.items(), key=lambda t: (len(t[0]), t[0]))},
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["d"], data["max_degree"], {parse_word(k): Fraction(v) for k, v in data["terms"].items()})

    def to_csv(self, min_degree: int = 1) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["multi_index", "value"])
        for n in range(min_degree, self.max_degree + 1):
            for u in words(self.d, n):
                w.writerow([word_key(u), fmt(self[u])])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, d: int, max_degree: int, **kw):
        rows = list(csv.reader(io.StringIO(text)))
        return cls(d, max_degree, {parse_word(k): Fraction(v) for k, v in rows[1:]}, **kw)

    def as_series(self) -> NcSeries:
        """Generating series ``sum_u value(u) z_u`` without the constant term."""
        return NcSeries(self.d, self.max_degree, {u: v for u, v in self.values.items() if u})


class MomentFunctional(_Functional):
    """Joint moments ``phi[x_u]``; unital and invariant under word reversal."""

    def __init__(self, d, max_degree, values, check: bool = True):
        values = dict(values)
        values[()] = values.get((), 1)
        super().__init__(d, max_degree, values)
        if check:
            if self.values.get(()) != 1:
                raise FunctionalError("moment functional must satisfy phi[1] = 1")
            for u, v in self.values.items():
                if self.values.get(u[::-1], Fraction(0)) != v:
                    raise FunctionalError(f"phi[x_u] != phi[x_u*] at u = {u}")


class CumulantFunctional(_Functional):
    """Free cumulants ``R[x_u]``; ``R[1] = 0``."""

    def __init__(self, d, max_degree, values):
        values = {u: v for u, v in dict(values).items() if tuple(u)}
        super().__init__(d, max_degree, values)


# -- the moment-cumulant transform ------------------------------------------

@lru_cache(maxsize=None)
def _first_blocks(n: int):
    """For every block containing position 0 of ``range(n)``: (block, gaps).

    Fixing the block of the first point splits a non-crossing partition into
    that block plus arbitrary non-crossing partitions of the gaps it leaves.
    """
    out = []
    for r in range(n):
        for rest in itertools.combinations(range(1, n), r):
            block = (0,) + rest
            ends = list(block[1:]) + [n]
            gaps = tuple((a + 1, b) for a, b in zip(block, ends) if b > a + 1)
            out.append((block, gaps))
    return tuple(out)


def cumulants_to_moments(r: CumulantFunctional) -> MomentFunctional:
    """``phi[x_u] = sum over NC(n) of products of R over the blocks``."""
    m = {(): Fraction(1)}
    for n in range(1, r.max_degree + 1):
        fb = _first_blocks(n)
        for u in words(r.d, n):
            total = Fraction(0)
            for block, gaps in fb:
                c = r.values.get(tuple(u[i] for i in block))
                if not c:
                    continue
                for a, b in gaps:
                    g = m.get(u[a:b])
                    if not g:
                        c = 0
                        break
                    c *= g
                total += c
            if total:
                m[u] = total
    return MomentFunctional(r.d, r.max_degree, m, check=False)


def moments_to_cumulants(m: MomentFunctional) -> CumulantFunctional:
    """Solve the defining recursion for ``R[x_u]`` degree by degree."""
    r: dict = {}
    for n in range(1, m.max_degree + 1):
        fb = _first_blocks(n)
        for u in words(m.d, n):
            total = m.values.get(u, Fraction(0))
            for block, gaps in fb:
                if len(block) == n:
                    continue
                c = r.get(tuple(u[i] for i in block))
                if not c:
                    continue
                for a, b in gaps:
                    g = m.values.get(u[a:b])
                    if not g:
                        c = 0
                        break
                    c *= g
                total -= c
            if total:
                r[u] = total
    return CumulantFunctional(m.d, m.max_degree, r)


def partition_sum(u: Sequence[int], f: Callable[[tuple], Fraction],
                  cls: PartitionClass = PartitionClass.NC) -> Fraction:
    """``sum over pi in cls(n) of prod over blocks V of f(u restricted to V)``.

    This is the brute-force form of the moment-cumulant relation, used as an
    independent check of the recursive transforms.
    """
    u = tuple(u)
    total = Fraction(0)
    for p in enumerate_partitions(range(len(u)), cls):
        prod = Fraction(1)
        for b in p.blocks:
            prod *= f(tuple(u[i] for i in b))
            if not prod:
                break
        total += prod
    return total


# -- constructions ------------------------------------------------------------

def free_product(factors: Sequence[MomentFunctional]) -> MomentFunctional:
    """Free product of one-variable functionals: mixed cumulants vanish."""
    if not factors:
        raise ValueError("need at least one factor")
    for f in factors:
        if f.d != 1:
            raise ValueError("free_product factors must be one-dimensional")
    N = min(f.max_degree for f in factors)
    d = len(factors)
    r = {}
    for i, f in enumerate(factors, 1):
        kappa = moments_to_cumulants(f.truncate(N))
        for n in range(1, N + 1):
            v = kappa[(1,) * n]
            if v:
                r[(i,) * n] = v
    return cumulants_to_moments(CumulantFunctional(d, N, r))


def boxplus_power(m: MomentFunctional, t) -> MomentFunctional:
    """Free convolution power: every cumulant multiplied by ``t``."""
    t = q(t)
    if t <= 0:
        raise ValueError("t must be positive")
    r = moments_to_cumulants(m)
    return cumulants_to_moments(CumulantFunctional(m.d, m.max_degree, {u: t * v for u, v in r.values.items()}))


def gram_matrix(m: MomentFunctional, k: int):
    """``G[u, v] = phi[x_{u reversed} x_v]`` over all ``|u|, |v| <= k``."""
    if 2 * k > m.max_degree:
        raise ValueError(f"Gram degree {k} needs moments to degree {2 * k}, have {m.max_degree}")
    basis = list(words_upto(m.d, k))
    return basis, [[m[u[::-1] + v] for v in basis] for u in basis]


def check_positivity(m: MomentFunctional, k: int, report: bool = False):
    """Is the degree-``k`` Gram matrix positive semidefinite?"""
    basis, g = gram_matrix(m, k)
    rep = exactla.ldl_psd(g)
    if report:
        if rep.witness is not None:
            rep.reason += f" (multi-index {basis[rep.witness]})"
        return rep
    return rep.positive


def tracial_witness(m: MomentFunctional, max_len: int | None = None):
    """First multi-index whose moment changes under a cyclic rotation, or None."""
    top = m.max_degree if max_len is None else min(max_len, m.max_degree)
    for n in range(2, top + 1):
        for u in words(m.d, n):
            v = m[u]
            for s in range(1, n):
                w = u[s:] + u[:s]
                if m[w] != v:
                    return u, w
    return None


def is_tracial(m: MomentFunctional) -> bool:
    return tracial_witness(m) is None


def transform(m: MomentFunctional, a) -> MomentFunctional:
    """Linear change of variables: ``phi^A[P(x)] = phi[P(A^T x)]``.

    Expanded multilinearly one tensor slot at a time, so it applies to any
    moment table, not only to operator-model states.
    """
    a = [[q(x) for x in row] for row in a]
    d = m.d
    if len(a) != d or any(len(row) != d for row in a):
        raise ValueError(f"matrix must be {d}x{d}")
    if exactla.det(a) == 0:
        raise ValueError("change of variables must be invertible")
    out = {(): Fraction(1)}
    for n in range(1, m.max_degree + 1):
        tensor = {u: m.values[u] for u in words(d, n) if u in m.values}
        for slot in range(n):
            new: dict = {}
            for w, v in tensor.items():
                row = a[w[slot] - 1]
                for j in range(d):
                    if row[j]:
                        key = w[:slot] + (j + 1,) + w[slot + 1:]
                        new[key] = new.get(key, 0) + row[j] * v
            tensor = new
        out.update({u: v for u, v in tensor.items() if v})
    return MomentFunctional(d, m.max_degree, out)


def dilate(m: MomentFunctional, t: Sequence) -> MomentFunctional:
    """``psi[P(x_1, ..., x_d)] = phi[P(t_1 x_1, ..., t_d x_d)]``."""
    t = [q(x) for x in t]
    diag = [[t[i] if i == j else Fraction(0) for j in range(len(t))] for i in range(len(t))]
    return transform(m, diag)


def from_cumulants(d: int, max_degree: int, fn: Callable[[tuple], Fraction]) -> MomentFunctional:
    r = {}
    for u in words_upto(d, max_degree):
        if u:
            v = fn(u)
            if v:
                r[u] = v
    return cumulants_to_moments(CumulantFunctional(d, max_degree, r))


def univariate(moment_list: Iterable) -> MomentFunctional:
    """One-variable functional from ``(m_1, m_2, ...)``."""
    ms = [q(x) for x in moment_list]
    return MomentFunctional(1, len(ms), {(1,) * (k + 1): v for k, v in enumerate(ms)})
