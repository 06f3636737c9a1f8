"""Named example families of free Meixner states.

Most constructors return :class:`MeixnerData`.  The multinomial state has a
degenerate, non-orthonormal model and is handled by its own small exact
linear model on ``d + 1`` generators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactla
from .fock import DataError, MeixnerData
from .moments import MomentFunctional, boxplus_power, moments_to_cumulants
from .ncpoly import NcSeries, left_derivative
from .scalars import identity, q, words_upto


def _e(d, i, j):
    m = [[0] * d for _ in range(d)]
    m[i - 1][j - 1] = 1
    return m


def semicircular(d: int) -> MeixnerData:
    return MeixnerData(d, [[0] * d for _ in range(d)], [[[0] * d for _ in range(d)] for _ in range(d)])


def default_poisson_T(d: int):
    """``T_i = E_ii + E_{i,i+1} + E_{i+1,i}``; a non-commuting family for d >= 2."""
    T = []
    for i in range(1, d + 1):
        m = _e(d, i, i)
        if i < d:
            m[i - 1][i] = m[i][i - 1] = 1
        T.append(m)
    return T


def free_poisson(d: int, T=None) -> MeixnerData:
    T = default_poisson_T(d) if T is None else T
    return MeixnerData(d, [[0] * d for _ in range(d)], T)


def free_product_family(b: Sequence, c: Sequence) -> MeixnerData:
    """``C_ij = delta_ij c_i`` and ``T_i = b_i E_ii``."""
    d = len(b)
    if len(c) != d:
        raise ValueError("b and c must have the same length")
    C = [[q(c[i]) if i == j else 0 for j in range(d)] for i in range(d)]
    T = [[[q(b[i]) if a == i == k else 0 for k in range(d)] for a in range(d)] for i in range(d)]
    return MeixnerData(d, C, T)


def exponentiated_semicircular(b: Sequence, c: Sequence) -> MeixnerData:
    """``C_ij = c_i`` and ``T_i = b_i I``."""
    d = len(b)
    if len(c) != d:
        raise ValueError("b and c must have the same length")
    C = [[q(c[i])] * d for i in range(d)]
    T = [[[q(b[i]) * x for x in row] for row in identity(d)] for i in range(d)]
    return MeixnerData(d, C, T)


def simple_quadratic_matrices(d: int, c) -> list:
    """Explicit tracial families with constant ``C_ij = c`` for d = 2, 3, 4."""
    c = q(c)
    if d == 2:
        return [[[c + 1, 0], [0, 1]], [[0, 1], [1, 0]]]
    if d == 3:
        return [
            [[0, c, 0], [c, 0, 0], [0, 0, 0]],
            [[c, 0, 0], [0, c + 1, 0], [0, 0, 1]],
            [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        ]
    if d == 4:
        return [
            [[c, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]],
            [[0, 0, 0, 0], [0, 0, c, 0], [0, c, 0, 0], [0, 0, 0, 0]],
            [[1, 0, 0, 0], [0, c, 0, 0], [0, 0, c + 1, 0], [0, 0, 0, 1]],
            [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 1], [1, 0, 1, 0]],
        ]
    raise ValueError("explicit matrices are registered for d = 2, 3, 4 only")


def simple_quadratic(c, T=None, d: int | None = None) -> MeixnerData:
    """Constant ``C_ij = c``; ``T`` must satisfy ``T_i e_j = T_j e_i`` and
    ``[T_i, T_j] = c (E_ij - E_ji)``."""
    from .meixner import tracial_conditions

    c = q(c)
    if T is None:
        T = simple_quadratic_matrices(d, c)
    d = len(T)
    data = MeixnerData(d, [[c] * d for _ in range(d)], T)
    rep = tracial_conditions(data, length=2)
    if not rep.extra["conditions_hold"]:
        bad = [ch.name for ch in rep.failures() if ch.name.startswith("T_i")]
        raise DataError(f"T fails the simple quadratic conditions: {', '.join(bad)}")
    return data


# -- multinomial ------------------------------------------------------------------

@dataclass
class MultinomialModel:
    """``d`` projections summing to one, as operators on ``span{Omega, e_1..e_d}``.

    Index 0 of every vector is the vacuum.  ``Y[i]`` is the matrix of
    ``Y_{i+1}`` acting on coefficient columns.
    """

    d: int
    p: tuple
    Y: list
    gram: list

    def apply(self, i: int, v: Sequence[Fraction]) -> list:
        m = self.Y[i - 1]
        return [sum((m[a][b] * v[b] for b in range(self.d + 1)), Fraction(0)) for a in range(self.d + 1)]

    def moment(self, u) -> Fraction:
        v = [Fraction(1)] + [Fraction(0)] * self.d
        for i in reversed(tuple(u)):
            v = self.apply(i, v)
        return v[0]

    def moment_table(self, N: int) -> MomentFunctional:
        vals = {}
        for u in words_upto(self.d, N):
            if u:
                x = self.moment(u)
                if x:
                    vals[u] = x
        return MomentFunctional(self.d, N, vals)

    def vanishes_mod_kernel(self, m) -> bool:
        """``gram . m = 0``: every column of ``m`` has seminorm zero."""
        k = self.d + 1
        return all(sum(self.gram[a][b] * m[b][j] for b in range(k)) == 0 for a in range(k) for j in range(k))

    def kernel_checks(self) -> dict:
        k = self.d + 1
        mul = lambda a, b: [[sum(a[i][l] * b[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
        sub = lambda a, b: [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]
        Y = self.Y
        total = [[sum(Y[i][a][b] for i in range(self.d)) for b in range(k)] for a in range(k)]
        out = {
            "idempotent": all(self.vanishes_mod_kernel(sub(mul(y, y), y)) for y in Y),
            "orthogonal": all(self.vanishes_mod_kernel(mul(Y[i], Y[j]))
                              for i in range(self.d) for j in range(self.d) if i != j),
            "sum is identity": self.vanishes_mod_kernel(sub(total, identity(k))),
        }
        rep = exactla.ldl_psd(self.gram)
        out["gram psd of rank d"] = rep.positive and rep.rank == self.d
        return out


def multinomial(p: Sequence) -> MultinomialModel:
    p = tuple(q(x) for x in p)
    if not p or any(x <= 0 for x in p) or sum(p) != 1:
        raise DataError("p must be positive and sum to 1")
    d = len(p)
    Y = []
    for i in range(1, d + 1):
        m = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
        pi = p[i - 1]
        # Y_i Omega = e_i + p_i Omega
        m[i][0] += 1
        m[0][0] += pi
        for j in range(1, d + 1):
            s = 1 - pi if j == i else -p[j - 1]
            m[i][j] += s
            m[0][j] += s * pi
        Y.append(m)
    G = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    G[0][0] = Fraction(1)
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            G[i][j] = p[i - 1] * (1 - p[i - 1]) if i == j else -p[i - 1] * p[j - 1]
    return MultinomialModel(d, p, Y, G)


def multinomial_pde_residual(model: MultinomialModel, N: int = 4) -> dict:
    """Residuals of ``D_iD_jR = delta_ij(D_iR + p_i) - (D_iR + p_i)(D_jR + p_j)``.

    ``R`` is the cumulant series of the centered variables ``Y_i - p_i``,
    i.e. the cumulant series of ``Y`` without its linear part.
    """
    d = model.d
    r = moments_to_cumulants(model.moment_table(N + 2))
    R = NcSeries(d, N + 2, {u: v for u, v in r.values.items() if len(u) >= 2})
    out = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            Di = left_derivative(i, R) + model.p[i - 1]
            Dj = left_derivative(j, R) + model.p[j - 1]
            lhs = left_derivative(i, left_derivative(j, R))
            rhs = (Di if i == j else R._new({})) - Di * Dj
            out[(i, j)] = (lhs - rhs).truncate(N)
    return out


def free_multinomial(p: Sequence, t, N: int = 6) -> MomentFunctional:
    t = q(t)
    if t < 1:
        raise DataError("free multinomial states need t >= 1")
    return boxplus_power(multinomial(p).moment_table(N), t)


def free_pair_sum_moment(model: MultinomialModel, u) -> Fraction:
    """Moment of ``Y_i' + Y_i''`` for two free copies, in the reduced free product.

    Vectors are combinations of alternating words ``((copy, a), ...)`` of
    non-vacuum generators; the empty word is the vacuum.
    """
    d = model.d

    def act(copy, i, vec):
        m = model.Y[i - 1]
        out: dict = {}
        for w, c in vec.items():
            if w and w[0][0] == copy:
                col, rest = w[0][1], w[1:]
            else:
                col, rest = 0, w
            for a in range(d + 1):
                x = m[a][col]
                if x:
                    key = rest if a == 0 else ((copy, a),) + rest
                    out[key] = out.get(key, 0) + x * c
        return {w: c for w, c in out.items() if c}

    vec = {(): Fraction(1)}
    for i in reversed(tuple(u)):
        a, b = act(1, i, vec), act(2, i, vec)
        for w, c in b.items():
            a[w] = a.get(w, 0) + c
        vec = {w: c for w, c in a.items() if c}
    return vec.get((), Fraction(0))


# -- one-dimensional densities (floating point) -----------------------------------

def _support(b, c, t):
    r2 = 4 * (t + c)
    if r2 <= 0:
        raise ValueError("t + c must be positive for an absolutely continuous part")
    r = math.sqrt(r2)
    return b - r, b + r


def one_dim_density(b: float, c: float, t: float, x: float) -> float:
    """Absolutely continuous part of the one-dimensional free Meixner law
    with mean 0 and variance ``t``.

    The overall factor is ``1 / (2 pi t)``; with ``1 / (2 pi)`` the
    semicircle of variance ``t`` would have mass ``t``.
    """
    lo, hi = _support(b, c, t)
    if not lo <= x <= hi:
        return 0.0
    den = 1 + (b / t) * x + (c / t ** 2) * x * x
    num = math.sqrt(max(0.0, 4 * (t + c) - (x - b) ** 2))
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at x")
    return num / (2 * math.pi * t * den)


def _interior_pole(b, c, t, lo, hi):
    A, B, C0 = c / t ** 2, b / t, 1.0
    roots = []
    if A == 0:
        if B != 0:
            roots = [-C0 / B]
    else:
        disc = B * B - 4 * A * C0
        if disc >= 0:
            s = math.sqrt(disc)
            roots = [(-B - s) / (2 * A), (-B + s) / (2 * A)]
    tol = 1e-12 * max(1.0, hi - lo)
    return [r for r in roots if lo + tol < r < hi - tol]


def density_moments(b: float, c: float, t: float, k: int = 4) -> dict:
    """Mass and moments ``m_1..m_k`` of the continuous part by quadrature.

    Integrates in the angle ``x = b + 2 sqrt(t + c) cos(theta)``, which
    removes the square-root endpoints; an integrable pole sitting exactly on
    an endpoint becomes a removable singularity.
    """
    from scipy.integrate import quad

    lo, hi = _support(b, c, t)
    poles = _interior_pole(b, c, t, lo, hi)
    if poles:
        return {"singular": True, "pole": poles[0]}
    r = (hi - lo) / 2

    def f(theta, n):
        x = b + r * math.cos(theta)
        s = r * math.sin(theta)
        den = 1 + (b / t) * x + (c / t ** 2) * x * x
        return s * s / den * x ** n / (2 * math.pi * t)

    out = {"singular": False, "support": (lo, hi)}
    for n in range(k + 1):
        val, err = quad(f, 0.0, math.pi, args=(n,), epsabs=1e-13, epsrel=1e-13, limit=200)
        out["mass" if n == 0 else f"m{n}"] = val
    return out


def density_check(b, c, t, tol_mass: float = 1e-8, tol_moment: float = 1e-6) -> dict:
    """Compare quadrature moments with operator moments when there are no atoms."""
    res = density_moments(float(b), float(c), float(t))
    if res.get("singular"):
        return {"status": "singular", **res}
    if abs(res["mass"] - 1) > tol_mass:
        return {"status": "atoms present", **res}
    from .meixner import boxplus_fock_moment
    data = MeixnerData(1, [[q(c)]], [[[q(b)]]])
    ops = {f"m{n}": float(boxplus_fock_moment(data, q(t), (1,) * n)) for n in range(1, 5)}
    ok = all(abs(res[k] - v) <= tol_moment for k, v in ops.items())
    return {"status": "match" if ok else "mismatch", "operator": ops, **res}


# -- registry ------------------------------------------------------------------------

NAMES = ("semicircular", "free-poisson", "free-product", "exp-semicircular", "multinomial",
         "free-multinomial", "simple-quadratic-d2", "simple-quadratic-d3", "simple-quadratic-d4")


def _default_p(d):
    return [Fraction(1, d)] * d


def get(name: str, d: int = 2, c=None, b=None, t=None, p=None, N: int = 6):
    """Catalog entry by name; returns MeixnerData, MultinomialModel or MomentFunctional."""
    if name == "semicircular":
        return semicircular(d)
    if name == "free-poisson":
        return free_poisson(d)
    if name == "free-product":
        return free_product_family(b or [1] * d, [c if c is not None else 0] * d)
    if name == "exp-semicircular":
        return exponentiated_semicircular(b or [1] * d, [c if c is not None else 0] * d)
    if name == "multinomial":
        return multinomial(p or _default_p(d))
    if name == "free-multinomial":
        return free_multinomial(p or _default_p(d), t if t is not None else 1, N)
    if name.startswith("simple-quadratic-d"):
        return simple_quadratic(c if c is not None else 1, d=int(name[-1]))
    raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}")


def meixner_catalog() -> list:
    """Named MeixnerData instances used by the verification suites."""
    half = Fraction(1, 2)
    out = [
        ("semicircular d=1", semicircular(1)),
        ("semicircular d=2", semicircular(2)),
        ("semicircular d=3", semicircular(3)),
        ("free-poisson d=1", free_poisson(1, [[[1]]])),
        ("free-poisson d=2", free_poisson(2)),
        ("free-poisson d=3", free_poisson(3)),
        ("free-product b=(1,-1) c=(1/2,0)", free_product_family([1, -1], [half, 0])),
        ("free-product b=(2,0,1) c=(-1,1,0)", free_product_family([2, 0, 1], [-1, 1, 0])),
        ("exp-semicircular b=(1,1) c=(1,2)", exponentiated_semicircular([1, 1], [1, 2])),
        ("exp-semicircular b=(1,-1) c=(-1,1/2)", exponentiated_semicircular([1, -1], [-1, half])),
    ]
    for d in (2, 3, 4):
        for c in (Fraction(1), -half):
            out.append((f"simple-quadratic-d{d} c={c}", simple_quadratic(c, d=d)))
    return out
