"""Monic orthogonal polynomials, the cumulant PDE, the generating function,
a Gram-Schmidt oracle, convolution powers and traciality for Fock states.

Every check returns a :class:`Report` of named pass/fail entries with a
witness on failure, so callers can serialize or aggregate them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .fock import (MeixnerData, apply_polynomial, fock_cumulant_table, fock_moment,
                   fock_moment_table, gram_inner)
from .moments import MomentFunctional, is_tracial, tracial_witness, transform
from .ncpoly import (NcPolynomial, NcSeries, comp_inverse, compose, left_derivative,
                     mul_inverse, variable)
from .scalars import fmt, matmul, transpose, word_key, words, words_upto


# -- reports -------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, NcPolynomial):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, name, passed, witness=None, detail=""):
        self.checks.append(Check(name, bool(passed), witness, detail))
        return passed

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {"pass": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.extra:
            out.update({k: _jsonable(v) for k, v in self.extra.items()})
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)


# -- MOPS ----------------------------------------------------------------------

@dataclass(frozen=True)
class RecursionCoefficients:
    """Read-only view of the constant recursion coefficients of a Fock state."""

    data: MeixnerData

    def B(self, i, j, k) -> Fraction:
        return self.data.B(i, j, k)

    def C(self, i, j) -> Fraction:
        return self.data.c(i, j)

    def side_conditions(self) -> Report:
        d = self.data.d
        rep = Report()
        r = range(1, d + 1)
        bad = next(((i, j, k) for i in r for j in r for k in r if self.B(i, j, k) != self.B(i, k, j)), None)
        rep.add("B symmetric in lower indices", bad is None, bad)
        bad = None
        for j in r:
            for k in r:
                if any(self.B(i, j, k) for i in r) and any(self.C(j, w) != self.C(k, w) for w in r):
                    bad = (j, k)
        rep.add("B support compatible with C", bad is None, bad)
        return rep


@dataclass
class MopsFamily:
    d: int
    N: int
    polys: dict

    def __getitem__(self, u) -> NcPolynomial:
        return self.polys[tuple(u)]

    def is_monic(self) -> bool:
        return all(p[u] == 1 and p.degree() == len(u) for u, p in self.polys.items())

    def to_json(self) -> dict:
        return {"d": self.d, "N": self.N,
                "polys": {word_key(u): p.to_json()["terms"] for u, p in sorted(self.polys.items(), key=lambda t: (len(t[0]), t[0]))}}


def mops_from_data(data: MeixnerData, N: int) -> MopsFamily:
    """Solve the constant-coefficient recursion for ``P_u``, ``|u| <= N``."""
    d = data.d
    x = [None] + [variable(d, i) for i in range(1, d + 1)]
    P = {(): NcPolynomial.constant(d, 1)}
    for i in range(1, d + 1):
        P[(i,)] = x[i]
    for n in range(2, N + 1):
        for w in words(d, n):
            i, j, u = w[0], w[1], w[2:]
            p = x[i] * P[(j,) + u]
            for k in range(1, d + 1):
                b = data.B(i, j, k)
                if b:
                    p = p - P[(k,) + u] * b
            if i == j:
                p = p - P[u] * ((1 + data.c(i, u[0])) if u else 1)
            P[w] = p
    return MopsFamily(d, N, P)


def _gram_vectors(m: MomentFunctional, polys: dict, basis: list) -> dict:
    """For each key, the row ``b -> phi[P* x_b]`` over the monomial basis."""
    out = {}
    for key, p in polys.items():
        row = {}
        for b in basis:
            s = Fraction(0)
            for a, c in p.terms.items():
                v = m.values.get(a[::-1] + b)
                if v:
                    s += c * v
            if s:
                row[b] = s
        out[key] = row
    return out


def _pair(row: dict, p: NcPolynomial) -> Fraction:
    return sum((c * row[b] for b, c in p.terms.items() if b in row), Fraction(0))


def verify_orthogonality(data: MeixnerData, fam: MopsFamily, N: int | None = None,
                         moments: MomentFunctional | None = None, vector_degree: int | None = None) -> Report:
    """``phi[P_u* P_v] = delta_uv <e_u, e_u>_C`` and ``P_u(X) Omega = e_u``."""
    N = fam.N if N is None else N
    m = moments or fock_moment_table(data, 2 * N)
    rep = Report()
    polys = {u: p for u, p in fam.polys.items() if len(u) <= N}
    basis = list(words_upto(data.d, N))
    rows = _gram_vectors(m, polys, basis)
    bad = None
    for u in polys:
        for v in polys:
            got = _pair(rows[u], polys[v])
            want = gram_inner(data, u, v)
            if got != want:
                bad = (word_key(u), word_key(v), got, want)
                break
        if bad:
            break
    rep.add(f"orthogonality to degree {N}", bad is None, bad)

    top = N if vector_degree is None else vector_degree
    src = fam if top <= fam.N else mops_from_data(data, top)
    bad = None
    for u, p in src.polys.items():
        if len(u) > top:
            continue
        vec = apply_polynomial(data, p)
        if vec != {u: 1}:
            bad = word_key(u)
            break
    rep.add(f"P_u(X) Omega = e_u to degree {top}", bad is None, bad)
    rep.add("monic", src.is_monic())
    return rep


# -- cumulant series, PDE and generating function --------------------------------

def cumulant_series(data: MeixnerData, N: int) -> NcSeries:
    return fock_cumulant_table(data, N).as_series()


def pde_residual(data: MeixnerData, i: int, j: int, N: int, R: NcSeries | None = None) -> NcSeries:
    """``D_i D_j R - delta_ij - sum_k B_ij^k D_k R - C_ij D_i R D_j R`` up to degree N."""
    R = cumulant_series(data, N + 2) if R is None else R
    d = data.d
    Dj = left_derivative(j, R)
    lhs = left_derivative(i, Dj)
    rhs = R._new({(): 1 if i == j else 0})
    for k in range(1, d + 1):
        b = data.B(i, j, k)
        if b:
            rhs = rhs + left_derivative(k, R) * b
    c = data.c(i, j)
    if c:
        rhs = rhs + left_derivative(i, R) * Dj * c
    return (lhs - rhs).truncate(N)


def pde_check(data: MeixnerData, N: int, R: NcSeries | None = None) -> Report:
    R = cumulant_series(data, N + 2) if R is None else R
    rep = Report()
    bad = None
    for i in range(1, data.d + 1):
        for j in range(1, data.d + 1):
            res = pde_residual(data, i, j, N, R)
            if res:
                u = min(res.terms, key=lambda w: (len(w), w))
                bad = {"i": i, "j": j, "z": word_key(u), "residual": res.terms[u]}
                break
        if bad:
            break
    rep.add(f"PDE residual zero to degree {N}", bad is None, bad)
    return rep


def _x_dot(d: int, V: Sequence[NcSeries]) -> NcSeries:
    """``sum_i x_i V_i`` with polynomial-in-x coefficients."""
    out: dict = {}
    for i, s in enumerate(V, 1):
        xi = variable(d, i)
        for w, c in s.terms.items():
            t = xi * c
            out[w] = out[w] + t if w in out else t
    return V[0]._new(out)


def generating_function_check(data: MeixnerData, N: int, fam: MopsFamily | None = None) -> Report:
    """Compare ``(1 - x.V + R(V))^{-1}``, ``V = (DR)^{<-1>}``, with the MOPS."""
    if N > 5:
        raise ValueError("generating_function_check is limited to N <= 5")
    d = data.d
    fam = fam or mops_from_data(data, N)
    R = cumulant_series(data, N + 1)
    DR = tuple(left_derivative(i, R).truncate(N) for i in range(1, d + 1))
    rep = Report()
    lin = all(DR[i - 1].homogeneous(1) == variable(d, i, N).homogeneous(1) for i in range(1, d + 1))
    rep.add("DR has identity linear part", lin and not any(s.constant_term() for s in DR))
    V = comp_inverse(DR)
    RV = compose(R.truncate(N), V)
    one = RV._new({(): 1})
    G = mul_inverse(one - _x_dot(d, V) + RV)
    bad = None
    for u in words_upto(d, N):
        got = G[u]
        want = fam[u]
        if want != got:
            bad = {"z": word_key(u), "series": got, "mops": want}
            break
    rep.add(f"generating function matches MOPS to degree {N}", bad is None, bad)

    F = mul_inverse(one + RV)
    U = tuple(v * F for v in V)
    low = F.truncate(min(1, N))
    rep.add("F = 1 + terms of degree >= 2", low == low._new({(): 1}))
    rep.add("U_i = z_i + higher terms",
            all(U[i - 1].truncate(1) == variable(d, i, 1) for i in range(1, d + 1)))
    G2 = F * mul_inverse(one - _x_dot(d, U))
    rep.add("G = F (1 - x.U)^{-1}", G2 == G)
    return rep


# -- Gram-Schmidt oracle ------------------------------------------------------------

@dataclass
class GramSchmidtResult:
    family: MopsFamily
    exists_to: int              # largest degree at which a MOPS was confirmed
    obstruction: tuple | None   # (u, v, <Q_u, Q_v>) at the first failing degree
    null: list                  # multi-indices whose polynomial has seminorm zero
    norms: dict
    B: dict                     # (i, w, u) -> coefficient of P_w in x_i P_u, |w| = |u|
    C: dict                     # u -> ||P_u||^2 / ||P_{u[1:]}||^2


def gram_schmidt_oracle(m: MomentFunctional, N: int) -> GramSchmidtResult:
    """Orthogonalize monomials degree by degree against ``phi``.

    Needs moments to degree ``2N``.  Zero-seminorm polynomials stay in the
    family but are excluded from the projection basis and listed in ``null``.
    """
    if 2 * N > m.max_degree:
        raise ValueError(f"need moments to degree {2 * N}, have {m.max_degree}")
    d = m.d
    basis = list(words_upto(d, N))
    P = {(): NcPolynomial.constant(d, 1)}
    rows = _gram_vectors(m, P, basis)
    norms = {(): Fraction(1)}
    null = []
    live = [()]
    exists_to, obstruction = 0, None
    for n in range(1, N + 1):
        level = {}
        for u in words(d, n):
            q = NcPolynomial(d, {u: 1})
            for w in live:
                coeff = rows[w].get(u, Fraction(0)) / norms[w]
                if coeff:
                    q = q - P[w] * coeff
            level[u] = q
        lrows = _gram_vectors(m, level, basis)
        keys = list(level)
        for a, u in enumerate(keys):
            for v in keys[a + 1:]:
                g = _pair(lrows[u], level[v])
                if g:
                    obstruction = (u, v, g)
                    break
            if obstruction:
                break
        if obstruction:
            break
        for u in keys:
            P[u] = level[u]
            rows[u] = lrows[u]
            norms[u] = _pair(lrows[u], level[u])
            if norms[u]:
                live.append(u)
            else:
                null.append(u)
        exists_to = n

    B, C = {}, {}
    fam = MopsFamily(d, exists_to, P)
    for u, p in P.items():
        if len(u) >= exists_to or not norms[u]:
            continue
        for i in range(1, d + 1):
            xp = variable(d, i) * p
            for w in words(d, len(u)):
                if norms[w]:
                    val = _pair(rows[w], xp) / norms[w]
                    if val:
                        B[(i, w, u)] = val
    for u in P:
        if u and norms[u[1:]]:
            C[u] = norms[u] / norms[u[1:]]
    return GramSchmidtResult(fam, exists_to, obstruction, null, norms, B, C)


def gram_schmidt_collapse(data: MeixnerData, N: int, moments: MomentFunctional | None = None) -> Report:
    """Gram-Schmidt on the Fock moments recovers ``B_ij^k`` and ``1 + C_ij``."""
    m = moments or fock_moment_table(data, 2 * N)
    gs = gram_schmidt_oracle(m, N)
    d = data.d
    rep = Report()
    rep.add(f"MOPS exists to degree {N}", gs.exists_to == N, gs.obstruction)
    bad = None
    for u in words_upto(d, N - 1):
        if not u or not gs.norms[u]:
            continue
        j, rest = u[0], u[1:]
        for i in range(1, d + 1):
            for w in words(d, len(u)):
                if not gs.norms[w]:
                    continue
                want = data.B(i, j, w[0]) if w[1:] == rest else Fraction(0)
                got = gs.B.get((i, w, u), Fraction(0))
                if got != want:
                    bad = {"i": i, "w": word_key(w), "u": word_key(u), "got": got, "want": want}
    rep.add("B_{i,(k,u),(j,w)} = B_ij^k delta_uw", bad is None, bad)
    bad = None
    for u, c in gs.C.items():
        want = 1 + data.c(u[0], u[1]) if len(u) >= 2 else Fraction(1)
        if c != want:
            bad = {"u": word_key(u), "got": c, "want": want}
    rep.add("C_(i,j,u) = 1 + C_ij", bad is None, bad)
    # the two families may differ only by zero-seminorm polynomials
    fam = mops_from_data(data, N)
    basis = list(words_upto(d, N))
    diffs = {u: gs.family[u] - fam[u] for u in gs.family.polys if gs.family[u] != fam[u]}
    rows = _gram_vectors(m, diffs, basis)
    bad = next((word_key(u) for u, p in diffs.items() if _pair(rows[u], p)), None)
    rep.add("Gram-Schmidt and recursion polynomials agree modulo null vectors", bad is None, bad)
    rep.extra["differ_by_null"] = sorted(word_key(u) for u in diffs)
    rep.extra["null"] = [word_key(u) for u in gs.null]
    return rep


# -- convolution powers -------------------------------------------------------------------

def boxplus_fock_moment(data: MeixnerData, t, u) -> Fraction:
    """Vacuum moment of ``X_i^(t) = a_i^+ + T_i + t a_i^- + ã_i``."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    return fock_moment(data, u, t=t)


def boxplus_fock_table(data: MeixnerData, t, N: int) -> MomentFunctional:
    return fock_moment_table(data, N, t=Fraction(t))


def boxplus_recursion(data: MeixnerData, t, N: int) -> MopsFamily:
    """MOPS of the convolution power: ``delta_ij t`` and ``(t + C_ij)``."""
    t = Fraction(t)
    d = data.d
    x = [None] + [variable(d, i) for i in range(1, d + 1)]
    P = {(): NcPolynomial.constant(d, 1)}
    for i in range(1, d + 1):
        P[(i,)] = x[i]
    for n in range(2, N + 1):
        for w in words(d, n):
            i, j, u = w[0], w[1], w[2:]
            p = x[i] * P[(j,) + u]
            for k in range(1, d + 1):
                b = data.B(i, j, k)
                if b:
                    p = p - P[(k,) + u] * b
            if i == j:
                p = p - P[u] * ((t + data.c(i, u[0])) if u else t)
            P[w] = p
    return MopsFamily(d, N, P)


# -- dilations ------------------------------------------------------------------------------

def dilate_family(fam: MopsFamily, t: Sequence) -> MopsFamily:
    """``Q_u(x) = t_u P_u(x / t)`` with ``t_u = prod t_{u(k)}``."""
    t = [Fraction(s) for s in t]
    out = {}
    for u, p in fam.polys.items():
        tu = Fraction(1)
        for i in u:
            tu *= t[i - 1]
        terms = {}
        for w, c in p.terms.items():
            tw = Fraction(1)
            for i in w:
                tw *= t[i - 1]
            terms[w] = c * tu / tw
        out[u] = NcPolynomial(fam.d, terms)
    return MopsFamily(fam.d, fam.N, out)


def dilated_recursion_check(data: MeixnerData, t: Sequence, N: int, literal: bool = False) -> Report:
    """Check the recursion satisfied by the dilated MOPS.

    The ``Q_(k,u)`` term carries ``t_i t_j / t_k B_ij^k``; with ``literal``
    the coefficient ``t_i B_ij^k`` is used instead, which agrees only when
    ``t_j = t_k`` wherever ``B_ij^k != 0``.
    """
    t = [Fraction(s) for s in t]
    d = data.d
    Q = dilate_family(mops_from_data(data, N), t).polys
    rep = Report()
    bad = None
    for n in range(1, N):
        for w in words(d, n):
            j, u = w[0], w[1:]
            for i in range(1, d + 1):
                lhs = variable(d, i) * Q[w]
                rhs = Q[(i,) + w]
                for k in range(1, d + 1):
                    b = data.B(i, j, k)
                    if b:
                        coef = t[i - 1] * b if literal else t[i - 1] * t[j - 1] / t[k - 1] * b
                        rhs = rhs + Q[(k,) + u] * coef
                if i == j:
                    rhs = rhs + Q[u] * (t[i - 1] ** 2 * ((1 + data.c(i, u[0])) if u else 1))
                if lhs != rhs:
                    bad = {"i": i, "w": word_key(w)}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("dilated recursion" + (" (literal coefficient)" if literal else ""), bad is None, bad)
    return rep


# -- traciality -------------------------------------------------------------------------------

def _col(m, j):
    return [row[j] for row in m]


def tracial_conditions(data: MeixnerData, length: int = 6, moments: MomentFunctional | None = None) -> Report:
    """Check ``T_i e_j = T_j e_i``, the commutator identity, and cyclic moments."""
    d = data.d
    T = data.T
    rep = Report()
    bad = None
    for i in range(d):
        for j in range(d):
            if _col(T[i], j) != _col(T[j], i):
                bad = (i + 1, j + 1)
                break
        if bad:
            break
    trace1 = rep.add("T_i e_j = T_j e_i", bad is None, bad)
    bad = None
    for i in range(d):
        for j in range(d):
            lhs = [[a - b for a, b in zip(r1, r2)]
                   for r1, r2 in zip(matmul(T[i], T[j]), matmul(T[j], T[i]))]
            want = [[Fraction(0)] * d for _ in range(d)]
            want[i][j] += data.C[j][i]
            want[j][i] -= data.C[i][j]
            if lhs != want:
                bad = (i + 1, j + 1)
                break
        if bad:
            break
    comm = rep.add("T_i T_j - T_j T_i = C_ji E_ij - C_ij E_ji", bad is None, bad)
    m = moments or fock_moment_table(data, length)
    wit = tracial_witness(m, length)
    cyclic = rep.add(f"moments cyclic to length {length}", wit is None,
                     None if wit is None else {"u": word_key(wit[0]), "rotated": word_key(wit[1]),
                                               "phi_u": m[wit[0]], "phi_rotated": m[wit[1]]})
    const_c = len({x for row in data.C for x in row}) == 1
    consistent = (not cyclic or (trace1 and comm)) and (not (const_c and trace1 and comm) or cyclic)
    rep.add("conditions consistent with moment verdict", consistent)
    rep.extra["conditions_hold"] = trace1 and comm
    rep.extra["tracial"] = cyclic
    return rep


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rotate_data(data: MeixnerData, O) -> MeixnerData:
    """Data of ``y_j = sum_i O_ij x_i`` when each ``f_a (x) f_b`` is an eigenvector of C."""
    d = data.d
    O = [[Fraction(x) for x in row] for row in O]
    Ot = transpose(O)
    T = []
    for j in range(d):
        S = [[sum((O[i][j] * data.T[i][a][b] for i in range(d)), Fraction(0)) for b in range(d)] for a in range(d)]
        T.append(matmul(matmul(Ot, S), O))
    C = [[sum((O[i][a] ** 2 * O[k][b] ** 2 * data.C[i][k] for i in range(d) for k in range(d)), Fraction(0))
          for b in range(d)] for a in range(d)]
    return MeixnerData(d, C, T)


def free_product_detector(data: MeixnerData, check_degree: int = 4) -> dict:
    """Find an orthogonal O after which the state is a free product.

    Works over the rationals: the common eigenvectors of the commuting
    family ``{T_i}`` must have rational norms, otherwise the verdict says the
    rotation exists but is irrational.
    """
    import sympy

    d = data.d
    C = data.C
    if any(C[i][j] for i in range(d) for j in range(d) if i != j):
        raise ValueError("free_product_detector needs C_ij = 0 for i != j")
    cond = tracial_conditions(data, length=min(4, check_degree))
    if not cond.extra["conditions_hold"]:
        raise ValueError("free_product_detector needs tracial data")

    mats = [sympy.Matrix(d, d, lambda a, b: sympy.Rational(m[a][b].numerator, m[a][b].denominator)) for m in data.T]
    weights = [sympy.Rational(1, p) for p in (1, 3, 7, 13, 29, 53, 97, 193)]
    vectors = None
    for shift in range(4):
        M = sympy.zeros(d, d)
        for k, Ti in enumerate(mats):
            M += weights[(k + shift) % len(weights)] * Ti
        cols = []
        irrational = False
        for val, _, vecs in M.eigenvects():
            if not val.is_rational:
                irrational = True
                break
            space = [sympy.Matrix(v) for v in vecs]
            # prefer standard basis vectors inside the eigenspace
            chosen = []
            for l in range(d):
                e = sympy.zeros(d, 1)
                e[l] = 1
                if len(chosen) < len(space) and sympy.Matrix.hstack(*space, e).rank() == len(space) \
                        and (not chosen or sympy.Matrix.hstack(*chosen, e).rank() == len(chosen) + 1):
                    chosen.append(e)
            for v in space:
                if len(chosen) == len(space):
                    break
                if not chosen or sympy.Matrix.hstack(*chosen, v).rank() == len(chosen) + 1:
                    chosen.append(v)
            cols.extend(sympy.GramSchmidt(chosen))
        if irrational:
            return {"free_product": True, "rational": False, "reason": "rotation exists but is irrational"}
        if all(_is_eigen(Ti, v) for Ti in mats for v in cols):
            vectors = cols
            break
    if vectors is None:
        raise ValueError("no common eigenbasis found; T_i do not commute")

    # f_l = e_l keeps index l in place
    slots = [None] * d
    rest = []
    for v in vectors:
        hit = [l for l in range(d) if v[l] != 0]
        if len(hit) == 1 and slots[hit[0]] is None:
            slots[hit[0]] = v
        else:
            rest.append(v)
    vectors = [s if s is not None else rest.pop(0) for s in slots]
    O = [[None] * d for _ in range(d)]
    for a, v in enumerate(vectors):
        n2 = Fraction(str(sum(x * x for x in v)))
        root = _rational_sqrt(n2)
        if root is None:
            return {"free_product": True, "rational": False, "reason": "rotation exists but is irrational"}
        for i in range(d):
            O[i][a] = Fraction(str(v[i])) / root
    rot = rotate_data(data, O)
    rep = Report()
    ok = matmul(transpose(O), O) == [[Fraction(int(a == b)) for b in range(d)] for a in range(d)]
    rep.add("O orthogonal", ok)
    form = all(rot.T[j][a][b] == 0 for j in range(d) for a in range(d) for b in range(d) if (a, b) != (j, j))
    rep.add("rotated T_j = alpha_j E_jj", form)
    rep.add("rotated C diagonal", all(rot.C[a][b] == 0 for a in range(d) for b in range(d) if a != b))
    m = fock_moment_table(data, check_degree)
    rep.add(f"moments of rotated data match to degree {check_degree}",
            transform(m, O) == fock_moment_table(rot, check_degree))
    return {
        "free_product": rep.passed,
        "rational": True,
        "O": O,
        "alpha": [rot.T[j][j][j] for j in range(d)],
        "c": [rot.C[j][j] for j in range(d)],
        "report": rep,
    }


def _is_eigen(Ti, v) -> bool:
    w = Ti * v
    for a in range(v.rows):
        for b in range(v.rows):
            if w[a] * v[b] != w[b] * v[a]:
                return False
    return True


# -- the full equivalence suite ------------------------------------------------------------------

def verify_meixner(data: MeixnerData, N: int = 3, gf_degree: int | None = 4, vector_degree: int = 4,
                   pde_degree: int = 4) -> Report:
    """All characterizations at once, sharing the moment table."""
    rep = Report()
    m = fock_moment_table(data, 2 * N)
    fam = mops_from_data(data, max(N, vector_degree))
    rep.extend(RecursionCoefficients(data).side_conditions(), "recursion: ")
    rep.extend(verify_orthogonality(data, fam, N, m, vector_degree), "mops: ")
    rep.extend(pde_check(data, pde_degree), "pde: ")
    if gf_degree:
        rep.extend(generating_function_check(data, gf_degree), "generating: ")
    rep.extend(gram_schmidt_collapse(data, N, m), "gram-schmidt: ")
    from .moments import moments_to_cumulants
    r = fock_cumulant_table(data, 2 * N)
    rep.add("cumulants: operator formula = moment recursion", moments_to_cumulants(m) == r)
    return rep
