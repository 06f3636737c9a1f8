"""Truncated operator model on the full Fock space over ``C^d``.

Vectors are formal combinations of basis words ``e_u`` (the empty word is
the vacuum).  Vacuum expectations are read off as the coefficient of the
empty word, which is exact and needs no inner product weights.

Letters are the four building blocks of ``X_i``::

    a+i   creation          e_u -> e_(i, u)
    a-i   annihilation      e_u -> [u1 == i] e_(u2, ...)
    ti    T_i on slot one   e_(k, ...) -> sum_m (T_i)_{mk} e_(m, ...)
    ãi    a_i^- (C x I)     e_(k, l, ...) -> [k == i] C_{kl} e_(l, ...)

A LetterWord lists ``W(1) ... W(n)`` left to right; it acts on the vacuum
right to left, so ``W(n)`` is applied first.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .moments import CumulantFunctional, MomentFunctional
from .partitions import NcPartition, PartitionClass, enumerate_partitions
from .scalars import fmt, matmul, q, words

CREATE, ANNIHILATE, TEE, TILDE = "create", "annihilate", "tee", "tilde"
KINDS = (ANNIHILATE, TILDE, TEE, CREATE)
_TOKEN = {CREATE: "a+", ANNIHILATE: "a-", TEE: "t", TILDE: "ã"}


class DataError(ValueError):
    """MeixnerData violates one of its defining inequalities or identities."""


@dataclass(frozen=True)
class MeixnerData:
    """Parameters ``(C, {T_i})`` of a Fock state.

    ``C[i][j]`` is the eigenvalue of the diagonal operator C on
    ``e_{i+1} (x) e_{j+1}``; ``T[i]`` is the symmetric matrix of ``T_{i+1}``.
    """

    d: int
    C: tuple
    T: tuple

    def __post_init__(self):
        d = self.d
        C = tuple(tuple(q(x) for x in row) for row in self.C)
        T = tuple(tuple(tuple(q(x) for x in row) for row in m) for m in self.T)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "T", T)
        if len(C) != d or any(len(row) != d for row in C):
            raise DataError(f"C must be {d}x{d}")
        if len(T) != d or any(len(m) != d or any(len(r) != d for r in m) for m in T):
            raise DataError(f"need {d} matrices T_i of size {d}x{d}")
        for i in range(d):
            for j in range(d):
                if 1 + C[i][j] < 0:
                    raise DataError(f"1 + C_{{{i + 1},{j + 1}}} < 0")
        for n, m in enumerate(T, 1):
            for a in range(d):
                for b in range(a):
                    if m[a][b] != m[b][a]:
                        raise DataError(f"T_{n} is not symmetric at ({a + 1},{b + 1})")
        for n, m in enumerate(T, 1):
            for a in range(d):
                for k in range(d):
                    if not m[a][k]:
                        continue
                    for l in range(d):
                        if C[k][l] != C[a][l]:
                            raise DataError(
                                f"(T_{n} (x) I) C != C (T_{n} (x) I): (T_{n})_{{{a + 1},{k + 1}}} != 0 "
                                f"but C_{{{k + 1},{l + 1}}} != C_{{{a + 1},{l + 1}}}"
                            )

    @classmethod
    def build(cls, C, T) -> "MeixnerData":
        return cls(len(C), C, T)

    def c(self, i: int, j: int) -> Fraction:
        return self.C[i - 1][j - 1]

    def B(self, i: int, j: int, k: int) -> Fraction:
        """Recursion coefficient ``B_{ij}^k = (T_i)_{kj}``."""
        return self.T[i - 1][k - 1][j - 1]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "C": [[fmt(x) for x in row] for row in self.C],
            "T": [[[fmt(x) for x in row] for row in m] for m in self.T],
        }

    @classmethod
    def from_json(cls, data) -> "MeixnerData":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            d, C, T = data["d"], data["C"], data["T"]
        except (KeyError, TypeError) as exc:
            raise DataError(f"MeixnerData JSON needs keys d, C, T: {exc}") from None
        return cls(d, C, T)


# -- vectors and operators ---------------------------------------------------

class FockVector(dict):
    """Mapping word -> coefficient, with a level cap checked on creation."""

    def __init__(self, terms=None, level_cap: int | None = None):
        super().__init__()
        self.level_cap = level_cap
        for w, c in (terms or {}).items():
            w = tuple(w)
            if level_cap is not None and len(w) > level_cap:
                raise ValueError(f"word {w} beyond level cap {level_cap}")
            c = q(c)
            if c:
                self[w] = c

    @classmethod
    def vacuum(cls, level_cap=None):
        return cls({(): 1}, level_cap)

    @classmethod
    def basis(cls, u, level_cap=None):
        return cls({tuple(u): 1}, level_cap)

    def omega(self) -> Fraction:
        return self.get((), Fraction(0))


class LevelCapError(ValueError):
    pass


def _add(out: dict, w, c):
    v = out.get(w)
    if v is None:
        out[w] = c
    else:
        v += c
        if v:
            out[w] = v
        else:
            del out[w]


def _apply_letter(data: MeixnerData, kind: str, i: int, vec: dict, out: dict, scale=1, max_level=None):
    T = data.T[i - 1]
    Ci = data.C[i - 1]
    d = data.d
    for w, c in vec.items():
        c = c * scale
        if kind == CREATE:
            if max_level is None or len(w) < max_level:
                _add(out, (i,) + w, c)
        elif not w:
            continue
        elif kind == ANNIHILATE:
            if w[0] == i:
                _add(out, w[1:], c)
        elif kind == TEE:
            k = w[0] - 1
            rest = w[1:]
            for m in range(d):
                x = T[m][k]
                if x:
                    _add(out, (m + 1,) + rest, x * c)
        elif kind == TILDE:
            if len(w) >= 2 and w[0] == i:
                x = Ci[w[1] - 1]
                if x:
                    _add(out, w[1:], x * c)
        else:
            raise ValueError(f"unknown letter kind {kind!r}")
    return out


def apply(data: MeixnerData, kind: str, i: int, v: FockVector) -> FockVector:
    """Apply one letter operator to a vector."""
    if not 1 <= i <= data.d:
        raise ValueError(f"index {i} outside 1..{data.d}")
    cap = v.level_cap
    if kind == CREATE and cap is not None and any(len(w) >= cap for w in v):
        raise LevelCapError(f"creation would exceed level cap {cap}")
    return FockVector(_apply_letter(data, kind, i, v, {}), cap)


def _x(data, i, vec, t=1, max_level=None, annihilate=True):
    out: dict = {}
    _apply_letter(data, CREATE, i, vec, out, max_level=max_level)
    _apply_letter(data, TEE, i, vec, out)
    _apply_letter(data, TILDE, i, vec, out)
    if annihilate:
        _apply_letter(data, ANNIHILATE, i, vec, out, scale=t)
    if max_level is not None:
        out = {w: c for w, c in out.items() if len(w) <= max_level}
    return out


def apply_x(data: MeixnerData, i: int, v: dict, t=1) -> dict:
    """``X_i = a_i^+ + a_i^- + T_i + ã_i`` (``t a_i^-`` for the convolution power)."""
    return _x(data, i, v, t=t)


def apply_s(data: MeixnerData, i: int, v: dict) -> dict:
    """``S_i = a_i^+ + T_i + ã_i``."""
    return _x(data, i, v, annihilate=False)


def apply_polynomial(data: MeixnerData, p, v: dict | None = None) -> dict:
    """``P(X) v`` for a polynomial ``P`` (vacuum by default)."""
    v = {(): Fraction(1)} if v is None else v
    out: dict = {}
    for u, c in p.terms.items():
        vec = dict(v)
        for i in reversed(u):
            vec = _x(data, i, vec)
        for w, x in vec.items():
            _add(out, w, c * x)
    return out


# -- moments and cumulants -----------------------------------------------------

def fock_moment(data: MeixnerData, u: Sequence[int], t=1) -> Fraction:
    """Vacuum coefficient of ``X_{u(1)} ... X_{u(n)} Omega``."""
    u = tuple(u)
    n = len(u)
    vec = {(): Fraction(1)}
    for s, i in enumerate(reversed(u), 1):
        vec = _x(data, i, vec, t=t, max_level=n - s)
        if not vec:
            return Fraction(0)
    return vec.get((), Fraction(0))


def fock_moment_table(data: MeixnerData, max_degree: int, t=1) -> MomentFunctional:
    """All moments up to ``max_degree``, sharing work across common suffixes."""
    d = data.d
    values = {(): Fraction(1)}

    def rec(n, suffix, vec):
        s = len(suffix)
        if s == n:
            v = vec.get(())
            if v:
                values[suffix] = v
            return
        for i in range(1, d + 1):
            nxt = _x(data, i, vec, t=t, max_level=n - s - 1)
            if nxt:
                rec(n, (i,) + suffix, nxt)

    for n in range(1, max_degree + 1):
        rec(n, (), {(): Fraction(1)})
    return MomentFunctional(d, max_degree, values, check=False)


def fock_cumulant(data: MeixnerData, u: Sequence[int]) -> Fraction:
    """``<e_{u(1)}, S_{u(2)} ... S_{u(n-1)} e_{u(n)}>``."""
    u = tuple(u)
    if len(u) < 2:
        raise ValueError("fock_cumulant needs |u| >= 2 (first cumulants vanish)")
    vec = {(u[-1],): Fraction(1)}
    for s, i in enumerate(reversed(u[1:-1]), 1):
        vec = apply_s(data, i, vec)
        remaining = len(u) - 2 - s
        vec = {w: c for w, c in vec.items() if len(w) <= 1 + remaining}
    return vec.get((u[0],), Fraction(0))


def fock_cumulant_table(data: MeixnerData, max_degree: int) -> CumulantFunctional:
    d = data.d
    values = {}

    def rec(n, inner, vec):
        # inner holds u(2..n) built from the right
        if len(inner) == n - 1:
            for first in range(1, d + 1):
                v = vec.get((first,))
                if v:
                    values[(first,) + inner] = v
            return
        remaining = n - 1 - len(inner) - 1
        for i in range(1, d + 1):
            nxt = {w: c for w, c in apply_s(data, i, vec).items() if len(w) <= 1 + remaining}
            if nxt:
                rec(n, (i,) + inner, nxt)

    for n in range(2, max_degree + 1):
        for last in range(1, d + 1):
            rec(n, (last,), {(last,): Fraction(1)})
    return CumulantFunctional(d, max_degree, values)


def gram_inner(data: MeixnerData, u: Sequence[int], v: Sequence[int]) -> Fraction:
    """``<e_u, e_v>_C``: the kernel K_C is diagonal in the word basis."""
    u, v = tuple(u), tuple(v)
    if u != v:
        return Fraction(0)
    out = Fraction(1)
    for a, b in zip(u, u[1:]):
        out *= 1 + data.c(a, b)
    return out


def c_inner(data: MeixnerData, v: dict, w: dict) -> Fraction:
    """Bilinear form ``<v, w>_C`` on formal vectors (possibly degenerate)."""
    return sum((c * w[u] * gram_inner(data, u, u) for u, c in v.items() if u in w), Fraction(0))


# -- letter words ------------------------------------------------------------------

LetterWord = tuple  # tuple[tuple[str, int], ...]


def word_value(data: MeixnerData, W: Sequence[tuple[str, int]]) -> Fraction:
    vec = {(): Fraction(1)}
    for kind, i in reversed(tuple(W)):
        vec = _apply_letter(data, kind, i, vec, {})
        if not vec:
            return Fraction(0)
    return vec.get((), Fraction(0))


def format_word(W) -> str:
    return " ".join(f"{_TOKEN[k]}{i}" for k, i in W)


def parse_word_letters(text: str) -> LetterWord:
    out = []
    for tok in text.split():
        for kind, prefix in ((CREATE, "a+"), (ANNIHILATE, "a-"), (TILDE, "ã"), (TILDE, "~"), (TEE, "t")):
            if tok.startswith(prefix):
                out.append((kind, int(tok[len(prefix):])))
                break
        else:
            raise ValueError(f"unrecognised letter {tok!r}")
    return tuple(out)


def _delta(kind):
    return {CREATE: 1, TEE: 0, ANNIHILATE: -1, TILDE: -1}[kind]


def satisfies_word_conditions(kinds: Sequence[str]) -> bool:
    """The walk and level-two conditions on a kind sequence ``W(1..n)``."""
    n = len(kinds)
    if n == 0 or kinds[0] != ANNIHILATE or kinds[-1] != CREATE:
        return False
    level = 0
    for k in reversed(kinds):
        level += _delta(k)
        if level < 0:
            return False
        if level == 0 and k != ANNIHILATE:
            return False
    return level == 0


def in_prime_class(kinds: Sequence[str]) -> bool:
    return (satisfies_word_conditions(kinds)
            and all(k != ANNIHILATE for k in kinds[1:]))


def _kind_sequences(n: int, prime: bool) -> Iterator[tuple[str, ...]]:
    # built right to left; `level` is the net count of a+ over a-/ã so far
    def rec(pos, level, acc):
        if pos == 0:
            if level == 0:
                yield tuple(acc)
            return
        if level > pos:
            return
        for k in (CREATE, TEE, TILDE, ANNIHILATE):
            if pos == n and k != CREATE:
                continue
            if pos == 1 and k != ANNIHILATE:
                continue
            if prime and k == ANNIHILATE and pos != 1:
                continue
            new = level + _delta(k)
            if new < 0 or (new == 0 and k != ANNIHILATE):
                continue
            acc.appendleft(k)
            yield from rec(pos - 1, new, acc)
            acc.popleft()

    from collections import deque
    yield from rec(n, 0, deque())


def enumerate_words(u: Sequence[int], prime: bool = False, cap: int = 14) -> Iterator[LetterWord]:
    """Words of ``W_n(u)`` (or ``W'_n(u)`` when ``prime``)."""
    u = tuple(u)
    if len(u) > cap:
        raise ValueError(f"|u| = {len(u)} exceeds cap {cap}")
    for kinds in _kind_sequences(len(u), prime):
        yield tuple(zip(kinds, u))


def enumerate_words_brute(u: Sequence[int], prime: bool = False) -> list[LetterWord]:
    """Exhaustive filter over all ``4^n`` letter assignments."""
    u = tuple(u)
    test = in_prime_class if prime else satisfies_word_conditions
    return [tuple(zip(ks, u)) for ks in itertools.product(KINDS, repeat=len(u)) if test(ks)]


# -- the word/partition bijection ------------------------------------------------

def beta(u: Sequence[int], pi: NcPartition, sigmas: Sequence[NcPartition]) -> LetterWord:
    """Letter word attached to ``pi`` in NC_0(n) and ``sigma_j`` in NC_0'(V_j).

    Positions are 1-based: ``pi.ground == (1, ..., n)``.
    """
    u = tuple(u)
    n = len(u)
    if pi.ground != tuple(range(1, n + 1)):
        raise ValueError("pi must partition 1..n")
    if len(sigmas) != len(pi.blocks):
        raise ValueError("need one sigma per block of pi")
    if not _in(pi, PartitionClass.NC0):
        raise ValueError(f"{pi} is not in NC_0")
    kinds = [TEE] * n
    for V, sigma in zip(pi.blocks, sigmas):
        if sigma.ground != V or not _in(sigma, PartitionClass.NC0PRIME):
            raise ValueError(f"{sigma} is not in NC_0'({set(V)})")
        for B in sigma.blocks:
            for i in B:
                if i == B[-1]:
                    kinds[i - 1] = CREATE
                elif i == V[0]:
                    kinds[i - 1] = ANNIHILATE
                elif i == B[0]:
                    kinds[i - 1] = TILDE
    return tuple(zip(kinds, u))


def _in(p, cls):
    from .partitions import in_class
    return in_class(p, cls)


def beta_inverse(u: Sequence[int], W: Sequence[tuple[str, int]]):
    """Recover ``(pi, [sigma_1, ...])`` from a word in ``W_n(u)``.

    Openers (a-, ã) are matched with closers (a+) like brackets; every other
    position hangs from the innermost arc above it, where "arc" means an a-
    arc for the outer partition and any arc inside the block for sigma.
    """
    u = tuple(u)
    W = tuple(W)
    kinds = [k for k, _ in W]
    if tuple(i for _, i in W) != u or not satisfies_word_conditions(kinds):
        raise ValueError("word is not in W_n(u)")
    n = len(u)
    pairs = []
    stack = []
    for pos, k in enumerate(kinds, 1):
        if k in (ANNIHILATE, TILDE):
            stack.append(pos)
        elif k == CREATE:
            pairs.append((stack.pop(), pos))
    outer = [(a, b) for a, b in pairs if kinds[a - 1] == ANNIHILATE]

    owner = {}
    for j in range(1, n + 1):
        a = max(a for a, b in outer if a <= j <= b)
        owner[j] = a
    groups: dict = {}
    for j, a in owner.items():
        groups.setdefault(a, []).append(j)
    pi = NcPartition.from_blocks(groups.values())

    sigmas = []
    for V in pi.blocks:
        Vset = set(V)
        arcs = [(a, b) for a, b in pairs if a in Vset]
        sub: dict = {}
        for j in V:
            a = max(a for a, b in arcs if a <= j <= b)
            sub.setdefault(a, []).append(j)
        sigmas.append(NcPartition.from_blocks(sub.values()))
    return pi, sigmas


def theta(data: MeixnerData, sigma: NcPartition, u: Sequence[int]) -> Fraction:
    """Vacuum value of the single-block word ``beta_u((V), sigma)``.

    ``u`` is indexed by the sorted ground set of ``sigma``.
    """
    V = sigma.ground
    u = tuple(u)
    if len(u) != len(V):
        raise ValueError("u must have one entry per element of the ground set")
    relabel = {x: k for k, x in enumerate(V, 1)}
    local = NcPartition.from_blocks([relabel[x] for x in b] for b in sigma.blocks)
    whole = NcPartition.from_blocks([range(1, len(V) + 1)])
    return word_value(data, beta(u, whole, [local]))


def theta_constant_c(data: MeixnerData, sigma: NcPartition, u: Sequence[int]) -> Fraction:
    """Closed form of ``theta`` when every ``C_ij`` equals one constant ``c``."""
    cs = {x for row in data.C for x in row}
    if len(cs) != 1:
        raise ValueError("closed form needs a constant C")
    (c,) = cs
    pos = {x: k for k, x in enumerate(sigma.ground)}
    u = tuple(u)
    out = c ** (len(sigma.blocks) - 1)
    for B in sigma.blocks:
        idx = [u[pos[x]] for x in B]
        m = [[Fraction(int(a == b)) for b in range(data.d)] for a in range(data.d)]
        for i in idx[1:-1]:
            m = matmul(m, data.T[i - 1])
        out *= m[idx[0] - 1][idx[-1] - 1]
    return out


def nc0_cumulant_sum(data: MeixnerData, u: Sequence[int], cumulant=None) -> Fraction:
    """``sum over pi in NC_0(n) of prod_V <e, S...S e>`` for the blocks of ``pi``."""
    from .moments import partition_sum
    f = cumulant or (lambda w: fock_cumulant(data, w))
    return partition_sum(u, f, PartitionClass.NC0)


def operator_norms(data: MeixnerData) -> tuple[Fraction, Fraction]:
    """(max |C_ij|, max_i of the max-row-sum norm of T_i)."""
    cn = max(abs(x) for row in data.C for x in row)
    tn = max((sum(abs(x) for x in row) for m in data.T for row in m), default=Fraction(0))
    return cn, tn


def growth_constant(data: MeixnerData) -> Fraction:
    """A constant ``m`` with ``|phi[x_u]| < (16 m)^{|u|}``.

    ``m`` has to dominate the norms of C and T_i and also 1, because the
    covariance terms contribute with weight one.
    """
    cn, tn = operator_norms(data)
    return max(Fraction(1), cn, tn) + Fraction(1, 100)


C_VALUES = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def random_meixner_data(rng, d: int) -> MeixnerData:
    """Random valid data from a ``random.Random`` instance.

    Indices are split into groups sharing one row of C; each T_i is
    symmetric with entries in -2..2 and couples only indices of the same
    group, so the commutation identity holds by construction.
    """
    group = [rng.randrange(d) for _ in range(d)]
    rows = {g: [rng.choice(C_VALUES) for _ in range(d)] for g in set(group)}
    C = [rows[group[i]] for i in range(d)]
    T = []
    for _ in range(d):
        m = [[0] * d for _ in range(d)]
        for a in range(d):
            for b in range(a, d):
                if group[a] == group[b]:
                    m[a][b] = m[b][a] = rng.randint(-2, 2)
        T.append(m)
    return MeixnerData(d, C, T)
