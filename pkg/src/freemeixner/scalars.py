"""Exact rational scalars and their text form."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
MultiIndex = tuple  # tuple[int, ...] with entries in 1..d


def q(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected on purpose: every core computation is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact scalar")


def fmt(value: Fraction) -> str:
    """Render as "p/q", or "p" for integers."""
    value = q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def matrix(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[q(x) for x in row] for row in rows]


def identity(d: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


def zeros(d: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * d for _ in range(d)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)] for row in a]


def transpose(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*a)]


def word_key(u: Sequence[int]) -> str:
    """Canonical multi-index serialization: comma-joined, empty string for the empty word."""
    return ",".join(str(i) for i in u)


def parse_word(key: str) -> tuple[int, ...]:
    key = key.strip()
    if not key:
        return ()
    return tuple(int(part) for part in key.split(","))


def words(d: int, n: int):
    """All multi-indices of length n over 1..d in lexicographic order."""
    if n == 0:
        yield ()
        return
    for head in range(1, d + 1):
        for tail in words(d, n - 1):
            yield (head,) + tail


def words_upto(d: int, n: int):
    for k in range(n + 1):
        yield from words(d, k)
