"""Non-crossing partitions of finite integer sets.

Partitions are immutable values with a canonical form: every block sorted,
blocks ordered by their minimum.  The enumerators are generators built on
restricted growth strings, so their output order is the lexicographic order
of the block-label sequence and is fully deterministic.
"""
from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_CAP = 14


class SizeCapError(ValueError):
    """Raised when an enumeration would exceed the configured ground-set size."""


class PartitionClass(enum.Enum):
    NC = "NC"
    NC0 = "NC0"
    NCPRIME = "NCprime"
    NC0PRIME = "NC0prime"
    INTERVAL = "Interval"


@dataclass(frozen=True)
class NcPartition:
    ground: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ground = tuple(sorted(self.ground))
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(not b for b in blocks):
            raise ValueError("empty block")
        flat = [x for b in blocks for x in b]
        if len(flat) != len(set(flat)):
            raise ValueError("blocks are not pairwise disjoint")
        if sorted(flat) != list(ground):
            raise ValueError("blocks do not cover the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "NcPartition":
        blocks = [tuple(b) for b in blocks]
        return cls(tuple(x for b in blocks for x in b), tuple(blocks))

    def __len__(self):
        return len(self.blocks)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def same_block(self, x: int, y: int) -> bool:
        return y in self.block_of(x)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data) -> "NcPartition":
        return cls.from_blocks(data)

    def __str__(self):
        return "(" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"


def _cap() -> int:
    return int(os.environ.get("FMK_PARTITION_CAP", DEFAULT_CAP))


def enumerate_partitions(ground: Iterable[int], cls: PartitionClass = PartitionClass.NC,
                         cap: int | None = None) -> Iterator[NcPartition]:
    """Yield every partition of ``ground`` in the class ``cls`` exactly once.

    Elements are placed left to right.  A new element may join an existing
    block only if that block is still open; joining block ``j`` closes every
    block whose last element lies after the last element of ``j``, which is
    exactly what keeps the partition non-crossing.
    """
    ground = tuple(sorted(set(ground)))
    cap = _cap() if cap is None else cap
    if len(ground) > cap:
        raise SizeCapError(f"ground set of size {len(ground)} exceeds cap {cap}")
    n = len(ground)
    if n == 0:
        if cls in (PartitionClass.NCPRIME, PartitionClass.NC0PRIME):
            return
        yield NcPartition((), ())
        return

    if cls is PartitionClass.INTERVAL:
        yield from _intervals(ground)
        return

    no_singletons = cls in (PartitionClass.NC0, PartitionClass.NC0PRIME)
    outer_one = cls in (PartitionClass.NCPRIME, PartitionClass.NC0PRIME)
    blocks: list[list[int]] = []
    closed: list[bool] = []

    def rec(pos: int):
        if pos == n:
            if no_singletons and any(len(b) == 1 for b in blocks):
                return
            if outer_one and ground[-1] not in blocks[0]:
                return
            yield NcPartition(ground, tuple(tuple(b) for b in blocks))
            return
        x = ground[pos]
        for j in range(len(blocks)):
            if closed[j]:
                continue
            last = blocks[j][-1]
            newly = [k for k in range(len(blocks)) if not closed[k] and blocks[k][-1] > last]
            if no_singletons and any(len(blocks[k]) == 1 for k in newly):
                continue
            if outer_one and 0 in newly:
                continue
            for k in newly:
                closed[k] = True
            blocks[j].append(x)
            yield from rec(pos + 1)
            blocks[j].pop()
            for k in newly:
                closed[k] = False
        blocks.append([x])
        closed.append(False)
        yield from rec(pos + 1)
        blocks.pop()
        closed.pop()

    yield from rec(0)


def _intervals(ground: tuple[int, ...]) -> Iterator[NcPartition]:
    n = len(ground)

    def rec(pos, blocks):
        if pos == n:
            yield NcPartition(ground, tuple(tuple(b) for b in blocks))
            return
        if blocks:
            blocks[-1].append(ground[pos])
            yield from rec(pos + 1, blocks)
            blocks[-1].pop()
        blocks.append([ground[pos]])
        yield from rec(pos + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def all_set_partitions(ground: Sequence[int]) -> Iterator[NcPartition]:
    """Every set partition, crossing or not (brute-force reference)."""
    ground = tuple(sorted(ground))
    n = len(ground)
    if n == 0:
        yield NcPartition((), ())
        return

    def rec(pos, blocks):
        if pos == n:
            yield NcPartition(ground, tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(ground[pos])
            yield from rec(pos + 1, blocks)
            b.pop()
        blocks.append([ground[pos]])
        yield from rec(pos + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def is_noncrossing(p: NcPartition) -> bool:
    """Direct check of the four-point crossing condition."""
    label = {x: k for k, b in enumerate(p.blocks) for x in b}
    xs = p.ground
    for a, b, c, e in itertools.combinations(xs, 4):
        if label[a] == label[c] and label[b] == label[e] and label[a] != label[b]:
            return False
    return True


def is_noncrossing_by_peeling(p: NcPartition) -> bool:
    """Repeatedly remove a block that is an interval of what remains."""
    remaining = list(p.ground)
    blocks = [set(b) for b in p.blocks]
    while blocks:
        pos = {x: k for k, x in enumerate(remaining)}
        for b in blocks:
            idx = sorted(pos[x] for x in b)
            if idx[-1] - idx[0] == len(idx) - 1:
                blocks.remove(b)
                remaining = [x for x in remaining if x not in b]
                break
        else:
            return False
    return True


def has_singleton(p: NcPartition) -> bool:
    return any(len(b) == 1 for b in p.blocks)


def in_class(p: NcPartition, cls: PartitionClass) -> bool:
    if not is_noncrossing(p):
        return False
    if cls is PartitionClass.NC:
        return True
    if cls is PartitionClass.NC0:
        return not has_singleton(p)
    if cls is PartitionClass.INTERVAL:
        return all(b[-1] - b[0] == len(b) - 1 for b in _positions(p))
    if not p.ground:
        return False
    prime = p.same_block(p.ground[0], p.ground[-1])
    if cls is PartitionClass.NCPRIME:
        return prime
    return prime and not has_singleton(p)


def _positions(p: NcPartition):
    pos = {x: k for k, x in enumerate(p.ground)}
    return [[pos[x] for x in b] for b in p.blocks]


def outer_blocks(p: NcPartition) -> list[tuple[int, ...]]:
    """Blocks not nested under an arc of another block."""
    out = []
    for b in p.blocks:
        covered = False
        for other in p.blocks:
            if other is b:
                continue
            lo, hi = other[0], other[-1]
            if any(lo < j < hi for j in b):
                covered = True
                break
        if not covered:
            out.append(b)
    return out


def interval_partition_from_subset(cuts: Iterable[int], n: int) -> NcPartition:
    cuts = sorted(set(cuts))
    if any(not 1 <= c <= n - 1 for c in cuts):
        raise ValueError("cut points must lie in 1..n-1")
    edges = [0] + cuts + [n]
    return NcPartition.from_blocks(range(a + 1, b + 1) for a, b in zip(edges, edges[1:]))


def restrict(p: NcPartition, subset: Iterable[int]) -> NcPartition:
    subset = set(subset)
    return NcPartition.from_blocks(
        [x for x in b if x in subset] for b in p.blocks if any(x in subset for x in b)
    )


def rotate_first_to_end(p: NcPartition) -> NcPartition:
    """Relabel the minimum of the ground set as max + 1 (one step around the circle)."""
    first, new = p.ground[0], p.ground[-1] + 1
    return NcPartition.from_blocks([new if x == first else x for x in b] for b in p.blocks)


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)
