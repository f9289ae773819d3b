"""Exact combinatorics of noncrossing matchings, bimatchings and basketballs.

Matchings live on integer intervals [0, 2m-1]; bimatchings on [0, 4n-1] with
even labels E_n = {0, 2, ..., 4n-2} and odd labels O_n = {1, 3, ..., 4n-1}.
A basketball is a bimatching with noncrossing halves in which every even pair
crosses exactly one odd pair; the pairing of each even pair with its crossing
partner is its quartet.  Basketballs biject with noncrossing partitions of
[0, 4n-1] into n blocks of size 4, which is how enumeration works here.

All values are immutable and hashable.  Pairs are stored as (min, max) tuples
sorted by first element, which fixes equality, hashing and JSON output.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadBlockResidues,
    CrossingHalf,
    ExcessCrossings,
    InvalidInput,
    NotNoncrossing,
    ResourceLimit,
)

Pair = tuple[int, int]

DEFAULT_MAX_ORDER = 8
_MAX_ORDER_ENV = "HARMONICA_MAX_ORDER"


def max_enumeration_order() -> int:
    """Current enumeration guard, overridable via HARMONICA_MAX_ORDER."""
    raw = os.environ.get(_MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_ORDER


def _guard(n: int, force: bool) -> None:
    if n < 1:
        raise InvalidInput(f"order must be >= 1, got {n}")
    if not force and n > max_enumeration_order():
        raise ResourceLimit(
            f"order {n} exceeds the enumeration guard "
            f"({max_enumeration_order()}); pass force=True to override"
        )


def crosses(p: Iterable[int], q: Iterable[int]) -> bool:
    """True iff the pairs p, q cross: exactly one element of q lies strictly
    between the elements of p in linear order."""
    a, b = sorted(p)
    c, d = sorted(q)
    if len({a, b, c, d}) != 4:
        raise InvalidInput(f"pairs {p!r} and {q!r} overlap")
    return (a < c < b) != (a < d < b)


def _canonical_pairs(pairs: Iterable[Iterable[int]]) -> tuple[Pair, ...]:
    out = []
    for pair in pairs:
        a, b = pair
        if a == b:
            raise InvalidInput(f"pair ({a}, {b}) is degenerate")
        out.append((min(a, b), max(a, b)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Matching:
    """Perfect matching of [0, 2m-1] into m unordered pairs."""

    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        canon = _canonical_pairs(self.pairs)
        object.__setattr__(self, "pairs", canon)
        elements = sorted(x for pair in canon for x in pair)
        if elements != list(range(2 * len(canon))):
            raise InvalidInput(
                f"pairs {canon!r} do not partition [0, {2 * len(canon) - 1}]"
            )

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def ground_size(self) -> int:
        return 2 * len(self.pairs)

    def partner(self, x: int) -> int:
        for a, b in self.pairs:
            if a == x:
                return b
            if b == x:
                return a
        raise InvalidInput(f"{x} is not in the ground set")

    def has_pair(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.pairs

    def is_noncrossing(self) -> bool:
        partner = {}
        for a, b in self.pairs:
            partner[a] = b
            partner[b] = a
        stack: list[int] = []
        for x in range(self.ground_size):
            if partner[x] > x:
                stack.append(x)
            else:
                if not stack or stack[-1] != partner[x]:
                    return False
                stack.pop()
        return True

    def shift(self, delta: int) -> "Matching":
        """Add delta to every element, modulo the ground-set size."""
        g = self.ground_size
        return Matching(tuple(((a + delta) % g, (b + delta) % g) for a, b in self.pairs))

    def to_json_dict(self) -> dict:
        return {"m": self.size, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Matching":
        m = cls(tuple(tuple(p) for p in data["pairs"]))
        if "m" in data and data["m"] != m.size:
            raise InvalidInput(f"declared size {data['m']} != actual {m.size}")
        return m


def is_noncrossing(matching: Matching) -> bool:
    return matching.is_noncrossing()


def noncrossing_matchings(m: int) -> Iterator[Matching]:
    """All noncrossing matchings on [0, 2m-1], Catalan(m) of them, in a fixed order."""
    if m < 0:
        raise InvalidInput("m must be nonnegative")

    def gen(points: tuple[int, ...]) -> Iterator[tuple[Pair, ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for j in range(1, len(points), 2):
            inner = points[1:j]
            outer = points[j + 1 :]
            for pi in gen(inner):
                for po in gen(outer):
                    yield ((first, points[j]),) + pi + po

    for pairs in gen(tuple(range(2 * m))):
        yield Matching(pairs)


@dataclass(frozen=True)
class Bimatching:
    """Matching on E_n paired with a matching on O_n, labels in [0, 4n-1]."""

    even: tuple[Pair, ...]
    odd: tuple[Pair, ...]

    def __post_init__(self) -> None:
        even = _canonical_pairs(self.even)
        odd = _canonical_pairs(self.odd)
        object.__setattr__(self, "even", even)
        object.__setattr__(self, "odd", odd)
        n = len(even)
        if len(odd) != n or n == 0:
            raise InvalidInput("even and odd halves must have equal positive size")
        if sorted(x for p in even for x in p) != list(range(0, 4 * n, 2)):
            raise InvalidInput(f"even pairs do not partition E_{n}")
        if sorted(x for p in odd for x in p) != list(range(1, 4 * n, 2)):
            raise InvalidInput(f"odd pairs do not partition O_{n}")

    @property
    def order(self) -> int:
        return len(self.even)

    def halves(self) -> tuple[Matching, Matching]:
        """Induced matchings on [0, 2n-1] via 2i -> i and 2i+1 -> i."""
        me = Matching(tuple((a // 2, b // 2) for a, b in self.even))
        mo = Matching(tuple(((a - 1) // 2, (b - 1) // 2) for a, b in self.odd))
        return me, mo

    def to_json_dict(self) -> dict:
        return {
            "n": self.order,
            "even": [list(p) for p in self.even],
            "odd": [list(p) for p in self.odd],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Bimatching":
        b = cls(
            tuple(tuple(p) for p in data["even"]),
            tuple(tuple(p) for p in data["odd"]),
        )
        if "n" in data and data["n"] != b.order:
            raise InvalidInput(f"declared order {data['n']} != actual {b.order}")
        return b


def interleave(even_half: Matching, odd_half: Matching) -> Bimatching:
    """Bimatching with even half from `even_half` (i -> 2i) and odd half from
    `odd_half` (i -> 2i+1)."""
    if even_half.size != odd_half.size:
        raise InvalidInput(
            f"size mismatch: {even_half.size} vs {odd_half.size}"
        )
    return Bimatching(
        tuple((2 * a, 2 * b) for a, b in even_half.pairs),
        tuple((2 * a + 1, 2 * b + 1) for a, b in odd_half.pairs),
    )


def split(bimatching: Bimatching) -> tuple[Matching, Matching]:
    """Inverse of interleave."""
    return bimatching.halves()


Quartet = tuple[Pair, Pair]


@dataclass(frozen=True)
class Basketball:
    """Validated basketball: bimatching plus its quartets.

    Construct through validate_basketball (or from_pairs); the constructor
    itself does not re-derive quartets.
    """

    bimatching: Bimatching
    quartets: tuple[Quartet, ...]

    @property
    def order(self) -> int:
        return self.bimatching.order

    @property
    def even(self) -> tuple[Pair, ...]:
        return self.bimatching.even

    @property
    def odd(self) -> tuple[Pair, ...]:
        return self.bimatching.odd

    def halves(self) -> tuple[Matching, Matching]:
        return self.bimatching.halves()

    @classmethod
    def from_pairs(cls, even, odd) -> "Basketball":
        return validate_basketball(Bimatching(tuple(even), tuple(odd)))

    def to_json_dict(self) -> dict:
        return self.bimatching.to_json_dict()

    @classmethod
    def from_json_dict(cls, data: dict) -> "Basketball":
        return validate_basketball(Bimatching.from_json_dict(data))


def validate_basketball(bimatching: Bimatching) -> Basketball:
    """Check both halves noncrossing and that every even pair crosses exactly
    one odd pair (and conversely); return the basketball with its quartets."""
    me, mo = bimatching.halves()
    if not me.is_noncrossing():
        raise CrossingHalf("even half is not noncrossing")
    if not mo.is_noncrossing():
        raise CrossingHalf("odd half is not noncrossing")
    quartets = []
    odd_counts = Counter()
    for e in bimatching.even:
        partners = [o for o in bimatching.odd if crosses(e, o)]
        # Noncrossing halves force an odd crossing count for every pair.
        assert len(partners) % 2 == 1, "odd crossing-count parity violated"
        if len(partners) != 1:
            raise ExcessCrossings(
                f"even pair {e} crosses {len(partners)} odd pairs"
            )
        quartets.append((e, partners[0]))
        odd_counts[partners[0]] += 1
    for o in bimatching.odd:
        if odd_counts[o] != 1:
            raise ExcessCrossings(
                f"odd pair {o} crosses {sum(1 for e in bimatching.even if crosses(e, o))} even pairs"
            )
    return Basketball(bimatching, tuple(sorted(quartets)))


def total_crossings(bimatching: Bimatching) -> int:
    return sum(
        1
        for e in bimatching.even
        for o in bimatching.odd
        if crosses(e, o)
    )


Block = tuple[int, int, int, int]


@dataclass(frozen=True)
class Nc4Partition:
    """Noncrossing partition of [0, 4n-1] into n blocks of size 4, with every
    gap between consecutive block elements of cardinality divisible by 4."""

    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        n = len(blocks)
        if n == 0 or any(len(set(b)) != 4 for b in blocks):
            raise InvalidInput("blocks must each contain 4 distinct elements")
        elements = sorted(x for b in blocks for x in b)
        if elements != list(range(4 * n)):
            raise InvalidInput(f"blocks do not partition [0, {4 * n - 1}]")
        for k, l in itertools.combinations(blocks, 2):
            if _blocks_cross(k, l):
                raise NotNoncrossing(f"blocks {k} and {l} cross")
        for a, b, c, d in blocks:
            if (b - a - 1) % 4 or (c - b - 1) % 4 or (d - c - 1) % 4:
                raise BadBlockResidues(
                    f"block {(a, b, c, d)} has a gap of cardinality not divisible by 4"
                )

    @property
    def order(self) -> int:
        return len(self.blocks)

    def to_json_dict(self) -> dict:
        return {"n": self.order, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Nc4Partition":
        q = cls(tuple(tuple(b) for b in data["blocks"]))
        if "n" in data and data["n"] != q.order:
            raise InvalidInput(f"declared order {data['n']} != actual {q.order}")
        return q


def _blocks_cross(k: Sequence[int], l: Sequence[int]) -> bool:
    # Linear noncrossing: l avoids k iff all of l sits in one gap of k,
    # where "outside [min k, max k]" counts as a single gap.
    a, b, c, d = sorted(k)

    def region(x: int) -> int:
        if x < a or x > d:
            return 0
        if a < x < b:
            return 1
        if b < x < c:
            return 2
        return 3

    regions = {region(x) for x in l}
    return len(regions) > 1


def to_partition(basketball: Basketball) -> Nc4Partition:
    """Merge each quartet {i,j},{k,l} into the block {i,j,k,l}."""
    blocks = tuple(
        tuple(sorted(e + o)) for e, o in basketball.quartets
    )
    return Nc4Partition(blocks)


def from_partition(partition: Nc4Partition) -> Basketball:
    """Split each block {a<b<c<d} into the pairs {a,c},{b,d} and validate."""
    even: list[Pair] = []
    odd: list[Pair] = []
    for a, b, c, d in partition.blocks:
        for pair in ((a, c), (b, d)):
            # Block residues guarantee one even and one odd pair per block.
            (even if pair[0] % 2 == 0 else odd).append(pair)
    return validate_basketball(Bimatching(tuple(even), tuple(odd)))


def ears(basketball: Basketball) -> tuple[Quartet, ...]:
    """Quartets whose four labels are cyclically consecutive mod 4n."""
    period = 4 * basketball.order
    out = []
    for quartet in basketball.quartets:
        e, o = quartet
        idx = sorted(e + o)
        gaps = [idx[i + 1] - idx[i] for i in range(3)]
        gaps.append(idx[0] + period - idx[3])
        if sum(1 for g in gaps if g != 1) <= 1:
            out.append(quartet)
    return tuple(out)


class SymmetryOp(Enum):
    ROTATION = "rotation"
    HALF_ROTATION = "half_rotation"
    REFLECTION = "reflection"


def apply_symmetry(basketball: Basketball, op: SymmetryOp, k: int = 1) -> Basketball:
    """Apply a symmetry k times; the result is revalidated as a basketball."""
    period = 4 * basketball.order
    even, odd = basketball.even, basketball.odd

    def shifted(pairs: tuple[Pair, ...], delta: int) -> tuple[Pair, ...]:
        return tuple(((a + delta) % period, (b + delta) % period) for a, b in pairs)

    if op is SymmetryOp.ROTATION:
        even, odd = shifted(even, -2 * k), shifted(odd, -2 * k)
    elif op is SymmetryOp.HALF_ROTATION:
        # Each application subtracts 1 from every label and swaps the halves.
        if k % 2:
            even, odd = odd, even
        even, odd = shifted(even, -k), shifted(odd, -k)
    elif op is SymmetryOp.REFLECTION:
        if k % 2:
            even = tuple(((-a) % period, (-b) % period) for a, b in even)
            odd = tuple(((-a) % period, (-b) % period) for a, b in odd)
    else:  # pragma: no cover
        raise InvalidInput(f"unknown symmetry {op!r}")
    return validate_basketball(Bimatching(even, odd))


def nc4_partitions(n: int, force: bool = False) -> Iterator[Nc4Partition]:
    """All Nc4 partitions of [0, 4n-1], by recursive first-block placement."""
    _guard(n, force)

    def segments(lo: int, hi: int) -> Iterator[tuple[Block, ...]]:
        if lo > hi:
            yield ()
            return
        a = lo
        for b in range(a + 1, hi + 1, 4):
            for c in range(b + 1, hi + 1, 4):
                for d in range(c + 1, hi + 1, 4):
                    # Trailing gap is automatically divisible by 4.
                    for p1 in segments(a + 1, b - 1):
                        for p2 in segments(b + 1, c - 1):
                            for p3 in segments(c + 1, d - 1):
                                for p4 in segments(d + 1, hi):
                                    yield ((a, b, c, d),) + p1 + p2 + p3 + p4

    for blocks in segments(0, 4 * n - 1):
        yield Nc4Partition(blocks)


def enumerate_basketballs(n: int, force: bool = False) -> Iterator[Basketball]:
    """Each basketball of order n exactly once, via the partition bijection."""
    for partition in nc4_partitions(n, force):
        yield from_partition(partition)


def count_basketballs(n: int) -> int:
    """C(4n, n) / (3n + 1), exactly."""
    if n < 1:
        raise InvalidInput(f"order must be >= 1, got {n}")
    q, r = divmod(math.comb(4 * n, n), 3 * n + 1)
    assert r == 0, "quasi-Catalan division must be exact"
    return q


def _rotation_canonical(basketball: Basketball) -> tuple:
    period = 4 * basketball.order
    best = None
    for k in range(2 * basketball.order):
        delta = -2 * k % period
        even = tuple(
            sorted(tuple(sorted(((a + delta) % period, (b + delta) % period)))
                   for a, b in basketball.even)
        )
        odd = tuple(
            sorted(tuple(sorted(((a + delta) % period, (b + delta) % period)))
                   for a, b in basketball.odd)
        )
        key = (even, odd)
        if best is None or key < best:
            best = key
    return best


def rotation_class_count(n: int, force: bool = False) -> int:
    """Number of rotation orbits of order-n basketballs, by canonical forms."""
    return len({_rotation_canonical(b) for b in enumerate_basketballs(n, force)})


def crossing_histogram(n: int, force: bool = False) -> dict[int, int]:
    """Histogram of total crossings over all bimatchings with noncrossing halves."""
    _guard(n, force)
    halves = list(noncrossing_matchings(n))
    hist: Counter = Counter()
    for me in halves:
        for mo in halves:
            hist[total_crossings(interleave(me, mo))] += 1
    return dict(sorted(hist.items()))


def hat(matching: Matching) -> Matching:
    """Matching on [0, 2m+1]: add the outer pair {0, 2m+1}, shift the rest up."""
    g = matching.ground_size
    pairs = ((0, g + 1),) + tuple((a + 1, b + 1) for a, b in matching.pairs)
    return Matching(pairs)
