"""Necklaces of matchings: tuples (M_1, ..., M_{n-1}) of noncrossing matchings
on [0, 2n-1] in which each M_{t+1} arises from M_t by a single swap of two
pairs, closing up with M_n = {{i-1, j-1} : {i,j} in M_1} (indices mod 2n).

The closure index M_n is always derived, never stored or serialized.  Necklace
equality is tuple equality with M_1 first; cyclic re-rootings are distinct
necklaces, matching the count 2(2n)^(n-2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .combinatorics import (
    Matching,
    _guard,
    interleave,
    noncrossing_matchings,
    validate_basketball,
)
from .errors import (
    BadTransition,
    HarmonicaError,
    InvalidInput,
    NotNoncrossing,
    WrongLength,
)


def is_transition(m: Matching, n: Matching) -> bool:
    """True iff n arises from m by one swap: exactly two pairs are replaced,
    re-pairing the same four elements, and n is noncrossing."""
    if m.ground_size != n.ground_size:
        raise InvalidInput(
            f"ground sets differ: [0,{m.ground_size - 1}] vs [0,{n.ground_size - 1}]"
        )
    removed = set(m.pairs) - set(n.pairs)
    added = set(n.pairs) - set(m.pairs)
    if len(removed) != 2 or len(added) != 2:
        return False
    if {x for p in removed for x in p} != {x for p in added for x in p}:
        return False
    return n.is_noncrossing()


@dataclass(frozen=True)
class Necklace:
    """Validated necklace of order n holding matchings M_1 .. M_{n-1}."""

    matchings: tuple[Matching, ...]

    @property
    def order(self) -> int:
        return len(self.matchings) + 1

    def closure(self) -> Matching:
        """The derived matching M_n, the shift of M_1 down by one."""
        return self.matchings[0].shift(-1)

    def with_closure(self) -> tuple[Matching, ...]:
        return self.matchings + (self.closure(),)

    def to_json_dict(self) -> dict:
        return {
            "n": self.order,
            "matchings": [m.to_json_dict() for m in self.matchings],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Necklace":
        necklace = validate_necklace(
            tuple(Matching.from_json_dict(m) for m in data["matchings"])
        )
        if "n" in data and data["n"] != necklace.order:
            raise InvalidInput(f"declared order {data['n']} != actual {necklace.order}")
        return necklace


def validate_necklace(matchings: Sequence[Matching]) -> Necklace:
    """Check lengths, noncrossing, and all swap transitions including the
    shift closure M_{n-1} -> M_n."""
    matchings = tuple(matchings)
    n = len(matchings) + 1
    if n < 2:
        raise WrongLength("a necklace needs at least one matching (order >= 2)")
    for t, m in enumerate(matchings, start=1):
        if m.size != n:
            raise WrongLength(
                f"M_{t} has {m.size} pairs; expected {n} on [0, {2 * n - 1}]"
            )
        if not m.is_noncrossing():
            raise NotNoncrossing(f"M_{t} is not noncrossing")
    chain = matchings + (matchings[0].shift(-1),)
    for t in range(len(chain) - 1):
        if not is_transition(chain[t], chain[t + 1]):
            raise BadTransition(f"M_{t + 1} -> M_{t + 2} is not a single swap")
    return Necklace(matchings)


def transition_successors(m: Matching) -> list[Matching]:
    """All noncrossing matchings reachable from m by one swap, sorted."""
    out = []
    pairs = m.pairs
    others = set(pairs)
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            (a, b), (c, d) = pairs[i], pairs[j]
            rest = tuple(p for k, p in enumerate(pairs) if k != i and k != j)
            for repaired in (((a, c), (b, d)), ((a, d), (b, c))):
                candidate = Matching(rest + repaired)
                if candidate.is_noncrossing():
                    out.append(candidate)
    return sorted(out, key=lambda x: x.pairs)


def enumerate_necklaces(n: int, force: bool = False) -> Iterator[Necklace]:
    """Each necklace of order n exactly once, by DFS over the transition graph
    with exact-distance pruning toward the shift closure."""
    _guard(n, force)
    if n < 2:
        raise InvalidInput(f"necklace order must be >= 2, got {n}")
    mats = list(noncrossing_matchings(n))
    index = {m: i for i, m in enumerate(mats)}
    succ = [
        sorted(index[s] for s in transition_successors(m)) for m in mats
    ]
    # reach[s][i]: bitmask of vertices reachable from i in exactly s steps.
    reach = [[1 << i for i in range(len(mats))]]
    for _ in range(n - 1):
        prev = reach[-1]
        step = []
        for i in range(len(mats)):
            mask = 0
            for j in succ[i]:
                mask |= prev[j]
            step.append(mask)
        reach.append(step)

    def walk(path: list[int], target: int) -> Iterator[Necklace]:
        position = len(path)
        if position == n - 1:
            yield Necklace(tuple(mats[i] for i in path))
            return
        remaining = n - 1 - position
        for j in succ[path[-1]]:
            if reach[remaining][j] >> target & 1:
                path.append(j)
                yield from walk(path, target)
                path.pop()

    for i, m in enumerate(mats):
        target = index[m.shift(-1)]
        if reach[n - 1][i] >> target & 1:
            yield from walk([i], target)


@dataclass(frozen=True)
class Multiear:
    """Index i whose pair {i, i+1} persists through M_1..M_t while {i-1, i}
    holds for M_{t+1}..M_n (indices mod 2n)."""

    index: int
    split: int


def multiears(necklace: Necklace, extended_range: bool = False) -> tuple[Multiear, ...]:
    """All multiears, with the split t ranging over 1..n-1; extended_range
    additionally scans t in {0, n} (which the shift closure rules out)."""
    n = necklace.order
    g = 2 * n
    chain = necklace.with_closure()
    ts = range(0, n + 1) if extended_range else range(1, n)
    out = []
    for i in range(g):
        up = (min(i, (i + 1) % g), max(i, (i + 1) % g))
        down = (min((i - 1) % g, i), max((i - 1) % g, i))
        for t in ts:
            if all(m.has_pair(*up) for m in chain[:t]) and all(
                m.has_pair(*down) for m in chain[t:]
            ):
                out.append(Multiear(i, t))
    return tuple(out)


def pairwise_basketball_check(necklace: Necklace) -> bool:
    """True iff interleave(M_t, M_u) is a basketball for all 1 <= t < u <= n."""
    chain = necklace.with_closure()
    for t in range(len(chain)):
        for u in range(t + 1, len(chain)):
            try:
                validate_basketball(interleave(chain[t], chain[u]))
            except HarmonicaError:
                return False
    return True
