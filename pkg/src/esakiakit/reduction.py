"""E-partitions, quotients, p-morphisms, and the two reduction moves.

An equivalence on a finite poset is an E-partition when related elements
see the same blocks above them. Quotients of E-partitions are again
posets, and every surjective p-morphism between finite posets factors
into single-pair merges of two kinds: alpha (an element is merged into
its unique immediate successor) and beta (two elements with identical
immediate successor sets are merged).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (InvalidId, NotEPartition, NotMergeable, NotPMorphism,
                     NotSurjective, NotWeakColoring, PropertyFalsified,
                     TooLarge)
from .poset import Poset, ids_of, mask_of

ALL_EPARTITIONS_LIMIT = 8


@dataclass(frozen=True)
class EPartition:
    """Partition of a poset's elements, blocks sorted and tupled."""

    base: Poset
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(base: Poset, blocks: Iterable[Iterable[int]]) -> "EPartition":
        seen = set()
        norm = []
        for b in blocks:
            bb = tuple(sorted(b))
            if not bb:
                raise InvalidId("empty block")
            norm.append(bb)
            seen.update(bb)
        if seen != set(range(base.n)):
            raise InvalidId("blocks do not partition 0..n-1")
        if sum(len(b) for b in norm) != base.n:
            raise InvalidId("blocks overlap")
        return EPartition(base, tuple(sorted(norm)))

    @staticmethod
    def identity(base: Poset) -> "EPartition":
        return EPartition(base, tuple((x,) for x in range(base.n)))

    @staticmethod
    def from_pairs(base: Poset, pairs: Iterable[Sequence[int]]) -> "EPartition":
        """Finest partition identifying all the given pairs."""
        parent = list(range(base.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
        groups: dict[int, list[int]] = {}
        for x in range(base.n):
            groups.setdefault(find(x), []).append(x)
        return EPartition.from_blocks(base, groups.values())

    def block_of(self, x: int) -> int:
        return self._lookup()[x]

    def _lookup(self) -> tuple[int, ...]:
        if not hasattr(self, "_cache"):
            look = [0] * self.base.n
            for i, b in enumerate(self.blocks):
                for x in b:
                    look[x] = i
            object.__setattr__(self, "_cache", tuple(look))
        return self._cache

    def same(self, x: int, y: int) -> bool:
        return self.block_of(x) == self.block_of(y)

    def is_identity(self) -> bool:
        return len(self.blocks) == self.base.n

    def refines(self, other: "EPartition") -> bool:
        """True when every block of self sits inside a block of other."""
        return all(len({other.block_of(x) for x in b}) == 1 for b in self.blocks)

    def join(self, other: "EPartition") -> "EPartition":
        pairs = []
        for part in (self, other):
            for b in part.blocks:
                pairs.extend(zip(b, b[1:]))
        return EPartition.from_pairs(self.base, pairs)


def is_epartition(p: Poset, part: EPartition) -> bool:
    """Back-and-forth check: the set of blocks reachable above x must be
    constant on each block."""
    if part.base is not p and part.base != p:
        raise InvalidId("partition built on a different poset")
    seen_above = []
    for x in range(p.n):
        s = frozenset(part.block_of(z) for z in ids_of(p.up_mask(x)))
        seen_above.append(s)
    for b in part.blocks:
        first = seen_above[b[0]]
        if any(seen_above[x] != first for x in b[1:]):
            return False
    return True


def quotient(p: Poset, part: EPartition) -> tuple[Poset, tuple[int, ...]]:
    """Quotient poset plus the projection map (element -> new block id).

    Block ids are renumbered by (depth of the block's shallowest member,
    smallest original id), so quotients are deterministic.
    """
    if not is_epartition(p, part):
        raise NotEPartition("blocks fail the back-and-forth condition")
    depths = p.depths()
    order = sorted(range(len(part.blocks)),
                   key=lambda i: (min(depths[x] for x in part.blocks[i]),
                                  part.blocks[i][0]))
    rank = {old: new for new, old in enumerate(order)}
    k = len(part.blocks)
    block_mask = [mask_of(b) for b in part.blocks]
    rows = [0] * k
    for old in range(k):
        up = 0
        for x in part.blocks[old]:
            up |= p.up_mask(x)
        row = 0
        for other in range(k):
            if up & block_mask[other]:
                row |= 1 << rank[other]
        rows[rank[old]] = row
    for i in range(k):
        for j in range(k):
            if i != j and (rows[i] >> j) & 1 and (rows[j] >> i) & 1:
                raise NotEPartition("quotient relation is not antisymmetric")
    q = Poset.from_leq(k, rows)
    proj = tuple(rank[part.block_of(x)] for x in range(p.n))
    return q, proj


def is_pmorphism(p: Poset, q: Poset, f: Sequence[int]) -> bool:
    """Order preserving plus the back condition
    (everything above f(x) is hit from above x)."""
    if len(f) != p.n:
        raise InvalidId("map length mismatch")
    for v in f:
        if not 0 <= v < q.n:
            raise InvalidId(f"image {v} outside codomain")
    for x, y in p.covers:
        if not q.leq(f[x], f[y]):
            return False
    for x in range(p.n):
        image_up = mask_of(f[z] for z in ids_of(p.up_mask(x)))
        if q.up_mask(f[x]) & ~image_up:
            return False
    return True


def kernel(p: Poset, f: Sequence[int]) -> EPartition:
    groups: dict[int, list[int]] = {}
    for x, v in enumerate(f):
        groups.setdefault(v, []).append(x)
    return EPartition.from_blocks(p, groups.values())


# ----- single-pair moves ------------------------------------------------------


def alpha_mergeable(p: Poset, x: int, y: int) -> bool:
    """x may be folded into y when y is x's only immediate successor."""
    return x != y and p.covers_up(x) == (y,)


def beta_mergeable(p: Poset, x: int, y: int) -> bool:
    """x and y have exactly the same immediate successors (maximal pairs
    included)."""
    return x != y and p.covers_up(x) == p.covers_up(y)


@dataclass(frozen=True)
class ReductionStep:
    """One merge. `pair` holds original ids of the two merged elements;
    snapshots are optional (heavy schedules skip them)."""

    kind: str                    # 'alpha' or 'beta'
    pair: tuple[int, int]
    pre: Poset | None = None
    post: Poset | None = None


def merge_step(p: Poset, kind: str, x: int, y: int) -> tuple[Poset, tuple[int, ...]]:
    """Apply one alpha or beta merge; returns (reduced poset, projection)."""
    if kind == "alpha":
        ok = alpha_mergeable(p, x, y)
    elif kind == "beta":
        ok = beta_mergeable(p, x, y)
    else:
        raise InvalidId(f"unknown step kind {kind!r}")
    if not ok:
        raise NotMergeable(f"pair ({x}, {y}) is not {kind}-mergeable")
    blocks = [[z] for z in range(p.n) if z not in (x, y)]
    blocks.append([x, y])
    return quotient(p, EPartition.from_blocks(p, blocks))


def mergeable_pairs(p: Poset) -> list[tuple[str, int, int]]:
    """Every single-pair move, deterministically ordered by
    (depth of the merged-from element, ids, kind)."""
    depths = p.depths()
    out = []
    for x in range(p.n):
        succ = p.covers_up(x)
        if len(succ) == 1:
            out.append((depths[x], x, succ[0], 0, "alpha"))
        for y in range(x + 1, p.n):
            if succ == p.covers_up(y):
                out.append((depths[x], x, y, 1, "beta"))
    out.sort()
    return [(kind, x, y) for _, x, y, _, kind in out]


def decompose_pmorphism(p: Poset, q: Poset, f: Sequence[int]) -> list[ReductionStep]:
    """Factor a surjective p-morphism into single-pair merges.

    Greedy: repeatedly take the first mergeable pair identified by the
    map. Composing the returned steps reproduces the kernel of f.
    """
    if not is_pmorphism(p, q, f):
        raise NotPMorphism("input map")
    if set(f) != set(range(q.n)):
        raise NotSurjective("image misses codomain elements")
    steps: list[ReductionStep] = []
    cur = p
    cur_f = list(f)
    trace: list[tuple[int, ...]] = []   # projections, for id bookkeeping
    while True:
        if len(set(cur_f)) == cur.n:
            break
        found = None
        for kind, x, y in mergeable_pairs(cur):
            if cur_f[x] == cur_f[y]:
                found = (kind, x, y)
                break
        if found is None:
            raise NotPMorphism("no mergeable identified pair; factorization stuck")
        kind, x, y = found
        nxt, proj = merge_step(cur, kind, x, y)
        steps.append(ReductionStep(kind, _original_pair(trace, x, y), cur, nxt))
        new_f = [0] * nxt.n
        for z in range(cur.n):
            new_f[proj[z]] = cur_f[z]
        trace.append(proj)
        cur, cur_f = nxt, new_f
    return steps


def _original_pair(trace: list[tuple[int, ...]], x: int, y: int) -> tuple[int, int]:
    """Map current ids back through recorded projections to original ids.

    Order is preserved: for alpha steps x is the element folded into y,
    and replaying with the pair swapped would not be mergeable."""
    for proj in reversed(trace):
        x = proj.index(x)
        y = proj.index(y)
    return (x, y)


def compose_steps(p: Poset, steps: Iterable[ReductionStep]) -> tuple[Poset, EPartition]:
    """Replay steps (validating each) and return the final poset and the
    accumulated kernel on p."""
    cur = p
    proj = list(range(p.n))          # original -> current
    for step in steps:
        x, y = step.pair
        bx, by = proj[x], proj[y]
        if bx == by:
            raise NotMergeable(f"pair {step.pair} already identified")
        nxt, pi = merge_step(cur, step.kind, bx, by)
        proj = [pi[v] for v in proj]
        cur = nxt
    return cur, kernel(p, proj)


# ----- color-respecting reduction ------------------------------------------------


def coarsest_color_respecting(p: Poset, coloring, *,
                              order: Callable[[list], tuple] | None = None) -> EPartition:
    """Largest E-partition that never merges two colors.

    Greedy fixpoint: merge same-colored alpha/beta pairs until none remain.
    The result is order independent; the default order is the deterministic
    (depth, id, id) rule. `order` exists so tests can scramble it.
    """
    part, _steps = color_respecting_reduction(p, coloring, order=order)
    return part


def color_respecting_reduction(p: Poset, coloring, *,
                               order=None) -> tuple[EPartition, list[ReductionStep]]:
    from .coloring import is_weak_coloring   # local import, no cycle at load

    if not is_weak_coloring(p, coloring):
        raise NotWeakColoring("input coloring is not order preserving")
    cur = p
    colors = list(coloring.colors)
    proj = list(range(p.n))
    steps: list[ReductionStep] = []
    trace: list[tuple[int, ...]] = []
    while True:
        cands = [(kind, x, y) for kind, x, y in mergeable_pairs(cur)
                 if colors[x] == colors[y]]
        if not cands:
            break
        if order is not None:
            cands = order(cands)
        kind, x, y = cands[0]
        nxt, pi = merge_step(cur, kind, x, y)
        steps.append(ReductionStep(kind, _original_pair(trace, x, y)))
        new_colors = [0] * nxt.n
        for z in range(cur.n):
            new_colors[pi[z]] = colors[z]
        trace.append(pi)
        proj = [pi[v] for v in proj]
        cur, colors = nxt, new_colors
    return kernel(p, proj), steps


def all_epartitions(p: Poset) -> list[EPartition]:
    """Every E-partition, by filtering all set partitions. Small posets only."""
    if p.n > ALL_EPARTITIONS_LIMIT:
        raise TooLarge(f"all_epartitions limited to {ALL_EPARTITIONS_LIMIT}")
    out = []
    for blocks in _set_partitions(list(range(p.n))):
        part = EPartition.from_blocks(p, blocks)
        if is_epartition(p, part):
            out.append(part)
    return out


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


def brute_coarsest_color_respecting(p: Poset, coloring) -> EPartition:
    """Reference oracle for coarsest_color_respecting: scan every
    E-partition, keep the ones with single-colored blocks, and return the
    one that every other refines. TooLarge past the enumeration limit;
    PropertyFalsified if no unique coarsest exists (it always should)."""
    candidates = []
    for part in all_epartitions(p):
        if all(len({coloring.colors[x] for x in block}) == 1
               for block in part.blocks):
            candidates.append(part)
    best = min(candidates, key=lambda e: (len(e.blocks), e.blocks))
    for part in candidates:
        if not part.refines(best):
            raise PropertyFalsified(
                "color-respecting partitions lack a greatest element")
    return best
