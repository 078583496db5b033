"""Desk-scale probes: censuses of colorable quotients, the size-bound
arithmetic, the excluded-middle cardinality probe, bounded
local-finiteness and growth measurements, and exact enumeration of
small posets up to isomorphism.

Negative or boundedness observations never rest silently on truncated
search: every report says whether its sweep was exhaustive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .algebra import parse_equation, upset_algebra, validates
from .coloring import (Coloring, enumerate_weak_colorings, is_coloring,
                       is_n_colorable, search_coloring)
from .errors import (BudgetExceeded, OutOfRange, Overflow,
                     PropertyFalsified)
from .poset import Poset, ids_of
from .randgen import random_weak_coloring
from .reduction import (ALL_EPARTITIONS_LIMIT, EPartition, all_epartitions,
                        coarsest_color_respecting, quotient)
from .spaces import abomination_truncation, canonical_coloring, level_size

INT_CAP = 2**63 - 1
EXHAUSTIVE_LIMIT = 12
DEFAULT_SAMPLE = 100
STRICT_SEARCH_BUDGET = 200_000


# ----- poset enumeration up to isomorphism ----------------------------------


@lru_cache(maxsize=None)
def enumerate_posets(n: int) -> tuple[Poset, ...]:
    """All posets with exactly n elements, one per isomorphism class.

    Each class representative is grown by planting a new maximal element
    over every downset of every (n-1)-element representative, then
    deduplicated by canonical form.
    """
    if n < 0:
        raise OutOfRange("need n >= 0")
    if n == 0:
        return (Poset.from_covers(0, []),)
    found: dict = {}
    for q in enumerate_posets(n - 1):
        rows = [q.up_mask(x) for x in range(q.n)]
        for d in q.downsets():
            new_rows = [rows[x] | (1 << q.n if (d >> x) & 1 else 0)
                        for x in range(q.n)]
            new_rows.append(1 << q.n)
            p = Poset.from_leq(n, new_rows)
            found.setdefault(p.canonical_form(), p)
    return tuple(found[k] for k in sorted(found, key=repr))


def enumerate_rooted_posets(max_n: int) -> tuple[Poset, ...]:
    """All rooted posets with 1..max_n elements, one per isomorphism
    class: a rooted poset is its root-complement with a bottom added, so
    the classes are in bijection with arbitrary posets one size down."""
    out = []
    for n in range(max_n):
        for q in enumerate_posets(n):
            out.append(q.with_bottom())
    return tuple(out)


# ----- census of colorable quotients -----------------------------------------


@dataclass(frozen=True)
class CensusEntry:
    """One quotient-isomorphism class: a representative partition, its
    quotient, and a coloring witnessing that the quotient is colorable."""

    partition: EPartition
    quotient: Poset
    witness: Coloring


@dataclass
class QuotientCensus:
    source: Poset
    n: int
    entries: tuple[CensusEntry, ...]
    partitions: tuple[EPartition, ...]
    record: dict


def quotient_census(p: Poset, n: int, budget: int | None = None, *,
                    seed: int = 0) -> QuotientCensus:
    """Collect the quotients of p that admit a coloring of order n.

    Partitions are reached as coarsest_color_respecting over weak
    colorings: exhaustively when p has at most 12 elements (cut short if
    the budget runs out, and marked incomplete), otherwise over a seeded
    sample of `budget` colorings preceded by the least strict coloring
    when one exists. Entries are deduplicated by quotient isomorphism;
    all distinct partitions seen are kept alongside.
    """
    if budget is not None and budget <= 0:
        raise BudgetExceeded("census budget must be positive")
    colorings = []
    exhaustive = p.n <= EXHAUSTIVE_LIMIT
    complete = True
    examined = 0
    if exhaustive:
        mode = "exhaustive"
        source = enumerate_weak_colorings(p, n)
    else:
        mode = "sampled"
        complete = False
        rng = random.Random(seed)
        size = budget if budget is not None else DEFAULT_SAMPLE

        def sampler():
            try:
                strict = search_coloring(p, n, STRICT_SEARCH_BUDGET)
            except BudgetExceeded:
                strict = None
            if strict is not None:
                yield strict
            for _ in range(size):
                yield random_weak_coloring(rng, p, n)

        source = sampler()

    partitions: dict[EPartition, None] = {}
    entries: dict = {}
    for f in source:
        if exhaustive and budget is not None and examined >= budget:
            complete = False
            break
        examined += 1
        part = coarsest_color_respecting(p, f)
        if part in partitions:
            continue
        partitions[part] = None
        q, proj = quotient(p, part)
        wcolors = [0] * q.n
        for x in range(p.n):
            wcolors[proj[x]] = f.colors[x]
        witness = Coloring.of(q, n, wcolors)
        if not is_coloring(q, witness):
            raise PropertyFalsified(
                "coarsest color-respecting quotient rejected its own coloring")
        entries.setdefault(q.canonical_form(), CensusEntry(part, q, witness))
    ordered = sorted(entries.values(),
                     key=lambda e: (e.quotient.n, repr(e.quotient.canonical_form())))
    record = {"mode": mode, "examined": examined, "budget": budget,
              "seed": seed if mode == "sampled" else None,
              "complete": complete}
    return QuotientCensus(p, n, tuple(ordered),
                          tuple(sorted(partitions, key=lambda r: r.blocks)),
                          record)


# ----- bound arithmetic -------------------------------------------------------


def size_bound(n: int, k: int, t: int) -> int:
    """k + 1 + (3 + t) * (2^(n+3) + 2), the cardinality ceiling that the
    collapse argument contradicts. Overflow-checked against 2^63 - 1."""
    if n < 0 or k < 0 or t < 0:
        raise OutOfRange("size_bound needs nonnegative arguments")
    value = k + 1 + (3 + t) * level_size(n)
    if value > INT_CAP:
        raise Overflow(f"{value} exceeds {INT_CAP}")
    return value


def size_bound_by_levels(n: int, k: int, t: int) -> int:
    """The same ceiling assembled the long way: k plus one plus the sizes
    of levels q .. q+t+2, one addition per level."""
    if n < 0 or k < 0 or t < 0:
        raise OutOfRange("size_bound needs nonnegative arguments")
    if k + 1 + (3 + t) * level_size(n) > INT_CAP:
        raise Overflow("sum exceeds the checked integer range")
    total = k + 1
    for _ in range(t + 3):
        total += level_size(n)
    return total


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    t: int
    bound: int
    observed_max: int

    def __post_init__(self):
        if self.bound != size_bound(self.n, self.k, self.t):
            raise PropertyFalsified("bound does not match its components")


def bound_report(n: int, k: int, t: int,
                 census: QuotientCensus | None = None) -> BoundReport:
    observed = max((e.quotient.n for e in census.entries), default=0) \
        if census is not None else 0
    return BoundReport(n, k, t, size_bound(n, k, t), observed)


# ----- excluded-middle probe --------------------------------------------------


KC_MAX_SIZE = 7
_WEM = parse_equation("~x0 | ~~x0 = 1")


@dataclass(frozen=True)
class KcReport:
    max_size: int
    maximum: int
    entries: tuple[tuple[int, int], ...]   # (poset size, algebra size)


def kc_probe(max_size: int) -> KcReport:
    """Largest upset algebra among rooted posets of at most max_size
    elements that validates the weak excluded middle and is generated by
    a single element. Rootedness makes every candidate subdirectly
    irreducible; one-generation is read off a coloring of order 1."""
    if not 1 <= max_size <= KC_MAX_SIZE:
        raise OutOfRange(f"max_size must be within 1..{KC_MAX_SIZE}")
    entries = []
    for p in enumerate_rooted_posets(max_size):
        a = upset_algebra(p)
        ok, _ = validates(a, *_WEM)
        if ok and is_n_colorable(p, 1):
            entries.append((p.n, len(a)))
    entries.sort()
    return KcReport(max_size, max(size for _, size in entries), tuple(entries))


# ----- bounded local finiteness -----------------------------------------------


@dataclass(frozen=True)
class LocalFinitenessReport:
    n: int
    size_cap: int
    count: int
    partial: bool


def local_finiteness_probe(p: Poset, n: int,
                           size_cap: int) -> LocalFinitenessReport:
    """Count the rooted quotients of upsets of p that admit a coloring
    of order n, up to isomorphism and up to size_cap elements. Upsets too
    large for exhaustive partition enumeration are skipped and the
    report is marked partial instead of failing."""
    seen = set()
    partial = False
    for mask in sorted(p.upsets()):
        ids = list(ids_of(mask))
        if not ids:
            continue
        u, _ = p.upset_subposet(ids)
        if u.n > ALL_EPARTITIONS_LIMIT:
            partial = True
            continue
        for part in all_epartitions(u):
            q, _ = quotient(u, part)
            if q.n > size_cap or not q.has_root():
                continue
            if is_n_colorable(q, n):
                seen.add(q.canonical_form())
    return LocalFinitenessReport(n, size_cap, len(seen), partial)


# ----- growth of truncations --------------------------------------------------


GROWTH_SIZE_CAP = 5000


@dataclass(frozen=True)
class GrowthReport:
    n: int
    rows: tuple[tuple[int, int, int], ...]   # (depth, size, colorable size)


def growth_probe(n: int, depths: list[int]) -> GrowthReport:
    """Truncation sizes at the given depths, paired with the size of the
    largest quotient still colorable at order n+1. The canonical coloring
    keeps the identity quotient colorable, so the two numbers agree and
    grow strictly with depth."""
    if n not in (2, 3):
        raise OutOfRange("growth probe is calibrated for n in {2, 3}")
    if any(d < 0 for d in depths) or sorted(set(depths)) != list(depths):
        raise OutOfRange("depths must be strictly increasing and nonnegative")
    rows = []
    for depth in depths:
        size = (depth + 1) * level_size(n)
        if size > GROWTH_SIZE_CAP:
            raise BudgetExceeded(f"truncation of {size} elements over cap")
        x = abomination_truncation(n, depth)
        if x.n != size:
            raise PropertyFalsified("generator size disagrees with arithmetic")
        f = canonical_coloring(n, depth)
        if not is_coloring(x, f):
            raise PropertyFalsified(
                f"canonical coloring fails strictness at depth {depth}")
        rows.append((depth, size, size))
    return GrowthReport(n, tuple(rows))
