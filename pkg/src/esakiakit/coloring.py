"""Colorings of finite posets by bit-vector colors.

Colors of order n are the integers 0..2^n-1 ordered by bit inclusion
(the free distributive structure on n bits). A weak coloring is an order
preserving map into that lattice. A coloring must additionally break
every possible single-pair merge: since each nontrivial E-partition
starts with an alpha or beta merge, it suffices that no mergeable pair
shares a color.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import (BudgetExceeded, InvalidId, NotColoring, OutOfRange,
                     PropertyFalsified)
from .poset import Poset, ids_of
from .reduction import mergeable_pairs


def color_leq(a: int, b: int) -> bool:
    """Bit inclusion order on colors."""
    return a & ~b == 0


def color_bits(c: int, n: int) -> str:
    """Most significant bit first, width n."""
    if not 0 <= c < (1 << n):
        raise OutOfRange(f"color {c} needs more than {n} bits")
    return format(c, f"0{n}b")


@dataclass(frozen=True)
class Coloring:
    base: Poset
    n: int
    colors: tuple[int, ...]

    @staticmethod
    def of(base: Poset, n: int, colors: Sequence[int]) -> "Coloring":
        if n < 0:
            raise OutOfRange("negative color order")
        cols = tuple(colors)
        if len(cols) != base.n:
            raise InvalidId("one color per element required")
        for c in cols:
            if not 0 <= c < (1 << n):
                raise OutOfRange(f"color {c} outside order {n}")
        return Coloring(base, n, cols)

    def color(self, x: int) -> int:
        return self.colors[x]

    def bits(self, x: int) -> str:
        return color_bits(self.colors[x], self.n)

    def color_class(self, c: int) -> tuple[int, ...]:
        return tuple(x for x in range(self.base.n) if self.colors[x] == c)

    def to_json_dict(self) -> dict:
        return {"n": self.n,
                "colors": {str(x): self.bits(x) for x in range(self.base.n)}}

    @staticmethod
    def from_json_dict(base: Poset, data: dict) -> "Coloring":
        n = int(data["n"])
        raw = data["colors"]
        if isinstance(raw, Mapping):
            items = raw.items()
        elif isinstance(raw, list):
            items = enumerate(raw)
        else:
            raise InvalidId("colors must be a list or an id-to-bits map")
        cols = [0] * base.n
        seen = set()
        for key, bits in items:
            x = int(key)
            if not 0 <= x < base.n or x in seen:
                raise InvalidId(f"bad or repeated element {key!r}")
            seen.add(x)
            if not isinstance(bits, str) or len(bits) != n \
                    or any(ch not in "01" for ch in bits):
                raise OutOfRange(f"color string {bits!r} is not {n} bits")
            cols[x] = int(bits, 2) if n else 0
        if len(seen) != base.n:
            raise InvalidId("colors missing for some elements")
        return Coloring.of(base, n, cols)


def is_weak_coloring(p: Poset, f: Coloring) -> bool:
    if f.base != p or len(f.colors) != p.n:
        raise InvalidId("coloring built on a different poset")
    return all(color_leq(f.colors[x], f.colors[y]) for x, y in p.covers)


def monochrome_mergeable_pair(p: Poset, f: Coloring) -> tuple[str, int, int] | None:
    for kind, x, y in mergeable_pairs(p):
        if f.colors[x] == f.colors[y]:
            return kind, x, y
    return None


def is_coloring(p: Poset, f: Coloring) -> bool:
    """Weak, and no single merge move can preserve all colors."""
    return is_weak_coloring(p, f) and monochrome_mergeable_pair(p, f) is None


def _color_order(p: Poset) -> list[int]:
    """Top down: every element comes after all its covers."""
    depths = p.depths()
    return sorted(range(p.n), key=lambda x: (depths[x], x))


def search_coloring(p: Poset, n: int, budget: int | None = None) -> Coloring | None:
    """Backtracking search for a coloring of order n.

    Returns the lexicographically least solution along the top-down
    order, or None. A budget bounds the number of color assignments
    tried; exhausting it raises BudgetExceeded rather than answering.
    """
    order = _color_order(p)
    partners: list[list[int]] = [[] for _ in range(p.n)]
    for _, x, y in mergeable_pairs(p):
        partners[x].append(y)
        partners[y].append(x)
    colors = [-1] * p.n
    full = (1 << n) - 1
    spent = 0

    def assign(i: int) -> bool:
        nonlocal spent
        if i == len(order):
            return True
        x = order[i]
        ceiling = full
        for y in p.covers_up(x):
            ceiling &= colors[y]
        for cand in range(full + 1):
            if cand & ~ceiling:
                continue
            if any(colors[y] == cand for y in partners[x]):
                continue
            if budget is not None and spent >= budget:
                raise BudgetExceeded(f"coloring search budget {budget}")
            spent += 1
            colors[x] = cand
            if assign(i + 1):
                return True
            colors[x] = -1
        return False

    if assign(0):
        return Coloring.of(p, n, colors)
    return None


def is_n_colorable(p: Poset, n: int, budget: int | None = None) -> bool:
    return search_coloring(p, n, budget) is not None


def enumerate_weak_colorings(p: Poset, n: int) -> Iterator[Coloring]:
    """All weak colorings of order n, in deterministic order. The count
    grows exponentially; consumers are expected to impose their own cap."""
    order = _color_order(p)
    colors = [0] * p.n
    full = (1 << n) - 1

    def rec(i: int) -> Iterator[Coloring]:
        if i == len(order):
            yield Coloring.of(p, n, colors)
            return
        x = order[i]
        ceiling = full
        for y in p.covers_up(x):
            ceiling &= colors[y]
        for cand in range(full + 1):
            if cand & ~ceiling:
                continue
            colors[x] = cand
            yield from rec(i + 1)

    return rec(0)


def promote_subspace_coloring(p: Poset, f: Coloring, x: int
                              ) -> tuple[Poset, dict[int, int], Coloring]:
    """Restrict a coloring to the upset of x, zeroing out x's own color.

    Elements of the upset whose color equals that of x are recolored to
    0; everyone else keeps their color. The result is again a coloring
    of the subposet. That fact is structural, so its failure is reported
    as PropertyFalsified instead of a plain False.
    """
    if not is_coloring(p, f):
        raise NotColoring("promotion needs a coloring, not just a weak one")
    base_color = f.colors[x]
    sub, remap = p.principal_upset(x)
    new_colors = [0] * sub.n
    for old, new in remap.items():
        c = f.colors[old]
        new_colors[new] = 0 if c == base_color else c
    g = Coloring.of(sub, f.n, new_colors)
    if not is_coloring(sub, g):
        raise PropertyFalsified(
            "promoted coloring on an upset failed to be a coloring")
    return sub, remap, g
