"""Finite posets on dense integer ids.

Reachability is stored as one Python-int bitmask row per element, so order
tests, upset arithmetic, and antichain search are all bit operations. Covers
handed to the constructor are transitively reduced; cyclic input is rejected.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Sequence

from .errors import CycleDetected, InvalidId, NotUpset, TooLarge

BRUTE_FORCE_LIMIT = 20


def mask_of(ids: Iterable[int]) -> int:
    """Pack element ids into a bitmask."""
    m = 0
    for x in ids:
        m |= 1 << x
    return m


def ids_of(mask: int) -> list[int]:
    """Unpack a bitmask into a sorted id list."""
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


class Poset:
    """Immutable finite poset. Build with :meth:`from_covers`."""

    __slots__ = ("n", "covers", "labels", "_up", "_down", "_succ", "_pred",
                 "_depths", "_canon")

    def __init__(self, n, covers, labels, up, down, succ, pred):
        self.n = n
        self.covers = covers
        self.labels = labels
        self._up = up
        self._down = down
        self._succ = succ
        self._pred = pred
        self._depths = None
        self._canon = None

    # ----- construction ---------------------------------------------------

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[Sequence[int]],
                    labels: Mapping[int, str] | Sequence[str] | None = None) -> "Poset":
        """Build a poset from cover pairs (x, y) meaning x < y.

        The input may contain transitively redundant pairs; they are dropped.
        A pair (x, x) or any directed cycle raises CycleDetected.
        """
        if n < 0:
            raise InvalidId(f"negative size {n}")
        succ_raw: list[set[int]] = [set() for _ in range(n)]
        for pair in covers:
            x, y = pair
            if not (0 <= x < n and 0 <= y < n):
                raise InvalidId(f"cover ({x}, {y}) outside 0..{n - 1}")
            if x == y:
                raise CycleDetected(f"reflexive cover ({x}, {y})")
            succ_raw[x].add(y)

        order = _toposort(n, succ_raw)
        up = [0] * n
        for x in reversed(order):
            m = 1 << x
            for y in succ_raw[x]:
                m |= up[y]
            up[x] = m
        down = _transpose(n, up)

        # Keep (x, y) only when nothing sits strictly between them.
        succ: list[tuple[int, ...]] = [()] * n
        pred_sets: list[list[int]] = [[] for _ in range(n)]
        reduced = []
        for x in range(n):
            kept = []
            for y in succ_raw[x]:
                between = (up[x] & down[y]) & ~(1 << x) & ~(1 << y)
                if not between:
                    kept.append(y)
                    pred_sets[y].append(x)
                    reduced.append((x, y))
            succ[x] = tuple(sorted(kept))
        pred = [tuple(sorted(p)) for p in pred_sets]
        reduced.sort()

        p = cls(n, tuple(reduced), _norm_labels(n, labels), up, down, succ, tuple(pred))
        assert p._closure_of_covers() == up, "transitive reduction changed reachability"
        return p

    @classmethod
    def from_leq(cls, n: int, leq_rows: Sequence[int],
                 labels: Mapping[int, str] | Sequence[str] | None = None) -> "Poset":
        """Build from reachability rows (row x = mask of all y >= x).

        All strict pairs are handed to from_covers, which reduces them.
        """
        covers = []
        for x in range(n):
            for y in ids_of(leq_rows[x] & ~(1 << x)):
                covers.append((x, y))
        return cls.from_covers(n, covers, labels)

    def _closure_of_covers(self) -> list[int]:
        order = _toposort(self.n, [set(s) for s in self._succ])
        up = [0] * self.n
        for x in reversed(order):
            m = 1 << x
            for y in self._succ[x]:
                m |= up[y]
            up[x] = m
        return up

    # ----- order queries ----------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool((self._up[x] >> y) & 1)

    def up_mask(self, x: int) -> int:
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def covers_up(self, x: int) -> tuple[int, ...]:
        """Immediate successors of x."""
        return self._succ[x]

    def covers_down(self, x: int) -> tuple[int, ...]:
        return self._pred[x]

    def up_set(self, elements: int | Iterable[int]) -> int:
        """Upward closure of a bitmask or id iterable, as a bitmask."""
        mask = elements if isinstance(elements, int) else mask_of(elements)
        out = 0
        for x in ids_of(mask):
            out |= self._up[x]
        return out

    def down_set(self, elements: int | Iterable[int]) -> int:
        mask = elements if isinstance(elements, int) else mask_of(elements)
        out = 0
        for x in ids_of(mask):
            out |= self._down[x]
        return out

    def is_upset(self, mask: int) -> bool:
        return self.up_set(mask) == mask

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def maximal_mask(self) -> int:
        return mask_of(x for x in range(self.n) if not self._succ[x])

    def minimal_mask(self) -> int:
        return mask_of(x for x in range(self.n) if not self._pred[x])

    def has_root(self) -> bool:
        """True iff there is a least element."""
        m = self.minimal_mask()
        return self.n > 0 and m & (m - 1) == 0 and m != 0

    def root(self) -> int:
        if not self.has_root():
            raise ValueError("poset has no least element")
        return ids_of(self.minimal_mask())[0]

    def depth(self, x: int) -> int:
        """Number of elements in the longest chain inside the upset of x."""
        if not 0 <= x < self.n:
            raise InvalidId(f"element {x}")
        return self.depths()[x]

    def depths(self) -> tuple[int, ...]:
        if self._depths is None:
            order = _toposort(self.n, [set(s) for s in self._succ])
            d = [1] * self.n
            for x in reversed(order):
                if self._succ[x]:
                    d[x] = 1 + max(d[y] for y in self._succ[x])
            self._depths = tuple(d)
        return self._depths

    def height(self) -> int:
        """Elements in the longest chain of the whole poset."""
        return max(self.depths(), default=0)

    # ----- antichains and width ---------------------------------------------

    def max_antichain_size(self) -> int:
        """Largest antichain, via Dilworth: n minus a maximum matching on
        the strict comparability bipartite graph."""
        if self.n == 0:
            return 0
        adj = [ids_of(self._up[x] & ~(1 << x)) for x in range(self.n)]
        return self.n - _hopcroft_karp(self.n, adj)

    def width(self) -> int:
        """Max over elements x of the largest antichain inside the upset of x."""
        best = 0
        for x in range(self.n):
            sub, _ = self.induced(ids_of(self._up[x]))
            best = max(best, sub.max_antichain_size())
        return best

    # ----- subposets and rebuilds --------------------------------------------

    def induced(self, ids: Iterable[int]) -> tuple["Poset", dict[int, int]]:
        """Induced subposet on the given ids. Returns (poset, old->new map)."""
        keep = sorted(set(ids))
        for x in keep:
            if not 0 <= x < self.n:
                raise InvalidId(f"element {x}")
        remap = {x: i for i, x in enumerate(keep)}
        rows = []
        keep_mask = mask_of(keep)
        for x in keep:
            rows.append(_compress_mask(self._up[x] & keep_mask, keep))
        labels = None
        if self.labels is not None:
            labels = [self.labels[x] for x in keep]
        return Poset.from_leq(len(keep), rows, labels), remap

    def upset_subposet(self, ids: Iterable[int]) -> tuple["Poset", dict[int, int]]:
        """Induced subposet of an upward-closed id set; NotUpset otherwise."""
        mask = mask_of(ids)
        if not self.is_upset(mask):
            raise NotUpset("element set is not upward closed")
        return self.induced(ids_of(mask))

    def principal_upset(self, x: int) -> tuple["Poset", dict[int, int]]:
        return self.induced(ids_of(self._up[x]))

    def with_bottom(self, label: str | None = None) -> "Poset":
        """Adjoin a fresh least element below everything, as id 0."""
        covers = [(x + 1, y + 1) for x, y in self.covers]
        covers.extend((0, x + 1) for x in ids_of(self.minimal_mask()))
        labels = None
        if self.labels is not None or label is not None:
            old = self.labels or [None] * self.n
            labels = [label] + list(old)
        return Poset.from_covers(self.n + 1, covers, labels)

    def permuted(self, perm: Sequence[int]) -> "Poset":
        """Relabel: old element x becomes perm[x]."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidId("not a permutation of 0..n-1")
        covers = [(perm[x], perm[y]) for x, y in self.covers]
        labels = None
        if self.labels is not None:
            labels = [None] * self.n
            for x, lab in enumerate(self.labels):
                labels[perm[x]] = lab
        return Poset.from_covers(self.n, covers, labels)

    # ----- upset enumeration ---------------------------------------------------

    def upsets(self) -> list[int]:
        """All upsets as bitmasks, one per antichain of minimal generators."""
        out = []
        up, down = self._up, self._down
        n = self.n

        def rec(start: int, mask: int, forbidden: int) -> None:
            out.append(mask)
            for a in range(start, n):
                if not (forbidden >> a) & 1:
                    rec(a + 1, mask | up[a], forbidden | up[a] | down[a])

        rec(0, 0, 0)
        return out

    def downsets(self) -> list[int]:
        full = self.full_mask()
        return [full & ~u for u in self.upsets()]

    # ----- isomorphism -----------------------------------------------------------

    def canonical_form(self):
        """Hashable key equal across isomorphic posets (refinement plus
        individualization with twin pruning)."""
        if self._canon is None:
            self._canon = _canonical_form(self)
        return self._canon

    def isomorphic(self, other: "Poset") -> bool:
        if self.n != other.n or len(self.covers) != len(other.covers):
            return False
        return self.canonical_form() == other.canonical_form()

    # ----- serialization ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        d = {"n": self.n, "covers": [list(c) for c in self.covers]}
        if self.labels is not None:
            d["labels"] = {str(i): lab for i, lab in enumerate(self.labels)
                           if lab is not None}
        return d

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Poset":
        labels = d.get("labels") or None
        if labels is not None and not isinstance(labels, (Mapping, list)):
            raise InvalidId("labels must be a list or an id-to-label map")
        return cls.from_covers(d["n"], [tuple(c) for c in d["covers"]], labels)

    def to_dot(self) -> str:
        """Cover-only DOT, drawn upward."""
        lines = ["digraph poset {", "  rankdir=BT;"]
        for x in range(self.n):
            lab = None if self.labels is None else self.labels[x]
            text = f"{x}" if lab is None else f"{lab}"
            lines.append(f'  n{x} [label="{text}"];')
        for x, y in self.covers:
            lines.append(f"  n{x} -> n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    # ----- dunder ----------------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.n == other.n
                and self.covers == other.covers and self.labels == other.labels)

    def __hash__(self):
        return hash((self.n, self.covers))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={len(self.covers)})"


# ----- helpers ------------------------------------------------------------------


def _norm_labels(n, labels):
    if labels is None:
        return None
    if isinstance(labels, Mapping):
        out = [None] * n
        for k, v in labels.items():
            k = int(k)
            if not 0 <= k < n:
                raise InvalidId(f"label id {k}")
            out[k] = v
        return tuple(out)
    if len(labels) != n:
        raise InvalidId("label list length mismatch")
    return tuple(labels)


def _toposort(n, succ):
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    queue = deque(x for x in range(n) if indeg[x] == 0)
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(order) != n:
        raise CycleDetected("cover relation contains a cycle")
    return order


def _transpose(n, up):
    down = [0] * n
    for x in range(n):
        row = up[x]
        y = 0
        while row:
            if row & 1:
                down[y] |= 1 << x
            row >>= 1
            y += 1
    return down


def _compress_mask(mask, keep):
    out = 0
    for i, x in enumerate(keep):
        if (mask >> x) & 1:
            out |= 1 << i
    return out


def _hopcroft_karp(n, adj):
    """Maximum matching between left copies and right copies of 0..n-1."""
    INF = float("inf")
    match_l = [-1] * n
    match_r = [-1] * n
    dist = [0] * n

    def bfs():
        queue = deque()
        for u in range(n):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u):
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    matching = 0
    while bfs():
        for u in range(n):
            if match_l[u] == -1 and dfs(u):
                matching += 1
    return matching


def max_antichain_size_brute(p: Poset) -> int:
    """Reference route: branch-and-bound maximum independent set in the
    comparability graph. Only for small posets."""
    if p.n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_LIMIT} elements")
    comp = [(p.up_mask(x) | p.down_mask(x)) & ~(1 << x) for x in range(p.n)]
    best = 0

    def rec(cand: int, size: int) -> None:
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = max(best, size)
            return
        x = cand.bit_length() - 1
        rec(cand & ~(1 << x) & ~comp[x], size + 1)
        rec(cand & ~(1 << x), size)

    rec(p.full_mask(), 0)
    return best


def _canonical_form(p: Poset):
    n = p.n
    if n == 0:
        return (0, ())
    succ_sets = [frozenset(p.covers_up(x)) for x in range(n)]
    pred_sets = [frozenset(p.covers_down(x)) for x in range(n)]

    def refine(colors):
        while True:
            keys = []
            for x in range(n):
                keys.append((colors[x],
                             tuple(sorted(colors[y] for y in p.covers_up(x))),
                             tuple(sorted(colors[y] for y in p.covers_down(x)))))
            ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
            new = [ranks[k] for k in keys]
            if new == colors:
                return colors
            colors = new

    init = []
    depths = p.depths()
    for x in range(n):
        init.append((depths[x], len(p.covers_up(x)), len(p.covers_down(x)),
                     bin(p.up_mask(x)).count("1"), bin(p.down_mask(x)).count("1")))
    ranks = {k: i for i, k in enumerate(sorted(set(init)))}
    colors = refine([ranks[k] for k in init])

    best = None

    def encode(order):
        pos = {x: i for i, x in enumerate(order)}
        return tuple(sorted((pos[x], pos[y]) for x, y in p.covers))

    def search(colors):
        nonlocal best
        cells: dict[int, list[int]] = {}
        for x in range(n):
            cells.setdefault(colors[x], []).append(x)
        cell_list = [cells[c] for c in sorted(cells)]
        target = next((cell for cell in cell_list if len(cell) > 1), None)
        if target is None:
            order = [cell[0] for cell in cell_list]
            enc = encode(order)
            if best is None or enc < best:
                best = enc
            return
        fresh = max(colors) + 1
        tried_twins = []
        for v in target:
            key = (succ_sets[v], pred_sets[v])
            if key in tried_twins:
                continue  # swapping twin candidates is an automorphism
            tried_twins.append(key)
            branched = list(colors)
            branched[v] = fresh
            search(refine(branched))

    search(colors)
    return (n, best)
