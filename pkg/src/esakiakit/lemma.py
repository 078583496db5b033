"""Merge scheduling on ladder subspaces and its transport along an embedding.

Given a weak coloring of an upward-closed piece of a ladder, the
scheduler produces a sequence of same-color beta merges whose kernel
puts a merged pair into every full level. The strategy sweeps levels
from the top, fusing blocks that agree on color and on immediate
successors; when a level refuses to fuse completely, the colors in play
provably lose at least one bit, and the scheduler recurses on a
narrower column set whose width is twice the number of surviving color
bits.

The delta embedding sends ladder columns onto the c/d/ea rows of the
companion space, three ladder levels per row level. Replaying a ladder
schedule through it yields, for every full c-row, a merged c-pair. Both
the scheduler and the transport re-validate every merge on the actual
posets rather than trusting the combinatorial argument; a divergence
raises PropertyFalsified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring, is_coloring, is_weak_coloring, search_coloring
from .errors import (EmbeddingMismatch, InvalidId, NotMergeable,
                     NotUpset, NotWeakColoring, OutOfRange,
                     PropertyFalsified, QuotientNotColorable)
from .poset import Poset
from .reduction import (EPartition, ReductionStep,
                        coarsest_color_respecting, compose_steps, kernel,
                        merge_step, quotient)
from .spaces import SpaceLabel, ladder_truncation, width_of


@dataclass(frozen=True)
class Schedule:
    """Ordered beta merges on `source`, with their accumulated kernel."""

    source: Poset
    steps: tuple[ReductionStep, ...]
    kernel: EPartition


def _ladder_coordinates(v: Poset, width: int) -> dict[int, tuple[int, int]]:
    """Validate that v is an upward-closed chunk of a ladder and return
    element -> (level, column)."""
    if v.labels is None:
        raise InvalidId("ladder subspaces must carry their generated labels")
    coords = {}
    present: dict[int, set[int]] = {}
    for x in range(v.n):
        lab = SpaceLabel.parse(v.labels[x])
        if lab.kind != "y":
            raise InvalidId(f"element {x} labeled {v.labels[x]!r} is not a ladder point")
        if lab.index >= width:
            raise OutOfRange(f"column {lab.index} exceeds width {width}")
        coords[x] = (lab.level, lab.index)
        present.setdefault(lab.level, set()).add(lab.index)
    for m, cols in present.items():
        if m == 0:
            continue
        above = present.get(m - 1, set())
        for i in cols:
            if not (set(range(width)) - {i}) <= above:
                raise NotUpset(f"level {m - 1} misses successors of column {i}")
    expected = set()
    for m, cols in present.items():
        for i in cols:
            for j in present.get(m - 1, set()):
                if i != j:
                    expected.add((m, i, m - 1, j))
    actual = {coords[x] + coords[y] for x, y in v.covers}
    if actual != expected:
        raise NotUpset("cover relation does not match the ladder pattern")
    return coords


class _Column:
    """A fused group of same-level cells, tracked by original columns."""

    __slots__ = ("level", "indices", "color", "rep")

    def __init__(self, level: int, indices: frozenset, color: int, rep: int):
        self.level = level
        self.indices = indices
        self.color = color
        self.rep = rep


def schedule_beta_reductions(v: Poset, f: Coloring) -> Schedule:
    """Same-color beta merges leaving a merged pair in every full level.

    The sweep descends level by level, fusing blocks with equal color and
    equal immediate-successor sets. A level where some color splits into
    several successor classes triggers the narrowing recursion described
    in the module docstring. The returned schedule is replayed through
    verify_schedule before being handed back, so a returned Schedule is
    always valid.
    """
    if not is_weak_coloring(v, f):
        raise NotWeakColoring("scheduler needs an order preserving coloring")
    width = width_of(f.n)
    coords = _ladder_coordinates(v, width)

    top_level = max((m for m, _ in coords.values()), default=-1)
    cell: dict[tuple[int, int], _Column] = {}
    by_level: dict[int, list[_Column]] = {m: [] for m in range(top_level + 1)}
    for x, (m, i) in coords.items():
        col = _Column(m, frozenset([i]), f.colors[x], x)
        cell[(m, i)] = col
        by_level[m].append(col)
    steps: list[ReductionStep] = []

    def signature(col: _Column):
        if col.level == 0:
            return ("top",)
        if len(col.indices) > 1:
            return ("all",)
        i = next(iter(col.indices))
        above = cell.get((col.level - 1, i))
        if above is not None and above.indices == frozenset([i]):
            return ("exc", i)
        return ("all",)

    def fuse(group: list[_Column]) -> None:
        group = sorted(group, key=lambda c: min(c.indices))
        head = group[0]
        for other in group[1:]:
            steps.append(ReductionStep("beta", tuple(sorted((head.rep, other.rep)))))
            head.indices = head.indices | other.indices
            head.rep = min(head.rep, other.rep)
            for i in other.indices:
                cell[(head.level, i)] = head
            by_level[head.level].remove(other)

    def run(active: frozenset, lo: int, bits: int) -> None:
        for m in range(lo, top_level + 1):
            blocks = [c for c in by_level[m] if c.indices <= active]
            if not blocks:
                break
            classes: dict[tuple, list[_Column]] = {}
            for c in blocks:
                classes.setdefault((c.color, signature(c)), []).append(c)
            split = {}
            for color, _sig in classes:
                split[color] = split.get(color, 0) + 1
            if all(count == 1 for count in split.values()):
                for group in classes.values():
                    if len(group) > 1:
                        fuse(group)
                continue
            covered = set()
            for c in blocks:
                covered |= c.indices
            if covered != active:
                return                      # no further full levels below
            joined = 0
            for c in blocks:
                joined |= c.color
            surviving = joined.bit_count()
            if surviving >= bits:
                raise PropertyFalsified(
                    f"level {m}: colors kept all {bits} bits while split")
            goal = 1 << (surviving + 1)
            chosen: list[_Column] = []
            for color in sorted({c.color for c in blocks}):
                best = max(
                    (g for (col, _s), g in classes.items() if col == color),
                    key=lambda g: (len(g), -min(min(c.indices) for c in g)))
                best = sorted(best, key=lambda c: min(c.indices))
                take = min(len(best), goal - len(chosen))
                chosen.extend(best[:take])
                if len(chosen) == goal:
                    break
            if len(chosen) < goal:
                raise PropertyFalsified(
                    f"level {m}: only {len(chosen)} columns available, "
                    f"need {goal}")
            narrowed = frozenset().union(*(c.indices for c in chosen))
            run(narrowed, m, surviving)
            return

    if coords:
        run(frozenset(range(width)), 0, f.n)
    final_steps = tuple(steps)
    proj = list(range(v.n))
    cur = v
    for step in final_steps:
        cur, pi = merge_step(cur, "beta", proj[step.pair[0]], proj[step.pair[1]])
        proj = [pi[t] for t in proj]
    schedule = Schedule(v, final_steps, kernel(v, proj))
    verify_schedule(v, f, schedule)
    return schedule


def full_levels(v: Poset, width: int) -> list[int]:
    """Levels of a labeled ladder subspace holding all `width` columns."""
    coords = _ladder_coordinates(v, width)
    seen: dict[int, set[int]] = {}
    for m, i in coords.values():
        seen.setdefault(m, set()).add(i)
    return sorted(m for m, cols in seen.items() if len(cols) == width)


def verify_schedule(v: Poset, f: Coloring, schedule: Schedule) -> None:
    """Independent replay: each step beta-valid, kernel color-respecting,
    and a merged pair inside every full level. Raises on any failure."""
    if schedule.source != v:
        raise InvalidId("schedule was built on a different poset")
    _final, ker = compose_steps(v, schedule.steps)
    if ker != schedule.kernel:
        raise PropertyFalsified("stored kernel disagrees with replay")
    for block in ker.blocks:
        if len({f.colors[x] for x in block}) > 1:
            raise PropertyFalsified(f"kernel block {block} mixes colors")
    coords = _ladder_coordinates(v, width_of(f.n))
    for m in full_levels(v, width_of(f.n)):
        members = [x for x, (lev, _i) in coords.items() if lev == m]
        blocks = {ker.block_of(x) for x in members}
        if len(blocks) == len(members):
            raise PropertyFalsified(f"full level {m} has no merged pair")


@dataclass(frozen=True)
class DeltaMap:
    """Embedding of a full ladder prefix onto the c, d, ea rows."""

    n: int
    depth: int                    # deepest c-row reached
    source: Poset
    target: Poset
    mapping: tuple[int, ...]      # source element -> target element

    def __call__(self, x: int) -> int:
        return self.mapping[x]


_ROW_KINDS = ("c", "d", "ea")


def delta_map(n: int, depth: int, target: Poset) -> DeltaMap:
    """Build the embedding y(3r+s, i) -> {c, d, ea}(r, i) into `target`.

    The target must carry generated labels and contain every image; the
    map is checked to be an order embedding, element by element.
    """
    if target.labels is None:
        raise EmbeddingMismatch("target carries no labels to match against")
    source = ladder_truncation(n, 3 * depth)
    lookup = {lab: x for x, lab in enumerate(target.labels)}
    mapping = []
    for x in range(source.n):
        lab = SpaceLabel.parse(source.labels[x])
        r, s = divmod(lab.level, 3)
        image = str(SpaceLabel(_ROW_KINDS[s], r, lab.index))
        if image not in lookup:
            raise EmbeddingMismatch(f"target misses {image}")
        mapping.append(lookup[image])
    for x in range(source.n):
        for y in range(source.n):
            if source.leq(x, y) != target.leq(mapping[x], mapping[y]):
                raise EmbeddingMismatch(
                    f"comparability of ({source.labels[x]}, {source.labels[y]}) "
                    "not preserved")
    return DeltaMap(n, depth, source, target, tuple(mapping))


@dataclass(frozen=True)
class LiftCertificate:
    """Outcome of transporting a ladder schedule: one merged index pair
    per full c-row, plus the transported steps and their kernel."""

    levels: dict[int, tuple[int, int]]
    steps: tuple[ReductionStep, ...]
    kernel: EPartition

    def to_json_dict(self) -> dict:
        return {"levels": {str(p): list(pair) for p, pair in sorted(self.levels.items())},
                "steps": [{"kind": s.kind, "pair": list(s.pair)} for s in self.steps]}


def c_rows(z: Poset, n: int) -> dict[int, dict[int, int]]:
    """level -> {index -> element} for the c-labeled points of z."""
    if z.labels is None:
        raise InvalidId("expected generated labels")
    rows: dict[int, dict[int, int]] = {}
    for x, text in enumerate(z.labels):
        lab = SpaceLabel.parse(text)
        if lab.kind == "c":
            rows.setdefault(lab.level, {})[lab.index] = x
    return rows


def full_c_levels(z: Poset, n: int) -> list[int]:
    w = width_of(n)
    return sorted(p for p, row in c_rows(z, n).items() if len(row) == w)


def lift_schedule(z: Poset, f: Coloring, delta: DeltaMap, schedule: Schedule,
                  coarsest: EPartition | None = None) -> LiftCertificate:
    """Replay a ladder schedule on the delta images inside z.

    Every transported step is re-checked for beta-validity on the actual
    quotient of z; the structure of the two spaces guarantees validity,
    so a failure is reported as PropertyFalsified, not as a plain error.
    The kernel must respect f and sit inside the coarsest
    color-respecting partition, and every full c-row of z must end up
    with a merged pair.
    """
    if schedule.source != delta.source:
        raise InvalidId("schedule and delta built on different ladders")
    if not is_weak_coloring(z, f):
        raise NotWeakColoring("lift needs an order preserving coloring on z")
    rows = c_rows(z, delta.n)
    deepest = [p for p, row in rows.items() if len(row) == width_of(delta.n)]
    if any(p > delta.depth for p in deepest):
        raise OutOfRange("delta embedding stops above a full c-row of z")

    cur = z
    proj = list(range(z.n))
    for pos, step in enumerate(schedule.steps):
        u, v = (delta(t) for t in step.pair)
        if f.colors[u] != f.colors[v]:
            raise PropertyFalsified(
                f"step {pos} merges {z.labels[u]} and {z.labels[v]} "
                "of different colors")
        try:
            cur, pi = merge_step(cur, "beta", proj[u], proj[v])
        except NotMergeable as exc:
            raise PropertyFalsified(
                f"step {pos} ({z.labels[u]}, {z.labels[v]}) stopped being "
                f"beta-valid: {exc}") from exc
        proj = [pi[t] for t in proj]
    ker = kernel(z, proj)

    for block in ker.blocks:
        if len({f.colors[x] for x in block}) > 1:
            raise PropertyFalsified("lifted kernel mixes colors")
    if coarsest is None:
        coarsest = coarsest_color_respecting(z, f)
    if not ker.refines(coarsest):
        raise PropertyFalsified(
            "lifted kernel escapes the coarsest color-respecting partition")

    levels: dict[int, tuple[int, int]] = {}
    for p in sorted(deepest):
        row = rows[p]
        by_block: dict[int, int] = {}
        pair = None
        for i in sorted(row):
            b = ker.block_of(row[i])
            if b in by_block:
                pair = (by_block[b], i)
                break
            by_block[b] = i
        if pair is None:
            raise PropertyFalsified(f"full c-row {p} has no merged pair")
        levels[p] = pair
    return LiftCertificate(levels, schedule.steps, ker)


def corollary_certificate(z: Poset, f: Coloring, n: int) -> LiftCertificate:
    """End-to-end transport: pick the deepest full c-row of z, build the
    embedding and the ladder schedule for the pulled-back coloring, and
    lift it. With no full c-row the certificate is empty."""
    full = full_c_levels(z, n)
    if not full:
        return LiftCertificate({}, (), EPartition.identity(z))
    delta = delta_map(n, max(full), z)
    pulled = Coloring.of(delta.source, n,
                         [f.colors[delta(x)] for x in range(delta.source.n)])
    schedule = schedule_beta_reductions(delta.source, pulled)
    return lift_schedule(z, f, delta, schedule)


def corollary_check(z: Poset, part: EPartition, n: int,
                    witness: Coloring | None = None,
                    budget: int | None = None) -> bool:
    """Does every full c-row of z contain a pair merged by `part`?

    The quotient by `part` must admit a coloring of order n (pass one as
    `witness`, or let a bounded search find it). The structural claim is
    that the answer is always yes; callers treat a False as a
    falsification event.
    """
    quot, proj = quotient(z, part)
    if witness is not None:
        induced = Coloring.of(quot, n, witness.colors)
        if not is_coloring(quot, induced):
            raise QuotientNotColorable("provided witness is not a valid coloring")
    else:
        if search_coloring(quot, n, budget) is None:
            raise QuotientNotColorable(f"no coloring of order {n} found")
    rows = c_rows(z, n)
    for p in full_c_levels(z, n):
        row = rows[p]
        blocks = {part.block_of(x) for x in row.values()}
        if len(blocks) == len(row):
            return False
    return True
