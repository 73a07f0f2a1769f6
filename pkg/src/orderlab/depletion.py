"""Depletions of a partial order over a fibered index set, and their walks.

An instance carries a linearly ordered list of index labels, a core set A,
one fiber per label, and an ambient partial order on the disjoint union.
The depleted relation over an index subset s keeps x <= y only when it is
witnessed inside a single part, through a core interpolant, or by a walk
stepping through every fiber of s between the endpoint levels.

Walks are found by layered reachability: propagate a frontier of fiber
elements level by level, following the ambient order upward (ascending) or
downward (descending).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexLabelError, LevelError, MembershipError
from .posets import Poset


class DepletionInstance:
    """Index labels, core, fibers and the ambient order on their union.

    The parts must be pairwise disjoint and cover the order's elements
    exactly; at least two labels are required.
    """

    __slots__ = ("labels", "core", "fibers", "order", "_level")

    def __init__(self, labels, core, fibers, order: Poset):
        self.labels = tuple(sorted(labels))
        if len(self.labels) < 2:
            raise IndexLabelError("at least two index labels are required")
        if len(set(self.labels)) != len(self.labels):
            raise IndexLabelError("duplicate index labels")
        if set(fibers) != set(self.labels):
            raise IndexLabelError("fiber map keys differ from the labels")
        self.core = frozenset(core)
        self.fibers = {xi: frozenset(fibers[xi]) for xi in self.labels}
        self.order = order
        self._level = {}
        for x in self.core:
            self._level[x] = None
        for xi in self.labels:
            for x in self.fibers[xi]:
                if x in self._level:
                    raise MembershipError(f"element {x!r} occurs in two parts")
                self._level[x] = xi
        if set(self._level) != set(order.elements):
            raise MembershipError("order carrier differs from the union of parts")

    def level(self, x):
        """Fiber label of x, or None for core elements."""
        try:
            return self._level[x]
        except KeyError:
            raise MembershipError(f"element {x!r} not in the instance") from None

    def domain(self, s):
        """Core plus the fibers of the labels in s."""
        out = set(self.core)
        for xi in s:
            out |= self.fibers[xi]
        return frozenset(out)

    def _check_subset(self, s):
        s = tuple(sorted(s))
        for xi in s:
            if xi not in self.fibers:
                raise IndexLabelError(f"unknown index label {xi!r}")
        return s

    def to_json_dict(self):
        return {
            "I": list(self.labels),
            "A": sorted(self.core),
            "F": {str(xi): sorted(self.fibers[xi]) for xi in self.labels},
            "edges": [list(p) for p in self.order.pairs()],
        }

    @classmethod
    def from_json_dict(cls, data):
        from .posets import make_poset
        labels = [int(x) for x in data["I"]]
        fibers = {int(k): tuple(v) for k, v in data["F"].items()}
        elements = set(data["A"])
        for v in fibers.values():
            elements |= set(v)
        order = make_poset(elements, [tuple(e) for e in data["edges"]])
        return cls(labels, data["A"], fibers, order)


@dataclass(frozen=True)
class Walk:
    """One element per label of s, monotone along consecutive levels."""
    s: tuple
    steps: dict
    direction: str  # "ascending" | "descending"

    def endpoints(self):
        return self.steps[self.s[0]], self.steps[self.s[-1]]


def verify_walk(inst: DepletionInstance, walk: Walk) -> bool:
    s = walk.s
    if len(s) < 2 or set(walk.steps) != set(s):
        return False
    for xi in s:
        if walk.steps[xi] not in inst.fibers[xi]:
            return False
    leq = inst.order.leq
    for a, b in zip(s, s[1:]):
        lo, hi = walk.steps[a], walk.steps[b]
        if walk.direction == "ascending":
            if not leq(lo, hi):
                return False
        else:
            if not leq(hi, lo):
                return False
    return True


def restrict_walk(walk: Walk, s) -> Walk:
    """The walk restricted to a label subset with the same extremes."""
    s = tuple(sorted(s))
    if not s or {s[0], s[-1]} != {walk.s[0], walk.s[-1]}:
        raise LevelError("restriction must keep the extreme labels")
    return Walk(s, {xi: walk.steps[xi] for xi in s}, walk.direction)


def frontier_sweep(inst, levels, starts, ascending):
    """Reachable fiber elements per level, with parents for reconstruction."""
    leq = inst.order.leq
    reach = [dict.fromkeys(starts)]  # element -> parent in previous level
    for xi in levels[1:]:
        nxt = {}
        for y in inst.fibers[xi]:
            for x in reach[-1]:
                ok = leq(x, y) if ascending else leq(y, x)
                if ok:
                    nxt[y] = x
                    break
        reach.append(nxt)
    return reach


def _walk_between(inst, levels, x, y, ascending):
    """A walk along all of levels from x (first level) to y (last), or None."""
    reach = frontier_sweep(inst, levels, [x], ascending)
    if y not in reach[-1]:
        return None
    steps = {levels[-1]: y}
    cur = y
    for pos in range(len(levels) - 1, 0, -1):
        cur = reach[pos][cur]
        steps[levels[pos - 1]] = cur
    steps[levels[0]] = cur
    return steps


def find_walk(inst: DepletionInstance, s, x, y):
    """A walk with endpoints x, y through every fiber of s, or None.

    x and y must lie in the fibers of min(s) and max(s) (in either
    assignment).  Ascending when x sits at the lower level, descending
    otherwise.
    """
    s = inst._check_subset(s)
    if len(s) < 2:
        raise LevelError("a walk needs at least two levels")
    lx, ly = inst.level(x), inst.level(y)
    if lx is None or ly is None or {lx, ly} != {s[0], s[-1]}:
        raise LevelError("endpoints must sit in the extreme fibers of s")
    if lx == s[0]:
        steps = _walk_between(inst, list(s), x, y, ascending=True)
        return Walk(s, steps, "ascending") if steps is not None else None
    # x at the top level: the walk descends from y's level upward in index,
    # with elements decreasing, ending at x.
    steps = _walk_between(inst, list(s), y, x, ascending=False)
    return Walk(s, steps, "descending") if steps is not None else None


def _walk_exists(inst, levels, ascending):
    """Any-endpoint walk existence along the given consecutive levels."""
    starts = inst.fibers[levels[0]]
    if not starts:
        return False
    reach = set(starts)
    leq = inst.order.leq
    for xi in levels[1:]:
        nxt = set()
        for y in inst.fibers[xi]:
            for x in reach:
                ok = leq(x, y) if ascending else leq(y, x)
                if ok:
                    nxt.add(y)
                    break
        reach = nxt
        if not reach:
            return False
    return True


def depletion_rel(inst: DepletionInstance, s, x, y) -> bool:
    """The depleted relation over the index subset s (reflexive, non-strict)."""
    s = inst._check_subset(s)
    if len(s) < 2:
        raise IndexLabelError("the depletion needs at least two labels")
    dom = inst.domain(s)
    if x not in dom or y not in dom:
        raise MembershipError("both elements must lie in the core or an s-fiber")
    if not inst.order.leq(x, y):
        return False
    lx, ly = inst.level(x), inst.level(y)
    if lx is None or ly is None or lx == ly:
        return True  # same part, or through the core carrier itself
    # distinct fibers: core interpolant or a walk across the s-interval
    for a in inst.core:
        if inst.order.leq(x, a) and inst.order.leq(a, y):
            return True
    i, j = s.index(lx), s.index(ly)
    lo, hi = min(i, j), max(i, j)
    levels = list(s[lo:hi + 1])
    if i < j:
        return _walk_between(inst, levels, x, y, ascending=True) is not None
    return _walk_between(inst, levels, y, x, ascending=False) is not None


def depletion_order(inst: DepletionInstance, s) -> Poset:
    """The full depleted relation over s as a strict order.

    The construction validates the result, so any transitivity failure
    surfaces as an error rather than being silently closed over.
    """
    s = inst._check_subset(s)
    dom = sorted(inst.domain(s))
    idx = {e: i for i, e in enumerate(dom)}
    rows = [0] * len(dom)
    for x in dom:
        for y in dom:
            if x != y and depletion_rel(inst, s, x, y):
                rows[idx[x]] |= 1 << idx[y]
    return Poset.from_closed_rows(dom, rows)


def star_condition(inst: DepletionInstance, xi, eta_label, exhaustive=False):
    """Whether some index subset with extremes {xi, eta_label} admits no walk
    (in either direction) between the two extreme fibers.

    The default checks only the full interval of labels between the two,
    which is the hardest case: walks restrict from larger index sets to
    smaller ones with the same extremes.  With exhaustive=True every subset
    of the interval is scanned instead (kept as an independent oracle).
    Returns (verdict, witness subset or None).
    """
    if xi == eta_label:
        raise IndexLabelError("the two labels must be distinct")
    for lab in (xi, eta_label):
        if lab not in inst.fibers:
            raise IndexLabelError(f"unknown index label {lab!r}")
    lo, hi = min(xi, eta_label), max(xi, eta_label)
    interval = [l for l in inst.labels if lo <= l <= hi]
    if exhaustive:
        middle = [l for l in interval if l not in (lo, hi)]
        for mask in range(1 << len(middle)):
            sub = [lo] + [m for b, m in enumerate(middle) if mask >> b & 1] + [hi]
            if not (_walk_exists(inst, sub, True) or _walk_exists(inst, sub, False)):
                return True, tuple(sub)
        return False, None
    if _walk_exists(inst, interval, True) or _walk_exists(inst, interval, False):
        return False, None
    return True, tuple(interval)


def maximal_star_set(inst: DepletionInstance):
    """An inclusion-maximal label set containing the first label whose pairs
    all satisfy the star condition; greedy in increasing label order."""
    chosen = [inst.labels[0]]
    for lab in inst.labels[1:]:
        if all(star_condition(inst, prev, lab)[0] for prev in chosen):
            chosen.append(lab)
    return tuple(chosen)
