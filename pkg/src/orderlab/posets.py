"""Finite strict partial orders and asymmetric relation structures.

Orders are stored strictly (x < y); the non-strict order is "less-than or
equal".  Relation matrices are kept as per-row integer bitsets over the
sorted element list, which keeps closure, reachability and isomorphism
scans cheap for the enumeration-heavy verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AsymmetryError, CycleError, DomainError


class Poset:
    """A finite strict partial order over integer element ids.

    ``rows[i]`` has bit ``j`` set iff ``elements[i] < elements[j]``.  The
    relation is transitively closed, irreflexive and (hence) antisymmetric.
    Instances are immutable and safe to share.
    """

    __slots__ = ("elements", "_index", "_rows")

    def __init__(self, elements, rows, _validated=False):
        self.elements = tuple(sorted(elements))
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._rows = tuple(rows)
        if len(self._index) != len(self.elements):
            raise DomainError("duplicate element ids")
        if not _validated:
            _check_strict_order(self._rows, len(self.elements))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_closed_rows(cls, elements, rows):
        """Build from an already transitively closed strict relation; validates."""
        return cls(elements, rows, _validated=False)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._rows == other._rows

    def __hash__(self):
        return hash((self.elements, self._rows))

    def __repr__(self):
        return f"Poset({list(self.elements)}, pairs={sorted(self.pairs())})"

    # -- queries -----------------------------------------------------------

    def index_of(self, a):
        try:
            return self._index[a]
        except KeyError:
            raise DomainError(f"element {a!r} not in poset") from None

    def __contains__(self, a):
        return a in self._index

    def lt(self, a, b):
        return bool(self._rows[self.index_of(a)] >> self.index_of(b) & 1)

    def leq(self, a, b):
        return a == b or self.lt(a, b)

    def pairs(self):
        """All strict pairs (a, b) with a < b."""
        out = []
        for i, e in enumerate(self.elements):
            row = self._rows[i]
            while row:
                j = (row & -row).bit_length() - 1
                out.append((e, self.elements[j]))
                row &= row - 1
        return out

    def down_set(self, a):
        """Elements strictly below a."""
        i = self.index_of(a)
        return frozenset(e for j, e in enumerate(self.elements)
                         if self._rows[j] >> i & 1)

    def up_set(self, a):
        i = self.index_of(a)
        row = self._rows[i]
        return frozenset(e for j, e in enumerate(self.elements) if row >> j & 1)

    def matrix(self):
        n = len(self.elements)
        return [[bool(self._rows[i] >> j & 1) for j in range(n)] for i in range(n)]

    # -- derived orders ------------------------------------------------------

    def converse(self):
        n = len(self.elements)
        rows = [0] * n
        for i in range(n):
            r = self._rows[i]
            while r:
                j = (r & -r).bit_length() - 1
                rows[j] |= 1 << i
                r &= r - 1
        return Poset(self.elements, rows, _validated=True)

    def restrict(self, subset):
        """Induced subposet on the given element subset."""
        sub = sorted(subset)
        for e in sub:
            self.index_of(e)
        pos = [self.index_of(e) for e in sub]
        rows = []
        for i in pos:
            r = 0
            for jj, j in enumerate(pos):
                if self._rows[i] >> j & 1:
                    r |= 1 << jj
            rows.append(r)
        return Poset(sub, rows, _validated=True)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self):
        return {"elements": list(self.elements), "edges": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json_dict(cls, data):
        return make_poset(data["elements"], [tuple(e) for e in data["edges"]])


def _check_strict_order(rows, n):
    for i in range(n):
        if rows[i] >> i & 1:
            raise CycleError(f"element index {i} related to itself")
        r = rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            if rows[j] & ~rows[i] & ~(1 << i):
                raise CycleError("relation is not transitively closed")
            if rows[j] >> i & 1:
                raise CycleError("relation contains a 2-cycle")
            r &= r - 1


def make_poset(elements, edges):
    """Transitive closure of the generator edges, as a strict order.

    Raises CycleError if the closure would relate some element to itself.
    """
    elements = sorted(set(elements))
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rows = [0] * n
    for a, b in edges:
        if a not in index or b not in index:
            raise DomainError(f"edge ({a!r}, {b!r}) mentions unknown elements")
        rows[index[a]] |= 1 << index[b]
    # Warshall over bitset rows.
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    for i in range(n):
        if rows[i] >> i & 1:
            raise CycleError("edges close to a cycle")
    return Poset(elements, rows, _validated=True)


def converse(p: Poset) -> Poset:
    return p.converse()


def longest_chain(p: Poset):
    """A maximum-length strictly increasing sequence; ties broken by the
    lexicographically least id sequence."""
    n = len(p.elements)
    if n == 0:
        return []
    rows = p._rows
    # transitivity makes ascending successor count a reverse topological
    # order, so chain lengths fill in a single sweep
    length = [1] * n
    for i in sorted(range(n), key=lambda i: bin(rows[i]).count("1")):
        best = 0
        r = rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            best = max(best, length[j])
            r &= r - 1
        length[i] = 1 + best
    total = max(length)
    cur = min(i for i in range(n) if length[i] == total)
    chain = [p.elements[cur]]
    for need in range(total - 1, 0, -1):
        cur = min(j for j in range(n) if rows[cur] >> j & 1 and length[j] == need)
        chain.append(p.elements[cur])
    return chain


class RelStructure:
    """A finite structure with one asymmetric irreflexive binary relation."""

    __slots__ = ("universe", "_index", "_rows")

    def __init__(self, universe, rows):
        self.universe = tuple(sorted(universe))
        self._index = {e: i for i, e in enumerate(self.universe)}
        self._rows = tuple(rows)
        n = len(self.universe)
        for i in range(n):
            if self._rows[i] >> i & 1:
                raise AsymmetryError("relation is reflexive at some element")
            r = self._rows[i]
            while r:
                j = (r & -r).bit_length() - 1
                if self._rows[j] >> i & 1:
                    raise AsymmetryError("relation holds in both directions")
                r &= r - 1

    @classmethod
    def from_pairs(cls, universe, pairs):
        universe = sorted(set(universe))
        index = {e: i for i, e in enumerate(universe)}
        rows = [0] * len(universe)
        for a, b in pairs:
            if a not in index or b not in index:
                raise DomainError(f"pair ({a!r}, {b!r}) mentions unknown elements")
            rows[index[a]] |= 1 << index[b]
        return cls(universe, rows)

    def related(self, a, b):
        return bool(self._rows[self._index[a]] >> self._index[b] & 1)

    def pairs(self):
        out = []
        for i, e in enumerate(self.universe):
            r = self._rows[i]
            while r:
                j = (r & -r).bit_length() - 1
                out.append((e, self.universe[j]))
                r &= r - 1
        return out

    def __len__(self):
        return len(self.universe)

    def to_json_dict(self):
        return {"universe": list(self.universe), "pairs": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json_dict(cls, data):
        return cls.from_pairs(data["universe"], [tuple(p) for p in data["pairs"]])


@dataclass(frozen=True)
class OrderMap:
    """An element assignment from a Poset or RelStructure into another carrier."""
    dom: object
    images: dict

    def __call__(self, a):
        return self.images[a]


def is_order_embedding(f: OrderMap, p: Poset, q: Poset) -> bool:
    """True iff f is injective and a <= b in p exactly when f(a) <= f(b) in q."""
    for a in p.elements:
        if a not in f.images:
            raise DomainError(f"map undefined at {a!r}")
        if f.images[a] not in q:
            raise DomainError(f"image {f.images[a]!r} not in codomain")
    seen = set()
    for a in p.elements:
        fa = f.images[a]
        if fa in seen:
            return False
        seen.add(fa)
    for a in p.elements:
        for b in p.elements:
            if p.leq(a, b) != q.leq(f.images[a], f.images[b]):
                return False
    return True


def linear_extension(p: Poset, subset=None, before=None):
    """A linear extension of p (restricted to subset), with before=(a, b)
    forcing a strictly earlier than b.  Requires that b is not below a.

    Deterministic: smallest available id first.
    """
    elems = sorted(subset) if subset is not None else list(p.elements)
    succ = {a: set() for a in elems}
    indeg = {a: 0 for a in elems}
    eset = set(elems)
    for a in elems:
        for b in p.up_set(a):
            if b in eset:
                succ[a].add(b)
                indeg[b] += 1
    if before is not None:
        a, b = before
        if p.lt(b, a) or a == b:
            raise CycleError("requested pair contradicts the order")
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    out = []
    avail = sorted(a for a in elems if indeg[a] == 0)
    while avail:
        a = avail.pop(0)
        out.append(a)
        changed = False
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                avail.append(b)
                changed = True
        if changed:
            avail.sort()
    if len(out) != len(elems):
        raise CycleError("no linear extension exists")
    return out


# --- enumeration of small posets up to isomorphism --------------------------

def enumerate_poset_isotypes(n):
    """All isomorphism types of posets on n elements, as Posets over 0..n-1.

    Every poset admits a labeling making the identity a linear extension, so
    scanning transitively closed upper-triangular relations and deduplicating
    up to isomorphism covers every type exactly once.
    """
    if n == 0:
        return [Poset((), ())]
    uppers = [(i, j) for i in range(n) for j in range(i + 1, n)]
    buckets = {}
    out = []
    for mask in range(1 << len(uppers)):
        rows = [0] * n
        for b, (i, j) in enumerate(uppers):
            if mask >> b & 1:
                rows[i] |= 1 << j
        if not _is_closed(rows, n):
            continue
        profs = _node_profiles(rows, n)
        sig = tuple(sorted(profs))
        bucket = buckets.setdefault(sig, [])
        if not any(_isomorphic(rows, other, profs, oprofs, n)
                   for other, oprofs in bucket):
            bucket.append((rows, profs))
            out.append(Poset(range(n), rows, _validated=True))
    return out


def _is_closed(rows, n):
    for i in range(n):
        r = rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            if rows[j] & ~rows[i]:
                return False
            r &= r - 1
    return True


def _node_profiles(rows, n):
    down = [0] * n
    for i in range(n):
        r = rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            down[j] += 1
            r &= r - 1
    up = [bin(rows[i]).count("1") for i in range(n)]
    profs = []
    for i in range(n):
        succ_up = tuple(sorted(up[j] for j in range(n) if rows[i] >> j & 1))
        pred_down = tuple(sorted(down[j] for j in range(n) if rows[j] >> i & 1))
        profs.append((down[i], up[i], succ_up, pred_down))
    return profs


def _isomorphic(rows_a, rows_b, prof_a, prof_b, n):
    # backtracking vertex matching constrained by node profiles
    cand = [[j for j in range(n) if prof_b[j] == prof_a[i]] for i in range(n)]
    if any(not c for c in cand):
        return False
    assign = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for j in cand[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                if (rows_a[i] >> k & 1) != (rows_b[j] >> assign[k] & 1):
                    ok = False
                    break
                if (rows_a[k] >> i & 1) != (rows_b[assign[k]] >> j & 1):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return rec(0)
