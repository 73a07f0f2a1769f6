"""An injectively universal asymmetric relation on the naturals.

The relation between m < n is read off the base-3 digit of n at position m:
digit 1 points m toward n, digit 2 points n toward m, digit 0 leaves the
pair unrelated.  Prescribing the digits of a fresh number therefore realises
any finite neighbourhood pattern, which is what drives the embedding
recursion.

Because a fresh number must carry digits at the positions of the already
chosen images, images of chains grow like towers of 3: a five-element chain
already outruns any materialised bignum.  SparseNat keeps such numbers
exact as sparse base-3 supports whose positions are again sparse numbers;
all operations here accept plain ints and SparseNats interchangeably and
return plain ints whenever the value fits.
"""

from __future__ import annotations

import enum
from functools import total_ordering

from .errors import DisjointnessError
from .posets import OrderMap, RelStructure


class Rel(enum.Enum):
    FORWARD = "forward"        # m points to n
    BACKWARD = "backward"      # n points to m
    UNRELATED = "unrelated"


_SMALL_LIMIT = 1 << 63


@total_ordering
class SparseNat:
    """An exact natural number as a sparse base-3 support.

    ``support`` holds (position, digit) pairs with digit in {1, 2}, sorted
    by descending position; positions are ints or SparseNats.  Zero is the
    empty support.
    """

    __slots__ = ("support", "_small")

    def __init__(self, support):
        sup = tuple((pos, d) for pos, d in support if d)
        for pos, d in sup:
            if d not in (1, 2):
                raise ValueError("digits must be 1 or 2")
        self.support = tuple(sorted(sup, key=lambda it: _PosKey(it), reverse=True))
        for (p, _), (q, _) in zip(self.support, self.support[1:]):
            if _pos_eq(p, q):
                raise ValueError("duplicate positions in the support")
        self._small = self._compute_small()

    def _compute_small(self):
        total = 0
        for pos, d in self.support:
            p = pos.small() if isinstance(pos, SparseNat) else pos
            if p is None or p >= 64:
                return None
            total += d * 3 ** p
            if total >= _SMALL_LIMIT:
                return None
        return total

    @classmethod
    def from_int(cls, n):
        if n < 0:
            raise ValueError("naturals only")
        support = []
        pos = 0
        while n:
            n, d = divmod(n, 3)
            if d:
                support.append((pos, d))
            pos += 1
        return cls(support)

    def small(self):
        """The plain-int value when it fits, else None."""
        return self._small

    def digit_at(self, pos):
        for q, d in self.support:
            if _pos_eq(q, pos):
                return d
        return 0

    def add_power(self, pos, digit=1):
        """self + digit * 3^pos, assuming position pos is free or absorbs
        without overflowing a digit (carries handled)."""
        cur = self.digit_at(pos)
        total = cur + digit
        rest = [(q, d) for q, d in self.support if not _pos_eq(q, pos)]
        if total <= 2:
            return SparseNat(rest + [(pos, total)])
        # carry: digit 3 -> 0 carry 1, digit 4 -> 1 carry 1
        keep = total - 3
        out = SparseNat(rest + ([(pos, keep)] if keep else []))
        return out.add_power(_succ(pos), 1)

    def successor(self):
        return self.add_power(0, 1)

    def __eq__(self, other):
        other = as_nat(other)
        if self._small is not None and other._small is not None:
            return self._small == other._small
        return _cmp(self, other) == 0

    def __lt__(self, other):
        other = as_nat(other)
        if self._small is not None and other._small is not None:
            return self._small < other._small
        return _cmp(self, other) < 0

    def __hash__(self):
        if self._small is not None:
            return hash(self._small)
        return hash(tuple((hash(as_nat(p)), d) for p, d in self.support))

    def __int__(self):
        if self._small is None:
            raise OverflowError("value does not fit a materialised integer")
        return self._small

    def __repr__(self):
        if self._small is not None:
            return f"SparseNat({self._small})"
        terms = " + ".join(f"{d}*3^{pos!r}" for pos, d in self.support)
        return f"SparseNat({terms})"

    def describe(self):
        """A JSON-able exact description."""
        if self._small is not None:
            return self._small
        return {"sum": [{"digit": d,
                         "exp": pos.describe() if isinstance(pos, SparseNat) else pos}
                        for pos, d in self.support]}


class _PosKey:
    """Sort key wrapper so int and SparseNat positions order together."""

    __slots__ = ("pos",)

    def __init__(self, item):
        self.pos = item[0]

    def __lt__(self, other):
        return _pos_lt(self.pos, other.pos)

    def __eq__(self, other):
        return _pos_eq(self.pos, other.pos)


def as_nat(x):
    if isinstance(x, SparseNat):
        return x
    return SparseNat.from_int(x)


def _pos_eq(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    return as_nat(a) == as_nat(b)


def _pos_lt(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a < b
    return as_nat(a) < as_nat(b)


def _succ(pos):
    if isinstance(pos, int):
        return pos + 1
    nxt = pos.successor()
    return nxt._small if nxt._small is not None else nxt


def _cmp(a: SparseNat, b: SparseNat):
    """Base-3 comparison of sparse supports, top position first."""
    sa, sb = a.support, b.support
    for (pa, da), (pb, db) in zip(sa, sb):
        if not _pos_eq(pa, pb):
            return 1 if _pos_lt(pb, pa) else -1
        if da != db:
            return 1 if da > db else -1
    if len(sa) != len(sb):
        return 1 if len(sa) > len(sb) else -1
    return 0


def _as_small_or_nat(x):
    """Plain int when the value fits, else the SparseNat itself."""
    if isinstance(x, SparseNat):
        s = x.small()
        return s if s is not None else x
    return x


def ternary_digit(n, m):
    """Digit of n at base-3 position m."""
    if isinstance(n, int) and isinstance(m, int):
        if m >= n.bit_length():  # 3^m > 2^m > n
            return 0
        return (n // 3 ** m) % 3
    return as_nat(n).digit_at(m if isinstance(m, int) else as_nat(m))


def rel(m, n) -> Rel:
    """Direction of the pair (m, n); Unrelated when m == n."""
    if isinstance(m, int) and isinstance(n, int):
        if m == n:
            return Rel.UNRELATED
        if m < n:
            d = ternary_digit(n, m)
            return (Rel.UNRELATED, Rel.FORWARD, Rel.BACKWARD)[d]
        d = ternary_digit(m, n)
        return (Rel.UNRELATED, Rel.BACKWARD, Rel.FORWARD)[d]
    a, b = as_nat(m), as_nat(n)
    if a == b:
        return Rel.UNRELATED
    if a < b:
        d = b.digit_at(_as_small_or_nat(a))
        return (Rel.UNRELATED, Rel.FORWARD, Rel.BACKWARD)[d]
    d = a.digit_at(_as_small_or_nat(b))
    return (Rel.UNRELATED, Rel.BACKWARD, Rel.FORWARD)[d]


def witness(f_set, g_set):
    """The number pointing from everything in f_set, toward everything in
    g_set, and unrelated to every other smaller number: digit 1 at the
    f-positions and digit 2 at the g-positions."""
    f_set, g_set = list(f_set), list(g_set)
    for x in f_set:
        for y in g_set:
            if as_nat(x) == as_nat(y):
                raise DisjointnessError("the two prescribed sets overlap")
    out = SparseNat([(_as_small_or_nat(x), 1) for x in f_set]
                    + [(_as_small_or_nat(x), 2) for x in g_set])
    return _as_small_or_nat(out)


def witness_above(f_set, g_set, bound):
    """witness(f_set, g_set) plus a single high digit 3^P, with P the least
    position above both bound and the prescribed sets (that position is
    never itself prescribed, so the digit pattern survives and the result
    exceeds bound)."""
    base = as_nat(witness(f_set, g_set))
    items = [as_nat(x) for x in list(f_set) + list(g_set)]
    top = as_nat(bound)
    for x in items:
        if top < x:
            top = x
    p = _succ(_as_small_or_nat(top))
    out = base.add_power(p, 1)
    return _as_small_or_nat(out)


def embed_structure(s: RelStructure) -> OrderMap:
    """Embed a finite asymmetric structure, matching its relation exactly.

    Elements are processed in increasing id order; each image is produced by
    witness_above against the images already chosen, so images are strictly
    increasing and every digit constraint refers to a smaller number.
    """
    images = {}
    bound = None
    for x in s.universe:
        fwd = [images[y] for y in images if s.related(y, x)]
        bwd = [images[y] for y in images if s.related(x, y)]
        if bound is None:
            images[x] = 0
        else:
            images[x] = witness_above(fwd, bwd, bound)
        bound = images[x]
    return OrderMap(dom=s, images=images)


def verify_embedding(s: RelStructure, om: OrderMap) -> bool:
    """Exact roundtrip: the induced relation on the images equals s."""
    imgs = [as_nat(om.images[x]) for x in s.universe]
    for i, a in enumerate(imgs):
        for b in imgs[i + 1:]:
            if a == b:
                return False
    for a in s.universe:
        for b in s.universe:
            if a == b:
                continue
            expected = Rel.FORWARD if s.related(a, b) else (
                Rel.BACKWARD if s.related(b, a) else Rel.UNRELATED)
            if rel(om.images[a], om.images[b]) is not expected:
                return False
    return True
