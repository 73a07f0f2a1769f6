"""A condition calculus for embedding finite posets into bounded sequence
spaces.

A condition is a finite partial attempt (domain D, depth n, assignment f)
at mapping the ground order into sequences with per-coordinate bounds
max(k, 1).  Extension adds elements and depth; on coordinates added after a
pair is jointly present, the assignment must respect the ground order.
Meeting two families of entry operations -- domain/depth entry and
strict-witness entry -- builds a certified order embedding.

All condition values are immutable; the build is a sequential fold over its
schedule, and verification passes are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (AgreementError, AmalgamationError, ChainTooShortError,
                     DepthError, HypothesisError, PreconditionError, RootError,
                     ScheduleError)
from .fol import FiniteStructure, eval_pair
from .posets import Poset, linear_extension
from .seqspace import eta, leq_from, phi, position_seq


def coord_bound(k):
    """Value bound at coordinate k: max(k, 1)."""
    return k if k > 1 else 1


class Condition:
    """An immutable triple (domain, depth, per-element value sequences)."""

    __slots__ = ("domain", "depth", "_f", "_key")

    def __init__(self, domain, depth, f):
        self.domain = frozenset(domain)
        self.depth = int(depth)
        self._f = {a: tuple(f[a]) for a in self.domain}
        self._key = None

    def seq(self, a):
        return self._f[a]

    def items(self):
        return sorted(self._f.items())

    def key(self):
        if self._key is None:
            self._key = (self.domain, self.depth, tuple(sorted(self._f.items())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Condition):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Condition(D={sorted(self.domain)}, n={self.depth}, f={dict(self.items())})"

    def to_json_dict(self):
        return {"D": sorted(self.domain), "n": self.depth,
                "f": {str(a): list(v) for a, v in self.items()}}

    @classmethod
    def from_json_dict(cls, data):
        return cls(data["D"], data["n"], {int(a): tuple(v) for a, v in data["f"].items()})


EMPTY_CONDITION = Condition(frozenset(), 0, {})


def is_condition(ground: Poset, p: Condition) -> bool:
    """All invariants: domain inside the ground order, values within the
    coordinate bounds, sequences of the declared depth."""
    if not all(a in ground for a in p.domain):
        return False
    for a in p.domain:
        seq = p.seq(a)
        if len(seq) != p.depth:
            return False
        if any(not 0 <= seq[k] < coord_bound(k) for k in range(p.depth)):
            return False
    return True


def extends(ground: Poset, p: Condition, q: Condition) -> bool:
    """Whether p extends q: domain and depth grow, old values are kept, and
    coordinates new to q are monotone on every related pair of q's domain."""
    if not (p.domain >= q.domain and p.depth >= q.depth):
        return False
    for a in q.domain:
        if p.seq(a)[:q.depth] != q.seq(a):
            return False
    for a in q.domain:
        for b in q.domain:
            if a != b and ground.leq(a, b):
                pa, pb = p.seq(a), p.seq(b)
                if any(pa[j] > pb[j] for j in range(q.depth, p.depth)):
                    return False
    return True


def _max_rule(ground, f, domain, a, j):
    """max of f[b][j] over b in domain below a (0 when none)."""
    best = 0
    for b in domain:
        if ground.leq(b, a) and f[b][j] > best:
            best = f[b][j]
    return best


def amalgamate(ground: Poset, parts, root) -> Condition:
    """A common extension of pairwise root-compatible conditions.

    Deep values are copied; shallow private elements are padded on the
    missing coordinates by the maximum over root elements below them.  The
    result is verified to extend every part; when the parts' values on the
    root are not monotone beyond the shallowest depth no common extension
    exists at all, and AmalgamationError reports it.
    """
    parts = list(parts)
    root = frozenset(root)
    if not parts:
        raise RootError("at least one part is required")
    if len(parts) == 1:
        if not root <= parts[0].domain:
            raise RootError("root must lie inside the part's domain")
        return parts[0]
    for i, p in enumerate(parts):
        for q in parts[i + 1:]:
            if p.domain & q.domain != root:
                raise RootError("pairwise domain intersections differ from the root")
    for i, p in enumerate(parts):
        for q in parts[i + 1:]:
            d = min(p.depth, q.depth)
            for a in root:
                if p.seq(a)[:d] != q.seq(a)[:d]:
                    raise AgreementError(f"parts disagree on root element {a!r}")
    depth = max(p.depth for p in parts)
    deep = next(p for p in parts if p.depth == depth)
    f = {}
    for a in root:
        f[a] = deep.seq(a)
    for p in parts:
        for a in p.domain - root:
            if p.depth == depth:
                f[a] = p.seq(a)
            else:
                pad = tuple(_max_rule(ground, f, root, a, j)
                            for j in range(p.depth, depth))
                f[a] = p.seq(a) + pad
    q = Condition(frozenset().union(*(p.domain for p in parts)), depth, f)
    for p in parts:
        if not extends(ground, q, p):
            raise AmalgamationError(
                "no common extension: a deep part is non-monotone on the root")
    return q


def extend_into_D(ground: Poset, p: Condition, n: int, a) -> Condition:
    """Least-effort entry into the set of conditions of depth >= n whose
    domain contains a.  Idempotent when p already qualifies.

    The new element takes the maximum over its lower bounds in the old
    domain at existing coordinates; coordinates beyond the old depth are
    zero-filled for everybody, which is the same rule applied at a fresh
    coordinate.
    """
    if a not in ground:
        raise ScheduleError(f"element {a!r} not in the ground order")
    if a in p.domain and p.depth >= n:
        return p
    depth = max(p.depth, n)
    f = {}
    for b in p.domain:
        f[b] = p.seq(b) + (0,) * (depth - p.depth)
    if a not in p.domain:
        vals = tuple(_max_rule(ground, {b: p.seq(b) for b in p.domain},
                               p.domain, a, j)
                     for j in range(p.depth))
        f[a] = vals + (0,) * (depth - p.depth)
    return Condition(p.domain | {a}, depth, f)


def extend_into_E(ground: Poset, p: Condition, n: int, a, b) -> Condition:
    """Entry into the set of conditions carrying a strict witness
    f(a)(k) < f(b)(k) at some coordinate k >= n.  Defined only when b is
    not below a in the ground order.  Idempotent when p already qualifies.

    New coordinates are coloured by rank in a linear extension placing a
    before b, wherever the ranks fit the coordinate bound; rank colouring
    respects every related pair at once and makes the witness strict.
    """
    if ground.leq(b, a):
        raise PreconditionError("defined only when b is not below a")
    q = extend_into_D(ground, extend_into_D(ground, p, 0, a), 0, b)
    if any(q.seq(a)[k] < q.seq(b)[k] for k in range(n, q.depth)):
        return q
    dom = sorted(q.domain)
    k = max(n, q.depth, len(dom) + 2)
    ranks = {e: r for r, e in enumerate(linear_extension(ground, dom, before=(a, b)))}
    f = {}
    for e in dom:
        tail = tuple(ranks[e] if j >= len(dom) else 0
                     for j in range(q.depth, k + 1))
        f[e] = q.seq(e) + tail
    return Condition(q.domain, k + 1, f)


def projection(sub_elements, p: Condition) -> Condition:
    """Restriction of the condition to a sub-carrier, same depth."""
    sub = frozenset(sub_elements)
    dom = p.domain & sub
    return Condition(dom, p.depth, {a: p.seq(a) for a in dom})


def quotient_member(sub_elements, upsilon, p: Condition) -> bool:
    """Whether p agrees with the embedding on the sub-carrier: for every
    domain element of the sub-carrier, p's sequence is a prefix of the
    embedding value."""
    sub = frozenset(sub_elements)
    for a in p.domain & sub:
        y = upsilon[a]
        if len(y) < p.depth:
            raise DepthError(f"embedding value at {a!r} shallower than the condition")
        if tuple(y[k] for k in range(p.depth)) != p.seq(a):
            return False
    return True


# --- generic build ------------------------------------------------------------


@dataclass(frozen=True)
class GenericEmbedding:
    """The read-off of a finished build: value sequences, per-pair threshold
    certificates (the depth at which both elements were first present), and
    the strict-witness coordinates for each non-related ordered pair."""
    ground: Poset
    budget: int
    values: dict          # element -> SeqFun (position profile, final depth)
    thresholds: dict      # frozenset({a, b}) -> coordinate
    strict_witnesses: dict  # (a, b) with b not below a -> tuple of coordinates

    def threshold(self, a, b):
        return self.thresholds[frozenset((a, b))]


def default_schedule(ground: Poset, budget: int):
    """Domain/depth requests first, then strict-witness requests, each in
    lexicographic (n, elements) order."""
    reqs = [("D", n, a) for n in range(budget + 1) for a in ground.elements]
    for n in range(budget + 1):
        for a in ground.elements:
            for b in ground.elements:
                if a != b and not ground.leq(b, a):
                    reqs.append(("E", n, a, b))
    return reqs


def generic_build(ground: Poset, budget: int, schedule=None) -> GenericEmbedding:
    """Fold the schedule from the empty condition and read off the embedding.

    The default schedule meets every domain/depth request up to the budget
    and every strict-witness request for each ordered pair (a, b) with b not
    below a, so the result is an order embedding into the sequence space
    under thresholded comparison, with strict witnesses past every requested
    depth.
    """
    if schedule is None:
        schedule = default_schedule(ground, budget)
    p = EMPTY_CONDITION
    entry_depth = {}
    for req in schedule:
        kind = req[0]
        if kind == "D":
            _, n, a = req
            if a not in ground:
                raise ScheduleError(f"element {a!r} not in the ground order")
            p = extend_into_D(ground, p, n, a)
            entry_depth.setdefault(a, p.depth)
        elif kind == "E":
            _, n, a, b = req
            if a not in ground or b not in ground:
                raise ScheduleError("strict-witness request outside the ground order")
            p = extend_into_E(ground, p, n, a, b)
            entry_depth.setdefault(a, p.depth)
            entry_depth.setdefault(b, p.depth)
        else:
            raise ScheduleError(f"unknown request kind {kind!r}")
    missing = set(ground.elements) - p.domain
    if missing:
        raise ScheduleError(f"schedule never introduced elements {sorted(missing)}")
    values = {a: position_seq(p.seq(a)) for a in ground.elements}
    thresholds = {}
    for a in ground.elements:
        for b in ground.elements:
            if a < b:
                thresholds[frozenset((a, b))] = max(entry_depth[a], entry_depth[b])
    witnesses = {}
    for a in ground.elements:
        for b in ground.elements:
            if a != b and not ground.leq(b, a):
                ws = tuple(k for k in range(p.depth)
                           if p.seq(a)[k] < p.seq(b)[k])
                witnesses[(a, b)] = ws
    return GenericEmbedding(ground, budget, values, thresholds, witnesses)


def verify_generic_embedding(ge: GenericEmbedding):
    """Check the embedding certificate; returns a report dict.

    For related pairs, domination from the threshold; for each ordered pair
    (a, b) with b not below a, a strict witness past every depth up to the
    budget (equivalently one at or beyond the budget).  Together these give
    a <= b iff the value sequences compare from the pair threshold.
    """
    ground = ge.ground
    failures = []
    for a in ground.elements:
        for b in ground.elements:
            if a == b:
                continue
            m = ge.threshold(a, b)
            if ground.leq(a, b):
                if not leq_from(ge.values[a], ge.values[b], m):
                    failures.append({"pair": [a, b], "kind": "domination", "m": m})
            if not ground.leq(b, a):
                ws = ge.strict_witnesses[(a, b)]
                if not ws or max(ws) < ge.budget or not any(w >= m for w in ws):
                    failures.append({"pair": [a, b], "kind": "strict-witness"})
    injective = len({ge.values[a].vals for a in ground.elements}) == len(ground.elements)
    if not injective:
        failures.append({"kind": "injectivity"})
    return {"ok": not failures, "failures": failures,
            "depth": len(next(iter(ge.values.values()))) if ge.values else 0}


# --- splitting ------------------------------------------------------------------


@dataclass(frozen=True)
class SplitInstance:
    """A cover (left, right) of the ground order whose comparabilities across
    the two sides all interpolate through the overlap."""
    ground: Poset
    left: frozenset
    right: frozenset
    overlap: frozenset = field(init=False)

    def __post_init__(self):
        if self.left | self.right != frozenset(self.ground.elements):
            raise HypothesisError("the two sides must cover the ground order")
        object.__setattr__(self, "overlap", self.left & self.right)
        for a in self.left:
            for b in self.right:
                up = self.ground.leq(a, b)
                interp_up = any(self.ground.leq(a, d) and self.ground.leq(d, b)
                                for d in self.overlap)
                if up != interp_up:
                    raise HypothesisError(
                        f"pair ({a!r}, {b!r}) fails upward interpolation")
                down = self.ground.leq(b, a)
                interp_down = any(self.ground.leq(b, d) and self.ground.leq(d, a)
                                  for d in self.overlap)
                if down != interp_down:
                    raise HypothesisError(
                        f"pair ({a!r}, {b!r}) fails downward interpolation")


def split_project(inst: SplitInstance, p: Condition):
    """The pair of side projections of a condition."""
    return projection(inst.left, p), projection(inst.right, p)


# --- full pipeline ----------------------------------------------------------------


class IntegerChainFactor:
    """A linear order 0 < 1 < ... < length-1 used as a coordinate factor.

    Kept implicit: lengths grow factorially, so elements are plain integers
    and the pair formula is integer comparison.
    """

    __slots__ = ("length",)

    def __init__(self, length):
        self.length = length

    def element(self, position):
        if not 0 <= position < self.length:
            raise ChainTooShortError("position beyond the chain")
        return position

    def phi_holds(self, u, v):
        return u < v


class ExplicitChainFactor:
    """A designated chain inside an explicit structure, validated on
    construction to satisfy the chain pattern for its pair formula."""

    __slots__ = ("structure", "formula", "chain")

    def __init__(self, structure: FiniteStructure, formula, chain):
        self.structure = structure
        self.formula = formula
        self.chain = [tuple(t) for t in chain]
        n = len(self.chain)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                want = i < j
                if eval_pair(structure, formula, self.chain[i], self.chain[j]) != want:
                    raise ChainTooShortError(
                        "designated tuples do not form a chain for the formula")

    @property
    def length(self):
        return len(self.chain)

    def element(self, position):
        if not 0 <= position < self.length:
            raise ChainTooShortError("position beyond the chain")
        return self.chain[position]

    def phi_holds(self, u, v):
        return (eval_pair(self.structure, self.formula, tuple(u), tuple(v))
                and not eval_pair(self.structure, self.formula, tuple(v), tuple(u)))


class EtaIntegerChains:
    """Coordinate factors: integer chains of length exactly eta(j)."""

    def factor(self, j):
        return IntegerChainFactor(eta(j))


class ExplicitChains:
    """A finite list of prepared factors; each must reach length eta(j)."""

    def __init__(self, factors):
        self.factors = list(factors)

    def factor(self, j):
        if j >= len(self.factors):
            raise ChainTooShortError(f"no factor supplied for coordinate {j}")
        fac = self.factors[j]
        if fac.length < eta(j):
            raise ChainTooShortError(
                f"factor {j} has length {fac.length} < {eta(j)}")
        return fac


def pipeline_embed(ground: Poset, budget: int, chains=None):
    """Compose the generic build with the weighted-digit map and read the
    result inside per-coordinate chains.

    Returns a report: the composite values (chain positions per coordinate),
    per-pair certificates, and verdicts.  For every strictly related pair
    the forward relation must hold and the backward fail at every coordinate
    past the recorded threshold; for every non-related ordered pair a
    violation coordinate is exhibited.
    """
    if chains is None:
        chains = EtaIntegerChains()
    ge = generic_build(ground, budget)
    lifted = {a: phi(ge.values[a]) for a in ground.elements}
    width = len(next(iter(lifted.values()))) if lifted else 0
    factors = [chains.factor(j) for j in range(width)]
    positions = {a: lifted[a].vals for a in ground.elements}
    xi = {a: [factors[j].element(positions[a][j]) for j in range(width)]
          for a in ground.elements}
    pair_reports = []
    ok = True
    for a in ground.elements:
        for b in ground.elements:
            if a == b:
                continue
            m0 = max(ge.threshold(a, b), 1)
            if ground.lt(a, b):
                wits = [w for w in ge.strict_witnesses[(a, b)] if w >= m0]
                if not wits:
                    pair_reports.append({"pair": [a, b], "kind": "forward",
                                         "ok": False, "reason": "no strict witness"})
                    ok = False
                    continue
                start = wits[0] + 1
                good = all(
                    factors[j].phi_holds(xi[a][j], xi[b][j])
                    and not factors[j].phi_holds(xi[b][j], xi[a][j])
                    for j in range(start, width))
                pair_reports.append({"pair": [a, b], "kind": "forward",
                                     "threshold": start, "ok": good})
                ok = ok and good
            elif not ground.lt(b, a):
                # incomparable: exhibit a coordinate where the forward
                # relation fails beyond the co-presence threshold
                rev = [w for w in ge.strict_witnesses[(b, a)] if w >= m0]
                j = rev[0] + 1 if rev else None
                good = (j is not None and j < width
                        and factors[j].phi_holds(xi[b][j], xi[a][j])
                        and not factors[j].phi_holds(xi[a][j], xi[b][j]))
                pair_reports.append({"pair": [a, b], "kind": "violation",
                                     "coordinate": j, "ok": good})
                ok = ok and good
    return {
        "ok": ok,
        "width": width,
        "positions": {str(a): list(positions[a]) for a in ground.elements},
        "pairs": pair_reports,
    }
