"""Reduced products of finite structures over explicit filters.

A proper filter on a finite ground set is exactly the family of supersets of
its (nonempty) core, so class formation and relation semantics reduce to
agreement on the core.  The family is still stored and validated explicitly,
and the definitional membership test is kept for double-evaluation checks.

Thresholded coordinatewise comparison is the finite stand-in for eventual
dominance over the tail filter: no proper filter on a finite ground set is
nonprincipal, so tails are carried as explicit cut-offs instead.
"""

from __future__ import annotations

import itertools
from functools import reduce

from .errors import ArityError, BudgetError, FilterError, FormulaError
from .fol import Atom, FiniteStructure, Not, eval_pair, pair_sorts


class FilterFamily:
    """An explicit proper filter on ground set 0..ground-1."""

    __slots__ = ("ground", "members", "core")

    def __init__(self, ground, members):
        self.ground = int(ground)
        full = frozenset(range(self.ground))
        mems = frozenset(frozenset(m) for m in members)
        if full not in mems:
            raise FilterError("the ground set must belong to the filter")
        if frozenset() in mems:
            raise FilterError("a proper filter excludes the empty set")
        for m in mems:
            if not m <= full:
                raise FilterError("member outside the ground set")
        for a in mems:
            for b in mems:
                if a & b not in mems:
                    raise FilterError("family not closed under intersection")
        for a in mems:
            for up in map(frozenset, itertools.chain.from_iterable(
                    itertools.combinations(full - a, r) for r in range(len(full - a) + 1))):
                if a | up not in mems:
                    raise FilterError("family not upward closed")
        self.members = mems
        self.core = reduce(frozenset.__and__, mems)

    @classmethod
    def principal(cls, ground, core):
        """The filter of all supersets of core."""
        core = frozenset(core)
        if not core:
            raise FilterError("a proper filter needs a nonempty core")
        rest = sorted(frozenset(range(ground)) - core)
        members = []
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                members.append(core | frozenset(extra))
        return cls(ground, members)

    @classmethod
    def trivial(cls, ground):
        return cls(ground, [frozenset(range(ground))])

    @classmethod
    def principal_ultrafilter(cls, ground, point):
        return cls.principal(ground, {point})

    def __contains__(self, subset):
        return frozenset(subset) in self.members

    @property
    def is_ultra(self):
        return len(self.core) == 1

    def to_json_dict(self):
        return {"ground": self.ground,
                "members": sorted(sorted(m) for m in self.members)}

    @classmethod
    def from_json_dict(cls, data):
        return cls(data["ground"], [frozenset(m) for m in data["members"]])


class ReducedProduct:
    """Quotient of a finite direct product by agreement on a filter set.

    Relations are evaluated on demand from the coordinatewise satisfaction
    set; a proper filter on a finite ground set is determined by its core,
    so evaluating at representatives is class-independent.
    """

    __slots__ = ("factors", "filt", "vectors", "class_reps", "class_of")

    MAX_VECTORS = 65536

    def __init__(self, factors, filt: FilterFamily):
        factors = tuple(factors)
        if not factors:
            raise FilterError("at least one factor is required")
        if filt.ground != len(factors):
            raise FilterError("filter ground set differs from the factor count")
        names = factors[0].relations.keys()
        for f in factors:
            if f.relations.keys() != names:
                raise FormulaError("factors must share a relation signature")
            for name in names:
                if f.arity(name) != factors[0].arity(name):
                    raise ArityError(f"factors disagree on the arity of {name}")
        total = 1
        for f in factors:
            total *= max(len(f), 1)
        if total > self.MAX_VECTORS:
            raise BudgetError(f"direct product with {total} vectors is too large")
        self.factors = factors
        self.filt = filt
        self.vectors = tuple(itertools.product(*(f.universe for f in factors)))
        core = sorted(filt.core)
        reps = {}
        class_of = {}
        for v in self.vectors:
            key = tuple(v[n] for n in core)
            if key not in reps:
                reps[key] = v
            class_of[v] = reps[key]
        self.class_reps = tuple(reps.values())
        self.class_of = class_of

    def atomic_index_set(self, name, vectors):
        """Coordinates at which the factors satisfy the atomic relation."""
        out = set()
        for n, f in enumerate(self.factors):
            if f.holds(name, tuple(v[n] for v in vectors)):
                out.add(n)
        return frozenset(out)

    def same_class(self, v, w):
        return self.class_of[tuple(v)] == self.class_of[tuple(w)]

    def holds(self, name, vectors):
        """Satisfaction of an atomic relation at classes (given by any
        representatives): the coordinatewise satisfaction set must belong to
        the filter."""
        vectors = [tuple(v) for v in vectors]
        arity = self.factors[0].arity(name)
        if len(vectors) != arity:
            raise ArityError(f"{name} expects {arity} arguments")
        combo = [self.class_of[v] for v in vectors]
        return self.atomic_index_set(name, combo) in self.filt


def reduced_product(factors, filt: FilterFamily) -> ReducedProduct:
    return ReducedProduct(factors, filt)


def _literal_parts(phi):
    """(name, vars, negated) of an atomic or negated-atomic formula."""
    if isinstance(phi, Atom):
        return phi.name, phi.vars, False
    if isinstance(phi, Not) and isinstance(phi.arg, Atom):
        return phi.arg.name, phi.arg.vars, True
    raise FormulaError("only atomic or negated-atomic formulas are accepted")


def atomic_los_check(rp: ReducedProduct, phi, vectors):
    """Double-evaluate an atomic or negated-atomic formula.

    Compares satisfaction in the product against filter membership of the
    coordinatewise satisfaction set at the given representatives.  Returns
    (equivalence holds, that index set).
    """
    name, vars_, negated = _literal_parts(phi)
    vectors = [tuple(v) for v in vectors]
    if len(vectors) != len(vars_):
        raise ArityError("one representative vector per formula variable")
    product_truth = rp.holds(name, vectors)
    if negated:
        product_truth = not product_truth
    index_set = set()
    for n, f in enumerate(rp.factors):
        coord = f.holds(name, tuple(v[n] for v in vectors))
        if negated:
            coord = not coord
        if coord:
            index_set.add(n)
    return product_truth == (frozenset(index_set) in rp.filt), frozenset(index_set)


def threshold_rel_product(factors, phi, left, right, m) -> bool:
    """True iff at every coordinate j >= m the pair formula holds of
    (left_j, right_j) and fails of (right_j, left_j)."""
    factors = tuple(factors)
    n = len(factors)
    if len(left) != n or len(right) != n:
        raise ArityError("representatives must be defined on all coordinates")
    for j in range(max(m, 0), n):
        if not eval_pair(factors[j], phi, left[j], right[j]):
            return False
        if eval_pair(factors[j], phi, right[j], left[j]):
            return False
    return True


# --- chain search -------------------------------------------------------------

EXACT_SEARCH_BOUND = 10_000


def _strict_pair_digraph(s: FiniteStructure, phi):
    xs, _ = pair_sorts(phi)
    k = len(xs)
    tuples = list(itertools.product(s.universe, repeat=k))
    if len(tuples) > EXACT_SEARCH_BOUND:
        raise BudgetError(f"{len(tuples)} tuples exceed the exact-search bound")
    above = [0] * len(tuples)
    for i, a in enumerate(tuples):
        for j in range(i + 1, len(tuples)):
            b = tuples[j]
            ab = eval_pair(s, phi, a, b)
            ba = eval_pair(s, phi, b, a)
            if ab and not ba:
                above[i] |= 1 << j
            elif ba and not ab:
                above[j] |= 1 << i
    return tuples, above


def longest_op_chain(s: FiniteStructure, phi):
    """A maximum-length tuple sequence where the pair formula holds exactly
    in the forward direction for every index pair.

    When the strict comparison relation is transitive it is a strict order
    and a longest-chain sweep is exact; otherwise an exhaustive
    candidate-set search runs.
    """
    tuples, above = _strict_pair_digraph(s, phi)
    n = len(tuples)
    transitive = True
    for i in range(n):
        r = above[i]
        rr = r
        while rr:
            j = (rr & -rr).bit_length() - 1
            if above[j] & ~above[i]:
                transitive = False
                break
            rr &= rr - 1
        if not transitive:
            break
    if transitive:
        if n == 0:
            return []
        # in a transitive digraph, fewer successors means closer to a sink,
        # so sweeping by ascending successor count is a reverse topological
        # order and the chain lengths fill in one pass
        length = [1] * n
        order = sorted(range(n), key=lambda i: bin(above[i]).count("1"))
        for i in order:
            best = 0
            r = above[i]
            while r:
                j = (r & -r).bit_length() - 1
                best = max(best, length[j])
                r &= r - 1
            length[i] = 1 + best
        total = max(length)
        cur = min(i for i in range(n) if length[i] == total)
        chain = [cur]
        for need in range(total - 1, 0, -1):
            cur = min(j for j in range(n) if above[cur] >> j & 1 and length[j] == need)
            chain.append(cur)
        return [tuples[i] for i in chain]

    # exhaustive: each extension must sit strictly above every chain member,
    # so candidate sets shrink by intersection and every chain is visited
    # once, in its forced order
    best_chain = []

    def extend(chain, cand):
        nonlocal best_chain
        if len(chain) > len(best_chain):
            best_chain = list(chain)
        if len(chain) + bin(cand).count("1") <= len(best_chain):
            return
        c = cand
        while c:
            j = (c & -c).bit_length() - 1
            c &= c - 1
            chain.append(j)
            extend(chain, cand & above[j])
            chain.pop()

    extend([], (1 << n) - 1 if n else 0)
    return [tuples[i] for i in best_chain]
