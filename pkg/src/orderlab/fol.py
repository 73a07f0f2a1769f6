"""Finite relational structures and quantifier-free formula evaluation.

The language is purely relational; constants, if needed, are unary
relations.  Formulas are s-expressions over atoms, negation, conjunction
and disjunction, e.g. "(and (R x0 y0) (not (R y0 x0)))".  Pair formulas
follow the variable convention x0..x{k-1}, y0..y{k-1} for two tuples of the
same sort.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityError, DomainError, FormulaError


class FiniteStructure:
    """Universe of integer ids plus named relations with fixed arities."""

    __slots__ = ("universe", "relations")

    def __init__(self, universe, relations):
        self.universe = tuple(sorted(universe))
        uset = set(self.universe)
        rels = {}
        for name, (arity, tuples) in relations.items():
            tset = frozenset(tuple(t) for t in tuples)
            for t in tset:
                if len(t) != arity:
                    raise ArityError(f"tuple {t} has wrong arity for {name}")
                if not set(t) <= uset:
                    raise DomainError(f"tuple {t} leaves the universe")
            rels[name] = (arity, tset)
        self.relations = rels

    def holds(self, name, args):
        try:
            arity, tuples = self.relations[name]
        except KeyError:
            raise FormulaError(f"unknown relation {name!r}") from None
        args = tuple(args)
        if len(args) != arity:
            raise ArityError(f"{name} expects {arity} arguments, got {len(args)}")
        return args in tuples

    def arity(self, name):
        if name not in self.relations:
            raise FormulaError(f"unknown relation {name!r}")
        return self.relations[name][0]

    def __len__(self):
        return len(self.universe)

    def to_json_dict(self):
        return {
            "universe": list(self.universe),
            "relations": {
                name: {"arity": arity, "tuples": sorted(list(t) for t in tuples)}
                for name, (arity, tuples) in sorted(self.relations.items())
            },
        }

    @classmethod
    def from_json_dict(cls, data):
        rels = {name: (spec["arity"], [tuple(t) for t in spec["tuples"]])
                for name, spec in data["relations"].items()}
        return cls(data["universe"], rels)


def linear_order_structure(n, name="R"):
    """The strict linear order 0 < 1 < ... < n-1 as a structure."""
    tuples = [(i, j) for i in range(n) for j in range(n) if i < j]
    return FiniteStructure(range(n), {name: (2, tuples)})


# --- formulas ----------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str
    vars: tuple


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


def parse_formula(text):
    """Parse an s-expression into a formula tree."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise FormulaError("unexpected end of formula")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise FormulaError("unexpected ')'")
        if tok != "(":
            raise FormulaError(f"expected '(', got {tok!r}")
        head = tokens[pos]
        pos += 1
        if head == "(" or head == ")":
            raise FormulaError("expected an operator or relation name")
        items = []
        while pos < len(tokens) and tokens[pos] != ")":
            if tokens[pos] == "(":
                items.append(read())
            else:
                items.append(tokens[pos])
                pos += 1
        if pos >= len(tokens):
            raise FormulaError("missing ')'")
        pos += 1  # consume ')'
        if head == "not":
            if len(items) != 1:
                raise FormulaError("'not' takes exactly one argument")
            return Not(items[0])
        if head in ("and", "or"):
            if not items or any(isinstance(a, str) for a in items):
                raise FormulaError(f"'{head}' takes formula arguments")
            return (And if head == "and" else Or)(tuple(items))
        if any(not isinstance(a, str) for a in items):
            raise FormulaError("atom arguments must be variables")
        return Atom(head, tuple(items))

    node = read()
    if pos != len(tokens):
        raise FormulaError("trailing tokens after formula")
    return node


def format_formula(phi):
    if isinstance(phi, Atom):
        return "(" + " ".join((phi.name,) + phi.vars) + ")"
    if isinstance(phi, Not):
        return f"(not {format_formula(phi.arg)})"
    if isinstance(phi, And):
        return "(and " + " ".join(format_formula(a) for a in phi.args) + ")"
    if isinstance(phi, Or):
        return "(or " + " ".join(format_formula(a) for a in phi.args) + ")"
    raise FormulaError(f"not a formula node: {phi!r}")


def formula_vars(phi):
    if isinstance(phi, Atom):
        return set(phi.vars)
    if isinstance(phi, Not):
        return formula_vars(phi.arg)
    if isinstance(phi, (And, Or)):
        out = set()
        for a in phi.args:
            out |= formula_vars(a)
        return out
    raise FormulaError(f"not a formula node: {phi!r}")


def eval_qf(s: FiniteStructure, phi, assignment) -> bool:
    """Classical satisfaction of a quantifier-free formula."""
    if isinstance(phi, Atom):
        try:
            args = [assignment[v] for v in phi.vars]
        except KeyError as e:
            raise DomainError(f"assignment misses variable {e.args[0]!r}") from None
        return s.holds(phi.name, args)
    if isinstance(phi, Not):
        return not eval_qf(s, phi.arg, assignment)
    if isinstance(phi, And):
        return all(eval_qf(s, a, assignment) for a in phi.args)
    if isinstance(phi, Or):
        return any(eval_qf(s, a, assignment) for a in phi.args)
    raise FormulaError(f"not a formula node: {phi!r}")


def pair_sorts(phi):
    """The (x-vars, y-vars) of a pair formula, validated to be of equal
    length and named x0..x{k-1} / y0..y{k-1}."""
    names = formula_vars(phi)
    xs = sorted(n for n in names if n.startswith("x"))
    ys = sorted(n for n in names if n.startswith("y"))
    if set(xs) | set(ys) != names:
        raise FormulaError("pair formulas use variables x0..x{k-1}, y0..y{k-1}")
    k = max(len(xs), len(ys))
    want_x = [f"x{i}" for i in range(k)]
    want_y = [f"y{i}" for i in range(k)]
    if not set(xs) <= set(want_x) or not set(ys) <= set(want_y):
        raise FormulaError("pair formulas use variables x0..x{k-1}, y0..y{k-1}")
    return tuple(want_x), tuple(want_y)


def eval_pair(s: FiniteStructure, phi, left, right) -> bool:
    """Evaluate a pair formula at two same-sort tuples."""
    xs, ys = pair_sorts(phi)
    if len(left) != len(xs) or len(right) != len(ys):
        raise ArityError("tuple length differs from the formula sort")
    assignment = dict(zip(xs, left))
    assignment.update(zip(ys, right))
    return eval_qf(s, phi, assignment)
