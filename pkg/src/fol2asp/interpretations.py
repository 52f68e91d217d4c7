"""Finite first-order structures and Tarskian satisfaction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import Fol2AspError
from .syntax import (And, App, Atom, Bottom, Exists, Forall, Formula,
                     Implies, Num, Obj, Or, Range, Term, Var,
                     BUILTIN_COMPARISONS, DEFAULT_SORT)


class EvaluationError(Fol2AspError):
    pass


@dataclass
class Interpretation:
    """A finite structure: a universe per sort, total function tables and
    predicate extents.

    Object constants without an explicit denotation denote themselves
    (Herbrand convention); elements may be strings or integers.
    """

    universes: dict[str, tuple] = field(default_factory=dict)
    objects: dict[str, object] = field(default_factory=dict)
    functions: dict[str, dict] = field(default_factory=dict)
    extents: dict[str, frozenset] = field(default_factory=dict)

    def universe(self, sort: str):
        try:
            return self.universes[sort]
        except KeyError:
            raise EvaluationError(f"no universe for sort {sort}") from None

    def eval_term(self, t: Term, assignment: Mapping[str, object]):
        if isinstance(t, Var):
            try:
                return assignment[t.name]
            except KeyError:
                raise EvaluationError(f"unbound variable {t.name}") from None
        if isinstance(t, Obj):
            return self.objects.get(t.name, t.name)
        if isinstance(t, Num):
            return t.value
        if isinstance(t, App):
            args = tuple(self.eval_term(a, assignment) for a in t.args)
            table = self.functions.get(t.func)
            if table is not None:
                try:
                    return table[args]
                except KeyError:
                    raise EvaluationError(
                        f"missing table entry {t.func}{args}") from None
            if t.func in ("+", "-") and all(isinstance(a, int) for a in args):
                return args[0] + args[1] if t.func == "+" else args[0] - args[1]
            raise EvaluationError(f"uninterpreted function {t.func}")
        raise EvaluationError(f"cannot evaluate term {t}")

    def holds(self, pred: str, values: tuple) -> bool:
        if pred in BUILTIN_COMPARISONS:
            return _compare(pred, values)
        if pred not in self.extents:
            raise EvaluationError(f"uninterpreted predicate {pred}")
        return values in self.extents[pred]


def _compare(op: str, values: tuple) -> bool:
    a, b = values
    if op == "=":
        return a == b
    if not (isinstance(a, int) and isinstance(b, int)):
        raise EvaluationError(f"comparison {op} needs integer elements, got {a!r}, {b!r}")
    return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]


def classical_eval(i: Interpretation, assignment: Mapping[str, object],
                   f: Formula) -> bool:
    """Standard first-order truth; quantifiers range over the finite
    universe of the bound variable's sort."""
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        values = tuple(i.eval_term(t, assignment) for t in f.args)
        return i.holds(f.pred, values)
    if isinstance(f, And):
        return classical_eval(i, assignment, f.left) and classical_eval(i, assignment, f.right)
    if isinstance(f, Or):
        return classical_eval(i, assignment, f.left) or classical_eval(i, assignment, f.right)
    if isinstance(f, Implies):
        return (not classical_eval(i, assignment, f.left)) or classical_eval(i, assignment, f.right)
    if isinstance(f, (Forall, Exists)):
        sort = f.var.sort if f.var.sort != "?" else DEFAULT_SORT
        domain = i.universe(sort)
        results = (classical_eval(i, {**assignment, f.var.name: e}, f.body)
                   for e in domain)
        return all(results) if isinstance(f, Forall) else any(results)
    raise EvaluationError(f"cannot evaluate {f!r}")
