"""Quantifier elimination for almost universal formulas.

Non-singular quantifiers are stripped into fresh free variables (they
would prenex into outer universals anyway).  A positive existential is
replaced by a fresh predicate applied to the free variables of the
occurrence, defined by one added implication.  A negative universal is
rewritten through doubled negation into an existential and then treated
the same way.  The result is quantifier-free and its stable models match
the input's after forgetting the fresh predicates, provided the input is
almost universal relative to the intensional predicates, which is checked
up front.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .classes import is_almost_universal
from .errors import NotAlmostUniversalError
from .occurrences import iter_occurrences
from .syntax import (And, Atom, Exists, Forall, Formula, FreshNames, Implies,
                     Not, Or, Signature, conj, free_vars, replace_at,
                     substitute)


@dataclass(frozen=True)
class ElimResult:
    """Quantifier-free core plus the definitions of the predicates the
    elimination invented.  Free variables are implicitly universal."""

    core: Formula
    aux_defs: tuple[Formula, ...]
    aux_preds: tuple[tuple[str, tuple[str, ...]], ...]
    stats: dict = field(default_factory=dict, compare=False)

    def conjunction(self) -> Formula:
        return conj([self.core, *self.aux_defs])


def _prepend_double_negation_on_positive_exists(f: Formula) -> tuple[Formula, int]:
    """Wrap every maximal strictly positive existential occurrence in two
    negations.  Maximality is by the subformula relation, so wrapping stops
    the descent."""
    count = 0

    def go(node, depth):
        nonlocal count
        if depth == 0 and isinstance(node, Exists):
            count += 1
            return Not(Not(node))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.var, go(node.body, depth))
        if isinstance(node, Implies):
            return Implies(go(node.left, depth + 1), go(node.right, depth))
        if isinstance(node, (And, Or)):
            return type(node)(go(node.left, depth), go(node.right, depth))
        return node

    return go(f, 0), count


def _first_quantifier(f: Formula):
    """Leftmost-outermost quantifier occurrence, or None."""
    for path, node, depth in iter_occurrences(f):
        if isinstance(node, (Forall, Exists)):
            return path, node, depth
    return None


def elim_quantifiers(f: Formula, preds: Iterable[str], force: bool = False,
                     fresh: FreshNames | None = None,
                     sig: Signature | None = None) -> ElimResult:
    """Remove every quantifier from ``f``.

    Raises NotAlmostUniversalError with the offending occurrence paths
    when the soundness condition fails; ``force`` proceeds anyway, which
    is useful only to demonstrate how the translation breaks.
    """
    preds = tuple(dict.fromkeys(preds))
    report = is_almost_universal(f, preds)
    if not report and not force:
        raise NotAlmostUniversalError(report.witnesses)

    fresh = fresh or FreshNames()
    stats = {"steps_a": 0, "steps_b": 0, "steps_c": 0, "prepended": 0}

    work, stats["prepended"] = _prepend_double_negation_on_positive_exists(f)
    conjuncts: list[Formula] = [work]
    aux_preds: list[tuple[str, tuple[str, ...]]] = []

    idx = 0
    while idx < len(conjuncts):
        found = _first_quantifier(conjuncts[idx])
        if found is None:
            idx += 1
            continue
        path, node, depth = found
        positive = depth % 2 == 0
        singular = positive if isinstance(node, Exists) else not positive
        g = conjuncts[idx]
        if not singular:
            z = fresh.variable(node.var.sort)
            body = substitute(node.body, {node.var.name: z})
            conjuncts[idx] = replace_at(g, path, body)
            stats["steps_a"] += 1
        elif isinstance(node, Exists):
            xs = sorted(free_vars(node), key=lambda v: v.name)
            name = fresh.predicate()
            if sig is not None:
                sig.predicates[name] = tuple(v.sort for v in xs)
            head = Atom(name, tuple(xs))
            conjuncts[idx] = replace_at(g, path, head)
            conjuncts.append(Implies(node.body, head))
            aux_preds.append((name, tuple(v.sort for v in xs)))
            stats["steps_b"] += 1
        else:
            rewritten = Not(Exists(node.var, Not(node.body)))
            conjuncts[idx] = replace_at(g, path, rewritten)
            stats["steps_c"] += 1

    # appended definitions may themselves have been rewritten by later steps
    return ElimResult(conjuncts[0], tuple(conjuncts[1:]), tuple(aux_preds), stats)
