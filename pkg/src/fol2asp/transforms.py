"""Rewrites that preserve stable models in any context.

``nnf`` pushes negation down to atoms, keeping doubled negation in front of
atoms as a literal form.  ``rulify`` turns a quantifier-free formula into
flat rules by exhausting the left and right decomposition rules on bodies
and heads.  ``prenex`` moves all quantifiers outward, flipping them through
antecedents.  ``insert_double_negation`` is the guarded rewrite that
prefixes an occurrence with two negations when that occurrence is negated
relative to the intensional predicates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import TransformError
from .occurrences import is_p_negated
from .syntax import (And, Atom, Bottom, Exists, Forall, Formula, FreshNames,
                     Implies, Not, Or, Path, Top, Var, flatten_and,
                     flatten_or, is_not, is_top, iter_subformulas, replace_at,
                     subformula_at, substitute)


def _ensure_quantifier_free(f: Formula):
    for _, node in iter_subformulas(f):
        if isinstance(node, (Forall, Exists)):
            raise TransformError("quantifier present; eliminate quantifiers first")


# ---------------------------------------------------------------------------
# Negation normal form

def nnf(f: Formula) -> Formula:
    """Negation normal form of a quantifier-free formula.

    Negation ends up applied to atoms only, except that a doubled negation
    in front of an atom is kept (it is eliminated later by the rule
    decomposition, not here).  Implications not under negation survive.
    """
    _ensure_quantifier_free(f)
    return _nnf(f)


def _nnf(f: Formula) -> Formula:
    if isinstance(f, (Bottom, Atom)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_nnf(f.left), _nnf(f.right))
    if isinstance(f, Implies):
        if f.right == Bottom():
            return _neg(_nnf(f.left))
        return Implies(_nnf(f.left), _nnf(f.right))
    raise TransformError(f"cannot normalise {f!r}")


def _neg(g: Formula) -> Formula:
    """NNF of the negation of an NNF formula."""
    if isinstance(g, Bottom):
        return Top()
    if is_top(g):
        return Bottom()
    if isinstance(g, Atom):
        return Not(g)
    if isinstance(g, And):
        return Or(_neg(g.left), _neg(g.right))
    if isinstance(g, Or):
        return And(_neg(g.left), _neg(g.right))
    if isinstance(g, Implies):
        if g.right == Bottom():
            h = g.left
            if isinstance(h, Atom):
                return Not(g)                      # keep the doubled negation
            if is_not(h) and isinstance(h.left, Atom):
                return h                           # three negations collapse to one
            return _neg(_neg(h))
        return And(_neg(_neg(g.left)), _neg(g.right))
    raise TransformError(f"cannot negate {g!r}")


# ---------------------------------------------------------------------------
# Flat rules

@dataclass(frozen=True)
class Lit:
    """A possibly negated atom.  ``neg`` counts default negations: 0, 1 or
    2; strongly negated predicates count as plain atoms."""
    atom: Atom
    neg: int = 0

    def formula(self) -> Formula:
        out: Formula = self.atom
        for _ in range(self.neg):
            out = Not(out)
        return out

    def __str__(self):
        return "not " * self.neg + str(self.atom)


@dataclass(frozen=True)
class FlatRule:
    """Quantifier-free rule: a disjunction of literals from a conjunction
    of literals.  After full rulification no doubled negation remains."""
    head: tuple[Lit, ...]
    body: tuple[Lit, ...]

    def formula(self) -> Formula:
        from .syntax import conj, disj
        head = disj(l.formula() for l in self.head)
        if not self.body:
            return head
        return Implies(conj(l.formula() for l in self.body), head)

    def __str__(self):
        h = " | ".join(str(l) for l in self.head)
        b = ", ".join(str(l) for l in self.body)
        if not self.body:
            return h or "false"
        return (h + " <- " if h else "<- ") + b


def _is_literal(e: Formula) -> bool:
    if isinstance(e, Atom):
        return True
    return is_not(e) and isinstance(e.left, Atom)


def _as_lit(e: Formula) -> Lit:
    if isinstance(e, Atom):
        return Lit(e, 0)
    return Lit(e.left, 1)


def _is_double_neg(e: Formula) -> bool:
    return (is_not(e) and is_not(e.left) and isinstance(e.left.left, Atom))


def rulify(f: Formula) -> list[FlatRule]:
    """Decompose a quantifier-free formula into flat rules.

    Top-level conjuncts become one proto-rule each (an implication keeps
    its body and head, anything else becomes a bodiless head).  Each side
    is normalised to NNF and then the decomposition rules run to a fixed
    point, body side first:

      true in body        -> dropped            bottom in head -> dropped
      bottom in body      -> rule vanishes      true in head   -> rule vanishes
      not not a in body   -> not a to head      not not a head -> not a to body
      disjunctive body    -> split in two       conjunctive head -> split in two
      implication in body -> three rules        implication in head -> two rules

    The stable models of the conjunction of the results, read as formulas,
    are those of the input, for every choice of intensional predicates.
    The expansion is the exponential one; ``max_rules`` aborts pathological
    inputs.
    """
    _ensure_quantifier_free(f)
    queue: deque[tuple[list, list]] = deque()
    for c in flatten_and(f):
        if isinstance(c, Implies) and not is_top(c):
            queue.append((flatten_and(c.left), flatten_or(c.right)))
        else:
            queue.append(([], flatten_or(c)))
    return _rulify_queue(queue)


MAX_RULES = 10 ** 5


def _rulify_queue(queue) -> list[FlatRule]:
    out: list[FlatRule] = []
    produced = 0
    while queue:
        produced += 1
        if produced + len(queue) > MAX_RULES:
            raise TransformError(f"rulification exceeds {MAX_RULES} rules; "
                                 "the input blows up exponentially")
        body, head = queue.popleft()
        body = [_nnf(e) for e in body]
        head = [_nnf(e) for e in head]

        redone = False
        for i, e in enumerate(body):
            if _is_literal(e):
                continue
            rest = body[:i] + body[i + 1:]
            if is_top(e):
                queue.appendleft((rest, head))
            elif isinstance(e, Bottom):
                pass                                    # rule vanishes
            elif _is_double_neg(e):
                queue.appendleft((rest, [Not(e.left.left)] + head))
            elif isinstance(e, And):
                queue.appendleft((body[:i] + flatten_and(e) + body[i + 1:], head))
            elif isinstance(e, Or):
                queue.appendleft(([e.right] + rest, head))
                queue.appendleft(([e.left] + rest, head))
            elif isinstance(e, Implies):
                queue.appendleft((rest, [e.left, Not(e.right)] + head))
                queue.appendleft(([e.right] + rest, head))
                queue.appendleft(([Not(e.left)] + rest, head))
            else:
                raise TransformError(f"unexpected body element {e!r}")
            redone = True
            break
        if redone:
            continue

        for i, e in enumerate(head):
            if _is_literal(e):
                continue
            rest = head[:i] + head[i + 1:]
            if isinstance(e, Bottom):
                queue.appendleft((body, rest))
            elif is_top(e):
                pass                                    # rule vanishes
            elif _is_double_neg(e):
                queue.appendleft(([Not(e.left.left)] + body, rest))
            elif isinstance(e, Or):
                queue.appendleft((body, head[:i] + flatten_or(e) + head[i + 1:]))
            elif isinstance(e, And):
                queue.appendleft((body, [e.right] + rest))
                queue.appendleft((body, [e.left] + rest))
            elif isinstance(e, Implies):
                queue.appendleft(([Not(e.right)] + body, [Not(e.left)] + rest))
                queue.appendleft(([e.left] + body, [e.right] + rest))
            else:
                raise TransformError(f"unexpected head element {e!r}")
            redone = True
            break
        if redone:
            continue

        out.append(FlatRule(tuple(_as_lit(e) for e in head),
                            tuple(_as_lit(e) for e in body)))
    return out


# ---------------------------------------------------------------------------
# Prenex form

def prenex(f: Formula) -> Formula:
    """Pull every quantifier to the front.

    Extraction is leftmost-outermost with fresh renaming, so the result is
    deterministic; a universal flips to an existential through an
    antecedent and vice versa.  Each step preserves strong equivalence.
    """
    fresh = FreshNames()

    def go(node: Formula) -> tuple[list, Formula]:
        if isinstance(node, (Atom, Bottom)):
            return [], node
        if isinstance(node, (Forall, Exists)):
            prefix, matrix = go(node.body)
            w = fresh.variable(node.var.sort)
            matrix = substitute(matrix, {node.var.name: w})
            return [(type(node), w)] + prefix, matrix
        if isinstance(node, (And, Or)):
            pa, ma = go(node.left)
            pb, mb = go(node.right)
            return pa + pb, type(node)(ma, mb)
        if isinstance(node, Implies):
            pa, ma = go(node.left)
            pb, mb = go(node.right)
            flipped = [(Exists if cls is Forall else Forall, v) for cls, v in pa]
            return flipped + pb, Implies(ma, mb)
        raise TransformError(f"cannot prenex {node!r}")

    prefix, matrix = go(f)
    out = matrix
    for cls, v in reversed(prefix):
        out = cls(v, out)
    return out


# ---------------------------------------------------------------------------
# Double negation insertion

def insert_double_negation(f: Formula, at: Path, preds: Iterable[str]) -> Formula:
    """Prefix the occurrence at ``at`` with two negations.

    Refuses unless the occurrence is negated relative to ``preds``; outside
    that condition the rewrite can change the stable models, so it is not
    offered.
    """
    if not is_p_negated(f, at, preds):
        raise TransformError(
            f"occurrence at {list(at)} is not negated relative to {sorted(preds)}; "
            "inserting a double negation there would be unsound")
    g = subformula_at(f, at)
    return replace_at(f, at, Not(Not(g)))
