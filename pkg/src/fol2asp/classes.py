"""Syntactic classes and structural analyses.

Canonicity, singular quantifier occurrences, almost-universality, the
predicate dependency graph with tightness, Clark normal form with its
completion, and the double-negation embedding of predicate minimisation
into stable models.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable

from .errors import TransformError
from .occurrences import (antecedent_depth, atom_occurrences, is_negative_on,
                          iter_occurrences, occurrence_polarity,
                          strictly_positive_ancestors)
from .syntax import (And, Atom, Bottom, Exists, Forall, Formula, Implies,
                     Not, Or, Path, Signature, Var, children, conj, disj,
                     flatten_and, free_vars, is_not, is_top, iter_subformulas,
                     rename_apart, subformula_at, substitute, term_vars,
                     Term, Top, DEFAULT_SORT)


# ---------------------------------------------------------------------------
# Canonicity

@dataclass(frozen=True)
class CanonicityReport:
    """Verdict plus one witness per violation: (predicate, path of the
    offending atom occurrence, violated clause 1 or 2)."""

    verdict: bool
    witnesses: tuple[tuple[str, Path, int], ...] = ()

    def __bool__(self):
        return self.verdict


def is_canonical(f: Formula, preds: Iterable[str]) -> CanonicityReport:
    """Check the two canonicity clauses for the given predicate list.

    Clause 1 fails when some listed predicate occurs in the antecedents of
    two or more implications.  Clause 2 fails when a listed predicate
    occurs inside a strictly positive disjunction or existential without
    itself being strictly positive.
    """
    witnesses = []
    for path, atom, count in atom_occurrences(f, preds):
        if count > 1:
            witnesses.append((atom.pred, path, 1))
        if count > 0 and strictly_positive_ancestors(f, path, (Or, Exists)):
            witnesses.append((atom.pred, path, 2))
    return CanonicityReport(not witnesses, tuple(witnesses))


# ---------------------------------------------------------------------------
# Singular occurrences and almost-universal formulas

def is_singular(f: Formula, at: Path) -> bool:
    """A quantified occurrence is singular when it is an existential at a
    positive position or a universal at a negative position: the cases a
    prenex pass would turn into a top-level existential."""
    node = subformula_at(f, at)
    if not isinstance(node, (Forall, Exists)):
        raise TransformError(f"path {list(at)} is not a quantifier occurrence")
    polarity, _ = occurrence_polarity(f, at)
    if isinstance(node, Exists):
        return polarity == "positive"
    return polarity == "negative"


@dataclass(frozen=True)
class AlmostUniversalReport:
    verdict: bool
    witnesses: tuple[Path, ...] = ()   # singular occurrences that are not covered

    def __bool__(self):
        return self.verdict


def is_almost_universal(f: Formula, preds: Iterable[str]) -> AlmostUniversalReport:
    """Every singular quantifier occurrence must lie inside a subformula
    negative on ``preds``; those are the occurrences the elimination can
    remove soundly."""
    from .occurrences import is_p_negated
    preds = set(preds)
    bad = []
    for path, node, count in iter_occurrences(f):
        if isinstance(node, (Forall, Exists)):
            positive = count % 2 == 0
            singular = positive if isinstance(node, Exists) else not positive
            if singular and not is_p_negated(f, path, preds):
                bad.append(path)
    return AlmostUniversalReport(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# Predicate dependency graph and tightness

def rules_of(f: Formula) -> list[tuple[Path, Implies]]:
    """Implications occurring strictly positively in f."""
    out = []
    for path, node, count in iter_occurrences(f):
        if count == 0 and isinstance(node, Implies):
            out.append((path, node))
    return out


@dataclass(frozen=True)
class DependencyGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def successors(self, v: str) -> set[str]:
        return {b for a, b in self.edges if a == v}

    def sccs(self) -> list[frozenset[str]]:
        """Strongly connected components, Tarjan's algorithm, iterative."""
        index: dict[str, int] = {}
        low: dict[str, int] = {}
        on_stack: set[str] = set()
        stack: list[str] = []
        out: list[frozenset[str]] = []
        counter = [0]

        for root in self.vertices:
            if root in index:
                continue
            work = [(root, iter(sorted(self.successors(root))))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                v, it = work[-1]
                advanced = False
                for w in it:
                    if w not in index:
                        index[w] = low[w] = counter[0]
                        counter[0] += 1
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(sorted(self.successors(w)))))
                        advanced = True
                        break
                    if w in on_stack:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.add(w)
                        if w == v:
                            break
                    out.append(frozenset(comp))
        return out

    @property
    def acyclic(self) -> bool:
        if any(a == b for a, b in self.edges):
            return False
        return all(len(c) == 1 for c in self.sccs())


def dependency_graph(f: Formula, preds: Iterable[str]) -> DependencyGraph:
    """Directed graph over ``preds``: an edge p -> q records that some
    strictly positive implication has p strictly positive in its consequent
    and q positively in its antecedent, outside every antecedent subformula
    negative on the list."""
    plist = tuple(dict.fromkeys(preds))
    pset = set(plist)
    edges = set()
    for _, rule in rules_of(f):
        body, head = rule.left, rule.right
        heads = {atom.pred for path, atom, count in atom_occurrences(head, pset)
                 if count == 0}
        if not heads:
            continue
        for path, atom, count in atom_occurrences(body, pset):
            if count % 2 != 0:
                continue
            covered = any(is_negative_on(subformula_at(body, path[:k]), pset)
                          for k in range(len(path) + 1))
            if covered:
                continue
            for h in heads:
                edges.add((h, atom.pred))
    return DependencyGraph(plist, frozenset(edges))


def is_tight(f: Formula, preds: Iterable[str]) -> bool:
    return dependency_graph(f, preds).acyclic


# ---------------------------------------------------------------------------
# Clark normal form and completion

def _strip_foralls(f: Formula) -> tuple[list[Var], Formula]:
    vs = []
    while isinstance(f, Forall):
        vs.append(f.var)
        f = f.body
    return vs, f


def _shared_head_vars(clauses, n):
    """When every clause already heads the same tuple of distinct
    variables, keep those names so Clark-form input passes through
    unchanged."""
    if not clauses:
        return None
    tuples = []
    for vs, body, head in clauses:
        if not all(isinstance(t, Var) for t in head.args):
            return None
        if len({t.name for t in head.args}) != len(head.args):
            return None
        tuples.append(head.args)
    if len({t for t in tuples}) != 1 or len(tuples[0]) != n:
        return None
    return list(tuples[0])


def to_clark_normal_form(f: Formula, preds: Iterable[str],
                         sig: Signature | None = None) -> Formula:
    """Merge a conjunction of definite clauses into one implication per
    predicate.

    Each conjunct must be a (universally closed) implication whose
    consequent is a single atom of ``preds``, or such an atom outright.
    Bodies of the same predicate are joined by disjunction; head argument
    positions are normalised to fresh distinct variables with equality
    atoms where needed, and clause variables that do not survive into the
    head are existentially quantified.  A listed predicate with no clause
    gets the empty disjunction as its body.
    """
    plist = tuple(dict.fromkeys(preds))
    clauses: dict[str, list[tuple[list[Var], Formula, Atom]]] = {p: [] for p in plist}
    arities: dict[str, int] = {}
    profiles: dict[str, tuple] = {}
    for conjunct in flatten_and(f):
        vs, core = _strip_foralls(conjunct)
        if isinstance(core, Atom) and not is_not(core):
            body, head = Top(), core
        elif isinstance(core, Implies) and isinstance(core.right, Atom):
            body, head = core.left, core.right
        else:
            raise TransformError(f"conjunct is not a definite clause: {conjunct}")
        if head.pred not in clauses:
            raise TransformError(
                f"clause head {head.pred} is not among the listed predicates")
        arities[head.pred] = len(head.args)
        if sig is not None:
            profiles[head.pred] = sig.predicates.get(head.pred, ())
        clauses[head.pred].append((vs, body, head))

    for p in plist:
        if p not in arities:
            arities[p] = len(profiles.get(p, ())) if sig else 0

    out = []
    for p in plist:
        n = arities[p]
        used = {v.name for vs, body, head in clauses[p] for v in vs}
        shared = _shared_head_vars(clauses[p], n)
        if shared is not None:
            head_vars = shared
        else:
            head_vars = []
            for i in range(n):
                sorts = profiles.get(p)
                sort = sorts[i] if sorts and sorts[i] else DEFAULT_SORT
                name = rename_apart(f"X{i + 1}" if n > 1 else "X",
                                    used | {v.name for v in head_vars})
                head_vars.append(Var(name, sort))
        disjuncts = []
        for vs, body, head in clauses[p]:
            binding = {}
            eqs = []
            seen = set()
            for hv, t in zip(head_vars, head.args):
                if isinstance(t, Var) and t.name not in seen and t.name not in binding:
                    binding[t.name] = hv
                    seen.add(t.name)
                else:
                    eqs.append(Atom("=", (hv, t)))
            clause_body = body
            pieces = eqs + ([] if is_top(clause_body) else [clause_body])
            d = conj(pieces) if pieces else Top()
            d = substitute(d, binding)
            rest = [v for v in vs if v.name not in binding
                    and any(w.name == v.name for w in free_vars(d))]
            for v in reversed(rest):
                d = Exists(v, d)
            disjuncts.append(d)
        body = disj(disjuncts) if disjuncts else Bottom()
        clause: Formula = Implies(body, Atom(p, tuple(head_vars)))
        for v in reversed(head_vars):
            clause = Forall(v, clause)
        out.append(clause)
    return conj(out)


def completion(f: Formula, preds: Iterable[str]) -> Formula:
    """Turn each Clark-form implication into a biconditional.

    Warns when the input is not tight on ``preds``, because only then is
    the completion guaranteed to have exactly the stable models.
    """
    plist = tuple(dict.fromkeys(preds))
    if not is_tight(f, plist):
        warnings.warn("completion of a non-tight formula does not match its "
                      "stable models in general", stacklevel=2)
    seen = set()
    out = []
    for conjunct in flatten_and(f):
        vs, core = _strip_foralls(conjunct)
        if not (isinstance(core, Implies) and isinstance(core.right, Atom)
                and core.right.pred in plist
                and all(isinstance(t, Var) for t in core.right.args)
                and len({t.name for t in core.right.args}) == len(core.right.args)
                and core.right.pred not in seen):
            raise TransformError(f"not in Clark normal form: {conjunct}")
        seen.add(core.right.pred)
        repl: Formula = And(Implies(core.right, core.left),
                            Implies(core.left, core.right))
        for v in reversed(vs):
            repl = Forall(v, repl)
        out.append(repl)
    missing = [p for p in plist if p not in seen]
    if missing:
        raise TransformError(f"no Clark clause for predicates {missing}")
    return conj(out)


# ---------------------------------------------------------------------------
# Minimisation embedded into stable models by doubled negation

def _check_nnf(f: Formula):
    for _, node in iter_subformulas(f):
        if isinstance(node, Implies):
            if not (is_not(node) and isinstance(node.left, Atom)):
                raise TransformError(
                    "input must be in negation normal form (negation on atoms only)")


def choice_formula(pred: str, arity: int, sorts=None) -> Formula:
    vs = tuple(Var(f"X{i + 1}" if arity > 1 else "X",
                   (sorts[i] if sorts and sorts[i] else DEFAULT_SORT))
               for i in range(arity))
    a = Atom(pred, vs)
    body: Formula = Or(a, Not(a))
    for v in reversed(vs):
        body = Forall(v, body)
    return body


def circ_to_sm(f: Formula, preds: Iterable[str],
               sig: Signature | None = None) -> Formula:
    """Rewrite so that stable models coincide with the minimal models.

    The result conjoins two variants of the NNF input: one with doubled
    negation on every listed atom, and one where each negated listed atom
    becomes an implication into the choice formulas for the whole list.
    """
    _check_nnf(f)
    plist = tuple(dict.fromkeys(preds))
    pset = set(plist)

    arities: dict[str, tuple] = {}
    for _, node in iter_subformulas(f):
        if isinstance(node, Atom) and node.pred in pset:
            sorts = sig.predicates.get(node.pred) if sig else None
            arities.setdefault(node.pred, (len(node.args), sorts))
    for p in plist:
        if p not in arities:
            if sig is None or p not in sig.predicates:
                raise TransformError(
                    f"cannot determine the arity of {p}; pass a signature")
            arities[p] = (len(sig.predicates[p]), sig.predicates[p])

    choice = conj(choice_formula(p, *arities[p]) for p in plist)

    def doubled(node: Formula) -> Formula:
        if isinstance(node, Atom):
            return Not(Not(node)) if node.pred in pset else node
        if is_not(node):
            return Not(doubled(node.left))
        if isinstance(node, (And, Or)):
            return type(node)(doubled(node.left), doubled(node.right))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.var, doubled(node.body))
        return node

    def chosen(node: Formula) -> Formula:
        if is_not(node) and isinstance(node.left, Atom) and node.left.pred in pset:
            return Implies(node.left, choice)
        if isinstance(node, (And, Or)):
            return type(node)(chosen(node.left), chosen(node.right))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.var, chosen(node.body))
        return node

    return And(doubled(f), chosen(f))
