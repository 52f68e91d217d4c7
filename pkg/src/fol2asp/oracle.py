"""Brute-force semantics over finite structures.

Grounding expands quantifiers into finite conjunctions and disjunctions,
evaluates function applications through total tables and folds built-in
comparisons away.  Model enumeration represents the truth value of a
ground formula as one big integer whose bit j is the value under the j-th
truth assignment, so the classical models of a formula over n atoms cost
a handful of integer operations on 2^n-bit words.  Stability and
minimality of each model are decided the same way over the subsets of the
model's own intensional extent, which is exact because a smaller predicate
interpretation can only shrink extents.

The enumeration refuses inputs beyond the configured atom budget instead
of approximating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import OracleLimitError
from .interpretations import EvaluationError, Interpretation
from .program import Choice, Directive, ExtendedRule, Program, Rule
from .syntax import (And, Atom, Bottom, Exists, Forall, Formula, Implies,
                     Num, Obj, Or, Range, Term, Var, conj, disj, is_not,
                     is_top, iter_subformulas, BUILTIN_COMPARISONS,
                     DEFAULT_SORT, Signature, Top)
from .transforms import Lit

AtomKey = tuple[str, tuple]


@dataclass
class GroundTask:
    """A finite-structure grounding problem.

    ``universes`` maps each sort to its elements (strings or integers);
    ``functions`` holds total tables keyed by argument tuples, with integer
    arithmetic evaluated natively when no table overrides it; ``objects``
    gives constant denotations, defaulting to the constant's own name.
    The payload, when present, is the formula or program ``ground`` works
    on by default.
    """

    universes: dict[str, tuple]
    signature: Signature | None = None
    functions: dict[str, dict] = field(default_factory=dict)
    objects: dict[str, object] = field(default_factory=dict)
    payload: object = None
    max_atoms: int = 22

    def universe(self, sort: str) -> tuple:
        sort = DEFAULT_SORT if sort in (None, "?") else sort
        try:
            return tuple(self.universes[sort])
        except KeyError:
            raise EvaluationError(f"no universe for sort {sort}") from None

    def _evaluator(self) -> Interpretation:
        ev = getattr(self, "_ev_cache", None)
        if ev is None:
            ev = Interpretation(dict(self.universes), dict(self.objects),
                                dict(self.functions), {})
            self._ev_cache = ev
        return ev

    def atom_space(self) -> list[AtomKey]:
        """Every sort-correct ground atom of the signature's predicates."""
        if self.signature is None:
            return []
        out = []
        for pred in sorted(self.signature.predicates):
            if pred in BUILTIN_COMPARISONS:
                continue
            prof = self.signature.predicates[pred]
            domains = [self.universe(s) for s in prof]
            for combo in itertools.product(*domains):
                out.append((pred, combo))
        return out

    def interpretation(self, atoms: Iterable[AtomKey]) -> Interpretation:
        extents: dict[str, set] = {}
        if self.signature is not None:
            for pred in self.signature.predicates:
                if pred not in BUILTIN_COMPARISONS:
                    extents[pred] = set()
        for pred, args in atoms:
            extents.setdefault(pred, set()).add(args)
        return Interpretation(dict(self.universes), dict(self.objects),
                              dict(self.functions),
                              {p: frozenset(s) for p, s in extents.items()})


@dataclass(frozen=True)
class ModelSet:
    """A set of interpretations sharing one task, represented by their
    atom sets, together with the predicate names they are reported over."""

    models: frozenset[frozenset[AtomKey]]
    predicates: tuple[str, ...] = ()

    def restrict(self, preds: Iterable[str]) -> "ModelSet":
        keep = set(preds)
        return ModelSet(frozenset(frozenset(a for a in m if a[0] in keep)
                                  for m in self.models),
                        tuple(sorted(keep)))

    def __iter__(self):
        return iter(sorted(self.models, key=sorted))

    def __len__(self):
        return len(self.models)

    def __contains__(self, atoms):
        return frozenset(atoms) in self.models


def _value_term(v) -> Term:
    return Num(v) if isinstance(v, int) else Obj(v)


# ---------------------------------------------------------------------------
# Grounding

def ground(task: GroundTask, payload=None):
    """Ground the payload over the task's universes.

    Formulas come back quantifier-free with comparisons folded; programs
    come back as instantiated statements with unsatisfiable instances
    dropped.  Raises when a surviving atom carries a value outside its
    declared sort, which signals a missing guard or table entry.
    """
    payload = payload if payload is not None else task.payload
    if isinstance(payload, Program):
        return _ground_program(task, payload)
    return _ground_formula(task, payload, {})


def _is_cheap(f: Formula) -> bool:
    if isinstance(f, Atom) and f.pred in BUILTIN_COMPARISONS:
        return True
    return is_not(f) and isinstance(f.left, Atom) and f.left.pred in BUILTIN_COMPARISONS


def _ground_formula(task: GroundTask, f: Formula, asg: dict) -> Formula:
    ev = task._evaluator()

    def eval_builtin(atom: Atom, local) -> Formula:
        values = tuple(ev.eval_term(t, local) for t in atom.args)
        from .interpretations import _compare
        return Top() if _compare(atom.pred, values) else Bottom()

    def ground_atom(atom: Atom, local) -> Formula:
        values = tuple(ev.eval_term(t, local) for t in atom.args)
        prof = None
        if task.signature is not None:
            prof = task.signature.predicates.get(atom.pred)
        if prof is not None:
            for v, s in zip(values, prof):
                if s is None:
                    continue
                if v not in set(task.universe(s)):
                    raise EvaluationError(
                        f"value {v!r} outside sort {s} in {atom.pred}{values}; "
                        "add a guard or a function table entry")
        return Atom(atom.pred, tuple(_value_term(v) for v in values))

    def junction(parts, local, empty, absorb, build):
        grounded = []
        ordered = sorted(range(len(parts)), key=lambda i: not _is_cheap(parts[i]))
        results: dict[int, Formula] = {}
        for i in ordered:
            g = go(parts[i], local)
            if (isinstance(g, Bottom) and isinstance(absorb, Bottom)) or \
               (is_top(g) and is_top(absorb)):
                return absorb
            results[i] = g
        for i in range(len(parts)):
            g = results[i]
            if (is_top(g) and isinstance(absorb, Bottom)) or \
               (isinstance(g, Bottom) and is_top(absorb)):
                continue
            grounded.append(g)
        if not grounded:
            return empty
        return build(grounded)

    def go(node: Formula, local) -> Formula:
        if isinstance(node, Bottom):
            return node
        if is_top(node):
            return node
        if isinstance(node, Atom):
            if node.pred in BUILTIN_COMPARISONS:
                return eval_builtin(node, local)
            return ground_atom(node, local)
        if isinstance(node, And):
            from .syntax import flatten_and
            return junction(flatten_and(node), local, Top(), Bottom(), conj)
        if isinstance(node, Or):
            from .syntax import flatten_or
            return junction(flatten_or(node), local, Bottom(), Top(), disj)
        if isinstance(node, Implies):
            a = go(node.left, local)
            if isinstance(a, Bottom):
                return Top()
            b = go(node.right, local)
            if is_top(b):
                return Top()
            if is_top(a):
                return b
            return Implies(a, b)
        if isinstance(node, (Forall, Exists)):
            domain = task.universe(node.var.sort)
            parts = []
            absorb = Bottom() if isinstance(node, Forall) else Top()
            for e in domain:
                g = go(node.body, {**local, node.var.name: e})
                if (isinstance(g, Bottom) and isinstance(node, Forall)):
                    return Bottom()
                if (is_top(g) and isinstance(node, Exists)):
                    return Top()
                if is_top(g) and isinstance(node, Forall):
                    continue
                if isinstance(g, Bottom) and isinstance(node, Exists):
                    continue
                parts.append(g)
            if not parts:
                return Top() if isinstance(node, Forall) else Bottom()
            return conj(parts) if isinstance(node, Forall) else disj(parts)
        raise EvaluationError(f"cannot ground {node!r}")

    return go(f, asg)


def _ground_lit(task: GroundTask, lit: Lit, local) -> Lit | bool:
    """Instantiate one rule literal; True and False stand for literals that
    folded away."""
    g = _ground_formula(task, lit.atom, local)
    if is_top(g):
        value = True
    elif isinstance(g, Bottom):
        value = False
    else:
        return Lit(g, lit.neg)
    if lit.neg == 1:
        value = not value
    return value


def _statement_vars(lits) -> list[Var]:
    seen: list[Var] = []
    for lit in lits:
        for _, node in iter_subformulas(lit.atom):
            if isinstance(node, Atom):
                from .syntax import term_vars
                for t in node.args:
                    for v in term_vars(t):
                        if v not in seen:
                            seen.append(v)
    return seen


def _expand_ranges(task: GroundTask, stmt: Rule):
    """Range facts expand into one fact per value."""
    ev = task._evaluator()

    def blow(args):
        if not args:
            yield ()
            return
        first, rest = args[0], args[1:]
        if isinstance(first, Range):
            lo = ev.eval_term(first.lo, {})
            hi = ev.eval_term(first.hi, {})
            options = [Num(v) for v in range(lo, hi + 1)]
        else:
            options = [first]
        for opt in options:
            for tail in blow(rest):
                yield (opt,) + tail

    out = []
    for lit in stmt.head:
        for combo in blow(lit.atom.args):
            out.append(Rule((Lit(Atom(lit.atom.pred, combo), lit.neg),), stmt.body))
    return out


def _ground_program(task: GroundTask, p: Program) -> Program:
    statements = []
    for stmt in p.statements:
        if isinstance(stmt, Directive):
            continue
        if isinstance(stmt, ExtendedRule):
            raise EvaluationError("translate extended rules before grounding")
        if isinstance(stmt, Rule) and any(
                isinstance(t, Range) for lit in stmt.head for t in lit.atom.args):
            if stmt.body:
                raise EvaluationError("range terms are only supported in facts")
            for fact in _expand_ranges(task, stmt):
                statements.append(fact)
            continue
        lits = list(stmt.body) + (list(stmt.head) if isinstance(stmt, Rule)
                                  else [Lit(stmt.atom, 0)])
        vs = _statement_vars(lits)
        domains = [task.universe(v.sort) for v in vs]
        for combo in itertools.product(*domains):
            local = {v.name: e for v, e in zip(vs, combo)}
            body = []
            dead = False
            for lit in stmt.body:
                r = _ground_lit(task, lit, local)
                if r is False:
                    dead = True
                    break
                if r is not True:
                    body.append(r)
            if dead:
                continue
            if isinstance(stmt, Choice):
                atom = _ground_formula(task, stmt.atom, local)
                statements.append(Choice(atom, tuple(body)))
                continue
            head = []
            satisfied = False
            for lit in stmt.head:
                r = _ground_lit(task, lit, local)
                if r is True:
                    satisfied = True
                    break
                if r is not False:
                    head.append(r)
            if satisfied:
                continue
            statements.append(Rule(tuple(head), tuple(body)))
    return Program(statements, p.signature)


# ---------------------------------------------------------------------------
# The star transform

def star_transform(f: Formula, preds: Iterable[str],
                   rename: Mapping[str, str]) -> Formula:
    """The transform whose failure on a smaller predicate interpretation
    certifies stability.  ``rename`` maps each listed predicate to its
    shadow playing the quantified predicate variable."""
    pset = set(preds)

    def go(node):
        if isinstance(node, Bottom):
            return node
        if isinstance(node, Atom):
            if node.pred in pset:
                return Atom(rename[node.pred], node.args)
            return node
        if isinstance(node, (And, Or)):
            return type(node)(go(node.left), go(node.right))
        if isinstance(node, Implies):
            return And(Implies(go(node.left), go(node.right)), node)
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.var, go(node.body))
        raise EvaluationError(f"cannot transform {node!r}")

    return go(f)


# ---------------------------------------------------------------------------
# Bit-parallel evaluation

def _var_pattern(i: int, n: int) -> int:
    """Truth bits of variable i over all 2^n assignments."""
    block = ((1 << (1 << i)) - 1) << (1 << i)
    width = 1 << (i + 1)
    total = 1 << n
    x = block
    while width < total:
        x |= x << width
        width <<= 1
    return x & ((1 << total) - 1)


def _truth_bits(g: Formula, index: Mapping[AtomKey, int], n: int) -> int:
    full = (1 << (1 << n)) - 1
    memo: dict[int, int] = {}

    def ev(node) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Bottom):
            v = 0
        elif isinstance(node, Atom):
            k = atom_key(node)
            if k in index:
                v = _var_pattern(index[k], n)
            else:
                v = 0
        elif isinstance(node, And):
            v = ev(node.left) & ev(node.right)
        elif isinstance(node, Or):
            v = ev(node.left) | ev(node.right)
        elif isinstance(node, Implies):
            v = ((full & ~ev(node.left)) | ev(node.right))
        else:
            raise EvaluationError(f"non-ground formula in enumeration: {node!r}")
        memo[key] = v
        return v

    return ev(g)


def atom_key(a: Atom) -> AtomKey:
    vals = []
    for t in a.args:
        if isinstance(t, Num):
            vals.append(t.value)
        elif isinstance(t, Obj):
            vals.append(t.name)
        else:
            raise EvaluationError(f"atom {a} is not ground")
    return (a.pred, tuple(vals))


def _iter_set_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _classical_truth(g: Formula, model: set[AtomKey]) -> bool:
    memo: dict[int, bool] = {}

    def ev(node) -> bool:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Bottom):
            v = False
        elif isinstance(node, Atom):
            v = atom_key(node) in model
        elif isinstance(node, And):
            v = ev(node.left) and ev(node.right)
        elif isinstance(node, Or):
            v = ev(node.left) or ev(node.right)
        elif isinstance(node, Implies):
            v = (not ev(node.left)) or ev(node.right)
        else:
            raise EvaluationError(f"non-ground formula: {node!r}")
        memo[key] = v
        return v

    return ev(g)


def _passes_reduction_test(g: Formula, model: set[AtomKey], pset: set[str],
                           extent: list[AtomKey], starred: bool,
                           max_atoms: int) -> bool:
    """No proper sub-extent may satisfy the (possibly starred) formula."""
    k = len(extent)
    if k == 0:
        return True
    if k > max_atoms:
        raise OracleLimitError(f"extent of {k} atoms exceeds the bound")
    total = 1 << k
    full = (1 << total) - 1
    index = {a: i for i, a in enumerate(extent)}
    memo: dict[int, int] = {}

    def ev(node) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Bottom):
            v = 0
        elif isinstance(node, Atom):
            a = atom_key(node)
            if a[0] in pset:
                v = _var_pattern(index[a], k) if a in index else 0
            else:
                v = full if a in model else 0
        elif isinstance(node, And):
            v = ev(node.left) & ev(node.right)
        elif isinstance(node, Or):
            v = ev(node.left) | ev(node.right)
        elif isinstance(node, Implies):
            v = (full & ~ev(node.left)) | ev(node.right)
            if starred:
                v &= full if _classical_truth(node, model) else 0
        else:
            raise EvaluationError(f"non-ground formula: {node!r}")
        memo[key] = v
        return v

    bits = ev(g)
    proper = full ^ (1 << (total - 1))
    return bits & proper == 0


# ---------------------------------------------------------------------------
# Model enumeration

def _enumerate_models(f: Formula, preds, task: GroundTask, mode: str) -> ModelSet:
    g = ground(task, f)
    pset = set(preds)
    occurring: list[AtomKey] = []
    seen = set()
    for _, node in iter_subformulas(g):
        if isinstance(node, Atom):
            k = atom_key(node)
            if k not in seen:
                seen.add(k)
                occurring.append(k)
    occurring.sort()
    space = task.atom_space()
    silent = [a for a in space if a not in seen]
    silent_free = [a for a in silent if a[0] not in pset]
    # silent intensional atoms are forced false: a smaller interpretation
    # could always drop them without the formula noticing
    n = len(occurring)
    if n + len(silent_free) > task.max_atoms:
        raise OracleLimitError(
            f"{n + len(silent_free)} ground atoms exceed the bound of "
            f"{task.max_atoms}; use an external solver")

    bits = _truth_bits(g, {a: i for i, a in enumerate(occurring)}, n)
    core_models = []
    for j in _iter_set_bits(bits):
        model = {occurring[i] for i in range(n) if (j >> i) & 1}
        extent = [a for a in occurring if a in model and a[0] in pset]
        if mode == "classical":
            ok = True
        else:
            ok = _passes_reduction_test(g, model, pset, extent,
                                        starred=(mode == "stable"),
                                        max_atoms=task.max_atoms)
        if ok:
            core_models.append(frozenset(model))

    models = set()
    for m in core_models:
        for r in range(len(silent_free) + 1):
            for extra in itertools.combinations(silent_free, r):
                models.add(m | frozenset(extra))
    report = tuple(sorted({a[0] for a in space} | {a[0] for a in occurring}))
    return ModelSet(frozenset(models), report)


def classical_models(f: Formula, task: GroundTask) -> ModelSet:
    """All finite models of f over the task, with no minimisation."""
    return _enumerate_models(f, (), task, "classical")


def sm_models(f: Formula, preds: Iterable[str], task: GroundTask) -> ModelSet:
    """Models of f with no smaller interpretation of ``preds`` passing the
    starred transform: the stable models over this finite structure."""
    return _enumerate_models(f, preds, task, "stable")


def circ_models(f: Formula, preds: Iterable[str], task: GroundTask) -> ModelSet:
    """Models of f minimal on ``preds``."""
    return _enumerate_models(f, preds, task, "minimal")


# ---------------------------------------------------------------------------
# Answer sets of ground programs

def _rule_triples(p: Program):
    """(heads, body, is_choice) per statement, over atom keys."""
    out = []
    for stmt in p.statements:
        if isinstance(stmt, Directive):
            continue
        if isinstance(stmt, Choice):
            out.append(((Lit(stmt.atom, 0),), stmt.body, True))
        elif isinstance(stmt, Rule):
            out.append((stmt.head, stmt.body, False))
        else:
            raise EvaluationError("program must be ground and native")
    return out


def propagate_facts(p: Program) -> tuple[Program, dict[AtomKey, bool]]:
    """Fix atoms that are facts (or follow from facts alone) or that no
    remaining head can support.

    The answer sets of the input are exactly those of the residual program
    extended by the atoms fixed true: a fixed-true atom belongs to every
    model of every reduct, a fixed-false one to none, so dropping satisfied
    statements and deleting decided literals changes neither the reducts'
    models nor their minimality.
    """
    rules = [(list(h), list(b), c) for h, b, c in _rule_triples(p)]
    fixed: dict[AtomKey, bool] = {}
    changed = True
    while changed:
        changed = False
        simplified = []
        for heads, body, is_choice in rules:
            dead = False
            new_body = []
            for lit in body:
                known = fixed.get(atom_key(lit.atom))
                if known is None:
                    new_body.append(lit)
                    continue
                changed = True
                if not (known if lit.neg in (0, 2) else not known):
                    dead = True
                    break
            if dead:
                continue
            new_heads = []
            satisfied = False
            for lit in heads:
                known = fixed.get(atom_key(lit.atom))
                if known is None:
                    new_heads.append(lit)
                    continue
                changed = True
                if is_choice or (known if lit.neg == 0 else not known):
                    satisfied = True
                    break
            if satisfied:
                continue
            simplified.append((new_heads, new_body, is_choice))
        rules = simplified

        for heads, body, is_choice in rules:
            if not is_choice and not body and len(heads) == 1 and heads[0].neg == 0:
                k = atom_key(heads[0].atom)
                if k not in fixed:
                    fixed[k] = True
                    changed = True

        atoms = {atom_key(l.atom) for h, b, _ in rules for l in h + b}
        supported = {atom_key(l.atom) for h, _, _ in rules
                     for l in h if l.neg == 0}
        for a in sorted(atoms - supported):
            if a not in fixed:
                fixed[a] = False
                changed = True

    statements = []
    for heads, body, is_choice in rules:
        if is_choice:
            statements.append(Choice(heads[0].atom, tuple(body)))
        elif not is_choice and not body and len(heads) == 1 and heads[0].neg == 0 \
                and fixed.get(atom_key(heads[0].atom)) is True:
            continue          # fact rules live on in the fixed set
        else:
            statements.append(Rule(tuple(heads), tuple(body)))
    return Program(statements, p.signature), fixed


def answer_sets(p: Program, max_atoms: int = 22) -> ModelSet:
    """Answer sets of a ground program by the reduct construction.

    A candidate set's reduct drops every statement blocked by default
    negation and strips the surviving negations; the candidate must then be
    a minimal model of the remaining positive disjunctive program.  Choice
    statements contribute a head that is free to hold or not.
    """
    residual, fixed = propagate_facts(p)
    true_atoms = frozenset(a for a, v in fixed.items() if v)

    rules = _rule_triples(residual)
    for heads, body, is_choice in rules:
        if not heads and not body and not is_choice:
            return ModelSet(frozenset(), ())
    atoms = sorted({atom_key(l.atom) for heads, body, _ in rules
                    for l in list(heads) + list(body)})
    n = len(atoms)
    if n > max_atoms:
        raise OracleLimitError(f"{n} residual atoms exceed the bound of {max_atoms}")
    index = {a: i for i, a in enumerate(atoms)}
    full = (1 << (1 << n)) - 1

    # classical prefilter over the residual program
    bits = full
    for heads, body, is_choice in rules:
        if is_choice:
            continue
        b = full
        for lit in body:
            v = _var_pattern(index[atom_key(lit.atom)], n)
            b &= v if lit.neg in (0, 2) else (full & ~v)
        h = 0
        for lit in heads:
            v = _var_pattern(index[atom_key(lit.atom)], n)
            h |= v if lit.neg == 0 else (full & ~v)
        bits &= (full & ~b) | h

    found = set()
    for j in _iter_set_bits(bits):
        x = {atoms[i] for i in range(n) if (j >> i) & 1}
        if _is_answer_set(rules, x):
            found.add(frozenset(x) | true_atoms)
    report = tuple(sorted({a[0] for a in atoms} | {a[0] for a in fixed}))
    return ModelSet(frozenset(found), report)


def _is_answer_set(rules, x: set[AtomKey]) -> bool:
    reduct = []
    for heads, body, is_choice in rules:
        pos_body = []
        blocked = False
        for lit in body:
            k = atom_key(lit.atom)
            if lit.neg == 0:
                pos_body.append(k)
            elif lit.neg == 1 and k in x:
                blocked = True
                break
            elif lit.neg == 2 and k not in x:
                blocked = True
                break
        if blocked:
            continue
        pos_heads = []
        satisfied_by_negation = False
        for lit in heads:
            k = atom_key(lit.atom)
            if lit.neg == 0:
                if is_choice and k not in x:
                    satisfied_by_negation = True
                    break
                pos_heads.append(k)
            elif lit.neg == 1:
                if k not in x:
                    satisfied_by_negation = True
                    break
        if satisfied_by_negation:
            continue
        reduct.append((pos_heads, pos_body))

    # x must be a model of the reduct
    for heads, body in reduct:
        if all(b in x for b in body) and not any(h in x for h in heads):
            return False
    # and no proper subset may be one
    xs = sorted(x)
    k = len(xs)
    if k == 0:
        return True
    idx = {a: i for i, a in enumerate(xs)}
    total = 1 << k
    full = (1 << total) - 1
    sat = full
    for heads, body in reduct:
        b = full
        for a in body:
            if a in idx:
                b &= _var_pattern(idx[a], k)
            # atoms outside x are false in every subset: body fails
            elif True:
                b = 0
                break
        h = 0
        for a in heads:
            if a in idx:
                h |= _var_pattern(idx[a], k)
        sat &= (full & ~b) | h
    proper = full ^ (1 << (total - 1))
    return sat & proper == 0


# ---------------------------------------------------------------------------
# Comparisons and coherence

@dataclass(frozen=True)
class SigmaResult:
    equal: bool
    counterexample: frozenset | None = None

    def __bool__(self):
        return self.equal


def sigma_equivalent(a: ModelSet, b: ModelSet, sigma: Iterable[str]) -> SigmaResult:
    """Do the two model sets agree after projection onto the predicates in
    sigma?  On failure the counterexample is one projected model present on
    only one side."""
    ra = a.restrict(sigma).models
    rb = b.restrict(sigma).models
    if ra == rb:
        return SigmaResult(True)
    diff = sorted(ra.symmetric_difference(rb), key=sorted)
    return SigmaResult(False, diff[0])


def coherent(atoms: Iterable[AtomKey] | Interpretation, sig: Signature) -> bool:
    """No tuple may belong to both members of a strong-negation pair."""
    if isinstance(atoms, Interpretation):
        extents = atoms.extents
        for p in sig.strong_pairs:
            if extents.get(p, frozenset()) & extents.get("~" + p, frozenset()):
                return False
        return True
    byname: dict[str, set] = {}
    for pred, args in atoms:
        byname.setdefault(pred, set()).add(args)
    for p in sig.strong_pairs:
        if byname.get(p, set()) & byname.get("~" + p, set()):
            return False
    return True
