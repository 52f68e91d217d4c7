"""Program representation, the mixed-statement file parser, the reading of
programs as first-order formulas, head normalisation and text emission for
two grounder dialects.

A source file mixes four statement kinds: extended rules ``head <- body``
whose sides are arrow-free formulas, native rules written with ``:-`` that
pass through untouched, choice statements ``{atom}`` with an optional
body, and ``#domain`` / ``#const`` directives.  Bare formulas are extended
rules with an empty body; ``<- body`` is a constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import EmitError, ParseError
from .parser import FormulaParser, TokenStream, resolve_sorts, tokenize
from .pretty import formula_text, rule_text, term_text
from .syntax import (And, Atom, Bottom, Exists, Forall, Formula, Implies,
                     Not, Num, Obj, Or, Range, Signature, Term, Top, Var,
                     conj, disj, flatten_and, forall_closure, free_vars,
                     is_not, is_top, iter_subformulas, term_vars,
                     BUILTIN_COMPARISONS, STRONG_PREFIX)
from .transforms import FlatRule, Lit

_NEGATED_COMPARISON = {"=": "!=", "<": ">=", "<=": ">", ">": "<=", ">=": "<"}


# ---------------------------------------------------------------------------
# Statements

@dataclass(frozen=True)
class Rule:
    """Native rule: disjunctive head, conjunctive body.  An empty head is a
    constraint, an empty body a fact."""
    head: tuple[Lit, ...]
    body: tuple[Lit, ...] = ()


@dataclass(frozen=True)
class Choice:
    atom: Atom
    body: tuple[Lit, ...] = ()


@dataclass(frozen=True)
class ExtendedRule:
    """Rule whose sides are formulas; awaiting translation."""
    head: Formula
    body: Formula


@dataclass(frozen=True)
class Directive:
    kind: str                      # "domain" | "const"
    args: tuple

    def __str__(self):
        if self.kind == "domain":
            return f"#domain {formula_text(self.args[0])}."
        if self.kind == "const":
            return f"#const {self.args[0]}={self.args[1]}."
        raise EmitError(f"unknown directive {self.kind}")


Statement = object


@dataclass
class Program:
    statements: list = field(default_factory=list)
    signature: Signature = field(default_factory=lambda: Signature(auto_declare=True))
    domains: dict[str, str] = field(default_factory=dict)   # variable -> domain predicate
    consts: dict[str, int] = field(default_factory=dict)

    def copy(self) -> "Program":
        return Program(list(self.statements), self.signature,
                       dict(self.domains), dict(self.consts))


# ---------------------------------------------------------------------------
# Parsing

def _split_statements(tokens):
    out = []
    current = []
    for t in tokens:
        if t.text == "." and t.kind == "op":
            if current:
                out.append(current)
                current = []
        else:
            current.append(t)
    if current:
        raise ParseError("statement does not end with '.'",
                         current[-1].line, current[-1].col)
    return out


def _parse_directive(slice_, sig, domains):
    ts = TokenStream(slice_)
    ts.expect("#")
    kw = ts.next()
    if kw.text == "domain":
        parser = FormulaParser(ts, sig, domains)
        atom = parser.atom_or_comparison()
        if not isinstance(atom, Atom) or len(atom.args) != 1 \
                or not isinstance(atom.args[0], Var):
            raise ParseError("#domain takes a unary predicate over one variable",
                             kw.line, kw.col)
        if not ts.exhausted:
            t = ts.peek()
            raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
        return Directive("domain", (atom,))
    if kw.text == "const":
        name = ts.next()
        ts.expect("=")
        value = ts.next()
        if name.kind != "name" or value.kind != "num":
            raise ParseError("#const takes name=integer", kw.line, kw.col)
        if not ts.exhausted:
            t = ts.peek()
            raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
        return Directive("const", (name.text, int(value.text)))
    raise ParseError(f"unsupported directive #{kw.text}", kw.line, kw.col)


def _parse_native_lit(ts, sig, domains) -> Lit:
    if ts.at("{"):
        # {not a}0 is the bounded form of a doubled default negation
        ts.next()
        ts.expect("not")
        inner = _parse_native_lit(ts, sig, domains)
        ts.expect("}")
        bound = ts.next()
        if inner.neg != 0 or bound.text != "0":
            raise ParseError("only the {not atom}0 cardinality form is supported",
                             bound.line, bound.col)
        return Lit(inner.atom, 2)
    neg = 0
    while ts.at("not"):
        ts.next()
        neg += 1
    if neg > 2:
        t = ts.peek()
        raise ParseError("too many negations", t.line if t else None,
                         t.col if t else None)
    parser = FormulaParser(ts, sig, domains, allow_ranges=True)
    if ts.at("-"):
        ts.next()
        f = parser.strong_atom()
    else:
        f = parser.atom_or_comparison()
    if is_not(f):            # a != b arrives as negated equality
        return Lit(f.left, neg + 1 if neg < 2 else neg)
    return Lit(f, neg)


def _resolve_lit_sorts(lits, sig):
    """Run sort inference over a whole statement's atoms at once so shared
    variables agree."""
    lits = list(lits)
    if not lits:
        return ()
    packed = conj(l.atom for l in lits)
    fixed = flatten_and(resolve_sorts(packed, sig))
    return tuple(Lit(atom, lit.neg) for atom, lit in zip(fixed, lits))


def _parse_native_rule(slice_, arrow_pos, sig, domains) -> Rule:
    head_ts = TokenStream(slice_[:arrow_pos])
    body_ts = TokenStream(slice_[arrow_pos + 1:])
    head = []
    if head_ts.tokens:
        head.append(_parse_native_lit(head_ts, sig, domains))
        while head_ts.at("|"):
            head_ts.next()
            head.append(_parse_native_lit(head_ts, sig, domains))
        if not head_ts.exhausted:
            t = head_ts.peek()
            raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    body = []
    if body_ts.tokens:
        body.append(_parse_native_lit(body_ts, sig, domains))
        while body_ts.at(","):
            body_ts.next()
            body.append(_parse_native_lit(body_ts, sig, domains))
        if not body_ts.exhausted:
            t = body_ts.peek()
            raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    lits = _resolve_lit_sorts(head + body, sig)
    return Rule(lits[:len(head)], lits[len(head):])


def _formula_to_lits(f: Formula) -> tuple[Lit, ...]:
    lits = []
    for part in flatten_and(f):
        if is_top(part):
            continue
        if isinstance(part, Atom):
            lits.append(Lit(part, 0))
        elif is_not(part) and isinstance(part.left, Atom):
            lits.append(Lit(part.left, 1))
        elif is_not(part) and is_not(part.left) and isinstance(part.left.left, Atom):
            lits.append(Lit(part.left.left, 2))
        else:
            raise ParseError(f"expected a conjunction of literals, found {formula_text(part)}")
    return tuple(lits)


def _parse_choice(slice_, sig, domains) -> Choice:
    ts = TokenStream(slice_)
    ts.expect("{")
    parser = FormulaParser(ts, sig, domains)
    atom = parser.atom_or_comparison()
    if not isinstance(atom, Atom) or atom.pred in BUILTIN_COMPARISONS:
        raise ParseError("choice statements take a single atom")
    ts.expect("}")
    body: tuple[Lit, ...] = ()
    if not ts.exhausted:
        arrow = ts.next()
        if arrow.text not in ("<-", ":-"):
            raise ParseError(f"expected an arrow, found {arrow.text!r}",
                             arrow.line, arrow.col)
        body_formula = FormulaParser(ts, sig, domains).formula()
        if not ts.exhausted:
            t = ts.peek()
            raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
        body = _formula_to_lits(body_formula)
    lits = _resolve_lit_sorts((Lit(atom, 0),) + body, sig)
    return Choice(lits[0].atom, lits[1:])


def _parse_extended(slice_, sig, domains) -> ExtendedRule:
    ts = TokenStream(slice_)
    parser = FormulaParser(ts, sig, domains, allow_ranges=True)
    if ts.at("<-"):
        ts.next()
        body = parser.formula()
        head: Formula = Bottom()
    else:
        head = parser.formula()
        body = Top()
        if ts.at("<-"):
            ts.next()
            body = parser.formula()
    if not ts.exhausted:
        t = ts.peek()
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    for side in (head, body):
        for _, node in iter_subformulas(side):
            if isinstance(node, Implies) and not is_not(node) and not is_top(node):
                raise ParseError("'->' cannot be nested inside an extended rule; "
                                 "use a separate statement")
    combined = resolve_sorts(Implies(body, head), sig)
    return ExtendedRule(combined.right, combined.left)


def _has_ranges(f: Formula) -> bool:
    for _, node in iter_subformulas(f):
        if isinstance(node, Atom):
            if any(isinstance(t, Range) for t in node.args):
                return True
    return False


def parse_program(text: str, sig: Signature | None = None) -> Program:
    """Parse a program file.

    Directives are collected in a first pass so that #domain declarations
    cover every statement regardless of position, mirroring their global
    scope in the grounder languages.
    """
    sig = sig if sig is not None else Signature(auto_declare=True)
    slices = _split_statements(tokenize(text))

    domains: dict[str, str] = {}
    consts: dict[str, int] = {}
    directives = {}
    for i, slice_ in enumerate(slices):
        if slice_ and slice_[0].text == "#":
            d = _parse_directive(slice_, sig, domains)
            directives[i] = d
            if d.kind == "domain":
                atom = d.args[0]
                var = atom.args[0]
                domains[var.name] = atom.pred
                sig._require_sort(atom.pred)
                sig.predicates[atom.pred] = (atom.pred,)
            else:
                consts[d.args[0]] = d.args[1]

    program = Program([], sig, domains, consts)
    for i, slice_ in enumerate(slices):
        if i in directives:
            program.statements.append(directives[i])
            continue
        texts = [t.text for t in slice_]
        if texts[0] == "{":
            program.statements.append(_parse_choice(slice_, sig, domains))
        elif ":-" in texts:
            program.statements.append(
                _parse_native_rule(slice_, texts.index(":-"), sig, domains))
        else:
            stmt = _parse_extended(slice_, sig, domains)
            if _has_ranges(stmt.head) or _has_ranges(stmt.body):
                if not (isinstance(stmt.head, Atom) and is_top(stmt.body)):
                    raise ParseError("range terms are only allowed in facts")
                program.statements.append(Rule((Lit(stmt.head, 0),), ()))
            elif isinstance(stmt.head, Atom) and is_top(stmt.body):
                program.statements.append(Rule((Lit(stmt.head, 0),), ()))
            else:
                program.statements.append(stmt)
    return program


# ---------------------------------------------------------------------------
# Reading a program as a formula

def _lit_formula(lit: Lit) -> Formula:
    out: Formula = lit.atom
    for _ in range(lit.neg):
        out = Not(out)
    return out


def _close(f: Formula, domains, sig) -> Formula:
    fixed = _apply_domain_sorts(f, domains)
    return forall_closure(fixed)


def _apply_domain_sorts(f: Formula, domains: dict[str, str]) -> Formula:
    if not domains:
        return f

    def fix_term(t):
        if isinstance(t, Var) and t.name in domains:
            return Var(t.name, domains[t.name])
        if hasattr(t, "args") and hasattr(t, "func"):
            from .syntax import App
            return App(t.func, tuple(fix_term(a) for a in t.args))
        if isinstance(t, Range):
            return Range(fix_term(t.lo), fix_term(t.hi))
        return t

    def fix(node):
        if isinstance(node, Atom):
            return Atom(node.pred, tuple(fix_term(a) for a in node.args))
        if isinstance(node, (And, Or, Implies)):
            return type(node)(fix(node.left), fix(node.right))
        if isinstance(node, (Forall, Exists)):
            return type(node)(fix_term(node.var), fix(node.body))
        return node

    return fix(f)


def _substitute_consts(f: Formula, consts: dict[str, int]) -> Formula:
    if not consts:
        return f

    def fix_term(t):
        if isinstance(t, Obj) and t.name in consts:
            return Num(consts[t.name])
        if isinstance(t, Range):
            return Range(fix_term(t.lo), fix_term(t.hi))
        from .syntax import App
        if isinstance(t, App):
            return App(t.func, tuple(fix_term(a) for a in t.args))
        return t

    def fix(node):
        if isinstance(node, Atom):
            return Atom(node.pred, tuple(fix_term(a) for a in node.args))
        if isinstance(node, (And, Or, Implies)):
            return type(node)(fix(node.left), fix(node.right))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.var, fix(node.body))
        return node

    return fix(f)


def fol_representation(p: Program, consts: dict[str, int] | None = None) -> Formula:
    """The conjunction of the universal closures of the statements.

    A choice statement contributes body -> atom or not atom; a constraint
    contributes the negation of its body.  Range facts expand, which needs
    the constants they mention to have values.
    """
    consts = {**p.consts, **(consts or {})}
    parts = []
    for stmt in p.statements:
        if isinstance(stmt, Directive):
            continue
        if isinstance(stmt, ExtendedRule):
            f = stmt.head if is_top(stmt.body) else Implies(stmt.body, stmt.head)
        elif isinstance(stmt, Choice):
            free: Formula = Or(stmt.atom, Not(stmt.atom))
            body = conj(_lit_formula(l) for l in stmt.body) if stmt.body else None
            f = free if body is None else Implies(body, free)
        elif isinstance(stmt, Rule):
            if any(any(isinstance(t, Range) for t in l.atom.args) for l in stmt.head):
                parts.extend(_expand_range_fact(stmt, consts))
                continue
            head = disj(_lit_formula(l) for l in stmt.head)
            if stmt.body:
                f = Implies(conj(_lit_formula(l) for l in stmt.body), head)
            else:
                f = head
        else:
            raise EmitError(f"cannot interpret statement {stmt!r}")
        f = _substitute_consts(f, consts)
        parts.append(_close(f, p.domains, p.signature))
    return conj(parts)


def _expand_range_fact(stmt: Rule, consts):
    out = []
    lit = stmt.head[0]

    def value(t):
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Obj) and t.name in consts:
            return consts[t.name]
        from .syntax import App
        if isinstance(t, App) and t.func in ("+", "-"):
            a, b = value(t.args[0]), value(t.args[1])
            return a + b if t.func == "+" else a - b
        raise EmitError(f"range bound {t} has no value; set the constant")

    def blow(args):
        if not args:
            yield ()
            return
        first, rest = args[0], args[1:]
        opts = ([Num(v) for v in range(value(first.lo), value(first.hi) + 1)]
                if isinstance(first, Range) else [first])
        for o in opts:
            for tail in blow(rest):
                yield (o,) + tail

    for combo in blow(lit.atom.args):
        out.append(Atom(lit.atom.pred, combo))
    return out


# ---------------------------------------------------------------------------
# Head normalisation

def head_normalize(r: FlatRule) -> list:
    """Rewrite a flat rule into statements the grounder dialects accept.

    A head consisting of an atom and its own negation becomes a choice
    statement.  Otherwise negated head atoms move into the body under
    doubled default negation, and head comparisons move negated; when the
    head empties out, the statement is a constraint.
    """
    if len(r.head) == 2:
        a, b = r.head
        if a.atom == b.atom and {a.neg, b.neg} == {0, 1}:
            return [Choice(a.atom, r.body)]
    moved: list[Lit] = []
    head: list[Lit] = []
    for lit in r.head:
        if lit.atom.pred in BUILTIN_COMPARISONS:
            flipped = 1 - lit.neg if lit.neg in (0, 1) else lit.neg
            moved.append(Lit(lit.atom, flipped))
        elif lit.neg == 1:
            moved.append(Lit(lit.atom, 2))
        else:
            head.append(lit)
    return [Rule(tuple(head), tuple(moved) + tuple(r.body))]


# ---------------------------------------------------------------------------
# Emission

DIALECTS = ("lparse", "gringo")


def _lit_text(lit: Lit, dialect: str) -> str:
    if lit.atom.pred in BUILTIN_COMPARISONS:
        a = lit.atom
        op = a.pred if lit.neg == 0 else _NEGATED_COMPARISON[a.pred]
        return f"{term_text(a.args[0])} {op} {term_text(a.args[1])}"
    body = _atom_text(lit.atom)
    if lit.neg == 2 and dialect == "lparse":
        # lparse has no doubled default negation; the empty upper bound on
        # a negative cardinality literal expresses it in place
        return "{not " + body + "}0"
    return "not " * lit.neg + body


def _atom_text(a: Atom) -> str:
    name = a.pred
    if name.startswith(STRONG_PREFIX):
        name = "-" + name[len(STRONG_PREFIX):]
    if not a.args:
        return name
    return f"{name}({','.join(term_text(t) for t in a.args)})"


def normalize_for_dialect(p: Program, dialect: str) -> Program:
    """Materialise dialect rewrites as ordinary statements.

    Today that is one coherence constraint per strong-negation pair; the
    two dialects differ only in how a doubled default negation is spelled,
    which stays a rendering concern.
    """
    if dialect not in DIALECTS:
        raise EmitError(f"unknown dialect {dialect!r}")
    out = p.copy()
    statements = list(out.statements)

    for pred in sorted(out.signature.strong_pairs):
        prof = out.signature.predicates[pred]
        args = tuple(Var(f"X{i + 1}", prof[i] if prof[i] else "obj")
                     for i in range(len(prof)))
        pos = Atom(pred, args)
        neg = Atom(STRONG_PREFIX + pred, args)
        statements.append(Rule((), (Lit(pos, 0), Lit(neg, 0))))
    out.statements = statements
    return out


def _statement_vars_for_safety(stmt) -> tuple[set[str], set[str]]:
    """(all variables, variables covered by a positive body atom)."""
    all_vars: set[str] = set()
    covered: set[str] = set()

    def scan_atom(atom, into):
        for t in atom.args:
            for v in term_vars(t):
                into.add(v.name)

    lits = []
    if isinstance(stmt, Rule):
        lits = list(stmt.head) + list(stmt.body)
        body = stmt.body
    elif isinstance(stmt, Choice):
        lits = [Lit(stmt.atom, 0)] + list(stmt.body)
        body = stmt.body
    else:
        return set(), set()
    for lit in lits:
        scan_atom(lit.atom, all_vars)
    for lit in body:
        if lit.neg == 0 and lit.atom.pred not in BUILTIN_COMPARISONS:
            scan_atom(lit.atom, covered)
    return all_vars, covered


def emit(p: Program, dialect: str = "gringo", inline_domains: bool = False,
         consts: dict[str, int] | None = None) -> str:
    """Deterministic program text for the chosen dialect.

    Every variable must be covered by a #domain declaration or occur in a
    positive body atom, otherwise the grounders reject the statement and so
    does this function.  ``inline_domains`` trades the #domain directives
    for explicit domain atoms in each body.
    """
    q = normalize_for_dialect(p, dialect)
    lines = []
    merged_consts = {**q.consts, **(consts or {})}
    for name in sorted(c for c in merged_consts if c not in q.consts):
        lines.append(f"#const {name}={merged_consts[name]}.")

    def domain_atoms_for(stmt):
        all_vars, covered = _statement_vars_for_safety(stmt)
        extra = []
        for v in sorted(all_vars - covered):
            if v in q.domains:
                extra.append(Lit(Atom(q.domains[v], (Var(v),)), 0))
            else:
                raise EmitError(
                    f"variable {v} is not covered by a domain declaration or a "
                    f"positive body atom in {stmt}")
        return tuple(extra)

    for stmt in q.statements:
        if isinstance(stmt, Directive):
            if stmt.kind == "domain" and inline_domains:
                continue
            lines.append(str(stmt))
            continue
        if isinstance(stmt, ExtendedRule):
            raise EmitError("translate extended rules before emission")
        if inline_domains:
            extra = domain_atoms_for(stmt)
        else:
            all_vars, covered = _statement_vars_for_safety(stmt)
            for v in sorted(all_vars - covered):
                if v not in q.domains:
                    raise EmitError(
                        f"variable {v} is not covered by a domain declaration "
                        f"or a positive body atom in {stmt}")
            extra = ()
        if isinstance(stmt, Rule):
            head = " | ".join(_lit_text(l, dialect) for l in stmt.head)
            body = ", ".join(_lit_text(l, dialect) for l in stmt.body + extra)
            if body and head:
                lines.append(f"{head} :- {body}.")
            elif head:
                lines.append(f"{head}.")
            else:
                lines.append(f":- {body}.")
        elif isinstance(stmt, Choice):
            body = ", ".join(_lit_text(l, dialect) for l in stmt.body + extra)
            head = "{" + _atom_text(stmt.atom) + "}"
            lines.append(f"{head} :- {body}." if body else f"{head}.")
    return "\n".join(lines) + ("\n" if lines else "")
