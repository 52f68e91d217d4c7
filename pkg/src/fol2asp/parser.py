"""Parser for the F2LP ASCII language.

Connectives: ``not`` (default negation), ``-`` (strong negation prefix),
``&``, ``|``, ``->`` / ``<-`` / ``<->``, ``false``, ``true``,
``![X,Y]:`` (universal) and ``?[X,Y]:`` (existential).  Statements end with
a period and ``%`` starts a comment.  Precedence, loosest to tightest:
arrows, ``|``, ``&``, then ``not``/``-``/quantifiers, which take the single
following unit (an atom or a parenthesised formula).

Names beginning with a lowercase letter are constants, functions or
predicates; names beginning with an uppercase letter or underscore are
variables.  Comparisons ``< <= > >= = !=`` are built-in predicates;
``!=`` is parsed as negated equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, SortMismatchError, UnknownSymbolError
from .syntax import (AUX_PREFIX, BUILTIN_COMPARISONS, DEFAULT_SORT, And, App,
                     Atom, Bottom, Exists, Forall, Formula, Implies, Neq, Not,
                     Num, Obj, Or, Range, Signature, Term, Top, Var,
                     iter_subformulas, STRONG_PREFIX)

_TOKEN_RE = re.compile(r"""
      (?P<ws>\s+|%[^\n]*)
    | (?P<num>\d+)
    | (?P<name>[a-z][A-Za-z0-9_]*)
    | (?P<var>[A-Z_][A-Za-z0-9_]*)
    | (?P<op><->|<-|->|:-|!=|<=|>=|\.\.|[#&|<>=(){}\[\],.:?!+\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str          # num | name | var | op
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.text == text

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError("unexpected end of input",
                             last.line if last else 1, last.col if last else 1)
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.tokens)


_COMPARISON_TOKENS = {"=", "!=", "<", "<=", ">", ">="}


class FormulaParser:
    """Recursive-descent parser over a token stream.

    Parsed variables initially carry unresolved sorts; ``resolve_sorts``
    fills them in from the signature's predicate and function profiles.
    """

    def __init__(self, ts: TokenStream, sig: Signature,
                 domain_sorts: dict[str, str] | None = None,
                 allow_ranges: bool = False):
        self.ts = ts
        self.sig = sig
        # variable name -> sort fixed by a #domain declaration
        self.domain_sorts = domain_sorts or {}
        self.allow_ranges = allow_ranges

    # formulas ---------------------------------------------------------
    def formula(self) -> Formula:
        left = self.disjunction()
        t = self.ts.peek()
        if t is not None and t.text in ("->", "<-", "<->"):
            self.ts.next()
            right = self.disjunction()
            t2 = self.ts.peek()
            if t2 is not None and t2.text in ("->", "<-", "<->"):
                raise ParseError("chained arrows need parentheses", t2.line, t2.col)
            if t.text == "->":
                return Implies(left, right)
            if t.text == "<-":
                return Implies(right, left)
            return And(Implies(left, right), Implies(right, left))
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.ts.at("|"):
            self.ts.next()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unit()
        while self.ts.at("&"):
            self.ts.next()
            out = And(out, self.unit())
        return out

    def unit(self) -> Formula:
        t = self.ts.peek()
        if t is None:
            raise ParseError("unexpected end of formula")
        if t.text == "not":
            # "not" only acts as the connective when a formula follows;
            # a bare predicate named not is not part of the language
            self.ts.next()
            return Not(self.unit())
        if t.text == "-":
            self.ts.next()
            return self.strong_atom()
        if t.text in ("!", "?"):
            return self.quantified()
        if t.text == "(":
            self.ts.next()
            f = self.formula()
            self.ts.expect(")")
            return f
        if t.text == "true":
            self.ts.next()
            return Top()
        if t.text == "false":
            self.ts.next()
            return Bottom()
        return self.atom_or_comparison()

    def quantified(self) -> Formula:
        t = self.ts.next()
        cls = Forall if t.text == "!" else Exists
        self.ts.expect("[")
        names = [self._var_name()]
        while self.ts.at(","):
            self.ts.next()
            names.append(self._var_name())
        self.ts.expect("]")
        self.ts.expect(":")
        body = self.unit()
        for name in reversed(names):
            sort = self.domain_sorts.get(name)
            body = cls(Var(name, sort if sort else _UNSORTED), body)
        return body

    def _var_name(self) -> str:
        t = self.ts.next()
        if t.kind != "var":
            raise ParseError(f"expected a variable, found {t.text!r}", t.line, t.col)
        return t.text

    def strong_atom(self) -> Formula:
        t = self.ts.peek()
        if t is None or t.kind != "name":
            raise ParseError("strong negation must prefix a predicate",
                             t.line if t else None, t.col if t else None)
        atom = self.atom_or_comparison()
        if not isinstance(atom, Atom) or atom.pred in BUILTIN_COMPARISONS:
            raise ParseError(f"strong negation must prefix a predicate", t.line, t.col)
        self.sig.pred_profile(atom.pred, len(atom.args))  # base predicate
        name = STRONG_PREFIX + atom.pred
        if name not in self.sig.predicates:
            if not self.sig.auto_declare:
                raise UnknownSymbolError(f"unknown predicate -{atom.pred}", t.line, t.col)
            self.sig.predicates[name] = self.sig.predicates[atom.pred]
        return Atom(name, atom.args)

    def atom_or_comparison(self) -> Formula:
        t = self.ts.peek()
        lhs = self.term()
        op = self.ts.peek()
        if op is not None and op.text in _COMPARISON_TOKENS:
            self.ts.next()
            rhs = self.term()
            if op.text == "!=":
                return Neq(lhs, rhs)
            return Atom(op.text, (lhs, rhs))
        # a bare term in formula position must be a predicate application
        if isinstance(lhs, App):
            self.sig.pred_profile(lhs.func, len(lhs.args))
            return Atom(lhs.func, lhs.args)
        if isinstance(lhs, Obj):
            if lhs.name in self.sig.objects and lhs.name not in self.sig.predicates:
                raise ParseError(f"constant {lhs.name} used as a formula", t.line, t.col)
            self.sig.pred_profile(lhs.name, 0)
            return Atom(lhs.name, ())
        raise ParseError(f"expected an atom, found term {lhs}", t.line, t.col)

    # terms ------------------------------------------------------------
    def term(self) -> Term:
        out = self._add_sub()
        if self.allow_ranges and self.ts.at(".."):
            self.ts.next()
            hi = self._add_sub()
            return Range(out, hi)
        return out

    def _add_sub(self) -> Term:
        out = self._primary()
        while True:
            t = self.ts.peek()
            if t is not None and t.text in ("+", "-"):
                self.ts.next()
                out = App(t.text, (out, self._primary()))
            else:
                return out

    def _primary(self) -> Term:
        t = self.ts.next()
        if t.kind == "num":
            return Num(int(t.text))
        if t.kind == "var":
            sort = self.domain_sorts.get(t.text)
            return Var(t.text, sort if sort else _UNSORTED)
        if t.kind == "name":
            if t.text.startswith(AUX_PREFIX):
                raise ParseError(
                    f"names with prefix {AUX_PREFIX!r} are reserved", t.line, t.col)
            if self.ts.at("("):
                self.ts.next()
                args = [self.term()]
                while self.ts.at(","):
                    self.ts.next()
                    args.append(self.term())
                self.ts.expect(")")
                return App(t.text, tuple(args))
            return Obj(t.text)
        raise ParseError(f"expected a term, found {t.text!r}", t.line, t.col)


_UNSORTED = "?"


def resolve_sorts(f: Formula, sig: Signature) -> Formula:
    """Assign sorts to variables from predicate and function profiles.

    Unconstrained variables fall back to the default sort.  A variable
    constrained to two different sorts is a sort mismatch.  Constants are
    checked against their declared sorts where both sides are known.
    """
    assignment: dict[str, str] = {}

    def note(name, sort):
        if sort is None:
            return
        prev = assignment.get(name)
        if prev is None:
            assignment[name] = sort
        elif prev != sort:
            raise SortMismatchError(f"variable {name} used at sorts {prev} and {sort}")

    def walk_term(t, sort):
        if isinstance(t, Var):
            if t.sort != _UNSORTED:
                note(t.name, t.sort)
            note(t.name, sort)
        elif isinstance(t, Obj):
            declared = sig.objects.get(t.name) if t.name in sig.objects else sig.object_sort(t.name)
            if declared is not None and sort is not None and declared != sort:
                raise SortMismatchError(
                    f"constant {t.name} of sort {declared} used where {sort} expected")
        elif isinstance(t, App):
            if t.func in ("+", "-"):
                for a in t.args:
                    walk_term(a, sort)
            else:
                arg_sorts, result = sig.func_profile(t.func, len(t.args))
                if result is not None and sort is not None and result != sort:
                    raise SortMismatchError(
                        f"function {t.func} of sort {result} used where {sort} expected")
                for a, s in zip(t.args, arg_sorts):
                    walk_term(a, s)
        elif isinstance(t, Range):
            walk_term(t.lo, sort)
            walk_term(t.hi, sort)

    # one pass over all atoms is enough because profiles are fixed
    for _, node in iter_subformulas(f):
        if not isinstance(node, Atom):
            continue
        if node.pred in BUILTIN_COMPARISONS:
            for a in node.args:
                walk_term(a, None)
        else:
            prof = sig.pred_profile(node.pred, len(node.args))
            for a, s in zip(node.args, prof):
                walk_term(a, s)

    # equality links the two sides when only one is a sorted variable
    changed = True
    while changed:
        changed = False
        for _, node in iter_subformulas(f):
            if isinstance(node, Atom) and node.pred == "=" and len(node.args) == 2:
                a, b = node.args
                if isinstance(a, Var) and isinstance(b, Var):
                    sa, sb = assignment.get(a.name), assignment.get(b.name)
                    if sa and not sb:
                        note(b.name, sa)
                        changed = True
                    elif sb and not sa:
                        note(a.name, sb)
                        changed = True

    def fix_term(t):
        if isinstance(t, Var):
            return Var(t.name, assignment.get(t.name, DEFAULT_SORT))
        if isinstance(t, App):
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
            v = node.var
            return type(node)(Var(v.name, assignment.get(v.name, DEFAULT_SORT)),
                              fix(node.body))
        return node

    return fix(f)


def parse_formula(text: str, sig: Signature,
                  domain_sorts: dict[str, str] | None = None) -> Formula:
    """Parse one formula (an optional trailing period is accepted).

    ``<-`` is accepted at the top level as a reversed implication so rule
    text can be pasted directly.
    """
    ts = TokenStream(tokenize(text))
    parser = FormulaParser(ts, sig, domain_sorts)
    f = parser.formula()
    if ts.at("."):
        ts.next()
    if not ts.exhausted:
        t = ts.peek()
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return resolve_sorts(f, sig)
