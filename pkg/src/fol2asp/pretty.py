"""Render formulas back into the ASCII input language.

Printing inverts parsing: for every AST, parse(print(f)) == f.  Sugar is
recognised structurally, so negation prints as ``not``, truth as ``true``
and negated equality as ``!=``; an expanded equivalence prints as its two
implications.
"""

from __future__ import annotations

from .syntax import (And, App, Atom, Bottom, Exists, Forall, Formula,
                     Implies, Num, Obj, Or, Range, Term, Var, is_not, is_top,
                     BUILTIN_COMPARISONS, STRONG_PREFIX)

_ARROW, _OR, _AND, _UNARY, _ATOM = 1, 2, 3, 4, 5


def term_text(t: Term) -> str:
    if isinstance(t, App) and t.func in ("+", "-") and len(t.args) == 2:
        left = term_text(t.args[0])
        right = term_text(t.args[1])
        if isinstance(t.args[1], App) and t.args[1].func in ("+", "-"):
            right = f"({right})"
        return f"{left}{t.func}{right}"
    return str(t)


def _atom_text(a: Atom) -> str:
    if a.pred in BUILTIN_COMPARISONS and len(a.args) == 2:
        return f"{term_text(a.args[0])} {a.pred} {term_text(a.args[1])}"
    name = a.pred
    if name.startswith(STRONG_PREFIX):
        name = "-" + name[len(STRONG_PREFIX):]
    if not a.args:
        return name
    return f"{name}({','.join(term_text(t) for t in a.args)})"


def _render(f: Formula, context: int) -> str:
    if isinstance(f, Bottom):
        return "false"
    if is_top(f):
        return "true"
    if is_not(f):
        inner = f.left
        if isinstance(inner, Atom) and inner.pred == "=" and len(inner.args) == 2:
            return f"{term_text(inner.args[0])} != {term_text(inner.args[1])}"
        text, level = "not " + _render(inner, _UNARY), _UNARY
    elif isinstance(f, Atom):
        text, level = _atom_text(f), _ATOM
    elif isinstance(f, And):
        text = _render(f.left, _AND) + " & " + _render(f.right, _AND + 1)
        level = _AND
    elif isinstance(f, Or):
        text = _render(f.left, _OR) + " | " + _render(f.right, _OR + 1)
        level = _OR
    elif isinstance(f, Implies):
        text = _render(f.left, _ARROW + 1) + " -> " + _render(f.right, _ARROW + 1)
        level = _ARROW
    elif isinstance(f, (Forall, Exists)):
        mark = "!" if isinstance(f, Forall) else "?"
        names = [f.var.name]
        body = f.body
        # group a run of the same quantifier into one bracket
        while isinstance(body, type(f)):
            names.append(body.var.name)
            body = body.body
        text = f"{mark}[{','.join(names)}]:" + _render(body, _UNARY)
        level = _UNARY
    else:
        raise TypeError(f"not a formula: {f!r}")
    if level < context:
        return f"({text})"
    return text


def formula_text(f: Formula) -> str:
    return _render(f, _ARROW)


def rule_text(head: Formula | None, body: Formula | None) -> str:
    """Extended-rule surface form ``head <- body``."""
    if body is None or is_top(body):
        return formula_text(head)
    if head is None or isinstance(head, Bottom):
        return "<- " + formula_text(body)
    return formula_text(head) + " <- " + formula_text(body)
