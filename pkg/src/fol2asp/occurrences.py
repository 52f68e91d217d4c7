"""Occurrence and polarity analysis.

An occurrence is positive when the number of implications containing it in
the antecedent is even, negative otherwise, and strictly positive when that
number is zero.  Negation counts as one implication because it is sugar for
an implication into falsity.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import PathError
from .syntax import (Atom, Exists, Forall, Formula, Implies, Or, Path,
                     children, subformula_at)


def antecedent_depth(f: Formula, at: Path) -> int:
    """Number of implications in f that contain the occurrence in their
    antecedent.  Also validates the path."""
    node = f
    count = 0
    for i, step in enumerate(at):
        kids = children(node)
        if step < 0 or step >= len(kids):
            raise PathError(f"invalid path {list(at)} at step {i}")
        if isinstance(node, Implies) and step == 0:
            count += 1
        node = kids[step]
    return count


def occurrence_polarity(f: Formula, at: Path) -> tuple[str, bool]:
    """Polarity of the occurrence at ``at``: ("positive"|"negative",
    strictly_positive)."""
    count = antecedent_depth(f, at)
    return ("positive" if count % 2 == 0 else "negative", count == 0)


def iter_occurrences(f: Formula) -> Iterator[tuple[Path, Formula, int]]:
    """Preorder traversal yielding (path, node, antecedent_count)."""
    stack = [((), f, 0)]
    while stack:
        path, node, count = stack.pop()
        yield path, node, count
        kids = children(node)
        for i in range(len(kids) - 1, -1, -1):
            kid_count = count + (1 if isinstance(node, Implies) and i == 0 else 0)
            stack.append((path + (i,), kids[i], kid_count))


def atom_occurrences(f: Formula, preds: Iterable[str]) -> list[tuple[Path, Atom, int]]:
    wanted = set(preds)
    return [(path, node, count)
            for path, node, count in iter_occurrences(f)
            if isinstance(node, Atom) and node.pred in wanted]


def is_negative_on(f: Formula, preds: Iterable[str]) -> bool:
    """True when no member of preds occurs strictly positively in f."""
    wanted = set(preds)
    for _, node, count in iter_occurrences(f):
        if count == 0 and isinstance(node, Atom) and node.pred in wanted:
            return False
    return True


def is_p_negated(f: Formula, at: Path, preds: Iterable[str]) -> bool:
    """True when the occurrence at ``at`` lies inside some subformula of f
    (possibly itself, possibly f) that is negative on preds."""
    wanted = set(preds)
    for k in range(len(at) + 1):
        if is_negative_on(subformula_at(f, at[:k]), wanted):
            return True
    return False


def strictly_positive_ancestors(f: Formula, at: Path, kinds) -> bool:
    """Does a proper ancestor of the occurrence have one of the given node
    types while itself occurring strictly positively in f?"""
    node = f
    count = 0
    for step in at:
        if count == 0 and isinstance(node, kinds):
            return True
        if isinstance(node, Implies) and step == 0:
            count += 1
        node = children(node)[step]
    return False
