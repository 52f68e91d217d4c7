"""Many-sorted first-order syntax.

The primitive connectives are falsity, conjunction, disjunction,
implication and the two quantifiers.  Negation, truth and equivalence are
sugar and are expanded at construction time, so every analysis that counts
enclosing implication antecedents sees the primitive tree:

    not F   ==  Implies(F, Bottom())
    true    ==  Implies(Bottom(), Bottom())
    F <-> G ==  And(Implies(F, G), Implies(G, F))

Strong negation is not a connective; a strongly negated predicate ``p`` is
the ordinary predicate named ``~p`` (printed ``-p``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import PathError, SortMismatchError, UnknownSymbolError

DEFAULT_SORT = "obj"
STRONG_PREFIX = "~"
AUX_PREFIX = "aux_"          # reserved for predicates invented by quantifier elimination
FRESH_VAR_PREFIX = "_V"      # reserved for machine-generated variables
BUILTIN_COMPARISONS = frozenset({"=", "<", "<=", ">", ">="})
ARITHMETIC_FUNCS = frozenset({"+", "-"})


# ---------------------------------------------------------------------------
# Terms

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str
    sort: str = DEFAULT_SORT

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Obj(Term):
    """Object constant.  Its sort comes from the signature."""
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Num(Term):
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class App(Term):
    func: str
    args: tuple[Term, ...]

    def __str__(self):
        if self.func in ARITHMETIC_FUNCS and len(self.args) == 2:
            return f"{self.args[0]}{self.func}{self.args[1]}"
        return f"{self.func}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Range(Term):
    """Interval term ``lo..hi``; legal only in native facts and directives."""
    lo: Term
    hi: Term

    def __str__(self):
        return f"{self.lo}..{self.hi}"


def term_vars(t: Term) -> tuple[Var, ...]:
    """Variables of a term in order of first appearance."""
    out: list[Var] = []

    def walk(u):
        if isinstance(u, Var):
            if u not in out:
                out.append(u)
        elif isinstance(u, App):
            for a in u.args:
                walk(a)
        elif isinstance(u, Range):
            walk(u.lo)
            walk(u.hi)

    walk(t)
    return tuple(out)


def substitute_term(t: Term, binding: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, App):
        return App(t.func, tuple(substitute_term(a, binding) for a in t.args))
    if isinstance(t, Range):
        return Range(substitute_term(t.lo, binding), substitute_term(t.hi, binding))
    return t


# ---------------------------------------------------------------------------
# Formulas

class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True)
class Bottom(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple[Term, ...] = ()

    def __str__(self):
        name = self.pred
        if name.startswith(STRONG_PREFIX):
            name = "-" + name[len(STRONG_PREFIX):]
        if not self.args:
            return name
        return f"{name}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: Var
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: Var
    body: Formula


def Not(f: Formula) -> Formula:
    return Implies(f, Bottom())


def Top() -> Formula:
    return Implies(Bottom(), Bottom())


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def Neq(a: Term, b: Term) -> Formula:
    return Not(Atom("=", (a, b)))


def is_not(f: Formula) -> bool:
    return isinstance(f, Implies) and f.right == Bottom()


def is_top(f: Formula) -> bool:
    return isinstance(f, Implies) and f.left == Bottom() and f.right == Bottom()


def conj(parts) -> Formula:
    """Left-folded conjunction; empty gives true."""
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    """Left-folded disjunction; empty gives false."""
    parts = list(parts)
    if not parts:
        return Bottom()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def flatten_and(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return flatten_and(f.left) + flatten_and(f.right)
    return [f]


def flatten_or(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return flatten_or(f.left) + flatten_or(f.right)
    return [f]


# ---------------------------------------------------------------------------
# Paths and traversal
#
# A path addresses one occurrence of a subformula: a sequence of child
# indices from the root.  And/Or/Implies have children 0 and 1; a
# quantifier's body is child 0.

Path = tuple[int, ...]


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or, Implies)):
        return (f.left, f.right)
    if isinstance(f, (Forall, Exists)):
        return (f.body,)
    return ()


def rebuild(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    if isinstance(f, (And, Or, Implies)):
        return type(f)(kids[0], kids[1])
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, kids[0])
    return f


def subformula_at(f: Formula, path: Path) -> Formula:
    node = f
    for i, step in enumerate(path):
        kids = children(node)
        if step < 0 or step >= len(kids):
            raise PathError(f"invalid path {list(path)} at step {i} in {node}")
        node = kids[step]
    return node


def replace_at(f: Formula, path: Path, new: Formula) -> Formula:
    if not path:
        return new
    kids = children(f)
    step = path[0]
    if step < 0 or step >= len(kids):
        raise PathError(f"invalid path {list(path)} in {f}")
    kids = list(kids)
    kids[step] = replace_at(kids[step], path[1:], new)
    return rebuild(f, tuple(kids))


def iter_subformulas(f: Formula) -> Iterator[tuple[Path, Formula]]:
    """Preorder traversal yielding (path, node) pairs."""
    stack = [((), f)]
    while stack:
        path, node = stack.pop()
        yield path, node
        kids = children(node)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def formula_size(f: Formula) -> int:
    """Number of formula and term nodes, used as the size measure."""
    def tsize(t):
        if isinstance(t, App):
            return 1 + sum(tsize(a) for a in t.args)
        if isinstance(t, Range):
            return 1 + tsize(t.lo) + tsize(t.hi)
        return 1

    n = 1
    if isinstance(f, Atom):
        n += sum(tsize(a) for a in f.args)
    for kid in children(f):
        n += formula_size(kid)
    return n


def free_vars(f: Formula) -> tuple[Var, ...]:
    """Free variables in order of first appearance."""
    out: list[Var] = []

    def walk(node, bound):
        if isinstance(node, Atom):
            for t in node.args:
                for v in term_vars(t):
                    if v.name not in bound and v not in out:
                        out.append(v)
        elif isinstance(node, (Forall, Exists)):
            walk(node.body, bound | {node.var.name})
        else:
            for kid in children(node):
                walk(kid, bound)

    walk(f, frozenset())
    return tuple(out)


def predicates_of(f: Formula, include_builtin: bool = False) -> set[str]:
    out = set()
    for _, node in iter_subformulas(f):
        if isinstance(node, Atom):
            if include_builtin or node.pred not in BUILTIN_COMPARISONS:
                out.add(node.pred)
    return out


def forall_closure(f: Formula) -> Formula:
    """Universal closure, binding free variables in appearance order."""
    out = f
    for v in reversed(free_vars(f)):
        out = Forall(v, out)
    return out


def rename_apart(base: str, avoid: set[str]) -> str:
    if base not in avoid:
        return base
    i = 2
    while f"{base}_{i}" in avoid:
        i += 1
    return f"{base}_{i}"


def substitute(f: Formula, binding: Mapping[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    binding = {k: v for k, v in binding.items()}
    if not binding:
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute_term(t, binding) for t in f.args))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute(f.left, binding), substitute(f.right, binding))
    if isinstance(f, (Forall, Exists)):
        inner = {k: v for k, v in binding.items() if k != f.var.name}
        if not inner:
            return f
        clash = {v.name for t in inner.values() for v in term_vars(t)}
        var, body = f.var, f.body
        if var.name in clash:
            fresh = rename_apart(var.name, clash | {w.name for w in free_vars(body)} | set(inner))
            var2 = Var(fresh, var.sort)
            body = substitute(body, {var.name: var2})
            var = var2
        return type(f)(var, substitute(body, inner))
    return f


class FreshNames:
    """Deterministic supplier of machine-generated names.

    Both prefixes are unparseable as user input, so collision with user
    symbols is impossible by construction.
    """

    def __init__(self):
        self._vars = 0
        self._preds = 0

    def variable(self, sort: str = DEFAULT_SORT) -> Var:
        self._vars += 1
        return Var(f"{FRESH_VAR_PREFIX}{self._vars}", sort)

    def predicate(self) -> str:
        self._preds += 1
        return f"{AUX_PREFIX}{self._preds}"


# ---------------------------------------------------------------------------
# Signatures

@dataclass(frozen=True)
class Sort:
    name: str


@dataclass
class Signature:
    """Declared sorts, object constants, functions and predicates.

    ``auto_declare`` enables the permissive mode used when reading program
    files, where predicates and constants are registered on first use with
    unknown argument sorts (recorded as None).
    """

    sorts: dict[str, Sort] = field(default_factory=dict)
    objects: dict[str, str] = field(default_factory=dict)
    functions: dict[str, tuple[tuple[str, ...], str]] = field(default_factory=dict)
    predicates: dict[str, tuple] = field(default_factory=dict)
    auto_declare: bool = False

    def __post_init__(self):
        self.sorts.setdefault(DEFAULT_SORT, Sort(DEFAULT_SORT))

    # declarations -----------------------------------------------------
    def declare_sort(self, name: str) -> Sort:
        if name in self.sorts and name != DEFAULT_SORT:
            raise SortMismatchError(f"sort {name} declared twice")
        s = Sort(name)
        self.sorts[name] = s
        return s

    def declare_object(self, name: str, sort: str = DEFAULT_SORT):
        if name in self.objects or name in self.functions or name in self.predicates:
            raise SortMismatchError(f"symbol {name} declared twice")
        self._require_sort(sort)
        self.objects[name] = sort

    def declare_function(self, name: str, arg_sorts, result_sort: str):
        if name in self.objects or name in self.functions:
            raise SortMismatchError(f"symbol {name} declared twice")
        self.functions[name] = (tuple(arg_sorts), result_sort)

    def declare_predicate(self, name: str, arg_sorts):
        if name in self.predicates:
            raise SortMismatchError(f"predicate {name} declared twice")
        self.predicates[name] = tuple(arg_sorts)

    def _require_sort(self, name):
        if name is not None and name not in self.sorts:
            self.sorts[name] = Sort(name)

    # lookups ----------------------------------------------------------
    def pred_profile(self, name: str, arity: int):
        prof = self.predicates.get(name)
        if prof is None:
            if not self.auto_declare:
                raise UnknownSymbolError(f"unknown predicate {name}/{arity}")
            prof = (None,) * arity
            self.predicates[name] = prof
        if len(prof) != arity:
            raise SortMismatchError(f"predicate {name} used with arity {arity}, declared {len(prof)}")
        return prof

    def func_profile(self, name: str, arity: int):
        prof = self.functions.get(name)
        if prof is None:
            if not self.auto_declare:
                raise UnknownSymbolError(f"unknown function {name}/{arity}")
            prof = ((None,) * arity, None)
            self.functions[name] = prof
        if len(prof[0]) != arity:
            raise SortMismatchError(f"function {name} used with arity {arity}, declared {len(prof[0])}")
        return prof

    def object_sort(self, name: str):
        if name not in self.objects:
            if not self.auto_declare:
                raise UnknownSymbolError(f"unknown constant {name}")
            self.objects[name] = None
        return self.objects[name]

    @property
    def strong_pairs(self) -> set[str]:
        return {p for p in self.predicates
                if not p.startswith(STRONG_PREFIX) and STRONG_PREFIX + p in self.predicates}

    def pair_strong(self, name: str):
        """Register the strongly negated partner of a predicate, with the
        same argument sorts."""
        base = name[len(STRONG_PREFIX):] if name.startswith(STRONG_PREFIX) else name
        neg = STRONG_PREFIX + base
        if base in self.predicates and neg not in self.predicates:
            self.predicates[neg] = self.predicates[base]
        elif neg in self.predicates and base not in self.predicates:
            self.predicates[base] = self.predicates[neg]

    def merge(self, other: "Signature") -> "Signature":
        out = Signature(dict(self.sorts), dict(self.objects),
                        dict(self.functions), dict(self.predicates),
                        self.auto_declare or other.auto_declare)
        for name, s in other.sorts.items():
            out.sorts.setdefault(name, s)
        for name, s in other.objects.items():
            out.objects.setdefault(name, s)
        for name, p in other.functions.items():
            out.functions.setdefault(name, p)
        for name, p in other.predicates.items():
            out.predicates.setdefault(name, p)
        return out


def make_signature(predicates=None, objects=None, functions=None, sorts=None,
                   auto_declare=False) -> Signature:
    """Convenience constructor.

    ``predicates`` maps a name to an arity (default-sorted profile) or to an
    explicit tuple of sort names; ``objects`` is a list of names or a mapping
    to sorts.
    """
    sig = Signature(auto_declare=auto_declare)
    for s in sorts or ():
        if s != DEFAULT_SORT:
            sig.declare_sort(s)
    for name, prof in (predicates or {}).items():
        if isinstance(prof, int):
            prof = (DEFAULT_SORT,) * prof
        sig.declare_predicate(name, tuple(prof))
    if isinstance(objects, dict):
        for name, sort in objects.items():
            sig.declare_object(name, sort)
    else:
        for name in objects or ():
            sig.declare_object(name, DEFAULT_SORT)
    for name, prof in (functions or {}).items():
        sig.declare_function(name, tuple(prof[0]), prof[1])
    return sig


# ---------------------------------------------------------------------------
# Alpha equivalence

def alpha_equal(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""

    def go(a, b, env_a, env_b):
        if type(a) is not type(b):
            return False
        if isinstance(a, Bottom):
            return True
        if isinstance(a, Atom):
            if a.pred != b.pred or len(a.args) != len(b.args):
                return False
            return all(teq(x, y, env_a, env_b) for x, y in zip(a.args, b.args))
        if isinstance(a, (And, Or, Implies)):
            return go(a.left, b.left, env_a, env_b) and go(a.right, b.right, env_a, env_b)
        if isinstance(a, (Forall, Exists)):
            tag = len(env_a)
            return go(a.body, b.body,
                      {**env_a, a.var.name: tag}, {**env_b, b.var.name: tag})
        return False

    def teq(x, y, env_a, env_b):
        if isinstance(x, Var) and isinstance(y, Var):
            ax, by = env_a.get(x.name), env_b.get(y.name)
            if ax is None and by is None:
                return x.name == y.name
            return ax == by
        if type(x) is not type(y):
            return False
        if isinstance(x, App):
            return x.func == y.func and len(x.args) == len(y.args) and all(
                teq(u, v, env_a, env_b) for u, v in zip(x.args, y.args))
        return x == y

    return go(f, g, {}, {})
