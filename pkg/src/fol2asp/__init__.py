"""First-order formulas and action-calculus descriptions compiled into
answer set programs, with a brute-force finite-model oracle for checking
the semantic guarantees on small universes."""

from .classes import (AlmostUniversalReport, CanonicityReport,
                      DependencyGraph, circ_to_sm, completion,
                      dependency_graph, is_almost_universal, is_canonical,
                      is_singular, is_tight, to_clark_normal_form)
from .errors import (CanonicityViolationError, EmitError, Fol2AspError,
                     NotAlmostUniversalError, OracleLimitError, ParseError,
                     PathError, SortMismatchError, TransformError,
                     UnknownSymbolError)
from .interpretations import Interpretation, classical_eval
from .occurrences import is_negative_on, is_p_negated, occurrence_polarity
from .oracle import (GroundTask, ModelSet, answer_sets, circ_models,
                     classical_models, coherent, ground, propagate_facts,
                     sigma_equivalent, sm_models, star_transform)
from .parser import parse_formula
from .pretty import formula_text
from .program import (Choice, Directive, ExtendedRule, Program, Rule, emit,
                      fol_representation, head_normalize, parse_program)
from .quantifier_elim import ElimResult, elim_quantifiers
from .syntax import (And, Atom, Bottom, Exists, Forall, Formula, FreshNames,
                     Iff, Implies, Neq, Not, Num, Obj, Or, Signature, Sort,
                     Term, Top, Var, alpha_equal, free_vars, make_signature,
                     substitute)
from .transforms import (FlatRule, Lit, insert_double_negation, nnf, prenex,
                         rulify)

__all__ = [name for name in dir() if not name.startswith("_")]
