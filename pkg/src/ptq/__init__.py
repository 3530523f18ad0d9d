"""A typed calculus of programs, continuations, and jumps.

Four sorts of terms share one abstract machine: programs (p), tests built
around a single linear continuation variable (t), jumps (q), and
computations (e). The machine reduces computations deterministically; a
readback projects every machine state onto a lambda term with a hole, so
machine runs can be compared step by step against ordinary lambda calculus
evaluation. Translations from the lambda calculus (by name and by value)
and the classic continuation-passing transforms round out the toolkit.

The pieces:

    syntax        terms, substitution, alpha equivalence, parsing, printing
    typecheck     both type systems and their judgment languages
    machine       the five-rule reduction machine and its traces
    readback      projection to lambda terms with a hole
    measure       the step-counting interpretation
    translate     by-name, by-value, and CPS translations
    lam           the lambda-with-hole target language
    lambda_eval   reference by-name and by-value evaluators
    harness       random typed terms and the correspondence properties
    cli           the command line front end
"""

from .errors import (
    AnchorMismatch,
    DuplicateVariable,
    FuelExhausted,
    HoleTypeClash,
    IllTyped,
    MeasureZero,
    MissingAnnotation,
    MissingVariableMeasure,
    NonLinearK,
    NotTClosed,
    OracleDiverged,
    ParseError,
    PtqError,
    ReservedBaseType,
    RoleMismatch,
    TClosureError,
    TypeClash,
    UnboundVariable,
    UncurriedNeedsPairs,
)
from .lam import (
    App,
    HOLE,
    Hole,
    Lam,
    LamTerm,
    PairPatLam,
    PairTerm,
    Var,
    beta_contractions,
    is_value,
    lam_alpha_eq,
    lam_str,
    lam_subst,
    parse_lam,
    plug_hole,
    reduces_in_one_beta,
)
from .lambda_eval import EvalOrder, Strategy, eval_big, eval_small, step_lambda
from .machine import (
    RuleTag,
    Trace,
    TraceStep,
    classify,
    control_prefix,
    normalize,
    step,
    trace_from_json,
    trace_to_json,
)
from .measure import control_length, identity, measure, o
from .readback import hole_compose, readback, readback_judgment
from .syntax import (
    Arrow,
    Base,
    ETerm,
    K,
    KLam,
    KVar,
    PApp,
    PTerm,
    Pair,
    PairLam,
    PVar,
    QApp,
    QLam,
    STAR,
    Star,
    TTerm,
    Term,
    Type,
    XLam,
    alpha_eq,
    free_pvars,
    is_t_closed,
    parse_eterm,
    parse_pterm,
    parse_qterm,
    parse_term,
    parse_tterm,
    parse_type,
    sort_of,
    spine,
    star_compose,
    subst_k,
    subst_pvar,
    subst_star,
    t_close,
    t_open,
    term_str,
    type_str,
)
from .translate import (
    Pairing,
    aux_translate,
    bracket_list,
    plotkin_translate,
    ptq_translate,
    ptq_translate_e,
    translate_type,
)
from .typecheck import (
    CheckResult,
    Judgment,
    LamEnv,
    LamJudgment,
    PtqType,
    TypeEnv,
    check_judgment,
    check_lambda_judgment,
    infer_lambda_box,
    infer_ptq,
    judgment_str,
    lam_judgment_str,
    parse_judgment,
    parse_lam_judgment,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
