"""Property harness: generate typed terms, run both sides, compare diagrams.

The generator builds closed, simply typed, fully annotated lambda terms,
deterministically from (size, seed); size bounds the number of application
nodes. Each property replays a diagram between the reference evaluators and
the machine:

  completeness  the machine run of the translated term passes through the
                translation of the evaluator's normal form
  soundness     every term along the machine run reads back to a term on the
                evaluator's chain
  simulation    single evaluator steps match machine segments, and machine
                normal forms mean evaluator normal forms
  sim-beta      the normal form of the machine run reads back to the lazy
                normal form of the source

Machine runs are instrumented: every step re-checks the typing judgment,
certifies the readback (control steps preserve it, Beta steps advance it by
one beta step), and checks that control steps drop the measure by exactly
one. Any violation becomes a counterexample in the report, replayable from
(property, size, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import OracleDiverged, FuelExhausted, PtqError
from .lam import App, Lam, LamTerm, Var, is_value, lam_alpha_eq, lam_str, reduces_in_one_beta
from .lambda_eval import EvalOrder, Strategy, eval_small, step_lambda
from .machine import RuleTag, classify, step
from .measure import control_length
from .readback import readback
from .syntax import Arrow, Base, ETerm, PApp, STAR, Term, Type, alpha_eq, sort_of, term_str
from .translate import ptq_translate, ptq_translate_e
from .typecheck import E_OK, LamEnv, TypeEnv, infer_lambda_box, infer_ptq

ORACLE_FUEL = 10**4
MACHINE_FUEL = 10**6

X = Base("X")

# application argument and binder types, all depth three or less over X
TYPE_MENU: tuple[Type, ...] = (
    X,
    Arrow(X, X),
    Arrow(X, Arrow(X, X)),
    Arrow(Arrow(X, X), X),
    Arrow(Arrow(X, X), Arrow(X, X)),
)

# closed targets for the top level, each inhabited without assumptions
TOP_MENU: tuple[Type, ...] = (
    Arrow(X, X),
    Arrow(X, Arrow(X, X)),
    Arrow(Arrow(X, X), Arrow(X, X)),
    Arrow(Arrow(Arrow(X, X), X), Arrow(X, X)),
)


class _Dead(Exception):
    pass


def gen_typed_term(size: int, seed: int) -> tuple[LamTerm, Type]:
    """A closed, fully annotated, well typed term with at most `size`
    application nodes. Deterministic in (size, seed)."""
    rng = random.Random(f"{size}:{seed}")
    for attempt in range(50):
        target = rng.choice(TOP_MENU)
        try:
            term = _gen(rng, (), target, size, 0)
            return term, target
        except _Dead:
            continue
    return Lam("x0", X, Var("x0")), Arrow(X, X)


def _gen(rng, scope: tuple[tuple[str, Type], ...], want: Type, budget: int, depth: int) -> LamTerm:
    choices = []
    if isinstance(want, Arrow):
        choices.append("lam")
    vars_here = [x for x, ty in scope if ty == want]
    if vars_here:
        choices.append("var")
    if budget > 0 and depth < 12:
        choices += ["app", "app"]
    if not choices:
        raise _Dead
    rng.shuffle(choices)
    for choice in choices:
        try:
            if choice == "lam":
                x = f"x{len(scope)}"
                body = _gen(rng, scope + ((x, want.dom),), want.cod, budget, depth + 1)
                return Lam(x, want.dom, body)
            if choice == "var":
                return Var(rng.choice(vars_here))
            arg_ty = rng.choice(TYPE_MENU + tuple(ty for _, ty in scope))
            split = rng.randint(0, budget - 1)
            fn = _gen(rng, scope, Arrow(arg_ty, want), split, depth + 1)
            arg = _gen(rng, scope, arg_ty, budget - 1 - split, depth + 1)
            return App(fn, arg)
        except _Dead:
            continue
    raise _Dead


def _count_apps(m: LamTerm) -> int:
    match m:
        case App(fn, arg):
            return 1 + _count_apps(fn) + _count_apps(arg)
        case Lam(_, _, body):
            return _count_apps(body)
        case _:
            return 0


# ---------------------------------------------------------------------------
# reports


@dataclass
class PropertyReport:
    prop: str
    size: int
    seed: int
    instance: str
    ok: bool
    failures: list[str] = field(default_factory=list)
    kinds: list[str] = field(default_factory=list)
    steps: int = 0

    def fail(self, message: str, kind: str = "outcome") -> None:
        self.ok = False
        self.failures.append(message)
        self.kinds.append(kind)

    def count(self, kind: str) -> int:
        return self.kinds.count(kind)

    def to_dict(self) -> dict:
        return {
            "property": self.prop,
            "size": self.size,
            "seed": self.seed,
            "instance": self.instance,
            "ok": self.ok,
            "failures": self.failures,
            "steps": self.steps,
        }


def _oracle_chain(m: LamTerm, strategy: Strategy) -> list[LamTerm]:
    try:
        _, chain = eval_small(m, strategy, EvalOrder.ARGUMENT_FIRST, ORACLE_FUEL)
    except FuelExhausted as exc:
        raise OracleDiverged(str(exc)) from exc
    return chain


def _start_term(m: LamTerm, strategy: Strategy, env=None) -> ETerm:
    """The computation that runs the plain translation against *."""
    if strategy is Strategy.CBN:
        return PApp(STAR, ptq_translate(m, strategy, env))
    from .syntax import QApp

    return QApp(ptq_translate(m, strategy, env), STAR)


def _closed_ty(m: LamTerm) -> Type:
    return infer_lambda_box(LamEnv((), None), m)


# ---------------------------------------------------------------------------
# instrumented machine runs


def run_checked(
    u: ETerm,
    anchor_ty: Type,
    report: PropertyReport,
    gamma: tuple[tuple[str, Type], ...] = (),
    disable: Iterable[RuleTag] = (),
    fuel: int = MACHINE_FUEL,
) -> list[ETerm]:
    """Reduce u to normal form, asserting the per-step laws along the way.

    Checks, per step: the judgment G |> *:tA |- u survives; control steps
    keep the readback fixed up to alpha while Beta steps advance it by one
    beta step; control steps drop control_length by exactly one.
    """
    env = TypeEnv(gamma, ("star", anchor_ty))
    chain = [u]
    try:
        if infer_ptq(env, u) is not E_OK:
            report.fail(
                f"initial term failed to check: {term_str(u)}", "subject-reduction"
            )
    except PtqError as exc:
        report.fail(f"initial term failed to check: {exc}", "subject-reduction")
    current = u
    for _ in range(fuel):
        nxt = step(current, disable=disable)
        if nxt is None:
            return chain
        after, tag = nxt
        try:
            if infer_ptq(env, after) is not E_OK:
                report.fail(
                    f"subject reduction broke after {tag.value}", "subject-reduction"
                )
        except PtqError as exc:
            report.fail(
                f"subject reduction broke after {tag.value}: {exc}",
                "subject-reduction",
            )
        rb_before = readback(current)
        rb_after = readback(after)
        if tag.rule_class == "control":
            if not lam_alpha_eq(rb_before, rb_after):
                report.fail(
                    f"control step {tag.value} moved the readback: "
                    f"{lam_str(rb_before)} to {lam_str(rb_after)}",
                    "rb-soundness",
                )
            before_len = control_length(current)
            after_len = control_length(after)
            if after_len != before_len - 1:
                report.fail(
                    f"control step {tag.value} took control_length "
                    f"{before_len} to {after_len}",
                    "control-length",
                )
        else:
            if not reduces_in_one_beta(rb_before, rb_after):
                report.fail(
                    f"Beta step is not one beta step on readbacks: "
                    f"{lam_str(rb_before)} to {lam_str(rb_after)}",
                    "rb-soundness",
                )
        chain.append(after)
        current = after
    report.fail(f"machine fuel exhausted after {fuel} steps", "fuel")
    return chain


# ---------------------------------------------------------------------------
# the properties


def check_completeness(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1,
    disable: Iterable[RuleTag] = (),
) -> PropertyReport:
    """The machine run from the translated start term ends at the e-image of
    the evaluator's normal form."""
    report = PropertyReport("completeness", size, seed, lam_str(m), True)
    normal = _oracle_chain(m, strategy)[-1]
    start = _start_term(m, strategy)
    chain = run_checked(start, _closed_ty(m), report, disable=disable)
    report.steps = len(chain) - 1
    expected = ptq_translate_e(normal, strategy)
    if not any(alpha_eq(t, expected) for t in chain):
        report.fail(
            f"machine run never reached {term_str(expected)}; "
            f"ended at {term_str(chain[-1])}"
        )
    elif not alpha_eq(chain[-1], expected):
        report.fail(
            f"machine run went past {term_str(expected)} to {term_str(chain[-1])}"
        )
    return report


def check_soundness(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1
) -> PropertyReport:
    """Every readback along the machine run lies on the evaluator's chain."""
    report = PropertyReport("soundness", size, seed, lam_str(m), True)
    oracle = _oracle_chain(m, strategy)
    start = _start_term(m, strategy)
    chain = run_checked(start, _closed_ty(m), report)
    report.steps = len(chain) - 1
    for u in chain:
        rb = readback(u)
        if not any(lam_alpha_eq(rb, o) for o in oracle):
            report.fail(f"readback {lam_str(rb)} is not reachable from {lam_str(m)}")
    return report


def check_simulation(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1
) -> PropertyReport:
    """One evaluator step corresponds to a machine segment between e-images,
    and e-images of normal forms are machine-normal."""
    report = PropertyReport("simulation", size, seed, lam_str(m), True)
    image = ptq_translate_e(m, strategy)
    nxt = step_lambda(m, strategy)
    if nxt is None:
        if classify(image) is not None:
            report.fail(f"{term_str(image)} should be machine-normal")
        return report
    if classify(image) is None:
        report.fail(f"{term_str(image)} should not be machine-normal")
        return report
    target = ptq_translate_e(nxt, strategy)
    chain = run_checked(image, _closed_ty(m), report)
    report.steps = len(chain) - 1
    if not any(alpha_eq(t, target) for t in chain):
        report.fail(
            f"machine run from {term_str(image)} misses {term_str(target)}"
        )
    return report


def check_sim_beta(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1
) -> PropertyReport:
    """The machine normal form reads back to the lazy normal form."""
    report = PropertyReport("sim-beta", size, seed, lam_str(m), True)
    image = ptq_translate_e(m, strategy)
    chain = run_checked(image, _closed_ty(m), report)
    report.steps = len(chain) - 1
    rb = readback(chain[-1])
    lazy_nf = _oracle_chain(m, strategy)[-1]
    if not lam_alpha_eq(rb, lazy_nf):
        report.fail(
            f"normal form reads back to {lam_str(rb)}, expected {lam_str(lazy_nf)}"
        )
    return report


def check_typing(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1
) -> PropertyReport:
    """The translation of a term of type A checks at pA (by name) or qA (by
    value), and its e-image checks under the * anchor at A."""
    report = PropertyReport("typing", size, seed, lam_str(m), True)
    ty = _closed_ty(m)
    want_role = "p" if strategy is Strategy.CBN else "q"
    try:
        got = infer_ptq(TypeEnv((), None), ptq_translate(m, strategy))
        if got.role != want_role or got.carrier != ty:
            report.fail(f"translation checked at {got}, wanted {want_role}{ty}")
    except PtqError as exc:
        report.fail(f"translation failed to check: {exc}")
    try:
        if infer_ptq(TypeEnv((), ("star", ty)), ptq_translate_e(m, strategy)) is not E_OK:
            report.fail("e-image failed to check")
    except PtqError as exc:
        report.fail(f"e-image failed to check: {exc}")
    return report


def check_readback(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1
) -> PropertyReport:
    """Reading back either translation recovers the source term."""
    report = PropertyReport("readback", size, seed, lam_str(m), True)
    rb_p = readback(ptq_translate(m, strategy))
    if not lam_alpha_eq(rb_p, m):
        report.fail(f"term translation reads back to {lam_str(rb_p)}")
    rb_e = readback(ptq_translate_e(m, strategy))
    if not lam_alpha_eq(rb_e, m):
        report.fail(f"e-translation reads back to {lam_str(rb_e)}")
    return report


def check_measure(
    m: LamTerm, strategy: Strategy, size: int = -1, seed: int = -1
) -> PropertyReport:
    """control_length predicts the exact number of machine steps before the
    first Beta step (or to the normal form when no Beta fires)."""
    from .machine import control_prefix

    report = PropertyReport("measure", size, seed, lam_str(m), True)
    start = _start_term(m, strategy)
    _, n_control = control_prefix(start, MACHINE_FUEL)
    predicted = control_length(start)
    if predicted != n_control:
        report.fail(
            f"control_length says {predicted}, machine took {n_control} "
            f"control steps before the first Beta"
        )
    return report


CHECKS: dict[str, Callable[..., PropertyReport]] = {
    "completeness": check_completeness,
    "soundness": check_soundness,
    "simulation": check_simulation,
    "sim-beta": check_sim_beta,
    "typing": check_typing,
    "readback": check_readback,
    "measure": check_measure,
}

VERIFY_PROPERTIES: dict[str, tuple[str, ...]] = {
    "completeness": ("completeness",),
    "soundness": ("soundness",),
    "simulation": ("simulation", "sim-beta"),
    "measure": ("measure",),
    "readback": ("readback",),
    "typing": ("typing",),
}


def run_property(
    name: str,
    count: int,
    max_size: int,
    seed: int,
    strategies: tuple[Strategy, ...] = (Strategy.CBN, Strategy.CBV),
    disable: Iterable[RuleTag] = (),
) -> list[PropertyReport]:
    check = CHECKS[name]
    reports = []
    for i in range(count):
        size = i % (max_size + 1)
        inst_seed = seed + i
        m, _ = gen_typed_term(size, inst_seed)
        for strategy in strategies:
            if name == "completeness" and disable:
                reports.append(check(m, strategy, size, inst_seed, disable=disable))
            else:
                reports.append(check(m, strategy, size, inst_seed))
    return reports


def self_test_fault_injection(count: int = 30, seed: int = 7) -> bool:
    """With the KPair rule disabled the completeness check must fail
    somewhere; that it does is evidence the harness can catch a broken
    machine."""
    reports = run_property(
        "completeness", count, 6, seed, (Strategy.CBN,), disable={RuleTag.KPAIR}
    )
    return any(not r.ok for r in reports)
