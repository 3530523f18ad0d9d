"""Deterministic lazy reduction of t-closed computations.

A computation contains at most one redex, always at the top, so the machine
is a classifier plus five substitution rules:

  KStar    * ; \\k. u            ->  u[*/k]
  KPair    <p, t> ; \\k. u       ->  u[<p, t>/k]
  Beta     <p, t> ; \\(x, k). u  ->  u[p/x][t/k]
  PSubst   (\\x. u) ; p          ->  u[p/x]
  QApp     (%k. u) ! t           ->  u[t/k]

Beta is the only rule that mirrors a beta step of the lambda calculus after
readback; the other four are control steps and leave the readback unchanged.
A jump application is always a redex. `* ; \\(x, k). u` and `t ; x` are
normal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Collection, Optional

from .errors import NotTClosed
from .syntax import (
    ETerm,
    KLam,
    Pair,
    PairLam,
    PApp,
    PVar,
    QApp,
    Star,
    XLam,
    is_t_closed,
    parse_eterm,
    subst_k,
    subst_pvar,
    term_str,
)


class RuleTag(Enum):
    KSTAR = "KStar"
    KPAIR = "KPair"
    BETA = "Beta"
    PSUBST = "PSubst"
    QAPP = "QApp"

    @property
    def rule_class(self) -> str:
        return "beta" if self is RuleTag.BETA else "control"


CONTROL_RULES = frozenset(t for t in RuleTag if t is not RuleTag.BETA)

DEFAULT_FUEL = 10**6


def _require_t_closed(u: ETerm) -> None:
    if not is_t_closed(u):
        raise NotTClosed(term_str(u))


def classify(u: ETerm) -> Optional[RuleTag]:
    """The redex rule of u, or None when u is normal."""
    _require_t_closed(u)
    match u:
        case QApp():
            return RuleTag.QAPP
        case PApp(test, proof):
            match test:
                case XLam():
                    return RuleTag.PSUBST
                case Star():
                    return RuleTag.KSTAR if isinstance(proof, KLam) else None
                case Pair():
                    if isinstance(proof, KLam):
                        return RuleTag.KPAIR
                    if isinstance(proof, PairLam):
                        return RuleTag.BETA
                    return None
    raise TypeError(f"not a computation: {u!r}")


def step(
    u: ETerm, *, disable: Collection[RuleTag] = ()
) -> Optional[tuple[ETerm, RuleTag]]:
    """One reduction step, or None on a normal form.

    `disable` suppresses rules; it exists for harness self-tests that verify
    a broken machine is caught, and is not part of the calculus.
    """
    tag = classify(u)
    if tag is None or tag in disable:
        return None
    match tag:
        case RuleTag.KSTAR:
            result = subst_k(u.proof.body, Star())
        case RuleTag.KPAIR:
            result = subst_k(u.proof.body, u.test)
        case RuleTag.BETA:
            lam: PairLam = u.proof
            result = subst_k(subst_pvar(lam.body, lam.x, u.test.fst), u.test.snd)
        case RuleTag.PSUBST:
            result = subst_pvar(u.test.body, u.test.x, u.proof)
        case RuleTag.QAPP:
            result = subst_k(u.fn.body, u.test)
    return result, tag


@dataclass(frozen=True)
class TraceStep:
    rule: RuleTag
    term: ETerm


@dataclass(frozen=True)
class Trace:
    initial: ETerm
    steps: tuple[TraceStep, ...]
    normal: bool  # False only when fuel ran out

    @property
    def final(self) -> ETerm:
        return self.steps[-1].term if self.steps else self.initial

    def rules(self) -> list[RuleTag]:
        return [s.rule for s in self.steps]

    def terms(self) -> list[ETerm]:
        return [self.initial] + [s.term for s in self.steps]


@dataclass(frozen=True)
class NormalizeResult:
    trace: Trace
    exhausted: bool

    @property
    def final(self) -> ETerm:
        return self.trace.final


def normalize(
    u: ETerm,
    fuel: int = DEFAULT_FUEL,
    *,
    disable: Collection[RuleTag] = (),
    on_step: Optional[Callable[[ETerm, RuleTag, ETerm], None]] = None,
) -> NormalizeResult:
    """Reduce to normal form, recording the full trace.

    Well-typed input always terminates, so exhausting the fuel signals a bug
    somewhere; it is reported via the `exhausted` flag rather than raised.
    """
    _require_t_closed(u)
    steps: list[TraceStep] = []
    current = u
    for _ in range(fuel):
        nxt = step(current, disable=disable)
        if nxt is None:
            return NormalizeResult(Trace(u, tuple(steps), True), False)
        result, tag = nxt
        if on_step is not None:
            on_step(current, tag, result)
        steps.append(TraceStep(tag, result))
        current = result
    if step(current, disable=disable) is None:
        return NormalizeResult(Trace(u, tuple(steps), True), False)
    return NormalizeResult(Trace(u, tuple(steps), False), True)


def control_prefix(u: ETerm, fuel: int = DEFAULT_FUEL) -> tuple[ETerm, int]:
    """Apply control rules only, stopping at the first Beta redex or normal
    form. Returns the reached term and the number of control steps."""
    current = u
    for n in range(fuel):
        tag = classify(current)
        if tag is None or tag is RuleTag.BETA:
            return current, n
        current, _ = step(current)
    return current, fuel


# ---------------------------------------------------------------------------
# trace serialization


def trace_to_json(trace: Trace) -> dict:
    """A plain-data rendering of the trace, ready for json.dumps."""
    return {
        "initial": term_str(trace.initial),
        "steps": [
            {
                "rule": s.rule.value,
                "class": s.rule.rule_class,
                "term": term_str(s.term),
            }
            for s in trace.steps
        ],
        "normal": trace.normal,
    }


def trace_from_json(doc) -> Trace:
    """Rebuild a trace from trace_to_json output (a dict or its JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    steps = tuple(
        TraceStep(RuleTag(s["rule"]), parse_eterm(s["term"])) for s in doc["steps"]
    )
    return Trace(parse_eterm(doc["initial"]), steps, bool(doc["normal"]))
