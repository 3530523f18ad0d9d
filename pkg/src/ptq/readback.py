"""Readback of calculus terms into hole-extended lambda terms.

A t-closed test term reads back to a lambda term with exactly one hole (its
spine); programs, jumps and t-closed computations read back hole-free. Hole
composition outer[inner/[]] is the gluing operation: the pair case stacks an
application around the hole, binders close over it, and the two application
forms plug the program or jump image into the test image.

Control steps of the machine leave the readback fixed up to alpha; the Beta
step becomes exactly one beta step.
"""

from __future__ import annotations

from .errors import IllTyped, NotTClosed
from .lam import App, HOLE, Hole, Lam, LamTerm, Var, lam_subst, plug_hole
from .syntax import (
    KLam,
    KVar,
    Pair,
    PairLam,
    PApp,
    PVar,
    QApp,
    QLam,
    Star,
    Term,
    XLam,
    sort_of,
    spine,
    t_close,
    term_str,
)
from .typecheck import (
    CheckResult,
    Judgment,
    LamEnv,
    LamJudgment,
    check_judgment,
)


def hole_compose(outer: LamTerm, inner: LamTerm) -> LamTerm:
    """outer[inner/[]]; associative, with the bare hole as neutral element."""
    return plug_hole(outer, inner)


def _closed_body(body) :
    return t_close(body) if spine(body) == "k" else body


def readback(term: Term) -> LamTerm:
    """The lambda image of a term; test/computation input must be t-closed."""
    match term:
        case Star():
            return HOLE
        case KVar():
            raise NotTClosed("readback is defined on t-closed terms only")
        case PVar(name):
            return Var(name)
        case Pair(fst, snd):
            return hole_compose(readback(snd), App(HOLE, readback(fst)))
        case PairLam(x, xty, _, body):
            return Lam(x, xty, readback(_closed_body(body)))
        case XLam(x, _, body):
            return lam_subst(readback(_closed_body(body)), x, HOLE)
        case KLam(_, body) | QLam(_, body):
            return readback(_closed_body(body))
        case PApp(test, proof):
            if spine(test) == "k":
                raise NotTClosed(term_str(term))
            return hole_compose(readback(test), readback(proof))
        case QApp(fn, test):
            if spine(test) == "k":
                raise NotTClosed(term_str(term))
            return hole_compose(readback(test), readback(fn))
    raise TypeError(f"not a term: {term!r}")


def readback_judgment(j: Judgment) -> LamJudgment:
    """Map a checking judgment to the corresponding lambda judgment.

    Programs and jumps keep their carrier type. A test subject t:tB under an
    anchor of carrier A becomes G, []:B |- rbk(t[*/k]) : A; a computation
    under an anchor of carrier A becomes G |- rbk(u[*/k]) : A.
    """
    res: CheckResult = check_judgment(j)
    if not res.ok:
        raise IllTyped(str(res.error))
    gamma = tuple(j.env.gamma)
    subject = j.subject
    sort = sort_of(subject)
    if sort in ("p", "q"):
        return LamJudgment(LamEnv(gamma, None), readback(subject), j.claimed.carrier)
    closed = t_close(subject) if spine(subject) == "k" else subject
    _, aty = j.env.anchor
    if sort == "t":
        env = LamEnv(gamma, j.claimed.carrier)
        return LamJudgment(env, readback(closed), aty)
    return LamJudgment(LamEnv(gamma, None), readback(closed), aty)
